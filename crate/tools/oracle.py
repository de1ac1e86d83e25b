#!/usr/bin/env python3
"""Independent reference computations for link diagrams in the text PD form.

Usage:
    oracle.py alexander FILE...   Alexander polynomial from the Fox matrix
    oracle.py kh FILE...          Khovanov dimensions over F2 by brute force
    oracle.py det FILE...         |Alexander(-1)|

Diagrams use the repository's text format: X[a,b,c,d] entries (1-indexed,
counterclockwise from the incoming under edge) and an 'orientation:' line.
The code here shares nothing with the Rust implementation.
"""
import itertools
import json
import re
import sys

import numpy as np
import sympy as sp


def parse(text):
    quads, signs, loops = [], None, 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if ':' in line:
            k, v = line.split(':', 1)
            k = k.strip()
            if k in ('orientation', 'signs'):
                signs = [1 if s.startswith('+') else -1 for s in v.split()]
            elif k == 'loops':
                loops = int(v)
            continue
        for m in re.finditer(r'X\[(\d+),(\d+),(\d+),(\d+)\]', line.replace(' ', '')):
            quads.append([int(x) - 1 for x in m.groups()])
    if signs is None:
        raise SystemExit('orientation line required')
    return quads, signs, loops


def alexander(quads, signs):
    t = sp.symbols('t')
    n_edges = 1 + max(max(q) for q in quads)
    parent = list(range(n_edges))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for q in quads:
        a, b = find(q[1]), find(q[3])
        if a != b:
            parent[max(a, b)] = min(a, b)
    arcs = sorted({find(e) for e in range(n_edges)})
    idx = {a: i for i, a in enumerate(arcs)}
    rows = []
    for q, s in zip(quads, signs):
        row = [0] * len(arcs)
        ai, bi, ci = idx[find(q[0])], idx[find(q[1])], idx[find(q[2])]
        if s > 0:
            row[bi] += 1 - t
            row[ai] += t
            row[ci] += -1
        else:
            row[bi] += t - 1
            row[ai] += 1
            row[ci] += -t
        rows.append(row)
    m = sp.Matrix(rows)
    if m.rows < 2:
        return [1]
    minor = m[1:, 1:]
    p = sp.Poly(sp.expand(minor.det()), t)
    coeffs = p.all_coeffs()[::-1]
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return [0]
    if coeffs[-1] < 0:
        coeffs = [-c for c in coeffs]
    return [int(c) for c in coeffs]


def gf2_rank(rows, ncols):
    """Rank over F2 of a list of python-int bitmasks."""
    rank = 0
    pivots = {}
    for r in rows:
        while r:
            h = r.bit_length() - 1
            if h in pivots:
                r ^= pivots[h]
            else:
                pivots[h] = r
                rank += 1
                break
    return rank


def khovanov_f2(quads, signs, loops):
    n = len(quads)
    n_edges = 1 + max((max(q) for q in quads), default=-1)
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = n - n_plus

    def circles(state):
        parent = list(range(n_edges))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for q, r in zip(quads, state):
            pairs = [(0, 1), (2, 3)] if r == 0 else [(0, 3), (1, 2)]
            for a, b in pairs:
                x, y = find(q[a]), find(q[b])
                if x != y:
                    parent[max(x, y)] = min(x, y)
        roots = sorted({find(e) for e in range(n_edges)})
        lab = {r: i for i, r in enumerate(roots)}
        return [lab[find(e)] for e in range(n_edges)], len(roots) + loops

    states = list(itertools.product([0, 1], repeat=n))
    info = {s: circles(s) for s in states}
    gens = {}
    index = []
    for s in states:
        _, k = info[s]
        for lab in range(1 << k):
            gens[(s, lab)] = len(index)
            index.append((s, lab))

    def grading(s, lab):
        k = info[s][1]
        xs = bin(lab).count('1')
        h = sum(s)
        return h - n_minus, (k - xs) - xs + h + n_plus - 2 * n_minus

    def image(s, lab):
        out = 0
        ec, k = info[s]
        for c in range(n):
            if s[c] == 1:
                continue
            s2 = s[:c] + (1,) + s[c + 1:]
            ec2, k2 = info[s2]
            # circle map via edges; free loops keep their positions at the end
            fwd = {}
            for e in range(n_edges):
                fwd.setdefault(ec[e], set()).add(ec2[e])
            labels = []
            if k2 == k - 1:
                # merge
                tgt = {}
                for a in range(k - loops):
                    (b,) = fwd[a]
                    tgt.setdefault(b, []).append(a)
                new = 0
                ok = True
                for b, srcs in tgt.items():
                    xs = sum((lab >> a) & 1 for a in srcs)
                    if xs == 2:
                        ok = False
                    elif xs == 1:
                        new |= 1 << b
                for j in range(loops):
                    if (lab >> (k - loops + j)) & 1:
                        new |= 1 << (k2 - loops + j)
                if ok:
                    labels.append(new)
            else:
                base = 0
                split_src = None
                for a in range(k - loops):
                    if len(fwd[a]) == 2:
                        split_src = a
                    else:
                        (b,) = fwd[a]
                        if (lab >> a) & 1:
                            base |= 1 << b
                for j in range(loops):
                    if (lab >> (k - loops + j)) & 1:
                        base |= 1 << (k2 - loops + j)
                c1, c2 = sorted(fwd[split_src])
                if (lab >> split_src) & 1:
                    labels.append(base | (1 << c1) | (1 << c2))
                else:
                    labels.append(base | (1 << c1))
                    labels.append(base | (1 << c2))
            for l2 in labels:
                out ^= 1 << gens[(s2, l2)]
        return out

    by_grade = {}
    for g, (s, lab) in enumerate(index):
        by_grade.setdefault(grading(s, lab), []).append(g)
    ranks = {}
    for (i, j), gs in by_grade.items():
        ranks[(i, j)] = gf2_rank([image(*index[g]) for g in gs], len(index))
    dims = {}
    for (i, j), gs in by_grade.items():
        d = len(gs) - ranks[(i, j)] - ranks.get((i - 1, j), 0)
        if d:
            dims[(i, j)] = d
    return dims


def main():
    cmd, files = sys.argv[1], sys.argv[2:]
    for f in files:
        quads, signs, loops = parse(open(f).read())
        # A free loop beside anything else splits the link, and split links
        # have zero Alexander polynomial.
        pieces = loops + (1 if quads else 0)
        coeffs = [0] if pieces > 1 else ([1] if not quads else alexander(quads, signs))
        if cmd == 'alexander':
            print(json.dumps({'file': f, 'alexander': coeffs}))
        elif cmd == 'det':
            print(json.dumps({'file': f, 'det': abs(sum(c * (-1) ** k for k, c in enumerate(coeffs)))}))
        elif cmd == 'kh':
            dims = khovanov_f2(quads, signs, loops)
            trip = sorted([[2 * i, 2 * j, d] for (i, j), d in dims.items()])
            print(json.dumps({'file': f, 'kh_f2_half_units': trip}))


if __name__ == '__main__':
    main()
