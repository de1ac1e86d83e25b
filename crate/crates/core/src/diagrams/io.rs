//! Text and JSON forms of planar diagrams.
//!
//! Text form, edges 1-indexed:
//!
//! ```text
//! X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]
//! orientation: + + +
//! loops: 0
//! basepoint: 1
//! ```
//!
//! Each `X[a,b,c,d]` lists edges counterclockwise from the incoming under
//! edge. The orientation line gives crossing signs; without it the over
//! direction is inferred from edge consistency, falling back on the usual
//! table rule (positive when `b - d == 1` or `d - b > 1`).

use serde::{Deserialize, Serialize};

use crate::diagrams::{Crossing, DiagramError, PDCode};

/// JSON form; edges 1-indexed like the text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdJson {
    pub crossings: Vec<[usize; 4]>,
    #[serde(default)]
    pub orientations: Option<Vec<String>>,
    #[serde(default)]
    pub basepoint: Option<usize>,
    #[serde(default)]
    pub free_loops: usize,
}

fn sign_char(c: &Crossing) -> &'static str {
    if c.sign() > 0 {
        "+"
    } else {
        "-"
    }
}

/// Canonical text form (single-line crossing list).
pub fn to_text(pd: &PDCode) -> String {
    let xs: Vec<String> = pd
        .crossings()
        .iter()
        .map(|c| {
            let s = c.slots.map(|e| e + 1);
            format!("X[{},{},{},{}]", s[0], s[1], s[2], s[3])
        })
        .collect();
    let mut out = xs.join(", ");
    out.push('\n');
    let signs: Vec<&str> = pd.crossings().iter().map(sign_char).collect();
    out.push_str(&format!("orientation: {}\n", signs.join(" ")));
    if pd.free_loops() > 0 {
        out.push_str(&format!("loops: {}\n", pd.free_loops()));
    }
    if let Some(b) = pd.basepoint() {
        out.push_str(&format!("basepoint: {}\n", b + 1));
    }
    out
}

fn perr(msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse(msg.into())
}

fn parse_signs(s: &str) -> Result<Vec<i8>, DiagramError> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            _ => Err(perr(format!("bad sign {t:?}"))),
        })
        .collect()
}

/// Parses the text form.
pub fn parse_text(text: &str) -> Result<PDCode, DiagramError> {
    let mut quads: Vec<[usize; 4]> = Vec::new();
    let mut signs: Option<Vec<i8>> = None;
    let mut loops = 0usize;
    let mut basepoint = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some((key, val)) = line.split_once(':') {
            let val = val.trim();
            match key.trim() {
                "orientation" | "signs" => signs = Some(parse_signs(val)?),
                "loops" => loops = val.parse().map_err(|_| perr("bad loops count"))?,
                "basepoint" => {
                    let b: usize = val.parse().map_err(|_| perr("bad basepoint"))?;
                    if b == 0 {
                        return Err(perr("edges are 1-indexed"));
                    }
                    basepoint = Some(b - 1);
                }
                k => return Err(perr(format!("unknown key {k:?}"))),
            }
            continue;
        }
        let body = line.trim_start_matches("PD[").trim_end_matches(']');
        for part in body.split("X[").skip(1) {
            let inner = part.split(']').next().ok_or_else(|| perr("unterminated crossing"))?;
            let nums: Vec<usize> = inner
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| perr(format!("bad edge {t:?}"))))
                .collect::<Result<_, _>>()?;
            if nums.len() != 4 || nums.contains(&0) {
                return Err(perr(format!("crossing X[{inner}] needs four 1-indexed edges")));
            }
            quads.push([nums[0] - 1, nums[1] - 1, nums[2] - 1, nums[3] - 1]);
        }
    }
    from_quads(&quads, signs.as_deref(), loops, basepoint)
}

/// Builds a diagram from 0-indexed quads with optional signs.
pub fn from_quads(
    quads: &[[usize; 4]],
    signs: Option<&[i8]>,
    loops: usize,
    basepoint: Option<usize>,
) -> Result<PDCode, DiagramError> {
    let over = match signs {
        Some(s) => {
            if s.len() != quads.len() {
                return Err(perr(format!("{} signs for {} crossings", s.len(), quads.len())));
            }
            s.iter().map(|&x| if x > 0 { 3 } else { 1 }).collect()
        }
        None => infer_over(quads),
    };
    let crossings = quads.iter().zip(over).map(|(q, o)| Crossing { slots: *q, over_in: o }).collect();
    PDCode::new(crossings, loops, basepoint)
}

/// Chooses over directions so every edge has one head, propagating forced
/// choices and using the table rule where nothing is forced.
fn infer_over(quads: &[[usize; 4]]) -> Vec<u8> {
    let n_edges = quads.iter().flatten().max().map_or(0, |m| m + 1);
    // incoming[e]: Some(true) once e is known to enter somewhere.
    let mut over: Vec<Option<u8>> = vec![None; quads.len()];
    loop {
        let mut heads = vec![0usize; n_edges];
        let mut tails = vec![0usize; n_edges];
        for (q, o) in quads.iter().zip(&over) {
            heads[q[0]] += 1;
            tails[q[2]] += 1;
            if let Some(o) = o {
                let (h, t) = if *o == 1 { (q[1], q[3]) } else { (q[3], q[1]) };
                heads[h] += 1;
                tails[t] += 1;
            }
        }
        let mut changed = false;
        for (i, q) in quads.iter().enumerate() {
            if over[i].is_some() {
                continue;
            }
            // Slot 1 must enter if edge q[1] already leaves elsewhere, etc.
            let forced = if tails[q[1]] > 0 || heads[q[3]] > 0 {
                Some(1)
            } else if heads[q[1]] > 0 || tails[q[3]] > 0 {
                Some(3)
            } else {
                None
            };
            if forced.is_some() {
                over[i] = forced;
                changed = true;
            }
        }
        if !changed {
            match over.iter().position(|o| o.is_none()) {
                Some(i) => {
                    let [a, b, c, d] = quads[i].map(|e| e as i64);
                    let positive = b - d == 1 || d - b > 1 || a == b || c == d;
                    over[i] = Some(if positive { 3 } else { 1 });
                }
                None => break,
            }
        }
    }
    over.into_iter().map(|o| o.expect("assigned")).collect()
}

pub fn to_json(pd: &PDCode) -> PdJson {
    PdJson {
        crossings: pd.crossings().iter().map(|c| c.slots.map(|e| e + 1)).collect(),
        orientations: Some(pd.crossings().iter().map(|c| sign_char(c).to_string()).collect()),
        basepoint: pd.basepoint().map(|b| b + 1),
        free_loops: pd.free_loops(),
    }
}

pub fn from_json(j: &PdJson) -> Result<PDCode, DiagramError> {
    let mut quads = Vec::with_capacity(j.crossings.len());
    for q in &j.crossings {
        if q.contains(&0) {
            return Err(perr("edges are 1-indexed"));
        }
        quads.push(q.map(|e| e - 1));
    }
    let signs = match &j.orientations {
        Some(o) => Some(parse_signs(&o.join(" "))?),
        None => None,
    };
    let bp = match j.basepoint {
        Some(0) => return Err(perr("edges are 1-indexed")),
        b => b.map(|b| b - 1),
    };
    from_quads(&quads, signs.as_deref(), j.free_loops, bp)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]";

    #[test]
    fn trefoil_text_infers_positive_crossings() {
        let pd = parse_text(TREFOIL).unwrap();
        assert_eq!(pd.writhe(), 3);
    }

    #[test]
    fn text_round_trip_keeps_signs_loops_and_basepoint() {
        let pd = parse_text("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]\nloops: 2\nbasepoint: 4").unwrap();
        let again = parse_text(&to_text(&pd)).unwrap();
        assert_eq!(again, pd);
        assert_eq!(again.free_loops(), 2);
        assert_eq!(again.basepoint(), Some(3));
    }

    #[test]
    fn json_round_trip() {
        let pd = parse_text(TREFOIL).unwrap();
        let j = serde_json::to_string(&to_json(&pd)).unwrap();
        let back: PdJson = serde_json::from_str(&j).unwrap();
        assert_eq!(from_json(&back).unwrap(), pd);
    }

    #[test]
    fn inconsistent_signs_are_rejected() {
        assert!(parse_text(&format!("{TREFOIL}\norientation: - - -")).is_err());
    }

    #[test]
    fn empty_text_with_loop_is_unknot() {
        let pd = parse_text("loops: 1").unwrap();
        assert_eq!(pd.n_components(), 1);
        assert_eq!(pd.n_crossings(), 0);
    }

    #[test]
    fn garbage_is_a_parse_error() {
        assert!(matches!(parse_text("X[1,2,3]"), Err(DiagramError::Parse(_))));
        assert!(matches!(parse_text("colour: red"), Err(DiagramError::Parse(_))));
    }
}
