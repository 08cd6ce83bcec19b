//! SDPA sparse (".dat-s") export and a strict reader for it.
//!
//! SDPA solves `min Σ c_i x_i` subject to `Σ F_i x_i - F_0 ⪰ 0`. With
//! `x = y`, `F_i = G_i`, `F_0 = -C` and `c = -b` this is our slack form.
//! The objective offset and the a priori variable bounds are carried in
//! leading `*` comment lines, which SDPA readers skip.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sdp::problem::{BlockKind, Entry, SdpProblem, VariableBound};

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(" ")
}

/// Writes the problem in SDPA sparse format with deterministic ordering.
pub fn export_sdpa(p: &SdpProblem) -> String {
    let mut out = String::new();
    if p.offset != 0.0 {
        let _ = writeln!(out, "* offset {}", p.offset);
    }
    match &p.bounds {
        VariableBound::None => {}
        VariableBound::Absolute(c) => {
            let _ = writeln!(out, "* bound absolute {}", join(c.iter().copied()));
        }
        VariableBound::RelativeToObjective(c) => {
            let _ = writeln!(out, "* bound relative {}", join(c.iter().copied()));
        }
    }
    let _ = writeln!(out, "{}", p.num_variables());
    let _ = writeln!(out, "{}", p.blocks.len());
    let sizes: Vec<String> = p
        .blocks
        .iter()
        .map(|b| match b.kind {
            BlockKind::Psd => b.dim.to_string(),
            BlockKind::Diagonal => format!("-{}", b.dim),
        })
        .collect();
    let _ = writeln!(out, "{}", sizes.join(" "));
    let _ = writeln!(out, "{}", join(p.objective.iter().map(|b| -b)));

    let mut lines: Vec<(usize, Entry)> = Vec::new();
    lines.extend(p.constant.iter().map(|e| (0, Entry { value: -e.value, ..*e })));
    for (i, entries) in p.coefficients.iter().enumerate() {
        lines.extend(entries.iter().map(|e| (i + 1, *e)));
    }
    lines.sort_by(|(ma, a), (mb, b)| (ma, a.block, a.row, a.col).cmp(&(mb, b.block, b.row, b.col)));
    for (mat, e) in lines {
        if e.value != 0.0 {
            let _ = writeln!(out, "{} {} {} {} {}", mat, e.block + 1, e.row + 1, e.col + 1, e.value);
        }
    }
    out
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("sdpa line {line}: {msg}"))
}

fn numbers(s: &str) -> Vec<&str> {
    s.split(|c: char| c.is_whitespace() || matches!(c, ',' | '(' | ')' | '{' | '}'))
        .filter(|t| !t.is_empty())
        .collect()
}

/// Parses SDPA sparse text. Rejects anything it does not understand:
/// wrong counts, out-of-range indices, off-diagonal entries in diagonal
/// blocks, `i > j`, and non-finite values.
pub fn parse_sdpa(text: &str) -> Result<SdpProblem> {
    let mut p = SdpProblem::new();
    let mut offset = 0.0;
    let mut bound: Option<(String, Vec<f64>)> = None;
    let mut body = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() {
            continue;
        }
        if body.is_empty() && (line.starts_with('*') || line.starts_with('"')) {
            let toks: Vec<&str> = line.trim_start_matches(['*', '"']).split_whitespace().collect();
            match toks.first() {
                Some(&"offset") if toks.len() == 2 => {
                    offset = toks[1].parse().map_err(|e| parse_err(lineno, e))?;
                }
                Some(&"bound") if toks.len() >= 2 => {
                    let vals = toks[2..]
                        .iter()
                        .map(|t| t.parse::<f64>().map_err(|e| parse_err(lineno, e)))
                        .collect::<Result<Vec<_>>>()?;
                    bound = Some((toks[1].to_string(), vals));
                }
                _ => {}
            }
            continue;
        }
        body.push((lineno, line));
    }
    let mut it = body.into_iter();
    let mut next = |what: &str| it.next().ok_or_else(|| Error::Parse(format!("sdpa: missing {what}")));

    let (ln, l) = next("constraint count")?;
    let m: usize = l.split_whitespace().next().unwrap_or("").parse().map_err(|e| parse_err(ln, e))?;
    let (ln, l) = next("block count")?;
    let nb: usize = l.split_whitespace().next().unwrap_or("").parse().map_err(|e| parse_err(ln, e))?;
    let (ln, l) = next("block sizes")?;
    let sizes = numbers(l);
    if sizes.len() != nb {
        return Err(parse_err(ln, format!("expected {nb} block sizes, found {}", sizes.len())));
    }
    for (k, s) in sizes.iter().enumerate() {
        let v: i64 = s.parse().map_err(|e| parse_err(ln, e))?;
        let kind = if v < 0 { BlockKind::Diagonal } else { BlockKind::Psd };
        if v == 0 {
            return Err(parse_err(ln, "zero block size"));
        }
        p.add_block(format!("block{}", k + 1), v.unsigned_abs() as usize, kind);
    }
    let (ln, l) = next("objective")?;
    let c = numbers(l);
    if c.len() != m {
        return Err(parse_err(ln, format!("expected {m} objective values, found {}", c.len())));
    }
    for (i, s) in c.iter().enumerate() {
        let v: f64 = s.parse().map_err(|e| parse_err(ln, e))?;
        if !v.is_finite() {
            return Err(parse_err(ln, "non-finite objective"));
        }
        p.add_variable(format!("y{}", i + 1), -v);
    }
    for (ln, l) in it {
        let toks = numbers(l);
        if toks.len() != 5 {
            return Err(parse_err(ln, "entry lines need 5 fields"));
        }
        let idx = |t: &str| t.parse::<usize>().map_err(|e| parse_err(ln, e));
        let (mat, blk, i, j) = (idx(toks[0])?, idx(toks[1])?, idx(toks[2])?, idx(toks[3])?);
        let v: f64 = toks[4].parse().map_err(|e| parse_err(ln, e))?;
        if !v.is_finite() {
            return Err(parse_err(ln, "non-finite value"));
        }
        if mat > m || blk == 0 || blk > nb || i == 0 || j == 0 {
            return Err(parse_err(ln, "index out of range"));
        }
        let block = &p.blocks[blk - 1];
        if i > j || j > block.dim {
            return Err(parse_err(ln, format!("entry ({i},{j}) invalid for block of size {}", block.dim)));
        }
        if block.kind == BlockKind::Diagonal && i != j {
            return Err(parse_err(ln, "off-diagonal entry in diagonal block"));
        }
        if mat == 0 {
            p.add_constant(blk - 1, i - 1, j - 1, -v);
        } else {
            p.add_coefficient(mat - 1, blk - 1, i - 1, j - 1, v);
        }
    }
    p.offset = offset;
    p.bounds = match bound {
        None => VariableBound::None,
        Some((kind, vals)) => {
            if vals.len() != m {
                return Err(Error::Parse(format!("sdpa: bound comment has {} values, expected {m}", vals.len())));
            }
            match kind.as_str() {
                "absolute" => VariableBound::Absolute(vals),
                "relative" => VariableBound::RelativeToObjective(vals),
                other => return Err(Error::Parse(format!("sdpa: unknown bound kind {other}"))),
            }
        }
    };
    p.canonicalize();
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial() -> SdpProblem {
        // max y subject to 1 - y >= 0
        let mut p = SdpProblem::new();
        let b = p.add_block("lp", 1, BlockKind::Diagonal);
        p.add_constant(b, 0, 0, 1.0);
        let y = p.add_variable("y", 1.0);
        p.add_coefficient(y, b, 0, 0, -1.0);
        p.canonicalize();
        p
    }

    #[test]
    fn trivial_bytes_are_stable() {
        let text = export_sdpa(&trivial());
        assert_eq!(text, "1\n1\n-1\n-1\n0 1 1 1 -1\n1 1 1 1 -1\n");
        assert_eq!(export_sdpa(&trivial()), text);
    }

    #[test]
    fn round_trip_preserves_problem() {
        let p = trivial();
        let q = parse_sdpa(&export_sdpa(&p)).unwrap();
        assert_eq!(q.constant, p.constant);
        assert_eq!(q.coefficients, p.coefficients);
        assert_eq!(q.objective, p.objective);
    }

    #[test]
    fn strict_reader_rejects_malformed_input() {
        assert!(parse_sdpa("1\n1\n-1\n-1\n0 1 1 2 -1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n-1\n0 1 2 1 -1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n-1 3\n").is_err());
        assert!(parse_sdpa("1\n2\n2\n-1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n-1\n2 1 1 1 1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n-1\n1 1 1 1 nan\n").is_err());
    }

    #[test]
    fn accepts_common_separators() {
        let q = parse_sdpa("\"comment\n1 =m\n1\n{-1}\n-1.0\n0 1 1 1 -1\n1,1,1,1,-1\n").unwrap();
        let t = trivial();
        assert_eq!((q.constant, q.coefficients, q.objective), (t.constant, t.coefficients, t.objective));
    }
}
