//! Text formats shared by every tool surface.
//!
//! Family file: the first significant line is `n=<int>`; each following
//! non-empty line is one set as space-separated 1-based elements in
//! ascending order; `#` starts a comment line.
//!
//! Matrix file: first line `rows cols`, then whitespace-separated integer
//! or `p/q` entries in row-major order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::matrix::RationalMatrix;
use crate::subset::Subset;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the family text format; errors name 1-based line numbers.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut ground: Option<u32> = None;
    let mut members: Vec<Subset> = Vec::new();
    let mut seen: HashSet<Subset> = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match ground {
            None => {
                let rest = line
                    .strip_prefix("n=")
                    .ok_or_else(|| parse_err(lineno, "expected header of the form n=<int>"))?;
                let n: u32 = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("invalid ground size {rest:?}")))?;
                if n == 0 {
                    return Err(parse_err(lineno, "ground size must be positive"));
                }
                ground = Some(n);
            }
            Some(n) => {
                let mut elems: Vec<u32> = Vec::new();
                for tok in line.split_whitespace() {
                    let e: u32 = tok
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("invalid element {tok:?}")))?;
                    if let Some(&last) = elems.last() {
                        if e <= last {
                            return Err(parse_err(
                                lineno,
                                "elements must be strictly ascending",
                            ));
                        }
                    }
                    elems.push(e);
                }
                let set = Subset::from_elems(n, &elems)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if !seen.insert(set.clone()) {
                    return Err(parse_err(lineno, format!("duplicate set {set}")));
                }
                members.push(set);
            }
        }
    }
    let n = ground.ok_or_else(|| parse_err(0, "missing n=<int> header"))?;
    Family::new(n, members)
}

/// Emits the family text format in canonical member order. The output
/// round-trips through [`parse_family`] unchanged.
pub fn family_to_text(family: &Family) -> String {
    let mut out = format!("n={}\n", family.ground_n());
    for m in family.members() {
        let elems: Vec<String> = m.elems().iter().map(|e| e.to_string()).collect();
        out.push_str(&elems.join(" "));
        out.push('\n');
    }
    out
}

fn parse_entry(tok: &str, lineno: usize) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.parse()
            .map_err(|_| parse_err(lineno, format!("invalid matrix entry {tok:?}")))
    };
    match tok.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(parse_err(lineno, "zero denominator in matrix entry"));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(tok)?)),
    }
}

/// Parses the matrix text format.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `rows cols` header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(lineno, "expected header `rows cols`"));
    }
    let rows: usize = dims[0]
        .parse()
        .map_err(|_| parse_err(lineno, "invalid row count"))?;
    let cols: usize = dims[1]
        .parse()
        .map_err(|_| parse_err(lineno, "invalid column count"))?;
    let mut entries = Vec::with_capacity(rows * cols);
    let mut last_line = lineno;
    for (ln, line) in lines {
        last_line = ln;
        for tok in line.split_whitespace() {
            entries.push(parse_entry(tok, ln)?);
        }
    }
    if entries.len() != rows * cols {
        return Err(parse_err(
            last_line,
            format!("expected {} entries, found {}", rows * cols, entries.len()),
        ));
    }
    RationalMatrix::new(rows, cols, entries)
}

/// Emits the matrix text format (integers printed plainly, other
/// rationals as `p/q`).
pub fn matrix_to_text(m: &RationalMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| {
                let e = m.get(r, c);
                if e.denom().is_one() {
                    e.numer().to_string()
                } else {
                    format!("{}/{}", e.numer(), e.denom())
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_round_trip() {
        let text = "# a comment\nn=6\n1 2\n\n1 3 5\n";
        let fam = parse_family(text).unwrap();
        assert_eq!(fam.ground_n(), 6);
        assert_eq!(fam.len(), 2);
        let emitted = family_to_text(&fam);
        assert_eq!(emitted, "n=6\n1 2\n1 3 5\n");
        assert_eq!(parse_family(&emitted).unwrap(), fam);
    }

    #[test]
    fn family_errors_name_lines() {
        match parse_family("n=4\n2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_family("n=4\n1 2\n1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_family("sets\n1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        match parse_family("n=4\n5\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_family("").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = "2 3\n1 -2 1/3\n0 4/6 7\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(matrix_to_text(&m), "2 3\n1 -2 1/3\n0 2/3 7\n");
        assert!(parse_matrix("2 2\n1 2 3\n").is_err());
        assert!(parse_matrix("2\n1 2\n").is_err());
        assert!(parse_matrix("1 1\n1/0\n").is_err());
    }
}
