//! Line-oriented text format for polynomial matrices.
//!
//! ```text
//! polymat 1
//! p 2013265921
//! dims 2 2
//! e 0 0 1
//! e 0 1 0 1
//! e 1 0 0 1
//! e 1 1 1
//! ```
//!
//! Entry lines list coefficients from low to high degree as canonical
//! residues, without trailing zeros; entries not listed are zero and `#`
//! starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::Polynomial;
use crate::polymat::PolyMatrix;

const TAG: &str = "polymat";
const VERSION: &str = "1";

/// Canonical text of `a`: header, then nonzero entries in row-major order.
pub fn serialize(a: &PolyMatrix) -> String {
    let mut out = String::new();
    writeln!(out, "{TAG} {VERSION}").unwrap();
    writeln!(out, "p {}", a.field().modulus()).unwrap();
    writeln!(out, "dims {} {}", a.rows(), a.cols()).unwrap();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.entry(i, j);
            if e.is_zero() {
                continue;
            }
            write!(out, "e {i} {j}").unwrap();
            for c in e.coeffs() {
                write!(out, " {c}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns, comment stripped.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (k, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &body[s..k]));
                start = None;
            }
            (false, None) => start = Some(k),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<u64> {
    tok.parse::<u64>()
        .map_err(|_| err(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

/// Parses one matrix; the prime is taken from the file.
pub fn parse(text: &str) -> Result<PolyMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());
    let last_line = text.lines().count().max(1);

    let (ln, header) = lines.next().ok_or_else(|| err(1, 1, "empty input"))?;
    if header.len() != 2 || header[0].1 != TAG {
        return Err(err(ln, header[0].0, format!("expected `{TAG} {VERSION}`")));
    }
    if header[1].1 != VERSION {
        return Err(err(ln, header[1].0, format!("unsupported version `{}`", header[1].1)));
    }

    let (ln, prime) = lines.next().ok_or_else(|| err(last_line, 1, "missing `p` line"))?;
    if prime.len() != 2 || prime[0].1 != "p" {
        return Err(err(ln, prime[0].0, "expected `p <prime>`"));
    }
    let p = number(ln, prime[1])?;
    let field = PrimeField::new(p).map_err(|e| err(ln, prime[1].0, e.to_string()))?;

    let (ln, dims) = lines.next().ok_or_else(|| err(last_line, 1, "missing `dims` line"))?;
    if dims.len() != 3 || dims[0].1 != "dims" {
        return Err(err(ln, dims[0].0, "expected `dims <rows> <cols>`"));
    }
    let rows = number(ln, dims[1])? as usize;
    let cols = number(ln, dims[2])? as usize;

    let mut a = PolyMatrix::zero(field, rows, cols);
    let mut seen = vec![false; rows * cols];
    for (ln, toks) in lines {
        if toks[0].1 != "e" {
            return Err(err(
                ln,
                toks[0].0,
                format!("expected an entry line, found `{}`", toks[0].1),
            ));
        }
        if toks.len() < 4 {
            return Err(err(ln, toks[0].0, "entry needs indices and at least one coefficient"));
        }
        let i = number(ln, toks[1])? as usize;
        let j = number(ln, toks[2])? as usize;
        if i >= rows {
            return Err(err(ln, toks[1].0, format!("row {i} out of range")));
        }
        if j >= cols {
            return Err(err(ln, toks[2].0, format!("column {j} out of range")));
        }
        if std::mem::replace(&mut seen[i * cols + j], true) {
            return Err(err(ln, toks[0].0, format!("entry ({i}, {j}) given twice")));
        }
        let mut coeffs = Vec::with_capacity(toks.len() - 3);
        for &tok in &toks[3..] {
            let c = number(ln, tok)?;
            if c >= p {
                return Err(err(ln, tok.0, format!("{c} is not reduced modulo {p}")));
            }
            coeffs.push(field.elem(c));
        }
        let last = toks[toks.len() - 1];
        if coeffs.last().is_some_and(|c| c.is_zero()) {
            return Err(err(ln, last.0, "trailing zero coefficient"));
        }
        a.set(i, j, Polynomial::from_coeffs(coeffs));
    }
    Ok(a)
}

/// Parses and checks that the file is over `field`.
pub fn parse_over(text: &str, field: &PrimeField) -> Result<PolyMatrix> {
    let a = parse(text)?;
    if a.field() != field {
        return Err(Error::PrimeMismatch(a.field().modulus(), field.modulus()));
    }
    Ok(a)
}

pub fn read_file(path: &Path) -> Result<PolyMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn write_file(path: &Path, a: &PolyMatrix) -> Result<()> {
    std::fs::write(path, serialize(a)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_poly_matrix, rng_from_seed};

    #[test]
    fn identity_text() {
        let f = PrimeField::default();
        let text = serialize(&PolyMatrix::identity(f, 2));
        assert_eq!(text, "polymat 1\np 2013265921\ndims 2 2\ne 0 0 1\ne 1 1 1\n");
        assert_eq!(parse(&text).unwrap(), PolyMatrix::identity(f, 2));
    }

    #[test]
    fn omitted_entries_and_comments() {
        let text = "# header comment\npolymat 1\np 97 # small\n\ndims 2 3\ne 1 2 0 5\n";
        let a = parse(text).unwrap();
        let f = PrimeField::new(97).unwrap();
        let mut expect = PolyMatrix::zero(f, 2, 3);
        expect.set(1, 2, Polynomial::from_i64s(&f, &[0, 5]));
        assert_eq!(a, expect);
    }

    #[test]
    fn random_round_trip() {
        let mut rng = rng_from_seed(70);
        for p in [97, 7, crate::DEFAULT_PRIME] {
            let f = PrimeField::new(p).unwrap();
            let a = random_poly_matrix(&f, 3, 4, 5, &mut rng);
            assert_eq!(parse(&serialize(&a)).unwrap(), a);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let bad = |text: &str| match parse(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(bad("polymat 2\n"), (1, 9));
        assert_eq!(bad("polymat 1\np 91\n"), (2, 3));
        assert_eq!(bad("polymat 1\np 97\ndims 1 1\ne 0 0 1 0\n"), (4, 9));
        assert_eq!(bad("polymat 1\np 97\ndims 1 1\ne 0 0 97\n"), (4, 7));
        assert_eq!(bad("polymat 1\np 97\ndims 1 1\ne 0 3 1\n"), (4, 5));
        assert_eq!(bad("polymat 1\np 97\ndims 1 1\ne 0 0 1\ne 0 0 2\n"), (5, 1));
        assert_eq!(bad("polymat 1\np 97\ndims 1 x\n"), (3, 8));
        assert_eq!(bad("polymat 1\np 97\n"), (2, 1));
        let f = PrimeField::default();
        assert_eq!(
            parse_over("polymat 1\np 97\ndims 0 0\n", &f),
            Err(Error::PrimeMismatch(97, f.modulus()))
        );
    }
}
