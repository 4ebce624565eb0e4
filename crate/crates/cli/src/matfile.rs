//! The matrix file format.
//!
//! A file is a header line
//!
//! ```text
//! field <real|complex|rational|gf> [p] rows <m> cols <n>
//! ```
//!
//! followed by `m` lines of `n` whitespace-separated scalars in the
//! field's text syntax. The `gf` kind requires the modulus token; the
//! others forbid it. Rendering then parsing gives back an equal matrix;
//! exact fields round-trip identically and floating entries round-trip
//! through shortest-decimal form.

use std::fmt::Write as _;

use kronroot::{FieldElement, FieldKind, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

fn fail<T>(msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError(msg.into()))
}

pub fn parse(text: &str) -> Result<Matrix, ParseError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = match lines.next() {
        Some(h) => h,
        None => return fail("empty matrix file"),
    };
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.first() != Some(&"field") {
        return fail("header must start with `field`");
    }
    let (kind, rest) = match tokens.get(1) {
        Some(&"real") => (FieldKind::FloatReal, &tokens[2..]),
        Some(&"complex") => (FieldKind::FloatComplex, &tokens[2..]),
        Some(&"rational") => (FieldKind::Rational, &tokens[2..]),
        Some(&"gf") => {
            let p = tokens
                .get(2)
                .ok_or_else(|| ParseError("gf requires a modulus".into()))?;
            let p: u32 = p
                .parse()
                .map_err(|_| ParseError(format!("bad gf modulus {p:?}")))?;
            let kind = FieldKind::prime_field(p).map_err(|e| ParseError(e.to_string()))?;
            (kind, &tokens[3..])
        }
        Some(other) => return fail(format!("unknown field kind {other:?}")),
        None => return fail("header is missing the field kind"),
    };
    let dims: [&str; 4] = match rest.len() {
        4 => [rest[0], rest[1], rest[2], rest[3]],
        _ => return fail("header must end with `rows <m> cols <n>`"),
    };
    if dims[0] != "rows" || dims[2] != "cols" {
        return fail("header must end with `rows <m> cols <n>`");
    }
    let rows: usize = dims[1]
        .parse()
        .map_err(|_| ParseError(format!("bad row count {:?}", dims[1])))?;
    let cols: usize = dims[3]
        .parse()
        .map_err(|_| ParseError(format!("bad column count {:?}", dims[3])))?;
    if rows == 0 || cols == 0 {
        return fail("matrix dimensions must be at least 1x1");
    }

    let mut data: Vec<Vec<FieldElement>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let line = match lines.next() {
            Some(l) => l,
            None => return fail(format!("expected {rows} data rows, found {r}")),
        };
        let entries: Vec<&str> = line.split_whitespace().collect();
        if entries.len() != cols {
            return fail(format!(
                "row {} has {} entries, expected {cols}",
                r + 1,
                entries.len()
            ));
        }
        let parsed: Result<Vec<FieldElement>, ParseError> = entries
            .iter()
            .map(|tok| FieldElement::parse(kind, tok).map_err(|e| ParseError(e.to_string())))
            .collect();
        data.push(parsed?);
    }
    if let Some(extra) = lines.next() {
        return fail(format!("unexpected trailing data: {extra:?}"));
    }
    Matrix::from_rows(kind, data).map_err(|e| ParseError(e.to_string()))
}

pub fn render(mat: &Matrix) -> String {
    let mut out = String::new();
    match mat.field() {
        FieldKind::FloatReal => out.push_str("field real"),
        FieldKind::FloatComplex => out.push_str("field complex"),
        FieldKind::Rational => out.push_str("field rational"),
        FieldKind::PrimeField(p) => {
            let _ = write!(out, "field gf {}", p.get());
        }
    }
    let _ = writeln!(out, " rows {} cols {}", mat.rows(), mat.cols());
    for r in 0..mat.rows() {
        for c in 0..mat.cols() {
            if c > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{}", mat.get(r, c));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_exact_fields() {
        let text = "field rational rows 2 cols 3\n1 -2/3 0\n4 5 -6\n";
        let m = parse(text).unwrap();
        assert_eq!(render(&m), text);
        let text = "field gf 7 rows 1 cols 4\n0 1 5 6\n";
        let m = parse(text).unwrap();
        assert_eq!(render(&m), text);
    }

    #[test]
    fn round_trip_floating_fields() {
        let text = "field real rows 1 cols 3\n-1.25 0.1 3\n";
        let m = parse(text).unwrap();
        assert_eq!(render(&m), text);
        let text = "field complex rows 1 cols 2\n1+0i -2.5-3i\n";
        let m = parse(text).unwrap();
        assert_eq!(render(&m), text);
    }

    #[test]
    fn parse_then_render_is_identity_on_rendered_output() {
        let m = Matrix::from_i64_rows(FieldKind::Rational, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(parse(&render(&m)).unwrap(), m);
    }

    #[test]
    fn blank_lines_are_tolerated() {
        let text = "field rational rows 2 cols 1\n\n1\n\n2\n\n";
        let m = parse(text).unwrap();
        assert_eq!(m.dims(), (2, 1));
    }

    #[test]
    fn header_errors() {
        assert!(parse("").is_err());
        assert!(parse("matrix rational rows 1 cols 1\n0\n").is_err());
        assert!(parse("field imaginary rows 1 cols 1\n0\n").is_err());
        assert!(parse("field gf rows 1 cols 1\n0\n").is_err());
        assert!(parse("field gf 6 rows 1 cols 1\n0\n").is_err());
        assert!(parse("field rational 4 rows 1 cols 1\n0\n").is_err());
        assert!(parse("field rational rows 0 cols 1\n").is_err());
        assert!(parse("field rational rows 1 cols 1\n").is_err());
    }

    #[test]
    fn body_errors() {
        assert!(parse("field rational rows 1 cols 2\n1\n").is_err());
        assert!(parse("field rational rows 1 cols 1\n1\n2\n").is_err());
        assert!(parse("field rational rows 1 cols 1\n1.5\n").is_err());
        assert!(parse("field gf 5 rows 1 cols 1\n-1\n").is_err());
    }
}
