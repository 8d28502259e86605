//! Arrangement file formats.
//!
//! Text: a header line `d n`, then `d` lines of `n` rationals (`p/q` or
//! integers) whose COLUMNS are the normals. Blank lines and anything after
//! `#` are ignored.
//!
//! JSON: `{"normals": [["1","0"], ["0","1"], ...]}`, one list of `d`
//! rational strings per normal.

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::exact::{QMatrix, Rational};

pub fn parse_text(text: &str) -> Result<Arrangement> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty input".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidInput(format!("bad header {header:?}, expected `d n`")))?;
    let [d, n] = dims[..] else {
        return Err(Error::InvalidInput(format!(
            "bad header {header:?}, expected `d n`"
        )));
    };
    let mut rows = Vec::with_capacity(d);
    for i in 0..d {
        let line = lines
            .next()
            .ok_or_else(|| Error::InvalidInput(format!("expected {d} rows, found {i}")))?;
        let row: Vec<Rational> = line
            .split_whitespace()
            .map(|t| t.parse::<Rational>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidInput(format!("row {}: {e}", i + 1)))?;
        if row.len() != n {
            return Err(Error::InvalidInput(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::InvalidInput(format!(
            "unexpected trailing line {extra:?}"
        )));
    }
    Arrangement::from_column_matrix(&QMatrix::from_rows(rows))
}

pub fn parse_json(text: &str) -> Result<Arrangement> {
    serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON arrangement: {e}")))
}

/// JSON when the first non-blank character is `{`, text otherwise.
pub fn parse_any(text: &str) -> Result<Arrangement> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// Renders in the text format.
pub fn to_text(arr: &Arrangement) -> String {
    let d = arr.ambient_dim();
    let mut out = format!("{d} {}\n", arr.len());
    for i in 0..d {
        let row: Vec<String> = arr.normals().iter().map(|a| a[i].to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_columns_are_normals() {
        let a = parse_text("2 3\n1 0 -1\n0 1 -1\n").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(
            a.normal(2),
            &[Rational::from_integer(-1), Rational::from_integer(-1)]
        );
        assert_eq!(parse_text(&to_text(&a)).unwrap(), a);
    }

    #[test]
    fn comments_and_fractions() {
        let a = parse_text("# three lines\n2 3\n1/2 0 1 # first row\n\n0 3/4 1\n").unwrap();
        assert_eq!(a.normal(0)[0], Rational::new(1, 2));
    }

    #[test]
    fn malformed_text_is_rejected() {
        for bad in [
            "",
            "2\n1 0",
            "2 2\n1 0\n",
            "2 2\n1 0\n0 x\n",
            "2 2\n1 0 3\n0 1\n",
            "1 2\n1 2\n3 4\n",
            "2 2\n1 2\n2 4\n",
        ] {
            assert!(
                matches!(parse_text(bad), Err(Error::InvalidInput(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn json_format() {
        let a = parse_any(r#"{"normals": [["1","0"], ["0","1"], ["1","1"]]}"#).unwrap();
        assert_eq!(a.len(), 3);
        assert!(parse_any(r#"{"normals": [["1","0"], ["2","0"]]}"#).is_err());
        assert!(parse_any(r#"{"normals": [[1, 0]]}"#).is_err());
    }
}
