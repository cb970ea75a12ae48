//! Plain-text front files: one point per line, whitespace-separated decimal
//! coordinates, `#`-prefixed comment lines, dimension inferred from the first
//! data line. Values are written with 17 significant digits so a write/read
//! round trip reproduces every f64 exactly.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hvlc::Front;

pub fn read_front(path: &Path) -> Result<Front> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read front file {}", path.display()))?;
    parse_front(&text).with_context(|| format!("in front file {}", path.display()))
}

pub fn parse_front(text: &str) -> Result<Front> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut dim: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for field in line.split_whitespace() {
            let value: f64 = field
                .parse()
                .with_context(|| format!("line {}: invalid number {:?}", lineno + 1, field))?;
            if !value.is_finite() || value < 0.0 {
                bail!(
                    "line {}: coordinate {} must be finite and nonnegative",
                    lineno + 1,
                    value
                );
            }
            row.push(value);
        }
        match dim {
            None => dim = Some(row.len()),
            Some(d) if d != row.len() => {
                bail!(
                    "line {}: expected {} fields, got {}",
                    lineno + 1,
                    d,
                    row.len()
                );
            }
            _ => {}
        }
        rows.push(row);
    }
    if rows.is_empty() {
        bail!("no data lines");
    }
    Ok(Front::from_rows(rows)?)
}

pub fn write_front(front: &Front, path: &Path) -> Result<()> {
    fs::write(path, format_front(front))
        .with_context(|| format!("cannot write front file {}", path.display()))
}

pub fn format_front(front: &Front) -> String {
    let mut out = String::new();
    for point in front.points() {
        let fields: Vec<String> = point.coords().iter().map(|c| format!("{c:.16e}")).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_points() {
        let f = parse_front("2 1\n1 2\n").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.point(0).coords(), &[2.0, 1.0]);
        assert_eq!(f.point(1).coords(), &[1.0, 2.0]);
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let f = parse_front("# header\n\n3 4\n# tail\n").unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn round_trip_is_exact() {
        let f = Front::from_rows(vec![
            vec![0.1, 2.0 / 3.0],
            vec![1e-200, 123.456_789_012_345_67],
        ])
        .unwrap();
        let back = parse_front(&format_front(&f)).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn ragged_line_reports_number() {
        let err = parse_front("1 2\n3 4 5\n").unwrap_err();
        assert!(format!("{err:#}").contains("line 2"));
    }

    #[test]
    fn rejects_negative_and_non_numeric() {
        assert!(parse_front("1 -2\n").is_err());
        assert!(parse_front("1 x\n").is_err());
        assert!(parse_front("").is_err());
    }
}
