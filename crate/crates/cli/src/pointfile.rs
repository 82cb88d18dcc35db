//! Plain-text point files: one point per line as three integers, `#` starts a
//! comment line.

use std::path::Path;

use equipart_core::exact::Point3;
use num_bigint::BigInt;
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum PointFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub fn parse_points(text: &str) -> Result<Vec<Point3>, PointFileError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(PointFileError::Parse {
                line: i + 1,
                message: format!("expected 3 integers, found {} fields", fields.len()),
            });
        }
        let mut coords = Vec::with_capacity(3);
        for f in fields {
            let v: BigInt = f.parse().map_err(|_| PointFileError::Parse {
                line: i + 1,
                message: format!("`{f}` is not an integer"),
            })?;
            coords.push(v);
        }
        let [x, y, z]: [BigInt; 3] = coords.try_into().expect("three fields");
        out.push(Point3::new(x, y, z));
    }
    Ok(out)
}

pub fn read_point_file(path: &Path) -> Result<Vec<Point3>, PointFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| PointFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_points(&text)
}

pub fn render_points(points: &[Point3]) -> String {
    points.iter().map(|p| format!("{p}\n")).collect()
}

/// SHA-256 of the canonical rendering, so comments and spacing do not
/// change the hash.
pub fn points_digest(points: &[Point3]) -> String {
    let digest = Sha256::digest(render_points(points).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let pts = parse_points("# header\n1 2 3\n\n-4 5 -6\n# done").unwrap();
        assert_eq!(pts, vec![Point3::new(1, 2, 3), Point3::new(-4, 5, -6)]);
        assert_eq!(render_points(&pts), "1 2 3\n-4 5 -6\n");
    }

    #[test]
    fn reports_bad_lines() {
        let err = parse_points("1 2 3\n1 2\n").unwrap_err();
        assert!(matches!(err, PointFileError::Parse { line: 2, .. }));
        let err = parse_points("1 2 x\n").unwrap_err();
        assert!(err.to_string().contains("`x`"));
    }

    #[test]
    fn big_coordinates_survive() {
        let pts = parse_points("123456789012345678901234567890 0 -1\n").unwrap();
        assert_eq!(render_points(&pts), "123456789012345678901234567890 0 -1\n");
    }

    #[test]
    fn digest_ignores_formatting() {
        let a = parse_points("1 2 3\n").unwrap();
        let b = parse_points("# c\n  1   2 3  \n").unwrap();
        assert_eq!(points_digest(&a), points_digest(&b));
        assert_eq!(points_digest(&a).len(), 64);
    }
}
