//! Grid file I/O.
//!
//! Two on-disk layouts, both row-major with row 0 at the lowest `y`:
//!
//! - CSV: `ny` text rows of `nx` comma-separated decimal values,
//! - raw: `nx * ny` little-endian IEEE 754 doubles.
//!
//! Either way the geometry lives in a JSON sidecar named
//! `<data file>.meta.json`:
//!
//! ```json
//! { "nx": 64, "ny": 64, "h": 0.015625, "origin": [0.0, 0.0] }
//! ```
//!
//! Files ending in `.csv` are treated as CSV, everything else as raw.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::field::{DomainSpec, ScalarField2D};
use crate::geometry::Point;

#[derive(Debug, Serialize, Deserialize)]
struct Sidecar {
    nx: usize,
    ny: usize,
    h: f64,
    origin: [f64; 2],
}

pub fn sidecar_path(data: &Path) -> PathBuf {
    let mut name = data.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    data.with_file_name(name)
}

fn is_csv(path: &Path) -> bool {
    path.extension().map(|e| e == "csv").unwrap_or(false)
}

pub fn write_grid(path: &Path, field: &ScalarField2D) -> Result<()> {
    let d = field.domain();
    if is_csv(path) {
        let mut out = String::new();
        for j in 0..d.ny {
            let row: Vec<String> = (0..d.nx).map(|i| format!("{}", field.get(i, j))).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        fs::write(path, out)?;
    } else {
        let mut bytes = Vec::with_capacity(8 * field.values().len());
        for v in field.values() {
            bytes.extend_from_slice(&v.to_le_bytes());
        }
        fs::File::create(path)?.write_all(&bytes)?;
    }
    let sidecar = Sidecar {
        nx: d.nx,
        ny: d.ny,
        h: d.h,
        origin: [d.origin.x, d.origin.y],
    };
    let json = serde_json::to_string_pretty(&sidecar)
        .map_err(|e| CoreError::Format(e.to_string()))?;
    fs::write(sidecar_path(path), json)?;
    Ok(())
}

pub fn read_grid(path: &Path) -> Result<ScalarField2D> {
    let meta_path = sidecar_path(path);
    let meta_text = fs::read_to_string(&meta_path).map_err(|e| {
        CoreError::Format(format!("missing sidecar {}: {e}", meta_path.display()))
    })?;
    let meta: Sidecar = serde_json::from_str(&meta_text)
        .map_err(|e| CoreError::Format(format!("bad sidecar {}: {e}", meta_path.display())))?;
    let domain = DomainSpec::new(
        Point::new(meta.origin[0], meta.origin[1]),
        meta.nx,
        meta.ny,
        meta.h,
    )?;

    let values = if is_csv(path) {
        let text = fs::read_to_string(path)?;
        let mut values = Vec::with_capacity(domain.num_cells());
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            for tok in line.split(',') {
                let v: f64 = tok.trim().parse().map_err(|e| {
                    CoreError::Format(format!("{}:{}: bad value {tok:?}: {e}", path.display(), lineno + 1))
                })?;
                values.push(v);
            }
        }
        values
    } else {
        let bytes = fs::read(path)?;
        if bytes.len() != 8 * domain.num_cells() {
            return Err(CoreError::Format(format!(
                "{}: expected {} bytes for a {}x{} grid, found {}",
                path.display(),
                8 * domain.num_cells(),
                meta.nx,
                meta.ny,
                bytes.len()
            )));
        }
        bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect()
    };

    if values.len() != domain.num_cells() {
        return Err(CoreError::Format(format!(
            "{}: expected {} values, found {}",
            path.display(),
            domain.num_cells(),
            values.len()
        )));
    }
    ScalarField2D::new(domain, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DomainSpec;

    fn sample_field() -> ScalarField2D {
        let d = DomainSpec::new(Point::new(-0.25, 0.5), 7, 5, 0.125).unwrap();
        ScalarField2D::from_fn(d, |p| (13.0 * p.x).sin() * p.y + 0.3).unwrap()
    }

    #[test]
    fn raw_round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.f64");
        let f = sample_field();
        write_grid(&path, &f).unwrap();
        let g = read_grid(&path).unwrap();
        assert_eq!(f.domain(), g.domain());
        for (a, b) in f.values().iter().zip(g.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn csv_round_trip_preserves_values() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.csv");
        let f = sample_field();
        write_grid(&path, &f).unwrap();
        let g = read_grid(&path).unwrap();
        // Display prints the shortest representation that parses back exactly
        for (a, b) in f.values().iter().zip(g.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn missing_sidecar_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("orphan.csv");
        fs::write(&path, "1.0,2.0\n").unwrap();
        match read_grid(&path) {
            Err(CoreError::Format(msg)) => assert!(msg.contains("sidecar")),
            other => panic!("expected format error, got {other:?}"),
        }
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("grid.csv");
        let f = sample_field();
        write_grid(&path, &f).unwrap();
        fs::write(&path, "1.0,2.0\n3.0,4.0\n").unwrap();
        assert!(read_grid(&path).is_err());
    }
}
