//! Flat binary field snapshot files.
//!
//! Layout: magic `MLFD`, version `u32` LE, dim_mode `u8`, n `u32` LE,
//! component count `u8`, then little-endian `f64` samples in row-major
//! physical order, one block per component.

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use super::{DimMode, Grid, ScalarField};
use crate::error::Error;
use crate::real::Real;
use crate::Result;

const MAGIC: [u8; 4] = *b"MLFD";
const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnapshotHeader {
    pub version: u32,
    pub dim_mode: DimMode,
    pub n: u32,
    pub components: u8,
}

pub fn write_snapshot<T: Real>(path: &Path, fields: &[&ScalarField<T>]) -> Result<()> {
    assert!(!fields.is_empty() && fields.len() <= u8::MAX as usize);
    let grid = fields[0].grid();
    assert!(
        fields.iter().all(|f| Grid::same_grid(f.grid(), grid)),
        "snapshot components on different grids"
    );
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&[grid.dim_mode().tag()])?;
    w.write_all(&(grid.n() as u32).to_le_bytes())?;
    w.write_all(&[fields.len() as u8])?;
    for f in fields {
        for &v in f.values() {
            w.write_all(&v.to64().to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_snapshot_header(path: &Path) -> Result<SnapshotHeader> {
    let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
    read_header(&mut r)
}

fn read_header(r: &mut impl Read) -> Result<SnapshotHeader> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(Error::Format("bad magic bytes, not a field snapshot".into()));
    }
    let mut b4 = [0u8; 4];
    r.read_exact(&mut b4)?;
    let version = u32::from_le_bytes(b4);
    if version != VERSION {
        return Err(Error::Format(format!("unsupported snapshot version {version}")));
    }
    let mut b1 = [0u8; 1];
    r.read_exact(&mut b1)?;
    let dim_mode = DimMode::from_tag(b1[0])
        .ok_or_else(|| Error::Format(format!("unknown dim_mode tag {}", b1[0])))?;
    r.read_exact(&mut b4)?;
    let n = u32::from_le_bytes(b4);
    r.read_exact(&mut b1)?;
    Ok(SnapshotHeader {
        version,
        dim_mode,
        n,
        components: b1[0],
    })
}

pub fn read_snapshot<T: Real>(path: &Path, grid: &Arc<Grid<T>>) -> Result<Vec<ScalarField<T>>> {
    let mut r = std::io::BufReader::new(std::fs::File::open(path)?);
    let header = read_header(&mut r)?;
    if header.dim_mode != grid.dim_mode() || header.n as usize != grid.n() {
        return Err(Error::Format(format!(
            "snapshot grid ({:?}, n = {}) does not match requested grid ({:?}, n = {})",
            header.dim_mode,
            header.n,
            grid.dim_mode(),
            grid.n()
        )));
    }
    let mut out = Vec::with_capacity(header.components as usize);
    let mut buf = vec![0u8; 8 * grid.len()];
    for _ in 0..header.components {
        r.read_exact(&mut buf)?;
        let values: Vec<T> = buf
            .chunks_exact(8)
            .map(|c| T::of(f64::from_le_bytes(c.try_into().unwrap())))
            .collect();
        out.push(ScalarField::from_values(grid, values));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_two_components() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.mlfd");
        let g = Grid::<f64>::slab(8);
        let a = ScalarField::from_fn(&g, |x, y, _| x.sin() + 0.3 * y.cos());
        let b = ScalarField::constant(&g, 2.5);
        write_snapshot(&path, &[&a, &b]).unwrap();

        let header = read_snapshot_header(&path).unwrap();
        assert_eq!(header.components, 2);
        assert_eq!(header.n, 8);

        let fields = read_snapshot(&path, &g).unwrap();
        assert_eq!(fields.len(), 2);
        for (orig, read) in [(&a, &fields[0]), (&b, &fields[1])] {
            let err: f64 = orig
                .values()
                .iter()
                .zip(read.values())
                .map(|(&x, &y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(err == 0.0, "lossless f64 roundtrip, got {err:e}");
        }
    }

    #[test]
    fn rejects_wrong_grid() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.mlfd");
        let g = Grid::<f64>::slab(8);
        write_snapshot(&path, &[&ScalarField::constant(&g, 1.0)]).unwrap();
        let other = Grid::<f64>::slab(16);
        assert!(matches!(
            read_snapshot(&path, &other),
            Err(Error::Format(_))
        ));
    }
}
