//! Named direction sets.

use crate::error::{Error, Result};
use crate::lattice::{DirectionSet, LatticeVector};

/// Names accepted by [`preset`], for help text.
pub const PRESET_NAMES: &[&str] = &["haar", "bspline(n)", "tensor(m1,m2)", "courant", "courant2", "zp"];

fn rows(rows: &[&[i64]]) -> Vec<LatticeVector> {
    rows.iter().map(|r| LatticeVector::new(r.to_vec())).collect()
}

fn args(name: &str, head: &str) -> Option<Result<Vec<usize>>> {
    let inner = name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad preset argument {s:?} in {name:?}")))
            })
            .collect(),
    )
}

/// The direction vectors of a preset, unvalidated.
pub fn preset_vectors(name: &str) -> Result<Vec<LatticeVector>> {
    let name = name.trim().to_ascii_lowercase().replace(' ', "");
    let e1: &[i64] = &[1, 0];
    let e2: &[i64] = &[0, 1];
    let diag: &[i64] = &[1, 1];
    match name.as_str() {
        "haar" => return Ok(rows(&[&[1]])),
        "courant" => return Ok(rows(&[e1, e2, diag])),
        "courant2" => return Ok(rows(&[e1, e1, e2, e2, diag, diag])),
        "zp" => return Ok(rows(&[e1, e2, diag, &[1, -1]])),
        _ => {}
    }
    if let Some(a) = args(&name, "bspline") {
        let a = a?;
        return match a.as_slice() {
            [n] if *n >= 1 => Ok(vec![LatticeVector::new([1]); *n]),
            _ => Err(Error::Config(format!("bspline takes one positive count, got {name:?}"))),
        };
    }
    if let Some(a) = args(&name, "tensor") {
        let a = a?;
        return match a.as_slice() {
            [m1, m2] if *m1 >= 1 && *m2 >= 1 => {
                let mut v = vec![LatticeVector::new([1, 0]); *m1];
                v.extend(vec![LatticeVector::new([0, 1]); *m2]);
                Ok(v)
            }
            _ => Err(Error::Config(format!("tensor takes two positive counts, got {name:?}"))),
        };
    }
    Err(Error::Config(format!(
        "unknown preset {name:?}; known: {}",
        PRESET_NAMES.join(", ")
    )))
}

/// A validated preset direction set.
pub fn preset(name: &str) -> Result<DirectionSet> {
    DirectionSet::new(preset_vectors(name)?)
}
