//! Named Coxeter presentations with their diagram involutions.
//!
//! Finite types use Bourbaki-style linear numbering; `D4` puts the branch
//! node at index 1 with legs 0, 2, 3. Affine presets carry the `aff` prefix
//! and include the affine node in the path (or triangle, for `affA2`).

use crate::error::{Error, Result};
use crate::presentation::CoxeterPresentation;

#[derive(Clone, Debug)]
pub struct Preset {
    pub name: &'static str,
    matrix: Vec<Vec<i64>>,
    stars: Vec<(&'static str, Vec<usize>)>,
}

impl Preset {
    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn star_names(&self) -> Vec<&'static str> {
        self.stars.iter().map(|(n, _)| *n).collect()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// The validated presentation carrying the named star.
    pub fn presentation(&self, star: &str) -> Result<CoxeterPresentation> {
        let Some((_, perm)) = self.stars.iter().find(|(n, _)| *n == star) else {
            return Err(Error::UnknownStar {
                preset: self.name.to_string(),
                star: star.to_string(),
            });
        };
        CoxeterPresentation::validate(&self.matrix, perm)
    }

    pub fn is_crystallographic(&self) -> bool {
        // Any star gives the same matrix; validation cannot fail for the
        // built-in tables.
        self.presentation(self.stars[0].0)
            .expect("preset tables are valid")
            .is_crystallographic()
    }
}

fn path(orders: &[i64]) -> Vec<Vec<i64>> {
    let n = orders.len() + 1;
    let mut m = vec![vec![2i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (i, &o) in orders.iter().enumerate() {
        m[i][i + 1] = o;
        m[i + 1][i] = o;
    }
    m
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Looks up a named preset.
pub fn preset(name: &str) -> Result<Preset> {
    let make = |name: &'static str,
                matrix: Vec<Vec<i64>>,
                stars: Vec<(&'static str, Vec<usize>)>| Preset {
        name,
        matrix,
        stars,
    };
    let p = match name {
        "A1" => make("A1", vec![vec![1]], vec![("id", vec![0])]),
        "A2" => make(
            "A2",
            path(&[3]),
            vec![("id", identity(2)), ("flip", vec![1, 0])],
        ),
        "A3" => make(
            "A3",
            path(&[3, 3]),
            vec![("id", identity(3)), ("flip", vec![2, 1, 0])],
        ),
        "B2" => make("B2", path(&[4]), vec![("id", identity(2))]),
        "B3" => make("B3", path(&[4, 3]), vec![("id", identity(3))]),
        "D4" => {
            // Branch node 1; legs 0, 2, 3.
            let mut m = vec![vec![2i64; 4]; 4];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            for leg in [0usize, 2, 3] {
                m[1][leg] = 3;
                m[leg][1] = 3;
            }
            make(
                "D4",
                m,
                vec![("id", identity(4)), ("leg-swap", vec![0, 1, 3, 2])],
            )
        }
        "I2(5)" => make("I2(5)", path(&[5]), vec![("id", identity(2))]),
        "I2(6)" => make("I2(6)", path(&[6]), vec![("id", identity(2))]),
        "I2(7)" => make("I2(7)", path(&[7]), vec![("id", identity(2))]),
        "I2(8)" => make("I2(8)", path(&[8]), vec![("id", identity(2))]),
        "H3" => make("H3", path(&[5, 3]), vec![("id", identity(3))]),
        "affA1" => make("affA1", path(&[0]), vec![("id", identity(2))]),
        "affA2" => {
            // Triangle: every pair of nodes has order 3.
            let mut m = vec![vec![3i64; 3]; 3];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            make(
                "affA2",
                m,
                vec![("id", identity(3)), ("flip", vec![0, 2, 1])],
            )
        }
        "affC2" => make("affC2", path(&[4, 4]), vec![("id", identity(3))]),
        "affG2" => make("affG2", path(&[6, 3]), vec![("id", identity(3))]),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    };
    Ok(p)
}

pub const PRESET_NAMES: &[&str] = &[
    "A1", "A2", "A3", "B2", "B3", "D4", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "H3", "affA1",
    "affA2", "affC2", "affG2",
];

/// Presets whose finite bond orders lie in {2, 3, 4, 6}.
pub fn crystallographic_presets() -> Vec<&'static str> {
    PRESET_NAMES
        .iter()
        .copied()
        .filter(|name| preset(name).unwrap().is_crystallographic())
        .collect()
}
