//! Coxeter presentations: the Coxeter matrix together with a diagram
//! involution, validated and ready for enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::ScalarRing;

/// Generators are indexed 0-based; descent sets are stored as `u32` bitsets.
pub const MAX_RANK: usize = 32;

/// A validated Coxeter matrix with an involutive diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterPresentation {
    rank: usize,
    /// Dense `rank * rank`, row-major; `0` encodes an infinite order.
    orders: Vec<u32>,
    star: Vec<u8>,
}

impl CoxeterPresentation {
    /// Validates a full square matrix (entry `0` meaning infinity) and a
    /// generator permutation, in that order: shape, diagonal, symmetry,
    /// entry range, then the star axioms.
    #[allow(clippy::needless_range_loop)] // symmetric-matrix access wants both indices
    pub fn validate(matrix: &[Vec<i64>], star: &[usize]) -> Result<Self> {
        let rank = matrix.len();
        if rank > MAX_RANK {
            return Err(Error::RankTooLarge {
                rank,
                max: MAX_RANK,
            });
        }
        for (s, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::BadShape(format!(
                    "row {s} has {} entries, expected {rank}",
                    row.len()
                )));
            }
        }
        for s in 0..rank {
            if matrix[s][s] != 1 {
                return Err(Error::BadDiagonal { s });
            }
        }
        for s in 0..rank {
            for t in (s + 1)..rank {
                if matrix[s][t] != matrix[t][s] {
                    return Err(Error::NonSymmetric { s, t });
                }
                let v = matrix[s][t];
                if v != 0 && v < 2 {
                    return Err(Error::BadOffDiagonal { s, t, value: v });
                }
                if v > u32::MAX as i64 {
                    return Err(Error::BadOffDiagonal { s, t, value: v });
                }
            }
        }
        if star.len() != rank {
            return Err(Error::StarNotInvolutive);
        }
        for (s, &img) in star.iter().enumerate() {
            if img >= rank || star[img] != s {
                return Err(Error::StarNotInvolutive);
            }
        }
        for s in 0..rank {
            for t in 0..rank {
                if matrix[star[s]][star[t]] != matrix[s][t] {
                    return Err(Error::StarNotCompatible { s, t });
                }
            }
        }
        let mut orders = vec![0u32; rank * rank];
        for s in 0..rank {
            for t in 0..rank {
                orders[s * rank + t] = matrix[s][t] as u32;
            }
        }
        Ok(CoxeterPresentation {
            rank,
            orders,
            star: star.iter().map(|&s| s as u8).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order of `s*t`; `None` means infinite.
    pub fn order(&self, s: usize, t: usize) -> Option<u32> {
        match self.orders[s * self.rank + t] {
            0 => None,
            m => Some(m),
        }
    }

    pub fn star_gen(&self, s: usize) -> usize {
        self.star[s] as usize
    }

    pub fn star_is_identity(&self) -> bool {
        self.star.iter().enumerate().all(|(s, &img)| img as usize == s)
    }

    /// The scalar ring needed by the reflection representation.
    pub fn scalar_ring(&self) -> ScalarRing {
        ScalarRing::for_orders(self.off_diagonal_orders())
    }

    fn off_diagonal_orders(&self) -> impl Iterator<Item = Option<u32>> + '_ {
        (0..self.rank).flat_map(move |s| ((s + 1)..self.rank).map(move |t| self.order(s, t)))
    }

    /// True when every finite off-diagonal order lies in {2, 3, 4, 6}.
    pub fn is_crystallographic(&self) -> bool {
        self.off_diagonal_orders()
            .flatten()
            .all(|m| matches!(m, 2 | 3 | 4 | 6))
    }

    pub fn to_wire(&self) -> WirePresentation {
        let mut m = Vec::with_capacity(self.rank * (self.rank.saturating_sub(1)) / 2);
        for s in 0..self.rank {
            for t in (s + 1)..self.rank {
                m.push(self.order(s, t).unwrap_or(0) as i64);
            }
        }
        WirePresentation {
            rank: self.rank,
            m,
            star: self.star.iter().map(|&s| s as usize).collect(),
        }
    }
}

/// Serialized form of a presentation: the strict upper triangle of the
/// Coxeter matrix in row-major order, with infinite orders encoded as `0`,
/// and the star as a permutation of generator indices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WirePresentation {
    pub rank: usize,
    pub m: Vec<i64>,
    pub star: Vec<usize>,
}

impl WirePresentation {
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> Result<CoxeterPresentation> {
        let n = self.rank;
        let expected = n * n.saturating_sub(1) / 2;
        if self.m.len() != expected {
            return Err(Error::BadShape(format!(
                "upper triangle for rank {n} needs {expected} entries, got {}",
                self.m.len()
            )));
        }
        let mut matrix = vec![vec![1i64; n]; n];
        let mut it = self.m.iter();
        for s in 0..n {
            for t in (s + 1)..n {
                let v = *it.next().unwrap();
                matrix[s][t] = v;
                matrix[t][s] = v;
            }
        }
        CoxeterPresentation::validate(&matrix, &self.star)
    }
}
