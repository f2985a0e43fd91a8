use num_traits::{One, Zero};

use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Square matrix over the rationals, used for linear coordinate changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: Vec<Vec<Rational>>,
}

impl RatMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::input("matrix is not square"));
        }
        Ok(RatMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.size())
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.size();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.rows[i][k] * &other.rows[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        RatMatrix { rows }
    }

    pub fn determinant(&self) -> Rational {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = &a[r][col] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; singular input is an input error.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.size();
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or_else(|| Error::input("singular coordinate change"))?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].clone();
            for c in 0..n {
                a[col][c] /= &pivot;
                inv[col][c] /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let s1 = &factor * &a[col][c];
                    a[r][c] -= s1;
                    let s2 = &factor * &inv[col][c];
                    inv[r][c] -= s2;
                }
            }
        }
        Ok(RatMatrix { rows: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::ratio;

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_ints(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.determinant(), int(1));
    }

    #[test]
    fn singular_is_rejected() {
        let m = RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(m.inverse().is_err());
        assert_eq!(m.determinant(), int(0));
    }

    #[test]
    fn half_matrix() {
        let h = ratio(1, 2);
        let m = RatMatrix::new(vec![vec![h.clone(), h.clone()], vec![h.clone(), -h]]).unwrap();
        assert_eq!(m.determinant(), ratio(-1, 2));
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RatMatrix::from_ints(&[&[1, 1], &[1, -1]]).unwrap());
    }
}
