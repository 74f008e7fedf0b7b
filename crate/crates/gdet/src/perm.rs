//! Permutations of `{1..m}` with the total order used by the sign system.
//!
//! The order compares two permutations at the largest index where their
//! images differ: `σ > τ` iff `σ(t) > τ(t)` at that index `t`. Under it the
//! identity is the unique maximum and the reversal `i ↦ m−i+1` the unique
//! minimum. A permutation acts on an m-row matrix by sending row `σ(i)` of
//! the input to row `i` of the output.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::error::Error;
use crate::matrix::Matrix;

/// Bijection on `{1..m}`, stored as the image sequence `images[i-1] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Identity on `{1..m}`.
    pub fn identity(m: usize) -> Self {
        assert!(m >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (1..=m).collect(),
        }
    }

    /// Reversal `i ↦ m−i+1`, the minimum of the total order.
    pub fn reversal(m: usize) -> Self {
        assert!(m >= 1, "permutation degree must be at least 1");
        Permutation {
            images: (1..=m).rev().collect(),
        }
    }

    /// Builds a permutation from its image sequence (1-based values),
    /// validating that it is a bijection of `{1..m}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self, Error> {
        let m = images.len();
        if m == 0 {
            return Err(Error::Dimension("permutation must be nonempty".into()));
        }
        let mut seen = vec![false; m];
        for &v in &images {
            if v == 0 || v > m {
                return Err(Error::Dimension(format!(
                    "image {v} out of range 1..={m}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::Dimension(format!("image {v} repeated")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Degree m.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// The full image sequence, `images[i-1] = σ(i)`.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// Composition for which [`Permutation::act`] is a group action:
    /// `(σ.compose(τ))(i) = τ(σ(i))`, so that
    /// `σ.compose(τ).act(a) == σ.act(&τ.act(a))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, Error> {
        if self.degree() != other.degree() {
            return Err(Error::Dimension(format!(
                "cannot compose permutations of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i - 1]).collect(),
        })
    }

    /// Total order: compares images at the largest index where they differ.
    pub fn compare(&self, other: &Permutation) -> Result<Ordering, Error> {
        if self.degree() != other.degree() {
            return Err(Error::Dimension(format!(
                "cannot compare permutations of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        for t in (0..self.images.len()).rev() {
            if self.images[t] != other.images[t] {
                return Ok(self.images[t].cmp(&other.images[t]));
            }
        }
        Ok(Ordering::Equal)
    }

    /// Row action: row `i` of the result is row `σ(i)` of `a`.
    pub fn act(&self, a: &Matrix) -> Result<Matrix, Error> {
        if a.rows() != self.degree() {
            return Err(Error::Dimension(format!(
                "permutation of degree {} cannot act on a {}x{} matrix",
                self.degree(),
                a.rows(),
                a.cols()
            )));
        }
        let rows: Vec<usize> = self.images.clone();
        a.row_select(&rows)
    }
}

/// All permutations of `{1..m}`, for the brute-force oracles.
pub fn all_permutations(m: usize) -> impl Iterator<Item = Permutation> {
    (1..=m)
        .permutations(m)
        .map(|images| Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![2, 1, 3]).is_ok());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![1, 3]).is_err());
    }

    #[test]
    fn compare_examples() {
        let id = Permutation::identity(3);
        let tau = Permutation::from_images(vec![2, 1, 3]).unwrap();
        assert_eq!(id.compare(&tau).unwrap(), Ordering::Greater);
        assert_eq!(id.compare(&id).unwrap(), Ordering::Equal);

        // The reversal is below every other permutation.
        let rev = Permutation::reversal(3);
        for sigma in all_permutations(3) {
            if sigma != rev {
                assert_eq!(rev.compare(&sigma).unwrap(), Ordering::Less);
            }
        }
        assert!(
            Permutation::identity(2)
                .compare(&Permutation::identity(3))
                .is_err()
        );
    }

    #[test]
    fn identity_is_unique_maximum_exhaustively() {
        for m in 1..=5 {
            let id = Permutation::identity(m);
            let rev = Permutation::reversal(m);
            for sigma in all_permutations(m) {
                if sigma != id {
                    assert_eq!(id.compare(&sigma).unwrap(), Ordering::Greater);
                }
                if sigma != rev {
                    assert_eq!(rev.compare(&sigma).unwrap(), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn compare_is_a_strict_total_order_on_s4() {
        let all: Vec<Permutation> = all_permutations(4).collect();
        for a in &all {
            for b in &all {
                let ab = a.compare(b).unwrap();
                let ba = b.compare(a).unwrap();
                assert_eq!(ab, ba.reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &all {
                    let bc = b.compare(c).unwrap();
                    if ab == Ordering::Less && bc == Ordering::Less {
                        assert_eq!(a.compare(c).unwrap(), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn act_examples() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let id = Permutation::identity(2);
        assert_eq!(id.act(&a).unwrap(), a);

        let swap = Permutation::from_images(vec![2, 1]).unwrap();
        assert_eq!(
            swap.act(&a).unwrap(),
            Matrix::from_rows(&[&[3.0, 4.0], &[1.0, 2.0]])
        );

        assert!(swap.act(&Matrix::from_rows(&[&[1.0]])).is_err());
    }

    #[test]
    fn act_is_a_group_action() {
        // Exhaustive over pairs of permutations at small degree, with a
        // fixed dense matrix so row moves are distinguishable.
        for m in 1..=4 {
            let a = Matrix::from_nested(
                (0..m)
                    .map(|i| (0..3).map(|j| (10 * i + j) as f64).collect())
                    .collect(),
            );
            let id = Permutation::identity(m);
            for sigma in all_permutations(m) {
                assert_eq!(id.act(&a).unwrap(), a);
                for tau in all_permutations(m) {
                    let lhs = sigma.compose(&tau).unwrap().act(&a).unwrap();
                    let rhs = sigma.act(&tau.act(&a).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        for sigma in all_permutations(5) {
            let inv = sigma.inverse();
            assert_eq!(
                sigma.compose(&inv).unwrap(),
                Permutation::identity(5)
            );
            assert_eq!(inv.inverse(), sigma);
        }
    }
}
