//! Permutations of `{0, .., n-1}`.

use std::fmt;

use crate::error::{GyroError, Result};

/// A bijection on `{0, .., n-1}` stored as its image vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its images, rejecting anything that is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(GyroError::NotAPermutation(format!(
                    "image {x} of {i} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(GyroError::NotAPermutation(format!("{x} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n {
                    return Err(GyroError::NotAPermutation(format!(
                        "point {x} is out of range for degree {n}"
                    )));
                }
                if std::mem::replace(&mut used[x], true) {
                    return Err(GyroError::NotAPermutation(format!("point {x} is repeated")));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self` after `other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }
}

/// Cycle notation; the identity prints as `I`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("I");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[vec![1, 2], vec![2, 3]]).is_err());
    }

    #[test]
    fn cycles_round_trip() {
        let p = Permutation::from_cycles(15, &[vec![1, 7, 5, 10, 6], vec![2, 3, 8, 11, 14]]).unwrap();
        assert_eq!(p.apply(1), 7);
        assert_eq!(p.apply(6), 1);
        assert_eq!(p.to_string(), "(1 7 5 10 6)(2 3 8 11 14)");
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::identity(3).to_string(), "I");
    }

    #[test]
    fn composition_order() {
        let a = Permutation::from_images(vec![1, 2, 0]).unwrap();
        let b = Permutation::from_images(vec![0, 2, 1]).unwrap();
        // a(b(1)) = a(2) = 0
        assert_eq!(a.compose(&b).apply(1), 0);
    }
}
