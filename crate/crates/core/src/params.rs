use std::fmt;

use crate::error::{Error, Result};

/// Arity `m` of the operation and associativity index `k`.
///
/// Everything in this crate is governed by the derived modulus
/// `K = k(m - 1)`: the length of the operand window a single rewrite slides
/// over, and the modulus of every equivalence signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    arity: usize,
    k: usize,
}

impl Params {
    pub fn new(arity: usize, k: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::arity(format!(
                "arity must be at least 2, got {arity}"
            )));
        }
        if k < 1 {
            return Err(Error::arity(format!("k must be at least 1, got {k}")));
        }
        Ok(Params { arity, k })
    }

    /// The arity `m`.
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `m - 1`: the up-step size of the associated Dyck paths, and the number
    /// of leaves each internal node adds.
    pub fn step(&self) -> usize {
        self.arity - 1
    }

    /// `K = k(m - 1)`.
    pub fn modulus(&self) -> usize {
        self.k * (self.arity - 1)
    }

    /// Same arity, different associativity index.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Params::new(self.arity, k)
    }

    /// `true` when `n` leaves (or operands) can form a full `m`-ary tree.
    pub fn is_valid_leaf_count(&self, n: usize) -> bool {
        n >= 1 && (n - 1).is_multiple_of(self.step())
    }

    pub(crate) fn check_leaf_count(&self, n: usize) -> Result<()> {
        if self.is_valid_leaf_count(n) {
            Ok(())
        } else {
            Err(Error::arity(format!(
                "{n} leaves cannot form a {}-ary tree (need n = 1 mod {})",
                self.arity,
                self.step()
            )))
        }
    }

    pub(crate) fn check_length(&self, length: usize) -> Result<()> {
        if length.is_multiple_of(self.step()) {
            Ok(())
        } else {
            Err(Error::arity(format!(
                "Dyck length {length} is not a multiple of {}",
                self.step()
            )))
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}, k={} (K={})", self.arity, self.k, self.modulus())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_values() {
        let p = Params::new(3, 2).unwrap();
        assert_eq!(p.step(), 2);
        assert_eq!(p.modulus(), 4);
        assert!(p.is_valid_leaf_count(7));
        assert!(p.is_valid_leaf_count(1));
        assert!(!p.is_valid_leaf_count(4));
        assert!(!p.is_valid_leaf_count(0));
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(Params::new(1, 1), Err(Error::Arity { .. })));
        assert!(matches!(Params::new(2, 0), Err(Error::Arity { .. })));
    }
}
