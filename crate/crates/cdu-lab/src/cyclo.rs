//! Exact arithmetic in Z[zeta_p] for prime p, as needed for Walsh values.
//!
//! An element is a length-p integer vector of multiplicities of the powers
//! of zeta. Since 1 + zeta + ... + zeta^(p-1) = 0, the representation is
//! unique only up to adding a constant to every coordinate; the canonical
//! form subtracts the componentwise minimum. The zero test "all coordinates
//! equal" is exact because the p-th cyclotomic polynomial for prime p is
//! exactly that relation.

use std::f64::consts::TAU;

/// An element of Z[zeta_p]; coordinate j holds the multiplicity of zeta^j.
#[derive(Clone, Debug)]
pub struct CycloInt {
    p: u64,
    counts: Vec<i64>,
}

impl CycloInt {
    pub fn zero(p: u64) -> Self {
        assert!(p >= 2);
        CycloInt {
            p,
            counts: vec![0; p as usize],
        }
    }

    pub fn from_counts(p: u64, counts: Vec<i64>) -> Self {
        assert_eq!(counts.len(), p as usize);
        CycloInt { p, counts }
    }

    pub fn root_order(&self) -> u64 {
        self.p
    }

    /// Raw multiplicity vector (not canonicalized).
    pub fn counts(&self) -> &[i64] {
        &self.counts
    }

    /// Adds one copy of zeta^j.
    pub fn add_root(&mut self, j: u64) {
        self.counts[(j % self.p) as usize] += 1;
    }

    /// Sum of raw multiplicities; for a Walsh histogram this is q.
    pub fn total_mass(&self) -> i64 {
        self.counts.iter().sum()
    }

    /// Canonical form: componentwise minimum subtracted out.
    pub fn canonical(&self) -> CycloInt {
        let m = *self.counts.iter().min().unwrap();
        CycloInt {
            p: self.p,
            counts: self.counts.iter().map(|&c| c - m).collect(),
        }
    }

    /// Exact zero test: the value is zero iff all coordinates are equal.
    pub fn is_zero(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    /// Floating-point evaluation (for cross-checks only; never used to decide).
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.counts.iter().enumerate() {
            let theta = TAU * j as f64 / self.p as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycloInt {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.canonical().counts == other.canonical().counts
    }
}

impl Eq for CycloInt {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_iff_all_equal() {
        let z = CycloInt::from_counts(5, vec![3, 3, 3, 3, 3]);
        assert!(z.is_zero());
        assert!(z.canonical().counts().iter().all(|&c| c == 0));
        let nz = CycloInt::from_counts(5, vec![3, 3, 4, 3, 3]);
        assert!(!nz.is_zero());
    }

    #[test]
    fn equality_modulo_the_relation() {
        let a = CycloInt::from_counts(3, vec![5, 1, 2]);
        let b = CycloInt::from_counts(3, vec![7, 3, 4]);
        assert_eq!(a, b);
        let c = CycloInt::from_counts(3, vec![5, 2, 1]);
        assert_ne!(a, c);
    }

    #[test]
    fn approx_vanishes_on_zero_values() {
        let z = CycloInt::from_counts(7, vec![2; 7]);
        let (re, im) = z.approx();
        assert!(re.abs() < 1e-9 && im.abs() < 1e-9);
    }
}
