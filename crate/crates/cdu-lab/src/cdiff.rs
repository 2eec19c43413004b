//! The measurement core: c-derivatives, c-differential uniformity,
//! PcN classification, differential spectra, and exact Walsh transforms.
//!
//! For a function F and c in GF(p^n), the c-derivative with respect to a is
//! `x -> F(x+a) - c F(x)`, and N_c(a, b) counts its preimages of b. The
//! c-differential uniformity is the maximum of N_c(a, b) over b and over all
//! admissible a: a = 0 participates for every c except c = 1, where it is
//! excluded. That exclusion is implemented exactly as defined, nowhere else.

use crate::cyclo::CycloInt;
use crate::field::{Elt, FieldCtx};
use crate::function::{values_are_bijection, FuncTable};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CdiffError {
    #[error("field with {q} elements exceeds the spectrum cap {cap}")]
    SpectrumTooLarge { q: u64, cap: u64 },
}

/// Result of a full uniformity measurement for one c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CDiffResult {
    pub c: Elt,
    /// max over admissible (a, b) of N_c(a, b); always in [1, q].
    pub uniformity: u32,
    /// One (a, b) pair attaining the uniformity (first in index order).
    pub witness_a: Elt,
    pub witness_b: Elt,
    /// For each a (dense index), the maximum over b of N_c(a, b).
    /// The excluded a = 0 slot under c = 1 holds 0.
    pub per_a_max: Vec<u32>,
}

/// The c-derivative table `x -> F(x+a) - c F(x)`.
pub fn c_derivative<'f>(f: &FuncTable<'f>, a: Elt, c: Elt) -> FuncTable<'f> {
    let ctx = f.ctx;
    let mut values = Vec::with_capacity(f.values.len());
    for x in ctx.by_index() {
        let fx_a = f.eval(ctx.add(x, a));
        values.push(ctx.sub(fx_a, ctx.mul(c, f.eval(x))));
    }
    FuncTable {
        ctx,
        spec: crate::function::FunctionSpec::Table {
            values: values.clone(),
        },
        values,
    }
}

#[inline]
fn skip_a(c: Elt, a: Elt) -> bool {
    c == Elt::ONE && a == Elt::ZERO
}

/// Exact c-differential uniformity; O(q^2) time, O(q) space.
pub fn cdu(f: &FuncTable<'_>, c: Elt) -> CDiffResult {
    let ctx = f.ctx;
    let q = ctx.q() as usize;
    let mut per_a_max = vec![0u32; q];
    let mut best = 0u32;
    let mut witness = (Elt::ZERO, Elt::ZERO);
    let mut counts = vec![0u32; q];
    for a in ctx.by_index() {
        if skip_a(c, a) {
            continue;
        }
        counts.fill(0);
        for x in ctx.by_index() {
            let b = ctx.sub(f.eval(ctx.add(x, a)), ctx.mul(c, f.eval(x)));
            counts[b.index() as usize] += 1;
        }
        let mut a_best = 0u32;
        let mut a_wit = Elt::ZERO;
        for (bi, &n) in counts.iter().enumerate() {
            if n > a_best {
                a_best = n;
                a_wit = Elt(bi as u32);
            }
        }
        per_a_max[a.index() as usize] = a_best;
        if a_best > best {
            best = a_best;
            witness = (a, a_wit);
        }
    }
    CDiffResult {
        c,
        uniformity: best,
        witness_a: witness.0,
        witness_b: witness.1,
        per_a_max,
    }
}

/// True iff every admissible c-derivative is a permutation.
/// Short-circuits on the first repeated value, so negative cases are cheap.
pub fn is_pcn(f: &FuncTable<'_>, c: Elt) -> bool {
    let ctx = f.ctx;
    let q = ctx.q() as usize;
    let words = (q + 63) / 64;
    let mut seen = vec![0u64; words];
    'outer: for a in ctx.by_index() {
        if skip_a(c, a) {
            continue;
        }
        seen.fill(0);
        for x in ctx.by_index() {
            let b = ctx.sub(f.eval(ctx.add(x, a)), ctx.mul(c, f.eval(x)));
            let i = b.index() as usize;
            let (w, bit) = (i / 64, i % 64);
            if seen[w] >> bit & 1 == 1 {
                return false;
            }
            seen[w] |= 1 << bit;
        }
        continue 'outer;
    }
    true
}

/// Which values of c a spectrum should range over.
#[derive(Clone, Debug)]
pub enum CRange {
    /// All q elements of the field.
    All,
    List(Vec<Elt>),
}

/// Differential spectrum of F over a set of c values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    /// Distinct nonzero solution counts N_c(a, b) over all admissible
    /// (a, b) and all c in range. This is the bracketed-list notion of
    /// spectrum: e.g. x^3 on GF(2^4) yields {1, 2, 3}.
    pub counts_seen: BTreeSet<u32>,
    /// The c values measured, with the uniformity (max count) per c.
    pub per_c: Vec<(Elt, u32)>,
}

impl Spectrum {
    /// The set of distinct uniformities over the measured c values.
    pub fn distinct_uniformities(&self) -> BTreeSet<u32> {
        self.per_c.iter().map(|&(_, u)| u).collect()
    }
}

pub const DEFAULT_SPECTRUM_CAP: u64 = 1 << 12;

/// Spectrum over the given c range; O(q^3) for the full range, so guarded by
/// a field-size cap.
pub fn c_spectrum(f: &FuncTable<'_>, range: &CRange, cap: u64) -> Result<Spectrum, CdiffError> {
    let ctx = f.ctx;
    let q = ctx.q();
    if matches!(range, CRange::All) && q > cap {
        return Err(CdiffError::SpectrumTooLarge { q, cap });
    }
    let cs: Vec<Elt> = match range {
        CRange::All => ctx.by_index().collect(),
        CRange::List(v) => v.clone(),
    };
    let mut counts_seen = BTreeSet::new();
    let mut per_c = Vec::with_capacity(cs.len());
    let mut counts = vec![0u32; q as usize];
    for &c in &cs {
        let mut best = 0u32;
        for a in ctx.by_index() {
            if skip_a(c, a) {
                continue;
            }
            counts.fill(0);
            for x in ctx.by_index() {
                let b = ctx.sub(f.eval(ctx.add(x, a)), ctx.mul(c, f.eval(x)));
                counts[b.index() as usize] += 1;
            }
            for &n in counts.iter() {
                if n > 0 {
                    counts_seen.insert(n);
                    if n > best {
                        best = n;
                    }
                }
            }
        }
        per_c.push((c, best));
    }
    Ok(Spectrum { counts_seen, per_c })
}

/// Exact Walsh transform value W_F(a, b) as a cyclotomic integer:
/// coordinate j counts the x with Tr(b F(x)) - Tr(a x) = j.
pub fn walsh(f: &FuncTable<'_>, a: Elt, b: Elt) -> CycloInt {
    let ctx = f.ctx;
    let p = ctx.p();
    let mut acc = CycloInt::zero(p);
    for x in ctx.by_index() {
        let phase = (ctx.abs_trace(ctx.mul(b, f.eval(x))) + p - ctx.abs_trace(ctx.mul(a, x))) % p;
        acc.add_root(phase);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{materialize, FunctionSpec};

    #[test]
    fn derivative_with_c1_a0_convention() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f9, &FunctionSpec::monomial(2)).unwrap();
        // c = 1, a = 0: zero function
        let d = c_derivative(&t, f9.zero(), f9.one());
        assert!(d.values.iter().all(|&v| v == Elt::ZERO));
        // arbitrary c, a = 0: (1-c) F
        let c = f9.generator();
        let d = c_derivative(&t, f9.zero(), c);
        let omc = f9.sub(f9.one(), c);
        for x in f9.by_index() {
            assert_eq!(d.eval(x), f9.mul(omc, t.eval(x)));
        }
    }

    #[test]
    fn square_derivative_on_f9_matches_expansion() {
        // F = x^2, a=1, c=-1: table of 2x^2 + 2x + 1
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f9, &FunctionSpec::monomial(2)).unwrap();
        let d = c_derivative(&t, f9.one(), f9.scalar_signed(-1));
        for x in f9.by_index() {
            let two = f9.scalar(2);
            let expect = f9.add(
                f9.add(f9.mul(two, f9.mul(x, x)), f9.mul(two, x)),
                f9.one(),
            );
            assert_eq!(d.eval(x), expect);
        }
    }

    #[test]
    fn identity_has_uniformity_one_for_c_ne_1() {
        for (p, n) in [(3u64, 2u32), (5, 1), (2, 3)] {
            let f = FieldCtx::new(p, n).unwrap();
            let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
            for c in f.by_index() {
                if c == f.one() {
                    continue;
                }
                assert_eq!(cdu(&t, c).uniformity, 1, "p={p} n={n} c={c:?}");
            }
        }
    }

    #[test]
    fn identity_at_c1_is_maximally_bad() {
        // F(x+a) - F(x) = a is constant, so N(a, a) = q: the classical
        // differential uniformity of any nonzero linear map is q.
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
        assert_eq!(cdu(&t, f.one()).uniformity, 9);
    }

    #[test]
    fn square_is_apcn_on_f9() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f9, &FunctionSpec::monomial(2)).unwrap();
        let r = cdu(&t, f9.scalar_signed(-1));
        assert_eq!(r.uniformity, 2);
    }

    #[test]
    fn cube_on_f25_has_uniformity_three() {
        let f = FieldCtx::new(5, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(3)).unwrap();
        assert_eq!(cdu(&t, f.scalar_signed(-1)).uniformity, 3);
    }

    #[test]
    fn mass_conservation_per_a() {
        let f = FieldCtx::new(3, 3).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(5)).unwrap();
        let c = f.generator();
        for a in f.by_index() {
            let d = c_derivative(&t, a, c);
            let mut counts = vec![0u64; f.q() as usize];
            for x in f.by_index() {
                counts[d.eval(x).index() as usize] += 1;
            }
            assert_eq!(counts.iter().sum::<u64>(), f.q());
        }
    }

    #[test]
    fn pcn_examples_from_half_power_family() {
        // x^5 on F_243 is PcN for c = -1
        let f = FieldCtx::new(3, 5).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(5)).unwrap();
        assert!(is_pcn(&t, f.scalar_signed(-1)));
        // x^3 on F_125 is a permutation but not PcN for c = -1
        let f = FieldCtx::new(5, 3).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(3)).unwrap();
        assert!(!is_pcn(&t, f.scalar_signed(-1)));
    }

    #[test]
    fn linearized_permutations_are_pcn_for_all_c_ne_1() {
        let f = FieldCtx::new(3, 2).unwrap();
        // x^p is a permutation (Frobenius)
        let t = materialize(
            &f,
            &FunctionSpec::Linearized {
                coeffs: vec![Elt::ZERO, f.one()],
            },
        )
        .unwrap();
        for c in f.by_index() {
            if c == f.one() {
                continue;
            }
            assert!(is_pcn(&t, c));
        }
    }

    #[test]
    fn walsh_trivial_phase_and_orthogonality() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
        // W(0,0) = q
        let w = walsh(&t, f.zero(), f.zero());
        assert_eq!(w.counts()[0], 9);
        assert!(w.counts()[1..].iter().all(|&c| c == 0));
        // identity: W(a,b) = 0 unless b = a, where it is q
        for a in f.by_index() {
            for b in f.by_index() {
                let w = walsh(&t, a, b);
                if a == b {
                    assert_eq!(w.counts()[0], 9);
                } else {
                    assert!(w.is_zero(), "a={a:?} b={b:?}");
                }
            }
        }
    }

    #[test]
    fn walsh_total_mass_is_q() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(2)).unwrap();
        let w = walsh(&t, f.zero(), f.one());
        assert_eq!(w.total_mass(), 9);
    }

    #[test]
    fn spectrum_of_identity() {
        // c != 1 contributes only count 1; c = 1 contributes q (b = a) since
        // the derivative is the constant a.
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
        let s = c_spectrum(&t, &CRange::All, DEFAULT_SPECTRUM_CAP).unwrap();
        let expect: BTreeSet<u32> = [1u32, 9].into_iter().collect();
        assert_eq!(s.counts_seen, expect);
    }

    #[test]
    fn spectrum_cap_is_enforced() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
        let r = c_spectrum(&t, &CRange::All, 8);
        assert!(matches!(r.err(), Some(CdiffError::SpectrumTooLarge { .. })));
    }
}
