//! Function families over GF(p^n) and their materialization into dense
//! value tables.
//!
//! A [`FunctionSpec`] is a structural description (monomial, Dickson,
//! linearized, trace perturbation, affine, sum, or an explicit table); a
//! [`FuncTable`] is the materialized map, one output element per dense
//! element index.

use crate::field::{Elt, FieldCtx, FieldError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FuncError {
    #[error("table has {got} entries, field has {expected}")]
    TableLength { expected: u64, got: usize },
    #[error("element operand does not belong to the field: {0}")]
    ForeignElement(u64),
    #[error("linearized coefficient vector longer than the extension degree")]
    TooManyCoefficients,
    #[error("affine matrix must be n x n over F_p")]
    BadMatrix,
    #[error("function is not a bijection")]
    NotAPermutation,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Structural description of a function GF(p^n) -> GF(p^n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionSpec {
    /// x^d with 0^d = 0 for d > 0 and 0^0 = 1; for nonzero inputs the
    /// exponent acts reduced mod q-1, but the unreduced d is retained
    /// here for reporting.
    Monomial { d: u64 },
    /// First-kind Dickson polynomial D_d(x, a), evaluated pointwise by the
    /// recurrence (degree may exceed q, so coefficients are never expanded).
    DicksonFirst { d: u64, a: Elt },
    /// sum of a_i x^(p^i) for i < n.
    Linearized { coeffs: Vec<Elt> },
    /// base(x) + gamma * Tr(inner(x)), the trace lifted into the field.
    TracePerturbed {
        base: Box<FunctionSpec>,
        gamma: Elt,
        inner: Box<FunctionSpec>,
    },
    /// x -> M x + c on coefficient vectors, M an n x n matrix over F_p.
    Affine { matrix: Vec<Vec<u64>>, constant: Elt },
    Sum {
        left: Box<FunctionSpec>,
        right: Box<FunctionSpec>,
    },
    /// Explicit value table, indexed by dense element index.
    Table { values: Vec<Elt> },
}

impl FunctionSpec {
    pub fn monomial(d: u64) -> Self {
        FunctionSpec::Monomial { d }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FunctionSpec::Monomial { .. } => "monomial",
            FunctionSpec::DicksonFirst { .. } => "dickson",
            FunctionSpec::Linearized { .. } => "linearized",
            FunctionSpec::TracePerturbed { .. } => "trace_perturbed",
            FunctionSpec::Affine { .. } => "affine",
            FunctionSpec::Sum { .. } => "sum",
            FunctionSpec::Table { .. } => "table",
        }
    }
}

/// A materialized function: dense value table plus its provenance.
#[derive(Clone, Debug)]
pub struct FuncTable<'f> {
    pub ctx: &'f FieldCtx,
    pub values: Vec<Elt>,
    pub spec: FunctionSpec,
}

impl<'f> FuncTable<'f> {
    pub fn q(&self) -> u64 {
        self.ctx.q()
    }

    #[inline]
    pub fn eval(&self, x: Elt) -> Elt {
        self.values[x.index() as usize]
    }

    /// Wraps an existing table without a structural spec.
    pub fn from_values(ctx: &'f FieldCtx, values: Vec<Elt>) -> Result<Self, FuncError> {
        if values.len() as u64 != ctx.q() {
            return Err(FuncError::TableLength {
                expected: ctx.q(),
                got: values.len(),
            });
        }
        Ok(FuncTable {
            ctx,
            spec: FunctionSpec::Table {
                values: values.clone(),
            },
            values,
        })
    }
}

fn check_elt(ctx: &FieldCtx, e: Elt) -> Result<(), FuncError> {
    if e.index() >= ctx.q() {
        Err(FuncError::ForeignElement(e.index()))
    } else {
        Ok(())
    }
}

/// Materializes a spec into a dense value table over the given field.
pub fn materialize<'f>(ctx: &'f FieldCtx, spec: &FunctionSpec) -> Result<FuncTable<'f>, FuncError> {
    let values = eval_spec(ctx, spec)?;
    Ok(FuncTable {
        ctx,
        values,
        spec: spec.clone(),
    })
}

fn eval_spec(ctx: &FieldCtx, spec: &FunctionSpec) -> Result<Vec<Elt>, FuncError> {
    let q = ctx.q() as usize;
    match spec {
        FunctionSpec::Monomial { d } => {
            let mut out = Vec::with_capacity(q);
            for x in ctx.by_index() {
                out.push(ctx.pow_u(x, *d));
            }
            Ok(out)
        }
        FunctionSpec::DicksonFirst { d, a } => {
            check_elt(ctx, *a)?;
            let mut out = Vec::with_capacity(q);
            let two = ctx.scalar(2);
            for x in ctx.by_index() {
                out.push(dickson_eval(ctx, *d, *a, x, two));
            }
            Ok(out)
        }
        FunctionSpec::Linearized { coeffs } => {
            if coeffs.len() > ctx.n() as usize {
                return Err(FuncError::TooManyCoefficients);
            }
            for &c in coeffs {
                check_elt(ctx, c)?;
            }
            let mut out = Vec::with_capacity(q);
            for x in ctx.by_index() {
                out.push(linearized_eval(ctx, coeffs, x));
            }
            Ok(out)
        }
        FunctionSpec::TracePerturbed { base, gamma, inner } => {
            check_elt(ctx, *gamma)?;
            let b = eval_spec(ctx, base)?;
            let i = eval_spec(ctx, inner)?;
            let mut out = Vec::with_capacity(q);
            for (bx, ix) in b.into_iter().zip(i) {
                let t = ctx.abs_trace(ix);
                out.push(ctx.add(bx, ctx.mul(*gamma, ctx.scalar(t))));
            }
            Ok(out)
        }
        FunctionSpec::Affine { matrix, constant } => {
            check_elt(ctx, *constant)?;
            let n = ctx.n() as usize;
            if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                return Err(FuncError::BadMatrix);
            }
            let mut out = Vec::with_capacity(q);
            for x in ctx.by_index() {
                out.push(ctx.add(apply_matrix(ctx, matrix, x), *constant));
            }
            Ok(out)
        }
        FunctionSpec::Sum { left, right } => {
            let l = eval_spec(ctx, left)?;
            let r = eval_spec(ctx, right)?;
            Ok(l.into_iter()
                .zip(r)
                .map(|(a, b)| ctx.add(a, b))
                .collect())
        }
        FunctionSpec::Table { values } => {
            if values.len() as u64 != ctx.q() {
                return Err(FuncError::TableLength {
                    expected: ctx.q(),
                    got: values.len(),
                });
            }
            for &v in values {
                check_elt(ctx, v)?;
            }
            Ok(values.clone())
        }
    }
}

/// D_d(x, a) at a point, by the two-register recurrence: O(d) per point.
fn dickson_eval(ctx: &FieldCtx, d: u64, a: Elt, x: Elt, two: Elt) -> Elt {
    if d == 0 {
        return two;
    }
    if d == 1 {
        return x;
    }
    let mut prev = two;
    let mut cur = x;
    for _ in 2..=d {
        let next = ctx.sub(ctx.mul(x, cur), ctx.mul(a, prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates sum of a_i x^(p^i) by iterating the Frobenius.
pub fn linearized_eval(ctx: &FieldCtx, coeffs: &[Elt], x: Elt) -> Elt {
    let mut acc = Elt::ZERO;
    let mut fx = x;
    for (i, &c) in coeffs.iter().enumerate() {
        if i > 0 {
            fx = ctx.frobenius(fx, 1);
        }
        if c != Elt::ZERO {
            acc = ctx.add(acc, ctx.mul(c, fx));
        }
    }
    acc
}

/// Matrix action on the coefficient vector of x.
pub fn apply_matrix(ctx: &FieldCtx, matrix: &[Vec<u64>], x: Elt) -> Elt {
    let p = ctx.p();
    let digits = ctx.coeffs(x);
    let n = digits.len();
    let mut out = vec![0u64; n];
    for (i, row) in matrix.iter().enumerate() {
        let mut acc = 0u64;
        for (j, &m) in row.iter().enumerate() {
            acc = (acc + m % p * digits[j]) % p;
        }
        out[i] = acc;
    }
    ctx.from_coeffs(&out).expect("matrix output digits stay in range")
}

/// Bitmap occupancy check, O(q), short-circuiting on the first repeat.
pub fn is_permutation(t: &FuncTable<'_>) -> bool {
    values_are_bijection(&t.values)
}

pub(crate) fn values_are_bijection(values: &[Elt]) -> bool {
    let mut seen = vec![0u64; (values.len() + 63) / 64];
    for v in values {
        let i = v.index() as usize;
        let (w, b) = (i / 64, i % 64);
        if seen[w] >> b & 1 == 1 {
            return false;
        }
        seen[w] |= 1 << b;
    }
    true
}

/// Pointwise compositional inverse; fails on non-bijective input.
pub fn invert<'f>(t: &FuncTable<'f>) -> Result<FuncTable<'f>, FuncError> {
    let q = t.values.len();
    let mut inv = vec![Elt::ZERO; q];
    let mut seen = vec![false; q];
    for (x, y) in t.values.iter().enumerate() {
        let yi = y.index() as usize;
        if seen[yi] {
            return Err(FuncError::NotAPermutation);
        }
        seen[yi] = true;
        inv[yi] = Elt(x as u32);
    }
    Ok(FuncTable {
        ctx: t.ctx,
        spec: FunctionSpec::Table { values: inv.clone() },
        values: inv,
    })
}

/// All roots of the linearized polynomial: {x : L(x) = 0}.
/// The kernel size is always a power of p (checked).
pub fn linearized_kernel(ctx: &FieldCtx, coeffs: &[Elt]) -> Vec<Elt> {
    let mut out = Vec::new();
    for x in ctx.by_index() {
        if linearized_eval(ctx, coeffs, x) == Elt::ZERO {
            out.push(x);
        }
    }
    debug_assert!(is_power_of(out.len() as u64, ctx.p()));
    out
}

fn is_power_of(mut m: u64, p: u64) -> bool {
    if m == 0 {
        return false;
    }
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_monomial() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(1)).unwrap();
        for x in f.by_index() {
            assert_eq!(t.eval(x), x);
        }
        assert!(is_permutation(&t));
    }

    #[test]
    fn cube_on_f4_is_norm() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let t = materialize(&f4, &FunctionSpec::monomial(3)).unwrap();
        assert_eq!(t.eval(f4.zero()), f4.zero());
        for x in f4.by_index().skip(1) {
            assert_eq!(t.eval(x), f4.one());
        }
    }

    #[test]
    fn dickson_table_matches_coefficient_expansion() {
        // D_5(x,1) on F_243 agrees pointwise with the polynomial
        // x^5 + x^3 + 2x obtained from the coefficient route
        let f = FieldCtx::new(3, 5).unwrap();
        let one = f.one();
        let t = materialize(&f, &FunctionSpec::DicksonFirst { d: 5, a: one }).unwrap();
        for x in f.by_index() {
            let direct = {
                let x5 = f.pow_u(x, 5);
                let x3 = f.pow_u(x, 3);
                let twox = f.mul(f.scalar(2), x);
                f.add(f.add(x5, x3), twox)
            };
            assert_eq!(t.eval(x), direct);
        }
    }

    #[test]
    fn monomial_permutation_iff_gcd_one() {
        let f = FieldCtx::new(3, 5).unwrap();
        for d in 1..=30u64 {
            let t = materialize(&f, &FunctionSpec::monomial(d)).unwrap();
            let expect = num_integer::gcd(d, f.q() - 1) == 1;
            assert_eq!(is_permutation(&t), expect, "d={d}");
        }
        // (3^2+1)/2 = 5 permutes F_243
        let t = materialize(&f, &FunctionSpec::monomial(5)).unwrap();
        assert!(is_permutation(&t));
    }

    #[test]
    fn half_power_permutes_f125() {
        // (5^1+1)/2 = 3 permutes F_125
        let f = FieldCtx::new(5, 3).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(3)).unwrap();
        assert!(is_permutation(&t));
    }

    #[test]
    fn inverse_of_x5_is_x97_on_f243() {
        let f = FieldCtx::new(3, 5).unwrap();
        let t5 = materialize(&f, &FunctionSpec::monomial(5)).unwrap();
        let t97 = materialize(&f, &FunctionSpec::monomial(97)).unwrap();
        let inv = invert(&t5).unwrap();
        assert_eq!(inv.values, t97.values);
        // invert is an involution
        let back = invert(&inv).unwrap();
        assert_eq!(back.values, t5.values);
    }

    #[test]
    fn invert_rejects_non_bijections() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = materialize(&f, &FunctionSpec::monomial(2)).unwrap();
        assert_eq!(invert(&t).err(), Some(FuncError::NotAPermutation));
    }

    #[test]
    fn kernels_of_simple_linearized_maps() {
        let f = FieldCtx::new(3, 2).unwrap();
        // L(x) = x
        let k = linearized_kernel(&f, &[f.one()]);
        assert_eq!(k, vec![f.zero()]);
        // L(x) = x^p - x has kernel F_p
        let k = linearized_kernel(&f, &[f.scalar_signed(-1), f.one()]);
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|&x| f.in_prime_field(x)));
    }

    #[test]
    fn binomial_kernel_matches_power_criterion() {
        // x^(p^j) - a x^(p^i) has trivial kernel iff a is not a
        // (p^(j-i) - 1)-st power
        let f = FieldCtx::new(3, 3).unwrap();
        let (i, j) = (0u32, 1u32);
        let e = 3u64.pow(j - i) - 1; // 2
        let g = num_integer::gcd(e, f.q() - 1);
        for a in f.by_index().skip(1) {
            let mut coeffs = vec![Elt::ZERO; 2];
            coeffs[i as usize] = f.neg(a);
            coeffs[j as usize] = f.one();
            let kernel = linearized_kernel(&f, &coeffs);
            let is_pwr = f.pow_u(a, (f.q() - 1) / g) == f.one();
            assert_eq!(kernel.len() == 1, !is_pwr, "a={a:?}");
        }
    }

    #[test]
    fn sum_materializes_pointwise() {
        let f = FieldCtx::new(5, 2).unwrap();
        let s = FunctionSpec::Sum {
            left: Box::new(FunctionSpec::monomial(3)),
            right: Box::new(FunctionSpec::monomial(7)),
        };
        let ts = materialize(&f, &s).unwrap();
        let t3 = materialize(&f, &FunctionSpec::monomial(3)).unwrap();
        let t7 = materialize(&f, &FunctionSpec::monomial(7)).unwrap();
        for x in f.by_index() {
            assert_eq!(ts.eval(x), f.add(t3.eval(x), t7.eval(x)));
        }
    }

    #[test]
    fn table_length_is_validated() {
        let f = FieldCtx::new(3, 2).unwrap();
        let r = materialize(
            &f,
            &FunctionSpec::Table {
                values: vec![Elt::ZERO; 8],
            },
        );
        assert!(matches!(r.err(), Some(FuncError::TableLength { .. })));
    }
}
