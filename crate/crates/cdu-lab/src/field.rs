//! Table-accelerated exact arithmetic for GF(p^n).
//!
//! A [`FieldCtx`] holds exp/log tables for a fixed primitive root and a Zech
//! logarithm table, so that every field operation (including addition) runs
//! in O(1) after an O(q) construction. Elements are opaque handles; the
//! canonical external form is the coefficient vector `(c_0, ..., c_{n-1})`
//! over F_p in the polynomial basis of the modulus, and the dense element
//! index is `sum c_i p^i`.
//!
//! Fields beyond the table limit are rejected at construction rather than
//! silently degrading: every downstream cost model assumes O(1) arithmetic.

use crate::poly::{factorize, is_irreducible, PolyFp};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Sentinel: `log` entry of zero, and `zech[k]` when `1 + g^k = 0`.
const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field with {q} elements exceeds the table limit {limit}")]
    TooLarge { q: u64, limit: u64 },
    #[error("modulus must be monic of degree {expected}, got degree {got:?}")]
    BadModulusShape { expected: u32, got: Option<usize> },
    #[error("modulus characteristic {got} does not match field characteristic {expected}")]
    ModulusCharMismatch { expected: u64, got: u64 },
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("modulus is irreducible but not primitive (x does not generate the multiplicative group)")]
    NonPrimitiveModulus,
    #[error("division or inversion by zero")]
    DivisionByZero,
    #[error("element index {0} out of range")]
    IndexOutOfRange(u64),
    #[error("coefficient vector has wrong length or entries outside [0, p)")]
    BadCoefficients,
}

/// An element of a [`FieldCtx`], stored as its dense index.
///
/// Handles are only meaningful relative to the context that produced them.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elt(pub(crate) u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    /// Dense index in `[0, q)`: the base-p packing of the coefficient vector.
    pub fn index(self) -> u64 {
        self.0 as u64
    }
}

/// Serializable field description: `{"p": .., "n": .., "modulus": [c0..cn]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u64>,
}

/// Immutable description of GF(p^n) with exp/log/Zech tables.
///
/// Safe to share across any number of threads; all operations are pure.
pub struct FieldCtx {
    p: u64,
    n: u32,
    q: u64,
    modulus: PolyFp,
    /// exp[j] = index of g^j for 0 <= j < q-1
    exp: Vec<u32>,
    /// log[idx] = j with g^j = idx, NO_LOG for idx = 0
    log: Vec<u32>,
    /// zech[k] = log(1 + g^k), NO_LOG when 1 + g^k = 0
    zech: Vec<u32>,
    /// log(-1): (q-1)/2 in odd characteristic, 0 in characteristic 2
    half: u64,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(GF({}^{}), modulus = {})", self.p, self.n, self.modulus)
    }
}

pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 21;

impl FieldCtx {
    /// Builds GF(p^n) with the default modulus (see [`default_modulus`]).
    pub fn new(p: u64, n: u32) -> Result<FieldCtx, FieldError> {
        Self::with_options(p, n, None, DEFAULT_TABLE_LIMIT)
    }

    /// Builds GF(p^n) with a caller-supplied monic modulus of degree n.
    /// The modulus must be irreducible and primitive (the residue class of x
    /// must generate the multiplicative group); the two failure modes are
    /// reported distinctly.
    pub fn with_modulus(p: u64, n: u32, modulus: PolyFp) -> Result<FieldCtx, FieldError> {
        Self::with_options(p, n, Some(modulus), DEFAULT_TABLE_LIMIT)
    }

    pub fn with_options(
        p: u64,
        n: u32,
        modulus: Option<PolyFp>,
        table_limit: u64,
    ) -> Result<FieldCtx, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::DegreeZero);
        }
        let q = checked_pow(p, n, table_limit).ok_or(FieldError::TooLarge {
            q: u64::MAX,
            limit: table_limit,
        })?;
        if q > table_limit {
            return Err(FieldError::TooLarge { q, limit: table_limit });
        }
        let modulus = match modulus {
            Some(m) => {
                if m.characteristic() != p {
                    return Err(FieldError::ModulusCharMismatch {
                        expected: p,
                        got: m.characteristic(),
                    });
                }
                if m.degree() != Some(n as usize) || !m.is_monic() {
                    return Err(FieldError::BadModulusShape {
                        expected: n,
                        got: m.degree(),
                    });
                }
                if !modulus_is_irreducible(&m) {
                    return Err(FieldError::ReducibleModulus);
                }
                if !class_of_x_is_primitive(&m, q) {
                    return Err(FieldError::NonPrimitiveModulus);
                }
                m
            }
            None => default_modulus(p, n)?,
        };
        Self::build_tables(p, n, q, modulus)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<FieldCtx, FieldError> {
        let m = PolyFp::from_coeffs(spec.p, &spec.modulus);
        Self::with_modulus(spec.p, spec.n, m)
    }

    fn build_tables(p: u64, n: u32, q: u64, modulus: PolyFp) -> Result<FieldCtx, FieldError> {
        let qm1 = (q - 1) as usize;
        let mut exp = vec![0u32; qm1.max(1)];
        let mut log = vec![NO_LOG; q as usize];

        // generator digits: class of x for n >= 2, -c0 for n = 1
        let mut cur = vec![0u64; n as usize];
        cur[0] = 1;
        for j in 0..qm1 {
            let idx = pack(&cur, p);
            exp[j] = idx as u32;
            if log[idx as usize] != NO_LOG {
                return Err(FieldError::NonPrimitiveModulus);
            }
            log[idx as usize] = j as u32;
            mul_by_x(&mut cur, &modulus, p);
        }
        if pack(&cur, p) != 1 {
            return Err(FieldError::NonPrimitiveModulus);
        }

        // Zech logarithms: 1 + g^k, using the fact that adding 1 only
        // touches the low base-p digit of the packed index.
        let mut zech = vec![NO_LOG; qm1.max(1)];
        for k in 0..qm1 {
            let idx = exp[k] as u64;
            let low = idx % p;
            let y = if low == p - 1 { idx - (p - 1) } else { idx + 1 };
            if y != 0 {
                zech[k] = log[y as usize];
            }
        }

        let half = if p == 2 { 0 } else { (q - 1) / 2 };
        Ok(FieldCtx {
            p,
            n,
            q,
            modulus,
            exp,
            log,
            zech,
            half,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &PolyFp {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        let mut m = self.modulus.coeffs().to_vec();
        m.resize(self.n as usize + 1, 0);
        FieldSpec {
            p: self.p,
            n: self.n,
            modulus: m,
        }
    }

    /// The fixed primitive root used by the tables.
    pub fn generator(&self) -> Elt {
        if self.q == 2 {
            Elt(1)
        } else {
            Elt(self.exp[1])
        }
    }

    pub fn zero(&self) -> Elt {
        Elt(0)
    }

    pub fn one(&self) -> Elt {
        Elt(1)
    }

    /// Element from its dense index.
    pub fn elt(&self, index: u64) -> Result<Elt, FieldError> {
        if index < self.q {
            Ok(Elt(index as u32))
        } else {
            Err(FieldError::IndexOutOfRange(index))
        }
    }

    /// Embeds a prime-field scalar (reduced mod p).
    pub fn scalar(&self, v: u64) -> Elt {
        Elt((v % self.p) as u32)
    }

    /// Embeds a signed scalar, e.g. -1 for the negated unit.
    pub fn scalar_signed(&self, v: i64) -> Elt {
        Elt(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elt, FieldError> {
        if coeffs.len() != self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadCoefficients);
        }
        Ok(Elt(pack(coeffs, self.p) as u32))
    }

    /// Canonical external form: coefficient vector, low degree first.
    pub fn coeffs(&self, x: Elt) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.n as usize);
        let mut idx = x.index();
        for _ in 0..self.n {
            v.push(idx % self.p);
            idx /= self.p;
        }
        v
    }

    /// True when x lies in the prime subfield F_p.
    pub fn in_prime_field(&self, x: Elt) -> bool {
        x.index() < self.p
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let qm1 = self.q - 1;
        let i = self.log[a.0 as usize] as u64;
        let j = self.log[b.0 as usize] as u64;
        let k = if j >= i { j - i } else { j + qm1 - i };
        let z = self.zech[k as usize];
        if z == NO_LOG {
            return Elt(0);
        }
        let mut e = i + z as u64;
        if e >= qm1 {
            e -= qm1;
        }
        Elt(self.exp[e as usize])
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let qm1 = self.q - 1;
        let mut e = self.log[a.0 as usize] as u64 + self.half;
        if e >= qm1 {
            e -= qm1;
        }
        Elt(self.exp[e as usize])
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.0 == 0 || b.0 == 0 {
            return Elt(0);
        }
        let qm1 = self.q - 1;
        let mut e = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        if e >= qm1 {
            e -= qm1;
        }
        Elt(self.exp[e as usize])
    }

    pub fn inv(&self, a: Elt) -> Result<Elt, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let qm1 = self.q - 1;
        let i = self.log[a.0 as usize] as u64;
        let e = if i == 0 { 0 } else { qm1 - i };
        Ok(Elt(self.exp[e as usize]))
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^d` for any integer d. Negative exponents require nonzero x.
    /// Conventions: 0^d = 0 for d > 0 and 0^0 = 1.
    pub fn pow(&self, x: Elt, d: i64) -> Result<Elt, FieldError> {
        if x.0 == 0 {
            return match d.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Elt(0)),
                std::cmp::Ordering::Equal => Ok(Elt(1)),
                std::cmp::Ordering::Less => Err(FieldError::DivisionByZero),
            };
        }
        let qm1 = (self.q - 1) as i64;
        let e = d.rem_euclid(qm1) as u64;
        Ok(self.pow_log(x, e))
    }

    /// `x^d` for d >= 0 with the same zero conventions; never fails.
    pub fn pow_u(&self, x: Elt, d: u64) -> Elt {
        if x.0 == 0 {
            return if d == 0 { Elt(1) } else { Elt(0) };
        }
        self.pow_log(x, d % (self.q - 1))
    }

    #[inline]
    fn pow_log(&self, x: Elt, e_reduced: u64) -> Elt {
        debug_assert!(x.0 != 0);
        let qm1 = self.q - 1;
        let e = self.log[x.0 as usize] as u64 * e_reduced % qm1;
        Elt(self.exp[e as usize])
    }

    /// Reduces a monomial exponent mod q-1 into [0, q-2], for nonzero bases.
    pub fn reduce_exponent(&self, d: u64) -> u64 {
        d % (self.q - 1)
    }

    /// `x^(p^j)`; j is reduced mod n.
    pub fn frobenius(&self, x: Elt, j: u32) -> Elt {
        if x.0 == 0 {
            return x;
        }
        let j = (j % self.n) as u64;
        let qm1 = self.q - 1;
        let mut pj = 1u64;
        for _ in 0..j {
            pj = pj * self.p % qm1;
        }
        self.pow_log(x, pj)
    }

    /// Absolute trace Tr(x) = sum of x^(p^i), reported as an integer in [0, p).
    pub fn abs_trace(&self, x: Elt) -> u64 {
        let mut acc = x;
        let mut t = x;
        for _ in 1..self.n {
            t = self.frobenius(t, 1);
            acc = self.add(acc, t);
        }
        debug_assert!(self.in_prime_field(acc), "trace left the prime field");
        acc.index()
    }

    /// All q elements: 0 first, then g^0, g^1, ..., g^(q-2).
    /// This order is the deterministic enumeration every report relies on.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        std::iter::once(Elt(0)).chain(self.exp.iter().map(|&i| Elt(i)))
    }

    /// Element handles by dense index 0..q (table order, not enumeration order).
    pub fn by_index(&self) -> impl Iterator<Item = Elt> {
        (0..self.q as u32).map(Elt)
    }

    /// First element in enumeration order with trace 1; exists since the
    /// trace is surjective.
    pub fn first_trace_one(&self) -> Elt {
        self.elements()
            .find(|&x| self.abs_trace(x) == 1)
            .expect("trace is surjective onto F_p")
    }

    // ------------------------------------------------------------------
    // Reference routes on coefficient vectors, independent of the tables.
    // These exist so the log/Zech fast paths can be cross-checked.
    // ------------------------------------------------------------------

    /// Addition digit-by-digit on coefficient vectors.
    pub fn add_ref(&self, a: Elt, b: Elt) -> Elt {
        let (mut ia, mut ib) = (a.index(), b.index());
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.n {
            let s = (ia % self.p + ib % self.p) % self.p;
            out += s * place;
            place *= self.p;
            ia /= self.p;
            ib /= self.p;
        }
        Elt(out as u32)
    }

    /// Multiplication via polynomial product mod the modulus.
    pub fn mul_ref(&self, a: Elt, b: Elt) -> Elt {
        let pa = PolyFp::from_coeffs(self.p, &self.coeffs(a));
        let pb = PolyFp::from_coeffs(self.p, &self.coeffs(b));
        let prod = pa.mul(&pb).rem(&self.modulus);
        let mut c = prod.coeffs().to_vec();
        c.resize(self.n as usize, 0);
        Elt(pack(&c, self.p) as u32)
    }

    /// Exponentiation by repeated squaring on coefficient vectors.
    pub fn pow_ref(&self, x: Elt, d: u64) -> Elt {
        if x.0 == 0 {
            return if d == 0 { Elt(1) } else { Elt(0) };
        }
        let mut acc = Elt(1);
        let mut base = x;
        let mut e = d;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_ref(acc, base);
            }
            base = self.mul_ref(base, base);
            e >>= 1;
        }
        acc
    }

    /// Formats an element as a polynomial in the generator, e.g. `g^3` form
    /// is avoided in favor of the coefficient expression `x^2 + 2`.
    pub fn format_elt(&self, x: Elt) -> String {
        let c = self.coeffs(x);
        let poly = PolyFp::from_coeffs(self.p, &c);
        format!("{poly}")
    }
}

#[inline]
fn pack(digits: &[u64], p: u64) -> u64 {
    let mut acc = 0u64;
    for &d in digits.iter().rev() {
        acc = acc * p + d;
    }
    acc
}

/// Multiplies a coefficient vector by x, reducing by the monic modulus.
fn mul_by_x(cur: &mut [u64], modulus: &PolyFp, p: u64) {
    let n = cur.len();
    let t = cur[n - 1];
    for i in (1..n).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if t != 0 {
        for (i, c) in cur.iter_mut().enumerate() {
            let m = modulus.coeff(i);
            if m != 0 {
                *c = (*c + p - t * m % p) % p;
            }
        }
    }
}

fn modulus_is_irreducible(m: &PolyFp) -> bool {
    if m.degree() == Some(1) {
        return true;
    }
    is_irreducible(m)
}

/// Checks that the residue class of x has full multiplicative order q-1.
/// Assumes the modulus is already known to be irreducible.
fn class_of_x_is_primitive(modulus: &PolyFp, q: u64) -> bool {
    let p = modulus.characteristic();
    let n = modulus.degree().unwrap();
    if n == 1 {
        let alpha = (p - modulus.coeff(0) % p) % p;
        if alpha == 0 {
            return false;
        }
        return element_order_is_full_prime(alpha, p);
    }
    let x = PolyFp::x(p);
    // alpha = class of x; check alpha^((q-1)/r) != 1 for each prime r | q-1
    for (r, _) in factorize(q - 1) {
        let e = (q - 1) / r;
        let v = x.pow_mod(e, modulus);
        if v == PolyFp::constant(p, 1) {
            return false;
        }
    }
    true
}

fn element_order_is_full_prime(a: u64, p: u64) -> bool {
    for (r, _) in factorize(p - 1) {
        if pow_mod_u64(a, (p - 1) / r, p) == 1 {
            return false;
        }
    }
    true
}

fn pow_mod_u64(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b = base as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        e >>= 1;
    }
    acc as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(p: u64, n: u32, limit: u64) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..n {
        acc = acc.checked_mul(p)?;
        if acc > limit.max(1 << 40) {
            return None;
        }
    }
    Some(acc)
}

/// Default modulus selection.
///
/// For (p, n) in {(2,2), (2,3), (2,4)} the fixed polynomials
/// x^2+x+1, x^3+x+1, x^4+x+1 are used so that generator-dependent results
/// on those binary fields are reproducible. Otherwise the lexicographically
/// smallest monic primitive polynomial of degree n is chosen, comparing
/// coefficient vectors low-degree first.
pub fn default_modulus(p: u64, n: u32) -> Result<PolyFp, FieldError> {
    match (p, n) {
        (2, 2) => return Ok(PolyFp::from_coeffs(2, &[1, 1, 1])),
        (2, 3) => return Ok(PolyFp::from_coeffs(2, &[1, 1, 0, 1])),
        (2, 4) => return Ok(PolyFp::from_coeffs(2, &[1, 1, 0, 0, 1])),
        _ => {}
    }
    let q = {
        let mut acc = 1u64;
        for _ in 0..n {
            acc = acc.saturating_mul(p);
        }
        acc
    };
    let nn = n as usize;
    let mut digits = vec![0u64; nn];
    loop {
        // candidate x^n + c_{n-1} x^{n-1} + ... + c_0
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let cand = PolyFp::from_coeffs(p, &coeffs);
        if cand.degree() == Some(nn)
            && modulus_is_irreducible(&cand)
            && class_of_x_is_primitive(&cand, q)
        {
            return Ok(cand);
        }
        // lexicographic successor, c_0 most significant
        let mut i = nn;
        loop {
            if i == 0 {
                // exhausted: cannot happen, primitive polynomials exist
                return Err(FieldError::NonPrimitiveModulus);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}
