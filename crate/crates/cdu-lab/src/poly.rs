//! Dense polynomial arithmetic over the prime field F_p.
//!
//! Coefficient vectors are stored low-degree first and kept canonical:
//! trailing zeros are stripped, so the zero polynomial has an empty vector.
//! Everything here is exact; coefficients live in `[0, p)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// A dense polynomial over F_p, low-degree first, canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    /// The zero polynomial over F_p.
    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: vec![] }
    }

    /// The constant polynomial `c` (reduced mod p).
    pub fn constant(p: u64, c: u64) -> Self {
        Self::from_coeffs(p, &[c])
    }

    /// The monomial `x`.
    pub fn x(p: u64) -> Self {
        Self::from_coeffs(p, &[0, 1])
    }

    /// Builds a polynomial from raw coefficients (low-degree first),
    /// reducing each mod p and stripping trailing zeros.
    pub fn from_coeffs(p: u64, coeffs: &[u64]) -> Self {
        assert!(p >= 2, "characteristic must be at least 2");
        let mut c: Vec<u64> = coeffs.iter().map(|&v| v % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFp { p, coeffs: c }
    }

    /// Builds from signed coefficients, reducing into `[0, p)`.
    pub fn from_signed(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        let c: Vec<u64> = coeffs.iter().map(|&v| v.rem_euclid(pi) as u64).collect();
        Self::from_coeffs(p, &c)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn assert_same_char(&self, other: &Self) {
        assert_eq!(
            self.p, other.p,
            "polynomial characteristic mismatch: {} vs {}",
            self.p, other.p
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_char(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push((self.coeff(i) + other.coeff(i)) % self.p);
        }
        Self::from_coeffs(self.p, &out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_char(other);
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push((self.p + self.coeff(i) - other.coeff(i)) % self.p);
        }
        Self::from_coeffs(self.p, &out)
    }

    pub fn neg(&self) -> Self {
        let out: Vec<u64> = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        Self::from_coeffs(self.p, &out)
    }

    pub fn scalar_mul(&self, s: u64) -> Self {
        let s = s % self.p;
        let out: Vec<u64> = self.coeffs.iter().map(|&c| c * s % self.p).collect();
        Self::from_coeffs(self.p, &out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_char(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::from_coeffs(self.p, &out)
    }

    /// Evaluates at a prime-field point by Horner's rule.
    pub fn eval_fp(&self, x: u64) -> u64 {
        let x = x % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c) % self.p;
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    /// Panics on division by the zero polynomial.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        self.assert_same_char(divisor);
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let p = self.p;
        let dd = divisor.degree().unwrap();
        if self.degree().map_or(true, |d| d < dd) {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = mod_inverse(divisor.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let f = rem[i] * lead_inv % p;
            quot[i - dd] = f;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let sub = f * dc % p;
                rem[idx] = (rem[idx] + p - sub) % p;
            }
        }
        (Self::from_coeffs(p, &quot), Self::from_coeffs(p, &rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    /// Product reduced mod `modulus`.
    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `self^e` reduced mod `modulus`, by square and multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.p, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        self.assert_same_char(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(d) = a.degree() {
            let inv = mod_inverse(a.coeffs[d], a.p);
            a = a.scalar_mul(inv);
        }
        a
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                (_, _) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime, a != 0 mod p
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
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

/// Rabin irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &PolyFp) -> bool {
    let p = f.characteristic();
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = PolyFp::x(p);
    // x^(p^n) == x mod f
    let mut xp = x.clone();
    for _ in 0..n {
        xp = xp.pow_mod(p, f);
    }
    if xp != x.rem(f) {
        return false;
    }
    for (r, _) in factorize(n as u64) {
        let k = n / r as usize;
        let mut xk = x.clone();
        for _ in 0..k {
            xk = xk.pow_mod(p, f);
        }
        let diff = xk.sub(&x.rem(f));
        let g = f.gcd(&diff);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Trial-division factorization; returns (prime, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Binomial coefficient C(n, k) mod p via Lucas' theorem.
pub fn binom_mod_p(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut n = n;
    let mut k = k;
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = acc * binom_small_mod_p(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn binom_small_mod_p(n: u64, k: u64, p: u64) -> u64 {
    // n, k < p
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inverse(den.max(1), p) % p
}

/// `(x + s)^d` over F_p by iterated multiplication, `s` in {+1, -1}.
pub fn shifted_power(p: u64, s: i64, d: u64) -> PolyFp {
    let base = PolyFp::from_signed(p, &[s, 1]);
    let mut acc = PolyFp::constant(p, 1);
    for _ in 0..d {
        acc = acc.mul(&base);
    }
    acc
}

/// `(x + s)^d` via Lucas-theorem binomial coefficients. Agrees with
/// [`shifted_power`]; kept as an independent route for cross-checks.
pub fn shifted_power_lucas(p: u64, s: i64, d: u64) -> PolyFp {
    let sv = s.rem_euclid(p as i64) as u64;
    let mut out = vec![0u64; d as usize + 1];
    // coefficient of x^k is C(d,k) s^(d-k)
    let mut spow = vec![1u64; d as usize + 1];
    for i in 1..=d as usize {
        spow[i] = spow[i - 1] * sv % p;
    }
    for k in 0..=d {
        out[k as usize] = binom_mod_p(d, k, p) * spow[(d - k) as usize] % p;
    }
    PolyFp::from_coeffs(p, &out)
}

/// First-kind Dickson polynomial D_d(x, a) over F_p by the recurrence
/// D_0 = 2, D_1 = x, D_d = x D_{d-1} - a D_{d-2}.
pub fn dickson_first(p: u64, d: u64, a: u64) -> PolyFp {
    let two = PolyFp::constant(p, 2);
    if d == 0 {
        return two;
    }
    let x = PolyFp::x(p);
    if d == 1 {
        return x;
    }
    let a = a % p;
    let mut prev = two;
    let mut cur = x.clone();
    for _ in 2..=d {
        let next = x.mul(&cur).sub(&cur_scaled(&prev, a));
        prev = cur;
        cur = next;
    }
    cur
}

fn cur_scaled(q: &PolyFp, a: u64) -> PolyFp {
    q.scalar_mul(a)
}

/// D_d(x, a) from the closed-form integer coefficients
/// `d/(d-i) C(d-i, i) (-a)^i`, evaluated exactly in Z and reduced mod p.
/// Independent of the recurrence route.
pub fn dickson_first_closed_form(p: u64, d: u64, a: u64) -> PolyFp {
    if d == 0 {
        return PolyFp::constant(p, 2);
    }
    let a = a % p;
    let mut out = vec![0u64; d as usize + 1];
    for i in 0..=(d / 2) {
        // d/(d-i) * C(d-i, i) is always an integer
        let c = big_binom(d - i, i) * BigUint::from(d);
        let (q, r) = c.div_rem(&BigUint::from(d - i));
        assert!(r.is_zero(), "closed-form Dickson coefficient not integral");
        let mut term = BigInt::from(q);
        if i % 2 == 1 {
            term = -term;
        }
        // multiply by a^i
        let apow = BigInt::from(a).pow(i as u32);
        term *= apow;
        let red = term.mod_floor(&BigInt::from(p));
        debug_assert!(!red.is_negative());
        out[(d - 2 * i) as usize] = red.to_u64().unwrap();
    }
    PolyFp::from_coeffs(p, &out)
}

fn big_binom(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Outcome of testing `(x+1)^d + (x-1)^d = 2 D_d(x, eps)` coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedSumIdentity {
    pub holds: bool,
    /// Every eps in F_p^* for which the identity holds exactly.
    pub witnesses: Vec<u64>,
}

/// Finds all eps in F_p^* with `(x+1)^d + (x-1)^d = 2 D_d(x, eps)` as exact
/// polynomials over F_p. Comparison is coefficient-wise, never pointwise.
pub fn shifted_sum_identity_witnesses(p: u64, d: u64) -> ShiftedSumIdentity {
    assert!(p >= 3 && p % 2 == 1, "odd characteristic required");
    assert!(d >= 1);
    let lhs = shifted_power(p, 1, d).add(&shifted_power(p, -1, d));
    let mut witnesses = Vec::new();
    for eps in 1..p {
        let rhs = dickson_first(p, d, eps).scalar_mul(2);
        if lhs == rhs {
            witnesses.push(eps);
        }
    }
    ShiftedSumIdentity {
        holds: !witnesses.is_empty(),
        witnesses,
    }
}

/// Predicts whether the shifted-sum identity has a witness: true iff
/// d is 1, 2, 3 or of the form (p^(k+1)+1)/2, i.e. the base-p digits of d
/// are a_0 = (p+1)/2 and a_j = (p-1)/2 for j >= 1.
pub fn shifted_sum_identity_expected(p: u64, d: u64) -> bool {
    if d >= 1 && d <= 3 {
        return true;
    }
    let mut v = (p + 1) / 2; // (p^1 + 1)/2
    loop {
        if v == d {
            return true;
        }
        if v > d {
            return false;
        }
        // (p^(k+1)+1)/2 -> (p^(k+2)+1)/2
        match v.checked_mul(p) {
            Some(w) => v = w - (p - 1) / 2,
            None => return false,
        }
    }
}
