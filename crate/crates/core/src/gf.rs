//! Arithmetic in finite fields `F_{p^d}`.
//!
//! A [`FieldSpec`] is the arithmetic context; [`FieldElem`] values are plain
//! integer encodings `sum c_i p^i` of the coefficient vector of an element in
//! `F_p[z]/(modulus)`. Elements carry no reference to their field, so every
//! operation goes through the context: `field.mul(a, b)`.
//!
//! Fields with at most [`TABLE_LIMIT`] elements get log/antilog tables (and a
//! full addition table for small odd-characteristic extensions); larger fields
//! fall back to digit-vector arithmetic.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field size for which log/antilog tables are built.
pub const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 512;

/// Shared handle to a field context.
pub type Field = Arc<FieldSpec>;

/// An element of `F_{p^d}`, stored as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub(crate) u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Integer encoding `sum c_i p^i` of the coefficient vector.
    pub fn encoding(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

/// A concrete finite field `F_{p^d} = F_p[z]/(modulus)`.
pub struct FieldSpec {
    p: u64,
    d: u32,
    q: u64,
    /// Monic modulus, little-endian, length `d + 1`. `[0, 1]` for `d = 1`.
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("d", &self.d)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.d == other.d && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.d)?;
        if self.d > 1 {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            write!(f, ":{}", coeffs.join(","))?;
        }
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut i = 2u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            while n.is_multiple_of(i) {
                n /= i;
            }
        }
        i += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// Builds `F_{p^d}`.
    ///
    /// Without an explicit modulus, the lexicographically smallest monic
    /// irreducible polynomial of degree `d` is used, comparing coefficients
    /// from the constant term upwards.
    pub fn new(p: u64, d: u32, modulus: Option<&[u64]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if d == 0 {
            return Err(Error::InvalidModulus(
                "extension degree must be >= 1".into(),
            ));
        }
        if p > u32::MAX as u64 {
            return Err(Error::FieldTooLarge { p, d });
        }
        let q = (0..d)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|q| *q < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, d })?;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 || m[d as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic coefficient list of length {}",
                        d + 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if d == 1 {
                    // Any monic linear modulus gives the same prime field; use
                    // the placeholder so that equal fields compare equal.
                    vec![0, 1]
                } else {
                    if !fp::is_irreducible(m, p) {
                        return Err(Error::ReducibleModulus(p));
                    }
                    m.to_vec()
                }
            }
            None => default_modulus(p, d)?,
        };

        let mut spec = FieldSpec {
            p,
            d,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            spec.tables = Some(spec.build_tables());
        }
        Ok(Arc::new(spec))
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// The field of size `q` with the default modulus.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, d) = prime_power(q).ok_or(Error::NotAPower { value: q, base: 0 })?;
        Self::new(p, d, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Checked conversion from an integer encoding.
    pub fn elem(&self, encoding: u64) -> Result<FieldElem> {
        if encoding < self.q {
            Ok(FieldElem(encoding))
        } else {
            Err(Error::ElementOutOfRange {
                value: encoding,
                q: self.q,
            })
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u64)
    }

    /// The generator `z` of the extension (equal to `0` when `d = 1`).
    pub fn generator(&self) -> FieldElem {
        if self.d == 1 {
            FieldElem(0)
        } else {
            FieldElem(self.p)
        }
    }

    /// All `q` elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    fn digits(&self, a: FieldElem) -> Vec<u64> {
        let mut v = a.0;
        (0..self.d)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn join_digits(&self, digits: &[u64]) -> FieldElem {
        FieldElem(digits.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.d == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        if let Some(Tables { add: Some(add), .. }) = &self.tables {
            return FieldElem(add[(a.0 * self.q + b.0) as usize] as u64);
        }
        self.add_slow(a, b)
    }

    fn add_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.d {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.d == 1 {
            return FieldElem(self.p - a.0);
        }
        if let Some(t) = &self.tables {
            return FieldElem(t.neg[a.0 as usize] as u64);
        }
        let digits: Vec<u64> = self
            .digits(a)
            .into_iter()
            .map(|c| (self.p - c) % self.p)
            .collect();
        self.join_digits(&digits)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let i = t.log[a.0 as usize] + t.log[b.0 as usize];
            return FieldElem(t.exp[i as usize] as u64);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.d == 1 {
            return FieldElem(a.0 * b.0 % self.p);
        }
        let prod = fp::mul(&self.digits(a), &self.digits(b), self.p);
        let (_, rem) = fp::divrem(&prod, &self.modulus, self.p);
        let mut rem = rem;
        rem.resize(self.d as usize, 0);
        self.join_digits(&rem)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            let i = (self.q - 1 - l) % (self.q - 1);
            return Ok(FieldElem(t.exp[i as usize] as u64));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, n: u64) -> FieldElem {
        if n == 0 {
            return FieldElem::ONE;
        }
        if a.0 == 0 {
            return FieldElem::ZERO;
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u128;
            let i = (l * n as u128 % (self.q - 1) as u128) as usize;
            return FieldElem(t.exp[i] as u64);
        }
        let mut base = a;
        let mut acc = FieldElem::ONE;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a^(p^e)`, the `e`-th power of the Frobenius endomorphism.
    pub fn frobenius(&self, a: FieldElem, e: u64) -> FieldElem {
        let e = e % self.d as u64;
        (0..e).fold(a, |x, _| self.pow(x, self.p))
    }

    /// The unique `b` with `b^(p^l) = a`.
    ///
    /// Computed as `a^(q^c / p^l)` with the smallest `c >= 1` such that
    /// `q^c >= p^l`; that power is the `(c d - l)`-th Frobenius power.
    pub fn pth_root(&self, a: FieldElem, l: u64) -> FieldElem {
        let d = self.d as u64;
        let c = l.div_ceil(d).max(1);
        self.frobenius(a, c * d - l)
    }

    /// Absolute trace `F_q -> F_p`, returned as an element of the prime field.
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        (0..self.d as u64).fold(FieldElem::ZERO, |acc, i| {
            self.add(acc, self.frobenius(a, i))
        })
    }

    /// Whether `a` is a square in `F_q`.
    pub fn is_square(&self, a: FieldElem) -> bool {
        self.p == 2 || a.0 == 0 || self.pow(a, (self.q - 1) / 2) == FieldElem::ONE
    }

    /// A square root of `a`, or `None` when `a` is a non-square.
    ///
    /// Of the two roots `{b, -b}` the one with the smaller encoding is returned.
    pub fn sqrt(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return Some(a);
        }
        if self.p == 2 {
            return Some(self.frobenius(a, self.d as u64 - 1));
        }
        if !self.is_square(a) {
            return None;
        }
        let b = self.tonelli_shanks(a);
        debug_assert_eq!(self.mul(b, b), a);
        let nb = self.neg(b);
        Some(if nb < b { nb } else { b })
    }

    fn tonelli_shanks(&self, a: FieldElem) -> FieldElem {
        let mut qq = self.q - 1;
        let mut s = 0u32;
        while qq.is_multiple_of(2) {
            qq /= 2;
            s += 1;
        }
        let nonresidue = self
            .elements()
            .skip(1)
            .find(|&z| !self.is_square(z))
            .expect("odd field has a non-square");
        let mut m = s;
        let mut c = self.pow(nonresidue, qq);
        let mut t = self.pow(a, qq);
        let mut r = self.pow(a, qq.div_ceil(2));
        while t != FieldElem::ONE {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != FieldElem::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// The two distinct roots of `c2 y^2 + c1 y + c0` in `F_q`, smaller
    /// encoding first; `None` when there is no root or only a double root.
    pub fn solve_quadratic(
        &self,
        c2: FieldElem,
        c1: FieldElem,
        c0: FieldElem,
    ) -> Result<Option<(FieldElem, FieldElem)>> {
        Ok(self
            .quadratic_roots(c2, c1, c0)?
            .filter(|(y1, y2)| y1 != y2))
    }

    /// Roots of `c2 y^2 + c1 y + c0` with multiplicity: a double root comes
    /// back as `(y, y)`.
    pub(crate) fn quadratic_roots(
        &self,
        c2: FieldElem,
        c1: FieldElem,
        c0: FieldElem,
    ) -> Result<Option<(FieldElem, FieldElem)>> {
        if c2.is_zero() {
            return Err(Error::DegenerateLeadingCoefficient);
        }
        let roots = if self.p == 2 {
            self.quadratic_roots_char2(c2, c1, c0)?
        } else {
            // y = (-c1 +- sqrt(c1^2 - 4 c2 c0)) / (2 c2)
            let disc = self.sub(self.mul(c1, c1), self.mul(self.int(4), self.mul(c2, c0)));
            match self.sqrt(disc) {
                None => None,
                Some(root) => {
                    let den = self.inv(self.mul(self.int(2), c2))?;
                    let y1 = self.mul(self.sub(root, c1), den);
                    let y2 = self.mul(self.sub(self.neg(root), c1), den);
                    Some((y1, y2))
                }
            }
        };
        Ok(roots.map(|(a, b)| if a <= b { (a, b) } else { (b, a) }))
    }

    fn quadratic_roots_char2(
        &self,
        c2: FieldElem,
        c1: FieldElem,
        c0: FieldElem,
    ) -> Result<Option<(FieldElem, FieldElem)>> {
        if c1.is_zero() {
            // c2 y^2 = c0 has the single (double) root sqrt(c0 / c2).
            let y = self
                .sqrt(self.div(c0, c2)?)
                .expect("squares are total in char 2");
            return Ok(Some((y, y)));
        }
        // y = (c1/c2) z turns the equation into z^2 + z + gamma = 0.
        let scale = self.div(c1, c2)?;
        let gamma = self.div(self.mul(c0, c2), self.mul(c1, c1))?;
        if !self.trace(gamma).is_zero() {
            return Ok(None);
        }
        let z = self.artin_schreier_root(gamma);
        debug_assert_eq!(self.add(self.mul(z, z), z), gamma);
        let y1 = self.mul(scale, z);
        let y2 = self.mul(scale, self.add(z, FieldElem::ONE));
        Ok(Some((y1, y2)))
    }

    /// A solution of `z^2 + z = gamma` in characteristic 2, assuming
    /// `Tr(gamma) = 0`.
    fn artin_schreier_root(&self, gamma: FieldElem) -> FieldElem {
        let d = self.d as u64;
        if d % 2 == 1 {
            // Half-trace.
            return (0..=(d - 1) / 2).fold(FieldElem::ZERO, |acc, i| {
                self.add(acc, self.frobenius(gamma, 2 * i))
            });
        }
        let theta = self
            .elements()
            .find(|&t| self.trace(t) == FieldElem::ONE)
            .expect("trace is surjective");
        let mut z = FieldElem::ZERO;
        for i in 0..d - 1 {
            let inner = (i + 1..d).fold(FieldElem::ZERO, |acc, j| {
                self.add(acc, self.frobenius(theta, j))
            });
            z = self.add(z, self.mul(inner, self.frobenius(gamma, i)));
        }
        z
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let order = q - 1;
        let factors = prime_factors(order);
        let one = FieldElem::ONE;
        let slow_pow = |a: FieldElem, mut n: u64| {
            let mut base = a;
            let mut acc = one;
            while n > 0 {
                if n & 1 == 1 {
                    acc = self.mul_slow(acc, base);
                }
                base = self.mul_slow(base, base);
                n >>= 1;
            }
            acc
        };
        let g = (1..q)
            .map(FieldElem)
            .find(|&g| factors.iter().all(|&l| slow_pow(g, order / l) != one))
            .expect("multiplicative group is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = one;
        for i in 0..order as usize {
            exp[i] = x.0 as u32;
            exp[i + order as usize] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        let neg = (0..q)
            .map(|a| {
                let digits: Vec<u64> = self
                    .digits(FieldElem(a))
                    .into_iter()
                    .map(|c| (self.p - c) % self.p)
                    .collect();
                self.join_digits(&digits).0 as u32
            })
            .collect();
        let add = (self.p != 2 && self.d > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = self.add_slow(FieldElem(a), FieldElem(b)).0 as u32;
                }
            }
            t
        });
        Tables { exp, log, add, neg }
    }
}

/// `(p, d)` with `q = p^d` and `p` prime, if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut rest = q;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// `e` with `value = base^e` and `e >= 1`, if it exists.
pub fn power_exponent(value: u64, base: u64) -> Option<u32> {
    if base < 2 || value < base {
        return None;
    }
    let mut v = value;
    let mut e = 0;
    while v.is_multiple_of(base) {
        v /= base;
        e += 1;
    }
    (v == 1).then_some(e)
}

fn default_modulus(p: u64, d: u32) -> Result<Vec<u64>> {
    if d == 1 {
        return Ok(vec![0, 1]);
    }
    let count = p.checked_pow(d).ok_or(Error::FieldTooLarge { p, d })?;
    for idx in 0..count {
        // Lexicographic order with c_0 most significant.
        let mut candidate = vec![0u64; d as usize + 1];
        let mut v = idx;
        for i in (0..d as usize).rev() {
            candidate[i] = v % p;
            v /= p;
        }
        candidate[d as usize] = 1;
        if fp::is_irreducible(&candidate, p) {
            return Ok(candidate);
        }
    }
    Err(Error::NoModulusFound { p, d })
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Parses `"p^d"` or `"p^d:c0,c1,...,cd"`.
    fn from_str(s: &str) -> Result<Self> {
        let field = parse_field(s)?;
        Ok(Arc::try_unwrap(field).unwrap_or_else(|_| unreachable!("fresh Arc")))
    }
}

/// Parses the field text form `"p^d"` or `"p^d:c0,c1,...,cd"`.
pub fn parse_field(s: &str) -> Result<Field> {
    let bad = || Error::Parse(format!("invalid field '{s}', expected p^d[:c0,...,cd]"));
    let (head, modulus) = match s.trim().split_once(':') {
        Some((h, m)) => (h, Some(m)),
        None => (s.trim(), None),
    };
    let (p, d) = match head.split_once('^') {
        Some((p, d)) => (
            p.trim().parse::<u64>().map_err(|_| bad())?,
            d.trim().parse::<u32>().map_err(|_| bad())?,
        ),
        None => (head.parse::<u64>().map_err(|_| bad())?, 1),
    };
    let modulus = modulus
        .map(|m| {
            m.split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    FieldSpec::new(p, d, modulus.as_deref())
}

/// Minimal dense arithmetic in `F_p[z]` used to validate and search moduli.
pub(crate) mod fp {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut n = p - 2;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            n >>= 1;
        }
        acc
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p);
        let mut quo = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() * lead_inv % p;
            quo[shift] = c;
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bc % p) % p;
            }
            r = trim(r);
        }
        (trim(quo), r)
    }

    fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn powmod(base: &[u64], mut n: u64, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = divrem(base, modulus, p).1;
        while n > 0 {
            if n & 1 == 1 {
                acc = divrem(&mul(&acc, &b, p), modulus, p).1;
            }
            b = divrem(&mul(&b, &b, p), modulus, p).1;
            n >>= 1;
        }
        acc
    }

    /// Rabin's test: `f` of degree `d` is irreducible iff `z^(p^d) = z mod f`
    /// and `gcd(z^(p^(d/l)) - z, f) = 1` for every prime `l | d`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let f = trim(f.to_vec());
        let d = f.len().saturating_sub(1) as u64;
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let z = vec![0u64, 1];
        // frob[k] = z^(p^k) mod f
        let mut frob = vec![divrem(&z, &f, p).1];
        for k in 0..d as usize {
            let next = powmod(&frob[k], p, &f, p);
            frob.push(next);
        }
        if frob[d as usize] != frob[0] {
            return false;
        }
        super::prime_factors(d).into_iter().all(|l| {
            let g = gcd(&sub(&frob[(d / l) as usize], &z, p), &f, p);
            g.len() == 1
        })
    }
}
