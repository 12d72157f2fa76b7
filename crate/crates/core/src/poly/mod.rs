//! Dense univariate polynomials over `F_q`.

mod mul;
mod text;

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use mul::KARATSUBA_THRESHOLD;
pub use text::parse_poly;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};

/// Field size up to which [`Poly::count_roots_in_field`] cross-checks the
/// gcd route against exhaustive evaluation in debug builds.
pub const EXHAUSTIVE_ROOT_LIMIT: u64 = 256;

/// A polynomial with coefficients in a shared field context.
///
/// Coefficients are little-endian and never carry trailing zeros, so the zero
/// polynomial has an empty coefficient vector and degree `None` (standing in
/// for `-infinity`).
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_field(&self.field, &other.field)
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    /// Orders by degree, then by coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn trim(coeffs: &mut Vec<FieldElem>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElem>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.encoding() < field.order()));
        trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from integer encodings, low degree first.
    pub fn from_encodings(field: &Field, encodings: &[u64]) -> Result<Self> {
        let coeffs = encodings
            .iter()
            .map(|&e| field.elem(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, FieldElem::ONE)
    }

    pub fn constant(field: &Field, c: FieldElem) -> Self {
        Self::new(field, vec![c])
    }

    /// `x`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, FieldElem::ONE, 1)
    }

    /// `c * x^n`.
    pub fn monomial(field: &Field, c: FieldElem, n: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: FieldElem) -> Self {
        Self::new(field, vec![field.neg(a), FieldElem::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    pub fn lc(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == Some(FieldElem::ONE)
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self - other)
    }

    /// Exact product; schoolbook for short operands and Karatsuba above
    /// [`KARATSUBA_THRESHOLD`] coefficients.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self * other)
    }

    /// Product by the schoolbook method only; used as a reference.
    pub fn mul_schoolbook(&self, other: &Poly) -> Poly {
        Poly::new(
            &self.field,
            mul::schoolbook(&self.field, &self.coeffs, &other.coeffs),
        )
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        Poly::new(&self.field, coeffs)
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    /// `self * x^n`.
    pub fn shl(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElem::ZERO; n];
        coeffs.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, coeffs)
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `self = quo * b + rem`, `deg rem < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        let field = &self.field;
        let Some(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(field), Poly::zero(field)));
        };
        if da < db {
            return Ok((Poly::zero(field), self.clone()));
        }
        let lead_inv = field.inv(b.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FieldElem::ZERO; da - db + 1];
        for shift in (0..=da - db).rev() {
            let c = field.mul(rem[shift + db], lead_inv);
            if c.is_zero() {
                continue;
            }
            quo[shift] = c;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(rem[shift + i], field.mul(c, bc));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(field, quo), Poly::new(field, rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// `self / b` if `b` divides `self`, else `None`.
    pub fn exact_div(&self, b: &Poly) -> Result<Option<Poly>> {
        let (quo, rem) = self.divrem(b)?;
        Ok(rem.is_zero().then_some(quo))
    }

    /// Monic gcd, with `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let field = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field.mul(field.int((i as u64 % field.characteristic()) as i64), c))
            .collect();
        Poly::new(field, coeffs)
    }

    /// Horner evaluation at `a`.
    pub fn evaluate(&self, a: FieldElem) -> FieldElem {
        let field = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| field.add(field.mul(acc, a), c))
    }

    /// `self ∘ h = self(h)`, by Horner's rule in `h`.
    pub fn compose(&self, h: &Poly) -> Result<Poly> {
        self.check_field(h)?;
        let field = &self.field;
        let mut acc = Poly::zero(field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * h) + &Poly::constant(field, c);
        }
        Ok(acc)
    }

    /// `self(x + w)`.
    pub fn shift_arg(&self, w: FieldElem) -> Poly {
        let xw = Poly::new(&self.field, vec![w, FieldElem::ONE]);
        self.compose(&xw).expect("same field")
    }

    /// Applies `a -> a^(p^e)` to every coefficient.
    pub fn frobenius_coeffs(&self, e: u64) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| self.field.frobenius(c, e))
            .collect();
        Poly::new(&self.field, coeffs)
    }

    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }

    /// `self^n mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut n: u64, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// `x^q mod modulus`.
    pub fn modexp_x_to_q(modulus: &Poly, q: u64) -> Result<Poly> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantBase);
        }
        Poly::x(&modulus.field).powmod(q, modulus)
    }

    /// Number of distinct roots in `F_q`, as `deg gcd(x^q - x, self)`.
    ///
    /// For `q <= EXHAUSTIVE_ROOT_LIMIT`, debug builds also evaluate at every
    /// element and assert that both counts agree.
    pub fn count_roots_in_field(&self) -> Result<usize> {
        let count = self.count_roots_gcd()?;
        if cfg!(debug_assertions) && self.field.order() <= EXHAUSTIVE_ROOT_LIMIT {
            debug_assert_eq!(
                count,
                self.count_roots_exhaustive()?,
                "root count paths disagree"
            );
        }
        Ok(count)
    }

    /// Root count via `gcd(x^q - x mod self, self)`.
    pub fn count_roots_gcd(&self) -> Result<usize> {
        let Some(deg) = self.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        if deg == 0 {
            return Ok(0);
        }
        let xq = Poly::modexp_x_to_q(self, self.field.order())?;
        let g = (&xq - &Poly::x(&self.field)).gcd(self)?;
        Ok(g.degree().unwrap_or(0))
    }

    /// Root count by evaluating at every field element.
    pub fn count_roots_exhaustive(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self
            .field
            .elements()
            .filter(|&a| self.evaluate(a).is_zero())
            .count())
    }

    /// The `base`-adic expansion `self = sum a_i base^i` with
    /// `deg a_i < deg base`, computed by divide and conquer over the powers
    /// `base^(2^j)`. Trailing zero digits are dropped, so the zero polynomial
    /// has no digits.
    pub fn taylor_expansion(&self, base: &Poly) -> Result<Vec<Poly>> {
        self.check_field(base)?;
        let db = match base.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantBase),
        };
        let Some(df) = self.degree() else {
            return Ok(Vec::new());
        };
        // nu = 2^levels digits with nu * deg(base) > deg(self)
        let mut levels = 0u32;
        while (1usize << levels) * db <= df {
            levels += 1;
        }
        let mut powers = vec![base.clone()];
        for j in 1..levels as usize {
            let sq = &powers[j - 1] * &powers[j - 1];
            powers.push(sq);
        }
        let mut digits = Vec::with_capacity(1 << levels);
        expand(self, levels as usize, &powers, &mut digits)?;
        while digits.last().is_some_and(Poly::is_zero) {
            digits.pop();
        }
        Ok(digits)
    }

    /// Largest `k` with `base^k | self`: the index of the first nonzero digit
    /// of the `base`-adic expansion.
    pub fn max_power_dividing(&self, base: &Poly) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let digits = self.taylor_expansion(base)?;
        Ok(digits
            .iter()
            .position(|d| !d.is_zero())
            .expect("nonzero polynomial has a nonzero digit"))
    }

    /// The `g` with `g^(p^l) = self`, if every exponent carrying a nonzero
    /// coefficient is divisible by `p^l`.
    pub fn pth_root(&self, l: u32) -> Option<Poly> {
        let field = &self.field;
        let step = field.characteristic().checked_pow(l)? as usize;
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && i % step != 0)
        {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .step_by(step)
            .map(|&c| field.pth_root(c, l as u64))
            .collect();
        Some(Poly::new(field, coeffs))
    }

    /// `deg(self - x^n)` for monic `self` of degree `n`; `None` when
    /// `self = x^n`.
    pub fn second_degree(&self) -> Result<Option<usize>> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = self.coeffs.len() - 1;
        Ok(self.coeffs[..n].iter().rposition(|c| !c.is_zero()))
    }

    /// Whether `gcd(self, self') = 1`.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// Whether every exponent with nonzero coefficient is a multiple of `p`.
    pub fn is_in_frobenius_image(&self) -> bool {
        self.derivative().is_zero()
    }
}

fn expand(f: &Poly, level: usize, powers: &[Poly], out: &mut Vec<Poly>) -> Result<()> {
    if level == 0 {
        out.push(f.clone());
        return Ok(());
    }
    let (quo, rem) = f.divrem(&powers[level - 1])?;
    expand(&rem, level - 1, powers, out)?;
    expand(&quo, level - 1, powers, out)
}

impl Add for &Poly {
    type Output = Poly;

    /// Panics if the operands live in different fields; see
    /// [`Poly::checked_add`].
    fn add(self, rhs: &Poly) -> Poly {
        assert!(same_field(&self.field, &rhs.field), "mixed fields");
        let field = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(self.coeff(i), rhs.coeff(i)))
            .collect();
        Poly::new(field, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert!(same_field(&self.field, &rhs.field), "mixed fields");
        let field = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        Poly::new(field, coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        assert!(same_field(&self.field, &rhs.field), "mixed fields");
        Poly::new(
            &self.field,
            mul::karatsuba(&self.field, &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let coeffs = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        Poly::new(&self.field, coeffs)
    }
}
