//! Monic original polynomials, decompositions, collisions and original shifts.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::poly::Poly;

/// A polynomial of positive degree with leading coefficient 1 and constant
/// coefficient 0, i.e. an element of `P_n(F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonicOriginal(Poly);

impl MonicOriginal {
    pub fn new(f: Poly) -> Result<Self> {
        match f.degree() {
            None | Some(0) => Err(Error::NotOriginal),
            Some(_) if !f.is_monic() => Err(Error::NotMonic),
            Some(_) if !f.coeff(0).is_zero() => Err(Error::NotOriginal),
            Some(_) => Ok(MonicOriginal(f)),
        }
    }

    /// `x^n`.
    pub fn x_pow(field: &Field, n: usize) -> Self {
        assert!(n >= 1, "x^0 is not original");
        MonicOriginal(Poly::monomial(field, FieldElem::ONE, n))
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("positive degree")
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn compose(&self, h: &MonicOriginal) -> Result<MonicOriginal> {
        Ok(MonicOriginal(self.0.compose(&h.0)?))
    }
}

impl Deref for MonicOriginal {
    type Target = Poly;

    fn deref(&self) -> &Poly {
        &self.0
    }
}

impl TryFrom<Poly> for MonicOriginal {
    type Error = Error;

    fn try_from(f: Poly) -> Result<Self> {
        MonicOriginal::new(f)
    }
}

impl std::fmt::Display for MonicOriginal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Wraps `f`, rejecting polynomials outside `P_n(F)`.
pub fn make_monic_original(f: Poly) -> Result<MonicOriginal> {
    MonicOriginal::new(f)
}

/// A pair `(g, h)` of nonlinear monic original polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    pub g: MonicOriginal,
    pub h: MonicOriginal,
}

impl Decomposition {
    pub fn new(g: MonicOriginal, h: MonicOriginal) -> Result<Self> {
        if g.degree() < 2 || h.degree() < 2 {
            return Err(Error::DegreeMismatch(
                "components of a decomposition must be nonlinear".into(),
            ));
        }
        if g.field() != h.field() {
            return Err(Error::MixedFields);
        }
        Ok(Decomposition { g, h })
    }

    /// `g ∘ h`.
    pub fn compose(&self) -> MonicOriginal {
        self.g.compose(&self.h).expect("same field")
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) ∘ ({})", self.g, self.h)
    }
}

/// A set of distinct decompositions of one polynomial, all with the same
/// left component degree. Members are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    f: MonicOriginal,
    decomps: Vec<Decomposition>,
}

impl Collision {
    /// Validates every member against `f`; duplicates are merged.
    pub fn new(f: MonicOriginal, decomps: impl IntoIterator<Item = Decomposition>) -> Result<Self> {
        let mut decomps: Vec<Decomposition> = decomps.into_iter().collect();
        decomps.sort();
        decomps.dedup();
        if let Some(first) = decomps.first() {
            let dg = first.g.degree();
            if decomps.iter().any(|d| d.g.degree() != dg) {
                return Err(Error::DegreeMismatch(
                    "left components of a collision differ in degree".into(),
                ));
            }
        }
        for d in &decomps {
            if d.compose() != f {
                return Err(Error::InvalidParams(format!("{d} does not compose to {f}")));
            }
        }
        Ok(Collision { f, decomps })
    }

    pub fn f(&self) -> &MonicOriginal {
        &self.f
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decomps
    }

    /// The `k` in "k-collision".
    pub fn len(&self) -> usize {
        self.decomps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decomps.is_empty()
    }

    pub fn contains(&self, d: &Decomposition) -> bool {
        self.decomps.binary_search(d).is_ok()
    }

    /// The collision of `f^(w)` obtained by shifting every member.
    pub fn shifted(&self, w: FieldElem) -> Collision {
        let f = original_shift(&self.f, w);
        let decomps = self.decomps.iter().map(|d| shift_decomposition(d, w));
        Collision::new(f, decomps).expect("shifting preserves decompositions")
    }
}

/// The unique `g` with `f = g ∘ h`, if any, read off the `h`-adic expansion
/// of `f`: every digit must be a constant, and digit `i` is `g_i`.
pub fn left_divide(f: &MonicOriginal, h: &MonicOriginal) -> Result<Option<MonicOriginal>> {
    if !f.degree().is_multiple_of(h.degree()) {
        return Err(Error::DegreeMismatch(format!(
            "deg h = {} does not divide deg f = {}",
            h.degree(),
            f.degree()
        )));
    }
    let digits = f.taylor_expansion(h)?;
    if digits.iter().any(|d| d.degree().unwrap_or(0) > 0) {
        return Ok(None);
    }
    let coeffs = digits.iter().map(|d| d.coeff(0)).collect();
    Ok(MonicOriginal::new(Poly::new(f.field(), coeffs)).ok())
}

/// The original shift `f^(w) = (x - f(w)) ∘ f ∘ (x + w)`.
pub fn original_shift(f: &MonicOriginal, w: FieldElem) -> MonicOriginal {
    let field = f.field();
    let shifted = f.shift_arg(w);
    let c = Poly::constant(field, f.evaluate(w));
    MonicOriginal::new(&shifted - &c).expect("original shift is monic original")
}

/// `(g^(h(w)), h^(w))`, a decomposition of `(g ∘ h)^(w)`.
pub fn shift_decomposition(d: &Decomposition, w: FieldElem) -> Decomposition {
    let g = original_shift(&d.g, d.h.evaluate(w));
    let h = original_shift(&d.h, w);
    Decomposition { g, h }
}

/// All monic original polynomials of degree `n` over the field, in order of
/// the base-`q` index of `(f_1, ..., f_{n-1})`.
pub fn monic_originals(field: &Field, n: usize) -> impl Iterator<Item = MonicOriginal> + '_ {
    assert!(n >= 1);
    let q = field.order();
    let count = q.pow(n as u32 - 1);
    (0..count).map(move |idx| monic_original_by_index(field, n, idx))
}

/// Inverse of the enumeration order of [`monic_originals`].
pub fn monic_original_by_index(field: &Field, n: usize, mut idx: u64) -> MonicOriginal {
    let q = field.order();
    let mut coeffs = vec![FieldElem::ZERO; n + 1];
    for c in coeffs.iter_mut().take(n).skip(1) {
        *c = FieldElem(idx % q);
        idx /= q;
    }
    coeffs[n] = FieldElem::ONE;
    MonicOriginal(Poly::new(field, coeffs))
}
