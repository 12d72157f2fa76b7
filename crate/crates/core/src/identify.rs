//! Recovering construction parameters from a polynomial of degree `r^2`, and
//! classifying collisions at degree `p^2`.

use std::fmt;

use crate::constructions::{frobenius_collision, MultiplyParams, SimplyParams};
use crate::decomp::{
    left_divide, monic_originals, original_shift, Collision, Decomposition, MonicOriginal,
};
use crate::error::{Error, Result};
use crate::gf::{power_exponent, FieldElem};
use crate::poly::Poly;

/// Largest field order for which [`enumerate_decompositions`] falls back to
/// an exhaustive search over right components.
pub const BRUTE_FORCE_MAX_Q: u64 = 81;

/// Output of [`identify_simply`]: `f = S(u, s, eps, m)^(w)` with `k = #T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplyIdentification {
    pub k: usize,
    pub params: SimplyParams,
    pub w: FieldElem,
}

impl fmt::Display for SimplyIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "k={} u={} s={} eps={} m={} w={}",
            self.k, p.u, p.s, p.eps, p.m, self.w
        )
    }
}

/// Output of [`identify_multiply`]: `f = M(a, b, m)^(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplyIdentification {
    pub params: MultiplyParams,
    pub w: FieldElem,
}

impl fmt::Display for MultiplyIdentification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(f, "a={} b={} m={} w={}", p.a, p.b, p.m, self.w)
    }
}

/// Which kind of collision a polynomial of degree `p^2` has.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollisionClass {
    /// `f` lies in `F[x^p]` and is not `x^(p^2)`.
    Frobenius,
    /// An original shift of an S polynomial with `k >= 2`.
    Simply(SimplyIdentification),
    /// An original shift of an M polynomial.
    Multiply(MultiplyIdentification),
    /// At most one decomposition.
    None,
}

impl CollisionClass {
    /// Short tag: `F`, `S`, `M` or `None`.
    pub fn tag(&self) -> &'static str {
        match self {
            CollisionClass::Frobenius => "F",
            CollisionClass::Simply(_) => "S",
            CollisionClass::Multiply(_) => "M",
            CollisionClass::None => "None",
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, CollisionClass::None)
    }
}

impl fmt::Display for CollisionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CollisionClass::Frobenius => write!(f, "F"),
            CollisionClass::Simply(id) => write!(f, "S {id}"),
            CollisionClass::Multiply(id) => write!(f, "M {id}"),
            CollisionClass::None => write!(f, "no 2-collision"),
        }
    }
}

fn check_degree(f: &MonicOriginal, r: u64) -> Result<()> {
    let p = f.field().characteristic();
    if power_exponent(r, p).is_none() {
        return Err(Error::NotAPower { value: r, base: p });
    }
    if f.degree() as u64 != r * r {
        return Err(Error::DegreeMismatch(format!(
            "deg f = {} but r^2 = {}",
            f.degree(),
            r * r
        )));
    }
    Ok(())
}

/// Finds `(k, u, s, eps, m, w)` with `f = S(u, s, eps, m)^(w)` and `k = #T`.
/// The parameters are read off the second degree and two or three
/// coefficients of `f`, then confirmed by rebuilding `f`.
pub fn identify_simply(f: &MonicOriginal, r: u64) -> Result<Option<SimplyIdentification>> {
    check_degree(f, r)?;
    let field = f.field();
    let Some(d2) = f.second_degree()? else {
        return Ok(None);
    };
    let n = r * r;
    let d2 = d2 as u64;
    let div = |a: u64, b: u64| (b != 0 && a.is_multiple_of(b)).then(|| a / b);

    let (eps, l) = if d2.is_multiple_of(r) {
        (1u8, div(n - d2, r))
    } else {
        (0u8, div(n - d2, r + 1))
    };
    let Some(l) = l else { return Ok(None) };
    let Some(m) = div(r - 1, l) else {
        return Ok(None);
    };
    let l_elem = field.int(l as i64);
    // coefficients at r^2 - l r and r^2 - l r - l
    let top = f.coeff((n - l * r) as usize);
    let low = f.coeff((n - l * r - l) as usize);

    let (u, s) = if eps == 1 {
        let Ok(s) = field.div(field.neg(low), top) else {
            return Ok(None);
        };
        let Ok(u) = field.div(field.mul(l_elem, top), field.pow(s, r)) else {
            return Ok(None);
        };
        (u, s)
    } else {
        (field.neg(field.mul(l_elem, low)), FieldElem::ONE)
    };
    if u.is_zero() || s.is_zero() {
        return Ok(None);
    }

    let w = if m == 1 {
        FieldElem::ZERO
    } else {
        let below = f.coeff((n - l * r - l - 1) as usize);
        match field.div(field.mul(field.int(m as i64), below), low) {
            Ok(w) => w,
            Err(_) => return Ok(None),
        }
    };

    let params = SimplyParams::new(field, u, s, eps, m, r)?;
    if original_shift(&params.build(), w) != *f {
        return Ok(None);
    }
    let k = params.t_polynomial().count_roots_in_field()?;
    Ok(Some(SimplyIdentification { k, params, w }))
}

/// Finds `(a, b, m, w)` with `f = M(a, b, m)^(w)` from the factorization
/// pattern of `f'`, then confirms by rebuilding `f`.
///
/// When `2a = b^r` the quadratic for `a` has a double root; it is accepted
/// here since that `a` does give an M polynomial.
pub fn identify_multiply(f: &MonicOriginal, r: u64) -> Result<Option<MultiplyIdentification>> {
    check_degree(f, r)?;
    if r <= 4 {
        return Ok(None);
    }
    let field = f.field();
    let p = field.characteristic();

    let df = f.derivative();
    let Some(lc_df) = df.lc() else {
        return Ok(None);
    };
    let mut f0 = df.monic();
    if p == 2 {
        match f0.pth_root(1) {
            Some(root) => f0 = root,
            None => return Ok(None),
        }
    }
    let f1 = f0
        .exact_div(&f0.gcd(&f0.derivative())?)?
        .expect("gcd divides");
    let deg_f1 = f1.degree().unwrap_or(0) as u64;
    if deg_f1 < 4 || deg_f1 > r + 2 {
        return Ok(None);
    }
    let mut k = f0.max_power_dividing(&f1)? as u64;
    if p == 2 {
        k *= 2;
    }
    let m = (k + 1).min(r.saturating_sub(k + 1));
    if m < 2 {
        return Ok(None);
    }

    let f2 = if p == 2 || !(m * m + 1).is_multiple_of(p) {
        let hi = f1.pow(r - m).gcd(&f0)?;
        let lo = f1.pow(r - m - 1).gcd(&f0)?;
        match hi.exact_div(&lo)? {
            Some(q) => q,
            None => return Ok(None),
        }
    } else {
        let Some(f3) = f0.exact_div(&f1.pow(r - m - 1).gcd(&f0)?)? else {
            return Ok(None);
        };
        if f3.degree().unwrap_or(0) == 0 {
            return Ok(None);
        }
        let mut e = 0u32;
        while f3.pth_root(e + 1).is_some() {
            e += 1;
        }
        let Some(f3) = f3.pth_root(e) else {
            return Ok(None);
        };
        f3.exact_div(&f3.gcd(&f3.derivative())?)?
            .expect("gcd divides")
    };
    if f2.degree() != Some(2) {
        return Ok(None);
    }
    let Some((x1, x2)) = field.solve_quadratic(f2.coeff(2), f2.coeff(1), f2.coeff(0))? else {
        return Ok(None);
    };
    let b = field.sub(x2, x1);
    let w = field.neg(x1);

    let Ok(m_inv) = field.inv(field.int(m as i64)) else {
        return Ok(None);
    };
    let c0 = field.neg(
        [m_inv, m_inv, field.pow(b, r - 1), lc_df]
            .into_iter()
            .fold(FieldElem::ONE, |acc, x| field.mul(acc, x)),
    );
    let c1 = field.neg(field.pow(b, r));
    let Some((a1, a2)) = field.quadratic_roots(FieldElem::ONE, c1, c0)? else {
        return Ok(None);
    };
    for a in [a1, a2] {
        let Ok(params) = MultiplyParams::new(field, a, b, m, r) else {
            continue;
        };
        if original_shift(&params.polynomial(), w) == *f {
            return Ok(Some(MultiplyIdentification { params, w }));
        }
    }
    Ok(None)
}

/// Classifies `f` of degree `p^2`: Frobenius first, then S with `k >= 2`,
/// then M, otherwise no collision.
pub fn classify(f: &MonicOriginal) -> Result<CollisionClass> {
    let p = f.field().characteristic();
    check_degree(f, p)?;
    if f.derivative().is_zero() {
        return Ok(if *f == MonicOriginal::x_pow(f.field(), (p * p) as usize) {
            CollisionClass::None
        } else {
            CollisionClass::Frobenius
        });
    }
    if let Some(id) = identify_simply(f, p)? {
        if id.k >= 2 {
            return Ok(CollisionClass::Simply(id));
        }
    }
    if let Some(id) = identify_multiply(f, p)? {
        return Ok(CollisionClass::Multiply(id));
    }
    Ok(CollisionClass::None)
}

/// The decompositions of `f` of degree `p^2` together with its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionSet {
    pub class: CollisionClass,
    pub collision: Collision,
    /// False when `f` is unclassified and the field is too large for the
    /// exhaustive search; `collision` is then empty without proof.
    pub complete: bool,
}

/// Every `(g, h)` with `deg g = deg h = p` and `g ∘ h = f`, by trying each
/// monic original `h`. Costs `q^(p-1)` left divisions.
pub fn brute_force_decompositions(f: &MonicOriginal) -> Result<Collision> {
    let field = f.field();
    let p = field.characteristic();
    check_degree(f, p)?;
    let mut found = Vec::new();
    for h in monic_originals(field, p as usize) {
        if let Some(g) = left_divide(f, &h)? {
            found.push(Decomposition::new(g, h)?);
        }
    }
    Collision::new(f.clone(), found)
}

/// All decompositions of `f` of degree `p^2`, built from its class. An
/// unclassified `f` has at most one, found by exhaustive search when
/// `q <= 81`.
pub fn enumerate_decompositions(f: &MonicOriginal) -> Result<DecompositionSet> {
    let field = f.field();
    let p = field.characteristic();
    let class = classify(f)?;
    let (collision, complete) = match &class {
        CollisionClass::Frobenius => {
            // f = x^p ∘ h where h takes p-th roots of the coefficients
            let h = MonicOriginal::new(f.pth_root(1).expect("f is in F[x^p]"))?;
            (frobenius_collision(&h, p)?, true)
        }
        CollisionClass::Simply(id) => (id.params.decompositions()?.shifted(id.w), true),
        CollisionClass::Multiply(id) => (id.params.build()?.1.shifted(id.w), true),
        CollisionClass::None if field.order() <= BRUTE_FORCE_MAX_Q => {
            (brute_force_decompositions(f)?, true)
        }
        CollisionClass::None => (Collision::new(f.clone(), [])?, false),
    };
    Ok(DecompositionSet {
        class,
        collision,
        complete,
    })
}

/// `f` as a monic original polynomial, for callers holding a plain [`Poly`].
pub fn as_monic_original(f: &Poly) -> Result<MonicOriginal> {
    MonicOriginal::new(f.clone())
}
