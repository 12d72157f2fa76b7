//! The explicit collision families at degree `r^2`: Frobenius collisions,
//! the subadditive family `S(u, s, eps, m)` and the multiply original family
//! `M(a, b, m)`.

use crate::decomp::{Collision, Decomposition, MonicOriginal};
use crate::error::{Error, Result};
use crate::gf::{power_exponent, Field, FieldElem};
use crate::poly::Poly;

fn check_power_of_p(field: &Field, r: u64) -> Result<u32> {
    power_exponent(r, field.characteristic()).ok_or(Error::NotAPower {
        value: r,
        base: field.characteristic(),
    })
}

/// The Frobenius collision `{(x^r, h), (phi_r(h), x^r)}` of `x^r ∘ h`,
/// where `phi_r` raises every coefficient to the `r`-th power.
pub fn frobenius_collision(h: &MonicOriginal, r: u64) -> Result<Collision> {
    let field = h.field();
    let e = check_power_of_p(field, r)?;
    if h.degree() as u64 != r {
        return Err(Error::DegreeMismatch(format!(
            "deg h = {} but r = {r}",
            h.degree()
        )));
    }
    let xr = MonicOriginal::x_pow(field, r as usize);
    if *h == xr {
        return Err(Error::HEqualsXr);
    }
    let phi_h = MonicOriginal::new(h.frobenius_coeffs(e as u64))?;
    let f = xr.compose(h)?;
    Collision::new(
        f,
        [
            Decomposition::new(xr.clone(), h.clone())?,
            Decomposition::new(phi_h, xr)?,
        ],
    )
}

/// Parameters `(u, s, eps, m)` of `S(u, s, eps, m) = x (x^(l(r+1)) - eps u s^r x^l + u s^(r+1))^m`
/// with `l = (r - 1) / m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplyParams {
    field: Field,
    pub u: FieldElem,
    pub s: FieldElem,
    pub eps: u8,
    pub m: u64,
    pub r: u64,
}

impl SimplyParams {
    pub fn new(field: &Field, u: FieldElem, s: FieldElem, eps: u8, m: u64, r: u64) -> Result<Self> {
        check_power_of_p(field, r)?;
        if u.is_zero() || s.is_zero() {
            return Err(Error::InvalidParams("u and s must be nonzero".into()));
        }
        if eps > 1 {
            return Err(Error::InvalidParams("eps must be 0 or 1".into()));
        }
        if m == 0 || !(r - 1).is_multiple_of(m) {
            return Err(Error::InvalidParams(format!(
                "m = {m} does not divide r - 1 = {}",
                r - 1
            )));
        }
        Ok(SimplyParams {
            field: field.clone(),
            u,
            s,
            eps,
            m,
            r,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `l = (r - 1) / m`.
    pub fn ell(&self) -> u64 {
        (self.r - 1) / self.m
    }

    fn eps_elem(&self) -> FieldElem {
        FieldElem(self.eps as u64)
    }

    /// `y^(r+1) - eps u y + u`, whose roots in `F_q` form `T`.
    pub fn t_polynomial(&self) -> Poly {
        let f = &self.field;
        let mut coeffs = vec![FieldElem::ZERO; self.r as usize + 2];
        coeffs[0] = self.u;
        coeffs[1] = f.neg(f.mul(self.eps_elem(), self.u));
        coeffs[self.r as usize + 1] = FieldElem::ONE;
        Poly::new(f, coeffs)
    }

    /// `S(u, s, eps, m)`, of degree `r^2`.
    pub fn build(&self) -> MonicOriginal {
        let f = &self.field;
        let (r, l) = (self.r as usize, self.ell() as usize);
        let sr = f.pow(self.s, self.r);
        let mut inner = vec![FieldElem::ZERO; l * (r + 1) + 1];
        inner[l * (r + 1)] = FieldElem::ONE;
        inner[l] = f.neg(f.mul(self.eps_elem(), f.mul(self.u, sr)));
        inner[0] = f.mul(self.u, f.mul(sr, self.s));
        let inner = Poly::new(f, inner);
        let out = inner.pow(self.m).shl(1);
        MonicOriginal::new(out).expect("S is monic original")
    }

    /// `T = {t in F_q : t^(r+1) - eps u t + u = 0}`, by evaluation at every
    /// element.
    pub fn root_set(&self) -> Vec<FieldElem> {
        let poly = self.t_polynomial();
        self.field
            .elements()
            .filter(|&t| poly.evaluate(t).is_zero())
            .collect()
    }

    /// The decomposition attached to `t in T`:
    /// `g = x (x^l - u s^r / t)^m`, `h = x (x^l - s t)^m`.
    pub fn decomposition_for(&self, t: FieldElem) -> Result<Decomposition> {
        let f = &self.field;
        let l = self.ell() as usize;
        let sr = f.pow(self.s, self.r);
        let gc = f.neg(f.div(f.mul(self.u, sr), t)?);
        let hc = f.neg(f.mul(self.s, t));
        let comp = |c: FieldElem| {
            let mut v = vec![FieldElem::ZERO; l + 1];
            v[0] = c;
            v[l] = FieldElem::ONE;
            MonicOriginal::new(Poly::new(f, v).pow(self.m).shl(1)).expect("monic original")
        };
        Decomposition::new(comp(gc), comp(hc))
    }

    /// The `#T`-collision of `S(u, s, eps, m)` given by all `t in T`.
    pub fn decompositions(&self) -> Result<Collision> {
        let decomps = self
            .root_set()
            .into_iter()
            .map(|t| self.decomposition_for(t))
            .collect::<Result<Vec<_>>>()?;
        Collision::new(self.build(), decomps)
    }
}

impl std::fmt::Display for SimplyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "u={} s={} eps={} m={} r={}",
            self.u, self.s, self.eps, self.m, self.r
        )
    }
}

/// `S(u, s, eps, m)`.
pub fn build_s(params: &SimplyParams) -> MonicOriginal {
    params.build()
}

/// `T` for the given parameters.
pub fn root_set_t(params: &SimplyParams) -> Vec<FieldElem> {
    params.root_set()
}

/// The collision of `S(u, s, eps, m)` indexed by `T`.
pub fn decompositions_s(params: &SimplyParams) -> Result<Collision> {
    params.decompositions()
}

/// Parameters `(a, b, m)` of the multiply original family, with
/// `a* = b^r - a` and `m* = r - m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplyParams {
    field: Field,
    pub a: FieldElem,
    pub b: FieldElem,
    pub m: u64,
    pub r: u64,
}

/// Components of `M(a, b, m)`.
struct MultiplyParts {
    f: Poly,
    g: Poly,
    h: Poly,
    g_star: Poly,
    h_star: Poly,
    big_h: Poly,
    big_h_star: Poly,
}

impl MultiplyParams {
    pub fn new(field: &Field, a: FieldElem, b: FieldElem, m: u64, r: u64) -> Result<Self> {
        check_power_of_p(field, r)?;
        if r <= 4 {
            return Err(Error::NoValidM(r));
        }
        if b.is_zero() {
            return Err(Error::InvalidParams("b must be nonzero".into()));
        }
        if a.is_zero() || a == field.pow(b, r) {
            return Err(Error::InvalidParams("a must avoid 0 and b^r".into()));
        }
        if m <= 1 || m >= r - 1 || m.is_multiple_of(field.characteristic()) {
            return Err(Error::InvalidParams(format!(
                "need 1 < m < r - 1 and p not dividing m, got m = {m}"
            )));
        }
        Ok(MultiplyParams {
            field: field.clone(),
            a,
            b,
            m,
            r,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn a_star(&self) -> FieldElem {
        self.field.sub(self.field.pow(self.b, self.r), self.a)
    }

    pub fn m_star(&self) -> u64 {
        self.r - self.m
    }

    /// The parameters `(a*, b, m*)`, which describe the same polynomial.
    pub fn conjugate(&self) -> MultiplyParams {
        MultiplyParams {
            field: self.field.clone(),
            a: self.a_star(),
            b: self.b,
            m: self.m_star(),
            r: self.r,
        }
    }

    fn parts(&self) -> MultiplyParts {
        multiply_parts(&self.field, self.a, self.b, self.m, self.r)
    }

    /// `M(a, b, m)` together with its 2-collision `{(g, h), (g*, h*)}`.
    pub fn build(&self) -> Result<(MonicOriginal, Collision)> {
        let parts = self.parts();
        let f = MonicOriginal::new(parts.f)?;
        let d1 = Decomposition::new(MonicOriginal::new(parts.g)?, MonicOriginal::new(parts.h)?)?;
        let d2 = Decomposition::new(
            MonicOriginal::new(parts.g_star)?,
            MonicOriginal::new(parts.h_star)?,
        )?;
        let collision = Collision::new(f.clone(), [d1, d2])?;
        if collision.len() != 2 {
            return Err(Error::InvalidParams("g ∘ h and g* ∘ h* coincide".into()));
        }
        Ok((f, collision))
    }

    /// `M(a, b, m)` without the collision check.
    pub fn polynomial(&self) -> MonicOriginal {
        MonicOriginal::new(self.parts().f).expect("M is monic original")
    }

    /// `H = h / x^(m*)` and `H* = h* / x^m`.
    pub fn cofactors(&self) -> (Poly, Poly) {
        let parts = self.parts();
        (parts.big_h, parts.big_h_star)
    }

    /// `f' = m m* a a* b^(1-r) (x(x-b))^(m m* - 1) H^(m-1) (H*)^(m*-1)`,
    /// checked against the formal derivative of `M(a, b, m)`.
    pub fn derivative_factored(&self) -> Result<Poly> {
        let field = &self.field;
        let parts = self.parts();
        let (m, ms) = (self.m, self.m_star());
        let b_pow = field.inv(field.pow(self.b, self.r - 1))?;
        let c = [field.int((m * ms) as i64), self.a, self.a_star(), b_pow]
            .into_iter()
            .fold(FieldElem::ONE, |acc, x| field.mul(acc, x));
        let x_xb = &Poly::x(field) * &Poly::linear(field, self.b);
        let out =
            &(&x_xb.pow(m * ms - 1) * &parts.big_h.pow(m - 1)) * &parts.big_h_star.pow(ms - 1);
        let out = out.scale(c);
        if out != parts.f.derivative() {
            return Err(Error::InvalidParams(
                "factored derivative disagrees with f'".into(),
            ));
        }
        Ok(out)
    }
}

impl std::fmt::Display for MultiplyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={} b={} m={} r={}", self.a, self.b, self.m, self.r)
    }
}

/// The formulas of the multiply original family for any `1 <= m <= r - 1`.
fn multiply_parts(field: &Field, a: FieldElem, b: FieldElem, m: u64, r: u64) -> MultiplyParts {
    let ms = r - m;
    let br = field.pow(b, r);
    let a_star = field.sub(br, a);
    let br_inv = field.inv(br).expect("b is nonzero");
    let x = Poly::x(field);
    let x_b = Poly::linear(field, b);
    let xr = x.pow(r);

    // H = x^m + a* b^-r ((x-b)^m - x^m), H* = x^m* + a b^-r ((x-b)^m* - x^m*)
    let cofactor = |e: u64, c: FieldElem| {
        let xe = x.pow(e);
        &xe + &(&x_b.pow(e) - &xe).scale(field.mul(c, br_inv))
    };
    let big_h = cofactor(m, a_star);
    let big_h_star = cofactor(ms, a);
    // h = x^r + a* b^-r (x^m* (x-b)^m - x^r), h* likewise with a, m, m* swapped
    let right = |e: u64, c: FieldElem| {
        let t = &x.pow(r - e) * &x_b.pow(e);
        &xr + &(&t - &xr).scale(field.mul(c, br_inv))
    };
    let h = right(m, a_star);
    let h_star = right(ms, a);
    let g = &x.pow(m) * &Poly::linear(field, a).pow(ms);
    let g_star = &x.pow(ms) * &Poly::linear(field, a_star).pow(m);
    let f = &(&(&x * &x_b).pow(m * ms) * &big_h.pow(m)) * &big_h_star.pow(ms);
    MultiplyParts {
        f,
        g,
        h,
        g_star,
        h_star,
        big_h,
        big_h_star,
    }
}

/// `M(a, b, m)` and its collision.
pub fn build_m(params: &MultiplyParams) -> Result<(MonicOriginal, Collision)> {
    params.build()
}

/// The factored derivative of `M(a, b, m)`.
pub fn m_derivative_factored(params: &MultiplyParams) -> Result<Poly> {
    params.derivative_factored()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::original_shift;
    use crate::gf::FieldSpec;
    use crate::poly::parse_poly;

    fn e(n: u64) -> FieldElem {
        FieldElem(n)
    }

    #[test]
    fn frobenius_pairs() {
        let f2 = FieldSpec::prime(2).unwrap();
        let h = MonicOriginal::new(parse_poly(&f2, "x^2+x").unwrap()).unwrap();
        let c = frobenius_collision(&h, 2).unwrap();
        assert_eq!(c.f().to_string(), "x^4+x^2");
        assert_eq!(c.len(), 2);
        assert!(c.f().derivative().is_zero());

        let f4 = FieldSpec::new(2, 2, None).unwrap();
        let h = MonicOriginal::new(parse_poly(&f4, "x^2+2*x").unwrap()).unwrap();
        let c = frobenius_collision(&h, 2).unwrap();
        let phi = parse_poly(&f4, "x^2+3*x").unwrap();
        assert!(c.decompositions().iter().any(|d| *d.g == phi));

        let x2 = MonicOriginal::x_pow(&f2, 2);
        assert_eq!(frobenius_collision(&x2, 2), Err(Error::HEqualsXr));
    }

    #[test]
    fn s_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let params = SimplyParams::new(&f3, e(2), e(1), 0, 2, 3).unwrap();
        assert_eq!(params.build().to_string(), "x^9+x^5+x");
        assert_eq!(params.root_set(), vec![e(1), e(2)]);
        let c = params.decompositions().unwrap();
        assert_eq!(c.len(), 2);
        // t = 1: g = x(x-2)^2, h = x(x-1)^2
        let g1 = parse_poly(&f3, "x^3+2*x^2+x").unwrap();
        let h1 = parse_poly(&f3, "x^3+x^2+x").unwrap();
        let d1 = params.decomposition_for(e(1)).unwrap();
        assert_eq!((d1.g.as_poly(), d1.h.as_poly()), (&g1, &h1));

        let f2 = FieldSpec::prime(2).unwrap();
        let params = SimplyParams::new(&f2, e(1), e(1), 1, 1, 2).unwrap();
        assert_eq!(params.build().to_string(), "x^4+x^2+x");
        assert!(params.root_set().is_empty());
        let c = params.decompositions().unwrap();
        assert!(c.is_empty());
        assert_eq!(c.f().to_string(), "x^4+x^2+x");
    }

    #[test]
    fn s_second_degree() {
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        for eps in 0..=1u8 {
            for m in [1, 2] {
                let params = SimplyParams::new(&f9, e(5), e(7), eps, m, 3).unwrap();
                let l = params.ell() as usize;
                let expect = if eps == 1 { 9 - 3 * l } else { 9 - 3 * l - l };
                assert_eq!(params.build().second_degree(), Ok(Some(expect)));
            }
        }
    }

    #[test]
    fn s_invalid_params() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(SimplyParams::new(&f5, e(0), e(1), 0, 1, 5).is_err());
        assert!(SimplyParams::new(&f5, e(1), e(0), 0, 1, 5).is_err());
        assert!(SimplyParams::new(&f5, e(1), e(1), 2, 1, 5).is_err());
        assert!(SimplyParams::new(&f5, e(1), e(1), 0, 3, 5).is_err());
        assert!(matches!(
            SimplyParams::new(&f5, e(1), e(1), 0, 1, 6),
            Err(Error::NotAPower { .. })
        ));
    }

    #[test]
    fn m_example_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let params = MultiplyParams::new(&f5, e(2), e(1), 2, 5).unwrap();
        let (f, c) = params.build().unwrap();
        assert_eq!(f.degree(), 25);
        let want = |s: &str| parse_poly(&f5, s).unwrap();
        let pairs: Vec<(String, String)> = c
            .decompositions()
            .iter()
            .map(|d| (d.g.to_string(), d.h.to_string()))
            .collect();
        let g = want("x^2").checked_mul(&want("x+3").pow(3)).unwrap();
        let g_star = want("x^3").checked_mul(&want("x+1").pow(2)).unwrap();
        assert!(pairs.contains(&(g.to_string(), "x^5+2*x^4+4*x^3".to_string())));
        assert!(pairs.contains(&(g_star.to_string(), "x^5+4*x^4+x^3+3*x^2".to_string())));
        params.derivative_factored().unwrap();

        // Same polynomial from the conjugate parameters.
        assert_eq!(params.conjugate().polynomial(), f);
        // Shift by b lands on M(-a*, -b, m).
        let twin = MultiplyParams::new(&f5, f5.neg(params.a_star()), f5.neg(e(1)), 2, 5).unwrap();
        assert_eq!(original_shift(&f, e(1)), twin.polynomial());
    }

    #[test]
    fn m_invalid_params() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f4 = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(
            MultiplyParams::new(&f4, e(1), e(1), 2, 4),
            Err(Error::NoValidM(4))
        );
        assert!(MultiplyParams::new(&f5, e(0), e(1), 2, 5).is_err());
        assert!(MultiplyParams::new(&f5, e(1), e(1), 2, 5).is_err());
        assert!(MultiplyParams::new(&f5, e(2), e(0), 2, 5).is_err());
        assert!(MultiplyParams::new(&f5, e(2), e(1), 1, 5).is_err());
        assert!(MultiplyParams::new(&f5, e(2), e(1), 4, 5).is_err());
        assert!(MultiplyParams::new(&f5, e(2), e(1), 5, 25).is_err());
    }

    #[test]
    fn m_with_extreme_m_shifts_into_s() {
        // For m = 1 an original shift of the M formulas is an S polynomial.
        let f5 = FieldSpec::prime(5).unwrap();
        let r = 5;
        for a in 1..5u64 {
            for b in 1..5u64 {
                let (a, b) = (e(a), e(b));
                let br = f5.pow(b, r);
                if a == br {
                    continue;
                }
                let a_star = f5.sub(br, a);
                let b1r = f5.inv(f5.pow(b, r - 1)).unwrap();
                let w = f5.mul(a_star, b1r);
                let c = f5.sub(f5.pow(f5.mul(a, b1r), r), a_star);
                let (u, s, eps) = if c.is_zero() {
                    (f5.neg(f5.mul(f5.mul(a, a_star), b1r)), e(1), 0)
                } else {
                    let s = f5.div(f5.neg(f5.mul(f5.mul(a, a_star), b1r)), c).unwrap();
                    (f5.div(c, f5.pow(s, r)).unwrap(), s, 1)
                };
                let m_poly = MonicOriginal::new(multiply_parts(&f5, a, b, 1, r).f).unwrap();
                let s_poly = SimplyParams::new(&f5, u, s, eps, r - 1, r).unwrap().build();
                assert_eq!(original_shift(&m_poly, w), s_poly);
            }
        }
    }
}
