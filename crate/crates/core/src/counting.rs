//! Closed-form counts of collisions and decomposable polynomials, in exact
//! integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{is_prime, power_exponent};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `num / den`, failing unless the division is exact.
fn exact_div(num: BigInt, den: BigInt, what: &str) -> Result<BigInt> {
    let (quo, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegerResult(format!("{what}: {num} / {den}")));
    }
    Ok(quo)
}

/// Kronecker delta.
pub fn delta(i: u64, j: u64) -> u64 {
    u64::from(i == j)
}

/// Number of positive divisors of `r - 1`.
pub fn tau(r: u64) -> u64 {
    assert!(r >= 2, "tau needs r >= 2");
    let n = r - 1;
    let mut count = 0;
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            count += if i * i == n { 1 } else { 2 };
        }
        i += 1;
    }
    count
}

/// `d` with `q = r^d`.
fn exponent_of(q: u64, r: u64) -> Result<u32> {
    power_exponent(q, r).ok_or(Error::NotAPower { value: q, base: r })
}

/// `gcd(r + 1, q - 1)` for `q = r^d`: `r + 1` when `d` is even, otherwise 1
/// for even `r` and 2 for odd `r`.
pub fn gamma(r: u64, q: u64) -> Result<u64> {
    let d = exponent_of(q, r)?;
    let g = (r + 1).gcd(&(q - 1));
    let by_cases = if d % 2 == 0 {
        r + 1
    } else if r.is_multiple_of(2) {
        1
    } else {
        2
    };
    debug_assert_eq!(g, by_cases);
    Ok(g)
}

/// Number of pairs of parameters `(u, s)` in the normalized S family that
/// give exactly `k` elements of `T`, for `k` in `{2, r + 1}`, excluding
/// the fully symmetric orbit.
pub fn c2_pairs(q: u64, r: u64, k: u64) -> Result<BigInt> {
    let d = exponent_of(q, r)?;
    let (qb, rb) = (big(q), big(r));
    let one = BigInt::one();
    if k == 2 {
        if q % 2 == 1 && d % 2 == 1 {
            // (q-1)(qr - 2q - 2r + 3) / (2(r-1))
            let num = (&qb - &one) * (&qb * &rb - 2 * &qb - 2 * &rb + 3);
            exact_div(num, 2 * (&rb - &one), "c2_pairs")
        } else {
            let num = (&qb - &one).pow(2) * (&rb - 2);
            exact_div(num, 2 * (&rb - &one), "c2_pairs")
        }
    } else if k == r + 1 {
        let den = &rb * (&rb * &rb - &one);
        if d % 2 == 0 {
            exact_div((&qb - &one) * (&qb - &rb * &rb), den, "c2_pairs")
        } else {
            exact_div((&qb - &rb) * (&qb - &one), den, "c2_pairs")
        }
    } else {
        Ok(BigInt::zero())
    }
}

/// Number of S polynomials of degree `r^2` over `F_q` (with all their
/// original shifts) that have a maximal `k`-collision.
pub fn count_simply(q: u64, r: u64, k: u64) -> Result<BigInt> {
    let d = exponent_of(q, r)?;
    let (qb, rb) = (big(q), big(r));
    let one = BigInt::one();
    let orbit = big(tau(r)) * &qb - &qb + &one;
    let out = if k == 2 {
        let num = &orbit * (&qb - &one).pow(2) * (&rb - 2);
        exact_div(num, 2 * (&rb - &one), "count_simply")?
    } else if k == r + 1 {
        let num = &orbit * (&qb - &one) * (&qb - &rb);
        exact_div(num, &rb * (&rb * &rb - &one), "count_simply")?
    } else {
        return Ok(BigInt::zero());
    };
    // the same count assembled from normalized parameter pairs
    let g = gamma(r, q)?;
    let extra = if g == k {
        big((q - 1) / g)
    } else {
        BigInt::zero()
    };
    let assembled = &orbit * (c2_pairs(q, r, k)? + extra);
    if assembled != out {
        return Err(Error::NonIntegerResult(format!(
            "count_simply({q}, {r}, {k}) disagrees with its parameter count (d = {d})"
        )));
    }
    Ok(out)
}

/// Number of M polynomials of degree `r^2` over `F_q`, shifts included:
/// `q(q-1)(q-2)(r - r/p - 2)/4`, and 0 when no valid `m` exists.
pub fn count_multiply(q: u64, r: u64, p: u64) -> Result<BigInt> {
    exponent_of(q, r)?;
    exponent_of(r, p)?;
    let m_choices = r as i64 - (r / p) as i64 - 2;
    if m_choices <= 0 {
        return Ok(BigInt::zero());
    }
    let qb = big(q);
    let num = &qb * (&qb - 1) * (&qb - 2) * BigInt::from(m_choices);
    exact_div(num, big(4), "count_multiply")
}

fn check_field(p: u64, q: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    exponent_of(q, p)
}

/// The collision spectrum at degree `p^2` over `F_q`: `c_k` is the number of
/// polynomials with exactly `k` decompositions. Only `k` in `{1, 2, p + 1}`
/// occur.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub p: u64,
    pub q: u64,
    #[serde(with = "bigint_string")]
    pub c1: BigInt,
    #[serde(with = "bigint_string")]
    pub c2: BigInt,
    /// `c_(p+1)`.
    #[serde(with = "bigint_string")]
    pub c_top: BigInt,
    /// `#D_(p^2)(F_q)`.
    #[serde(with = "bigint_string")]
    pub d_total: BigInt,
}

/// Big integers as decimal strings in serialized documents.
pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

impl Spectrum {
    /// `c_k` for any `k >= 1`.
    pub fn c(&self, k: u64) -> BigInt {
        match k {
            1 => self.c1.clone(),
            2 => self.c2.clone(),
            k if k == self.p + 1 => self.c_top.clone(),
            _ => BigInt::zero(),
        }
    }

    /// The `k` with possibly nonzero `c_k`, ascending.
    pub fn support(&self) -> Vec<u64> {
        vec![1, 2, self.p + 1]
    }

    /// `q^(2p-2)`, the number of pairs `(g, h)`.
    pub fn pairs(&self) -> BigInt {
        big(self.q).pow(2 * self.p as u32 - 2)
    }
}

/// Frobenius part of `c_2`: `q^(p-1) - 1`.
pub fn count_frobenius(p: u64, q: u64) -> Result<BigInt> {
    check_field(p, q)?;
    Ok(big(q).pow(p as u32 - 1) - 1)
}

/// The full spectrum `c_1, c_2, c_(p+1)` and `#D_(p^2)(F_q)`.
pub fn spectrum(p: u64, q: u64) -> Result<Spectrum> {
    check_field(p, q)?;
    let pairs = big(q).pow(2 * p as u32 - 2);
    let c2 = count_frobenius(p, q)? + count_simply(q, p, 2)? + count_multiply(q, p, p)?;
    let c_top = count_simply(q, p, p + 1)?;
    let c1 = &pairs - &c2 * 2u32 - big(p + 1) * &c_top;
    if c1.is_negative() {
        return Err(Error::NonIntegerResult(format!(
            "negative c1 for p={p}, q={q}"
        )));
    }
    let d_total = &pairs - &c2 - big(p) * &c_top;
    debug_assert_eq!(&c1 + &c2 * 2u32 + big(p + 1) * &c_top, pairs);
    if p == 2 {
        debug_assert_eq!(c2, big(q - 1));
        debug_assert_eq!(c_top, big((q - 1) * (q - 2) / 6));
    }
    Ok(Spectrum {
        p,
        q,
        c1,
        c2,
        c_top,
        d_total,
    })
}

/// `#D_(p^2)(F_q)`, the number of decomposable monic original polynomials
/// of degree `p^2`, from its closed form; checked against the spectrum.
pub fn count_decomposable(p: u64, q: u64) -> Result<BigInt> {
    check_field(p, q)?;
    let (qb, pb) = (big(q), big(p));
    let one = BigInt::one();
    let orbit = big(tau(p)) * &qb - &qb + &one;
    let simply = exact_div(
        &orbit * (&qb - &one) * (&qb * &pb - &pb - 2),
        2 * (&pb + &one),
        "count_decomposable",
    )?;
    let multiply = count_multiply(q, p, p)?;
    let out = qb.pow(2 * p as u32 - 2) - qb.pow(p as u32 - 1) + &one - simply - multiply;
    let spec = spectrum(p, q)?;
    if out != spec.d_total {
        return Err(Error::NonIntegerResult(format!(
            "#D for p={p}, q={q}: closed form {out} but spectrum gives {}",
            spec.d_total
        )));
    }
    Ok(out)
}

/// `#D_(p^2)(F_q) / q^(2p-2)`.
pub fn nu(p: u64, q: u64) -> Result<BigRational> {
    let d = count_decomposable(p, q)?;
    Ok(BigRational::new(d, big(q).pow(2 * p as u32 - 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_symbols() {
        assert_eq!((tau(2), tau(3), tau(5), tau(8)), (1, 2, 3, 2));
        assert_eq!(gamma(3, 3).unwrap(), 2);
        assert_eq!(gamma(2, 4).unwrap(), 3);
        assert_eq!(gamma(5, 5).unwrap(), 2);
        assert_eq!(gamma(2, 8).unwrap(), 1);
        assert!(gamma(2, 6).is_err());
    }

    #[test]
    fn pair_counts() {
        assert_eq!(c2_pairs(3, 3, 2).unwrap(), b(0));
        assert_eq!(c2_pairs(9, 3, 2).unwrap(), b(16));
        assert_eq!(c2_pairs(27, 3, 5).unwrap(), b(0));
    }

    #[test]
    fn family_counts() {
        assert_eq!(count_simply(3, 3, 2).unwrap(), b(4));
        assert_eq!(count_simply(4, 2, 3).unwrap(), b(1));
        assert_eq!(count_simply(3, 3, 4).unwrap(), b(0));
        assert_eq!(count_simply(8, 2, 3).unwrap(), b(7));
        assert_eq!(count_multiply(5, 5, 5).unwrap(), b(30));
        assert_eq!(count_multiply(3, 3, 3).unwrap(), b(0));
        assert_eq!(count_multiply(4, 2, 2).unwrap(), b(0));
    }

    #[test]
    fn spectra() {
        let s = spectrum(2, 2).unwrap();
        assert_eq!((s.c1, s.c2, s.c_top, s.d_total), (b(2), b(1), b(0), b(3)));
        let s = spectrum(2, 4).unwrap();
        assert_eq!((s.c1, s.c2, s.c_top), (b(7), b(3), b(1)));
        let s = spectrum(3, 3).unwrap();
        assert_eq!(
            (s.c1, s.c2, s.c_top, s.d_total),
            (b(57), b(12), b(0), b(69))
        );
        let s = spectrum(3, 9).unwrap();
        assert_eq!((s.c2, s.c_top, s.d_total), (b(240), b(20), b(6261)));
        let s = spectrum(5, 5).unwrap();
        assert_eq!((s.c2, s.c_top, s.d_total), (b(720), b(0), b(389905)));
    }

    #[test]
    fn decomposable_counts() {
        assert_eq!(count_decomposable(2, 2).unwrap(), b(3));
        assert_eq!(count_decomposable(2, 8).unwrap(), b(43));
        assert_eq!(count_decomposable(3, 3).unwrap(), b(69));
        assert_eq!(nu(2, 2).unwrap(), BigRational::new(b(3), b(4)));
        assert_eq!(nu(3, 3).unwrap(), BigRational::new(b(23), b(27)));
        for q in [2u64, 4, 8, 16, 32, 1024] {
            let want = BigRational::new(b(2) * b(q as i64).pow(2) + 1, b(3) * b(q as i64).pow(2));
            assert_eq!(nu(2, q).unwrap(), want);
        }
        assert!(matches!(count_decomposable(4, 16), Err(Error::NotPrime(4))));
        assert!(count_decomposable(3, 10).is_err());
    }

    #[test]
    fn closed_forms_are_integral() {
        for p in [2u64, 3, 5, 7] {
            let mut q = p;
            while q <= 6561 {
                spectrum(p, q).unwrap();
                count_decomposable(p, q).unwrap();
                q *= p;
            }
        }
    }
}
