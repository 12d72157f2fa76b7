#![allow(dead_code)]

use rand::Rng;
use wildcoll::constructions::{MultiplyParams, SimplyParams};
use wildcoll::decomp::MonicOriginal;
use wildcoll::gf::power_exponent;
use wildcoll::{Field, FieldElem, FieldSpec, Poly};

pub fn field(q: u64) -> Field {
    FieldSpec::of_order(q).unwrap()
}

pub fn elem<R: Rng>(rng: &mut R, field: &Field) -> FieldElem {
    field.elem(rng.gen_range(0..field.order())).unwrap()
}

pub fn nonzero<R: Rng>(rng: &mut R, field: &Field) -> FieldElem {
    field.elem(rng.gen_range(1..field.order())).unwrap()
}

/// Random polynomial of degree exactly `deg`.
pub fn poly<R: Rng>(rng: &mut R, field: &Field, deg: usize) -> Poly {
    let mut coeffs: Vec<FieldElem> = (0..deg).map(|_| elem(rng, field)).collect();
    coeffs.push(nonzero(rng, field));
    Poly::new(field, coeffs)
}

/// Random element of `P_n`.
pub fn monic_original<R: Rng>(rng: &mut R, field: &Field, n: usize) -> MonicOriginal {
    let mut coeffs = vec![FieldElem::ZERO; n + 1];
    for c in coeffs.iter_mut().take(n).skip(1) {
        *c = elem(rng, field);
    }
    coeffs[n] = FieldElem::ONE;
    MonicOriginal::new(Poly::new(field, coeffs)).unwrap()
}

/// Powers `r` of the characteristic with `r <= q`.
pub fn powers_up_to(field: &Field) -> Vec<u64> {
    let p = field.characteristic();
    let mut out = Vec::new();
    let mut r = p;
    while r <= field.order() {
        out.push(r);
        r *= p;
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn random_simply<R: Rng>(rng: &mut R, field: &Field, r: u64) -> SimplyParams {
    let ms = divisors(r - 1);
    let m = ms[rng.gen_range(0..ms.len())];
    let eps = rng.gen_range(0..2u8);
    SimplyParams::new(field, nonzero(rng, field), nonzero(rng, field), eps, m, r).unwrap()
}

/// Valid `m` for the multiply family at `r`.
pub fn multiply_ms(field: &Field, r: u64) -> Vec<u64> {
    let p = field.characteristic();
    (2..r.saturating_sub(1)).filter(|m| m % p != 0).collect()
}

pub fn random_multiply<R: Rng>(rng: &mut R, field: &Field, r: u64) -> MultiplyParams {
    assert!(power_exponent(r, field.characteristic()).is_some());
    let ms = multiply_ms(field, r);
    let m = ms[rng.gen_range(0..ms.len())];
    let b = nonzero(rng, field);
    let br = field.pow(b, r);
    loop {
        let a = nonzero(rng, field);
        if a != br {
            return MultiplyParams::new(field, a, b, m, r).unwrap();
        }
    }
}
