//! Dense multiplication kernels: schoolbook and Karatsuba.

use crate::gf::{FieldElem, FieldSpec};

/// Operand length (in coefficients) at or below which schoolbook is used.
pub const KARATSUBA_THRESHOLD: usize = 32;

pub(crate) fn schoolbook(field: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

fn add_into(field: &FieldSpec, acc: &mut [FieldElem], src: &[FieldElem]) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = field.add(*a, s);
    }
}

fn sub_into(field: &FieldSpec, acc: &mut [FieldElem], src: &[FieldElem]) {
    for (a, &s) in acc.iter_mut().zip(src) {
        *a = field.sub(*a, s);
    }
}

fn sum(field: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(field, &mut out, short);
    out
}

/// Product of two coefficient slices; the result has length
/// `a.len() + b.len() - 1` (not normalized).
pub(crate) fn karatsuba(field: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() <= KARATSUBA_THRESHOLD || b.len() <= KARATSUBA_THRESHOLD {
        return schoolbook(field, a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let mut out = vec![FieldElem::ZERO; a.len() + b.len() - 1];

    if a.len() <= half || b.len() <= half {
        // Unbalanced: split only the longer operand.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let (lo, hi) = long.split_at(half);
        let p0 = karatsuba(field, lo, short);
        let p1 = karatsuba(field, hi, short);
        add_into(field, &mut out[..p0.len()], &p0);
        add_into(field, &mut out[half..half + p1.len()], &p1);
        return out;
    }

    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let z0 = karatsuba(field, a0, b0);
    let z2 = karatsuba(field, a1, b1);
    let mut z1 = karatsuba(field, &sum(field, a0, a1), &sum(field, b0, b1));
    sub_into(field, &mut z1[..z0.len()], &z0);
    sub_into(field, &mut z1[..z2.len()], &z2);

    add_into(field, &mut out[..z0.len()], &z0);
    add_into(field, &mut out[2 * half..2 * half + z2.len()], &z2);
    let z1_len = z1.len().min(out.len() - half);
    add_into(field, &mut out[half..half + z1_len], &z1[..z1_len]);
    out
}
