//! Exhaustive census of `g ∘ h` over all pairs of monic original polynomials
//! of degree `p`, compared with the closed-form spectrum.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count_frobenius, count_multiply, count_simply, spectrum, Spectrum};
use crate::decomp::{monic_original_by_index, Decomposition, MonicOriginal};
use crate::error::{Error, Result};
use crate::gf::{power_exponent, Field, FieldElem, FieldSpec};
use crate::identify::{enumerate_decompositions, CollisionClass};
use crate::poly::Poly;

/// Largest number of pairs `(g, h)` a census will enumerate.
pub const MAX_PAIRS: u64 = 1 << 24;

/// One disagreement between the census and a prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// The polynomial, or the name of the count, concerned.
    pub f: String,
    pub observed: String,
    pub predicted: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub p: u64,
    pub q: u64,
    /// `q^(2p-2)`.
    pub pairs: u64,
    /// `k` to the number of polynomials with exactly `k` decompositions.
    pub spectrum_observed: BTreeMap<u64, u64>,
    pub spectrum_predicted: Spectrum,
    /// Colliding polynomials by class tag `F`, `S`, `M`.
    pub class_counts: BTreeMap<String, u64>,
    /// S-class polynomials by collision size.
    pub simply_by_k: BTreeMap<u64, u64>,
    pub decomposable_observed: u64,
    pub mismatches: Vec<Mismatch>,
}

/// Coefficients `1..p^2` of `g ∘ h` packed in base `q`.
type Key = u128;

struct Composer {
    field: Field,
    p: usize,
    n_monic: u64,
}

impl Composer {
    /// `h^0, ..., h^p` as coefficient vectors.
    fn powers(&self, h_idx: u64) -> Vec<Vec<FieldElem>> {
        let h = monic_original_by_index(&self.field, self.p, h_idx).into_poly();
        let mut out = vec![Poly::one(&self.field)];
        for i in 1..=self.p {
            out.push(&out[i - 1] * &h);
        }
        out.into_iter().map(Poly::into_coeffs).collect()
    }

    fn key(&self, g_idx: u64, powers: &[Vec<FieldElem>]) -> Key {
        let field = &self.field;
        let n = self.p * self.p;
        let mut acc = powers[self.p].clone();
        let mut idx = g_idx;
        for power in &powers[1..self.p] {
            let c = FieldElem(idx % field.order());
            idx /= field.order();
            if c.is_zero() {
                continue;
            }
            for (a, &b) in acc.iter_mut().zip(power) {
                *a = field.add(*a, field.mul(c, b));
            }
        }
        let q = field.order() as Key;
        acc[1..n]
            .iter()
            .rev()
            .fold(0, |k, c| k * q + c.encoding() as Key)
    }

    fn pack(&self, f: &MonicOriginal) -> Key {
        let q = self.field.order() as Key;
        let n = self.p * self.p;
        (1..n)
            .rev()
            .fold(0, |k, i| k * q + f.coeff(i).encoding() as Key)
    }

    fn unpack(&self, mut key: Key) -> MonicOriginal {
        let n = self.p * self.p;
        let q = self.field.order() as Key;
        let mut coeffs = vec![FieldElem::ZERO; n + 1];
        for c in coeffs.iter_mut().take(n).skip(1) {
            *c = FieldElem((key % q) as u64);
            key /= q;
        }
        coeffs[n] = FieldElem::ONE;
        MonicOriginal::new(Poly::new(&self.field, coeffs)).expect("monic original")
    }

    fn decomposition(&self, pair: u32) -> Decomposition {
        let (g_idx, h_idx) = (pair as u64 / self.n_monic, pair as u64 % self.n_monic);
        Decomposition {
            g: monic_original_by_index(&self.field, self.p, g_idx),
            h: monic_original_by_index(&self.field, self.p, h_idx),
        }
    }
}

/// What one colliding or decomposable polynomial contributed.
#[derive(Default)]
struct Tally {
    spectrum: BTreeMap<u64, u64>,
    classes: BTreeMap<String, u64>,
    simply_by_k: BTreeMap<u64, u64>,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.spectrum {
            *self.spectrum.entry(k).or_default() += v;
        }
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        for (k, v) in other.simply_by_k {
            *self.simply_by_k.entry(k).or_default() += v;
        }
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn examine(composer: &Composer, key: Key, pairs: &[u32]) -> Result<Tally> {
    let f = composer.unpack(key);
    let k = pairs.len() as u64;
    let mut tally = Tally::default();
    tally.spectrum.insert(k, 1);
    let mismatch = |observed: String, predicted: String| Mismatch {
        f: f.to_string(),
        observed,
        predicted,
    };

    if k == 1 {
        let class = crate::identify::classify(&f)?;
        if !class.is_none() {
            tally
                .mismatches
                .push(mismatch("1 decomposition".into(), format!("class {class}")));
        }
        return Ok(tally);
    }

    let set = enumerate_decompositions(&f)?;
    *tally
        .classes
        .entry(set.class.tag().to_string())
        .or_default() += 1;
    let expected = match &set.class {
        CollisionClass::Frobenius | CollisionClass::Multiply(_) => Some(2),
        CollisionClass::Simply(id) => {
            *tally.simply_by_k.entry(id.k as u64).or_default() += 1;
            Some(id.k as u64)
        }
        CollisionClass::None => None,
    };
    if expected != Some(k) {
        tally.mismatches.push(mismatch(
            format!("{k} decompositions"),
            format!("class {} with {expected:?}", set.class),
        ));
        return Ok(tally);
    }
    let frobenius = matches!(set.class, CollisionClass::Frobenius);
    if frobenius != f.derivative().is_zero() {
        tally.mismatches.push(mismatch(
            format!("f' = 0 is {}", !frobenius),
            format!("class {}", set.class),
        ));
    }
    let observed: BTreeSet<Decomposition> = pairs
        .iter()
        .map(|&pair| composer.decomposition(pair))
        .collect();
    let listed: BTreeSet<Decomposition> = set.collision.decompositions().iter().cloned().collect();
    if observed != listed {
        tally
            .mismatches
            .push(mismatch(format!("{observed:?}"), format!("{listed:?}")));
    }
    Ok(tally)
}

/// Every decomposable `f` of degree `p^2` over `F_q` with its full set of
/// decompositions, found by composing all pairs in `P_p(F_q)^2`.
pub struct CensusTable {
    composer: Composer,
    /// `(packed f, pair index g_idx * q^(p-1) + h_idx)`, sorted.
    table: Vec<(Key, u32)>,
    /// Ranges of `table` sharing one `f`.
    groups: Vec<(usize, usize)>,
    pairs: u64,
}

impl CensusTable {
    /// Fails with `TooLarge` beyond [`MAX_PAIRS`] pairs.
    pub fn build(p: u64, q: u64) -> Result<Self> {
        let d = power_exponent(q, p).ok_or(Error::NotAPower { value: q, base: p })?;
        let field = FieldSpec::new(p, d, None)?;
        let n_monic = q
            .checked_pow(p as u32 - 1)
            .ok_or_else(|| Error::TooLarge(format!("q^(p-1) for p={p}, q={q}")))?;
        let pairs = n_monic
            .checked_mul(n_monic)
            .filter(|&n| n <= MAX_PAIRS)
            .ok_or_else(|| Error::TooLarge(format!("census over F_{q} at degree {}", p * p)))?;
        let composer = Composer {
            field,
            p: p as usize,
            n_monic,
        };

        let mut table: Vec<(Key, u32)> = (0..n_monic)
            .into_par_iter()
            .flat_map_iter(|h_idx| {
                let powers = composer.powers(h_idx);
                let composer = &composer;
                (0..n_monic).map(move |g_idx| {
                    (
                        composer.key(g_idx, &powers),
                        (g_idx * n_monic + h_idx) as u32,
                    )
                })
            })
            .collect();
        table.par_sort_unstable();

        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=table.len() {
            if i == table.len() || table[i].0 != table[start].0 {
                groups.push((start, i));
                start = i;
            }
        }
        Ok(CensusTable {
            composer,
            table,
            groups,
            pairs,
        })
    }

    pub fn field(&self) -> &Field {
        &self.composer.field
    }

    /// `q^(2p-2)`.
    pub fn pairs(&self) -> u64 {
        self.pairs
    }

    /// Number of decomposable polynomials.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Whether `f` (of degree `p^2` over the same field) is decomposable.
    pub fn contains(&self, f: &MonicOriginal) -> bool {
        let key = self.composer.pack(f);
        self.table.binary_search_by(|&(k, _)| k.cmp(&key)).is_ok()
    }

    /// The `i`-th decomposable polynomial and its decompositions.
    pub fn group(&self, i: usize) -> (MonicOriginal, Vec<Decomposition>) {
        let (lo, hi) = self.groups[i];
        let f = self.composer.unpack(self.table[lo].0);
        let decomps = self.table[lo..hi]
            .iter()
            .map(|&(_, pair)| self.composer.decomposition(pair))
            .collect();
        (f, decomps)
    }

    /// All groups, in parallel.
    pub fn par_groups(
        &self,
    ) -> impl ParallelIterator<Item = (MonicOriginal, Vec<Decomposition>)> + '_ {
        (0..self.len()).into_par_iter().map(|i| self.group(i))
    }
}

/// Composes every pair in `P_p(F_q)^2`, groups by result and checks the
/// classification of each decomposable polynomial and the spectrum.
pub fn run_census(p: u64, q: u64) -> Result<CensusReport> {
    let census = CensusTable::build(p, q)?;
    let pair_ids: Vec<u32> = census.table.iter().map(|&(_, pair)| pair).collect();
    let tally = census
        .groups
        .par_iter()
        .map(|&(lo, hi)| examine(&census.composer, census.table[lo].0, &pair_ids[lo..hi]))
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let (pairs, groups) = (census.pairs, &census.groups);

    let predicted = spectrum(p, q)?;
    let mut mismatches = tally.mismatches;
    mismatches.sort_by(|a, b| a.f.cmp(&b.f));
    let ks: BTreeSet<u64> = tally
        .spectrum
        .keys()
        .copied()
        .chain(predicted.support())
        .collect();
    for k in ks {
        let observed = tally.spectrum.get(&k).copied().unwrap_or(0);
        if num_bigint::BigInt::from(observed) != predicted.c(k) {
            mismatches.push(Mismatch {
                f: format!("c_{k}"),
                observed: observed.to_string(),
                predicted: predicted.c(k).to_string(),
            });
        }
    }
    let decomposable_observed = groups.len() as u64;
    if num_bigint::BigInt::from(decomposable_observed) != predicted.d_total {
        mismatches.push(Mismatch {
            f: "#D".into(),
            observed: decomposable_observed.to_string(),
            predicted: predicted.d_total.to_string(),
        });
    }
    let mut class_counts = tally.classes;
    for tag in ["F", "S", "M"] {
        class_counts.entry(tag.to_string()).or_default();
    }
    Ok(CensusReport {
        p,
        q,
        pairs,
        spectrum_observed: tally.spectrum,
        spectrum_predicted: predicted,
        class_counts,
        simply_by_k: tally.simply_by_k,
        decomposable_observed,
        mismatches,
    })
}

/// True when the report records no mismatches, its tallies are internally
/// consistent and its prediction is the closed-form spectrum.
pub fn verify(report: &CensusReport) -> bool {
    let weighted: u64 = report.spectrum_observed.iter().map(|(k, c)| k * c).sum();
    let total: u64 = report.spectrum_observed.values().sum();
    let fresh = spectrum(report.p, report.q).ok();
    report.mismatches.is_empty()
        && weighted == report.pairs
        && total == report.decomposable_observed
        && fresh.as_ref() == Some(&report.spectrum_predicted)
        && fresh.is_some_and(|s| {
            s.support().into_iter().all(|k| {
                num_bigint::BigInt::from(report.spectrum_observed.get(&k).copied().unwrap_or(0))
                    == s.c(k)
            })
        })
}

/// True when the class counts match the Frobenius, S and M closed forms.
pub fn class_partition_check(report: &CensusReport) -> bool {
    let (p, q) = (report.p, report.q);
    let count =
        |tag: &str| num_bigint::BigInt::from(report.class_counts.get(tag).copied().unwrap_or(0));
    let simply =
        |k: u64| num_bigint::BigInt::from(report.simply_by_k.get(&k).copied().unwrap_or(0));
    let (Ok(frob), Ok(s2), Ok(s_top), Ok(mult)) = (
        count_frobenius(p, q),
        count_simply(q, p, 2),
        count_simply(q, p, p + 1),
        count_multiply(q, p, p),
    ) else {
        return false;
    };
    count("F") == frob
        && simply(2) == s2
        && simply(p + 1) == s_top
        && count("S") == s2 + s_top
        && count("M") == mult
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_keys_match_composition() {
        let f3 = FieldSpec::new(3, 2, None).unwrap();
        let composer = Composer {
            field: f3.clone(),
            p: 3,
            n_monic: 81,
        };
        for h_idx in [0u64, 7, 80] {
            let powers = composer.powers(h_idx);
            for g_idx in [0u64, 13, 44] {
                let g = monic_original_by_index(&f3, 3, g_idx);
                let h = monic_original_by_index(&f3, 3, h_idx);
                let key = composer.key(g_idx, &powers);
                assert_eq!(composer.unpack(key), g.compose(&h).unwrap());
                let d = composer.decomposition((g_idx * 81 + h_idx) as u32);
                assert_eq!((d.g, d.h), (g, h));
            }
        }
    }

    #[test]
    fn small_censuses() {
        let r = run_census(2, 2).unwrap();
        assert!(verify(&r), "{r:?}");
        assert_eq!(r.spectrum_observed, BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(r.class_counts["F"], 1);
        assert!(class_partition_check(&r));

        let r = run_census(3, 3).unwrap();
        assert!(verify(&r), "{:?}", r.mismatches);
        assert_eq!(
            (
                r.class_counts["F"],
                r.class_counts["S"],
                r.class_counts["M"]
            ),
            (8, 4, 0)
        );
        assert_eq!(r.decomposable_observed, 69);
        assert!(class_partition_check(&r));

        let mut bad = r.clone();
        *bad.spectrum_observed.get_mut(&2).unwrap() += 1;
        assert!(!verify(&bad));
        let mut bad = r;
        bad.class_counts.insert("F".into(), 7);
        assert!(!class_partition_check(&bad));
    }

    #[test]
    fn report_survives_json() {
        let r = run_census(2, 4).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"d_total\":\"11\""));
        let back: CensusReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(verify(&back));
    }

    #[test]
    fn guard_rejects_large_fields() {
        assert!(matches!(run_census(3, 81), Err(Error::TooLarge(_))));
        assert!(matches!(run_census(7, 7), Err(Error::TooLarge(_))));
        assert!(run_census(2, 6).is_err());
    }
}
