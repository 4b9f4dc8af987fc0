//! Compact-torus characters of `∧^q 𝔭¹_c` and `∧^t 𝔲_c`.
//!
//! `𝔭¹_c = 𝔞¹_c ⊕ 𝔲_c` where the torus acts trivially on the `(n−1)`-dimensional
//! `𝔞¹_c` and `𝔲_c` carries one line for each root `±α`. A weight vector of
//! `∧^q 𝔭¹_c` is therefore indexed by subsets `A, B ⊆ Φ⁺` and an `r`-subset of
//! a basis of `𝔞¹_c`, with `q = |A| + |B| + r`; its character is
//! `Σ_A α − Σ_B β`.
//!
//! Subsets of `Φ⁺` are bitmasks over [`RootSystem::positive_roots`].

use std::collections::{BTreeMap, HashMap};

use num_integer::binomial;
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::{CompactTorusCharacter, RootSystem};

/// Upper bound on `|Φ⁺|` for the `(A, B)` pair enumeration (`4^R` pairs).
pub const MAX_ROOTS_FOR_PAIRS: usize = 10;

/// Finite multiset of compact-torus characters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharacterMultiset {
    entries: BTreeMap<CompactTorusCharacter, u64>,
}

impl CharacterMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(ch: CompactTorusCharacter) -> Self {
        let mut m = Self::new();
        m.insert(ch, 1);
        m
    }

    pub fn insert(&mut self, ch: CompactTorusCharacter, mult: u64) {
        if mult > 0 {
            *self.entries.entry(ch).or_insert(0) += mult;
        }
    }

    pub fn merge(&mut self, other: CharacterMultiset) {
        for (k, v) in other.entries {
            self.insert(k, v);
        }
    }

    pub fn multiplicity(&self, ch: &CompactTorusCharacter) -> u64 {
        self.entries.get(ch).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Number of distinct characters.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CompactTorusCharacter, u64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn characters(&self) -> impl Iterator<Item = &CompactTorusCharacter> {
        self.entries.keys()
    }

    /// Translate every character by `by`.
    pub fn shift(&self, by: &CompactTorusCharacter) -> Self {
        CharacterMultiset {
            entries: self.entries.iter().map(|(k, &v)| (k.add(by), v)).collect(),
        }
    }

    pub fn negate(&self) -> Self {
        CharacterMultiset {
            entries: self.entries.iter().map(|(k, &v)| (k.neg(), v)).collect(),
        }
    }

    /// `dim Hom` over the torus: `Σ_χ mult_self(χ)·mult_other(χ)`.
    pub fn pairing(&self, other: &Self) -> u64 {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.iter().map(|(k, v)| v * large.multiplicity(k)).sum()
    }

    /// Characters present in both, with the multiplicity on each side.
    pub fn common(&self, other: &Self) -> Vec<(CompactTorusCharacter, u64, u64)> {
        self.iter()
            .filter_map(|(k, v)| {
                let w = other.multiplicity(k);
                (w > 0).then(|| (k.clone(), v, w))
            })
            .collect()
    }
}

impl FromIterator<(CompactTorusCharacter, u64)> for CharacterMultiset {
    fn from_iter<I: IntoIterator<Item = (CompactTorusCharacter, u64)>>(iter: I) -> Self {
        let mut m = CharacterMultiset::new();
        for (k, v) in iter {
            m.insert(k, v);
        }
        m
    }
}

#[derive(Serialize)]
struct Entry<'a> {
    m: &'a [i64],
    mult: u64,
}

impl Serialize for CharacterMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (k, &mult) in &self.entries {
            seq.serialize_element(&Entry {
                m: k.as_slice(),
                mult,
            })?;
        }
        seq.end()
    }
}

fn check_pair_budget(n: usize) -> Result<RootSystem> {
    let rs = RootSystem::type_a(n);
    if rs.num_positive() > MAX_ROOTS_FOR_PAIRS {
        return Err(Error::cap(
            format!(
                "subset-pair enumeration for n = {n} (4^{} pairs)",
                rs.num_positive()
            ),
            1u64 << (2 * MAX_ROOTS_FOR_PAIRS),
        ));
    }
    Ok(rs)
}

/// Characters of `∧^t 𝔲_c` for every `t ∈ 0..=n(n−1)`.
pub fn wedge_u_all(n: usize) -> Result<Vec<CharacterMultiset>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let rs = check_pair_budget(n)?;
    let r = rs.num_positive();
    let dim = n.saturating_sub(1);
    let roots: Vec<CompactTorusCharacter> = rs
        .positive_roots()
        .iter()
        .map(|&a| rs.root_character(a))
        .collect();

    // Σ_{α ∈ A} α for every mask A.
    let mut sums = vec![vec![0i64; dim]; 1 << r];
    for mask in 1usize..(1 << r) {
        let low = mask.trailing_zeros() as usize;
        let prev = mask & (mask - 1);
        let mut v = sums[prev].clone();
        for (x, y) in v.iter_mut().zip(roots[low].as_slice()) {
            *x += y;
        }
        sums[mask] = v;
    }

    let degrees = 2 * r + 1;
    let partial = (0usize..(1 << r))
        .into_par_iter()
        .fold(
            || vec![HashMap::<Vec<i64>, u64>::new(); degrees],
            |mut acc, a| {
                let sa = &sums[a];
                let ka = a.count_ones() as usize;
                for (b, sb) in sums.iter().enumerate() {
                    let key: Vec<i64> = sa.iter().zip(sb).map(|(x, y)| x - y).collect();
                    *acc[ka + b.count_ones() as usize].entry(key).or_insert(0) += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![HashMap::new(); degrees],
            |mut a, b| {
                for (da, db) in a.iter_mut().zip(b) {
                    for (k, v) in db {
                        *da.entry(k).or_insert(0) += v;
                    }
                }
                a
            },
        );

    Ok(partial
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|(k, v)| (CompactTorusCharacter(k), v))
                .collect()
        })
        .collect())
}

pub fn wedge_u_characters(n: usize, t: usize) -> Result<CharacterMultiset> {
    let top = n * n.saturating_sub(1);
    if t > top {
        return Err(Error::invalid(format!("t = {t} exceeds dim 𝔲_c = {top}")));
    }
    Ok(wedge_u_all(n)?.swap_remove(t))
}

/// Characters of `∧^q 𝔭¹_c` for every `q ∈ 0..=n²−1`.
pub fn wedge_p_all(n: usize) -> Result<Vec<CharacterMultiset>> {
    let u = wedge_u_all(n)?;
    let a_dim = n - 1;
    let top = n * n - 1;
    let mut out = vec![CharacterMultiset::new(); top + 1];
    for (t, ut) in u.iter().enumerate() {
        for r in 0..=a_dim {
            let factor = binomial(a_dim as u64, r as u64);
            for (k, v) in ut.iter() {
                out[t + r].insert(k.clone(), v * factor);
            }
        }
    }
    Ok(out)
}

pub fn wedge_p_characters(n: usize, q: usize) -> Result<CharacterMultiset> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let top = n * n - 1;
    if q > top {
        return Err(Error::invalid(format!("q = {q} exceeds dim 𝔭¹_c = {top}")));
    }
    Ok(wedge_p_all(n)?.swap_remove(q))
}

/// Largest `n` the adjoint oracle accepts without an explicit override.
pub const ORACLE_MAX_N: usize = 5;

/// Torus weights of the basis `{E_ij : i ≠ j} ∪ {E_kk − E_{k+1,k+1}}` of
/// `𝔰𝔩_n(ℂ) ≅ 𝔭¹_c`, read off from the commutator action of the diagonal
/// matrix units. Returned as ambient vectors.
pub fn adjoint_basis_weights(n: usize) -> Vec<Vec<i64>> {
    let unit = |i: usize, j: usize| {
        let mut m = vec![vec![0i64; n]; n];
        m[i][j] = 1;
        m
    };
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
        let mut c = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k] != 0 {
                    for j in 0..n {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
        }
        c
    };
    // eigenvalue of ad(E_kk) on the eigenvector x
    let eigenvalue = |k: usize, x: &Vec<Vec<i64>>| -> i64 {
        let h = unit(k, k);
        let (hx, xh) = (mul(&h, x), mul(x, &h));
        let (pi, pj) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| x[i][j] != 0)
            .expect("basis vector is nonzero");
        let bracket = hx[pi][pj] - xh[pi][pj];
        assert_eq!(bracket % x[pi][pj], 0);
        bracket / x[pi][pj]
    };

    let mut basis = Vec::with_capacity(n * n - 1);
    for k in 0..n.saturating_sub(1) {
        let mut h = unit(k, k);
        h[k + 1][k + 1] = -1;
        basis.push(h);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                basis.push(unit(i, j));
            }
        }
    }
    basis
        .iter()
        .map(|x| (0..n).map(|k| eigenvalue(k, x)).collect())
        .collect()
}

/// Exterior powers of a list of ambient torus weights by direct enumeration of
/// all subsets, grouped by subset size and reduced to the compact torus.
pub fn exterior_powers_bruteforce(weights: &[Vec<i64>], n: usize) -> Vec<CharacterMultiset> {
    let d = weights.len();
    assert!(
        d < 40,
        "subset enumeration over {d} vectors is not feasible"
    );
    assert!(weights.iter().all(|w| w.len() == n));
    let reduce = |v: &[i64]| -> Vec<i64> {
        let last = v[n - 1];
        v[..n - 1].iter().map(|x| x - last).collect()
    };
    // split into a parallel prefix over the high bits and a Gray-code sweep
    // over the low bits
    let low_bits = d.min(16);
    let high_bits = d - low_bits;
    let per_prefix = |prefix: usize| -> Vec<HashMap<Vec<i64>, u64>> {
        let mut acc = vec![HashMap::new(); d + 1];
        let mut sum = vec![0i64; n];
        let mut size = 0usize;
        for b in 0..high_bits {
            if prefix >> b & 1 == 1 {
                size += 1;
                for (s, x) in sum.iter_mut().zip(&weights[low_bits + b]) {
                    *s += x;
                }
            }
        }
        let mut in_set = vec![false; low_bits];
        *acc[size].entry(reduce(&sum)).or_insert(0) += 1;
        for step in 1u64..(1u64 << low_bits) {
            let flip = step.trailing_zeros() as usize;
            let sign = if in_set[flip] { -1 } else { 1 };
            in_set[flip] = !in_set[flip];
            if sign > 0 {
                size += 1;
            } else {
                size -= 1;
            }
            for (s, x) in sum.iter_mut().zip(&weights[flip]) {
                *s += sign * x;
            }
            *acc[size].entry(reduce(&sum)).or_insert(0) += 1;
        }
        acc
    };
    let merged = (0usize..(1 << high_bits))
        .into_par_iter()
        .map(per_prefix)
        .reduce(
            || vec![HashMap::new(); d + 1],
            |mut a, b| {
                for (da, db) in a.iter_mut().zip(b) {
                    for (k, v) in db {
                        *da.entry(k).or_insert(0) += v;
                    }
                }
                a
            },
        );
    merged
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|(k, v)| (CompactTorusCharacter(k), v))
                .collect()
        })
        .collect()
}

/// Independent oracle: all exterior powers of the adjoint torus weights.
pub fn adjoint_wedge_oracle_all(n: usize, allow_large: bool) -> Result<Vec<CharacterMultiset>> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > ORACLE_MAX_N && !allow_large {
        return Err(Error::cap(
            format!("adjoint oracle for n = {n} (2^{} subsets)", n * n - 1),
            ORACLE_MAX_N as u64,
        ));
    }
    if n == 1 {
        return Ok(vec![CharacterMultiset::singleton(CompactTorusCharacter(
            vec![],
        ))]);
    }
    Ok(exterior_powers_bruteforce(&adjoint_basis_weights(n), n))
}

pub fn adjoint_wedge_oracle(n: usize, q: usize, allow_large: bool) -> Result<CharacterMultiset> {
    let top = n * n - 1;
    if q > top {
        return Err(Error::invalid(format!("q = {q} exceeds dim 𝔭¹_c = {top}")));
    }
    Ok(adjoint_wedge_oracle_all(n, allow_large)?.swap_remove(q))
}
