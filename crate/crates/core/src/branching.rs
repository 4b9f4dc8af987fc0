//! Weight multiplicities of irreducible `GL_n(ℂ)` representations.
//!
//! The primary route counts Gelfand–Tsetlin patterns: triangular arrays with
//! top row `λ` whose consecutive rows interlace. The weight of a pattern has
//! `μ_k = |row_k| − |row_{k−1}|`, `row_k` being the row of length `k`.
//! Freudenthal's recursion is kept as an independent second route.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::cohomology::chi_lambda_restricted;
use crate::error::{Error, Result};
use crate::exterior::CharacterMultiset;
use crate::lie::{restrict_to_compact_torus, CompactTorusCharacter};
use crate::rational::Rational;
use crate::weight::LocalWeight;

/// Default cap on `dim 𝓜_λ · dim 𝓜_{λ*}`.
pub const DEFAULT_DIM_SQ_CAP: u64 = 10_000_000;

pub type WeightMultiset = BTreeMap<Vec<i64>, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    #[default]
    GelfandTsetlin,
    Freudenthal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchingOptions {
    pub method: Method,
    pub dim_sq_cap: u64,
}

impl Default for BranchingOptions {
    fn default() -> Self {
        BranchingOptions {
            method: Method::GelfandTsetlin,
            dim_sq_cap: DEFAULT_DIM_SQ_CAP,
        }
    }
}

/// Rows from the top (length `n`) down to length 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        for (k, row) in rows.iter().enumerate() {
            if row.len() != n - k {
                return Err(Error::invalid(format!(
                    "row {k} has length {} (expected {})",
                    row.len(),
                    n - k
                )));
            }
        }
        for k in 1..n {
            let (up, down) = (&rows[k - 1], &rows[k]);
            for i in 0..down.len() {
                if !(up[i] >= down[i] && down[i] >= up[i + 1]) {
                    return Err(Error::invalid(format!(
                        "rows {} and {} do not interlace at position {i}",
                        k - 1,
                        k
                    )));
                }
            }
        }
        Ok(GTPattern { rows })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn weight(&self) -> Vec<i64> {
        let n = self.rows.len();
        let sums: Vec<i64> = self.rows.iter().map(|r| r.iter().sum()).collect();
        // sums[n - k] is the sum of the row of length k
        (1..=n)
            .map(|k| sums[n - k] - if k == 1 { 0 } else { sums[n - k + 1] })
            .collect()
    }
}

fn for_each_interlacing(upper: &[i64], f: &mut dyn FnMut(&[i64])) {
    let len = upper.len() - 1;
    let mut row = vec![0i64; len];
    fn rec(upper: &[i64], row: &mut Vec<i64>, i: usize, f: &mut dyn FnMut(&[i64])) {
        if i == row.len() {
            f(row);
            return;
        }
        for x in upper[i + 1]..=upper[i] {
            row[i] = x;
            rec(upper, row, i + 1, f);
        }
    }
    rec(upper, &mut row, 0, f);
}

/// Visit every pattern with top row `lambda`, in lexicographic order of the
/// rows read top to bottom.
pub fn for_each_pattern(lambda: &LocalWeight, f: &mut dyn FnMut(&GTPattern)) -> Result<()> {
    if !lambda.is_dominant() {
        return Err(Error::invalid(format!("{lambda:?} is not dominant")));
    }
    fn rec(rows: &mut Vec<Vec<i64>>, f: &mut dyn FnMut(&GTPattern)) {
        let last = rows.last().unwrap().clone();
        if last.len() <= 1 {
            f(&GTPattern { rows: rows.clone() });
            return;
        }
        for_each_interlacing(&last, &mut |next| {
            rows.push(next.to_vec());
            rec(rows, f);
            rows.pop();
        });
    }
    if lambda.n() == 0 {
        return Ok(());
    }
    let mut rows = vec![lambda.0.clone()];
    rec(&mut rows, f);
    Ok(())
}

/// Weights of `𝓜_λ` with multiplicities, by Gelfand–Tsetlin counting.
///
/// Memoised on the current row: the weights contributed below a row depend
/// only on that row.
pub fn weight_multiset_gt(lambda: &LocalWeight) -> Result<WeightMultiset> {
    if !lambda.is_dominant() {
        return Err(Error::invalid(format!("{lambda:?} is not dominant")));
    }
    // below(row) = multiset of (μ_1, …, μ_k) for patterns topped by `row`, k = row.len()
    fn below(row: &[i64], memo: &mut HashMap<Vec<i64>, WeightMultiset>) -> WeightMultiset {
        if let Some(m) = memo.get(row) {
            return m.clone();
        }
        let total: i64 = row.iter().sum();
        let mut out = WeightMultiset::new();
        if row.len() == 1 {
            out.insert(vec![total], 1);
        } else {
            let mut children = Vec::new();
            for_each_interlacing(row, &mut |next| children.push(next.to_vec()));
            for child in children {
                let mu_k = total - child.iter().sum::<i64>();
                for (mu, mult) in below(&child, memo) {
                    let mut v = mu;
                    v.push(mu_k);
                    *out.entry(v).or_insert(0) += mult;
                }
            }
        }
        memo.insert(row.to_vec(), out.clone());
        out
    }
    if lambda.n() == 0 {
        return Ok(WeightMultiset::from([(vec![], 1)]));
    }
    Ok(below(&lambda.0, &mut HashMap::new()))
}

/// Number of GT patterns with top row `λ` and weight `μ`.
pub fn weight_multiplicity(lambda: &LocalWeight, mu: &[i64]) -> Result<u64> {
    if mu.len() != lambda.n() {
        return Err(Error::invalid(
            "weight and highest weight have different lengths",
        ));
    }
    let mut count = 0u64;
    for_each_pattern(lambda, &mut |p| {
        if p.weight() == mu {
            count += 1;
        }
    })?;
    Ok(count)
}

/// `∏_{i<j} (λ_i − λ_j + j − i)/(j − i)`.
pub fn weyl_dimension(lambda: &LocalWeight) -> u64 {
    let b = &lambda.0;
    let n = b.len();
    let mut r = Rational::from_integer(1);
    for i in 0..n {
        for j in i + 1..n {
            r *= Rational::new(b[i] - b[j] + (j - i) as i64, (j - i) as i64);
        }
    }
    assert!(r.is_integer());
    r.to_integer().max(0) as u64
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Dominant weights `μ ≤ λ` (same coordinate sum, partial sums bounded by λ's).
fn dominant_weights_below(lambda: &[i64]) -> Vec<Vec<i64>> {
    let n = lambda.len();
    let total: i64 = lambda.iter().sum();
    let prefix: Vec<i64> = lambda
        .iter()
        .scan(0, |s, x| {
            *s += x;
            Some(*s)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        lambda: &[i64],
        prefix: &[i64],
        total: i64,
        cur: &mut Vec<i64>,
        sum: i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        let n = lambda.len();
        let k = cur.len();
        if k == n {
            if sum == total {
                out.push(cur.clone());
            }
            return;
        }
        let hi = if k == 0 {
            lambda[0]
        } else {
            cur[k - 1].min(lambda[0])
        };
        let lo = lambda[n - 1];
        for x in (lo..=hi).rev() {
            if sum + x > prefix[k] {
                continue;
            }
            cur.push(x);
            rec(lambda, prefix, total, cur, sum + x, out);
            cur.pop();
        }
    }
    rec(lambda, &prefix, total, &mut cur, 0, &mut out);
    out
}

/// Multiplicities of the dominant weights of `𝓜_λ` via Freudenthal's formula
/// `((λ+ρ,λ+ρ) − (μ+ρ,μ+ρ))·m(μ) = 2 Σ_{α>0} Σ_{k≥1} (μ+kα, α)·m(μ+kα)`.
pub fn dominant_multiplicities_freudenthal(
    lambda: &LocalWeight,
) -> Result<BTreeMap<Vec<i64>, u64>> {
    if !lambda.is_dominant() {
        return Err(Error::invalid(format!("{lambda:?} is not dominant")));
    }
    let lam = &lambda.0;
    let n = lam.len();
    // 2ρ, so (λ+ρ,λ+ρ) − (μ+ρ,μ+ρ) = (λ−μ, λ+μ+2ρ)
    let two_rho: Vec<i64> = (0..n).map(|i| n as i64 - 1 - 2 * i as i64).collect();
    let mut doms = dominant_weights_below(lam);
    // increasing depth below λ
    let depth = |mu: &[i64]| -> i64 {
        let mut s = 0;
        let mut acc = 0;
        for i in 0..n {
            s += lam[i] - mu[i];
            acc += s;
        }
        acc
    };
    doms.sort_by_key(|m| depth(m));
    let mut mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    let lookup = |mult: &BTreeMap<Vec<i64>, u64>, v: &[i64]| -> u64 {
        mult.get(&sorted_desc(v)).copied().unwrap_or(0)
    };
    for mu in doms {
        if &mu == lam {
            mult.insert(mu, 1);
            continue;
        }
        let diff: Vec<i64> = lam.iter().zip(&mu).map(|(a, b)| a - b).collect();
        let plus: Vec<i64> = (0..n).map(|i| lam[i] + mu[i] + two_rho[i]).collect();
        let denom = dot(&diff, &plus);
        let mut numer = 0i64;
        for i in 0..n {
            for j in i + 1..n {
                let mut k = 1;
                loop {
                    let mut v = mu.clone();
                    v[i] += k;
                    v[j] -= k;
                    let m = lookup(&mult, &v);
                    // beyond the convex hull once the sorted vector escapes λ
                    if m == 0 && v[i] > lam[0] {
                        break;
                    }
                    numer += 2 * (v[i] - v[j]) * m as i64;
                    k += 1;
                    if k > 2 * (lam[0] - lam[n - 1]) + 2 {
                        break;
                    }
                }
            }
        }
        if denom <= 0 || numer % denom != 0 {
            return Err(Error::Contract(format!(
                "Freudenthal recursion produced {numer}/{denom} at {mu:?}"
            )));
        }
        let m = (numer / denom) as u64;
        if m > 0 {
            mult.insert(mu, m);
        }
    }
    Ok(mult)
}

fn distinct_permutations(v: &[i64], f: &mut dyn FnMut(&[i64])) {
    let mut s = v.to_vec();
    s.sort_unstable();
    loop {
        f(&s);
        // next lexicographic permutation
        let Some(i) = (0..s.len().saturating_sub(1))
            .rev()
            .find(|&i| s[i] < s[i + 1])
        else {
            return;
        };
        let j = (i + 1..s.len()).rev().find(|&j| s[j] > s[i]).unwrap();
        s.swap(i, j);
        s[i + 1..].reverse();
    }
}

/// Full weight multiset via Freudenthal on dominant weights and Weyl symmetry.
pub fn weight_multiset_freudenthal(lambda: &LocalWeight) -> Result<WeightMultiset> {
    let dom = dominant_multiplicities_freudenthal(lambda)?;
    let mut out = WeightMultiset::new();
    for (mu, m) in dom {
        distinct_permutations(&mu, &mut |p| {
            out.insert(p.to_vec(), m);
        });
    }
    Ok(out)
}

pub fn weight_multiset(lambda: &LocalWeight, method: Method) -> Result<WeightMultiset> {
    match method {
        Method::GelfandTsetlin => weight_multiset_gt(lambda),
        Method::Freudenthal => weight_multiset_freudenthal(lambda),
    }
}

/// `𝛌 = (λ, λ*)` with `λ* = −w₀(λ) + 𝗐·(1,…,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureWeightPair {
    lambda: LocalWeight,
    lambda_star: LocalWeight,
    w: i64,
}

impl PureWeightPair {
    pub fn new(lambda: LocalWeight, lambda_star: LocalWeight, w: i64) -> Result<Self> {
        let n = lambda.n();
        if n == 0 || lambda_star.n() != n {
            return Err(Error::invalid(
                "λ and λ* must have the same positive length",
            ));
        }
        if !lambda.is_dominant() || !lambda_star.is_dominant() {
            return Err(Error::invalid(format!(
                "pair ({lambda:?}, {lambda_star:?}) is not dominant"
            )));
        }
        for j in 0..n {
            if lambda_star.0[j] + lambda.0[n - 1 - j] != w {
                return Err(Error::invalid(format!(
                    "b*_{} + b_{} = {} ≠ 𝗐 = {w}",
                    j + 1,
                    n - j,
                    lambda_star.0[j] + lambda.0[n - 1 - j]
                )));
            }
        }
        Ok(PureWeightPair {
            lambda,
            lambda_star,
            w,
        })
    }

    /// The pair with `λ* = −w₀(λ) + 𝗐`.
    pub fn from_lambda(lambda: LocalWeight, w: i64) -> Result<Self> {
        let star = lambda.pure_partner(w);
        PureWeightPair::new(lambda, star, w)
    }

    /// Infer `𝗐` from `b*_1 + b_n` and validate.
    pub fn infer(lambda: LocalWeight, lambda_star: LocalWeight) -> Result<Self> {
        let n = lambda.n();
        if n == 0 || lambda_star.n() != n {
            return Err(Error::invalid(
                "λ and λ* must have the same positive length",
            ));
        }
        let w = lambda_star.0[0] + lambda.0[n - 1];
        PureWeightPair::new(lambda, lambda_star, w)
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn lambda(&self) -> &LocalWeight {
        &self.lambda
    }

    pub fn lambda_star(&self) -> &LocalWeight {
        &self.lambda_star
    }

    pub fn w(&self) -> i64 {
        self.w
    }
}

/// Compact-torus characters of `𝓜_λ ⊗ 𝓜_{λ*}` where `g` acts on the second
/// factor through `ḡ`: weight `(μ, ν)` restricts to `z^μ z̄^ν`.
pub fn m_blambda_compact_characters(
    pair: &PureWeightPair,
    opts: &BranchingOptions,
) -> Result<CharacterMultiset> {
    let d1 = weyl_dimension(pair.lambda());
    let d2 = weyl_dimension(pair.lambda_star());
    let prod = d1.saturating_mul(d2);
    if prod > opts.dim_sq_cap {
        return Err(Error::cap(
            format!("dim 𝓜_λ · dim 𝓜_λ* = {d1}·{d2}"),
            opts.dim_sq_cap,
        ));
    }
    let wl = weight_multiset(pair.lambda(), opts.method)?;
    let ws = if pair.lambda_star() == pair.lambda() {
        wl.clone()
    } else {
        weight_multiset(pair.lambda_star(), opts.method)?
    };
    let mut out = CharacterMultiset::new();
    for (mu, a) in &wl {
        for (nu, b) in &ws {
            out.insert(restrict_to_compact_torus(mu, nu), a * b);
        }
    }
    Ok(out)
}

/// `χ¹_𝛌 ⊗ 𝓜¹_𝛌` restricted to the compact torus.
pub fn chi_tensor_m_characters(
    pair: &PureWeightPair,
    opts: &BranchingOptions,
) -> Result<CharacterMultiset> {
    let shift: CompactTorusCharacter = chi_lambda_restricted(pair);
    Ok(m_blambda_compact_characters(pair, opts)?.shift(&shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lw(v: &[i64]) -> LocalWeight {
        LocalWeight::new(v)
    }

    #[test]
    fn standard_representation() {
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(weight_multiplicity(&lw(&[1, 0, 0]), &e).unwrap(), 1);
        }
        assert_eq!(
            weight_multiplicity(&lw(&[1, 0, 0]), &[1, 1, -1]).unwrap(),
            0
        );
    }

    #[test]
    fn sym2_of_c2() {
        let l = lw(&[2, 0]);
        for mu in [[2, 0], [1, 1], [0, 2]] {
            assert_eq!(weight_multiplicity(&l, &mu).unwrap(), 1);
        }
        assert_eq!(weyl_dimension(&l), 3);
        assert_eq!(weight_multiset_gt(&l).unwrap().values().sum::<u64>(), 3);
    }

    #[test]
    fn adjoint_zero_weight() {
        assert_eq!(weight_multiplicity(&lw(&[2, 1, 0]), &[1, 1, 1]).unwrap(), 2);
        assert_eq!(
            weight_multiset_gt(&lw(&[2, 1, 0])).unwrap()[&vec![1, 1, 1]],
            2
        );
        assert_eq!(
            dominant_multiplicities_freudenthal(&lw(&[2, 1, 0])).unwrap()[&vec![1, 1, 1]],
            2
        );
    }

    #[test]
    fn pattern_validation() {
        assert!(GTPattern::new(vec![vec![2, 0], vec![1]]).is_ok());
        assert!(GTPattern::new(vec![vec![2, 0], vec![3]]).is_err());
        assert!(GTPattern::new(vec![vec![2, 0], vec![1, 0]]).is_err());
        let p = GTPattern::new(vec![vec![2, 1, 0], vec![2, 0], vec![1]]).unwrap();
        assert_eq!(p.weight(), vec![1, 1, 1]);
    }

    #[test]
    fn pattern_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_pattern(&lw(&[2, 1, 0]), &mut |p| seen.push(p.rows().to_vec())).unwrap();
        assert_eq!(seen.len(), 8);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
    }

    #[test]
    fn pair_examples_n2() {
        for k in 0..5 {
            let pair = PureWeightPair::from_lambda(lw(&[k, 0]), k).unwrap();
            assert_eq!(pair.lambda_star(), &lw(&[k, 0]));
            let m = m_blambda_compact_characters(&pair, &BranchingOptions::default()).unwrap();
            // weights (a, k−a) ⊗ conj (b, k−b) restrict to 2(a−b)
            let mut expect = CharacterMultiset::new();
            for a in 0..=k {
                for b in 0..=k {
                    expect.insert(CompactTorusCharacter(vec![2 * (a - b)]), 1);
                }
            }
            assert_eq!(m, expect);
            let c = chi_tensor_m_characters(&pair, &BranchingOptions::default()).unwrap();
            assert_eq!(c.multiplicity(&CompactTorusCharacter(vec![2])), 1);
            assert_eq!(c, expect.shift(&CompactTorusCharacter(vec![2 * k + 2])));
        }
    }

    #[test]
    fn rank_one_pair() {
        let pair = PureWeightPair::from_lambda(lw(&[4]), 7).unwrap();
        assert_eq!(pair.lambda_star(), &lw(&[3]));
        let m = m_blambda_compact_characters(&pair, &BranchingOptions::default()).unwrap();
        assert_eq!(
            m,
            CharacterMultiset::singleton(CompactTorusCharacter(vec![]))
        );
    }

    #[test]
    fn dimension_count_n2() {
        let pair = PureWeightPair::from_lambda(lw(&[1, 0]), 1).unwrap();
        let m = m_blambda_compact_characters(&pair, &BranchingOptions::default()).unwrap();
        assert_eq!(m.total(), 4);
    }

    #[test]
    fn cap_enforced() {
        let pair = PureWeightPair::from_lambda(lw(&[6, 3, 0]), 6).unwrap();
        let opts = BranchingOptions {
            dim_sq_cap: 10,
            ..Default::default()
        };
        assert!(matches!(
            m_blambda_compact_characters(&pair, &opts),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn invalid_pairs_rejected() {
        assert!(PureWeightPair::new(lw(&[2, 0]), lw(&[1, 0]), 2).is_err());
        assert!(PureWeightPair::new(lw(&[0, 2]), lw(&[0, 2]), 2).is_err());
        assert!(PureWeightPair::infer(lw(&[3, 1]), lw(&[4, 2])).is_ok());
    }

    fn dominant(n: usize, max: i64) -> impl Strategy<Value = LocalWeight> {
        prop::collection::vec(-max..=max, n).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            LocalWeight(v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn gt_total_is_weyl_dimension(l in (1usize..=4).prop_flat_map(|n| dominant(n, 3))) {
            let m = weight_multiset_gt(&l).unwrap();
            prop_assert_eq!(m.values().sum::<u64>(), weyl_dimension(&l));
        }

        #[test]
        fn multiplicities_are_permutation_invariant(l in (2usize..=4).prop_flat_map(|n| dominant(n, 3))) {
            let m = weight_multiset_gt(&l).unwrap();
            for (mu, mult) in &m {
                let mut rev = mu.clone();
                rev.reverse();
                prop_assert_eq!(m.get(&rev).copied().unwrap_or(0), *mult);
                let mut rot = mu.clone();
                rot.rotate_left(1);
                prop_assert_eq!(m.get(&rot).copied().unwrap_or(0), *mult);
            }
        }

        #[test]
        fn freudenthal_agrees_with_gt(l in (1usize..=4).prop_flat_map(|n| dominant(n, 3))) {
            prop_assert_eq!(weight_multiset_freudenthal(&l).unwrap(), weight_multiset_gt(&l).unwrap());
        }
    }
}
