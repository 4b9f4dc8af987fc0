//! Relative Lie algebra cohomology of `𝕁¹_𝛌 ⊗ 𝓜¹_𝛌` for `SL_n(ℂ)` and the
//! Lefschetz number of the duality involution, at one complex place and
//! assembled over all of them.
//!
//! `c` denotes the homothety scalar of the canonical `K`-type. It is known to
//! be nonzero but has no fixed value, so Lefschetz numbers are kept as
//! `coeff · c^power`.

use std::collections::BTreeMap;

use num_integer::binomial;
use serde::Serialize;

use crate::branching::{chi_tensor_m_characters, BranchingOptions, PureWeightPair};
use crate::error::{Error, Result};
use crate::exterior::{wedge_u_all, CharacterMultiset};
use crate::galois::FieldDatum;
use crate::lie::{neg_w0, two_rho, CompactTorusCharacter};
use crate::rational::{self, Rational};
use crate::weight::Weight;

/// Largest `n` accepted by the brute-force cohomology routines.
pub const BRUTEFORCE_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CuspidalParameters {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub alpha: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub beta: Vec<Rational>,
}

/// `α_j = −b_{n−j+1} + (n−2j+1)/2`, `β_j = −b*_j − (n−2j+1)/2`.
pub fn cuspidal_parameters(pair: &PureWeightPair) -> Result<CuspidalParameters> {
    let n = pair.n();
    let b = pair.lambda().as_slice();
    let bs = pair.lambda_star().as_slice();
    let rho = |j: usize| Rational::new(n as i64 - 2 * j as i64 + 1, 2);
    let alpha: Vec<Rational> = (1..=n)
        .map(|j| Rational::from_integer(-b[n - j]) + rho(j))
        .collect();
    let beta: Vec<Rational> = (1..=n)
        .map(|j| Rational::from_integer(-bs[j - 1]) - rho(j))
        .collect();
    let target = Rational::from_integer(-pair.w());
    if let Some(j) = (0..n).find(|&j| alpha[j] + beta[j] != target) {
        return Err(Error::Contract(format!(
            "α_{0} + β_{0} = {1} but −𝗐 = {2}",
            j + 1,
            rational::to_string(&(alpha[j] + beta[j])),
            -pair.w()
        )));
    }
    Ok(CuspidalParameters { alpha, beta })
}

/// `χ¹_𝛌` on the compact torus: `m_j = 2(b_1 − b_{n−j+1} + n − j)`.
pub fn chi_lambda_restricted(pair: &PureWeightPair) -> CompactTorusCharacter {
    let n = pair.n();
    let b = pair.lambda().as_slice();
    CompactTorusCharacter(
        (1..n)
            .map(|j| 2 * (b[0] - b[n - j] + (n - j) as i64))
            .collect(),
    )
}

/// `χ₀ = 2ρ`.
pub fn canonical_character(n: usize) -> CompactTorusCharacter {
    two_rho(n).compact
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniqueCharacterReport {
    pub character: CompactTorusCharacter,
    pub degree: usize,
    pub mult_in_u: u64,
    pub mult_in_chi_m: u64,
}

/// Every character shared by `∧^t 𝔲_c` and `χ¹_𝛌 ⊗ 𝓜¹_𝛌`, with `t`.
pub fn common_characters(
    chi_m: &CharacterMultiset,
    wedge_u: &[CharacterMultiset],
) -> Vec<(usize, CompactTorusCharacter, u64, u64)> {
    wedge_u
        .iter()
        .enumerate()
        .flat_map(|(t, wu)| {
            wu.common(chi_m)
                .into_iter()
                .map(move |(ch, a, b)| (t, ch, a, b))
        })
        .collect()
}

/// Check that the only character shared by some `∧^t 𝔲_c` and
/// `χ¹_𝛌 ⊗ 𝓜¹_𝛌` is `2ρ`, in degree `t = n(n−1)/2`, with multiplicity one on
/// both sides.
pub fn verify_unique_character(
    pair: &PureWeightPair,
    opts: &BranchingOptions,
) -> Result<UniqueCharacterReport> {
    let wu = wedge_u_all(pair.n())?;
    verify_unique_character_with(pair, &wu, opts)
}

/// As [`verify_unique_character`] with precomputed `∧^• 𝔲_c`.
pub fn verify_unique_character_with(
    pair: &PureWeightPair,
    wedge_u: &[CharacterMultiset],
    opts: &BranchingOptions,
) -> Result<UniqueCharacterReport> {
    let n = pair.n();
    if wedge_u.len() != n * (n - 1) + 1 {
        return Err(Error::invalid(format!(
            "expected {} exterior powers of 𝔲_c, got {}",
            n * (n - 1) + 1,
            wedge_u.len()
        )));
    }
    let chi_m = chi_tensor_m_characters(pair, opts)?;
    let common = common_characters(&chi_m, wedge_u);
    let expected = canonical_character(n);
    let top = n * (n - 1) / 2;
    match common.as_slice() {
        [(t, ch, a, b)] if *t == top && *ch == expected && *a == 1 && *b == 1 => {
            Ok(UniqueCharacterReport {
                character: ch.clone(),
                degree: *t,
                mult_in_u: *a,
                mult_in_chi_m: *b,
            })
        }
        _ => {
            let found: Vec<String> = common
                .iter()
                .map(|(t, ch, a, b)| format!("t={t} {ch:?} ({a},{b})"))
                .collect();
            Err(Error::Contract(format!(
                "expected only {expected:?} at t={top} with multiplicities (1,1) for λ={:?}, λ*={:?}; found [{}]",
                pair.lambda().as_slice(),
                pair.lambda_star().as_slice(),
                found.join(", ")
            )))
        }
    }
}

/// Coefficients `degree ↦ value`, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct PoincarePolynomial {
    coefficients: BTreeMap<usize, u64>,
}

impl PoincarePolynomial {
    pub fn one() -> Self {
        PoincarePolynomial::from_coefficients([(0, 1)])
    }

    pub fn from_coefficients(it: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let mut coefficients = BTreeMap::new();
        for (d, c) in it {
            if c != 0 {
                *coefficients.entry(d).or_insert(0) += c;
            }
        }
        PoincarePolynomial { coefficients }
    }

    pub fn coefficient(&self, degree: usize) -> u64 {
        self.coefficients.get(&degree).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, u64> {
        &self.coefficients
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (&d1, &c1) in &self.coefficients {
            for (&d2, &c2) in &other.coefficients {
                *out.entry(d1 + d2).or_insert(0u64) += c1 * c2;
            }
        }
        PoincarePolynomial { coefficients: out }
    }

    /// Value at `T = 1`.
    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// Lowest and highest degree with nonzero coefficient.
    pub fn window(&self) -> Option<(usize, usize)> {
        let lo = *self.coefficients.keys().next()?;
        let hi = *self.coefficients.keys().next_back()?;
        Some((lo, hi))
    }
}

/// `dim H^q = C(n−1, q − n(n−1)/2)`.
pub fn coh_dimension(n: usize, q: usize) -> u64 {
    assert!(n >= 1, "n must be positive");
    let base = n * (n - 1) / 2;
    if q < base || q > base + n - 1 {
        return 0;
    }
    binomial((n - 1) as u64, (q - base) as u64)
}

pub fn coh_poincare(n: usize) -> PoincarePolynomial {
    let base = n * (n - 1) / 2;
    PoincarePolynomial::from_coefficients((base..=base + n - 1).map(|q| (q, coh_dimension(n, q))))
}

fn bruteforce_guard(n: usize) -> Result<()> {
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::cap(
            format!("n = {n} for brute-force cohomology"),
            BRUTEFORCE_MAX_N as u64,
        ));
    }
    Ok(())
}

/// `Σ_{s+t=q} C(n−1, s) · dim Hom_{∘T¹}(∧^t 𝔲_c, χ¹_𝛌 ⊗ 𝓜¹_𝛌)` for every `q`.
pub fn coh_table_bruteforce_with(
    pair: &PureWeightPair,
    wedge_u: &[CharacterMultiset],
    opts: &BranchingOptions,
) -> Result<PoincarePolynomial> {
    let n = pair.n();
    bruteforce_guard(n)?;
    let chi_m = chi_tensor_m_characters(pair, opts)?;
    let hom: Vec<u64> = wedge_u.iter().map(|wu| wu.pairing(&chi_m)).collect();
    let mut coeffs = Vec::new();
    for (t, &h) in hom.iter().enumerate() {
        for s in 0..n {
            coeffs.push((s + t, binomial((n - 1) as u64, s as u64) * h));
        }
    }
    Ok(PoincarePolynomial::from_coefficients(coeffs))
}

pub fn coh_table_bruteforce(
    pair: &PureWeightPair,
    opts: &BranchingOptions,
) -> Result<PoincarePolynomial> {
    bruteforce_guard(pair.n())?;
    let wu = wedge_u_all(pair.n())?;
    coh_table_bruteforce_with(pair, &wu, opts)
}

pub fn coh_dimension_bruteforce(
    pair: &PureWeightPair,
    q: usize,
    opts: &BranchingOptions,
) -> Result<u64> {
    Ok(coh_table_bruteforce(pair, opts)?.coefficient(q))
}

/// `coeff · c^c_power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LefschetzValue {
    pub coeff: i128,
    pub c_power: u32,
}

impl LefschetzValue {
    pub fn new(coeff: i128, c_power: u32) -> Self {
        LefschetzValue { coeff, c_power }
    }

    pub fn is_nonzero(&self) -> bool {
        self.coeff != 0
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Ok(LefschetzValue {
            coeff: self
                .coeff
                .checked_mul(other.coeff)
                .ok_or(Error::Overflow("Lefschetz coefficient"))?,
            c_power: self.c_power + other.c_power,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalLefschetz {
    pub traces: BTreeMap<usize, LefschetzValue>,
    pub total: LefschetzValue,
}

/// `Trace(θ^q) = (−1)^q C(n−1, q − n(n−1)/2) c` and the alternating sum.
pub fn lefschetz_local(n: usize) -> LocalLefschetz {
    let mut traces = BTreeMap::new();
    let mut total = 0i128;
    for (&q, &dim) in coh_poincare(n).coefficients() {
        let sign = if q % 2 == 0 { 1 } else { -1 };
        let tr = sign * dim as i128;
        traces.insert(q, LefschetzValue::new(tr, 1));
        total += sign * tr;
    }
    LocalLefschetz {
        traces,
        total: LefschetzValue::new(total, 1),
    }
}

/// Whether `−w₀(λ^{c(η)}) − λ^η` is a multiple of `(1,…,1)` for every `η`.
pub fn theta_selfdual_check(weight: &Weight, datum: &FieldDatum) -> Result<bool> {
    if weight.len() != datum.len() {
        return Err(Error::invalid(format!(
            "weight has {} entries but the datum has {} embeddings",
            weight.len(),
            datum.len()
        )));
    }
    let c = datum.conjugation();
    Ok((0..datum.len()).all(|eta| {
        let dual = neg_w0(weight.at(c.apply(eta)));
        let diff: Vec<i64> = dual
            .as_slice()
            .iter()
            .zip(weight.at(eta).as_slice())
            .map(|(x, y)| x - y)
            .collect();
        diff.windows(2).all(|p| p[0] == p[1])
    }))
}

fn check_places(got: usize, expected_places: usize) -> Result<()> {
    if expected_places == 0 {
        return Err(Error::invalid("at least one complex place is required"));
    }
    if got != expected_places {
        return Err(Error::invalid(format!(
            "{got} local factors for {expected_places} complex places"
        )));
    }
    Ok(())
}

/// Product of the local Poincaré polynomials, one per complex place.
pub fn kunneth_assemble(
    locals: &[PoincarePolynomial],
    expected_places: usize,
) -> Result<PoincarePolynomial> {
    check_places(locals.len(), expected_places)?;
    Ok(locals
        .iter()
        .fold(PoincarePolynomial::one(), |acc, p| acc.mul(p)))
}

/// Product of the local Lefschetz numbers.
pub fn lefschetz_infinity(
    locals: &[LefschetzValue],
    expected_places: usize,
) -> Result<LefschetzValue> {
    check_places(locals.len(), expected_places)?;
    locals
        .iter()
        .try_fold(LefschetzValue::new(1, 0), |acc, v| acc.checked_mul(v))
}

/// `[r₂·n(n−1)/2, r₂·(n(n−1)/2 + n − 1)]`.
pub fn sl_degree_window(n: usize, r2: usize) -> (usize, usize) {
    let base = n * (n - 1) / 2;
    (r2 * base, r2 * (base + n - 1))
}

/// `r_f = Σ r_v`.
pub fn steinberg_shift(finite_place_ranks: &[usize]) -> usize {
    finite_place_ranks.iter().sum()
}

/// Multiply by `(1 + T)^{r₂ − 1}`, the exterior algebra on `𝔷_∞/𝔰_∞`.
pub fn gl_sl_poincare(sl_poly: &PoincarePolynomial, r2: usize) -> Result<PoincarePolynomial> {
    if r2 == 0 {
        return Err(Error::invalid("r₂ must be at least 1"));
    }
    let e = (r2 - 1) as u64;
    let factor =
        PoincarePolynomial::from_coefficients((0..=e).map(|k| (k as usize, binomial(e, k))));
    Ok(sl_poly.mul(&factor))
}
