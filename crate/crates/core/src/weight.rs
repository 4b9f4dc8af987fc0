//! Highest weights, their coordinates, and the purity conditions.
//!
//! A weight assigns to every embedding `η` a vector `b^η = (b_1, …, b_n)`.
//! The fundamental-weight coordinates are `a_i = b_i − b_{i+1} + 1` and
//! `d = (b_1 + … + b_n)/n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{
    self, normal_closure_of_commutators, partition_from_subgroup, FieldDatum, Partition, Perm,
};
use crate::lie::neg_w0;
use crate::rational::{self, Rational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LocalWeight(pub Vec<i64>);

impl fmt::Debug for LocalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl LocalWeight {
    pub fn new(b: impl Into<Vec<i64>>) -> Self {
        LocalWeight(b.into())
    }

    pub fn zero(n: usize) -> Self {
        LocalWeight(vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self + t·(1,…,1)`
    pub fn shift(&self, t: i64) -> Self {
        LocalWeight(self.0.iter().map(|x| x + t).collect())
    }

    /// `−w₀(self) + w·(1,…,1)`: the partner weight forced by purity.
    pub fn pure_partner(&self, w: i64) -> Self {
        neg_w0(self).shift(w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ABCoordinates {
    #[serde(serialize_with = "rational::serialize_vec")]
    pub a: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize")]
    pub d: Rational,
}

pub fn ab_from_b(lw: &LocalWeight) -> ABCoordinates {
    let b = &lw.0;
    let a = b
        .windows(2)
        .map(|w| Rational::from_integer(w[0] - w[1] + 1))
        .collect();
    let d = if b.is_empty() {
        Rational::zero()
    } else {
        Rational::new(lw.sum(), b.len() as i64)
    };
    ABCoordinates { a, d }
}

/// Inverse of [`ab_from_b`]; rejects non-integral coordinates, naming the
/// violated condition.
pub fn b_from_ab(ab: &ABCoordinates, n: usize) -> Result<LocalWeight> {
    if n == 0 {
        return Err(Error::invalid("rank must be positive"));
    }
    if ab.a.len() != n - 1 {
        return Err(Error::invalid(format!(
            "expected {} fundamental-weight coordinates, got {}",
            n - 1,
            ab.a.len()
        )));
    }
    if let Some(i) = ab.a.iter().position(|x| !x.is_integer()) {
        return Err(Error::invalid(format!(
            "a_{} = {} is not an integer",
            i + 1,
            rational::to_string(&ab.a[i])
        )));
    }
    let nd = ab.d * Rational::from_integer(n as i64);
    if !nd.is_integer() {
        return Err(Error::invalid(format!(
            "n·d = {} is not an integer",
            rational::to_string(&nd)
        )));
    }
    let nd = nd.to_integer();
    let weighted: i64 =
        ab.a.iter()
            .enumerate()
            .map(|(i, a)| (i as i64 + 1) * (a.to_integer() - 1))
            .sum();
    if (nd - weighted).rem_euclid(n as i64) != 0 {
        return Err(Error::invalid(format!(
            "congruence n·d ≡ Σ i(a_i − 1) (mod n) fails: {nd} ≢ {weighted} (mod {n})"
        )));
    }
    let r = (nd - weighted) / n as i64;
    let mut b = vec![r; n];
    for i in (0..n - 1).rev() {
        b[i] = b[i + 1] + ab.a[i].to_integer() - 1;
    }
    Ok(LocalWeight(b))
}

/// A weight on a field datum: one [`LocalWeight`] per embedding, stored in the
/// datum's embedding order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    n: usize,
    values: Vec<LocalWeight>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightJson {
    pub n: usize,
    pub per_embedding: BTreeMap<String, Vec<i64>>,
}

impl Weight {
    pub fn new(n: usize, values: Vec<LocalWeight>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("rank n must be at least 1"));
        }
        if let Some(v) = values.iter().find(|v| v.n() != n) {
            return Err(Error::invalid(format!(
                "local weight {v:?} has length {} but n = {n}",
                v.n()
            )));
        }
        Ok(Weight { n, values })
    }

    pub fn zero(n: usize, datum: &FieldDatum) -> Self {
        Weight {
            n,
            values: vec![LocalWeight::zero(n); datum.len()],
        }
    }

    /// Same local weight at every embedding.
    pub fn constant(lw: LocalWeight, datum: &FieldDatum) -> Self {
        Weight {
            n: lw.n(),
            values: vec![lw; datum.len()],
        }
    }

    pub fn from_json(raw: &WeightJson, datum: &FieldDatum) -> Result<Self> {
        let mut values = vec![None; datum.len()];
        for (label, b) in &raw.per_embedding {
            let i = datum.index_of(label).ok_or_else(|| {
                Error::invalid(format!("weight given at unknown embedding {label:?}"))
            })?;
            values[i] = Some(LocalWeight(b.clone()));
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::invalid(format!("no weight for embedding {:?}", datum.label(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(raw.n, values)
    }

    pub fn to_json(&self, datum: &FieldDatum) -> WeightJson {
        WeightJson {
            n: self.n,
            per_embedding: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| (datum.label(i).to_string(), v.0.clone()))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, embedding: usize) -> &LocalWeight {
        &self.values[embedding]
    }

    pub fn values(&self) -> &[LocalWeight] {
        &self.values
    }

    pub fn set(&mut self, embedding: usize, lw: LocalWeight) {
        assert_eq!(lw.n(), self.n);
        self.values[embedding] = lw;
    }

    /// The twist `ᵍλ` with `(ᵍλ)^η = λ^{g⁻¹η}`.
    pub fn twist(&self, g: &Perm) -> Weight {
        let inv = g.inverse();
        Weight {
            n: self.n,
            values: (0..self.len())
                .map(|i| self.values[inv.apply(i)].clone())
                .collect(),
        }
    }

    pub fn d(&self, embedding: usize) -> Rational {
        ab_from_b(&self.values[embedding]).d
    }

    /// First embedding whose local weight is not dominant.
    pub fn first_non_dominant(&self) -> Option<usize> {
        self.values.iter().position(|v| !v.is_dominant())
    }

    pub fn is_dominant(&self) -> bool {
        self.first_non_dominant().is_none()
    }

    fn check_datum(&self, datum: &FieldDatum) -> Result<()> {
        if self.len() != datum.len() {
            return Err(Error::invalid(format!(
                "weight has {} components but the datum has {} embeddings",
                self.len(),
                datum.len()
            )));
        }
        Ok(())
    }
}

/// Algebraicity: with a real place, `d^η = 𝗐` for all `η`; when totally
/// imaginary, `d^η + d^{c(η)} = 𝗐` for all `η`. Returns `𝗐` if algebraic.
pub fn is_algebraic(weight: &Weight, datum: &FieldDatum) -> Result<Option<i64>> {
    weight.check_datum(datum)?;
    let c = datum.conjugation();
    let values: Vec<Rational> = if datum.has_real_place() {
        (0..weight.len()).map(|i| weight.d(i)).collect()
    } else {
        (0..weight.len())
            .map(|i| weight.d(i) + weight.d(c.apply(i)))
            .collect()
    };
    let first = values[0];
    if !first.is_integer() || values.iter().any(|v| *v != first) {
        return Ok(None);
    }
    Ok(Some(first.to_integer()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PurityCertificate {
    pub w: i64,
}

/// Where the purity identity `b^η_i + b^{c(η)}_{n−i+1} = 𝗐` first fails.
/// `index` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PurityViolation {
    pub embedding: usize,
    pub index: usize,
    pub sum: i64,
    pub expected: i64,
}

fn purity_scan(weight: &Weight, datum: &FieldDatum, w: i64) -> Option<PurityViolation> {
    let c = datum.conjugation();
    let n = weight.n();
    for eta in 0..weight.len() {
        let b = weight.at(eta).as_slice();
        let bb = weight.at(c.apply(eta)).as_slice();
        for i in 0..n {
            let sum = b[i] + bb[n - 1 - i];
            if sum != w {
                return Some(PurityViolation {
                    embedding: eta,
                    index: i + 1,
                    sum,
                    expected: w,
                });
            }
        }
    }
    None
}

fn candidate_w(weight: &Weight, datum: &FieldDatum) -> i64 {
    let n = weight.n();
    weight.at(0).0[0] + weight.at(datum.conjugation().apply(0)).0[n - 1]
}

/// Purity with an explicit witness on failure.
pub fn purity_check(
    weight: &Weight,
    datum: &FieldDatum,
) -> Result<std::result::Result<PurityCertificate, PurityViolation>> {
    weight.check_datum(datum)?;
    let w = candidate_w(weight, datum);
    Ok(match purity_scan(weight, datum, w) {
        None => Ok(PurityCertificate { w }),
        Some(v) => Err(v),
    })
}

pub fn purity_weight(weight: &Weight, datum: &FieldDatum) -> Result<Option<PurityCertificate>> {
    Ok(purity_check(weight, datum)?.ok())
}

/// A Galois twist that breaks purity (or changes the purity weight).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongPurityViolation {
    pub twist: Vec<usize>,
    pub violation: PurityViolation,
}

/// Strong purity against a precomputed Γ: every twist `ᵍλ`, `g ∈ Γ`, is pure
/// with one common `𝗐`.
pub fn strong_purity_check_in(
    weight: &Weight,
    datum: &FieldDatum,
    gamma: &[Perm],
) -> Result<std::result::Result<PurityCertificate, StrongPurityViolation>> {
    weight.check_datum(datum)?;
    let w = candidate_w(weight, datum);
    let c = datum.conjugation();
    let n = weight.n();
    for g in gamma {
        // purity of ᵍλ at g·η, i.e. b^{gη}_i + b^{g c η}_{n−i+1} = 𝗐
        for eta in 0..weight.len() {
            let b = weight.at(g.apply(eta)).as_slice();
            let bb = weight.at(g.apply(c.apply(eta))).as_slice();
            for i in 0..n {
                let sum = b[i] + bb[n - 1 - i];
                if sum != w {
                    return Ok(Err(StrongPurityViolation {
                        twist: g.images().to_vec(),
                        violation: PurityViolation {
                            embedding: eta,
                            index: i + 1,
                            sum,
                            expected: w,
                        },
                    }));
                }
            }
        }
    }
    Ok(Ok(PurityCertificate { w }))
}

pub fn is_strongly_pure(
    weight: &Weight,
    datum: &FieldDatum,
    cap: usize,
) -> Result<Option<PurityCertificate>> {
    let gamma = galois::group_elements(datum, cap)?;
    Ok(strong_purity_check_in(weight, datum, &gamma)?.ok())
}

/// A strongly-pure weight written as the pull-back of one local weight per
/// block of the F₁-partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseChange {
    pub partition: Partition,
    pub kappa: Vec<LocalWeight>,
}

/// Factor a strongly-pure weight through the F₁-partition.
///
/// Fails with [`Error::Precondition`] if the weight is not strongly pure and
/// with [`Error::Contract`] if it is strongly pure yet not constant on some
/// block, which would contradict the base-change structure theorem.
pub fn base_change_factor(weight: &Weight, datum: &FieldDatum, cap: usize) -> Result<BaseChange> {
    let gamma = galois::group_elements(datum, cap)?;
    base_change_factor_in(weight, datum, &gamma, cap)
}

pub(crate) fn base_change_factor_in(
    weight: &Weight,
    datum: &FieldDatum,
    gamma: &[Perm],
    cap: usize,
) -> Result<BaseChange> {
    if !weight.is_dominant() {
        return Err(Error::Precondition("weight is not dominant".into()));
    }
    if let Err(v) = strong_purity_check_in(weight, datum, gamma)? {
        return Err(Error::Precondition(format!(
            "weight is not strongly pure (twist {:?} fails at embedding {:?}, i = {})",
            v.twist,
            datum.label(v.violation.embedding),
            v.violation.index
        )));
    }
    let sub = normal_closure_of_commutators(datum, gamma, cap)?;
    let partition = partition_from_subgroup(datum, &sub);
    let mut kappa = Vec::with_capacity(partition.num_blocks());
    for block in partition.blocks() {
        let first = weight.at(block[0]);
        if let Some(&bad) = block.iter().find(|&&i| weight.at(i) != first) {
            return Err(Error::Contract(format!(
                "strongly-pure weight is not constant on block {:?}: {:?} at {:?} vs {:?} at {:?}",
                block,
                first,
                datum.label(block[0]),
                weight.at(bad),
                datum.label(bad)
            )));
        }
        kappa.push(first.clone());
    }
    Ok(BaseChange { partition, kappa })
}

/// Lift one local weight per block back to a weight on all embeddings.
pub fn lift_from_blocks(partition: &Partition, kappa: &[LocalWeight], n: usize) -> Result<Weight> {
    if kappa.len() != partition.num_blocks() {
        return Err(Error::invalid("one local weight per block is required"));
    }
    let len: usize = partition.blocks().iter().map(Vec::len).sum();
    let values = (0..len)
        .map(|i| kappa[partition.block_of(i)].clone())
        .collect();
    Weight::new(n, values)
}

/// `2·d^η = 𝗐` for every embedding.
pub fn d_matches_half_w(weight: &Weight, w: i64) -> bool {
    (0..weight.len()).all(|i| weight.d(i) * Rational::from_integer(2) == Rational::from_integer(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{models, DEFAULT_GROUP_CAP};
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn iq(b: &[i64], bb: &[i64]) -> (Weight, FieldDatum) {
        let d = models::imaginary_quadratic();
        let w = Weight::new(b.len(), vec![LocalWeight::new(b), LocalWeight::new(bb)]).unwrap();
        (w, d)
    }

    #[test]
    fn ab_examples() {
        let ab = ab_from_b(&LocalWeight::new([0, 0]));
        assert_eq!(ab.a, vec![r(1, 1)]);
        assert_eq!(ab.d, r(0, 1));
        let ab = ab_from_b(&LocalWeight::new([2, 0]));
        assert_eq!(ab.a, vec![r(3, 1)]);
        assert_eq!(ab.d, r(1, 1));
        let ab = ab_from_b(&LocalWeight::new([3, 1, 0]));
        assert_eq!(ab.a, vec![r(3, 1), r(2, 1)]);
        assert_eq!(ab.d, r(4, 3));
    }

    #[test]
    fn b_from_ab_examples() {
        let b = b_from_ab(
            &ABCoordinates {
                a: vec![r(1, 1)],
                d: r(0, 1),
            },
            2,
        )
        .unwrap();
        assert_eq!(b.0, vec![0, 0]);
        let b = b_from_ab(
            &ABCoordinates {
                a: vec![r(3, 1)],
                d: r(1, 1),
            },
            2,
        )
        .unwrap();
        assert_eq!(b.0, vec![2, 0]);
        let b = b_from_ab(
            &ABCoordinates {
                a: vec![r(2, 1)],
                d: r(1, 2),
            },
            2,
        )
        .unwrap();
        assert_eq!(b.0, vec![1, 0]);
        let err = b_from_ab(
            &ABCoordinates {
                a: vec![r(2, 1)],
                d: r(0, 1),
            },
            2,
        )
        .unwrap_err();
        assert!(err.to_string().contains("congruence"), "{err}");
        let err = b_from_ab(
            &ABCoordinates {
                a: vec![r(3, 2)],
                d: r(0, 1),
            },
            2,
        )
        .unwrap_err();
        assert!(err.to_string().contains("a_1"), "{err}");
        let err = b_from_ab(
            &ABCoordinates {
                a: vec![r(1, 1)],
                d: r(1, 3),
            },
            2,
        )
        .unwrap_err();
        assert!(err.to_string().contains("n·d"), "{err}");
    }

    #[test]
    fn algebraicity_examples() {
        let (w, d) = iq(&[2, 0], &[2, 0]);
        assert_eq!(is_algebraic(&w, &d).unwrap(), Some(2));
        let d3 = models::s3_sextic();
        assert_eq!(is_algebraic(&Weight::zero(3, &d3), &d3).unwrap(), Some(0));
        let tr = models::totally_real_cyclic(2);
        let w = Weight::new(2, vec![LocalWeight::new([2, 0]), LocalWeight::new([4, 0])]).unwrap();
        assert_eq!(is_algebraic(&w, &tr).unwrap(), None);
        // half-integral total imaginary sums are not algebraic
        let (w, d) = iq(&[1, 0], &[0, 0]);
        assert_eq!(is_algebraic(&w, &d).unwrap(), None);
    }

    #[test]
    fn purity_examples() {
        for k in 0..6 {
            let (w, d) = iq(&[k, 0], &[k, 0]);
            assert_eq!(
                purity_weight(&w, &d).unwrap(),
                Some(PurityCertificate { w: k })
            );
        }
        let (w, d) = iq(&[1, 0], &[0, 0]);
        assert_eq!(purity_weight(&w, &d).unwrap(), None);
        let v = purity_check(&w, &d).unwrap().unwrap_err();
        assert_eq!((v.embedding, v.index), (0, 2));
        let d3 = models::s3_sextic();
        assert_eq!(
            purity_weight(&Weight::zero(4, &d3), &d3).unwrap(),
            Some(PurityCertificate { w: 0 })
        );
    }

    #[test]
    fn rank_one_purity() {
        let d = models::imaginary_quadratic();
        let w = Weight::new(1, vec![LocalWeight::new([5]), LocalWeight::new([-2])]).unwrap();
        assert_eq!(
            purity_weight(&w, &d).unwrap(),
            Some(PurityCertificate { w: 3 })
        );
    }

    #[test]
    fn strong_purity_imaginary_quadratic() {
        let (w, d) = iq(&[3, 1, 0], &[4, 3, 1]);
        let p = purity_weight(&w, &d).unwrap().unwrap();
        assert_eq!(
            is_strongly_pure(&w, &d, DEFAULT_GROUP_CAP).unwrap(),
            Some(p)
        );
        let bc = base_change_factor(&w, &d, DEFAULT_GROUP_CAP).unwrap();
        assert!(bc.partition.is_discrete());
        assert_eq!(bc.kappa, w.values().to_vec());
    }

    fn sextic_block_weight(
        top: &[i64],
        w: i64,
        override_one: Option<LocalWeight>,
    ) -> (Weight, FieldDatum) {
        let d = models::s3_sextic();
        let part = galois::f1_partition(&d, DEFAULT_GROUP_CAP).unwrap();
        let k1 = LocalWeight::new(top);
        let k2 = k1.pure_partner(w);
        let c = d.conjugation();
        let first_block = part.block_of(0);
        let mut weight = lift_from_blocks(
            &part,
            &if first_block == 0 {
                vec![k1.clone(), k2.clone()]
            } else {
                vec![k2.clone(), k1.clone()]
            },
            top.len(),
        )
        .unwrap();
        if let Some(alt) = override_one {
            // keep purity: change η = 0 and its conjugate together
            weight.set(c.apply(0), alt.pure_partner(w));
            weight.set(0, alt);
        }
        (weight, d)
    }

    #[test]
    fn strong_purity_sextic() {
        let (weight, d) = sextic_block_weight(&[3, 1], 4, None);
        assert_eq!(
            is_strongly_pure(&weight, &d, DEFAULT_GROUP_CAP).unwrap(),
            Some(PurityCertificate { w: 4 })
        );
        let bc = base_change_factor(&weight, &d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(bc.partition.num_blocks(), 2);
        assert_eq!(bc.kappa.len(), 2);

        let (bad, d) = sextic_block_weight(&[3, 1], 4, Some(LocalWeight::new([5, 0])));
        assert!(purity_weight(&bad, &d).unwrap().is_some());
        assert_eq!(is_strongly_pure(&bad, &d, DEFAULT_GROUP_CAP).unwrap(), None);
        let gamma = galois::group_elements(&d, DEFAULT_GROUP_CAP).unwrap();
        let witness = strong_purity_check_in(&bad, &d, &gamma)
            .unwrap()
            .unwrap_err();
        assert!(!Perm::from_images(witness.twist).unwrap().is_identity());
        assert!(matches!(
            base_change_factor(&bad, &d, DEFAULT_GROUP_CAP),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn zero_weight_base_change() {
        for d in [
            models::imaginary_quadratic(),
            models::s3_sextic(),
            models::cyclic_cm(3),
        ] {
            let bc = base_change_factor(&Weight::zero(3, &d), &d, DEFAULT_GROUP_CAP).unwrap();
            assert!(bc.kappa.iter().all(|k| k.0 == vec![0, 0, 0]));
        }
    }

    #[test]
    fn weight_json_rejects_missing_and_unknown() {
        let d = models::imaginary_quadratic();
        let ok: WeightJson =
            serde_json::from_str(r#"{"n":2,"per_embedding":{"eta":[2,0],"eta_bar":[2,0]}}"#)
                .unwrap();
        assert!(Weight::from_json(&ok, &d).is_ok());
        let missing: WeightJson =
            serde_json::from_str(r#"{"n":2,"per_embedding":{"eta":[2,0]}}"#).unwrap();
        assert!(Weight::from_json(&missing, &d).is_err());
        let unknown: WeightJson = serde_json::from_str(
            r#"{"n":2,"per_embedding":{"eta":[2,0],"eta_bar":[2,0],"x":[0,0]}}"#,
        )
        .unwrap();
        assert!(Weight::from_json(&unknown, &d).is_err());
        assert!(
            serde_json::from_str::<WeightJson>(r#"{"n":2,"per_embedding":{"eta":[2.5,0]}}"#)
                .is_err()
        );
        let short: WeightJson =
            serde_json::from_str(r#"{"n":3,"per_embedding":{"eta":[2,0],"eta_bar":[2,0]}}"#)
                .unwrap();
        assert!(Weight::from_json(&short, &d).is_err());
    }

    #[test]
    fn pure_weight_with_d_not_half_w() {
        let d = models::imaginary_quadratic();
        let weight = Weight::new(1, vec![LocalWeight::new([0]), LocalWeight::new([1])]).unwrap();
        assert_eq!(purity_weight(&weight, &d).unwrap().unwrap().w, 1);
        assert!(!d_matches_half_w(&weight, 1));
    }

    proptest! {
        #[test]
        fn ab_roundtrip(mut b in prop::collection::vec(-20i64..=20, 1..=6)) {
            b.sort_unstable_by(|x, y| y.cmp(x));
            let lw = LocalWeight(b);
            let back = b_from_ab(&ab_from_b(&lw), lw.n()).unwrap();
            prop_assert_eq!(back, lw);
        }

        #[test]
        fn purity_pairs_d_values(mut b in prop::collection::vec(-10i64..=10, 1..=5), w in -10i64..=10) {
            b.sort_unstable_by(|x, y| y.cmp(x));
            let lw = LocalWeight(b);
            let d = models::imaginary_quadratic();
            let weight = Weight::new(lw.n(), vec![lw.clone(), lw.pure_partner(w)]).unwrap();
            let cert = purity_weight(&weight, &d).unwrap().unwrap();
            prop_assert_eq!(cert.w, w);
            prop_assert_eq!(weight.d(0) + weight.d(1), Rational::from_integer(w));
            prop_assert_eq!(d_matches_half_w(&weight, cert.w), weight.d(0) == weight.d(1));
            prop_assert_eq!(is_algebraic(&weight, &d).unwrap(), Some(w));
        }
    }
}
