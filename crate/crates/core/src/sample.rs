//! Seeded generators for test inputs: field data, strongly-pure weights built
//! block by block, and purity-preserving violations of block constancy.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::branching::PureWeightPair;
use crate::error::{Error, Result};
use crate::galois::{f1_partition, generate_group, FieldDatum, Partition, Perm};
use crate::weight::{lift_from_blocks, LocalWeight, Weight};

pub struct Sampler {
    rng: ChaCha8Rng,
}

/// A strongly-pure weight together with the data it was built from.
#[derive(Debug, Clone)]
pub struct StronglyPureSample {
    pub weight: Weight,
    pub w: i64,
    pub partition: Partition,
    pub kappa: Vec<LocalWeight>,
}

fn perm(v: &[usize]) -> Perm {
    Perm::from_images(v.to_vec()).expect("valid permutation literal")
}

fn cycle(m: usize) -> Perm {
    Perm::from_images((0..m).map(|i| (i + 1) % m).collect()).unwrap()
}

fn reflection(m: usize) -> Perm {
    Perm::from_images((0..m).map(|i| (m - i) % m).collect()).unwrap()
}

/// Generators of a small catalogue of permutation groups.
fn group_catalogue() -> Vec<(&'static str, usize, Vec<Perm>)> {
    let mut out: Vec<(&'static str, usize, Vec<Perm>)> = Vec::new();
    for m in 2..=8 {
        out.push(("cyclic", m, vec![cycle(m)]));
    }
    for m in 3..=6 {
        out.push(("dihedral", m, vec![cycle(m), reflection(m)]));
    }
    out.push(("klein", 4, vec![perm(&[1, 0, 3, 2]), perm(&[2, 3, 0, 1])]));
    out.push((
        "c2xc4",
        6,
        vec![perm(&[1, 0, 2, 3, 4, 5]), perm(&[0, 1, 3, 4, 5, 2])],
    ));
    out.push((
        "alternating4",
        4,
        vec![perm(&[1, 2, 0, 3]), perm(&[0, 2, 3, 1])],
    ));
    out.push((
        "symmetric4",
        4,
        vec![perm(&[1, 2, 3, 0]), perm(&[1, 0, 2, 3])],
    ));
    out
}

/// Action of `g` on the left cosets `x·H` listed in `cosets`.
fn coset_action(cosets: &[Vec<Perm>], g: &Perm) -> Perm {
    let images = cosets
        .iter()
        .map(|c| {
            let y = g.compose(&c[0]);
            cosets
                .iter()
                .position(|d| d.binary_search(&y).is_ok())
                .unwrap()
        })
        .collect();
    Perm::from_images(images).unwrap()
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Dominant weight with entries in `[lo, hi]`.
    pub fn dominant(&mut self, n: usize, lo: i64, hi: i64) -> LocalWeight {
        let mut v: Vec<i64> = (0..n).map(|_| self.rng.gen_range(lo..=hi)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        LocalWeight(v)
    }

    /// Dominant `κ` with `κ_i + κ_{n−i+1} = w`; needs `w` even when `n` is odd.
    pub fn self_pure(&mut self, n: usize, w: i64, spread: i64) -> Option<LocalWeight> {
        if n % 2 == 1 && w.rem_euclid(2) != 0 {
            return None;
        }
        let half = n / 2;
        // upper half x_1 ≥ … ≥ x_h ≥ ⌈w/2⌉
        let floor = w.div_euclid(2) + w.rem_euclid(2);
        let mut upper: Vec<i64> = (0..half)
            .map(|_| floor + self.rng.gen_range(0..=spread))
            .collect();
        upper.sort_unstable_by(|a, b| b.cmp(a));
        let mut v = upper.clone();
        if n % 2 == 1 {
            v.push(w / 2);
        }
        v.extend(upper.iter().rev().map(|x| w - x));
        Some(LocalWeight(v))
    }

    /// A pure pair `(λ, −w₀(λ) + 𝗐)` with both components in `[lo, hi]`.
    pub fn pure_pair(&mut self, n: usize, lo: i64, hi: i64) -> PureWeightPair {
        loop {
            let lambda = self.dominant(n, lo, hi);
            let b = lambda.as_slice();
            let (wlo, whi) = (b[0] + lo, b[n - 1] + hi);
            if wlo > whi {
                continue;
            }
            let w = self.rng.gen_range(wlo..=whi);
            return PureWeightPair::from_lambda(lambda, w).expect("constructed pair is pure");
        }
    }

    /// A field datum modelled on the left cosets of a random cyclic subgroup
    /// of a small group, with conjugation a random involution (or the
    /// identity when the group has none).
    pub fn field_datum(&mut self, cap: usize) -> Result<FieldDatum> {
        let catalogue = group_catalogue();
        let (name, degree, gens) = catalogue.choose(&mut self.rng).unwrap().clone();
        let elements = generate_group(degree, &gens, cap)?;
        let h = elements.choose(&mut self.rng).unwrap().clone();
        let mut sub = generate_group(degree, &[h], cap)?;
        sub.sort();
        let mut cosets: Vec<Vec<Perm>> = Vec::new();
        for x in &elements {
            if cosets.iter().any(|c| c.binary_search(x).is_ok()) {
                continue;
            }
            let mut c: Vec<Perm> = sub.iter().map(|s| x.compose(s)).collect();
            c.sort();
            cosets.push(c);
        }
        let involutions: Vec<&Perm> = elements
            .iter()
            .filter(|g| !g.is_identity() && g.compose(g).is_identity())
            .collect();
        let c = match involutions.choose(&mut self.rng) {
            Some(c) => (*c).clone(),
            None => Perm::identity(degree),
        };
        let labels = (0..cosets.len())
            .map(|i| format!("{name}{degree}_{i}"))
            .collect();
        let generators = gens.iter().map(|g| coset_action(&cosets, g)).collect();
        FieldDatum::new(labels, coset_action(&cosets, &c), generators)
    }

    /// Pick `κ` on each block of the F₁-partition, pairing blocks swapped by
    /// conjugation through `κ ↦ −w₀(κ) + 𝗐`, and lift.
    pub fn strongly_pure(
        &mut self,
        datum: &FieldDatum,
        n: usize,
        lo: i64,
        hi: i64,
        cap: usize,
    ) -> Result<StronglyPureSample> {
        if n == 0 {
            return Err(Error::invalid("n must be positive"));
        }
        let partition = f1_partition(datum, cap)?;
        let c = datum.conjugation();
        let partner_block = |b: usize| partition.block_of(c.apply(partition.blocks()[b][0]));
        let has_self_conjugate = (0..partition.num_blocks()).any(|b| partner_block(b) == b);
        let mut w = self.rng.gen_range(2 * lo..=2 * hi);
        if has_self_conjugate && n % 2 == 1 && w % 2 != 0 {
            w += 1;
        }
        let spread = (hi - lo).max(0);
        let mut kappa: Vec<Option<LocalWeight>> = vec![None; partition.num_blocks()];
        for b in 0..partition.num_blocks() {
            if kappa[b].is_some() {
                continue;
            }
            let p = partner_block(b);
            if p == b {
                kappa[b] = Some(self.self_pure(n, w, spread).expect("parity arranged above"));
            } else {
                let k = self.dominant(n, lo, hi);
                kappa[p] = Some(k.pure_partner(w));
                kappa[b] = Some(k);
            }
        }
        let kappa: Vec<LocalWeight> = kappa.into_iter().map(Option::unwrap).collect();
        let weight = lift_from_blocks(&partition, &kappa, n)?;
        Ok(StronglyPureSample {
            weight,
            w,
            partition,
            kappa,
        })
    }

    /// Change the weight at one embedding `η` (and at `c(η)`, keeping purity)
    /// so that some F₁-block is no longer constant. `None` when every block
    /// is too small for that.
    pub fn inject_block_violation(
        &mut self,
        sample: &StronglyPureSample,
        datum: &FieldDatum,
    ) -> Option<Weight> {
        let n = sample.weight.n();
        let c = datum.conjugation();
        let blocks = sample.partition.blocks();
        let candidates: Vec<usize> = (0..datum.len())
            .filter(|&eta| {
                let block = &blocks[sample.partition.block_of(eta)];
                block.iter().any(|&x| x != eta && x != c.apply(eta))
                    || (block.len() == 2 && block.contains(&c.apply(eta)) && c.apply(eta) != eta)
            })
            .collect();
        let &eta = candidates.choose(&mut self.rng)?;
        let cur = sample.weight.at(eta).clone();
        let fixed = c.apply(eta) == eta;
        let spread = 3 + n as i64;
        for _ in 0..1000 {
            let new = if fixed {
                self.self_pure(n, sample.w, spread)?
            } else {
                let lo = cur.as_slice().iter().min().copied().unwrap_or(0) - 2;
                self.dominant(n, lo, lo + spread)
            };
            let mut w = sample.weight.clone();
            if !fixed {
                w.set(c.apply(eta), new.pure_partner(sample.w));
            }
            w.set(eta, new);
            let constant = blocks
                .iter()
                .all(|b| b.iter().all(|&x| w.at(x) == w.at(b[0])));
            if !constant {
                return Some(w);
            }
        }
        None
    }
}

/// Every pure pair `(λ, λ*)` of rank `n` with all entries of both in `[lo, hi]`.
pub fn all_pure_pairs(n: usize, lo: i64, hi: i64) -> Vec<PureWeightPair> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<PureWeightPair>) {
        if cur.len() == n {
            let (first, last) = (cur[0], cur[n - 1]);
            for w in first + lo..=last + hi {
                let pair = PureWeightPair::from_lambda(LocalWeight(cur.clone()), w)
                    .expect("dominant λ gives a valid pair");
                out.push(pair);
            }
            return;
        }
        let top = cur.last().copied().unwrap_or(hi);
        for x in (lo..=top).rev() {
            cur.push(x);
            rec(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, lo, hi, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::{models, DEFAULT_GROUP_CAP};
    use crate::weight::{base_change_factor, is_strongly_pure, purity_weight};

    #[test]
    fn deterministic_for_a_seed() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..5 {
            let da = a.field_datum(DEFAULT_GROUP_CAP).unwrap();
            let db = b.field_datum(DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(da, db);
        }
    }

    #[test]
    fn self_pure_shapes() {
        let mut s = Sampler::new(1);
        for n in 1..6 {
            for w in -4..4 {
                match s.self_pure(n, w, 3) {
                    Some(k) => {
                        assert!(k.is_dominant());
                        assert_eq!(k.pure_partner(w), k);
                    }
                    None => assert!(n % 2 == 1 && w % 2 != 0),
                }
            }
        }
    }

    #[test]
    fn constructed_weights_are_strongly_pure() {
        let mut s = Sampler::new(11);
        for i in 0..40 {
            let d = if i % 4 == 0 {
                models::s3_sextic()
            } else {
                s.field_datum(DEFAULT_GROUP_CAP).unwrap()
            };
            let n = 1 + i % 3;
            let sample = s.strongly_pure(&d, n, -3, 3, DEFAULT_GROUP_CAP).unwrap();
            let cert = is_strongly_pure(&sample.weight, &d, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(cert.map(|c| c.w), Some(sample.w));
            let bc = base_change_factor(&sample.weight, &d, DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(bc.kappa, sample.kappa);
            if let Some(bad) = s.inject_block_violation(&sample, &d) {
                assert!(purity_weight(&bad, &d).unwrap().is_some());
                assert!(is_strongly_pure(&bad, &d, DEFAULT_GROUP_CAP)
                    .unwrap()
                    .is_none());
            }
        }
    }

    #[test]
    fn exhaustive_pair_counts() {
        // n = 1: λ = (p), λ* = (w − p), both in [−1, 1]
        assert_eq!(all_pure_pairs(1, -1, 1).len(), 9);
        for p in all_pure_pairs(2, -3, 3) {
            assert!(p
                .lambda_star()
                .as_slice()
                .iter()
                .all(|x| (-3..=3).contains(x)));
        }
        assert_eq!(all_pure_pairs(2, 0, 0).len(), 1);
    }

    #[test]
    fn pure_pairs_in_range() {
        let mut s = Sampler::new(3);
        for _ in 0..50 {
            let p = s.pure_pair(3, -3, 3);
            for x in p
                .lambda()
                .as_slice()
                .iter()
                .chain(p.lambda_star().as_slice())
            {
                assert!((-3..=3).contains(x));
            }
        }
    }
}
