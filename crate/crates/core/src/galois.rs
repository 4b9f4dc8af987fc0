//! Finite model of the embedding set of a number field.
//!
//! A [`FieldDatum`] carries the embeddings `Σ_F = Hom(F, ℂ)` as opaque labels,
//! complex conjugation as an involution on them, and the image of the absolute
//! Galois group as a list of generating permutations. Everything downstream
//! (purity twists, base change) only ever sees this finite action.
//!
//! Permutations are total maps on `0..len`; composition applies the right
//! factor first: `a.compose(&b)` maps `x` to `a(b(x))`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of elements produced by a group closure.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image vector, `images[i]` being the image of `i`.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::invalid(format!(
                    "image vector {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x)
            .map(|(i, _)| i)
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }
}

/// Abstract stand-in for a number field: embeddings, conjugation, Galois action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDatum {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    conjugation: Perm,
    generators: Vec<Perm>,
    field_like: bool,
}

/// Serialized shape of a [`FieldDatum`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDatumJson {
    pub embeddings: Vec<String>,
    pub conjugation: BTreeMap<String, String>,
    #[serde(default)]
    pub galois_generators: Vec<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub field_like: bool,
}

impl FieldDatum {
    pub fn new(labels: Vec<String>, conjugation: Perm, generators: Vec<Perm>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("field datum needs at least one embedding"));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate embedding label {l:?}")));
            }
        }
        if conjugation.len() != n {
            return Err(Error::invalid("conjugation has wrong length"));
        }
        if !conjugation.compose(&conjugation).is_identity() {
            return Err(Error::invalid("conjugation is not an involution"));
        }
        if let Some(g) = generators.iter().find(|g| g.len() != n) {
            return Err(Error::invalid(format!(
                "galois generator {g:?} has wrong length (expected {n})"
            )));
        }
        Ok(FieldDatum {
            labels,
            index,
            conjugation,
            generators,
            field_like: false,
        })
    }

    pub fn with_field_like(mut self, flag: bool) -> Self {
        self.field_like = flag;
        self
    }

    pub fn from_json(raw: &FieldDatumJson) -> Result<Self> {
        let labels = raw.embeddings.clone();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let to_perm = |name: &str, map: &BTreeMap<String, String>| -> Result<Perm> {
            let mut images = vec![usize::MAX; labels.len()];
            for (k, v) in map {
                let src = *index
                    .get(k.as_str())
                    .ok_or_else(|| Error::invalid(format!("{name}: unknown label {k:?}")))?;
                let dst = *index
                    .get(v.as_str())
                    .ok_or_else(|| Error::invalid(format!("{name}: unknown label {v:?}")))?;
                images[src] = dst;
            }
            if let Some(i) = images.iter().position(|&x| x == usize::MAX) {
                return Err(Error::invalid(format!(
                    "{name}: map is not total (missing {:?})",
                    labels[i]
                )));
            }
            Perm::from_images(images)
                .map_err(|_| Error::invalid(format!("{name}: map is not a bijection")))
        };
        let conjugation = to_perm("conjugation", &raw.conjugation)?;
        let generators = raw
            .galois_generators
            .iter()
            .enumerate()
            .map(|(i, m)| to_perm(&format!("galois_generators[{i}]"), m))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldDatum::new(labels, conjugation, generators)?.with_field_like(raw.field_like))
    }

    pub fn to_json(&self) -> FieldDatumJson {
        let as_map = |p: &Perm| {
            (0..self.len())
                .map(|i| (self.labels[i].clone(), self.labels[p.apply(i)].clone()))
                .collect()
        };
        FieldDatumJson {
            embeddings: self.labels.clone(),
            conjugation: as_map(&self.conjugation),
            galois_generators: self.generators.iter().map(as_map).collect(),
            field_like: self.field_like,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn conjugation(&self) -> &Perm {
        &self.conjugation
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn field_like(&self) -> bool {
        self.field_like
    }

    pub fn totally_imaginary(&self) -> bool {
        self.conjugation.fixed_points().next().is_none()
    }

    pub fn totally_real(&self) -> bool {
        self.conjugation.is_identity()
    }

    pub fn has_real_place(&self) -> bool {
        !self.totally_imaginary()
    }

    /// Generators of Γ: the Galois generators followed by conjugation.
    pub fn all_generators(&self) -> Vec<Perm> {
        let mut gens = self.generators.clone();
        gens.push(self.conjugation.clone());
        gens
    }

    /// Complex places as `(η, c(η))` pairs, `η` the smaller index. Real places
    /// (fixed points of conjugation) are omitted.
    pub fn complex_places(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|i| {
                let j = self.conjugation.apply(i);
                (i < j).then_some((i, j))
            })
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        orbits(self.len(), &self.all_generators()).len() == 1
    }
}

/// Closure of `gens` under composition, sorted lexicographically.
pub fn generate_group(degree: usize, gens: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashSet<Perm> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::cap("permutation group order", cap as u64));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The group Γ generated by the Galois generators and complex conjugation.
pub fn group_elements(datum: &FieldDatum, cap: usize) -> Result<Vec<Perm>> {
    generate_group(datum.len(), &datum.all_generators(), cap)
}

/// Normal closure in Γ of the commutators `g c g⁻¹ c`, `g ∈ Γ`.
pub fn commutator_normal_closure(datum: &FieldDatum, cap: usize) -> Result<Vec<Perm>> {
    let gamma = group_elements(datum, cap)?;
    normal_closure_of_commutators(datum, &gamma, cap)
}

pub(crate) fn normal_closure_of_commutators(
    datum: &FieldDatum,
    gamma: &[Perm],
    cap: usize,
) -> Result<Vec<Perm>> {
    let c = datum.conjugation();
    let mut gens: Vec<Perm> = gamma
        .iter()
        .map(|g| c.conjugate_by(g).compose(c))
        .filter(|h| !h.is_identity())
        .collect();
    gens.sort();
    gens.dedup();

    let gamma_gens = datum.all_generators();
    loop {
        let sub = generate_group(datum.len(), &gens, cap)?;
        let members: HashSet<&Perm> = sub.iter().collect();
        let mut extra = Vec::new();
        for s in &gamma_gens {
            for h in &gens {
                let k = h.conjugate_by(s);
                if !members.contains(&k) && !extra.contains(&k) {
                    extra.push(k);
                }
            }
        }
        if extra.is_empty() {
            return Ok(sub);
        }
        gens.extend(extra);
    }
}

/// A partition of `0..len` into blocks, each block sorted, blocks ordered by
/// their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    #[serde(skip)]
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(len: usize, mut blocks: Vec<Vec<usize>>) -> Result<Partition> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        let mut block_of = vec![usize::MAX; len];
        for (k, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= len || block_of[x] != usize::MAX {
                    return Err(Error::invalid("blocks do not partition the index set"));
                }
                block_of[x] = k;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::invalid("blocks do not cover the index set"));
        }
        Ok(Partition { blocks, block_of })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn labelled(&self, datum: &FieldDatum) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| datum.label(i).to_string()).collect())
            .collect()
    }
}

/// Orbits of the group generated by `gens` on `0..degree`.
pub fn orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Orbit partition of the embeddings under the commutator normal closure.
/// Its blocks model the fibres of restriction to the maximal CM (or totally
/// real) subfield.
pub fn f1_partition(datum: &FieldDatum, cap: usize) -> Result<Partition> {
    let n = commutator_normal_closure(datum, cap)?;
    Partition::from_blocks(datum.len(), orbits(datum.len(), &n))
}

pub(crate) fn partition_from_subgroup(datum: &FieldDatum, sub: &[Perm]) -> Partition {
    Partition::from_blocks(datum.len(), orbits(datum.len(), sub))
        .expect("orbits always partition the index set")
}

/// Standard models used in tests, examples and the self-test harness.
pub mod models {
    use super::*;

    fn labels(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// Two embeddings swapped by conjugation.
    pub fn imaginary_quadratic() -> FieldDatum {
        FieldDatum::new(
            vec!["eta".into(), "eta_bar".into()],
            Perm::from_images(vec![1, 0]).unwrap(),
            vec![],
        )
        .unwrap()
        .with_field_like(true)
    }

    /// Cyclic totally real field of degree `d`.
    pub fn totally_real_cyclic(d: usize) -> FieldDatum {
        let cycle = Perm::from_images((0..d).map(|i| (i + 1) % d).collect()).unwrap();
        FieldDatum::new(labels("s", d), Perm::identity(d), vec![cycle])
            .unwrap()
            .with_field_like(true)
    }

    /// CM field of degree `2d` with cyclic totally real subfield: embeddings
    /// `(k, ε)` with `k ∈ ℤ/d`, `ε ∈ {0,1}`, conjugation flips `ε`.
    pub fn cyclic_cm(d: usize) -> FieldDatum {
        let idx = |k: usize, e: usize| 2 * k + e;
        let conj = (0..2 * d).map(|i| i ^ 1).collect();
        let rot = (0..2 * d).map(|i| idx((i / 2 + 1) % d, i % 2)).collect();
        FieldDatum::new(
            labels("t", 2 * d),
            Perm::from_images(conj).unwrap(),
            vec![Perm::from_images(rot).unwrap()],
        )
        .unwrap()
        .with_field_like(true)
    }

    /// Elements of S₃ as image vectors on {0,1,2}, in a fixed order.
    pub fn s3_elements() -> Vec<Perm> {
        let mut v: Vec<Perm> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .iter()
        .map(|p| Perm::from_images(p.to_vec()).unwrap())
        .collect();
        v.sort();
        v
    }

    /// Left-regular action of a finite permutation group on its own elements.
    pub fn left_regular(elements: &[Perm], g: &Perm) -> Perm {
        let pos: HashMap<&Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p, i)).collect();
        Perm::from_images(elements.iter().map(|x| pos[&g.compose(x)]).collect()).unwrap()
    }

    /// Sextic Galois field with group S₃: embeddings are the elements of S₃,
    /// Galois acts by left translation and conjugation is left translation by
    /// the transposition (0 1).
    pub fn s3_sextic() -> FieldDatum {
        let els = s3_elements();
        let name = |p: &Perm| format!("g{}{}{}", p.apply(0), p.apply(1), p.apply(2));
        let three_cycle = Perm::from_images(vec![1, 2, 0]).unwrap();
        let transposition = Perm::from_images(vec![1, 0, 2]).unwrap();
        FieldDatum::new(
            els.iter().map(name).collect(),
            left_regular(&els, &transposition),
            vec![left_regular(&els, &three_cycle)],
        )
        .unwrap()
        .with_field_like(true)
    }
}

#[cfg(test)]
mod tests {
    use super::models::*;
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_first() {
        let a = p(&[1, 2, 0]);
        let b = p(&[1, 0, 2]);
        // b sends 0 to 1, a sends 1 to 2.
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn imaginary_quadratic_group() {
        let d = imaginary_quadratic();
        let g = group_elements(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.contains(d.conjugation()));
        let n = commutator_normal_closure(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(n, vec![Perm::identity(2)]);
        let part = f1_partition(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(part.blocks(), &[vec![0], vec![1]]);
        assert!(d.totally_imaginary() && !d.totally_real());
    }

    #[test]
    fn cyclic_cubic_totally_real() {
        let d = totally_real_cyclic(3);
        assert_eq!(group_elements(&d, DEFAULT_GROUP_CAP).unwrap().len(), 3);
        assert_eq!(
            commutator_normal_closure(&d, DEFAULT_GROUP_CAP)
                .unwrap()
                .len(),
            1
        );
        assert!(f1_partition(&d, DEFAULT_GROUP_CAP).unwrap().is_discrete());
        assert!(d.totally_real());
    }

    #[test]
    fn s3_sextic_structure() {
        let d = s3_sextic();
        assert!(d.totally_imaginary());
        assert!(d.is_transitive());
        assert_eq!(group_elements(&d, DEFAULT_GROUP_CAP).unwrap().len(), 6);
        let n = commutator_normal_closure(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(n.len(), 3);
        let part = f1_partition(&d, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(part.num_blocks(), 2);
        assert!(part.blocks().iter().all(|b| b.len() == 3));
        // conjugation swaps the two blocks
        let c = d.conjugation();
        for b in part.blocks() {
            let img = part.block_of(c.apply(b[0]));
            assert_ne!(img, part.block_of(b[0]));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let d = s3_sextic();
        let err = group_elements(&d, 4).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let d = s3_sextic();
        let j = d.to_json();
        let back = FieldDatum::from_json(&j).unwrap();
        assert_eq!(back.conjugation(), d.conjugation());
        assert_eq!(back.generators(), d.generators());

        let mut bad = imaginary_quadratic().to_json();
        bad.conjugation.insert("eta_bar".into(), "eta_bar".into());
        // eta -> eta_bar, eta_bar -> eta_bar: not a bijection
        assert!(FieldDatum::from_json(&bad).is_err());

        let mut partial = imaginary_quadratic().to_json();
        partial.conjugation.remove("eta");
        assert!(FieldDatum::from_json(&partial).is_err());
    }

    #[test]
    fn non_involutive_conjugation_rejected() {
        let err = FieldDatum::new(
            vec!["a".into(), "b".into(), "c".into()],
            p(&[1, 2, 0]),
            vec![],
        );
        assert!(err.is_err());
    }

    #[test]
    fn cm_field_has_discrete_partition() {
        let d = cyclic_cm(3);
        assert!(d.totally_imaginary());
        assert_eq!(group_elements(&d, DEFAULT_GROUP_CAP).unwrap().len(), 6);
        assert!(f1_partition(&d, DEFAULT_GROUP_CAP).unwrap().is_discrete());
        assert_eq!(d.complex_places().len(), 3);
    }
}
