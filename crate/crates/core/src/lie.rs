//! Type A root data and characters of the compact torus of SU(n).
//!
//! A character `z ↦ ∏ z_j^{p_j} z̄_j^{q_j}` of the diagonal torus restricts to
//! the compact torus (`|z_j| = 1`, `∏ z_j = 1`) as `∏_{j<n} z_j^{m_j}` with
//! `m_j = r_j − r_n`, `r = p − q`. [`CompactTorusCharacter`] stores `m`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::LocalWeight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    n: usize,
    positive_roots: Vec<(usize, usize)>,
}

impl RootSystem {
    /// Positive roots `e_i − e_j`, `i < j`, in lexicographic order (0-based).
    pub fn type_a(n: usize) -> RootSystem {
        let positive_roots = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        RootSystem { n, positive_roots }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positive_roots(&self) -> &[(usize, usize)] {
        &self.positive_roots
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Ambient vector of the root `e_i − e_j`.
    pub fn root_vector(&self, root: (usize, usize)) -> Vec<i64> {
        let mut v = vec![0; self.n];
        v[root.0] += 1;
        v[root.1] -= 1;
        v
    }

    pub fn root_character(&self, root: (usize, usize)) -> CompactTorusCharacter {
        restrict_to_compact_torus(&self.root_vector(root), &vec![0; self.n])
    }
}

/// Character of the compact torus in canonical form (last coordinate eliminated).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CompactTorusCharacter(pub Vec<i64>);

impl fmt::Debug for CompactTorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl CompactTorusCharacter {
    pub fn zero(n: usize) -> Self {
        CompactTorusCharacter(vec![0; n.saturating_sub(1)])
    }

    /// Rank `n` of the ambient `GL_n`.
    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        CompactTorusCharacter(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        CompactTorusCharacter(self.0.iter().map(|a| -a).collect())
    }
}

/// `2ρ` in both its ambient and compact-torus forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoRho {
    pub ambient: Vec<i64>,
    pub compact: CompactTorusCharacter,
}

pub fn two_rho(n: usize) -> TwoRho {
    let n_i = n as i64;
    let ambient = (1..=n_i).map(|j| n_i - 2 * j + 1).collect();
    let compact = CompactTorusCharacter((1..n_i).map(|j| 2 * (n_i - j)).collect());
    TwoRho { ambient, compact }
}

/// Longest Weyl element: coordinate reversal.
pub fn w0_apply(lw: &LocalWeight) -> LocalWeight {
    LocalWeight(lw.0.iter().rev().copied().collect())
}

/// `−w₀(λ)`, the highest weight of the contragredient.
pub fn neg_w0(lw: &LocalWeight) -> LocalWeight {
    LocalWeight(lw.0.iter().rev().map(|x| -x).collect())
}

/// Restriction of `∏ z_j^{p_j} z̄_j^{q_j}` to the compact torus.
pub fn restrict_to_compact_torus(p: &[i64], q: &[i64]) -> CompactTorusCharacter {
    assert_eq!(p.len(), q.len(), "exponent vectors must have equal length");
    let Some(last) = p.len().checked_sub(1) else {
        return CompactTorusCharacter(Vec::new());
    };
    let r_n = p[last] - q[last];
    CompactTorusCharacter((0..last).map(|j| p[j] - q[j] - r_n).collect())
}

/// The unique sum-zero ambient vector restricting to `g`; fails when `g` is
/// not in the root lattice.
pub fn ambient_lift(g: &CompactTorusCharacter) -> Result<Vec<i64>> {
    let n = g.rank() as i64;
    let s: i64 = g.0.iter().sum();
    if s.rem_euclid(n) != 0 {
        return Err(Error::invalid(format!(
            "character {g:?} is not in the root lattice (coordinate sum {s} not divisible by {n})"
        )));
    }
    let r_n = -s / n;
    let mut v: Vec<i64> = g.0.iter().map(|m| m + r_n).collect();
    v.push(r_n);
    Ok(v)
}

/// `x ≤ y` in the positive-root-cone order on sum-zero vectors: `y − x` is a
/// nonnegative integer combination of simple roots.
pub fn root_cone_le(x: &[i64], y: &[i64]) -> bool {
    let mut partial = 0i64;
    for (a, b) in x.iter().zip(y) {
        partial += b - a;
        if partial < 0 {
            return false;
        }
    }
    partial == 0
}

/// Whether `−2ρ ≤ γ ≤ 2ρ`.
pub fn dominance_interval_check(g: &CompactTorusCharacter, n: usize) -> Result<bool> {
    if g.rank() != n {
        return Err(Error::invalid(format!(
            "character {g:?} has rank {} but n = {n}",
            g.rank()
        )));
    }
    let lift = ambient_lift(g)?;
    let rho2 = two_rho(n).ambient;
    let neg: Vec<i64> = rho2.iter().map(|x| -x).collect();
    Ok(root_cone_le(&lift, &rho2) && root_cone_le(&neg, &lift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_rho_values() {
        let t = two_rho(2);
        assert_eq!(t.ambient, vec![1, -1]);
        assert_eq!(t.compact.0, vec![2]);
        let t = two_rho(3);
        assert_eq!(t.ambient, vec![2, 0, -2]);
        assert_eq!(t.compact.0, vec![4, 2]);
        assert!(two_rho(1).compact.0.is_empty());
    }

    #[test]
    fn two_rho_is_sum_of_positive_roots() {
        for n in 1..=7 {
            let rs = RootSystem::type_a(n);
            assert_eq!(rs.num_positive(), n * (n - 1) / 2);
            let sum = rs
                .positive_roots()
                .iter()
                .fold(CompactTorusCharacter::zero(n), |acc, &r| {
                    acc.add(&rs.root_character(r))
                });
            assert_eq!(sum, two_rho(n).compact, "n = {n}");
        }
    }

    #[test]
    fn w0_examples() {
        let lw = LocalWeight(vec![5, 0]);
        assert_eq!(w0_apply(&lw).0, vec![0, 5]);
        assert_eq!(neg_w0(&lw).0, vec![0, -5]);
        assert_eq!(w0_apply(&LocalWeight(vec![3, 1, 0])).0, vec![0, 1, 3]);
        // λ* = −w₀(k,0) + k(1,1) = (k,0)
        let k = 4;
        let star: Vec<i64> = neg_w0(&LocalWeight(vec![k, 0]))
            .0
            .iter()
            .map(|x| x + k)
            .collect();
        assert_eq!(star, vec![k, 0]);
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_to_compact_torus(&[1, -1], &[0, 0]).0, vec![2]);
        assert!(restrict_to_compact_torus(&[3, 1, 4], &[3, 1, 4]).is_zero());
        let k = 3;
        assert_eq!(restrict_to_compact_torus(&[k, 0], &[0, k]).0, vec![2 * k]);
        assert!(restrict_to_compact_torus(&[], &[]).0.is_empty());
    }

    #[test]
    fn interval_examples() {
        for n in 1..=5 {
            assert!(dominance_interval_check(&two_rho(n).compact, n).unwrap());
            assert!(dominance_interval_check(&two_rho(n).compact.neg(), n).unwrap());
            assert!(dominance_interval_check(&CompactTorusCharacter::zero(n), n).unwrap());
        }
        assert!(!dominance_interval_check(&CompactTorusCharacter(vec![4]), 2).unwrap());
        // (1) for n = 2 is the fundamental weight, not in the root lattice
        assert!(dominance_interval_check(&CompactTorusCharacter(vec![1]), 2).is_err());
    }

    proptest! {
        #[test]
        fn w0_is_involution_and_reverses_dominance(mut b in prop::collection::vec(-20i64..20, 1..7)) {
            b.sort_unstable_by(|x, y| y.cmp(x));
            let lw = LocalWeight(b);
            prop_assert_eq!(w0_apply(&w0_apply(&lw)), lw.clone());
            let rev = w0_apply(&lw);
            prop_assert!(rev.0.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn restriction_additive_and_kills_shifts(
            p1 in prop::collection::vec(-9i64..9, 4),
            q1 in prop::collection::vec(-9i64..9, 4),
            p2 in prop::collection::vec(-9i64..9, 4),
            q2 in prop::collection::vec(-9i64..9, 4),
            t in -9i64..9,
        ) {
            let add = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
            let lhs = restrict_to_compact_torus(&add(&p1, &p2), &add(&q1, &q2));
            let rhs = restrict_to_compact_torus(&p1, &q1).add(&restrict_to_compact_torus(&p2, &q2));
            prop_assert_eq!(lhs, rhs);
            let shifted: Vec<i64> = p1.iter().map(|x| x + t).collect();
            prop_assert_eq!(restrict_to_compact_torus(&shifted, &q1), restrict_to_compact_torus(&p1, &q1));
        }

        #[test]
        fn lift_restricts_back(m in prop::collection::vec(-12i64..12, 0..5)) {
            let n = m.len() as i64 + 1;
            let g = CompactTorusCharacter(m);
            match ambient_lift(&g) {
                Ok(v) => {
                    prop_assert_eq!(v.iter().sum::<i64>(), 0);
                    prop_assert_eq!(restrict_to_compact_torus(&v, &vec![0; v.len()]), g);
                }
                Err(_) => prop_assert!(g.0.iter().sum::<i64>().rem_euclid(n) != 0),
            }
        }
    }
}
