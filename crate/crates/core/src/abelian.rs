//! Finite abelian groups given as products of cyclic groups.
//!
//! A group is `Z_{n_1} x ... x Z_{n_l}` and its elements are mixed-radix
//! residue vectors. Nothing here requires the factors to be in invariant-factor
//! form; [`AbelianGroup::canonicalize`] produces that form when a canonical
//! representative of the isomorphism class is needed.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on group orders handled by this crate.
pub const MAX_GROUP_ORDER: u64 = 1 << 31;

/// `Z_{n_1} x Z_{n_2} x ... x Z_{n_l}`; the empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGroup {
    orders: Vec<u64>,
}

impl TryFrom<RawGroup> for AbelianGroup {
    type Error = Error;

    fn try_from(raw: RawGroup) -> Result<Self> {
        AbelianGroup::new(raw.orders)
    }
}

/// A group element as a residue vector, componentwise reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic factor of order {bad}; every factor must have order at least 2"
            )));
        }
        let mut total: u64 = 1;
        for &o in &orders {
            total = total
                .checked_mul(o)
                .filter(|&t| t < MAX_GROUP_ORDER)
                .ok_or_else(|| {
                    Error::InvalidGroup(format!("group order exceeds {MAX_GROUP_ORDER}"))
                })?;
        }
        Ok(Self { orders })
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            Ok(Self::trivial())
        } else {
            Self::new(vec![n])
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors in this presentation.
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`, the product of the factor orders.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.orders.len()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its factor order.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        let residues = coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.orders.len() {
            return Err(Error::DimensionMismatch {
                expected: self.orders.len(),
                found,
            });
        }
        Ok(())
    }

    /// Checks that `a` is a well-formed element of this group.
    pub fn contains(&self, a: &GroupElement) -> bool {
        a.residues.len() == self.orders.len()
            && a.residues.iter().zip(&self.orders).all(|(&r, &n)| r < n)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        self.check_len(a.residues.len())?;
        if !self.contains(a) {
            return Err(Error::InvalidGroup(format!(
                "element {a} is not reduced modulo {:?}",
                self.orders
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.scale(-1, a)
    }

    /// `m * a`, with negative `m` meaning `|m|` copies of `-a`.
    pub fn scale(&self, m: i64, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        let residues = a
            .residues
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| {
                let m = m.rem_euclid(n as i64) as u128;
                ((m * x as u128) % n as u128) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// Number of non-zero `x` with `q x = 0`; equals `prod gcd(q, n_i) - 1`.
    fn count_killed_by(&self, q: u64) -> u64 {
        self.orders.iter().map(|&n| n.gcd(&q)).product::<u64>() - 1
    }

    /// Number of elements of order exactly 2.
    pub fn count_order2(&self) -> u64 {
        self.count_killed_by(2)
    }

    /// Number of elements of order exactly 3.
    pub fn count_order3(&self) -> u64 {
        self.count_killed_by(3)
    }

    /// Rewrites the group in invariant-factor form, largest factor first,
    /// so that each factor is divisible by the next.
    pub fn canonicalize(&self) -> AbelianGroup {
        let mut by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &n in &self.orders {
            for (p, e) in factorize(n) {
                match by_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, exps)) => exps.push(e),
                    None => by_prime.push((p, vec![e])),
                }
            }
        }
        let len = by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in factors.iter_mut().zip(exps) {
                *slot *= p.pow(e);
            }
        }
        AbelianGroup { orders: factors }
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    pub fn is_cyclic(&self) -> bool {
        self.canonicalize().rank() <= 1
    }

    /// Returns `p` when the group is `F_p^r` for some `r >= 1`.
    pub fn elementary_prime(&self) -> Option<u64> {
        let first = *self.orders.first()?;
        if !is_prime(first) || self.orders.iter().any(|&n| n != first) {
            return None;
        }
        Some(first)
    }

    /// Mixed-radix index of `a`, with the last coordinate varying fastest.
    pub fn index_of(&self, a: &GroupElement) -> u64 {
        a.residues
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&r, &n)| acc * n + r)
    }

    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut residues = vec![0; self.orders.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupElement { residues }
    }

    /// Every element exactly once, in mixed-radix lexicographic order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element_at(i))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z_{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// in invariant-factor form and sorted lexicographically by that form.
pub fn groups_of_order(n: u64) -> Result<Vec<AbelianGroup>> {
    if n == 0 || n >= MAX_GROUP_ORDER {
        return Err(Error::InvalidGroup(format!(
            "cannot enumerate groups of order {n}"
        )));
    }
    let mut acc: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for partial in &acc {
            for part in partitions(e) {
                let mut factors = partial.clone();
                if factors.len() < part.len() {
                    factors.resize(part.len(), 1);
                }
                for (slot, k) in factors.iter_mut().zip(&part) {
                    *slot *= p.pow(*k);
                }
                next.push(factors);
            }
        }
        acc = next;
    }
    let mut groups: Vec<AbelianGroup> = acc
        .into_iter()
        .map(|orders| AbelianGroup { orders })
        .collect();
    groups.sort_by(|a, b| a.orders.cmp(&b.orders));
    Ok(groups)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// All partitions of `e` into non-increasing positive parts.
pub fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(orders: &[u64]) -> AbelianGroup {
        AbelianGroup::new(orders.to_vec()).unwrap()
    }

    fn brute_count(group: &AbelianGroup, q: i64) -> u64 {
        group
            .elements()
            .filter(|x| !x.is_zero() && group.scale(q, x).unwrap().is_zero())
            .count() as u64
    }

    #[test]
    fn orders() {
        assert_eq!(AbelianGroup::trivial().order(), 1);
        assert_eq!(g(&[2, 2, 2, 2]).order(), 16);
        assert_eq!(g(&[7]).order(), 7);
    }

    #[test]
    fn rejects_degenerate_factors() {
        assert!(AbelianGroup::new(vec![1]).is_err());
        assert!(AbelianGroup::new(vec![4, 0]).is_err());
        assert!(AbelianGroup::new(vec![1 << 16, 1 << 16]).is_err());
    }

    #[test]
    fn arithmetic() {
        let z7 = g(&[7]);
        let four = z7.element(&[4]).unwrap();
        assert_eq!(z7.scale(3, &four).unwrap().residues(), &[5]);
        let two = z7.element(&[2]).unwrap();
        assert_eq!(z7.scale(-1, &two).unwrap().residues(), &[5]);
        assert!(z7.scale(0, &two).unwrap().is_zero());

        let h = g(&[4, 2]);
        let a = h.element(&[3, 1]).unwrap();
        let b = h.element(&[2, 1]).unwrap();
        assert_eq!(h.add(&a, &b).unwrap().residues(), &[1, 0]);
    }

    #[test]
    fn dimension_mismatch() {
        let h = g(&[4, 2]);
        let bad = g(&[7]).element(&[1]).unwrap();
        assert!(matches!(
            h.add(&bad, &h.zero()),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn order_counts() {
        assert_eq!(g(&[2, 2, 2, 2]).count_order2(), 15);
        assert_eq!(g(&[16]).count_order2(), 1);
        assert_eq!(g(&[4, 2, 2]).count_order2(), 7);
        assert_eq!(g(&[3, 3, 3, 3, 3]).count_order3(), 242);
        assert_eq!(g(&[243]).count_order3(), 2);
        assert_eq!(g(&[27, 9]).count_order3(), 8);
    }

    #[test]
    fn enumeration_order() {
        let els: Vec<Vec<u64>> = g(&[2, 2]).elements().map(|e| e.residues).collect();
        assert_eq!(els, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(g(&[2]).elements().count(), 2);
        assert_eq!(g(&[7]).elements().count(), 7);
        assert_eq!(AbelianGroup::trivial().elements().count(), 1);
    }

    #[test]
    fn groups_of_small_orders() {
        let sixteen: Vec<Vec<u64>> = groups_of_order(16)
            .unwrap()
            .into_iter()
            .map(|g| g.orders)
            .collect();
        assert_eq!(
            sixteen,
            vec![
                vec![2, 2, 2, 2],
                vec![4, 2, 2],
                vec![4, 4],
                vec![8, 2],
                vec![16]
            ]
        );
        assert_eq!(groups_of_order(7).unwrap(), vec![g(&[7])]);
        let ninety_nine = groups_of_order(99).unwrap();
        assert_eq!(ninety_nine, vec![g(&[33, 3]), g(&[99])]);
        assert!(ninety_nine[0].is_isomorphic(&g(&[3, 3, 11])));
        assert!(ninety_nine[1].is_isomorphic(&g(&[9, 11])));
        assert_eq!(groups_of_order(1).unwrap(), vec![AbelianGroup::trivial()]);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g(&[2, 3]).canonicalize(), g(&[6]));
        assert_eq!(g(&[2, 4, 2]).canonicalize(), g(&[4, 2, 2]));
        assert_eq!(g(&[6, 10]).canonicalize(), g(&[30, 2]));
        assert!(g(&[9, 11]).is_cyclic());
        assert!(!g(&[3, 33]).is_cyclic());
        assert_eq!(g(&[3, 3, 3]).elementary_prime(), Some(3));
        assert_eq!(g(&[9, 3]).elementary_prime(), None);
    }

    fn partition_count(e: u32) -> usize {
        // p(e) via the standard dp over part sizes
        let e = e as usize;
        let mut dp = vec![0usize; e + 1];
        dp[0] = 1;
        for part in 1..=e {
            for s in part..=e {
                dp[s] += dp[s - part];
            }
        }
        dp[e]
    }

    #[test]
    fn group_counts_match_partition_products() {
        for n in 1..=600u64 {
            let expected: usize = factorize(n)
                .iter()
                .map(|&(_, e)| partition_count(e))
                .product();
            let groups = groups_of_order(n).unwrap();
            assert_eq!(groups.len(), expected, "order {n}");
            for (i, a) in groups.iter().enumerate() {
                assert_eq!(a.order(), n);
                assert_eq!(&a.canonicalize(), a);
                for b in &groups[i + 1..] {
                    assert!(!a.is_isomorphic(b));
                }
            }
        }
    }

    #[test]
    fn order_counts_match_enumeration() {
        for n in 1..=512u64 {
            for group in groups_of_order(n).unwrap() {
                assert_eq!(group.count_order2(), brute_count(&group, 2), "{group}");
                assert_eq!(group.count_order3(), brute_count(&group, 3), "{group}");
            }
        }
    }

    fn arb_group() -> impl Strategy<Value = AbelianGroup> {
        prop::collection::vec(2u64..=12, 0..4).prop_map(|o| AbelianGroup::new(o).unwrap())
    }

    proptest! {
        #[test]
        fn canonicalize_preserves_invariants(group in arb_group()) {
            let c = group.canonicalize();
            prop_assert_eq!(c.order(), group.order());
            prop_assert_eq!(c.count_order2(), group.count_order2());
            prop_assert_eq!(c.count_order3(), group.count_order3());
            for w in c.orders().windows(2) {
                prop_assert_eq!(w[0] % w[1], 0);
            }
        }

        #[test]
        fn lagrange(group in arb_group(), seed in any::<u64>()) {
            let a = group.element_at(seed % group.order());
            prop_assert!(group.scale(group.order() as i64, &a).unwrap().is_zero());
            prop_assert_eq!(group.index_of(&a), seed % group.order());
        }
    }
}
