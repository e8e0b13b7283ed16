//! Finite abelian groups `Z/m_1 × … × Z/m_n`, their subgroups and characters.
//!
//! Character values are roots of unity recorded as exponents of `ζ_L`, where
//! `L` is the exponent of the ambient group. The character `χ_g` attached to
//! `g = (t_i)` is `χ_g(g') = ∏ ξ_i^{t_i s_i}` with `ξ_i = ζ_L^{L/m_i}`.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{McKayError, Result};
use crate::intmat::{smith_normal_form, IntMatrix};

/// An element of an abelian group given by reduced exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub Vec<u32>);

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The group `∏ Z/m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.iter().any(|&m| m == 0) {
            return Err(McKayError::InvalidGroup("cyclic factor of order 0".into()));
        }
        let total: u64 = orders.iter().map(|&m| m as u64).product();
        if total > 1 << 20 {
            return Err(McKayError::InvalidGroup(format!(
                "group of order {total} is too large"
            )));
        }
        Ok(AbelianGroup { orders })
    }

    /// The trivial group with no cyclic factors.
    pub fn trivial() -> Self {
        AbelianGroup { orders: Vec::new() }
    }

    /// `Z/m`.
    pub fn cyclic(m: u32) -> Self {
        AbelianGroup::new(vec![m]).expect("valid cyclic order")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&m| m as usize).product()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |a, &m| a.lcm(&m))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.identity();
        e.0[i] = 1 % self.orders[i];
        e
    }

    /// Reduces arbitrary integer exponents.
    pub fn element(&self, exps: &[i64]) -> GroupElement {
        assert_eq!(exps.len(), self.rank());
        GroupElement(
            exps.iter()
                .zip(&self.orders)
                .map(|(&t, &m)| t.rem_euclid(m as i64) as u32)
                .collect(),
        )
    }

    /// Index of an element in the lexicographic enumeration.
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.orders)
            .fold(0, |acc, (&t, &m)| acc * m as usize + t as usize)
    }

    /// The element with the given lexicographic index.
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut exps = vec![0u32; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.orders[i] as usize;
            exps[i] = (idx % m) as u32;
            idx /= m;
        }
        GroupElement(exps)
    }

    /// All elements, lexicographically ordered with the first coordinate most significant.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        )
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        )
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.element(&a.0.iter().map(|&x| x as i64 * k).collect::<Vec<_>>())
    }

    pub fn element_order(&self, a: &GroupElement) -> u32 {
        a.0.iter()
            .zip(&self.orders)
            .fold(1, |acc, (&x, &m)| acc.lcm(&(m / m.gcd(&x))))
    }

    /// Exponent `k` with `χ_a(b) = ζ_L^k`, `L` the group exponent.
    pub fn pairing(&self, a: &GroupElement, b: &GroupElement) -> u32 {
        let l = self.exponent() as u64;
        let s: u64 =
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((&t, &u), &m)| t as u64 * u as u64 * (l / m as u64))
                .sum();
        (s % l) as u32
    }

    /// The character `χ_g`.
    pub fn character(&self, g: &GroupElement) -> Character {
        Character(g.clone())
    }

    /// All elements of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity()];
        seen[0] = true;
        let mut k = 0;
        while k < out.len() {
            let x = out[k].clone();
            for g in gens {
                let y = self.mul(&x, g);
                let i = self.index_of(&y);
                if !seen[i] {
                    seen[i] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort();
        out
    }
}

/// A character `χ_g` of the ambient group, identified with `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Character(pub GroupElement);

impl Character {
    /// Exponent of `χ(h)` at the level of the group exponent.
    pub fn eval(&self, group: &AbelianGroup, h: &GroupElement) -> u32 {
        group.pairing(&self.0, h)
    }
}

/// A character of a subgroup, in coordinates of the subgroup's invariant-factor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgroupCharacter(pub Vec<u32>);

impl fmt::Display for SubgroupCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "ρ[{}]", parts.join(","))
    }
}

/// A subgroup in invariant-factor form.
///
/// The basis elements `h_k` have orders `e_1 | e_2 | …`, all greater than one,
/// and every element has unique coordinates `z_k mod e_k`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: AbelianGroup,
    factors: Vec<u32>,
    basis: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    // Coordinates: x ↦ y = xV, c_k = y_k / d_k, then z = cV'.
    lattice_v: IntMatrix,
    lattice_d: Vec<i64>,
    coord_v: IntMatrix,
    coord_pos: Vec<usize>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated_by(ambient: &AbelianGroup, gens: &[GroupElement]) -> Subgroup {
        let n = ambient.rank();
        let elements = ambient.span(gens);
        if n == 0 {
            return Subgroup {
                ambient: ambient.clone(),
                factors: Vec::new(),
                basis: Vec::new(),
                elements,
                lattice_v: IntMatrix::zeros(0, 0),
                lattice_d: Vec::new(),
                coord_v: IntMatrix::zeros(0, 0),
                coord_pos: Vec::new(),
            };
        }
        let mut rows: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| g.0.iter().map(|&x| x as i64).collect())
            .collect();
        for (i, &m) in ambient.orders.iter().enumerate() {
            let mut r = vec![0i64; n];
            r[i] = m as i64;
            rows.push(r);
        }
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        let lattice_d: Vec<i64> = snf.invariant_factors();
        let v_inv = snf.v.unimodular_inverse().expect("unimodular");
        let lattice_basis: Vec<Vec<i64>> = (0..n)
            .map(|k| v_inv.row(k).iter().map(|&x| x * lattice_d[k]).collect())
            .collect();
        let coords = |x: &[i64]| -> Vec<i64> {
            let y = snf.v.vec_mul(x);
            y.iter().zip(&lattice_d).map(|(a, d)| a / d).collect()
        };
        // Relations m_i e_i in lattice coordinates.
        let rel_rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0i64; n];
                r[i] = ambient.orders[i] as i64;
                coords(&r)
            })
            .collect();
        let snf2 = smith_normal_form(&IntMatrix::from_rows(&rel_rows));
        let all_factors = snf2.invariant_factors();
        let v2_inv = snf2.v.unimodular_inverse().expect("unimodular");
        let coord_pos: Vec<usize> = (0..n).filter(|&k| all_factors[k] > 1).collect();
        let factors: Vec<u32> = coord_pos.iter().map(|&k| all_factors[k] as u32).collect();
        let basis: Vec<GroupElement> = coord_pos
            .iter()
            .map(|&k| {
                let f = v2_inv.row(k);
                let x: Vec<i64> = (0..n)
                    .map(|j| (0..n).map(|l| f[l] * lattice_basis[l][j]).sum())
                    .collect();
                ambient.element(&x)
            })
            .collect();
        let mut sub = Subgroup {
            ambient: ambient.clone(),
            factors,
            basis,
            elements,
            lattice_v: snf.v.clone(),
            lattice_d,
            coord_v: snf2.v.clone(),
            coord_pos,
        };
        sub.prefer_standard_basis();
        debug_assert_eq!(
            sub.factors.iter().map(|&e| e as usize).product::<usize>(),
            sub.elements.len()
        );
        sub
    }

    /// The whole group.
    pub fn full(ambient: &AbelianGroup) -> Subgroup {
        let gens: Vec<GroupElement> = (0..ambient.rank()).map(|i| ambient.generator(i)).collect();
        Subgroup::generated_by(ambient, &gens)
    }

    // When the subgroup is the whole group and its cyclic orders already form a
    // divisibility chain, use the standard generators as basis.
    fn prefer_standard_basis(&mut self) {
        let orders = &self.ambient.orders;
        let chain = orders.iter().all(|&m| m > 1) && orders.windows(2).all(|w| w[1] % w[0] == 0);
        if chain
            && self.elements.len() == self.ambient.order()
            && self.factors.as_slice() == orders.as_slice()
        {
            self.basis = (0..orders.len())
                .map(|i| self.ambient.generator(i))
                .collect();
            self.lattice_v = IntMatrix::identity(orders.len());
            self.lattice_d = vec![1; orders.len()];
            self.coord_v = IntMatrix::identity(orders.len());
            self.coord_pos = (0..orders.len()).collect();
        }
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Invariant factors `e_1 | e_2 | …`, all greater than one.
    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Coordinates of `g` in the invariant-factor basis, `None` outside the subgroup.
    pub fn coordinates(&self, g: &GroupElement) -> Option<Vec<u32>> {
        if !self.contains(g) {
            return None;
        }
        let x: Vec<i64> = g.0.iter().map(|&t| t as i64).collect();
        let y = self.lattice_v.vec_mul(&x);
        let c: Vec<i64> = y.iter().zip(&self.lattice_d).map(|(a, d)| a / d).collect();
        let z = self.coord_v.vec_mul(&c);
        Some(
            self.coord_pos
                .iter()
                .zip(&self.factors)
                .map(|(&k, &e)| z[k].rem_euclid(e as i64) as u32)
                .collect(),
        )
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let common: Vec<GroupElement> = self
            .elements
            .iter()
            .filter(|g| other.contains(g))
            .cloned()
            .collect();
        Subgroup::generated_by(&self.ambient, &common)
    }

    /// All characters, lexicographic in their coordinates; the trivial one first.
    pub fn characters(&self) -> Vec<SubgroupCharacter> {
        let mut out = vec![Vec::new()];
        for &e in &self.factors {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u32>| (0..e).map(move |s| [p.clone(), vec![s]].concat()))
                .collect();
        }
        out.into_iter().map(SubgroupCharacter).collect()
    }

    pub fn trivial_character(&self) -> SubgroupCharacter {
        SubgroupCharacter(vec![0; self.factors.len()])
    }

    /// Exponent of `ρ(h)` at the level of the ambient exponent.
    pub fn eval(&self, rho: &SubgroupCharacter, h: &GroupElement) -> u32 {
        let l = self.ambient.exponent() as u64;
        let z = self.coordinates(h).expect("element outside the subgroup");
        let s: u64 = z
            .iter()
            .zip(&rho.0)
            .zip(&self.factors)
            .map(|((&a, &b), &e)| a as u64 * b as u64 * (l / e as u64))
            .sum();
        (s % l) as u32
    }

    /// Pointwise product of characters.
    pub fn mul_characters(
        &self,
        a: &SubgroupCharacter,
        b: &SubgroupCharacter,
    ) -> SubgroupCharacter {
        SubgroupCharacter(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &e)| (x + y) % e)
                .collect(),
        )
    }

    pub fn inverse_character(&self, a: &SubgroupCharacter) -> SubgroupCharacter {
        SubgroupCharacter(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &e)| (e - x) % e)
                .collect(),
        )
    }

    /// The character with the given values, if `values` is a homomorphism on the subgroup.
    pub fn character_from_values(
        &self,
        values: impl Fn(&GroupElement) -> u32,
    ) -> Option<SubgroupCharacter> {
        let l = self.ambient.exponent();
        let mut s = Vec::with_capacity(self.basis.len());
        for (h, &e) in self.basis.iter().zip(&self.factors) {
            let v = values(h) % l;
            let step = l / e;
            if v % step != 0 {
                return None;
            }
            s.push(v / step);
        }
        let chi = SubgroupCharacter(s);
        self.elements
            .iter()
            .all(|h| self.eval(&chi, h) == values(h) % l)
            .then_some(chi)
    }

    /// Restriction of an ambient character.
    pub fn restrict(&self, chi: &Character) -> SubgroupCharacter {
        self.character_from_values(|h| chi.eval(&self.ambient, h))
            .expect("restriction is a character")
    }

    /// Restriction of a character of `self` to a subgroup `k ≤ self`.
    pub fn restrict_to(&self, rho: &SubgroupCharacter, k: &Subgroup) -> SubgroupCharacter {
        k.character_from_values(|h| self.eval(rho, h))
            .expect("restriction is a character")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn element_enumeration() {
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        let els = g.elements();
        assert_eq!(els.len(), 6);
        assert_eq!(els[1], GroupElement(vec![0, 1]));
        for (i, e) in els.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
        }
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.element_order(&GroupElement(vec![1, 1])), 6);
    }

    #[test]
    fn pairing_values() {
        // Z/2 × Z/4: ξ1 = ζ4^2, ξ2 = ζ4.
        let g = AbelianGroup::new(vec![2, 4]).unwrap();
        let a = GroupElement(vec![1, 1]);
        let b = GroupElement(vec![1, 3]);
        assert_eq!(g.pairing(&a, &b), (2 + 3) % 4);
        assert_eq!(g.pairing(&a, &g.identity()), 0);
    }

    #[test]
    fn subgroup_invariant_factors() {
        let g = AbelianGroup::new(vec![4, 6]).unwrap();
        let full = Subgroup::full(&g);
        assert_eq!(full.invariant_factors(), &[2, 12]);
        assert_eq!(full.order(), 24);
        let h = Subgroup::generated_by(&g, &[GroupElement(vec![2, 0]), GroupElement(vec![0, 3])]);
        assert_eq!(h.invariant_factors(), &[2, 2]);
        let c = Subgroup::generated_by(&g, &[GroupElement(vec![1, 1])]);
        assert_eq!(c.invariant_factors(), &[12]);
        assert_eq!(h.intersection(&c).order(), 2);
        let t = Subgroup::generated_by(&g, &[]);
        assert_eq!(t.order(), 1);
        assert_eq!(t.characters().len(), 1);
    }

    #[test]
    fn standard_basis_for_chains() {
        let g = AbelianGroup::new(vec![2, 2]).unwrap();
        let full = Subgroup::full(&g);
        assert_eq!(full.basis(), &[g.generator(0), g.generator(1)]);
        let z3 = AbelianGroup::cyclic(3);
        let f = Subgroup::full(&z3);
        assert_eq!(
            f.restrict(&z3.character(&z3.generator(0))),
            SubgroupCharacter(vec![1])
        );
    }

    fn arb_group() -> impl Strategy<Value = AbelianGroup> {
        prop::collection::vec(1u32..7, 0..3).prop_map(|o| AbelianGroup::new(o).unwrap())
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear(g in arb_group(), seeds in prop::collection::vec(0usize..1000, 3)) {
            let n = g.order();
            let a = g.element_at(seeds[0] % n);
            let b = g.element_at(seeds[1] % n);
            let c = g.element_at(seeds[2] % n);
            let l = g.exponent();
            prop_assert_eq!(g.pairing(&g.mul(&a, &b), &c), (g.pairing(&a, &c) + g.pairing(&b, &c)) % l);
            prop_assert_eq!(g.pairing(&a, &b), g.pairing(&b, &a));
        }

        #[test]
        fn subgroup_coordinates_are_faithful(g in arb_group(), seeds in prop::collection::vec(0usize..1000, 0..3)) {
            let n = g.order();
            let gens: Vec<GroupElement> = seeds.iter().map(|&s| g.element_at(s % n)).collect();
            let h = Subgroup::generated_by(&g, &gens);
            let prod: usize = h.invariant_factors().iter().map(|&e| e as usize).product();
            prop_assert_eq!(prod, h.order());
            for w in h.invariant_factors().windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            for x in h.elements() {
                let z = h.coordinates(x).unwrap();
                let rebuilt = h.basis().iter().zip(&z).fold(g.identity(), |acc, (b, &k)| g.mul(&acc, &g.pow(b, k as i64)));
                prop_assert_eq!(&rebuilt, x);
            }
            let chars = h.characters();
            prop_assert_eq!(chars.len(), h.order());
            for chi in &chars {
                for x in h.elements() {
                    for y in h.elements() {
                        let l = g.exponent();
                        prop_assert_eq!(h.eval(chi, &g.mul(x, y)), (h.eval(chi, x) + h.eval(chi, y)) % l);
                    }
                }
            }
        }
    }
}
