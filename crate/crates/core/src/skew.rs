//! Exact arithmetic in the skew group algebra `kQ ∗ G` of a monomial action.
//!
//! Paths compose right to left: for `α: i → j` we have `α = e_j α e_i`, and
//! `p · q` is nonzero only when `q` ends where `p` starts. The product is
//! `(λ g)(λ′ g′) = λ · g(λ′) ⊗ g g′`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::action::ActionTables;
use crate::cyclotomic::CycScalar;
use crate::field::{rat, Field};
use crate::group::{Subgroup, SubgroupCharacter};
use crate::quiver::Quiver;

/// A path given by its start vertex and its arrows in traversal order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn vertex(i: usize) -> Self {
        Path {
            start: i,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Path {
            start: q.arrow(a).source,
            arrows: vec![a],
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.start, |&a| q.arrow(a).target)
    }
}

/// A finite combination of terms `(path, group element index) ↦ scalar`.
#[derive(Clone, Default, PartialEq)]
pub struct SkewElement {
    terms: BTreeMap<(Path, usize), CycScalar>,
}

impl SkewElement {
    pub fn zero() -> Self {
        SkewElement::default()
    }

    pub fn term(path: Path, g: usize, c: CycScalar) -> Self {
        let mut e = SkewElement::zero();
        e.add_term(path, g, c);
        e
    }

    pub fn add_term(&mut self, path: Path, g: usize, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let key = (path, g);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Path, usize), &CycScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, path: &Path, g: usize) -> CycScalar {
        self.terms
            .get(&(path.clone(), g))
            .cloned()
            .unwrap_or_else(CycScalar::zero)
    }

    pub fn add(&self, other: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for ((p, g), c) in &other.terms {
            out.add_term(p.clone(), *g, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SkewElement) -> SkewElement {
        self.add(&other.scale(&CycScalar::from_i64(-1)))
    }

    pub fn scale(&self, s: &CycScalar) -> SkewElement {
        let mut out = SkewElement::zero();
        for ((p, g), c) in &self.terms {
            out.add_term(p.clone(), *g, c * s);
        }
        out
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((p, g), c)| format!("({c})·[{}:{:?}]⊗g{}", p.start, p.arrows, g))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiplication context for `kQ ∗ G`.
#[derive(Clone, Copy)]
pub struct SkewAlgebra<'a> {
    quiver: &'a Quiver,
    tables: &'a ActionTables,
}

impl<'a> SkewAlgebra<'a> {
    pub fn new(quiver: &'a Quiver, tables: &'a ActionTables) -> Self {
        SkewAlgebra { quiver, tables }
    }

    pub fn quiver(&self) -> &'a Quiver {
        self.quiver
    }

    fn root(&self, k: u32) -> CycScalar {
        CycScalar::root_of_unity(self.tables.level(), k as i64)
    }

    /// `g(p) = ζ^k p′`, returned as `(p′, k)`.
    pub fn act_path(&self, g: usize, p: &Path) -> (Path, u32) {
        let mut k = 0;
        let arrows = p
            .arrows
            .iter()
            .map(|&a| {
                let (b, e) = self.tables.arrow(g, a);
                k = (k + e) % self.tables.level();
                b
            })
            .collect();
        (
            Path {
                start: self.tables.vertex(g, p.start),
                arrows,
            },
            k,
        )
    }

    /// `p · q`, defined when `q` ends where `p` starts.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        (q.target(self.quiver) == p.start).then(|| {
            let mut arrows = q.arrows.clone();
            arrows.extend_from_slice(&p.arrows);
            Path {
                start: q.start,
                arrows,
            }
        })
    }

    pub fn mul(&self, x: &SkewElement, y: &SkewElement) -> SkewElement {
        let group = self.tables.group();
        let mut out = SkewElement::zero();
        for ((p, g), c) in &x.terms {
            let ge = group.element_at(*g);
            for ((q, h), d) in &y.terms {
                let (gq, k) = self.act_path(*g, q);
                if let Some(path) = self.compose(p, &gq) {
                    let gh = group.index_of(&group.mul(&ge, &group.element_at(*h)));
                    out.add_term(path, gh, &(c * d) * &self.root(k));
                }
            }
        }
        out
    }

    /// `e_i ⊗ e`.
    pub fn vertex_idempotent(&self, i: usize) -> SkewElement {
        SkewElement::term(Path::vertex(i), 0, CycScalar::one())
    }

    /// The identity `Σ_i e_i ⊗ e`.
    pub fn one(&self) -> SkewElement {
        (0..self.quiver.vertex_count()).fold(SkewElement::zero(), |acc, i| {
            acc.add(&self.vertex_idempotent(i))
        })
    }

    /// `e_{(i,ρ)} = e_i · (1/|G_i|) Σ_{h ∈ G_i} ρ(h) h` for a stabilizer `G_i`.
    pub fn character_idempotent(
        &self,
        i: usize,
        stabilizer: &Subgroup,
        rho: &SubgroupCharacter,
    ) -> SkewElement {
        let group = self.tables.group();
        let lg = group.exponent();
        let weight = CycScalar::from_rational(rat(1, stabilizer.order() as i64));
        let mut out = SkewElement::zero();
        for h in stabilizer.elements() {
            let c = &weight * &CycScalar::root_of_unity(lg, stabilizer.eval(rho, h) as i64);
            out.add_term(Path::vertex(i), group.index_of(h), c);
        }
        out
    }

    /// All idempotents `e_{(i,ρ)}`, `ρ` running over the characters of the stabilizer.
    pub fn idempotents(&self, i: usize, stabilizer: &Subgroup) -> Vec<SkewElement> {
        stabilizer
            .characters()
            .iter()
            .map(|rho| self.character_idempotent(i, stabilizer, rho))
            .collect()
    }

    /// The dual action `g(λ h) = χ_g(h) λ h` of the group element with index `g`.
    pub fn dual_act(&self, g: usize, x: &SkewElement) -> SkewElement {
        let group = self.tables.group();
        let chi = group.character(&group.element_at(g));
        let lg = group.exponent();
        let mut out = SkewElement::zero();
        for ((p, h), c) in &x.terms {
            let v = chi.eval(group, &group.element_at(*h));
            out.add_term(p.clone(), *h, c * &CycScalar::root_of_unity(lg, v as i64));
        }
        out
    }
}

/// Checks idempotency, orthogonality and completeness of a family of idempotents.
pub fn check_idempotent_family(
    alg: &SkewAlgebra<'_>,
    family: &[SkewElement],
    unit: &SkewElement,
) -> Result<(), String> {
    for (a, x) in family.iter().enumerate() {
        for (b, y) in family.iter().enumerate() {
            let p = alg.mul(x, y);
            if a == b && p != *x {
                return Err(format!("idempotent {a} is not idempotent"));
            }
            if a != b && !p.is_zero() {
                return Err(format!("idempotents {a} and {b} are not orthogonal"));
            }
        }
    }
    let sum = family.iter().fold(SkewElement::zero(), |acc, x| acc.add(x));
    if sum != *unit {
        return Err("idempotents do not sum to the vertex idempotent".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{MonomialAction, OrbitData, RootScalar};
    use crate::group::AbelianGroup;

    fn ex51() -> (Quiver, MonomialAction) {
        let q = Quiver::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let minus = RootScalar { num: 1, den: 2 };
        let a = MonomialAction::from_scalars(
            AbelianGroup::cyclic(6),
            vec![(vec![0, 2, 3, 1], vec![(1, minus), (2, minus), (0, minus)])],
        )
        .unwrap();
        (q, a)
    }

    #[test]
    fn idempotents_at_vertex_two() {
        let (q, a) = ex51();
        let t = a.tables(&q);
        let o = OrbitData::new(&q, &t);
        let alg = SkewAlgebra::new(&q, &t);
        let fam = alg.idempotents(1, o.stabilizer_of(1));
        assert_eq!(fam.len(), 2);
        // ½(e₂ + e₂g³) and ½(e₂ − e₂g³).
        let half = CycScalar::from_rational(rat(1, 2));
        let plus = SkewElement::term(Path::vertex(1), 0, half.clone()).add(&SkewElement::term(
            Path::vertex(1),
            3,
            half.clone(),
        ));
        let minus = SkewElement::term(Path::vertex(1), 0, half.clone()).sub(&SkewElement::term(
            Path::vertex(1),
            3,
            half,
        ));
        assert_eq!(fam[0], plus);
        assert_eq!(fam[1], minus);
        check_idempotent_family(&alg, &fam, &alg.vertex_idempotent(1)).unwrap();
        let fam0 = alg.idempotents(0, o.stabilizer_of(0));
        assert_eq!(fam0.len(), 6);
        check_idempotent_family(&alg, &fam0, &alg.vertex_idempotent(0)).unwrap();
    }

    #[test]
    fn associativity_and_dual_action() {
        let (q, a) = ex51();
        let t = a.tables(&q);
        let alg = SkewAlgebra::new(&q, &t);
        let z = CycScalar::root_of_unity(6, 1);
        let x = SkewElement::term(Path::arrow(&q, 0), 1, z.clone()).add(&SkewElement::term(
            Path::vertex(0),
            4,
            CycScalar::one(),
        ));
        let y = SkewElement::term(Path::vertex(1), 2, CycScalar::from_i64(3))
            .add(&SkewElement::term(Path::vertex(0), 5, z.clone()));
        let w = SkewElement::term(Path::arrow(&q, 2), 3, CycScalar::one()).add(&alg.one());
        assert_eq!(alg.mul(&alg.mul(&x, &y), &w), alg.mul(&x, &alg.mul(&y, &w)));
        assert_eq!(alg.mul(&alg.one(), &x), x);
        // The dual action is multiplicative.
        for g in 0..6 {
            assert_eq!(
                alg.dual_act(g, &alg.mul(&x, &y)),
                alg.mul(&alg.dual_act(g, &x), &alg.dual_act(g, &y))
            );
        }
        // g(α) = -β inside the algebra: (e ⊗ g)(α ⊗ e)(e ⊗ g)^{-1}.
        let g = SkewElement::term(Path::vertex(0), 1, CycScalar::one())
            .add(&SkewElement::term(Path::vertex(1), 1, CycScalar::one()))
            .add(&SkewElement::term(Path::vertex(2), 1, CycScalar::one()))
            .add(&SkewElement::term(Path::vertex(3), 1, CycScalar::one()));
        let ginv = (0..4).fold(SkewElement::zero(), |acc, i| {
            acc.add(&SkewElement::term(Path::vertex(i), 5, CycScalar::one()))
        });
        let alpha = SkewElement::term(Path::arrow(&q, 0), 0, CycScalar::one());
        let conj = alg.mul(&alg.mul(&g, &alpha), &ginv);
        assert_eq!(
            conj,
            SkewElement::term(Path::arrow(&q, 1), 0, CycScalar::from_i64(-1))
        );
    }
}
