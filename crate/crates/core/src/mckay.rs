//! The generalized McKay quiver `Q̂` of a monomial action, the induced action
//! of `G` on `Q̂`, and the double construction `Q̂̂ ≅ Q`.
//!
//! Vertices are pairs `(i, ρ)` with `i` a representative and `ρ` a character
//! of `G_i`. For a representative pair `(i′, j)` and an arrow `α′: i′ → j`
//! with `u(α′) = r(u) α′` on `G_{i′} ∩ G_j`, there is an arrow
//! `(i, ρ) → (j, σ)` exactly when `ρ = σ · r` on `G_{i′} ∩ G_j`.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::Serialize;

use crate::action::{validate, ActionTables, GeneratorAction, MonomialAction, OrbitData};
use crate::cyclotomic::CycScalar;
use crate::error::{McKayError, Result};
use crate::group::{Subgroup, SubgroupCharacter};
use crate::quiver::Quiver;
use crate::skew::{Path, SkewAlgebra, SkewElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayVertex {
    /// Orbit number in representative order.
    pub orbit: usize,
    /// The representative vertex of `Q`.
    pub rep: usize,
    pub character: SubgroupCharacter,
}

#[derive(Clone, Debug)]
pub struct McKayArrow {
    pub source: usize,
    pub target: usize,
    /// The arrow `α′: i′ → j` of `Q` it comes from.
    pub q_arrow: usize,
    pub q_arrow_orbit: usize,
    /// Index of the transporter `κ_{i′}`.
    pub transporter: usize,
    /// Basis element `e_σ (α′ ⊗ κ_{i′}) e_ρ`, scaled to coefficient 1 at `(α′, κ_{i′})`.
    pub basis: SkewElement,
}

#[derive(Clone, Debug)]
pub struct McKayQuiver {
    pub quiver: Quiver,
    pub vertices: Vec<McKayVertex>,
    pub arrows: Vec<McKayArrow>,
    /// The induced action of `G` on `Q̂`.
    pub induced: MonomialAction,
}

impl McKayQuiver {
    pub fn vertex_index(&self, orbit: usize, character: &SubgroupCharacter) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.orbit == orbit && &v.character == character)
    }

    /// Vertices of `Q̂` lying over each orbit of `Q`.
    pub fn vertices_over(&self, orbit: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.vertices[v].orbit == orbit)
            .collect()
    }
}

/// Everything derived from a validated action.
#[derive(Clone, Debug)]
pub struct ActionContext {
    pub tables: ActionTables,
    pub orbits: OrbitData,
}

impl ActionContext {
    pub fn new(q: &Quiver, action: &MonomialAction) -> Result<Self> {
        validate(q, action).into_result()?;
        let tables = action.tables(q);
        let orbits = OrbitData::new(q, &tables);
        Ok(ActionContext { tables, orbits })
    }
}

/// One arrow candidate `(source vertex, target vertex, Q-arrow)`.
type ArrowKey = (usize, usize, usize);

/// Representatives of the `G_j`-orbits on `members`, smallest first.
fn stabilizer_orbit_reps(tables: &ActionTables, stab: &Subgroup, members: &[usize]) -> Vec<usize> {
    let group = tables.group();
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for &v in members {
        if seen.contains(&v) {
            continue;
        }
        reps.push(v);
        for u in stab.elements() {
            seen.insert(tables.vertex(group.index_of(u), v));
        }
    }
    reps
}

fn vertex_name(q: &Quiver, rep: usize, stab: &Subgroup, chi: &SubgroupCharacter) -> String {
    if stab.order() == 1 {
        q.vertices()[rep].clone()
    } else {
        format!("({},{})", q.vertices()[rep], chi)
    }
}

/// Builds `Q̂` by character matching and by idempotent sandwiches, failing if they disagree.
pub fn build_mckay(q: &Quiver, action: &MonomialAction) -> Result<McKayQuiver> {
    let ctx = ActionContext::new(q, action)?;
    build_mckay_with(q, &ctx)
}

/// [`build_mckay`] reusing precomputed tables and orbits.
pub fn build_mckay_with(q: &Quiver, ctx: &ActionContext) -> Result<McKayQuiver> {
    let (tables, orbits) = (&ctx.tables, &ctx.orbits);
    let group = tables.group().clone();
    let lg = group.exponent();
    let la = tables.level();
    let alg = SkewAlgebra::new(q, tables);

    let mut vertices = Vec::new();
    let mut names = Vec::new();
    for (k, &rep) in orbits.representatives.iter().enumerate() {
        let stab = &orbits.stabilizers[k];
        for chi in stab.characters() {
            names.push(vertex_name(q, rep, stab, &chi));
            vertices.push(McKayVertex {
                orbit: k,
                rep,
                character: chi,
            });
        }
    }
    let index: HashMap<(usize, SubgroupCharacter), usize> = vertices
        .iter()
        .enumerate()
        .map(|(n, v)| ((v.orbit, v.character.clone()), n))
        .collect();
    let idempotents: Vec<SkewElement> = vertices
        .iter()
        .map(|v| alg.character_idempotent(v.rep, &orbits.stabilizers[v.orbit], &v.character))
        .collect();

    let mut by_character: Vec<ArrowKey> = Vec::new();
    let mut by_sandwich: Vec<(ArrowKey, usize, SkewElement)> = Vec::new();
    for kj in 0..orbits.orbit_count() {
        let j = orbits.representatives[kj];
        let gj = &orbits.stabilizers[kj];
        for ki in 0..orbits.orbit_count() {
            let gi = &orbits.stabilizers[ki];
            for ip in stabilizer_orbit_reps(tables, gj, &orbits.orbits[ki]) {
                let arrows = q.arrows_between(ip, j);
                if arrows.is_empty() {
                    continue;
                }
                let gij = gi.intersection(gj);
                let kappa = orbits.transporter[ip];
                for &a in &arrows {
                    let r = gij
                        .character_from_values(|u| {
                            let (b, k) = tables.arrow(group.index_of(u), a);
                            debug_assert_eq!(b, a);
                            k * lg / la
                        })
                        .ok_or_else(|| {
                            McKayError::Inconsistent(format!(
                                "stabilizer scalars on {} are not a character",
                                q.arrow(a).id
                            ))
                        })?;
                    let head = SkewElement::term(Path::arrow(q, a), kappa, CycScalar::one());
                    for rho in gi.characters() {
                        let src = index[&(ki, rho.clone())];
                        let rho_res = gi.restrict_to(&rho, &gij);
                        let right = alg.mul(&head, &idempotents[src]);
                        for sigma in gj.characters() {
                            let tgt = index[&(kj, sigma.clone())];
                            let sigma_res = gj.restrict_to(&sigma, &gij);
                            if rho_res == gij.mul_characters(&sigma_res, &r) {
                                by_character.push((src, tgt, a));
                            }
                            let sandwich = alg.mul(&idempotents[tgt], &right);
                            if !sandwich.is_zero() {
                                by_sandwich.push(((src, tgt, a), kappa, sandwich));
                            }
                        }
                    }
                }
            }
        }
    }
    let sandwich_keys: Vec<ArrowKey> = by_sandwich.iter().map(|(k, _, _)| *k).collect();
    if sandwich_keys != by_character {
        return Err(McKayError::MethodDisagreement(format!(
            "character matching gives {} arrows, sandwiches give {}",
            by_character.len(),
            sandwich_keys.len()
        )));
    }
    let mut arrows = Vec::new();
    let mut arrow_specs = Vec::new();
    for ((src, tgt, a), kappa, sandwich) in by_sandwich {
        let lead = sandwich.coefficient(&Path::arrow(q, a), kappa);
        let inv = crate::field::Field::inverse(&lead).ok_or_else(|| {
            McKayError::Inconsistent(format!(
                "sandwich for {} vanishes at its leading term",
                q.arrow(a).id
            ))
        })?;
        arrow_specs.push((
            format!("{}:{}>{}", q.arrow(a).id, names[src], names[tgt]),
            src,
            tgt,
        ));
        arrows.push(McKayArrow {
            source: src,
            target: tgt,
            q_arrow: a,
            q_arrow_orbit: orbits.arrow_orbit[a],
            transporter: kappa,
            basis: sandwich.scale(&inv),
        });
    }
    let quiver = Quiver::new(names, arrow_specs)?;
    let induced = induced_action(&alg, &group, orbits, &vertices, &index, &arrows)?;
    if !validate(&quiver, &induced).is_valid() {
        return Err(McKayError::Inconsistent(
            "induced action fails validation".into(),
        ));
    }
    Ok(McKayQuiver {
        quiver,
        vertices,
        arrows,
        induced,
    })
}

fn induced_action(
    alg: &SkewAlgebra<'_>,
    group: &crate::group::AbelianGroup,
    orbits: &OrbitData,
    vertices: &[McKayVertex],
    index: &HashMap<(usize, SubgroupCharacter), usize>,
    arrows: &[McKayArrow],
) -> Result<MonomialAction> {
    let lg = group.exponent();
    let arrow_index: HashMap<(usize, usize, usize), usize> = arrows
        .iter()
        .enumerate()
        .map(|(n, x)| ((x.source, x.target, x.q_arrow), n))
        .collect();
    let mut gens = Vec::new();
    for t in 0..group.rank() {
        let g = group.generator(t);
        let gi = group.index_of(&g);
        let chi = group.character(&g);
        let shift: Vec<SubgroupCharacter> = orbits
            .stabilizers
            .iter()
            .map(|s| s.restrict(&chi))
            .collect();
        let vertex_perm: Vec<usize> = vertices
            .iter()
            .map(|v| {
                let stab = &orbits.stabilizers[v.orbit];
                index[&(v.orbit, stab.mul_characters(&v.character, &shift[v.orbit]))]
            })
            .collect();
        let mut arrow_map = Vec::with_capacity(arrows.len());
        for x in arrows {
            let image = arrow_index
                .get(&(vertex_perm[x.source], vertex_perm[x.target], x.q_arrow))
                .copied()
                .ok_or_else(|| McKayError::Inconsistent("induced action misses an arrow".into()))?;
            let moved = alg.dual_act(gi, &x.basis);
            let q = alg.quiver();
            let c = moved.coefficient(&Path::arrow(q, x.q_arrow), x.transporter);
            if moved != arrows[image].basis.scale(&c) {
                return Err(McKayError::Inconsistent(
                    "induced action is not monomial on the arrow basis".into(),
                ));
            }
            let k = c.root_exponent(lg).ok_or_else(|| {
                McKayError::Inconsistent("induced arrow scalar is not a root of unity".into())
            })?;
            arrow_map.push((image, k));
        }
        gens.push(GeneratorAction {
            vertex_perm,
            arrow_map,
        });
    }
    MonomialAction::new(group.clone(), lg, gens)
}

/// Constructed versus predicted arrow numbers for one arrow orbit of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowCount {
    pub arrow_orbit: usize,
    pub constructed: usize,
    /// `|G_i| |G_j| / |G_i ∩ G_j|`.
    pub stabilizer_formula: usize,
    /// `t_1 ⋯ t_n |G| / (d_i d_j)` with `∏ t_l = [G : G_ij]`.
    pub index_formula: usize,
}

pub fn arrow_counts(q: &Quiver, ctx: &ActionContext, m: &McKayQuiver) -> Vec<ArrowCount> {
    let orbits = &ctx.orbits;
    let g = ctx.tables.group().order();
    let mut constructed: BTreeMap<usize, usize> = BTreeMap::new();
    for x in &m.arrows {
        *constructed.entry(x.q_arrow_orbit).or_default() += 1;
    }
    orbits
        .arrow_orbits
        .iter()
        .enumerate()
        .map(|(k, members)| {
            let arr = q.arrow(members[0]);
            let gi = orbits.stabilizer_of(arr.source);
            let gj = orbits.stabilizer_of(arr.target);
            let gij = gi.intersection(gj).order();
            let di = orbits.orbits[orbits.vertex_orbit[arr.source]].len();
            let dj = orbits.orbits[orbits.vertex_orbit[arr.target]].len();
            ArrowCount {
                arrow_orbit: k,
                constructed: constructed.get(&k).copied().unwrap_or(0),
                stabilizer_formula: gi.order() * gj.order() / gij,
                index_formula: (g / gij) * g / (di * dj),
            }
        })
        .collect()
}

/// A quiver isomorphism given by vertex and arrow bijections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuiverIsomorphism {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl QuiverIsomorphism {
    /// Checks that the maps are bijections preserving incidence.
    pub fn verify(&self, a: &Quiver, b: &Quiver) -> bool {
        let bij = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n
                && m.iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        bij(&self.vertex_map, b.vertex_count())
            && bij(&self.arrow_map, b.arrow_count())
            && a.arrows().iter().enumerate().all(|(k, x)| {
                let y = b.arrow(self.arrow_map[k]);
                y.source == self.vertex_map[x.source] && y.target == self.vertex_map[x.target]
            })
    }
}

/// Backtracking search for an isomorphism `a → b` respecting the given vertex signatures.
pub fn find_isomorphism(
    a: &Quiver,
    b: &Quiver,
    sig_a: &[u64],
    sig_b: &[u64],
) -> Option<QuiverIsomorphism> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arrow_count() != b.arrow_count() {
        return None;
    }
    let count = |q: &Quiver| {
        let m = q.vertex_count();
        let mut c = vec![vec![0usize; m]; m];
        for x in q.arrows() {
            c[x.source][x.target] += 1;
        }
        c
    };
    let (ca, cb) = (count(a), count(b));
    let degree = |c: &Vec<Vec<usize>>, v: usize| -> (usize, usize) {
        (c.iter().map(|r| r[v]).sum(), c[v].iter().sum())
    };
    let full_a: Vec<(u64, (usize, usize))> = (0..n).map(|v| (sig_a[v], degree(&ca, v))).collect();
    let full_b: Vec<(u64, (usize, usize))> = (0..n).map(|v| (sig_b[v], degree(&cb, v))).collect();
    // Visit vertices of `a` component by component for early pruning.
    let order: Vec<usize> = a
        .components()
        .into_iter()
        .flat_map(|comp| {
            let mut seen = vec![false; n];
            let mut out = Vec::new();
            let mut queue = std::collections::VecDeque::from([comp[0]]);
            seen[comp[0]] = true;
            while let Some(v) = queue.pop_front() {
                out.push(v);
                for w in a.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out
        })
        .collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ca: &[Vec<usize>],
        cb: &[Vec<usize>],
        fa: &[(u64, (usize, usize))],
        fb: &[(u64, (usize, usize))],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..fb.len() {
            if used[w] || fa[v] != fb[w] || ca[v][v] != cb[w][w] {
                continue;
            }
            let ok = order[..k]
                .iter()
                .all(|&u| ca[v][u] == cb[w][map[u]] && ca[u][v] == cb[map[u]][w]);
            if !ok {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if search(k + 1, order, map, used, ca, cb, fa, fb) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    if !search(0, &order, &mut map, &mut used, &ca, &cb, &full_a, &full_b) {
        return None;
    }
    let mut taken = vec![false; b.arrow_count()];
    let arrow_map: Vec<usize> = a
        .arrows()
        .iter()
        .map(|x| {
            let y = (0..b.arrow_count())
                .find(|&y| {
                    !taken[y]
                        && b.arrow(y).source == map[x.source]
                        && b.arrow(y).target == map[x.target]
                })
                .unwrap();
            taken[y] = true;
            y
        })
        .collect();
    Some(QuiverIsomorphism {
        vertex_map: map,
        arrow_map,
    })
}

/// Orbit sizes of every vertex under a validated action.
pub fn orbit_size_signature(q: &Quiver, action: &MonomialAction) -> Vec<u64> {
    let t = action.tables(q);
    let o = OrbitData::new(q, &t);
    (0..q.vertex_count())
        .map(|v| o.orbits[o.vertex_orbit[v]].len() as u64)
        .collect()
}

/// Result of building `Q̂̂` and matching it against `Q`.
#[derive(Clone, Debug)]
pub struct DoubleMcKay {
    pub first: McKayQuiver,
    pub second: McKayQuiver,
    pub isomorphism: Option<QuiverIsomorphism>,
    /// Whether the isomorphism also matches orbit sizes of the two actions.
    pub orbit_sizes_matched: bool,
}

pub fn double_mckay_check(q: &Quiver, action: &MonomialAction) -> Result<DoubleMcKay> {
    let first = build_mckay(q, action)?;
    let second = build_mckay(&first.quiver, &first.induced)?;
    let sig_second = orbit_size_signature(&second.quiver, &second.induced);
    let sig_q = orbit_size_signature(q, action);
    let mut iso = find_isomorphism(&second.quiver, q, &sig_second, &sig_q);
    let orbit_sizes_matched = iso.is_some();
    if iso.is_none() {
        let zeros_a = vec![0; second.quiver.vertex_count()];
        let zeros_b = vec![0; q.vertex_count()];
        iso = find_isomorphism(&second.quiver, q, &zeros_a, &zeros_b);
    }
    Ok(DoubleMcKay {
        first,
        second,
        isomorphism: iso,
        orbit_sizes_matched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::RootScalar;
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
    fn example_one_structure() {
        let (q, a) = ex51();
        let m = build_mckay(&q, &a).unwrap();
        assert_eq!(m.quiver.vertex_count(), 8);
        assert_eq!(m.quiver.arrow_count(), 6);
        for x in &m.arrows {
            let l = m.vertices[x.source].character.0[0];
            let j = m.vertices[x.target].character.0[0];
            assert_eq!(m.vertices[x.source].orbit, 0);
            assert_ne!(l % 2, j % 2);
        }
        let ctx = ActionContext::new(&q, &a).unwrap();
        for c in arrow_counts(&q, &ctx, &m) {
            assert_eq!(c.constructed, c.stabilizer_formula);
            assert_eq!(c.constructed, c.index_formula);
        }
        // (1,ρ_l) ↦ (1,ρ_{l+1}), (2,σ_0) ↔ (2,σ_1).
        let gen = &m.induced.generators()[0];
        assert_eq!(gen.vertex_perm, vec![1, 2, 3, 4, 5, 0, 7, 6]);
        let total: u32 = gen.arrow_map.iter().map(|&(_, k)| k).sum();
        assert_eq!(total % 6, 0);
    }

    #[test]
    fn double_construction_recovers_q() {
        let (q, a) = ex51();
        let d = double_mckay_check(&q, &a).unwrap();
        let iso = d.isomorphism.unwrap();
        assert!(iso.verify(&d.second.quiver, &q));
    }

    #[test]
    fn trivial_group_gives_q() {
        let q = Quiver::from_edges(3, &[(0, 1), (2, 1)]).unwrap();
        let m = build_mckay(&q, &MonomialAction::trivial()).unwrap();
        assert_eq!(m.quiver.vertices(), q.vertices());
        assert_eq!(m.quiver.arrow_count(), 2);
        assert!(m.induced.generators().is_empty());
    }
}
