//! Built-in inputs: the two worked examples, the two folding-table families
//! and a seeded generator of random admissible actions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{GeneratorAction, MonomialAction, RootScalar};
use crate::group::{AbelianGroup, GroupElement, Subgroup};
use crate::quiver::Quiver;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub quiver: Quiver,
    pub action: MonomialAction,
}

fn arrows(list: &[(&str, usize, usize)]) -> Vec<(String, usize, usize)> {
    list.iter()
        .map(|&(id, s, t)| (id.to_string(), s, t))
        .collect()
}

/// The star `D₄` with `g: α ↦ −β ↦ γ ↦ −α` up to sign, generating `Z/6`.
pub fn ex51() -> Fixture {
    let quiver = Quiver::new(
        (1..=4).map(|i| i.to_string()).collect(),
        arrows(&[("α", 0, 1), ("β", 0, 2), ("γ", 0, 3)]),
    )
    .unwrap();
    let minus = RootScalar { num: 1, den: 2 };
    let action = MonomialAction::from_scalars(
        AbelianGroup::cyclic(6),
        vec![(vec![0, 2, 3, 1], vec![(1, minus), (2, minus), (0, minus)])],
    )
    .unwrap();
    Fixture {
        name: "ex51".into(),
        quiver,
        action,
    }
}

/// Two copies of `1 ← 2 ← 3 → 4 → 5` with `Z/2 × Z/2` reversing the path and swapping the copies.
pub fn ex52() -> Fixture {
    let mut names: Vec<String> = (1..=5).map(|i| i.to_string()).collect();
    names.extend((1..=5).map(|i| format!("{i}'")));
    let mut list = vec![];
    for (copy, suffix) in [(0usize, ""), (5, "'")] {
        for (k, (s, t)) in [(1, 0), (2, 1), (2, 3), (3, 4)].into_iter().enumerate() {
            list.push((format!("α{}{suffix}", k + 1), s + copy, t + copy));
        }
    }
    let quiver = Quiver::new(names, list).unwrap();
    let one = RootScalar { num: 0, den: 1 };
    let a_perm: Vec<usize> = (0..10).map(|v| (v / 5) * 5 + 4 - v % 5).collect();
    let a_arrows: Vec<(usize, RootScalar)> =
        (0..8).map(|a| ((a / 4) * 4 + 3 - a % 4, one)).collect();
    let b_perm: Vec<usize> = (0..10).map(|v| (v + 5) % 10).collect();
    let b_arrows: Vec<(usize, RootScalar)> = (0..8).map(|a| ((a + 4) % 8, one)).collect();
    let action = MonomialAction::from_scalars(
        AbelianGroup::new(vec![2, 2]).unwrap(),
        vec![(a_perm, a_arrows), (b_perm, b_arrows)],
    )
    .unwrap();
    Fixture {
        name: "ex52".into(),
        quiver,
        action,
    }
}

/// `A_{2n+1}` oriented towards its middle vertex with the `Z/2` flip.
pub fn a_flip(n: usize) -> Fixture {
    assert!(n >= 1);
    let m = 2 * n + 1;
    let edges: Vec<(usize, usize)> = (0..2 * n)
        .map(|i| if i < n { (i, i + 1) } else { (i + 1, i) })
        .collect();
    let quiver = Quiver::from_edges(m, &edges).unwrap();
    let one = RootScalar { num: 0, den: 1 };
    let perm = (0..m).map(|v| m - 1 - v).collect();
    let arr = (0..2 * n).map(|a| (2 * n - 1 - a, one)).collect();
    let action = MonomialAction::from_scalars(AbelianGroup::cyclic(2), vec![(perm, arr)]).unwrap();
    Fixture {
        name: format!("A{m}/Z2"),
        quiver,
        action,
    }
}

/// `D_m` with the `Z/2` swapping the two short legs.
pub fn d_flip(m: usize) -> Fixture {
    assert!(m >= 4);
    let mut edges: Vec<(usize, usize)> = (0..m - 3).map(|i| (i, i + 1)).collect();
    edges.push((m - 3, m - 2));
    edges.push((m - 3, m - 1));
    let quiver = Quiver::from_edges(m, &edges).unwrap();
    let one = RootScalar { num: 0, den: 1 };
    let mut perm: Vec<usize> = (0..m).collect();
    perm.swap(m - 2, m - 1);
    let mut arr: Vec<(usize, RootScalar)> = (0..m - 1).map(|a| (a, one)).collect();
    arr.swap(m - 3, m - 2);
    let action = MonomialAction::from_scalars(AbelianGroup::cyclic(2), vec![(perm, arr)]).unwrap();
    Fixture {
        name: format!("D{m}/Z2"),
        quiver,
        action,
    }
}

/// The quiver of another fixture with the trivial group.
/// The affine cycle `Ã₃` oriented cyclically, with `ℤ/2` rotating by two steps.
pub fn affine_cycle() -> Fixture {
    let edges: Vec<(usize, usize)> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
    let quiver = Quiver::from_edges(4, &edges).unwrap();
    let one = RootScalar { num: 0, den: 1 };
    let perm = (0..4).map(|v| (v + 2) % 4).collect();
    let arr = (0..4).map(|a| ((a + 2) % 4, one)).collect();
    let action = MonomialAction::from_scalars(AbelianGroup::cyclic(2), vec![(perm, arr)]).unwrap();
    Fixture {
        name: "A~3/Z2".into(),
        quiver,
        action,
    }
}

pub fn trivial_of(f: &Fixture) -> Fixture {
    Fixture {
        name: format!("{}/trivial", f.name),
        quiver: f.quiver.clone(),
        action: MonomialAction::trivial(),
    }
}

const GROUPS: &[&[u32]] = &[
    &[1],
    &[2],
    &[3],
    &[4],
    &[5],
    &[6],
    &[7],
    &[8],
    &[9],
    &[10],
    &[11],
    &[12],
    &[2, 2],
    &[2, 4],
    &[2, 6],
    &[3, 3],
    &[2, 2, 2],
];

/// Transversal of `G/H`: the smallest element index in each coset, sorted.
fn coset_reps(g: &AbelianGroup, h: &Subgroup) -> Vec<usize> {
    let mut reps: Vec<usize> = g.elements().iter().map(|x| canonical(g, h, x)).collect();
    reps.sort_unstable();
    reps.dedup();
    reps
}

fn canonical(g: &AbelianGroup, h: &Subgroup, x: &GroupElement) -> usize {
    h.elements()
        .iter()
        .map(|k| g.index_of(&g.mul(x, k)))
        .min()
        .unwrap()
}

fn random_subgroup(g: &AbelianGroup, rng: &mut ChaCha8Rng) -> Subgroup {
    let count = rng.gen_range(0..=2);
    let gens: Vec<GroupElement> = (0..count)
        .map(|_| g.element_at(rng.gen_range(0..g.order())))
        .collect();
    Subgroup::generated_by(g, &gens)
}

/// A random admissible monomial action with `|G| ≤ 12` and at most 8 vertices.
///
/// Vertex orbits are coset spaces `G/H` and each arrow orbit is induced from a
/// character of `H_k ∩ H_l`, so the action is valid by construction.
pub fn random_admissible(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = AbelianGroup::new(GROUPS[rng.gen_range(0..GROUPS.len())].to_vec()).unwrap();
    let mut stabs: Vec<Subgroup> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut total = 0;
    for _ in 0..24 {
        if stabs.len() >= 2 && (total >= 8 || rng.gen_bool(0.35)) {
            break;
        }
        let h = random_subgroup(&g, &mut rng);
        let r = coset_reps(&g, &h);
        let reserve = 2usize.saturating_sub(stabs.len() + 1);
        if total + r.len() + reserve <= 8 {
            total += r.len();
            stabs.push(h);
            reps.push(r);
        }
    }
    if stabs.len() < 2 {
        for _ in stabs.len()..2 {
            let h = Subgroup::full(&g);
            reps.push(coset_reps(&g, &h));
            stabs.push(h);
        }
    }
    let offsets: Vec<usize> = reps
        .iter()
        .scan(0, |acc, r| {
            let o = *acc;
            *acc += r.len();
            Some(o)
        })
        .collect();
    let vertex_of = |k: usize, x: &GroupElement| -> usize {
        let c = canonical(&g, &stabs[k], x);
        offsets[k] + reps[k].binary_search(&c).unwrap()
    };
    let n: usize = reps.iter().map(Vec::len).sum();

    struct ArrowOrbit {
        k: usize,
        l: usize,
        y: GroupElement,
        stab: Subgroup,
        reps: Vec<usize>,
        psi: crate::group::SubgroupCharacter,
    }
    let mut orbits = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        let k = rng.gen_range(0..stabs.len());
        let mut l = rng.gen_range(0..stabs.len() - 1);
        if l >= k {
            l += 1;
        }
        let y = g.element_at(rng.gen_range(0..g.order()));
        let stab = stabs[k].intersection(&stabs[l]);
        let chars = stab.characters();
        let psi = chars[rng.gen_range(0..chars.len())].clone();
        let r = coset_reps(&g, &stab);
        orbits.push(ArrowOrbit {
            k,
            l,
            y,
            stab,
            reps: r,
            psi,
        });
    }
    let mut arrow_list = Vec::new();
    let mut arrow_offset = Vec::new();
    for o in &orbits {
        arrow_offset.push(arrow_list.len());
        for &r in &o.reps {
            let x = g.element_at(r);
            let s = vertex_of(o.k, &x);
            let t = vertex_of(o.l, &g.mul(&x, &o.y));
            arrow_list.push((format!("a{}", arrow_list.len() + 1), s, t));
        }
    }
    let quiver = Quiver::new((1..=n).map(|i| i.to_string()).collect(), arrow_list).unwrap();

    let generators = (0..g.rank())
        .map(|i| {
            let gen = g.generator(i);
            let mut vertex_perm = vec![0; n];
            for k in 0..stabs.len() {
                for (p, &r) in reps[k].iter().enumerate() {
                    vertex_perm[offsets[k] + p] = vertex_of(k, &g.mul(&gen, &g.element_at(r)));
                }
            }
            let mut arrow_map = Vec::new();
            for (o, &base) in orbits.iter().zip(&arrow_offset) {
                for &r in &o.reps {
                    let moved = g.mul(&gen, &g.element_at(r));
                    let c = canonical(&g, &o.stab, &moved);
                    let k = g.mul(&g.inverse(&g.element_at(c)), &moved);
                    let idx = base + o.reps.binary_search(&c).unwrap();
                    arrow_map.push((idx, o.stab.eval(&o.psi, &k)));
                }
            }
            GeneratorAction {
                vertex_perm,
                arrow_map,
            }
        })
        .collect();
    let level = g.exponent();
    let action = MonomialAction::new(g, level, generators).unwrap();
    Fixture {
        name: format!("random-{seed}"),
        quiver,
        action,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate;

    #[test]
    fn fixtures_are_valid() {
        let mut all = vec![
            ex51(),
            ex52(),
            a_flip(1),
            a_flip(2),
            d_flip(4),
            d_flip(6),
            affine_cycle(),
        ];
        all.push(trivial_of(&all[0]));
        for f in &all {
            assert!(validate(&f.quiver, &f.action).is_valid(), "{}", f.name);
        }
        for seed in 0..200 {
            let f = random_admissible(seed);
            let report = validate(&f.quiver, &f.action);
            assert!(report.is_valid(), "seed {seed}: {:?}", report.violations);
            assert!(f.quiver.vertex_count() <= 8 && f.action.group().order() <= 12);
        }
    }
}
