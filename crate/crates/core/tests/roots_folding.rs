use std::collections::BTreeSet;

use mckay_core::cartan::{cartan_of_quiver, fold_cartan};
use mckay_core::fixtures::{a_flip, d_flip, ex51, ex52, trivial_of, Fixture};
use mckay_core::folding::{verify_folding_identities, verify_root_fibres, FoldingContext};
use mckay_core::group::SubgroupCharacter;
use mckay_core::intmat::IntMatrix;
use mckay_core::mckay::{build_mckay_with, ActionContext};
use mckay_core::report::all_passed;
use mckay_core::roots::{enumerate_roots, unit, BilinearForm, LatticeVector};

fn with_context<T>(f: &Fixture, body: impl FnOnce(&FoldingContext<'_>) -> T) -> T {
    let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
    let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
    let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
    let fc = FoldingContext::new(&f.quiver, &ctx, &data, &mq).unwrap();
    body(&fc)
}

/// All roots reachable from the simple roots under the full Weyl group, by
/// closure in both directions with no height pruning.
fn brute_force_positive(form: &BilinearForm) -> BTreeSet<LatticeVector> {
    let n = form.rank();
    let mut all: BTreeSet<LatticeVector> = (0..n).map(|i| unit(n, i)).collect();
    let mut frontier: Vec<LatticeVector> = all.iter().cloned().collect();
    while let Some(v) = frontier.pop() {
        for i in 0..n {
            let w = form.reflect(i, &v).unwrap();
            if all.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    all.into_iter()
        .filter(|v| v.iter().all(|&x| x >= 0))
        .collect()
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

#[test]
fn enumeration_matches_full_weyl_closure() {
    let types = [
        m(&[&[2, -1], &[-1, 2]]),
        m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]),
        m(&[
            &[2, -1, -1, -1],
            &[-1, 2, 0, 0],
            &[-1, 0, 2, 0],
            &[-1, 0, 0, 2],
        ]),
        m(&[&[2, -3], &[-1, 2]]),
        m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]),
    ];
    let counts = [3, 6, 12, 6, 9];
    for (c, &k) in types.iter().zip(&counts) {
        let form = BilinearForm::from_gcm(c).unwrap();
        let view = enumerate_roots(&form, 1).unwrap();
        let got: BTreeSet<_> = view.positive_roots().into_iter().collect();
        assert_eq!(got, brute_force_positive(&form));
        assert_eq!(got.len(), k);
        for r in &view.real {
            assert_eq!(
                form.apply_word(&r.word, &unit(form.rank(), r.simple)),
                r.root
            );
        }
    }
}

#[test]
fn example_one_root_lists() {
    let f = ex51();
    let form = BilinearForm::symmetric(&cartan_of_quiver(&f.quiver).unwrap()).unwrap();
    let got: BTreeSet<_> = enumerate_roots(&form, 1)
        .unwrap()
        .positive_roots()
        .into_iter()
        .collect();
    let listed: BTreeSet<LatticeVector> = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 0, 0, 1],
        [1, 1, 1, 0],
        [1, 1, 0, 1],
        [1, 0, 1, 1],
        [1, 1, 1, 1],
        [2, 1, 1, 1],
    ]
    .iter()
    .map(|r| r.to_vec())
    .collect();
    assert_eq!(got, listed);
}

#[test]
fn example_one_maps() {
    with_context(&ex51(), |fc| {
        let maps = &fc.maps;
        assert_eq!(maps.sigma(&[0, 1, 0, 0]), vec![0, 1, 1, 1]);
        assert_eq!(maps.f(&[0, 1, 1, 1]).unwrap(), vec![0, 1]);
        assert!(maps.f(&[0, 1, 0, 0]).is_err());
        // π(ε₁+ε₂) = 3ε̄₁+ε̄₂ since the stabilizer of ε₁+ε₂ is ⟨g³⟩.
        assert_eq!(maps.stabilizer_order(&[1, 1, 0, 0]), 2);
        assert_eq!(maps.pi(&[1, 1, 0, 0]), vec![3, 1]);
        // π maps the 12 roots of Q onto the 6 roots of Γ.
        let q_roots = enumerate_roots(&fc.form_q, 1).unwrap().positive_roots();
        let images: BTreeSet<_> = q_roots.iter().map(|r| maps.pi(r)).collect();
        let gamma: BTreeSet<_> = enumerate_roots(&fc.form_gamma, 1)
            .unwrap()
            .positive_roots()
            .into_iter()
            .collect();
        assert_eq!(images, gamma);
        // S₂(ε₂+ε₃+ε₄) = −(ε₂+ε₃+ε₄) and γ₂(ε̄₂) = −ε̄₂.
        assert_eq!(
            maps.s(&fc.form_q, 1, &[0, 1, 1, 1]).unwrap(),
            vec![0, -1, -1, -1]
        );
        // h(ε_(1,ρ₃) + ε_(2,σ₀)) = ε̄₁ + ε̄₂.
        let mq = fc.mckay;
        let r3 = mq.vertex_index(0, &SubgroupCharacter(vec![3])).unwrap();
        let s0 = mq.vertex_index(1, &SubgroupCharacter(vec![0])).unwrap();
        let mut b = vec![0; 8];
        b[r3] = 1;
        b[s0] = 1;
        assert_eq!(maps.h(&b), vec![1, 1]);
        // The highest root of a D₄ component maps to the long root 3ε̄₁+2ε̄₂.
        let mut top = vec![0; 8];
        top[s0] = 2;
        for v in mq.quiver.neighbours(s0) {
            top[v] = 1;
        }
        assert_eq!(maps.h(&top), vec![3, 2]);
    });
}

#[test]
fn root_fibres_of_example_one() {
    with_context(&ex51(), |fc| {
        let r = verify_root_fibres(fc, 10).unwrap();
        assert!(all_passed(&r.checks), "{:?}", r.checks);
        assert_eq!(r.hat_roots, 24);
        assert_eq!(r.gamma_roots, 6);
        let fib = r.fibres.iter().find(|f| f.root == vec![1, 1]).unwrap();
        assert_eq!(fib.members.len(), 6);
        assert!(fib.members_real && fib.single_orbit);
        // l ≢ j mod 2 for each member (1,ρ_l) + (2,σ_j).
        let mq = fc.mckay;
        for b in &fib.members {
            let ones: Vec<usize> = (0..8).filter(|&v| b[v] == 1).collect();
            let l = mq.vertices[ones
                .iter()
                .copied()
                .find(|&v| mq.vertices[v].orbit == 0)
                .unwrap()]
            .character
            .0[0];
            let j = mq.vertices[ones
                .iter()
                .copied()
                .find(|&v| mq.vertices[v].orbit == 1)
                .unwrap()]
            .character
            .0[0];
            assert_ne!(l % 2, j % 2);
        }
        let sizes: usize = r.fibres.iter().map(|f| f.members.len()).sum();
        assert_eq!(sizes, 24);
    });
}

#[test]
fn root_fibres_of_other_fixtures() {
    for f in [ex52(), a_flip(2), d_flip(5), trivial_of(&ex51())] {
        with_context(&f, |fc| {
            let r = verify_root_fibres(fc, 10).unwrap();
            assert!(all_passed(&r.checks), "{}: {:?}", f.name, r.checks);
        });
    }
    with_context(&ex52(), |fc| {
        let r = verify_root_fibres(fc, 10).unwrap();
        assert_eq!(r.gamma_roots, 9);
    });
    with_context(&trivial_of(&ex51()), |fc| {
        let r = verify_root_fibres(fc, 10).unwrap();
        assert!(r.fibres.iter().all(|f| f.members == vec![f.root.clone()]));
    });
}

#[test]
fn folding_identities() {
    for f in [ex51(), ex52(), a_flip(2), d_flip(4), trivial_of(&ex52())] {
        with_context(&f, |fc| {
            let checks = verify_folding_identities(fc, 1000, 7);
            assert!(
                checks.iter().all(|c| c.passed()),
                "{}: {:?}",
                f.name,
                checks
            );
        });
    }
}
