use mckay_core::action::{validate, MonomialAction, RootScalar, Violation};
use mckay_core::fixtures::{
    a_flip, affine_cycle, d_flip, ex51, ex52, random_admissible, trivial_of, Fixture,
};
use mckay_core::group::AbelianGroup;
use mckay_core::intmat::{smith_normal_form, IntMatrix};
use mckay_core::mckay::{arrow_counts, build_mckay_with, double_mckay_check, ActionContext};
use mckay_core::quiver::Quiver;
use mckay_core::skew::{check_idempotent_family, SkewAlgebra};

fn named() -> Vec<Fixture> {
    vec![
        ex51(),
        ex52(),
        a_flip(2),
        d_flip(5),
        affine_cycle(),
        trivial_of(&ex51()),
    ]
}

#[test]
fn smith_forms() {
    let s = smith_normal_form(&IntMatrix::from_rows(&[vec![4, 6], vec![2, 2]]));
    assert_eq!(s.invariant_factors(), vec![2, 2]);
    let s = smith_normal_form(&IntMatrix::diagonal(&[2, 3]));
    assert_eq!(s.invariant_factors(), vec![1, 6]);
    assert_eq!(s.u.mul(&IntMatrix::diagonal(&[2, 3])).mul(&s.v), s.d);
}

#[test]
fn validation_rejects_bad_actions() {
    // A 3-cycle inside the orbit {2,3,4} of the star.
    let q = Quiver::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
    let minus = RootScalar { num: 1, den: 2 };
    let one = RootScalar { num: 0, den: 1 };
    let a = MonomialAction::from_scalars(
        AbelianGroup::cyclic(6),
        vec![(
            vec![0, 2, 3, 1],
            vec![
                (1, minus),
                (2, minus),
                (0, minus),
                (4, one),
                (5, one),
                (3, one),
            ],
        )],
    )
    .unwrap();
    let r = validate(&q, &a);
    assert!(
        r.violations
            .iter()
            .any(|v| matches!(v, Violation::Inadmissible { .. })),
        "{:?}",
        r.violations
    );
    // g of order 2 scaling an arrow by ζ₄ squares to −1.
    let q = Quiver::from_edges(2, &[(0, 1)]).unwrap();
    let a = MonomialAction::from_scalars(
        AbelianGroup::cyclic(2),
        vec![(vec![0, 1], vec![(0, RootScalar { num: 1, den: 4 })])],
    )
    .unwrap();
    assert_eq!(
        validate(&q, &a).violations,
        vec![Violation::OrderRelation { generator: 0 }]
    );
    for f in named() {
        assert!(validate(&f.quiver, &f.action).is_valid(), "{}", f.name);
    }
}

#[test]
fn arrow_count_law_on_fuzzed_actions() {
    let mut fixtures = named();
    fixtures.extend((0..100).map(random_admissible));
    for f in &fixtures {
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let m = build_mckay_with(&f.quiver, &ctx).unwrap();
        for c in arrow_counts(&f.quiver, &ctx, &m) {
            assert_eq!(c.constructed, c.stabilizer_formula, "{}: {c:?}", f.name);
            assert_eq!(c.constructed, c.index_formula, "{}: {c:?}", f.name);
        }
    }
}

#[test]
fn idempotents_are_complete_and_orthogonal() {
    let mut fixtures = named();
    fixtures.extend((0..20).map(random_admissible));
    for f in &fixtures {
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let alg = SkewAlgebra::new(&f.quiver, &ctx.tables);
        for i in 0..f.quiver.vertex_count() {
            let fam = alg.idempotents(i, ctx.orbits.stabilizer_of(i));
            assert_eq!(fam.len(), ctx.orbits.stabilizer_of(i).order());
            check_idempotent_family(&alg, &fam, &alg.vertex_idempotent(i)).unwrap();
        }
    }
}

#[test]
fn double_mckay_recovers_quiver() {
    for f in [ex51(), ex52(), a_flip(2)] {
        let d = double_mckay_check(&f.quiver, &f.action).unwrap();
        let iso = d.isomorphism.expect("Q̂̂ ≅ Q");
        assert!(
            iso.verify(&d.second.quiver, &f.quiver) || iso.verify(&f.quiver, &d.second.quiver),
            "{}",
            f.name
        );
        assert!(d.orbit_sizes_matched, "{}", f.name);
    }
}
