use mckay_core::cartan::{
    cartan_of_quiver, check_bridge_identity, check_orbit_sum_identity, classify, dual_check,
    fold_cartan, GcmType,
};
use mckay_core::fixtures::{a_flip, d_flip, ex51, ex52, random_admissible, trivial_of, Fixture};
use mckay_core::intmat::IntMatrix;
use mckay_core::mckay::{build_mckay_with, ActionContext};

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn all_fixtures() -> Vec<Fixture> {
    let mut v = vec![
        ex51(),
        ex52(),
        a_flip(1),
        a_flip(2),
        a_flip(3),
        d_flip(4),
        d_flip(5),
    ];
    v.push(trivial_of(&v[0]));
    v
}

#[test]
fn example_one_fold() {
    let f = ex51();
    let a = cartan_of_quiver(&f.quiver).unwrap();
    assert_eq!(a.row(0), &[2, -1, -1, -1]);
    let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
    let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
    assert_eq!(data.b, m(&[&[2, -3], &[-3, 6]]));
    assert_eq!(data.d, vec![1, 3]);
    assert_eq!(data.c, m(&[&[2, -3], &[-1, 2]]));
    assert_eq!(data.edges.len(), 1);
    assert_eq!(data.edges[0].label, (1, 3));
    let t = classify(&data.c).unwrap();
    assert_eq!(t.label(), "G2");
    assert_eq!(data.c[(0, 1)] * data.c[(1, 0)], 3);
}

#[test]
fn example_two_fold() {
    let f = ex52();
    let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
    let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
    assert_eq!(data.d, vec![4, 4, 2]);
    assert_eq!(data.c, m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]));
    assert_eq!(classify(&data.c).unwrap().label(), "B3");
    let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
    let ahat = cartan_of_quiver(&mq.quiver).unwrap();
    // Q̂ is D₄ with its branch vertex over orbit {2,4,2′,4′}.
    assert_eq!(classify(&ahat).unwrap().label(), "D4");
    let centre = mq.vertices_over(1)[0];
    assert_eq!(mq.quiver.neighbours(centre).len(), 3);
}

#[test]
fn trivial_group_folds_to_a() {
    let f = trivial_of(&ex51());
    let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
    let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
    assert_eq!(data.c, cartan_of_quiver(&f.quiver).unwrap());
    assert_eq!(data.d, vec![1; 4]);
    let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
    let r = dual_check(&ctx, &data, &mq).unwrap();
    assert!(r.passed());
    assert_eq!(r.c_hat, data.c);
}

#[test]
fn duality_and_identities_on_fixtures() {
    for f in all_fixtures() {
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
        assert!(
            check_orbit_sum_identity(&f.quiver, &ctx.orbits, &data).unwrap(),
            "{}",
            f.name
        );
        let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
        assert!(check_bridge_identity(&data, &mq).unwrap(), "{}", f.name);
        let r = dual_check(&ctx, &data, &mq).unwrap();
        assert!(r.passed(), "{}: {:?}", f.name, r);
        // D·C is the symmetric B.
        let dc = IntMatrix::diagonal(&data.d).mul(&data.c);
        assert_eq!(dc, data.b);
        assert!(data.b.is_symmetric());
    }
}

#[test]
fn duality_on_random_actions() {
    for seed in 0..60 {
        let f = random_admissible(seed);
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
        assert!(check_orbit_sum_identity(&f.quiver, &ctx.orbits, &data).unwrap());
        let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
        assert!(check_bridge_identity(&data, &mq).unwrap(), "seed {seed}");
        let r = dual_check(&ctx, &data, &mq).unwrap();
        assert!(r.passed(), "seed {seed}: {r:?}");
    }
}

#[test]
fn folding_table_types() {
    for n in 2..=4 {
        let f = a_flip(n);
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
        assert_eq!(classify(&data.c).unwrap().label(), format!("B{}", n + 1));
        let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
        let hat = classify(&cartan_of_quiver(&mq.quiver).unwrap()).unwrap();
        assert_eq!(hat.label(), format!("D{}", n + 2));

        let f = d_flip(n + 2);
        let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
        let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
        assert_eq!(classify(&data.c).unwrap().label(), format!("C{}", n + 1));
        let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
        let hat = classify(&cartan_of_quiver(&mq.quiver).unwrap()).unwrap();
        assert_eq!(hat.label(), format!("A{}", 2 * n + 1));
    }
}

#[test]
fn classification_is_permutation_invariant() {
    let c = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]]);
    let p = [2usize, 0, 1];
    let mut rows = vec![vec![0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            rows[i][j] = c[(p[i], p[j])];
        }
    }
    let t = classify(&IntMatrix::from_rows(&rows)).unwrap();
    assert_eq!(t.label(), "B3");
    assert_eq!(t.overall, GcmType::Finite);
}
