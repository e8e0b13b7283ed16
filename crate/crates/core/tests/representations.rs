use std::collections::BTreeMap;

use mckay_core::cartan::{cartan_of_quiver, fold_cartan};
use mckay_core::fixtures::{a_flip, ex51, ex52, random_admissible, Fixture};
use mckay_core::folding::{verify_root_fibres, FoldingContext};
use mckay_core::group::SubgroupCharacter;
use mckay_core::linalg::Matrix;
use mckay_core::mckay::{build_mckay_with, ActionContext};
use mckay_core::report::all_passed;
use mckay_core::representations::{
    direct_sum, hom_space, indecomposables_dynkin, is_isomorphic, sigma_module, twist,
    verify_invariant_modules, CosetChoice, Representation,
};
use mckay_core::roots::{enumerate_roots, BilinearForm};
use mckay_core::{CycMatrix, CycScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn with_context<T>(f: &Fixture, body: impl FnOnce(&FoldingContext<'_>) -> T) -> T {
    let ctx = ActionContext::new(&f.quiver, &f.action).unwrap();
    let data = fold_cartan(&f.quiver, &ctx.orbits).unwrap();
    let mq = build_mckay_with(&f.quiver, &ctx).unwrap();
    let fc = FoldingContext::new(&f.quiver, &ctx, &data, &mq).unwrap();
    body(&fc)
}

fn random_rep(q: &mckay_core::quiver::Quiver, rng: &mut ChaCha8Rng, level: u32) -> Representation {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..3)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|a| {
            let mut m: CycMatrix = Matrix::zeros(dims[a.target], dims[a.source]);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    m[(r, c)] = CycScalar::root_of_unity(level, rng.gen_range(0..level as i64));
                }
            }
            m
        })
        .collect();
    Representation::new(q, dims, maps).unwrap()
}

#[test]
fn witnesses_form_one_twist_orbit() {
    with_context(&ex51(), |fc| {
        let mq = fc.mckay;
        let q = &mq.quiver;
        let tables = mq.induced.tables(q);
        let mut witnesses = BTreeMap::new();
        for l in 0..6u32 {
            for j in 0..2u32 {
                let u = mq.vertex_index(0, &SubgroupCharacter(vec![l])).unwrap();
                let v = mq.vertex_index(1, &SubgroupCharacter(vec![j])).unwrap();
                if q.edge_count(u, v) == 1 {
                    witnesses.insert((l, j), Representation::thin(q, &[u, v]));
                } else {
                    assert_eq!(q.edge_count(u, v), 0);
                    assert_eq!(l % 2, j % 2);
                }
            }
        }
        assert_eq!(witnesses.len(), 6);
        let reps: Vec<_> = witnesses.values().cloned().collect();
        for (a, x) in reps.iter().enumerate() {
            assert_eq!(fc.maps.h(&x.dim_vector()), vec![1, 1]);
            assert_eq!(hom_space(q, x, x).unwrap().len(), 1);
            for (b, y) in reps.iter().enumerate() {
                assert_eq!(is_isomorphic(q, x, y, 0).unwrap().is_isomorphic(), a == b);
            }
        }
        // The Z/6 orbit of X_(ρ₁σ₀) is all six witnesses.
        let start = &witnesses[&(1, 0)];
        let mut hit = vec![false; 6];
        for g in 0..tables.element_count() {
            let t = twist(q, &tables, g, start).unwrap();
            let k = reps
                .iter()
                .position(|y| is_isomorphic(q, &t, y, 1).unwrap().is_isomorphic())
                .unwrap();
            hit[k] = true;
        }
        assert!(hit.iter().all(|&b| b));
        // X_(ρ₃σ₀) is not a twist-equivalent of X_(ρ₁σ₀).
        let r3 = mq.vertex_index(0, &SubgroupCharacter(vec![3])).unwrap();
        let s0 = mq.vertex_index(1, &SubgroupCharacter(vec![0])).unwrap();
        let x30 = Representation::thin(q, &[r3, s0]);
        assert!(!is_isomorphic(q, &x30, start, 0).unwrap().is_isomorphic());
    });
}

#[test]
fn indecomposables_of_example_one() {
    with_context(&ex51(), |fc| {
        let ind = indecomposables_dynkin(fc.quiver).unwrap();
        assert_eq!(ind.len(), 12);
        let roots = enumerate_roots(&fc.form_q, 1).unwrap().positive_roots();
        assert_eq!(
            ind.iter()
                .map(Representation::dim_vector)
                .collect::<Vec<_>>(),
            roots
        );
        for m in &ind {
            assert_eq!(hom_space(fc.quiver, m, m).unwrap().len(), 1);
        }
        let hat = indecomposables_dynkin(&fc.mckay.quiver).unwrap();
        assert_eq!(hat.len(), 24);
        let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for m in &hat {
            assert_eq!(hom_space(&fc.mckay.quiver, m, m).unwrap().len(), 1);
            *counts.entry(fc.maps.h(&m.dim_vector())).or_default() += 1;
        }
        let report = verify_root_fibres(fc, 10).unwrap();
        let fibres: BTreeMap<Vec<i64>, usize> = report
            .fibres
            .iter()
            .map(|f| (f.root.clone(), f.members.len()))
            .collect();
        assert_eq!(counts, fibres);
    });
}

#[test]
fn twist_is_functorial_and_equivariant() {
    for f in [ex51(), ex52(), random_admissible(11), random_admissible(29)] {
        let tables = f.action.tables(&f.quiver);
        let group = tables.group().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let m = random_rep(&f.quiver, &mut rng, tables.level());
            assert_eq!(twist(&f.quiver, &tables, 0, &m).unwrap(), m);
            for g in 0..tables.element_count() {
                let gm = twist(&f.quiver, &tables, g, &m).unwrap();
                let mut pushed = vec![0; f.quiver.vertex_count()];
                for i in 0..pushed.len() {
                    pushed[tables.vertex(g, i)] = m.dim_vector()[i];
                }
                assert_eq!(gm.dim_vector(), pushed);
                for h in 0..tables.element_count() {
                    let gh = group.index_of(&group.mul(&group.element_at(g), &group.element_at(h)));
                    let lhs = twist(&f.quiver, &tables, gh, &m).unwrap();
                    let rhs = twist(
                        &f.quiver,
                        &tables,
                        g,
                        &twist(&f.quiver, &tables, h, &m).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(lhs, rhs, "{}", f.name);
                }
            }
        }
    }
}

#[test]
fn sigma_modules() {
    let f = ex51();
    let tables = f.action.tables(&f.quiver);
    let s2 = Representation::simple(&f.quiver, 1);
    let sm = sigma_module(&f.quiver, &tables, &s2, CosetChoice::Smallest, 0).unwrap();
    assert_eq!(sm.module.dim_vector(), vec![0, 1, 1, 1]);
    assert_eq!(sm.stabilizer.len(), 2);
    assert!(sm.invariant);
    let parts: Vec<_> = (1..4)
        .map(|i| Representation::simple(&f.quiver, i))
        .collect();
    assert!(
        is_isomorphic(&f.quiver, &sm.module, &direct_sum(&f.quiver, &parts), 0)
            .unwrap()
            .is_isomorphic()
    );
    // A G-invariant module is its own orbit module.
    let ind = indecomposables_dynkin(&f.quiver).unwrap();
    let top = ind
        .iter()
        .find(|m| m.dim_vector() == vec![2, 1, 1, 1])
        .unwrap();
    let st = sigma_module(&f.quiver, &tables, top, CosetChoice::Smallest, 0).unwrap();
    assert_eq!(st.coset_representatives.len(), 1);
    assert!(is_isomorphic(&f.quiver, &st.module, top, 0)
        .unwrap()
        .is_isomorphic());
    // N with dim ε₁+ε₂: H_N = ⟨g³⟩ and f(dim Σ(N)) = (3,1).
    let n = ind
        .iter()
        .find(|m| m.dim_vector() == vec![1, 1, 0, 0])
        .unwrap();
    with_context(&f, |fc| {
        for choice in [CosetChoice::Smallest, CosetChoice::Largest] {
            let sn = sigma_module(&f.quiver, &tables, n, choice, 0).unwrap();
            assert_eq!(sn.stabilizer.len(), 2);
            assert_eq!(fc.maps.f(&sn.module.dim_vector()).unwrap(), vec![3, 1]);
        }
        let a = sigma_module(&f.quiver, &tables, n, CosetChoice::Smallest, 0).unwrap();
        let b = sigma_module(&f.quiver, &tables, n, CosetChoice::Largest, 0).unwrap();
        assert_ne!(a.coset_representatives, b.coset_representatives);
        assert!(is_isomorphic(&f.quiver, &a.module, &b.module, 0)
            .unwrap()
            .is_isomorphic());
    });
}

#[test]
fn invariant_modules_count_summands() {
    for f in [ex51(), ex52(), a_flip(2)] {
        with_context(&f, |fc| {
            let r = verify_invariant_modules(fc, 0).unwrap();
            assert!(all_passed(&r.checks), "{}: {:?}", f.name, r.checks);
            if f.name == ex52().name {
                assert_eq!(r.rows.len(), 9);
            }
            if f.name == ex51().name {
                let row = r.rows.iter().find(|row| row.beta == vec![0, 1]).unwrap();
                assert_eq!(row.dim_m, vec![0, 1, 1, 1]);
                assert_eq!((row.half_norm, row.summands), (3, 3));
                let simple = r.rows.iter().find(|row| row.beta == vec![1, 0]).unwrap();
                assert_eq!(simple.summands, 1);
            }
        });
    }
    let kron = mckay_core::quiver::Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
    assert!(cartan_of_quiver(&kron).is_ok());
    assert!(BilinearForm::symmetric(&cartan_of_quiver(&kron).unwrap()).is_ok());
    assert!(indecomposables_dynkin(&kron).is_err());
}

#[test]
fn representation_serializes() {
    let q = mckay_core::quiver::Quiver::from_edges(2, &[(0, 1)]).unwrap();
    let mut m: CycMatrix = Matrix::zeros(1, 1);
    m[(0, 0)] = CycScalar::root_of_unity(3, 1);
    let r = Representation::new(&q, vec![1, 1], vec![m]).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 1]));
    assert_eq!(v["maps"][0][0][0]["level"], 3);
}
