//! The subcommands, each appending sections and checks to a [`Report`].

use mckay_core::action::{validate, MonomialAction, ValidationReport};
use mckay_core::cartan::{
    cartan_of_quiver, check_bridge_identity, check_orbit_sum_identity, classify, dual_check,
    fold_cartan, ValuedGraphData,
};
use mckay_core::fixtures::{a_flip, d_flip, Fixture};
use mckay_core::folding::{verify_folding_identities, verify_root_fibres, FoldingContext};
use mckay_core::intmat::IntMatrix;
use mckay_core::lie::{verify_fixed_points, verify_realization_lift};
use mckay_core::mckay::{
    arrow_counts, build_mckay_with, double_mckay_check, ActionContext, McKayQuiver,
};
use mckay_core::quiver::Quiver;
use mckay_core::report::Check;
use mckay_core::roots::{default_height, enumerate_roots, BilinearForm, RootSystemView};
use mckay_core::skew::{check_idempotent_family, SkewAlgebra};
use mckay_core::McKayError;
use serde_json::json;

use crate::report::Report;

const IDENTITY_SAMPLES: usize = 1000;
const JACOBI_SAMPLES: usize = 1000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid action: {}", .0.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidAction(ValidationReport),
    #[error(transparent)]
    Core(#[from] McKayError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::InvalidAction(_) => 3,
            CliError::Core(_) => 1,
        }
    }
}

/// A validated input with everything the verifications borrow from.
pub struct Prepared {
    pub name: String,
    pub quiver: Quiver,
    pub action: MonomialAction,
    pub ctx: ActionContext,
    pub data: ValuedGraphData,
    pub mckay: McKayQuiver,
}

impl Prepared {
    pub fn new(
        name: impl Into<String>,
        quiver: Quiver,
        action: MonomialAction,
    ) -> Result<Self, CliError> {
        let report = validate(&quiver, &action);
        if !report.is_valid() {
            return Err(CliError::InvalidAction(report));
        }
        let ctx = ActionContext::new(&quiver, &action)?;
        let data = fold_cartan(&quiver, &ctx.orbits)?;
        let mckay = build_mckay_with(&quiver, &ctx)?;
        Ok(Prepared {
            name: name.into(),
            quiver,
            action,
            ctx,
            data,
            mckay,
        })
    }

    pub fn from_fixture(f: Fixture) -> Result<Self, CliError> {
        Prepared::new(f.name, f.quiver, f.action)
    }

    pub fn folding(&self) -> Result<FoldingContext<'_>, CliError> {
        Ok(FoldingContext::new(
            &self.quiver,
            &self.ctx,
            &self.data,
            &self.mckay,
        )?)
    }
}

fn fmt_vec(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn fmt_matrix(m: &IntMatrix) -> Vec<String> {
    m.to_rows()
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter()
                    .map(|x| format!("{x:>3}"))
                    .collect::<Vec<_>>()
                    .join("")
            )
        })
        .collect()
}

fn quiver_label(q: &Quiver) -> Result<String, CliError> {
    let t = classify(&cartan_of_quiver(q)?)?;
    Ok(if t.is_finite() {
        t.label()
    } else {
        format!("{:?}", t.overall)
    })
}

fn gcm_label(c: &IntMatrix) -> Result<String, CliError> {
    let t = classify(c)?;
    Ok(if t.is_finite() {
        t.label()
    } else {
        format!("{:?}", t.overall)
    })
}

pub fn run_mckay(r: &mut Report, p: &Prepared) -> Result<(), CliError> {
    let mq = &p.mckay;
    let hat = &mq.quiver;
    let mut table = vec![format!(
        "Q̂: {} vertices, {} arrows, type {}",
        hat.vertex_count(),
        hat.arrow_count(),
        quiver_label(hat)?
    )];
    for (v, x) in mq.vertices.iter().enumerate() {
        table.push(format!(
            "vertex {}: over {} with character {}",
            hat.vertices()[v],
            p.quiver.vertices()[x.rep],
            x.character
        ));
    }
    for (a, x) in mq.arrows.iter().enumerate() {
        table.push(format!(
            "arrow {}: {} → {} from {}",
            hat.arrow(a).id,
            hat.vertices()[x.source],
            hat.vertices()[x.target],
            p.quiver.arrow(x.q_arrow).id
        ));
    }
    let data = json!({
        "quiver": hat,
        "vertices": mq.vertices,
        "induced_action": { "level": mq.induced.level(), "generators": mq.induced.generators() },
    });
    r.section("McKay quiver", table, data);

    let counts = arrow_counts(&p.quiver, &p.ctx, mq);
    let bad = counts
        .iter()
        .find(|c| c.constructed != c.stabilizer_formula || c.constructed != c.index_formula);
    r.checks.push(Check::from_counterexample(
        "arrow count |G_i||G_j|/|G_ij| per arrow orbit",
        bad.map(|c| format!("{c:?}")),
        format!("{} arrow orbits", counts.len()),
    ));
    r.checks.push(Check::pass(
        "character matching and idempotent sandwiches agree",
        format!("{} arrows", hat.arrow_count()),
    ));
    let alg = SkewAlgebra::new(&p.quiver, &p.ctx.tables);
    let mut failure = None;
    for &i in &p.ctx.orbits.representatives {
        let fam = alg.idempotents(i, p.ctx.orbits.stabilizer_of(i));
        if let Err(e) = check_idempotent_family(&alg, &fam, &alg.vertex_idempotent(i)) {
            failure = Some(format!("vertex {}: {e}", p.quiver.vertices()[i]));
            break;
        }
    }
    r.checks.push(Check::from_counterexample(
        "character idempotents are orthogonal and complete",
        failure,
        format!("{} representatives", p.ctx.orbits.representatives.len()),
    ));
    Ok(())
}

pub fn run_fold(r: &mut Report, p: &Prepared) -> Result<(), CliError> {
    let d = &p.data;
    let t = classify(&d.c)?;
    let mut table = vec![
        format!(
            "representatives: {}",
            d.representatives
                .iter()
                .map(|&v| p.quiver.vertices()[v].clone())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        format!("D = diag{}", fmt_vec(&d.d)),
        "B =".into(),
    ];
    table.extend(fmt_matrix(&d.b));
    table.push("C =".into());
    table.extend(fmt_matrix(&d.c));
    for e in &d.edges {
        table.push(format!(
            "edge {} — {} labelled ({}, {})",
            e.i + 1,
            e.j + 1,
            e.label.0,
            e.label.1
        ));
    }
    table.push(format!("type: {:?} {}", t.overall, t.label()));
    r.section(
        "folded valued graph Γ",
        table,
        json!({ "folded": d, "classification": t }),
    );
    r.checks.push(Check::new(
        "orbit sums of vertex rows agree",
        check_orbit_sum_identity(&p.quiver, &p.ctx.orbits, d)?,
        "b_kl over 𝒪_k",
    ));
    r.checks.push(Check::new(
        "B agrees with the McKay bridge counts",
        check_bridge_identity(d, &p.mckay)?,
        "characters over each pair",
    ));
    Ok(())
}

pub fn run_duality(r: &mut Report, p: &Prepared) -> Result<(), CliError> {
    let dual = dual_check(&p.ctx, &p.data, &p.mckay)?;
    let mut table = vec!["Ĉ =".to_string()];
    table.extend(fmt_matrix(&dual.c_hat));
    table.push(format!("D̂ = diag{}", fmt_vec(&dual.d_hat)));
    let double = double_mckay_check(&p.quiver, &p.action)?;
    if let Some(iso) = &double.isomorphism {
        table.push(format!("Q̂̂ ≅ Q via vertices {:?}", iso.vertex_map));
    }
    r.section("duality", table, &dual);
    r.checks.push(Check::new(
        "Ĉ = Cᵀ",
        dual.c_hat_is_transpose,
        format!("{:?}", dual.c_hat.to_rows()),
    ));
    r.checks.push(Check::new(
        "D̂ = |G| D⁻¹",
        dual.d_hat_matches,
        fmt_vec(&dual.d_hat),
    ));
    r.checks.push(Check::new(
        "B̂ = |G| D⁻¹ B D⁻¹",
        dual.b_hat_matches,
        format!("{:?}", dual.b_hat.to_rows()),
    ));
    r.checks.push(match &double.isomorphism {
        Some(iso) if iso.verify(&double.second.quiver, &p.quiver) => Check::pass(
            "Q̂̂ ≅ Q",
            format!(
                "explicit isomorphism, orbit sizes matched: {}",
                double.orbit_sizes_matched
            ),
        ),
        _ => Check::fail("Q̂̂ ≅ Q", "no isomorphism found"),
    });
    Ok(())
}

fn root_lines(label: &str, view: &RootSystemView) -> Vec<String> {
    let mut out = vec![format!(
        "{label}: {} real, {} imaginary positive roots up to height {}{}",
        view.real.len(),
        view.imaginary.len(),
        view.height_bound,
        if view.complete { " (complete)" } else { "" }
    )];
    let mut all: Vec<(&str, &Vec<i64>)> = view
        .real
        .iter()
        .map(|x| ("re", &x.root))
        .chain(view.imaginary.iter().map(|x| ("im", &x.root)))
        .collect();
    all.sort_by(|a, b| {
        a.1.iter()
            .sum::<i64>()
            .cmp(&b.1.iter().sum::<i64>())
            .then(b.1.cmp(a.1))
    });
    for (kind, v) in all {
        out.push(format!("  {} {kind}", fmt_vec(v)));
    }
    out
}

pub fn run_roots(r: &mut Report, p: &Prepared, height: Option<i64>) -> Result<(), CliError> {
    let fc = p.folding()?;
    let parts: [(&str, &BilinearForm); 3] = [
        ("Q", &fc.form_q),
        ("Γ", &fc.form_gamma),
        ("Q̂", &fc.form_hat),
    ];
    let mut table = Vec::new();
    let mut data = serde_json::Map::new();
    for (label, form) in parts {
        let h = height.unwrap_or_else(|| default_height(form.rank()));
        let view = enumerate_roots(form, h)?;
        table.extend(root_lines(label, &view));
        let ok = view.real.iter().all(|x| {
            form.apply_word(&x.word, &mckay_core::roots::unit(form.rank(), x.simple)) == x.root
        });
        r.checks.push(Check::new(
            format!("{label}: Weyl words reproduce the real roots"),
            ok,
            format!("{} roots", view.real.len()),
        ));
        data.insert(
            label.to_string(),
            serde_json::to_value(&view).expect("views serialize"),
        );
    }
    r.section("positive roots", table, data);
    Ok(())
}

pub fn run_root_fibres(
    r: &mut Report,
    p: &Prepared,
    height: Option<i64>,
    seed: u64,
) -> Result<(), CliError> {
    let fc = p.folding()?;
    let h = height.unwrap_or_else(|| default_height(fc.maps.hat_rank()));
    let rep = verify_root_fibres(&fc, h)?;
    let mut table = vec![format!(
        "{} positive roots of Q̂ over {} positive roots of Γ (height ≤ {h})",
        rep.hat_roots, rep.gamma_roots
    )];
    for f in &rep.fibres {
        table.push(format!(
            "{}: {}, {} roots, {}",
            fmt_vec(&f.root),
            if f.real { "real" } else { "imaginary" },
            f.members.len(),
            if f.single_orbit {
                "one orbit"
            } else {
                "several orbits"
            }
        ));
    }
    r.section("fibres of h", table, &rep);
    r.checks("thm1.1", rep.checks);
    r.checks(
        "identities",
        verify_folding_identities(&fc, IDENTITY_SAMPLES, seed),
    );
    Ok(())
}

pub fn run_fixed_points(r: &mut Report, p: &Prepared, seed: u64) -> Result<(), CliError> {
    let fc = p.folding()?;
    match verify_fixed_points(&fc, JACOBI_SAMPLES, seed) {
        Ok(rep) => {
            let mut table = vec![
                format!(
                    "Γ = {}, 𝔤(Q̂) of dimension {}",
                    rep.gamma_label, rep.algebra_dim
                ),
                format!(
                    "dim 𝔤(Q̂)^Ḡ = {}, expected {}",
                    rep.fixed_dim, rep.expected_dim
                ),
            ];
            for (w, m) in &rep.weights {
                table.push(format!("weight {} multiplicity {m}", fmt_vec(w)));
            }
            r.section("fixed-point subalgebra", table, &rep);
            r.checks("thm1.2", rep.checks);
        }
        Err(McKayError::NotFiniteType(label)) => {
            r.section(
                "fixed-point subalgebra",
                vec![format!("Γ is {label}; only the realization is checked")],
                json!(null),
            );
            r.checks.push(Check::inconclusive(
                "thm1.2: explicit algebra",
                format!("needs finite type, Γ is {label}"),
            ));
            r.checks("thm1.2 realization", verify_realization_lift(&fc)?);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Every construction and verification on one input.
pub fn run_all(
    r: &mut Report,
    p: &Prepared,
    height: Option<i64>,
    seed: u64,
) -> Result<(), CliError> {
    run_mckay(r, p)?;
    run_fold(r, p)?;
    run_roots(r, p, height)?;
    run_root_fibres(r, p, height, seed)?;
    run_fixed_points(r, p, seed)?;
    run_duality(r, p)
}

/// Both folding-table rows at rank parameter `n`.
pub fn run_fold_table(r: &mut Report, n: usize, seed: u64) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Schema("--n must be at least 1".into()));
    }
    let expected = (n + 1) * (2 * n + 3);
    let mut rows = vec![(a_flip(n), format!("C{}", n + 1), format!("D{}", n + 2))];
    if n >= 2 {
        rows.push((
            d_flip(n + 2),
            format!("B{}", n + 1),
            format!("A{}", 2 * n - 1),
        ));
    }
    let mut table = Vec::new();
    let mut data = Vec::new();
    for (f, listed_gamma, listed_hat) in rows {
        let p = Prepared::from_fixture(f)?;
        let fc = p.folding()?;
        let gamma = gcm_label(&p.data.c)?;
        let hat = quiver_label(&p.mckay.quiver)?;
        let rep = verify_fixed_points(&fc, JACOBI_SAMPLES, seed)?;
        let gamma_dim = rep.expected_dim;
        table.push(format!(
            "{}: Γ = {gamma} (listed {listed_gamma}), Q̂ = {hat} (listed {listed_hat}), dim 𝔤(Γ) = {gamma_dim}, dim 𝔤(Q̂)^Ḡ = {}",
            p.name, rep.fixed_dim
        ));
        r.checks.push(Check::new(
            format!("{}: dim 𝔤(Γ) = dim 𝔤(Q̂)^Ḡ = (n+1)(2n+3)", p.name),
            rep.fixed_dim == gamma_dim && gamma_dim == expected,
            format!("{} = {gamma_dim} = {expected}", rep.fixed_dim),
        ));
        r.checks(&p.name, rep.checks.clone());
        data.push(json!({
            "fixture": p.name,
            "gamma": gamma,
            "gamma_listed": listed_gamma,
            "hat": hat,
            "hat_listed": listed_hat,
            "gamma_dim": gamma_dim,
            "fixed_dim": rep.fixed_dim,
        }));
    }
    if n < 2 {
        table.push("D-row needs n ≥ 2".into());
    }
    r.section(format!("folding table, n = {n}"), table, data);
    Ok(())
}
