//! The folding maps `f`, `Σ`, `π = f∘Σ` and `h` between the lattices of `Q`,
//! `Γ` and `Q̂`, with exhaustive and sampled checks of their identities.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{cartan_of_quiver, ValuedGraphData};
use crate::error::{McKayError, Result};
use crate::mckay::{ActionContext, McKayQuiver};
use crate::quiver::Quiver;
use crate::report::Check;
use crate::roots::{enumerate_roots, BilinearForm, LatticeVector, RootSystemView};

#[derive(Clone, Debug)]
pub struct FoldingMaps {
    vertex_orbit: Vec<usize>,
    representatives: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    d: Vec<i64>,
    perms: Vec<Vec<usize>>,
    hat_over: Vec<usize>,
    fibres: Vec<Vec<usize>>,
    hat_perms: Vec<Vec<usize>>,
}

fn permute(perm: &[usize], v: &[i64]) -> LatticeVector {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[perm[i]] = x;
    }
    out
}

impl FoldingMaps {
    pub fn new(ctx: &ActionContext, mq: &McKayQuiver) -> Self {
        let perms = (0..ctx.tables.element_count())
            .map(|g| ctx.tables.vertex_perm(g).to_vec())
            .collect();
        let hat_tables = mq.induced.tables(&mq.quiver);
        let hat_perms = (0..hat_tables.element_count())
            .map(|g| hat_tables.vertex_perm(g).to_vec())
            .collect();
        FoldingMaps {
            vertex_orbit: ctx.orbits.vertex_orbit.clone(),
            representatives: ctx.orbits.representatives.clone(),
            orbits: ctx.orbits.orbits.clone(),
            d: ctx.orbits.orbit_sizes(),
            perms,
            hat_over: mq.vertices.iter().map(|v| v.orbit).collect(),
            fibres: (0..ctx.orbits.orbit_count())
                .map(|k| mq.vertices_over(k))
                .collect(),
            hat_perms,
        }
    }

    pub fn q_rank(&self) -> usize {
        self.vertex_orbit.len()
    }

    pub fn gamma_rank(&self) -> usize {
        self.representatives.len()
    }

    pub fn hat_rank(&self) -> usize {
        self.hat_over.len()
    }

    pub fn group_order(&self) -> usize {
        self.perms.len()
    }

    /// Vertices of `Q̂` over orbit `k`.
    pub fn fibre(&self, k: usize) -> &[usize] {
        &self.fibres[k]
    }

    pub fn orbit(&self, k: usize) -> &[usize] {
        &self.orbits[k]
    }

    /// `(g·α)_{g(i)} = α_i` on `ℤI`.
    pub fn act(&self, g: usize, v: &[i64]) -> LatticeVector {
        permute(&self.perms[g], v)
    }

    /// The induced permutation action on `ℤÎ`.
    pub fn act_hat(&self, g: usize, v: &[i64]) -> LatticeVector {
        permute(&self.hat_perms[g], v)
    }

    pub fn is_fixed(&self, v: &[i64]) -> bool {
        (0..v.len()).all(|i| v[i] == v[self.representatives[self.vertex_orbit[i]]])
    }

    /// Restriction of a `G`-fixed vector to the orbit representatives.
    pub fn f(&self, v: &[i64]) -> Result<LatticeVector> {
        if v.len() != self.q_rank() {
            return Err(McKayError::WrongLattice {
                expected: self.q_rank(),
                found: v.len(),
            });
        }
        if !self.is_fixed(v) {
            return Err(McKayError::Inconsistent(format!("{v:?} is not G-fixed")));
        }
        Ok(self.representatives.iter().map(|&r| v[r]).collect())
    }

    pub fn f_inv(&self, v: &[i64]) -> LatticeVector {
        self.vertex_orbit.iter().map(|&k| v[k]).collect()
    }

    /// `Σ(α) = Σ_{g ∈ G_α} g·α` over coset representatives of the stabilizer of `α`.
    pub fn sigma(&self, v: &[i64]) -> LatticeVector {
        let images: BTreeSet<LatticeVector> =
            (0..self.group_order()).map(|g| self.act(g, v)).collect();
        let mut out = vec![0; v.len()];
        for w in images {
            for (o, x) in out.iter_mut().zip(w) {
                *o += x;
            }
        }
        out
    }

    /// Order of the stabilizer `H_α`.
    pub fn stabilizer_order(&self, v: &[i64]) -> usize {
        (0..self.group_order())
            .filter(|&g| self.act(g, v) == v)
            .count()
    }

    pub fn pi(&self, v: &[i64]) -> LatticeVector {
        self.f(&self.sigma(v)).expect("Σ(α) is G-fixed")
    }

    /// `h(β)_k = Σ_ρ β_{(k,ρ)}`.
    pub fn h(&self, v: &[i64]) -> LatticeVector {
        let mut out = vec![0; self.gamma_rank()];
        for (i, &x) in v.iter().enumerate() {
            out[self.hat_over[i]] += x;
        }
        out
    }

    /// `S_k = ∏_{i ∈ 𝒪_k} r_i` on `ℤI`.
    pub fn s(&self, form: &BilinearForm, k: usize, v: &[i64]) -> Result<LatticeVector> {
        form.reflect_block(&self.orbits[k], v)
    }

    /// `Ŝ_k = ∏_ρ r_{(k,ρ)}` on `ℤÎ`.
    pub fn s_hat(&self, form: &BilinearForm, k: usize, v: &[i64]) -> Result<LatticeVector> {
        form.reflect_block(&self.fibres[k], v)
    }
}

/// Everything needed to compare the three lattices of one input.
pub struct FoldingContext<'a> {
    pub quiver: &'a Quiver,
    pub ctx: &'a ActionContext,
    pub data: &'a ValuedGraphData,
    pub mckay: &'a McKayQuiver,
    pub maps: FoldingMaps,
    pub form_q: BilinearForm,
    pub form_gamma: BilinearForm,
    pub form_hat: BilinearForm,
}

impl<'a> FoldingContext<'a> {
    pub fn new(
        quiver: &'a Quiver,
        ctx: &'a ActionContext,
        data: &'a ValuedGraphData,
        mckay: &'a McKayQuiver,
    ) -> Result<Self> {
        Ok(FoldingContext {
            quiver,
            ctx,
            data,
            mckay,
            maps: FoldingMaps::new(ctx, mckay),
            form_q: BilinearForm::symmetric(&cartan_of_quiver(quiver)?)?,
            form_gamma: BilinearForm::folded(&data.b, &data.d),
            form_hat: BilinearForm::symmetric(&cartan_of_quiver(&mckay.quiver)?)?,
        })
    }
}

/// Calls `visit` on every vector of `[−r, r]^n`, stopping at the first `Some`.
fn scan_box(n: usize, r: i64, mut visit: impl FnMut(&[i64]) -> Option<String>) -> Option<String> {
    let mut v = vec![-r; n];
    loop {
        if let Some(w) = visit(&v) {
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if v[i] < r {
                v[i] += 1;
                break;
            }
            v[i] = -r;
            i += 1;
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, r: i64) -> LatticeVector {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

const BOX: i64 = 3;
/// Largest rank scanned exhaustively; `7^8` vectors.
const MAX_EXHAUSTIVE_RANK: usize = 8;

/// Walks the box exhaustively when small enough, otherwise `samples` random points.
fn scan(
    n: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mut visit: impl FnMut(&[i64]) -> Option<String>,
) -> (Option<String>, String) {
    if n <= MAX_EXHAUSTIVE_RANK {
        (
            scan_box(n, BOX, visit),
            format!("exhaustive on [-{BOX},{BOX}]^{n}"),
        )
    } else {
        let err = (0..samples).find_map(|_| visit(&random_vector(rng, n, BOX)));
        (err, format!("{samples} samples in [-{BOX},{BOX}]^{n}"))
    }
}

/// Checks of the folding identities: `f` is a form-preserving bijection
/// intertwining `S_i` and `γ_i`, and `h` intertwines `Ŝ_i` and `γ_i`.
pub fn verify_folding_identities(fc: &FoldingContext<'_>, samples: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = &fc.maps;
    let (nq, ng, nh) = (maps.q_rank(), maps.gamma_rank(), maps.hat_rank());
    let mut checks = Vec::new();

    let (err, how) = scan(ng, samples, &mut rng, |x| {
        let y = maps.f_inv(x);
        match maps.f(&y) {
            Ok(z) if z == x => None,
            _ => Some(format!("f(f⁻¹({x:?})) ≠ {x:?}")),
        }
    });
    checks.push(Check::from_counterexample(
        "f is a bijection onto the fixed lattice",
        err,
        how,
    ));

    let err = (0..samples).find_map(|_| {
        let (x, y) = (
            random_vector(&mut rng, ng, BOX),
            random_vector(&mut rng, ng, BOX),
        );
        let s: LatticeVector = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let fs = maps.f(&maps.f_inv(&s)).ok()?;
        let sum: LatticeVector = maps
            .f(&maps.f_inv(&x))
            .ok()?
            .iter()
            .zip(&maps.f(&maps.f_inv(&y)).ok()?)
            .map(|(a, b)| a + b)
            .collect();
        (fs != sum).then(|| format!("f not additive at {x:?}, {y:?}"))
    });
    checks.push(Check::from_counterexample(
        "f is additive",
        err,
        format!("{samples} samples"),
    ));

    let pairs_exhaustive = 2 * ng <= MAX_EXHAUSTIVE_RANK;
    let form_check = |x: &[i64], y: &[i64]| -> Option<String> {
        let lhs = fc.form_q.pair(&maps.f_inv(x), &maps.f_inv(y));
        let rhs = fc.form_gamma.pair(x, y);
        (lhs != rhs).then(|| format!("(f⁻¹{x:?}, f⁻¹{y:?})_Q = {lhs} ≠ {rhs}"))
    };
    let (err, how) = if pairs_exhaustive {
        let err = scan_box(2 * ng, BOX, |xy| form_check(&xy[..ng], &xy[ng..]));
        (err, format!("exhaustive on pairs in [-{BOX},{BOX}]^{ng}"))
    } else {
        let err = (0..samples).find_map(|_| {
            form_check(
                &random_vector(&mut rng, ng, BOX),
                &random_vector(&mut rng, ng, BOX),
            )
        });
        (err, format!("{samples} sampled pairs"))
    };
    checks.push(Check::from_counterexample(
        "(α,β)_Q = (f α, f β)_Γ on fixed vectors",
        err,
        how,
    ));

    let (err, how) = scan(ng, samples, &mut rng, |x| {
        let y = maps.f_inv(x);
        for k in 0..ng {
            let lhs = maps.f(&maps.s(&fc.form_q, k, &y).ok()?).ok();
            let rhs = fc.form_gamma.reflect(k, x).ok();
            let mut rev = maps.orbit(k).to_vec();
            rev.reverse();
            let other = fc
                .form_q
                .reflect_block(&rev, &y)
                .ok()
                .and_then(|v| maps.f(&v).ok());
            if lhs.is_none() || lhs != rhs || other != lhs {
                return Some(format!("f(S_{k}(f⁻¹{x:?})) = {lhs:?} ≠ γ_{k} = {rhs:?}"));
            }
        }
        None
    });
    checks.push(Check::from_counterexample("f(S_i α) = γ_i(f α)", err, how));

    let (err, how) = scan(nh, samples, &mut rng, |b| {
        let hb = maps.h(b);
        for k in 0..ng {
            let lhs = fc.form_gamma.pair_simple(&hb, k);
            let rhs: i64 = maps.d[k]
                * maps
                    .fibre(k)
                    .iter()
                    .map(|&v| fc.form_hat.pair_simple(b, v))
                    .sum::<i64>();
            if lhs != rhs {
                return Some(format!("(h{b:?}, ε̄_{k})_Γ = {lhs} ≠ {rhs}"));
            }
        }
        None
    });
    checks.push(Check::from_counterexample(
        "(h β, ε̄_i)_Γ = d_i Σ_ρ (β, ε_iρ)_Q̂",
        err,
        how,
    ));

    let (err, how) = scan(nh, samples, &mut rng, |b| {
        let hb = maps.h(b);
        for k in 0..ng {
            let lhs = maps.h(&maps.s_hat(&fc.form_hat, k, b).ok()?);
            let rhs = fc.form_gamma.reflect_unchecked(k, &hb);
            if lhs != rhs {
                return Some(format!("h(Ŝ_{k}{b:?}) = {lhs:?} ≠ {rhs:?}"));
            }
        }
        None
    });
    checks.push(Check::from_counterexample("h(Ŝ_i β) = γ_i(h β)", err, how));

    let err = (0..samples).find_map(|_| {
        let a = random_vector(&mut rng, nq, BOX);
        let s = maps.sigma(&a);
        if !maps.is_fixed(&s) {
            return Some(format!("Σ({a:?}) not fixed"));
        }
        let g = rng.gen_range(0..maps.group_order());
        (maps.sigma(&maps.act(g, &a)) != s).then(|| format!("Σ(g{a:?}) ≠ Σ({a:?})"))
    });
    checks.push(Check::from_counterexample(
        "Σ(α) is fixed and Σ(gα) = Σ(α)",
        err,
        format!("{samples} samples"),
    ));

    for (name, form) in [
        ("Q", &fc.form_q),
        ("Γ", &fc.form_gamma),
        ("Q̂", &fc.form_hat),
    ] {
        let n = form.rank();
        let err = (0..samples).find_map(|_| {
            let (v, w) = (
                random_vector(&mut rng, n, BOX),
                random_vector(&mut rng, n, BOX),
            );
            let i = rng.gen_range(0..n);
            let (rv, rw) = (form.reflect_unchecked(i, &v), form.reflect_unchecked(i, &w));
            (form.pair(&rv, &rw) != form.pair(&v, &w) || form.reflect_unchecked(i, &rv) != v)
                .then(|| format!("r_{i} fails on {v:?}, {w:?}"))
        });
        checks.push(Check::from_counterexample(
            format!("reflections of {name} are form-preserving involutions"),
            err,
            format!("{samples} random pairs"),
        ));
    }
    checks
}

#[derive(Clone, Debug, Serialize)]
pub struct Fibre {
    pub root: LatticeVector,
    pub real: bool,
    pub members: Vec<LatticeVector>,
    pub members_real: bool,
    pub single_orbit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootFibreReport {
    pub height: i64,
    pub hat_roots: usize,
    pub gamma_roots: usize,
    pub fibres: Vec<Fibre>,
    pub checks: Vec<Check>,
}

/// Compares `h(Δ_Q̂⁺)` with `Δ_Γ⁺` up to height `height`.
pub fn verify_root_fibres(fc: &FoldingContext<'_>, height: i64) -> Result<RootFibreReport> {
    let maps = &fc.maps;
    let gamma: RootSystemView = enumerate_roots(&fc.form_gamma, height)?;
    let hat: RootSystemView = enumerate_roots(&fc.form_hat, gamma.height_bound.max(height))?;
    let bound = gamma.height_bound;
    let in_bound = |v: &[i64]| gamma.complete || crate::roots::height(v) <= bound;
    let hat_roots: Vec<LatticeVector> = hat
        .positive_roots()
        .into_iter()
        .filter(|r| in_bound(r))
        .collect();
    let gamma_roots = gamma.positive_roots();

    let mut checks = Vec::new();
    let stray: Vec<String> = hat_roots
        .iter()
        .filter(|b| !gamma.contains(&maps.h(b)))
        .map(|b| format!("h({b:?}) = {:?}", maps.h(b)))
        .collect();
    checks.push(Check::new(
        "h maps positive roots of Q̂ into positive roots of Γ",
        stray.is_empty(),
        if stray.is_empty() {
            format!("{} roots", hat_roots.len())
        } else {
            stray.join("; ")
        },
    ));

    let mut fibres = Vec::new();
    for a in &gamma_roots {
        let members: Vec<LatticeVector> = hat_roots
            .iter()
            .filter(|b| maps.h(b) == *a)
            .cloned()
            .collect();
        let members_real = members.iter().all(|b| hat.is_real(b));
        let single_orbit = members.first().is_some_and(|b0| {
            let orbit: BTreeSet<LatticeVector> = (0..maps.group_order())
                .map(|g| maps.act_hat(g, b0))
                .collect();
            orbit == members.iter().cloned().collect()
        });
        fibres.push(Fibre {
            root: a.clone(),
            real: gamma.is_real(a),
            members,
            members_real,
            single_orbit,
        });
    }

    let empty: Vec<String> = fibres
        .iter()
        .filter(|f| f.members.is_empty())
        .map(|f| format!("{:?}", f.root))
        .collect();
    let scope = if gamma.complete {
        "all".to_string()
    } else {
        format!("up to height {bound}")
    };
    checks.push(Check::new(
        "every positive root of Γ has a nonempty fibre",
        empty.is_empty(),
        if empty.is_empty() {
            format!("{} roots, {scope}", gamma_roots.len())
        } else {
            empty.join("; ")
        },
    ));

    let bad: Vec<String> = fibres
        .iter()
        .filter(|f| f.real && !(f.members_real && f.single_orbit))
        .map(|f| format!("{:?}", f.root))
        .collect();
    checks.push(Check::new(
        "fibres over real roots are single orbits of real roots",
        bad.is_empty(),
        if bad.is_empty() {
            "ok".into()
        } else {
            bad.join("; ")
        },
    ));

    let g = maps.group_order() as i64;
    let bad: Vec<String> = fibres
        .iter()
        .filter(|f| f.real)
        .filter_map(|f| {
            let pre = maps.f_inv(&f.root);
            let half = fc.form_q.pair(&pre, &pre) / 2;
            (half * f.members.len() as i64 != g).then(|| {
                format!(
                    "{:?}: ½(f⁻¹α,f⁻¹α) = {half}, fibre {}",
                    f.root,
                    f.members.len()
                )
            })
        })
        .collect();
    checks.push(Check::new(
        "½(f⁻¹α, f⁻¹α)_Q · |fibre| = |G| for real α",
        bad.is_empty(),
        if bad.is_empty() {
            "ok".into()
        } else {
            bad.join("; ")
        },
    ));

    let total: usize = fibres.iter().map(|f| f.members.len()).sum();
    checks.push(Check::new(
        "fibre sizes sum to the number of positive roots of Q̂",
        total == hat_roots.len(),
        format!("{total} vs {}", hat_roots.len()),
    ));

    Ok(RootFibreReport {
        height: bound,
        hat_roots: hat_roots.len(),
        gamma_roots: gamma_roots.len(),
        fibres,
        checks,
    })
}
