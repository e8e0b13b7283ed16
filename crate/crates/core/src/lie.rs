//! Minimal realizations of symmetrizable Cartan matrices, explicit finite-type
//! Lie algebras of symmetric Cartan matrices, lifts of diagram automorphisms
//! and fixed-point subalgebras.
//!
//! The bracket on `𝔥 ⊕ ⊕_α k x_α` is `[H_i, x_α] = (α, ε_i) x_α`,
//! `[x_α, x_{−α}] = −α` and `[x_α, x_β] = ε(α, β) x_{α+β}`, where `ε` is the
//! bimultiplicative sign with `ε(ε_i, ε_i) = −1` and `ε(ε_i, ε_j) = −1` exactly
//! when an arrow runs `i → j`. Chevalley generators are `E_i = x_{ε_i}`,
//! `F_i = −x_{−ε_i}` and `H_i`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cartan::{cartan_of_quiver, classify};
use crate::error::{McKayError, Result};
use crate::field::{rat, Field, Rational};
use crate::folding::FoldingContext;
use crate::intmat::IntMatrix;
use crate::linalg::{Matrix, Subspace};
use crate::quiver::Quiver;
use crate::report::Check;
use crate::roots::{enumerate_roots, BilinearForm, LatticeVector};

/// A realization `(𝔥, {ε_j}, {H_i})` in coordinates on `𝔥`.
#[derive(Clone, Debug)]
pub struct Realization {
    pub c: IntMatrix,
    pub rank: usize,
    /// `H_i` as coordinate vectors.
    pub coroots: Vec<Vec<Rational>>,
    /// `ε_j` as row vectors, `ε_j(H) = ε_j · H`.
    pub roots: Vec<Vec<Rational>>,
    /// A basis of `𝔠 = {H : ε_j(H) = 0 ∀ j}`.
    pub center: Vec<Vec<Rational>>,
}

impl Realization {
    /// `𝔥 = kⁿ ⊕ k^{n−l}` with `H_i = e_i` and `ε_j = (c_{·j}, u_j)` for given extra columns `u`.
    fn with_extra(c: &IntMatrix, extra: Vec<Vec<Rational>>) -> Self {
        let n = c.rows();
        let dim = n + extra.len();
        let coroots = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); dim];
                v[i] = Rational::one();
                v
            })
            .collect();
        let roots: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut v: Vec<Rational> = (0..n).map(|i| Rational::from_i64(c[(i, j)])).collect();
                v.extend(extra.iter().map(|u| u[j].clone()));
                v
            })
            .collect();
        let center = Matrix::from_rows(roots.clone()).null_space();
        let rank = c.to_rational().rank();
        Realization {
            c: c.clone(),
            rank,
            coroots,
            roots,
            center,
        }
    }

    pub fn dim(&self) -> usize {
        self.roots.first().map_or(0, Vec::len)
    }

    pub fn pairing(&self, j: usize, h: &[Rational]) -> Rational {
        self.roots[j]
            .iter()
            .zip(h)
            .fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Checks `ε_j(H_i) = c_ij`, independence and `dim 𝔥 = 2n − l`.
    pub fn check(&self) -> Vec<Check> {
        let n = self.c.rows();
        let pairing_ok = (0..n).all(|i| {
            (0..n).all(|j| self.pairing(j, &self.coroots[i]) == Rational::from_i64(self.c[(i, j)]))
        });
        vec![
            Check::new("ε_j(H_i) = c_ij", pairing_ok, format!("{n}×{n}")),
            Check::new(
                "coroots and roots are independent",
                crate::linalg::rank_of(&self.coroots) == n
                    && crate::linalg::rank_of(&self.roots) == n,
                "full rank",
            ),
            Check::new(
                "dim 𝔥 = 2n − rank, dim 𝔠 = n − rank",
                self.dim() == 2 * n - self.rank && self.center.len() == n - self.rank,
                format!("dim 𝔥 = {}, dim 𝔠 = {}", self.dim(), self.center.len()),
            ),
        ]
    }
}

/// The minimal realization with the complement completed greedily by unit vectors.
pub fn minimal_realization(c: &IntMatrix) -> Result<Realization> {
    crate::cartan::check_gcm(c)?;
    let n = c.rows();
    let ct = c.transpose().to_rational();
    let mut cols: Vec<Vec<Rational>> = (0..n).map(|j| ct.column(j)).collect();
    let mut extra = Vec::new();
    let target = n;
    for k in 0..n {
        if crate::linalg::rank_of(&Matrix::from_columns(n, &cols).transpose().row_space()) == target
        {
            break;
        }
        let mut u = vec![Rational::zero(); n];
        u[k] = Rational::one();
        let before = Matrix::from_columns(n, &cols).rank();
        cols.push(u.clone());
        if Matrix::from_columns(n, &cols).rank() > before {
            extra.push(u);
        } else {
            cols.pop();
        }
    }
    Ok(Realization::with_extra(c, extra))
}

/// `𝔥 = 𝔥′ ⊕ 𝔥″` for a symmetric `A` with `ε(𝔥″) = ker A`, so permutations in `Aut(A)` act on `𝔥` with zero `φ`.
pub fn symmetric_realization(a: &IntMatrix) -> Result<Realization> {
    if !a.is_symmetric() {
        return Err(McKayError::NotSymmetric);
    }
    let kernel = a.to_rational().null_space();
    Ok(Realization::with_extra(a, kernel))
}

/// Finite-type Lie algebra of a symmetric Cartan matrix.
#[derive(Clone, Debug)]
pub struct FiniteLieAlgebra {
    pub cartan: IntMatrix,
    orientation: Vec<Vec<u8>>,
    /// Positive roots followed by their negatives.
    pub roots: Vec<LatticeVector>,
    root_index: HashMap<LatticeVector, usize>,
    table: Vec<Vec<(usize, i64)>>,
}

pub type Sparse = BTreeMap<usize, i64>;

impl FiniteLieAlgebra {
    /// Builds `𝔤(A)` using the arrows of `q` for the sign `ε`.
    pub fn new(q: &Quiver) -> Result<Self> {
        let a = cartan_of_quiver(q)?;
        let t = classify(&a)?;
        if !t.is_finite() {
            return Err(McKayError::NotFiniteType(t.label()));
        }
        let n = a.rows();
        let mut orientation = vec![vec![0u8; n]; n];
        for i in 0..n {
            orientation[i][i] = 1;
        }
        for arr in q.arrows() {
            orientation[arr.source][arr.target] ^= 1;
        }
        let view = enumerate_roots(&BilinearForm::symmetric(&a)?, 1)?;
        let pos = view.positive_roots();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), n + k))
            .collect();
        let mut alg = FiniteLieAlgebra {
            cartan: a,
            orientation,
            roots,
            root_index,
            table: Vec::new(),
        };
        alg.table = alg.build_table();
        Ok(alg)
    }

    pub fn rank(&self) -> usize {
        self.cartan.rows()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.roots.len()
    }

    /// Basis index of `x_α`.
    pub fn root_vector(&self, alpha: &[i64]) -> Option<usize> {
        self.root_index.get(alpha).copied()
    }

    /// The root of a basis index, or `None` for the Cartan part.
    pub fn root_of(&self, b: usize) -> Option<&LatticeVector> {
        (b >= self.rank()).then(|| &self.roots[b - self.rank()])
    }

    /// `ε(α, β)` as `±1`.
    pub fn sign(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0i64;
        for i in 0..a.len() {
            for j in 0..b.len() {
                if self.orientation[i][j] == 1 {
                    e += a[i] * b[j];
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn build_table(&self) -> Vec<Vec<(usize, i64)>> {
        let n = self.rank();
        let dim = self.dim();
        let mut table = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                table[x * dim + y] = match (self.root_of(x), self.root_of(y)) {
                    (None, None) => Vec::new(),
                    (None, Some(b)) => {
                        let w = (0..n).map(|j| self.cartan[(x, j)] * b[j]).sum::<i64>();
                        if w == 0 {
                            Vec::new()
                        } else {
                            vec![(y, w)]
                        }
                    }
                    (Some(a), None) => {
                        let w = (0..n).map(|j| self.cartan[(y, j)] * a[j]).sum::<i64>();
                        if w == 0 {
                            Vec::new()
                        } else {
                            vec![(x, -w)]
                        }
                    }
                    (Some(a), Some(b)) => {
                        let s: LatticeVector = a.iter().zip(b).map(|(p, q)| p + q).collect();
                        if s.iter().all(|&v| v == 0) {
                            (0..n).filter(|&i| a[i] != 0).map(|i| (i, -a[i])).collect()
                        } else if let Some(k) = self.root_vector(&s) {
                            vec![(k, self.sign(a, b))]
                        } else {
                            Vec::new()
                        }
                    }
                };
            }
        }
        table
    }

    pub fn bracket_basis(&self, x: usize, y: usize) -> &[(usize, i64)] {
        &self.table[x * self.dim() + y]
    }

    pub fn bracket_sparse(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&a, &u) in x {
            for (&b, &v) in y {
                for &(c, w) in self.bracket_basis(a, b) {
                    *out.entry(c).or_insert(0) += u * v * w;
                }
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, u) in x.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
            for (b, v) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let uv = u.clone() * v.clone();
                for &(c, w) in self.bracket_basis(a, b) {
                    out[c] = out[c].clone() + uv.clone() * Rational::from_i64(w);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, b: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[b] = Rational::one();
        v
    }

    pub fn e(&self, i: usize) -> Vec<Rational> {
        self.basis_vector(
            self.root_vector(&crate::roots::unit(self.rank(), i))
                .unwrap(),
        )
    }

    pub fn f(&self, i: usize) -> Vec<Rational> {
        let mut minus = vec![0; self.rank()];
        minus[i] = -1;
        let mut v = self.basis_vector(self.root_vector(&minus).unwrap());
        v.iter_mut().for_each(|x| *x = -x.clone());
        v
    }

    pub fn h(&self, i: usize) -> Vec<Rational> {
        self.basis_vector(i)
    }

    /// Jacobi identity and antisymmetry on `samples` random basis triples.
    pub fn check_jacobi(&self, samples: usize, seed: u64) -> Check {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim();
        let unit = |b: usize| Sparse::from([(b, 1)]);
        for _ in 0..samples {
            let (a, b, c) = (
                rng.gen_range(0..d),
                rng.gen_range(0..d),
                rng.gen_range(0..d),
            );
            let (x, y, z) = (unit(a), unit(b), unit(c));
            let mut sum = self.bracket_sparse(&self.bracket_sparse(&x, &y), &z);
            for (k, v) in self.bracket_sparse(&self.bracket_sparse(&y, &z), &x) {
                *sum.entry(k).or_insert(0) += v;
            }
            for (k, v) in self.bracket_sparse(&self.bracket_sparse(&z, &x), &y) {
                *sum.entry(k).or_insert(0) += v;
            }
            sum.retain(|_, v| *v != 0);
            let mut anti = self.bracket_sparse(&x, &y);
            for (k, v) in self.bracket_sparse(&y, &x) {
                *anti.entry(k).or_insert(0) += v;
            }
            anti.retain(|_, v| *v != 0);
            if !sum.is_empty() || !anti.is_empty() {
                return Check::fail("Jacobi identity", format!("basis triple ({a},{b},{c})"));
            }
        }
        Check::pass("Jacobi identity", format!("{samples} random basis triples"))
    }

    /// `[E_i, F_j] = δ_ij H_i`, `[H_i, E_j] = a_ij E_j`, `[H_i, F_j] = −a_ij F_j` and the Serre relations.
    pub fn check_serre(&self) -> Check {
        let n = self.rank();
        let gens: Vec<_> = (0..n).map(|i| (self.e(i), self.f(i), self.h(i))).collect();
        let a: Matrix<Rational> = self.cartan.to_rational();
        match check_presentation(self, &gens, &a) {
            None => Check::pass("Chevalley–Serre relations", format!("rank {n}")),
            Some(w) => Check::fail("Chevalley–Serre relations", w),
        }
    }
}

fn scale(v: &[Rational], s: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

fn add(v: &[Rational], w: &[Rational]) -> Vec<Rational> {
    v.iter()
        .zip(w)
        .map(|(a, b)| a.clone() + b.clone())
        .collect()
}

fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Checks the defining relations of `C` on generator triples `(E_i, F_i, H_i)`.
fn check_presentation(
    alg: &FiniteLieAlgebra,
    gens: &[(Vec<Rational>, Vec<Rational>, Vec<Rational>)],
    c: &Matrix<Rational>,
) -> Option<String> {
    let n = gens.len();
    for i in 0..n {
        for j in 0..n {
            let (ei, fi, hi) = &gens[i];
            let (ej, fj, _) = &gens[j];
            let ef = alg.bracket(ei, fj);
            let want = if i == j {
                hi.clone()
            } else {
                vec![Rational::zero(); alg.dim()]
            };
            if ef != want {
                return Some(format!("[E_{i}, F_{j}] ≠ δ H"));
            }
            if alg.bracket(hi, ej) != scale(ej, &c[(i, j)])
                || alg.bracket(hi, fj) != scale(fj, &-c[(i, j)].clone())
            {
                return Some(format!("[H_{i}, E/F_{j}] has the wrong weight"));
            }
            if i != j {
                let k = (Rational::one() - c[(i, j)].clone()).to_integer();
                let k = i64::try_from(k).unwrap_or(0);
                let (mut x, mut y) = (ej.clone(), fj.clone());
                for _ in 0..k {
                    x = alg.bracket(ei, &x);
                    y = alg.bracket(fi, &y);
                }
                if !is_zero(&x) || !is_zero(&y) {
                    return Some(format!("Serre relation fails for ({i},{j})"));
                }
            }
        }
    }
    None
}

/// A diagram automorphism lifted to `𝔤` as a signed permutation of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedAutomorphism {
    pub perm: Vec<usize>,
    /// Image index and sign of each basis vector.
    pub images: Vec<(usize, i64)>,
}

impl LiftedAutomorphism {
    pub fn identity(alg: &FiniteLieAlgebra) -> Self {
        LiftedAutomorphism {
            perm: (0..alg.rank()).collect(),
            images: (0..alg.dim()).map(|b| (b, 1)).collect(),
        }
    }

    pub fn apply_sparse(&self, x: &Sparse) -> Sparse {
        x.iter()
            .map(|(&b, &v)| (self.images[b].0, v * self.images[b].1))
            .collect()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); x.len()];
        for (b, v) in x.iter().enumerate() {
            let (c, s) = self.images[b];
            out[c] = v.clone() * Rational::from_i64(s);
        }
        out
    }

    pub fn compose(&self, other: &LiftedAutomorphism) -> LiftedAutomorphism {
        LiftedAutomorphism {
            perm: other.perm.iter().map(|&i| self.perm[i]).collect(),
            images: other
                .images
                .iter()
                .map(|&(c, s)| (self.images[c].0, s * self.images[c].1))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        let id: Vec<(usize, i64)> = (0..self.images.len()).map(|b| (b, 1)).collect();
        let mut p = self.clone();
        let mut k = 1;
        while p.images != id {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    /// Bracket preservation on every pair of basis vectors.
    pub fn preserves_bracket(&self, alg: &FiniteLieAlgebra) -> Option<(usize, usize)> {
        let d = alg.dim();
        for a in 0..d {
            for b in 0..d {
                let lhs = self.apply_sparse(&alg.bracket_basis(a, b).iter().copied().collect());
                let (ia, sa) = self.images[a];
                let (ib, sb) = self.images[b];
                let rhs: Sparse = alg
                    .bracket_basis(ia, ib)
                    .iter()
                    .map(|&(c, w)| (c, w * sa * sb))
                    .collect();
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// Lifts a permutation in `Aut(A)` with `E_i ↦ E_{π i}`, `F_i ↦ F_{π i}`, `H_i ↦ H_{π i}`.
pub fn lift_permutation(alg: &FiniteLieAlgebra, perm: &[usize]) -> Result<LiftedAutomorphism> {
    let n = alg.rank();
    if perm.len() != n
        || (0..n).any(|i| (0..n).any(|j| alg.cartan[(perm[i], perm[j])] != alg.cartan[(i, j)]))
    {
        return Err(McKayError::Inconsistent(
            "permutation is not a diagram automorphism".into(),
        ));
    }
    let permute = |a: &[i64]| -> LatticeVector {
        let mut out = vec![0; n];
        for i in 0..n {
            out[perm[i]] = a[i];
        }
        out
    };
    let mut eta: HashMap<LatticeVector, i64> = HashMap::new();
    let positive = alg.roots.len() / 2;
    for sign in [1i64, -1] {
        for r in &alg.roots[..positive] {
            let root: LatticeVector = r.iter().map(|x| sign * x).collect();
            let ht: i64 = r.iter().sum();
            if ht == 1 {
                eta.insert(root, 1);
                continue;
            }
            let (prev, simple) = (0..n)
                .filter_map(|i| {
                    let mut p = root.clone();
                    p[i] -= sign;
                    alg.root_vector(&p).map(|_| {
                        let mut s = vec![0; n];
                        s[i] = sign;
                        (p, s)
                    })
                })
                .next()
                .ok_or_else(|| {
                    McKayError::Inconsistent(format!("root {root:?} has no predecessor"))
                })?;
            let e = eta[&prev]
                * alg.sign(&permute(&prev), &permute(&simple))
                * alg.sign(&prev, &simple);
            eta.insert(root, e);
        }
    }
    let mut images: Vec<(usize, i64)> = (0..n).map(|i| (perm[i], 1)).collect();
    for r in &alg.roots {
        images.push((alg.root_vector(&permute(r)).unwrap(), eta[r]));
    }
    let lift = LiftedAutomorphism {
        perm: perm.to_vec(),
        images,
    };
    if let Some((a, b)) = lift.preserves_bracket(alg) {
        return Err(McKayError::Inconsistent(format!(
            "lift does not preserve [{a}, {b}]"
        )));
    }
    Ok(lift)
}

/// A subalgebra given by a basis, with its closure under the bracket.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub space: Subspace<Rational>,
}

impl Subalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        self.space.basis()
    }

    /// The first pair of basis vectors whose bracket leaves the span.
    pub fn closure_failure(&self, alg: &FiniteLieAlgebra) -> Option<(usize, usize)> {
        let b = self.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                if !self.space.contains(&alg.bracket(&b[i], &b[j])) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Common fixed vectors of the given automorphisms inside the coordinates `support`.
fn fixed_in(
    alg: &FiniteLieAlgebra,
    lifts: &[LiftedAutomorphism],
    support: &[usize],
) -> Vec<Vec<Rational>> {
    let k = support.len();
    let pos: HashMap<usize, usize> = support.iter().enumerate().map(|(p, &b)| (b, p)).collect();
    let mut rows = Vec::new();
    for l in lifts {
        for &b in support {
            // Row for coordinate b of (T − I)v.
            let mut row = vec![Rational::zero(); k];
            for &c in support {
                let (img, s) = l.images[c];
                if img == b {
                    row[pos[&c]] = row[pos[&c]].clone() + Rational::from_i64(s);
                }
            }
            row[pos[&b]] = row[pos[&b]].clone() - Rational::one();
            rows.push(row);
        }
    }
    let local: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..k)
            .map(|p| {
                (0..k)
                    .map(|q| {
                        if p == q {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(rows).null_space()
    };
    local
        .into_iter()
        .map(|v| {
            let mut full = vec![Rational::zero(); alg.dim()];
            for (p, &b) in support.iter().enumerate() {
                full[b] = v[p].clone();
            }
            full
        })
        .collect()
}

/// The fixed-point subalgebra of a set of automorphisms.
pub fn fixed_subalgebra(alg: &FiniteLieAlgebra, lifts: &[LiftedAutomorphism]) -> Subalgebra {
    let all: Vec<usize> = (0..alg.dim()).collect();
    Subalgebra {
        space: Subspace::spanned_by(alg.dim(), &fixed_in(alg, lifts, &all)),
    }
}

/// Outcome of the fixed-point comparison `𝔤(Γ) ≅ 𝔤(Q̂)^Ḡ`.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointReport {
    pub gamma_label: String,
    pub algebra_dim: usize,
    pub fixed_dim: usize,
    /// `|Δ_Γ| + |ℐ| + corank C`.
    pub expected_dim: usize,
    /// Nonzero weights of `𝔤^Ḡ` over `𝓗^Ḡ`, in `ℤℐ`, with their multiplicities.
    pub weights: Vec<(LatticeVector, usize)>,
    pub checks: Vec<Check>,
}

/// Linear-algebra checks of the zero-`φ` lift on `𝔥`, valid for any symmetrizable input.
pub fn verify_realization_lift(fc: &FoldingContext<'_>) -> Result<Vec<Check>> {
    let maps = &fc.maps;
    let ahat = &fc.form_hat.b;
    let nh = ahat.rows();
    let ng = maps.gamma_rank();
    let g = maps.group_order();
    let real = symmetric_realization(ahat)?;
    let s = real.dim() - nh;
    let c = fc.data.c.clone();
    let r = ng - c.to_rational().rank();
    let dim = real.dim();
    let kernel: Vec<Vec<Rational>> = (nh..dim)
        .map(|t| real.roots.iter().map(|e| e[t].clone()).collect())
        .collect();

    // T_g on 𝔥: H_k ↦ H_{g k}; on 𝔥″, the unique map lifting the permutation of ker Â.
    let mut transforms: Vec<Matrix<Rational>> = Vec::new();
    for el in 0..g {
        let mut t = Matrix::<Rational>::zeros(dim, dim);
        let unit: Vec<Rational> = (0..nh).map(|_| Rational::zero()).collect();
        for k in 0..nh {
            let mut v = unit.clone();
            v[k] = Rational::one();
            let img = maps.act_hat(el, &(0..nh).map(|x| i64::from(x == k)).collect::<Vec<_>>());
            let target = img.iter().position(|&x| x == 1).unwrap();
            t[(target, k)] = Rational::one();
        }
        if s > 0 {
            let basis = Matrix::from_columns(nh, &kernel);
            for (col, w) in kernel.iter().enumerate() {
                let mut moved = vec![Rational::zero(); nh];
                for k in 0..nh {
                    let img =
                        maps.act_hat(el, &(0..nh).map(|x| i64::from(x == k)).collect::<Vec<_>>());
                    let target = img.iter().position(|&x| x == 1).unwrap();
                    moved[target] = w[k].clone();
                }
                let coeffs = basis.solve(&moved).ok_or_else(|| {
                    McKayError::Inconsistent("kernel of Â is not G-stable".into())
                })?;
                for (u, x) in coeffs.into_iter().enumerate() {
                    t[(nh + u, nh + col)] = x;
                }
            }
        }
        transforms.push(t);
    }
    let mut checks = Vec::new();
    let compatible = transforms.iter().enumerate().all(|(el, t)| {
        (0..nh).all(|k| {
            let img = maps.act_hat(el, &(0..nh).map(|x| i64::from(x == k)).collect::<Vec<_>>());
            let gk = img.iter().position(|&x| x == 1).unwrap();
            (0..dim).all(|b| {
                let col = t.column(b);
                let lhs = real.pairing(gk, &col);
                let mut e = vec![Rational::zero(); dim];
                e[b] = Rational::one();
                lhs == real.pairing(k, &e)
            })
        })
    });
    checks.push(Check::new(
        "the lift satisfies ε_{g(iρ)}(ḡH) = ε_iρ(H)",
        compatible,
        format!("{g} elements"),
    ));

    // 𝒮 and 𝓗 = ann 𝒮.
    let mut diffs = Vec::new();
    for k in 0..ng {
        let f = maps.fibre(k);
        for w in &f[1..] {
            diffs.push(
                real.roots[f[0]]
                    .iter()
                    .zip(&real.roots[*w])
                    .map(|(a, b)| a.clone() - b.clone())
                    .collect::<Vec<_>>(),
            );
        }
    }
    let null = |rows: Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        if rows.is_empty() {
            Matrix::<Rational>::identity(dim).row_space()
        } else {
            Matrix::from_rows(rows).null_space()
        }
    };
    let unit_row = |b: usize| -> Vec<Rational> {
        (0..dim)
            .map(|x| {
                if x == b {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    };
    let cal_h = null(diffs.clone());
    let mut h_prime_rows = diffs.clone();
    h_prime_rows.extend((nh..dim).map(unit_row));
    let cal_h_prime = null(h_prime_rows);
    let mut h_second_rows = diffs.clone();
    h_second_rows.extend((0..nh).map(unit_row));
    let cal_h_second = null(h_second_rows);
    checks.push(Check::new(
        "dim 𝓗 = |ℐ| + s, dim 𝓗∩𝔥′ = |ℐ| + s − r, dim 𝓗∩𝔥″ = r",
        cal_h.len() == ng + s && cal_h_prime.len() == ng + s - r && cal_h_second.len() == r,
        format!(
            "{}, {}, {} with |ℐ| = {ng}, s = {s}, r = {r}",
            cal_h.len(),
            cal_h_prime.len(),
            cal_h_second.len()
        ),
    ));

    let mut fixed_rows = diffs;
    for t in &transforms {
        let m = t.sub(&Matrix::identity(dim));
        fixed_rows.extend((0..dim).map(|i| m.row(i).to_vec()));
    }
    let cal_hg = Subspace::spanned_by(dim, &null(fixed_rows));
    checks.push(Check::new(
        "dim 𝓗^Ḡ = |ℐ| + corank C",
        cal_hg.dim() == ng + r,
        format!("{} = {} + {r}", cal_hg.dim(), ng),
    ));

    let folded_h: Vec<Vec<Rational>> = (0..ng)
        .map(|k| {
            maps.fibre(k)
                .iter()
                .fold(vec![Rational::zero(); dim], |acc, &v| {
                    add(&acc, &real.coroots[v])
                })
        })
        .collect();
    let folded_eps: Vec<Vec<Rational>> = (0..ng)
        .map(|j| {
            let w = rat(fc.data.d[j], g as i64);
            let sum = maps
                .fibre(j)
                .iter()
                .fold(vec![Rational::zero(); dim], |acc, &v| {
                    add(&acc, &real.roots[v])
                });
            scale(&sum, &w)
        })
        .collect();
    let pair = |e: &[Rational], h: &[Rational]| {
        e.iter()
            .zip(h)
            .fold(Rational::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    };
    let in_space = folded_h.iter().all(|h| cal_hg.contains(h));
    let values = (0..ng).all(|i| {
        (0..ng).all(|j| pair(&folded_eps[j], &folded_h[i]) == Rational::from_i64(c[(i, j)]))
    });
    let restricted: Vec<Vec<Rational>> = folded_eps
        .iter()
        .map(|e| cal_hg.basis().iter().map(|h| pair(e, h)).collect())
        .collect();
    let independent = crate::linalg::rank_of(&folded_h) == ng
        && (ng == 0 || crate::linalg::rank_of(&restricted) == ng);
    checks.push(Check::new(
        "(𝓗^Ḡ, {(d_i/|G|)Σε_iρ}, {Σ H_iρ}) is a realization of C",
        in_space && values && independent && cal_hg.dim() == 2 * ng - (ng - r),
        format!("H_i fixed: {in_space}, ε̄_j(H_i) = c_ij: {values}, independent: {independent}"),
    ));

    // Form scaling on 𝔥′: (H̄_i, H̄_j)_Γ = b_ij/(d_i d_j) = (1/|G|)(φH̄_i, φH̄_j)_Q̂.
    let scaling = (0..ng).all(|i| {
        (0..ng).all(|j| {
            let lhs = rat(fc.data.b[(i, j)], fc.data.d[i] * fc.data.d[j]);
            let sum: i64 = maps
                .fibre(i)
                .iter()
                .flat_map(|&a| maps.fibre(j).iter().map(move |&b| (a, b)))
                .map(|(a, b)| ahat[(a, b)])
                .sum();
            lhs == rat(sum, g as i64)
        })
    });
    checks.push(Check::new(
        "(H̄, H̄′)_Γ = (1/|G|)(φH̄, φH̄′)_Q̂",
        scaling,
        format!("{ng}×{ng}"),
    ));

    let center_fixed = {
        let mut rows: Vec<Vec<Rational>> = real.roots.clone();
        for t in &transforms {
            let m = t.sub(&Matrix::identity(dim));
            rows.extend((0..dim).map(|i| m.row(i).to_vec()));
        }
        null(rows).len()
    };
    checks.push(Check::new(
        "dim 𝔠^G = dim 𝔠(Γ)",
        center_fixed == r,
        format!("{center_fixed} = {r}"),
    ));
    Ok(checks)
}

/// Builds `𝔤(Q̂)`, lifts `G`, and checks that `𝔤(Q̂)^Ḡ` is presented by `C`.
pub fn verify_fixed_points(
    fc: &FoldingContext<'_>,
    jacobi_samples: usize,
    seed: u64,
) -> Result<FixedPointReport> {
    let maps = &fc.maps;
    let gamma_type = classify(&fc.data.c)?;
    if !gamma_type.is_finite() {
        return Err(McKayError::NotFiniteType(gamma_type.label()));
    }
    let alg = FiniteLieAlgebra::new(&fc.mckay.quiver)?;
    let ng = maps.gamma_rank();
    let mut checks = vec![alg.check_jacobi(jacobi_samples, seed), alg.check_serre()];

    let group = fc.ctx.tables.group();
    let hat_tables = fc.mckay.induced.tables(&fc.mckay.quiver);
    let mut lifts = Vec::new();
    let mut orders_ok = true;
    for i in 0..group.rank() {
        let gen = group.generator(i);
        let idx = group.index_of(&gen);
        let lift = lift_permutation(&alg, hat_tables.vertex_perm(idx))?;
        orders_ok &= alg.dim() == 0 || (group.element_order(&gen) as usize) % lift.order() == 0;
        lifts.push(lift);
    }
    let commute = lifts
        .iter()
        .all(|a| lifts.iter().all(|b| a.compose(b) == b.compose(a)));
    checks.push(Check::pass(
        "lifted automorphisms preserve the bracket",
        format!("{} generators, all basis pairs", lifts.len()),
    ));
    checks.push(Check::new(
        "lifts commute and their orders divide the generator orders",
        commute && orders_ok,
        format!(
            "orders {:?}",
            lifts
                .iter()
                .map(LiftedAutomorphism::order)
                .collect::<Vec<_>>()
        ),
    ));

    let fixed = fixed_subalgebra(&alg, &lifts);
    checks.push(match fixed.closure_failure(&alg) {
        None => Check::pass(
            "𝔤^Ḡ is closed under the bracket",
            format!("dim {}", fixed.dim()),
        ),
        Some((i, j)) => Check::fail(
            "𝔤^Ḡ is closed under the bracket",
            format!("basis pair ({i},{j})"),
        ),
    });

    // (a) Folded generators.
    let sum_over = |k: usize, f: &dyn Fn(usize) -> Vec<Rational>| {
        maps.fibre(k)
            .iter()
            .fold(vec![Rational::zero(); alg.dim()], |acc, &v| {
                add(&acc, &f(v))
            })
    };
    let gens: Vec<_> = (0..ng)
        .map(|k| {
            (
                sum_over(k, &|v| alg.e(v)),
                sum_over(k, &|v| alg.f(v)),
                sum_over(k, &|v| alg.h(v)),
            )
        })
        .collect();
    let in_fixed = gens.iter().all(|(x, y, h)| {
        fixed.space.contains(x) && fixed.space.contains(y) && fixed.space.contains(h)
    });
    checks.push(Check::new(
        "(a) X_i, Y_i, H_i lie in 𝔤^Ḡ",
        in_fixed,
        format!("{ng} triples"),
    ));
    let c_rat = fc.data.c.to_rational();
    checks.push(Check::from_counterexample(
        "(a) X_i, Y_i, H_i satisfy the relations of C",
        check_presentation(&alg, &gens, &c_rat),
        format!("C = {:?}", fc.data.c.to_rows()),
    ));

    // (b) Realization.
    checks.extend(verify_realization_lift(fc)?.into_iter().map(|mut c| {
        c.name = format!("(b) {}", c.name);
        c
    }));

    // (c) Dimension and generation.
    let gamma_view = enumerate_roots(&fc.form_gamma, 1)?;
    let gamma_roots = gamma_view.positive_roots();
    let corank = ng - c_rat.rank();
    let expected_dim = 2 * gamma_roots.len() + ng + corank;
    checks.push(Check::new(
        "(c) dim 𝔤^Ḡ = |Δ_Γ| + |ℐ| + corank C",
        fixed.dim() == expected_dim,
        format!("{} = {expected_dim}", fixed.dim()),
    ));
    let mut generated = Subspace::zero(alg.dim());
    let mut frontier = Vec::new();
    for (x, y, _) in &gens {
        for v in [x, y] {
            if generated.insert(v) {
                frontier.push(v.clone());
            }
        }
    }
    let seeds: Vec<Vec<Rational>> = frontier.clone();
    while let Some(v) = frontier.pop() {
        for s in &seeds {
            let w = alg.bracket(s, &v);
            if generated.insert(&w) {
                frontier.push(w);
            }
        }
    }
    let spans =
        generated.dim() == fixed.dim() && generated.basis().iter().all(|v| fixed.space.contains(v));
    checks.push(Check::new(
        "(c) X_i, Y_i generate 𝔤^Ḡ",
        spans,
        format!("generated dim {}", generated.dim()),
    ));

    // (d) Weight decomposition over 𝓗^Ḡ.
    let mut groups: BTreeMap<LatticeVector, Vec<usize>> = BTreeMap::new();
    groups.insert(vec![0; ng], (0..alg.rank()).collect());
    for (k, r) in alg.roots.iter().enumerate() {
        groups.entry(maps.h(r)).or_default().push(alg.rank() + k);
    }
    let mut weights = Vec::new();
    let mut total = 0;
    let mut eigen_ok = true;
    let mut zero_ok = false;
    for (lambda, support) in &groups {
        let vecs = fixed_in(&alg, &lifts, support);
        total += vecs.len();
        let value: Vec<i64> = fc.data.c.mul_vec(lambda);
        for v in &vecs {
            for (i, (_, _, h)) in gens.iter().enumerate() {
                eigen_ok &= alg.bracket(h, v) == scale(v, &Rational::from_i64(value[i]));
            }
        }
        if lambda.iter().all(|&x| x == 0) {
            let space = Subspace::spanned_by(alg.dim(), &vecs);
            zero_ok = vecs.len() == ng && gens.iter().all(|(_, _, h)| space.contains(h));
        } else if !vecs.is_empty() {
            weights.push((lambda.clone(), vecs.len()));
        }
    }
    let mut expected: Vec<LatticeVector> = gamma_roots.clone();
    expected.extend(
        gamma_roots
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
    );
    expected.sort();
    let got: Vec<LatticeVector> = weights.iter().map(|(l, _)| l.clone()).collect();
    let one_dim = weights.iter().all(|(_, m)| *m == 1);
    checks.push(Check::new(
        "(d) 𝔤^Ḡ is 𝓗^Ḡ-diagonalizable with weights Δ_Γ, each of multiplicity 1",
        got == expected && one_dim && eigen_ok && total == fixed.dim(),
        format!("{} weights, total dim {total}", got.len()),
    ));
    checks.push(Check::new(
        "(d) the zero weight space is 𝓗^Ḡ",
        zero_ok,
        format!("dim {ng}"),
    ));

    // (e) ad X_i and ad Y_i are nilpotent on 𝔤^Ḡ.
    let bound = fixed.dim() + 1;
    let nilpotent = gens.iter().all(|(x, y, _)| {
        [x, y].iter().all(|z| {
            fixed.basis().iter().all(|v| {
                let mut w = v.clone();
                for _ in 0..bound {
                    if is_zero(&w) {
                        return true;
                    }
                    w = alg.bracket(z, &w);
                }
                is_zero(&w)
            })
        })
    });
    checks.push(Check::new(
        "(e) ad X_i and ad Y_i are nilpotent on 𝔤^Ḡ",
        nilpotent,
        format!("within {bound} steps"),
    ));

    Ok(FixedPointReport {
        gamma_label: gamma_type.label(),
        algebra_dim: alg.dim(),
        fixed_dim: fixed.dim(),
        expected_dim,
        weights,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn realizations() {
        let g2 = minimal_realization(&m(&[&[2, -3], &[-1, 2]])).unwrap();
        assert_eq!(g2.dim(), 2);
        assert!(g2.center.is_empty());
        assert!(g2.check().iter().all(Check::passed));
        let kr = minimal_realization(&m(&[&[2, -2], &[-2, 2]])).unwrap();
        assert_eq!(kr.dim(), 3);
        assert_eq!(kr.center.len(), 1);
        assert!(kr.check().iter().all(Check::passed));
        let a1 = minimal_realization(&m(&[&[2]])).unwrap();
        assert_eq!(a1.pairing(0, &a1.coroots[0]), Rational::from_i64(2));
        let aff = symmetric_realization(&m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])).unwrap();
        assert_eq!(aff.dim(), 4);
        assert!(aff.check().iter().all(Check::passed));
    }

    #[test]
    fn small_algebras() {
        let a2 = FiniteLieAlgebra::new(&Quiver::from_edges(2, &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(a2.dim(), 8);
        assert!(a2.check_jacobi(2000, 1).passed());
        assert!(a2.check_serre().passed());
        let d4 = FiniteLieAlgebra::new(&Quiver::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap())
            .unwrap();
        assert_eq!(d4.dim(), 28);
        assert!(d4.check_jacobi(2000, 2).passed());
        assert!(d4.check_serre().passed());
        let id = lift_permutation(&d4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(id, LiftedAutomorphism::identity(&d4));
        let tri = lift_permutation(&d4, &[0, 2, 3, 1]).unwrap();
        assert_eq!(tri.order(), 3);
        assert_eq!(fixed_subalgebra(&d4, &[tri]).dim(), 14);
        assert_eq!(fixed_subalgebra(&d4, &[]).dim(), 28);
        assert!(lift_permutation(&d4, &[1, 0, 2, 3]).is_err());
        assert!(FiniteLieAlgebra::new(&Quiver::from_edges(2, &[(0, 1), (0, 1)]).unwrap()).is_err());
    }
}
