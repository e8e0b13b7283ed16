//! Cartan matrices of quivers, folded Cartan data `B = DC`, valued graphs,
//! the duality `Ĉ = Cᵀ`, and the finite/affine/indefinite trichotomy.

use std::collections::VecDeque;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::action::OrbitData;
use crate::error::{McKayError, Result};
use crate::field::{rat, Field, Rational};
use crate::intmat::IntMatrix;
use crate::linalg::Matrix;
use crate::mckay::{ActionContext, McKayQuiver};
use crate::quiver::Quiver;

/// The symmetric Cartan matrix `a_ii = 2`, `a_ij = −#(edges between i and j)`.
pub fn cartan_of_quiver(q: &Quiver) -> Result<IntMatrix> {
    if let Some(a) = q.first_loop() {
        return Err(McKayError::Loop(q.arrow(a).id.clone()));
    }
    let n = q.vertex_count();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = 2;
    }
    for a in q.arrows() {
        m[(a.source, a.target)] -= 1;
        m[(a.target, a.source)] -= 1;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuedEdge {
    pub i: usize,
    pub j: usize,
    /// `(|c_ji|, |c_ij|)`.
    pub label: (i64, i64),
}

/// Folded data on the representatives `ℐ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuedGraphData {
    pub representatives: Vec<usize>,
    pub b: IntMatrix,
    /// Orbit sizes `d_i`.
    pub d: Vec<i64>,
    pub c: IntMatrix,
    pub edges: Vec<ValuedEdge>,
}

/// `b_kl` counts edges between orbits, `d_k = |𝒪_k|`, `C = D⁻¹ B`.
pub fn fold_cartan(q: &Quiver, orbits: &OrbitData) -> Result<ValuedGraphData> {
    let n = orbits.orbit_count();
    let d = orbits.orbit_sizes();
    let mut b = IntMatrix::zeros(n, n);
    for k in 0..n {
        b[(k, k)] = 2 * d[k];
    }
    for a in q.arrows() {
        let (k, l) = (orbits.vertex_orbit[a.source], orbits.vertex_orbit[a.target]);
        if k == l {
            return Err(McKayError::InvalidAction(vec![format!(
                "arrow {} joins two vertices of the same orbit",
                a.id
            )]));
        }
        b[(k, l)] -= 1;
        b[(l, k)] -= 1;
    }
    let mut c = IntMatrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            if b[(k, l)] % d[k] != 0 {
                return Err(McKayError::Inconsistent(format!(
                    "b[{k}][{l}] is not divisible by d[{k}]"
                )));
            }
            c[(k, l)] = b[(k, l)] / d[k];
        }
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| c[(i, j)] != 0)
        .map(|(i, j)| ValuedEdge {
            i,
            j,
            label: (c[(j, i)].abs(), c[(i, j)].abs()),
        })
        .collect();
    Ok(ValuedGraphData {
        representatives: orbits.representatives.clone(),
        b,
        d,
        c,
        edges,
    })
}

/// Every `b_ij = Σ_{i′∈𝒪_i, j′∈𝒪_j} a_{i′j′}`.
pub fn check_orbit_sum_identity(
    q: &Quiver,
    orbits: &OrbitData,
    data: &ValuedGraphData,
) -> Result<bool> {
    let a = cartan_of_quiver(q)?;
    let n = orbits.orbit_count();
    Ok((0..n).all(|k| {
        (0..n).all(|l| {
            let s: i64 = orbits.orbits[k]
                .iter()
                .flat_map(|&i| orbits.orbits[l].iter().map(move |&j| (i, j)))
                .map(|(i, j)| a[(i, j)])
                .sum();
            s == data.b[(k, l)]
        })
    }))
}

/// Every `b_ij = d_i Σ_ρ a_{(iρ)(jσ)}` for each fixed `σ`; ties the folds of `Q` and `Q̂`.
pub fn check_bridge_identity(data: &ValuedGraphData, m: &McKayQuiver) -> Result<bool> {
    let ahat = cartan_of_quiver(&m.quiver)?;
    let n = data.d.len();
    Ok((0..n).all(|i| {
        (0..n).all(|j| {
            m.vertices_over(j).iter().all(|&s| {
                let sum: i64 = m.vertices_over(i).iter().map(|&r| ahat[(r, s)]).sum();
                data.d[i] * sum == data.b[(i, j)]
            })
        })
    }))
}

/// Outcome of comparing the fold of `(Q̂, G)` with the transpose of the fold of `(Q, G)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub c: IntMatrix,
    /// `Ĉ` reindexed so row `k` belongs to the orbit over orbit `k` of `Q`.
    pub c_hat: IntMatrix,
    pub d_hat: Vec<i64>,
    pub b_hat: IntMatrix,
    pub c_hat_is_transpose: bool,
    pub d_hat_matches: bool,
    pub b_hat_matches: bool,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.c_hat_is_transpose && self.d_hat_matches && self.b_hat_matches
    }
}

pub fn dual_check(
    ctx: &ActionContext,
    data: &ValuedGraphData,
    m: &McKayQuiver,
) -> Result<DualityReport> {
    let hat_ctx = ActionContext::new(&m.quiver, &m.induced)?;
    let hat = fold_cartan(&m.quiver, &hat_ctx.orbits)?;
    let n = data.d.len();
    // Orbit k̂ of Q̂ lies over the orbit of Q carrying its representative.
    let over: Vec<usize> = hat_ctx
        .orbits
        .representatives
        .iter()
        .map(|&r| m.vertices[r].orbit)
        .collect();
    let mut pos = vec![usize::MAX; n];
    for (kh, &k) in over.iter().enumerate() {
        pos[k] = kh;
    }
    if over.len() != n || pos.contains(&usize::MAX) {
        return Err(McKayError::Inconsistent(
            "orbits of Q̂ do not match orbits of Q".into(),
        ));
    }
    let mut c_hat = IntMatrix::zeros(n, n);
    let mut b_hat = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            c_hat[(i, j)] = hat.c[(pos[i], pos[j])];
            b_hat[(i, j)] = hat.b[(pos[i], pos[j])];
        }
    }
    let d_hat: Vec<i64> = (0..n).map(|i| hat.d[pos[i]]).collect();
    let g = ctx.tables.group().order() as i64;
    let d_hat_matches = (0..n).all(|i| d_hat[i] * data.d[i] == g);
    let b_hat_matches =
        (0..n).all(|i| (0..n).all(|j| b_hat[(i, j)] * data.d[i] * data.d[j] == g * data.b[(i, j)]));
    Ok(DualityReport {
        c: data.c.clone(),
        c_hat_is_transpose: c_hat == data.c.transpose(),
        c_hat,
        d_hat,
        b_hat,
        d_hat_matches,
        b_hat_matches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GcmType {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentType {
    pub vertices: Vec<usize>,
    pub kind: GcmType,
    /// Dynkin label in Kac's convention, for finite components.
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeClassification {
    /// Finite if every component is; indefinite if some component is; affine otherwise.
    pub overall: GcmType,
    pub components: Vec<ComponentType>,
    /// Positive integers `d_i` with `d_i c_ij = d_j c_ji`, minimal per component.
    pub symmetrizer: Vec<i64>,
}

impl TypeClassification {
    pub fn is_finite(&self) -> bool {
        self.overall == GcmType::Finite
    }

    /// Labels of the finite components joined by `+`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| c.label.clone().unwrap_or_else(|| format!("{:?}", c.kind)))
            .collect();
        parts.join("+")
    }
}

/// Checks the generalized Cartan matrix axioms.
pub fn check_gcm(c: &IntMatrix) -> Result<()> {
    let n = c.rows();
    if c.cols() != n {
        return Err(McKayError::NotGeneralizedCartan(
            "matrix is not square".into(),
        ));
    }
    for i in 0..n {
        if c[(i, i)] != 2 {
            return Err(McKayError::NotGeneralizedCartan(format!(
                "diagonal entry {i} is not 2"
            )));
        }
        for j in 0..n {
            if i != j && (c[(i, j)] > 0 || (c[(i, j)] == 0) != (c[(j, i)] == 0)) {
                return Err(McKayError::NotGeneralizedCartan(format!(
                    "bad off-diagonal entries at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

fn gcm_components(c: &IntMatrix) -> Vec<Vec<usize>> {
    let n = c.rows();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![];
        let mut queue = VecDeque::from([s]);
        comp[s] = out.len();
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for w in 0..n {
                if w != v && c[(v, w)] != 0 && comp[w] == usize::MAX {
                    comp[w] = out.len();
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Minimal positive integer symmetrizer, or an error if none exists.
pub fn symmetrizer(c: &IntMatrix) -> Result<Vec<i64>> {
    check_gcm(c)?;
    let n = c.rows();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for comp in gcm_components(c) {
        d[comp[0]] = Some(rat(1, 1));
        let mut queue = VecDeque::from([comp[0]]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if j != i && c[(i, j)] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * rat(c[(i, j)], c[(j, i)]));
                    queue.push_back(j);
                }
            }
        }
        let den = comp.iter().fold(1i64, |acc, &i| {
            acc.lcm(&i64::try_from(d[i].as_ref().unwrap().denom().clone()).unwrap())
        });
        let nums: Vec<i64> = comp
            .iter()
            .map(|&i| i64::try_from((d[i].clone().unwrap() * rat(den, 1)).to_integer()).unwrap())
            .collect();
        let g = nums.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&i, &x) in comp.iter().zip(&nums) {
            d[i] = Some(rat(x / g, 1));
        }
    }
    let d: Vec<i64> = d
        .into_iter()
        .map(|x| i64::try_from(x.unwrap().to_integer()).unwrap())
        .collect();
    for i in 0..n {
        for j in 0..n {
            if d[i] * c[(i, j)] != d[j] * c[(j, i)] {
                return Err(McKayError::NotGeneralizedCartan(
                    "matrix is not symmetrizable".into(),
                ));
            }
        }
    }
    Ok(d)
}

fn positive_definite(b: &Matrix<Rational>) -> bool {
    (1..=b.rows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        b.submatrix(&idx, &idx).determinant().is_positive()
    })
}

/// Classifies each connected component by principal minors of the symmetrized matrix.
pub fn classify(c: &IntMatrix) -> Result<TypeClassification> {
    let d = symmetrizer(c)?;
    let n = c.rows();
    let mut b = Matrix::<Rational>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = Rational::from_i64(d[i] * c[(i, j)]);
        }
    }
    let mut components = Vec::new();
    for comp in gcm_components(c) {
        let sub = b.submatrix(&comp, &comp);
        let kind = if positive_definite(&sub) {
            GcmType::Finite
        } else if sub.determinant().is_zero()
            && (0..comp.len()).all(|v| {
                let rest: Vec<usize> = (0..comp.len()).filter(|&w| w != v).collect();
                positive_definite(&sub.submatrix(&rest, &rest))
            })
        {
            GcmType::Affine
        } else {
            GcmType::Indefinite
        };
        let label = (kind == GcmType::Finite).then(|| dynkin_label(c, &d, &comp));
        components.push(ComponentType {
            vertices: comp,
            kind,
            label,
        });
    }
    let overall = if components.iter().all(|c| c.kind == GcmType::Finite) {
        GcmType::Finite
    } else if components.iter().any(|c| c.kind == GcmType::Indefinite) {
        GcmType::Indefinite
    } else {
        GcmType::Affine
    };
    Ok(TypeClassification {
        overall,
        components,
        symmetrizer: d,
    })
}

/// Dynkin label of a connected finite-type component by the shape of its valued graph.
fn dynkin_label(c: &IntMatrix, d: &[i64], comp: &[usize]) -> String {
    let n = comp.len();
    if n == 1 {
        return "A1".into();
    }
    let neighbours = |v: usize| {
        comp.iter()
            .copied()
            .filter(|&w| w != v && c[(v, w)] != 0)
            .collect::<Vec<_>>()
    };
    let mut multiple = None;
    for &i in comp {
        for &j in comp {
            if i < j && c[(i, j)] * c[(j, i)] > 1 {
                multiple = Some((i, j, c[(i, j)] * c[(j, i)]));
            }
        }
    }
    match multiple {
        Some((_, _, 3)) => "G2".into(),
        Some((i, j, _)) => {
            if n == 2 {
                return "B2".into();
            }
            let (end, other) = if neighbours(i).len() == 1 {
                (i, j)
            } else if neighbours(j).len() == 1 {
                (j, i)
            } else {
                return format!("F{n}");
            };
            if d[end] < d[other] {
                format!("B{n}")
            } else {
                format!("C{n}")
            }
        }
        None => {
            let branch: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&v| neighbours(v).len() >= 3)
                .collect();
            if branch.is_empty() {
                return format!("A{n}");
            }
            let centre = branch[0];
            let mut arms: Vec<usize> = neighbours(centre)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (centre, start, 1);
                    loop {
                        let next: Vec<usize> =
                            neighbours(cur).into_iter().filter(|&w| w != prev).collect();
                        if next.is_empty() {
                            break len;
                        }
                        prev = cur;
                        cur = next[0];
                        len += 1;
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => format!("D{n}"),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                _ => format!("finite({n})"),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn quiver_cartan() {
        let q = Quiver::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let a = cartan_of_quiver(&q).unwrap();
        assert_eq!(a.row(0), &[2, -1, -1, -1]);
        assert!(a.is_symmetric());
        let two = Quiver::from_edges(2, &[]).unwrap();
        assert_eq!(
            cartan_of_quiver(&two).unwrap(),
            IntMatrix::diagonal(&[2, 2])
        );
        let lp = Quiver::from_edges(1, &[(0, 0)]).unwrap();
        assert!(matches!(cartan_of_quiver(&lp), Err(McKayError::Loop(_))));
    }

    #[test]
    fn classification_labels() {
        let g2 = classify(&m(&[&[2, -3], &[-1, 2]])).unwrap();
        assert!(g2.is_finite());
        assert_eq!(g2.label(), "G2");
        assert_eq!(g2.symmetrizer, vec![1, 3]);
        let kr = classify(&m(&[&[2, -2], &[-2, 2]])).unwrap();
        assert_eq!(kr.overall, GcmType::Affine);
        assert_eq!(classify(&m(&[&[2]])).unwrap().label(), "A1");
        let b3 = classify(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -2, 2]])).unwrap();
        assert_eq!(b3.label(), "B3");
        let c3 = classify(&m(&[&[2, -1, 0], &[-1, 2, -2], &[0, -1, 2]])).unwrap();
        assert_eq!(c3.label(), "C3");
        let f4 = classify(&m(&[
            &[2, -1, 0, 0],
            &[-1, 2, -2, 0],
            &[0, -1, 2, -1],
            &[0, 0, -1, 2],
        ]))
        .unwrap();
        assert_eq!(f4.label(), "F4");
        let d4 = classify(&m(&[
            &[2, -1, -1, -1],
            &[-1, 2, 0, 0],
            &[-1, 0, 2, 0],
            &[-1, 0, 0, 2],
        ]))
        .unwrap();
        assert_eq!(d4.label(), "D4");
        let hyper = classify(&m(&[&[2, -3], &[-3, 2]])).unwrap();
        assert_eq!(hyper.overall, GcmType::Indefinite);
        let aff_a2 = classify(&m(&[&[2, -1, -1], &[-1, 2, -1], &[-1, -1, 2]])).unwrap();
        assert_eq!(aff_a2.overall, GcmType::Affine);
        assert!(classify(&m(&[&[2, -1], &[0, 2]])).is_err());
        assert!(classify(&m(&[&[2, -1, -1], &[-2, 2, -1], &[-1, -1, 2]])).is_err());
    }

    #[test]
    fn e_series() {
        let path = |n: usize, extra: (usize, usize)| {
            let mut rows = vec![vec![0i64; n]; n];
            for i in 0..n {
                rows[i][i] = 2;
            }
            for i in 0..n - 2 {
                rows[i][i + 1] = -1;
                rows[i + 1][i] = -1;
            }
            rows[extra.0][extra.1] = -1;
            rows[extra.1][extra.0] = -1;
            IntMatrix::from_rows(&rows)
        };
        // Path on n-1 vertices plus a vertex attached at position 2.
        assert_eq!(classify(&path(6, (2, 5))).unwrap().label(), "E6");
        assert_eq!(classify(&path(7, (2, 6))).unwrap().label(), "E7");
        assert_eq!(classify(&path(8, (2, 7))).unwrap().label(), "E8");
        assert_eq!(classify(&path(9, (2, 8))).unwrap().overall, GcmType::Affine);
    }
}
