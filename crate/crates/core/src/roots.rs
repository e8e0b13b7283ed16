//! Root lattices with symmetric bilinear forms, simple reflections and
//! height-bounded enumeration of positive real and imaginary roots.
//!
//! Vectors are integer coefficient vectors over the simple roots. For a form
//! `B = DC` the reflection is `r_i(v) = v − (1/d_i)(v, ε_i) ε_i`, which on a
//! symmetric Cartan matrix is the usual `v − (v, ε_i) ε_i`.

use std::cmp::Reverse;
use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::cartan::{classify, symmetrizer};
use crate::error::{McKayError, Result};
use crate::intmat::IntMatrix;

pub type LatticeVector = Vec<i64>;

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

pub fn support(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] != 0).collect()
}

pub fn unit(n: usize, i: usize) -> LatticeVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Symmetric form `(ε_i, ε_j) = b_ij` with `b_ii = 2 d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearForm {
    pub b: IntMatrix,
    pub d: Vec<i64>,
}

impl BilinearForm {
    /// The form of a symmetric Cartan matrix.
    pub fn symmetric(a: &IntMatrix) -> Result<Self> {
        if !a.is_symmetric() {
            return Err(McKayError::NotSymmetric);
        }
        Ok(BilinearForm {
            b: a.clone(),
            d: vec![1; a.rows()],
        })
    }

    /// `B = DC` with `D` the minimal symmetrizer.
    pub fn from_gcm(c: &IntMatrix) -> Result<Self> {
        let d = symmetrizer(c)?;
        Ok(BilinearForm {
            b: IntMatrix::diagonal(&d).mul(c),
            d,
        })
    }

    /// `B` together with the given orbit sizes.
    pub fn folded(b: &IntMatrix, d: &[i64]) -> Self {
        BilinearForm {
            b: b.clone(),
            d: d.to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    /// The generalized Cartan matrix `D⁻¹B`.
    pub fn cartan(&self) -> IntMatrix {
        let n = self.rank();
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                c[(i, j)] = self.b[(i, j)] / self.d[i];
            }
        }
        c
    }

    pub fn pair(&self, v: &[i64], w: &[i64]) -> i64 {
        let bw = self.b.mul_vec(w);
        v.iter().zip(&bw).map(|(a, b)| a * b).sum()
    }

    /// `(v, ε_i)`.
    pub fn pair_simple(&self, v: &[i64], i: usize) -> i64 {
        (0..v.len()).map(|j| self.b[(i, j)] * v[j]).sum()
    }

    fn check_index(&self, i: usize, v: &[i64]) -> Result<()> {
        if i >= self.rank() || v.len() != self.rank() {
            return Err(McKayError::WrongLattice {
                expected: self.rank(),
                found: v.len().max(i + 1),
            });
        }
        Ok(())
    }

    /// Simple reflection `r_i`, written `γ_i` on folded lattices.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Result<LatticeVector> {
        self.check_index(i, v)?;
        Ok(self.reflect_unchecked(i, v))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, v: &[i64]) -> LatticeVector {
        let mut out = v.to_vec();
        out[i] -= self.pair_simple(v, i) / self.d[i];
        out
    }

    /// The product of reflections in a block of mutually orthogonal simple roots.
    pub fn reflect_block(&self, block: &[usize], v: &[i64]) -> Result<LatticeVector> {
        let mut out = v.to_vec();
        for &i in block {
            out = self.reflect(i, &out)?;
        }
        Ok(out)
    }

    /// Applies `word[0]` first.
    pub fn apply_word(&self, word: &[usize], v: &[i64]) -> LatticeVector {
        word.iter()
            .fold(v.to_vec(), |acc, &i| self.reflect_unchecked(i, &acc))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealRoot {
    pub root: LatticeVector,
    /// `root = apply_word(word, ε_simple)`.
    pub simple: usize,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImaginaryRoot {
    pub root: LatticeVector,
    /// An element of the fundamental set with `root = apply_word(word, ancestor)`.
    pub ancestor: LatticeVector,
    pub word: Vec<usize>,
}

/// Positive roots up to a height bound, sorted by height and then by descending coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemView {
    pub height_bound: i64,
    pub real: Vec<RealRoot>,
    pub imaginary: Vec<ImaginaryRoot>,
    /// True when the enumeration is the complete positive system (finite type).
    pub complete: bool,
}

fn root_order(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    (height(a), Reverse(a)).cmp(&(height(b), Reverse(b)))
}

impl RootSystemView {
    /// Real and imaginary positive roots merged in the canonical order.
    pub fn positive_roots(&self) -> Vec<LatticeVector> {
        let mut out: Vec<LatticeVector> = self
            .real
            .iter()
            .map(|r| r.root.clone())
            .chain(self.imaginary.iter().map(|r| r.root.clone()))
            .collect();
        out.sort_by(|a, b| root_order(a, b));
        out
    }

    pub fn is_real(&self, v: &[i64]) -> bool {
        self.real.iter().any(|r| r.root == v)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.is_real(v) || self.imaginary.iter().any(|r| r.root == v)
    }
}

/// Default height bound `2 · Σ 2n_c` over the connected components.
pub fn default_height(rank: usize) -> i64 {
    4 * rank as i64
}

fn connected_support(form: &BilinearForm, v: &[i64]) -> bool {
    let s = support(v);
    let Some(&first) = s.first() else {
        return false;
    };
    let mut seen = vec![first];
    let mut queue = VecDeque::from([first]);
    while let Some(i) = queue.pop_front() {
        for &j in &s {
            if !seen.contains(&j) && form.b[(i, j)] != 0 {
                seen.push(j);
                queue.push_back(j);
            }
        }
    }
    seen.len() == s.len()
}

/// Nonzero nonnegative vectors of height at most `h`.
fn box_vectors(n: usize, h: i64) -> Vec<LatticeVector> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<LatticeVector>) {
        if cur.len() == n {
            if cur.iter().any(|&x| x != 0) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, h, &mut Vec::new(), &mut out);
    out
}

/// The fundamental set within the height bound.
pub fn fundamental_set(form: &BilinearForm, h: i64) -> Vec<LatticeVector> {
    let n = form.rank();
    let mut out: Vec<LatticeVector> = box_vectors(n, h)
        .into_iter()
        .filter(|v| (0..n).all(|i| form.pair_simple(v, i) <= 0) && connected_support(form, v))
        .collect();
    out.sort_by(|a, b| root_order(a, b));
    out
}

/// Height-increasing closure of `seeds` under simple reflections within the bound.
fn closure(
    form: &BilinearForm,
    seeds: Vec<LatticeVector>,
    bound: Option<i64>,
) -> HashMap<LatticeVector, (usize, Vec<usize>)> {
    let mut found: HashMap<LatticeVector, (usize, Vec<usize>)> = HashMap::new();
    let mut queue = VecDeque::new();
    for (s, v) in seeds.into_iter().enumerate() {
        if !found.contains_key(&v) {
            found.insert(v.clone(), (s, Vec::new()));
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        let ht = height(&v);
        for i in 0..form.rank() {
            let w = form.reflect_unchecked(i, &v);
            let hw = height(&w);
            if hw <= ht || bound.is_some_and(|b| hw > b) || found.contains_key(&w) {
                continue;
            }
            let (s, mut word) = found[&v].clone();
            word.push(i);
            found.insert(w.clone(), (s, word));
            queue.push_back(w);
        }
    }
    found
}

/// Positive roots of height at most `h`; finite type ignores the bound and is complete.
pub fn enumerate_roots(form: &BilinearForm, h: i64) -> Result<RootSystemView> {
    let n = form.rank();
    let finite = classify(&form.cartan())?.is_finite();
    let bound = (!finite).then_some(h);
    let simples: Vec<LatticeVector> = (0..n).map(|i| unit(n, i)).collect();
    let mut real: Vec<RealRoot> = closure(form, simples, bound)
        .into_iter()
        .map(|(root, (simple, word))| RealRoot { root, simple, word })
        .collect();
    real.sort_by(|a, b| root_order(&a.root, &b.root));
    let mut imaginary = Vec::new();
    if !finite {
        let fund = fundamental_set(form, h);
        imaginary = closure(form, fund.clone(), bound)
            .into_iter()
            .map(|(root, (s, word))| ImaginaryRoot {
                root,
                ancestor: fund[s].clone(),
                word,
            })
            .collect();
        imaginary.sort_by(|a, b| root_order(&a.root, &b.root));
    }
    let height_bound = if finite {
        real.iter().map(|r| height(&r.root)).max().unwrap_or(0)
    } else {
        h
    };
    Ok(RootSystemView {
        height_bound,
        real,
        imaginary,
        complete: finite,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn reflections() {
        let f = BilinearForm::from_gcm(&m(&[&[2, -3], &[-1, 2]])).unwrap();
        assert_eq!(f.d, vec![1, 3]);
        assert_eq!(f.reflect(0, &[1, 0]).unwrap(), vec![-1, 0]);
        // γ₂(ε̄₁+ε̄₂) = ε̄₁ in the folded form of the G₂ example.
        assert_eq!(f.reflect(1, &[1, 1]).unwrap(), vec![1, 0]);
        assert_eq!(f.reflect(0, &[1, 1]).unwrap(), vec![2, 1]);
        assert!(f.reflect(2, &[1, 1]).is_err());
    }

    #[test]
    fn g2_roots() {
        let f = BilinearForm::from_gcm(&m(&[&[2, -3], &[-1, 2]])).unwrap();
        let v = enumerate_roots(&f, 1).unwrap();
        assert!(v.complete && v.imaginary.is_empty());
        assert_eq!(
            v.positive_roots(),
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2]
            ]
        );
        for r in &v.real {
            assert_eq!(f.apply_word(&r.word, &unit(2, r.simple)), r.root);
        }
    }

    #[test]
    fn affine_and_a1() {
        let a1 = BilinearForm::symmetric(&m(&[&[2]])).unwrap();
        assert_eq!(
            enumerate_roots(&a1, 3).unwrap().positive_roots(),
            vec![vec![1]]
        );
        let kr = BilinearForm::symmetric(&m(&[&[2, -2], &[-2, 2]])).unwrap();
        let v = enumerate_roots(&kr, 6).unwrap();
        assert!(!v.complete);
        let im: Vec<_> = v.imaginary.iter().map(|r| r.root.clone()).collect();
        assert_eq!(im, vec![vec![1, 1], vec![2, 2], vec![3, 3]]);
        let real: Vec<_> = v.real.iter().map(|r| r.root.clone()).collect();
        assert_eq!(
            real,
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![2, 1],
                vec![1, 2],
                vec![3, 2],
                vec![2, 3]
            ]
        );
    }
}
