//! Monomial actions of finite abelian groups on quivers.
//!
//! Each generator permutes vertices and sends an arrow to a root-of-unity
//! multiple of an arrow. Scalars are stored as exponents of `ζ_L` for the
//! action level `L`, the lcm of the group exponent and all scalar orders.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{McKayError, Result};
use crate::group::{AbelianGroup, GroupElement, Subgroup};
use crate::quiver::Quiver;

/// Action of one generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorAction {
    /// Image of each vertex.
    pub vertex_perm: Vec<usize>,
    /// Image arrow and scalar exponent for each arrow.
    pub arrow_map: Vec<(usize, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialAction {
    group: AbelianGroup,
    level: u32,
    generators: Vec<GeneratorAction>,
}

/// A scalar `ζ_den^num` attached to an arrow image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootScalar {
    pub num: i64,
    pub den: u32,
}

impl MonomialAction {
    /// Builds an action from exponents already expressed at `level`.
    pub fn new(group: AbelianGroup, level: u32, generators: Vec<GeneratorAction>) -> Result<Self> {
        if level == 0 || level % group.exponent() != 0 {
            return Err(McKayError::InvalidAction(vec![format!(
                "level {level} is not a multiple of the group exponent {}",
                group.exponent()
            )]));
        }
        let generators = generators
            .into_iter()
            .map(|g| GeneratorAction {
                vertex_perm: g.vertex_perm,
                arrow_map: g
                    .arrow_map
                    .into_iter()
                    .map(|(b, k)| (b, k % level))
                    .collect(),
            })
            .collect();
        Ok(MonomialAction {
            group,
            level,
            generators,
        })
    }

    /// Builds an action from per-arrow scalars `ζ_den^num`; the level is chosen minimal.
    pub fn from_scalars(
        group: AbelianGroup,
        generators: Vec<(Vec<usize>, Vec<(usize, RootScalar)>)>,
    ) -> Result<Self> {
        let mut level = group.exponent();
        for (_, arrows) in &generators {
            for (_, s) in arrows {
                if s.den == 0 {
                    return Err(McKayError::InvalidAction(vec![
                        "scalar with zero denominator".into(),
                    ]));
                }
                level = level.lcm(&s.den);
            }
        }
        let gens = generators
            .into_iter()
            .map(|(vertex_perm, arrows)| GeneratorAction {
                vertex_perm,
                arrow_map: arrows
                    .into_iter()
                    .map(|(b, s)| {
                        (
                            b,
                            (s.num * (level / s.den) as i64).rem_euclid(level as i64) as u32,
                        )
                    })
                    .collect(),
            })
            .collect();
        MonomialAction::new(group, level, gens)
    }

    /// The trivial action of the trivial group.
    pub fn trivial() -> Self {
        MonomialAction {
            group: AbelianGroup::trivial(),
            level: 1,
            generators: Vec::new(),
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn generators(&self) -> &[GeneratorAction] {
        &self.generators
    }

    /// Full action tables, valid once the action passes validation.
    pub fn tables(&self, q: &Quiver) -> ActionTables {
        ActionTables::build(q, self)
    }
}

/// Action of every group element, indexed by lexicographic element index.
#[derive(Clone, Debug)]
pub struct ActionTables {
    group: AbelianGroup,
    level: u32,
    vertex: Vec<Vec<usize>>,
    arrow: Vec<Vec<(usize, u32)>>,
}

impl ActionTables {
    fn build(q: &Quiver, action: &MonomialAction) -> Self {
        let group = action.group.clone();
        let level = action.level;
        let n = group.order();
        let id_v: Vec<usize> = (0..q.vertex_count()).collect();
        let id_a: Vec<(usize, u32)> = (0..q.arrow_count()).map(|a| (a, 0)).collect();
        let mut vertex = Vec::with_capacity(n);
        let mut arrow = Vec::with_capacity(n);
        for g in group.elements() {
            let (mut v, mut a) = (id_v.clone(), id_a.clone());
            for (t, &times) in g.0.iter().enumerate() {
                let gen = &action.generators[t];
                for _ in 0..times {
                    v = v.iter().map(|&x| gen.vertex_perm[x]).collect();
                    a = a
                        .iter()
                        .map(|&(b, k)| {
                            let (c, k2) = gen.arrow_map[b];
                            (c, (k + k2) % level)
                        })
                        .collect();
                }
            }
            vertex.push(v);
            arrow.push(a);
        }
        ActionTables {
            group,
            level,
            vertex,
            arrow,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `g(i)` for the element with index `g`.
    pub fn vertex(&self, g: usize, i: usize) -> usize {
        self.vertex[g][i]
    }

    /// `g(α) = ζ_L^k β` as `(β, k)`.
    pub fn arrow(&self, g: usize, a: usize) -> (usize, u32) {
        self.arrow[g][a]
    }

    pub fn vertex_perm(&self, g: usize) -> &[usize] {
        &self.vertex[g]
    }

    pub fn element_count(&self) -> usize {
        self.vertex.len()
    }
}

/// A way in which data fails to define an admissible monomial action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    GeneratorCount {
        expected: usize,
        found: usize,
    },
    BadPermutation {
        generator: usize,
        detail: String,
    },
    EndpointMismatch {
        generator: usize,
        arrow: String,
    },
    NotCommuting {
        first: usize,
        second: usize,
    },
    OrderRelation {
        generator: usize,
    },
    Loop {
        arrow: String,
    },
    Inadmissible {
        arrow: String,
    },
    NonDiagonal {
        element: String,
        arrow: String,
        image: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::GeneratorCount { expected, found } => {
                write!(f, "expected {expected} generators, found {found}")
            }
            Violation::BadPermutation { generator, detail } => {
                write!(f, "generator {generator}: {detail}")
            }
            Violation::EndpointMismatch { generator, arrow } => {
                write!(
                    f,
                    "generator {generator} does not respect the endpoints of arrow {arrow}"
                )
            }
            Violation::NotCommuting { first, second } => {
                write!(f, "generators {first} and {second} do not commute")
            }
            Violation::OrderRelation { generator } => {
                write!(
                    f,
                    "generator {generator} raised to its order does not act trivially"
                )
            }
            Violation::Loop { arrow } => write!(f, "arrow {arrow} is a loop"),
            Violation::Inadmissible { arrow } => {
                write!(f, "arrow {arrow} joins two vertices of the same orbit")
            }
            Violation::NonDiagonal {
                element,
                arrow,
                image,
            } => write!(
                f,
                "stabilizer element {element} sends arrow {arrow} to a multiple of {image}; \
                 diagonalize parallel arrows first"
            ),
        }
    }
}

/// Outcome of validating an action.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(McKayError::InvalidAction(
                self.violations.iter().map(|v| v.to_string()).collect(),
            ))
        }
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n
        && p.iter()
            .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

/// Checks that the data defines an admissible monomial action whose stabilizers act diagonally.
pub fn validate(q: &Quiver, action: &MonomialAction) -> ValidationReport {
    let mut violations = Vec::new();
    let group = &action.group;
    if action.generators.len() != group.rank() {
        violations.push(Violation::GeneratorCount {
            expected: group.rank(),
            found: action.generators.len(),
        });
        return ValidationReport { violations };
    }
    let level = action.level;
    for (t, gen) in action.generators.iter().enumerate() {
        if !is_permutation(&gen.vertex_perm, q.vertex_count()) {
            violations.push(Violation::BadPermutation {
                generator: t,
                detail: "vertex map is not a bijection".into(),
            });
            continue;
        }
        let images: Vec<usize> = gen.arrow_map.iter().map(|&(b, _)| b).collect();
        if !is_permutation(&images, q.arrow_count()) {
            violations.push(Violation::BadPermutation {
                generator: t,
                detail: "arrow map is not a bijection".into(),
            });
            continue;
        }
        for (a, arr) in q.arrows().iter().enumerate() {
            let b = q.arrow(gen.arrow_map[a].0);
            if b.source != gen.vertex_perm[arr.source] || b.target != gen.vertex_perm[arr.target] {
                violations.push(Violation::EndpointMismatch {
                    generator: t,
                    arrow: arr.id.clone(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let compose = |x: &GeneratorAction, y: &GeneratorAction| -> GeneratorAction {
        // x after y
        GeneratorAction {
            vertex_perm: y.vertex_perm.iter().map(|&v| x.vertex_perm[v]).collect(),
            arrow_map: y
                .arrow_map
                .iter()
                .map(|&(b, k)| {
                    let (c, k2) = x.arrow_map[b];
                    (c, (k + k2) % level)
                })
                .collect(),
        }
    };
    let gens = &action.generators;
    for s in 0..gens.len() {
        for t in s + 1..gens.len() {
            if compose(&gens[s], &gens[t]) != compose(&gens[t], &gens[s]) {
                violations.push(Violation::NotCommuting {
                    first: s,
                    second: t,
                });
            }
        }
    }
    let identity = GeneratorAction {
        vertex_perm: (0..q.vertex_count()).collect(),
        arrow_map: (0..q.arrow_count()).map(|a| (a, 0)).collect(),
    };
    for (t, gen) in gens.iter().enumerate() {
        let mut p = identity.clone();
        for _ in 0..group.orders()[t] {
            p = compose(gen, &p);
        }
        if p != identity {
            violations.push(Violation::OrderRelation { generator: t });
        }
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let tables = action.tables(q);
    let orbit_of = vertex_orbit_labels(q, &tables);
    for arr in q.arrows() {
        if arr.source == arr.target {
            violations.push(Violation::Loop {
                arrow: arr.id.clone(),
            });
        } else if orbit_of[arr.source] == orbit_of[arr.target] {
            violations.push(Violation::Inadmissible {
                arrow: arr.id.clone(),
            });
        }
    }
    for (gi, g) in group.elements().iter().enumerate() {
        for (a, arr) in q.arrows().iter().enumerate() {
            let fixes = tables.vertex(gi, arr.source) == arr.source
                && tables.vertex(gi, arr.target) == arr.target;
            let (b, _) = tables.arrow(gi, a);
            if fixes && b != a {
                violations.push(Violation::NonDiagonal {
                    element: g.to_string(),
                    arrow: arr.id.clone(),
                    image: q.arrow(b).id.clone(),
                });
            }
        }
    }
    ValidationReport { violations }
}

fn vertex_orbit_labels(q: &Quiver, tables: &ActionTables) -> Vec<usize> {
    (0..q.vertex_count())
        .map(|v| {
            (0..tables.element_count())
                .map(|g| tables.vertex(g, v))
                .min()
                .unwrap()
        })
        .collect()
}

/// Orbits, representatives, transporters and stabilizers of a validated action.
#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Orbit number of each vertex; orbits are numbered in representative order.
    pub vertex_orbit: Vec<usize>,
    /// Sorted members of each orbit.
    pub orbits: Vec<Vec<usize>>,
    /// The representative set, in breadth-first discovery order.
    pub representatives: Vec<usize>,
    /// Index of the lexicographically smallest `κ` with `κ(rep) = i`, per vertex.
    pub transporter: Vec<usize>,
    /// Stabilizer of each orbit (the group is abelian).
    pub stabilizers: Vec<Subgroup>,
    /// Orbit number of each arrow.
    pub arrow_orbit: Vec<usize>,
    /// Sorted members of each arrow orbit.
    pub arrow_orbits: Vec<Vec<usize>>,
}

impl OrbitData {
    pub fn new(q: &Quiver, tables: &ActionTables) -> Self {
        let n = q.vertex_count();
        let group = tables.group().clone();
        let label = vertex_orbit_labels(q, tables);
        let mut orbit_number = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut queue = std::collections::VecDeque::from([start]);
            visited[start] = true;
            while let Some(v) = queue.pop_front() {
                if orbit_number[label[v]] == usize::MAX {
                    orbit_number[label[v]] = representatives.len();
                    representatives.push(v);
                }
                for w in q.neighbours(v) {
                    if !visited[w] {
                        visited[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let vertex_orbit: Vec<usize> = (0..n).map(|v| orbit_number[label[v]]).collect();
        let mut orbits = vec![Vec::new(); representatives.len()];
        for v in 0..n {
            orbits[vertex_orbit[v]].push(v);
        }
        let transporter: Vec<usize> = (0..n)
            .map(|v| {
                let rep = representatives[vertex_orbit[v]];
                (0..tables.element_count())
                    .find(|&g| tables.vertex(g, rep) == v)
                    .unwrap()
            })
            .collect();
        let stabilizers: Vec<Subgroup> = representatives
            .iter()
            .map(|&r| {
                let fix: Vec<GroupElement> = (0..tables.element_count())
                    .filter(|&g| tables.vertex(g, r) == r)
                    .map(|g| group.element_at(g))
                    .collect();
                Subgroup::generated_by(&group, &fix)
            })
            .collect();
        let m = q.arrow_count();
        let arrow_label: Vec<usize> = (0..m)
            .map(|a| {
                (0..tables.element_count())
                    .map(|g| tables.arrow(g, a).0)
                    .min()
                    .unwrap()
            })
            .collect();
        let mut arrow_orbit = vec![usize::MAX; m];
        let mut arrow_orbits: Vec<Vec<usize>> = Vec::new();
        for a in 0..m {
            if let Some(k) = (0..a).find(|&b| arrow_label[b] == arrow_label[a]) {
                arrow_orbit[a] = arrow_orbit[k];
                arrow_orbits[arrow_orbit[k]].push(a);
            } else {
                arrow_orbit[a] = arrow_orbits.len();
                arrow_orbits.push(vec![a]);
            }
        }
        OrbitData {
            vertex_orbit,
            orbits,
            representatives,
            transporter,
            stabilizers,
            arrow_orbit,
            arrow_orbits,
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    /// Size `d_k` of each orbit.
    pub fn orbit_sizes(&self) -> Vec<i64> {
        self.orbits.iter().map(|o| o.len() as i64).collect()
    }

    /// Stabilizer of the orbit containing `v`.
    pub fn stabilizer_of(&self, v: usize) -> &Subgroup {
        &self.stabilizers[self.vertex_orbit[v]]
    }
}
