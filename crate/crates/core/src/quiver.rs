//! Finite quivers with named vertices and arrows.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{McKayError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(id, source, target)` triples.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<Self> {
        let mut names = HashSet::new();
        for v in &vertices {
            if !names.insert(v.as_str()) {
                return Err(McKayError::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        let mut ids = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if s >= vertices.len() || t >= vertices.len() {
                return Err(McKayError::InvalidQuiver(format!(
                    "arrow {id} has an endpoint out of range"
                )));
            }
            if !ids.insert(id.clone()) {
                return Err(McKayError::InvalidQuiver(format!("duplicate arrow {id}")));
            }
            out.push(Arrow {
                id,
                source: s,
                target: t,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Vertices named `1..=n` and arrows named `a1, a2, …`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Quiver::new(
            (1..=n).map(|i| i.to_string()).collect(),
            edges
                .iter()
                .enumerate()
                .map(|(k, &(s, t))| (format!("a{}", k + 1), s, t))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    /// Arrows from `i` to `j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].source == i && self.arrows[a].target == j)
            .collect()
    }

    /// Number of arrows between `i` and `j` in either direction.
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.source == i && a.target == j) || (a.source == j && a.target == i))
            .count()
    }

    pub fn first_loop(&self) -> Option<usize> {
        self.arrows.iter().position(|a| a.source == a.target)
    }

    /// Sorted neighbours of `v` in the underlying graph.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|a| {
                if a.source == v {
                    Some(a.target)
                } else if a.target == v {
                    Some(a.source)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertex indices sorted so that every arrow goes from a later to an earlier
    /// position, or `None` when the quiver has an oriented cycle.
    pub fn sink_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut out_deg: Vec<usize> = vec![0; n];
        for a in &self.arrows {
            out_deg[a.source] += 1;
        }
        let mut order = Vec::with_capacity(n);
        let mut done = vec![false; n];
        while order.len() < n {
            let v = (0..n).find(|&v| !done[v] && out_deg[v] == 0)?;
            done[v] = true;
            order.push(v);
            for a in &self.arrows {
                if a.target == v {
                    out_deg[a.source] -= 1;
                }
            }
        }
        Some(order)
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = out.len();
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = out.len();
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}
