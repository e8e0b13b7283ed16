//! JSON input documents describing a quiver, an abelian group and a monomial action.

use std::collections::BTreeMap;

use mckay_core::action::{MonomialAction, RootScalar};
use mckay_core::group::AbelianGroup;
use mckay_core::quiver::Quiver;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub orders: Vec<u32>,
}

/// `g(α) = ζ_{scalar_den}^{scalar_num} · to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowImage {
    pub to: String,
    pub scalar_num: i64,
    pub scalar_den: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub vertex_perm: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, ArrowImage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub generators: Vec<GeneratorDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub quiver: QuiverDoc,
    pub group: GroupDoc,
    pub action: ActionDoc,
}

/// A document that parses but breaks the schema's referential rules.
#[derive(Debug, thiserror::Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Reference(String),
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Resolves names into a quiver and an action; the action is not validated here.
    pub fn resolve(&self) -> Result<(Quiver, MonomialAction), SchemaError> {
        let err = |s: String| SchemaError::Reference(s);
        let vertex = |name: &str| {
            self.quiver
                .vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| err(format!("unknown vertex {name:?}")))
        };
        let arrows = self
            .quiver
            .arrows
            .iter()
            .map(|a| Ok((a.id.clone(), vertex(&a.src)?, vertex(&a.tgt)?)))
            .collect::<Result<Vec<_>, SchemaError>>()?;
        let quiver =
            Quiver::new(self.quiver.vertices.clone(), arrows).map_err(|e| err(e.to_string()))?;
        let group = AbelianGroup::new(self.group.orders.clone()).map_err(|e| err(e.to_string()))?;
        if self.action.generators.len() != group.rank() {
            return Err(err(format!(
                "{} generators given for a group with {} cyclic factors",
                self.action.generators.len(),
                group.rank()
            )));
        }
        let mut gens = Vec::new();
        for (k, g) in self.action.generators.iter().enumerate() {
            let n = quiver.vertex_count();
            let mut perm = vec![usize::MAX; n];
            for (from, to) in &g.vertex_perm {
                perm[vertex(from)?] = vertex(to)?;
            }
            if perm.contains(&usize::MAX) {
                return Err(err(format!(
                    "generator {k}: vertex_perm does not cover every vertex"
                )));
            }
            let mut seen = vec![false; n];
            for &p in &perm {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(err(format!(
                        "generator {k}: vertex_perm is not a bijection"
                    )));
                }
            }
            let mut images = vec![None; quiver.arrow_count()];
            for (from, img) in &g.arrows {
                let a = quiver
                    .arrow_index(from)
                    .ok_or_else(|| err(format!("unknown arrow {from:?}")))?;
                let b = quiver
                    .arrow_index(&img.to)
                    .ok_or_else(|| err(format!("unknown arrow {:?}", img.to)))?;
                if img.scalar_den == 0 {
                    return Err(err(format!(
                        "generator {k}: arrow {from:?} has scalar_den = 0"
                    )));
                }
                images[a] = Some((
                    b,
                    RootScalar {
                        num: img.scalar_num,
                        den: img.scalar_den,
                    },
                ));
            }
            let images: Vec<(usize, RootScalar)> = images
                .into_iter()
                .enumerate()
                .map(|(a, x)| {
                    x.ok_or_else(|| {
                        err(format!(
                            "generator {k}: arrow {:?} has no image",
                            quiver.arrow(a).id
                        ))
                    })
                })
                .collect::<Result<_, _>>()?;
            gens.push((perm, images));
        }
        let action = MonomialAction::from_scalars(group, gens).map_err(|e| err(e.to_string()))?;
        Ok((quiver, action))
    }

    /// The document of a quiver with an action, scalars written at the action's level.
    pub fn from_parts(q: &Quiver, action: &MonomialAction) -> Self {
        let name = |v: usize| q.vertices()[v].clone();
        let generators = action
            .generators()
            .iter()
            .map(|g| GeneratorDoc {
                vertex_perm: g
                    .vertex_perm
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (name(i), name(j)))
                    .collect(),
                arrows: g
                    .arrow_map
                    .iter()
                    .enumerate()
                    .map(|(a, &(b, k))| {
                        let img = ArrowImage {
                            to: q.arrow(b).id.clone(),
                            scalar_num: k as i64,
                            scalar_den: action.level(),
                        };
                        (q.arrow(a).id.clone(), img)
                    })
                    .collect(),
            })
            .collect();
        InputDocument {
            quiver: QuiverDoc {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowDoc {
                        id: a.id.clone(),
                        src: name(a.source),
                        tgt: name(a.target),
                    })
                    .collect(),
            },
            group: GroupDoc {
                orders: action.group().orders().to_vec(),
            },
            action: ActionDoc { generators },
        }
    }
}
