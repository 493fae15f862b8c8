//! H-polytopes whose facets are labeled by diagonals, and the machinery that
//! certifies them as simple associahedra and compares their normal fans.

mod fan;
mod hrep;

pub use fan::{
    fans_linearly_isomorphic, normal_fan, normal_fan_unchecked, parallel_pairs,
    sample_completeness, CompletenessReport, FanIsomorphism, LabeledFan, PreparedFan,
};
pub use hrep::parse_hrep;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, QMatrix, QVector, Rat};
use crate::polygon::{all_diagonals, enumerate_triangulations, Diagonal, Triangulation};

/// `⟨normal, x⟩ ≤ rhs`, labeled by a diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub label: Diagonal,
    pub normal: QVector,
    #[serde(serialize_with = "crate::exactlin::serialize_rat")]
    pub rhs: Rat,
}

/// `⟨normal, x⟩ = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equality {
    pub normal: QVector,
    #[serde(serialize_with = "crate::exactlin::serialize_rat")]
    pub rhs: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HPolytope {
    dim: usize,
    m: usize,
    /// One per diagonal of the m-gon, sorted by label.
    facets: Vec<Facet>,
    equalities: Vec<Equality>,
}

impl HPolytope {
    pub fn new(
        dim: usize,
        m: usize,
        mut facets: Vec<Facet>,
        equalities: Vec<Equality>,
    ) -> Result<Self> {
        if m < 4 {
            return Err(Error::PolygonTooSmall { m, min: 4 });
        }
        for v in facets
            .iter()
            .map(|f| &f.normal)
            .chain(equalities.iter().map(|e| &e.normal))
        {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
        }
        facets.sort_by_key(|f| f.label);
        let labels: Vec<Diagonal> = facets.iter().map(|f| f.label).collect();
        if labels != all_diagonals(m) {
            return Err(Error::Invalid(format!(
                "facet labels must be exactly the diagonals of the {m}-gon, each once"
            )));
        }
        let eq_rank = if equalities.is_empty() {
            0
        } else {
            QMatrix::from_rows(equalities.iter().map(|e| e.normal.clone()).collect())?.rank()
        };
        if dim < eq_rank || dim - eq_rank != m - 3 {
            return Err(Error::Invalid(format!(
                "ambient dimension {dim} minus equality rank {eq_rank} must equal n = {}",
                m - 3
            )));
        }
        Ok(HPolytope {
            dim,
            m,
            facets,
            equalities,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m - 3
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn equalities(&self) -> &[Equality] {
        &self.equalities
    }

    pub fn facet(&self, d: Diagonal) -> Option<&Facet> {
        self.facets
            .binary_search_by_key(&d, |f| f.label)
            .ok()
            .map(|i| &self.facets[i])
    }

    /// Replaces the right-hand side of one facet.
    pub fn with_rhs(mut self, d: Diagonal, rhs: Rat) -> Result<Self> {
        let i = self
            .facets
            .binary_search_by_key(&d, |f| f.label)
            .map_err(|_| Error::InvalidDiagonal {
                a: d.a(),
                b: d.b(),
                m: self.m,
            })?;
        self.facets[i].rhs = rhs;
        Ok(self)
    }

    pub fn to_hrep_string(&self) -> String {
        hrep::write_hrep(self)
    }
}

/// The vertex of `h` indexed by `t`: the unique point on the facets of `t`
/// and on the equalities, which must satisfy every other inequality strictly.
pub fn vertex_of_triangulation(h: &HPolytope, t: &Triangulation) -> Result<QVector> {
    if t.m() != h.m {
        return Err(Error::Invalid(format!(
            "triangulation of a {}-gon on a {}-gon polytope",
            t.m(),
            h.m
        )));
    }
    let mut rows = Vec::with_capacity(t.n() + h.equalities.len());
    let mut rhs = Vec::with_capacity(rows.capacity());
    for &d in t.diagonals() {
        let f = h.facet(d).expect("every diagonal labels a facet");
        rows.push(f.normal.clone());
        rhs.push(f.rhs.clone());
    }
    for e in &h.equalities {
        rows.push(e.normal.clone());
        rhs.push(e.rhs.clone());
    }
    let a = QMatrix::from_rows(rows)?;
    let x =
        solve_linear(&a, &QVector::new(rhs))?.ok_or_else(|| Error::NotSimpleAt(t.to_string()))?;
    for f in &h.facets {
        if !t.contains(f.label) && f.normal.dot(&x) >= f.rhs {
            return Err(Error::DegenerateVertex {
                triangulation: t.to_string(),
                facet: f.label,
            });
        }
    }
    Ok(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct RealizationReport {
    pub is_simple_associahedron: bool,
    pub vertex_map: BTreeMap<Triangulation, QVector>,
    pub failures: Vec<String>,
}

impl RealizationReport {
    pub fn vertex_count(&self) -> usize {
        self.vertex_map.len()
    }
}

fn tight_set(h: &HPolytope, x: &QVector) -> BTreeSet<Diagonal> {
    h.facets
        .iter()
        .filter(|f| f.normal.dot(x) == f.rhs)
        .map(|f| f.label)
        .collect()
}

/// Solves every triangulation and checks strictness, distinctness of
/// flip-adjacent vertices and their shared tight facets.
pub fn verify_realization(h: &HPolytope) -> RealizationReport {
    let triangulations = enumerate_triangulations(h.m).expect("m >= 4 checked at construction");
    let solved: Vec<(Triangulation, Result<QVector>)> = triangulations
        .into_par_iter()
        .map(|t| {
            let x = vertex_of_triangulation(h, &t);
            (t, x)
        })
        .collect();
    let mut failures = Vec::new();
    let mut vertex_map = BTreeMap::new();
    for (t, x) in solved {
        match x {
            Ok(x) => {
                vertex_map.insert(t, x);
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    if failures.is_empty() {
        let n = h.n();
        let tight: BTreeMap<&Triangulation, BTreeSet<Diagonal>> = vertex_map
            .iter()
            .map(|(t, x)| (t, tight_set(h, x)))
            .collect();
        for (t, x) in &vertex_map {
            for &d in t.diagonals() {
                let (t2, _) = t.flip(d).expect("d is in t");
                if t2 <= *t {
                    continue;
                }
                let x2 = &vertex_map[&t2];
                if x == x2 {
                    failures.push(format!("flip-adjacent {t} and {t2} share the vertex {x}"));
                }
                let shared = tight[t].intersection(&tight[&t2]).count();
                if shared != n - 1 {
                    failures.push(format!(
                        "flip-adjacent {t} and {t2} share {shared} tight facets, expected {}",
                        n - 1
                    ));
                }
            }
        }
    }
    RealizationReport {
        is_simple_associahedron: failures.is_empty(),
        vertex_map,
        failures,
    }
}

/// Largest `|rhs|` over all rows; handy for sanity checks and reports.
pub fn max_abs_rhs(h: &HPolytope) -> Rat {
    h.facets
        .iter()
        .map(|f| f.rhs.clone())
        .chain(h.equalities.iter().map(|e| e.rhs.clone()))
        .map(|r| if r < Rat::zero() { -r } else { r })
        .max()
        .unwrap_or_else(Rat::zero)
}
