//! The secondary polytope of a convex polygon (GKZ associahedron).
//!
//! Areas are plain 2D areas, without the `(d+1)` factor of the integral
//! identity; every statement downstream is scale invariant. Facet normals use
//! signed twice-areas in place of distances to the diagonal's line, which is a
//! positive rescaling per side and keeps everything rational.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{rat, QMatrix, QVector, Rat};
use crate::polygon::{all_diagonals, enumerate_triangulations, Diagonal, Triangulation};
use crate::realization::{normal_fan, Equality, Facet, HPolytope, LabeledFan};

/// Points in strictly convex counterclockwise position, labeled `0..m-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarConfig {
    points: Vec<QVector>,
}

impl PlanarConfig {
    pub fn new(points: Vec<QVector>) -> Result<Self> {
        let m = points.len();
        if m < 4 {
            return Err(Error::PolygonTooSmall { m, min: 4 });
        }
        if let Some(p) = points.iter().find(|p| p.dim() != 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.dim(),
            });
        }
        let cfg = PlanarConfig { points };
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    if !cfg.twice_area(i, j, k).is_positive() {
                        return Err(Error::Invalid(format!(
                            "points {i}, {j}, {k} are not in strictly convex counterclockwise position"
                        )));
                    }
                }
            }
        }
        Ok(cfg)
    }

    /// `q_k = (k, k^2)`.
    pub fn parabola(m: usize) -> Result<Self> {
        Self::new(
            (0..m as i64)
                .map(|k| QVector::from_ints(&[k, k * k]))
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[QVector] {
        &self.points
    }

    /// Signed twice-area of the triangle `q_i q_j q_k`, positive when counterclockwise.
    pub fn twice_area(&self, i: usize, j: usize, k: usize) -> Rat {
        let (a, b, c) = (&self.points[i], &self.points[j], &self.points[k]);
        (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
    }

    pub fn area(&self) -> Rat {
        let m = self.m();
        (1..m - 1)
            .map(|k| self.twice_area(0, k, k + 1))
            .sum::<Rat>()
            / rat(2)
    }
}

/// Entry `i` is the total area of the triangles of `t` at vertex `i`.
pub fn gkz_vector(q: &PlanarConfig, t: &Triangulation) -> Result<QVector> {
    if t.m() != q.m() {
        return Err(Error::DimensionMismatch {
            expected: q.m(),
            found: t.m(),
        });
    }
    let mut v = vec![Rat::zero(); q.m()];
    for [i, j, k] in t.triangles() {
        let a = q.twice_area(i, j, k).abs() / rat(2);
        if a.is_zero() {
            return Err(Error::Invalid(format!("degenerate triangle {i} {j} {k}")));
        }
        for x in [i, j, k] {
            v[x] += &a;
        }
    }
    Ok(QVector::new(v))
}

#[derive(Clone, Debug, Serialize)]
pub struct GkzPolytope {
    pub vertices: BTreeMap<Triangulation, QVector>,
    /// Evaluations of the affine functionals `1`, `x`, `y` at the points.
    pub lineality: [QVector; 3],
}

pub fn lineality_basis(q: &PlanarConfig) -> [QVector; 3] {
    let m = q.m();
    [
        QVector::new(vec![rat(1); m]),
        q.points.iter().map(|p| p[0].clone()).collect(),
        q.points.iter().map(|p| p[1].clone()).collect(),
    ]
}

pub fn gkz_polytope(q: &PlanarConfig) -> Result<GkzPolytope> {
    let vertices = enumerate_triangulations(q.m())?
        .into_par_iter()
        .map(|t| gkz_vector(q, &t).map(|v| (t, v)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(GkzPolytope {
        vertices,
        lineality: lineality_basis(q),
    })
}

/// `ω⁺_δ`: zero on the negative side of the line through `d`, the signed
/// twice-area on the positive side. The positive side is the one avoiding
/// vertex 0, or vertex 1 when `d` is incident to 0.
pub fn gkz_facet_normal(q: &PlanarConfig, d: Diagonal) -> QVector {
    let (a, b) = d.endpoints();
    let away = if a == 0 { 1 } else { 0 };
    let sign = if q.twice_area(a, b, away).is_positive() {
        -1
    } else {
        1
    };
    (0..q.m())
        .map(|i| {
            let h = q.twice_area(a, b, i) * rat(sign);
            if h.is_positive() {
                h
            } else {
                Rat::zero()
            }
        })
        .collect()
}

/// A triangulation through `d`: the fan at its first endpoint.
fn fan_through(d: Diagonal, m: usize) -> Triangulation {
    let a = d.a();
    let pairs: Vec<(usize, usize)> = (0..m)
        .filter(|&k| k != a && (k + 1) % m != a && (a + 1) % m != k)
        .map(|k| (a.min(k), a.max(k)))
        .collect();
    Triangulation::from_pairs(m, &pairs).expect("fan at a vertex")
}

/// `{x : ⟨-ω⁺_δ, x⟩ ≤ -min}` for every diagonal, plus the three lineality
/// functionals pinned to their common value. The outward normals are
/// `-ω⁺_δ`, so its normal fan is the negated inner normal fan.
pub fn gkz_hrep(q: &PlanarConfig) -> Result<HPolytope> {
    let m = q.m();
    let fan0 = Triangulation::fan(m);
    let v0 = gkz_vector(q, &fan0)?;
    let equalities = lineality_basis(q)
        .into_iter()
        .map(|l| Equality {
            rhs: l.dot(&v0),
            normal: l,
        })
        .collect();
    let facets = all_diagonals(m)
        .into_iter()
        .map(|d| {
            let normal = gkz_facet_normal(q, d).scale(&rat(-1));
            let rhs = normal.dot(&gkz_vector(q, &fan_through(d, m))?);
            Ok(Facet {
                label: d,
                normal,
                rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    HPolytope::new(m, m, facets, equalities)
}

/// The normal fan of `gkz_hrep`, written in the quotient by the lineality
/// space; the chosen complement basis is recorded in the fan.
pub fn gkz_quotient_fan(q: &PlanarConfig) -> Result<LabeledFan> {
    normal_fan(&gkz_hrep(q)?)
}

/// Whether some nontrivial combination of `ω⁺_δ` and `ω⁺_δ'` is affine, i.e.
/// lies in the lineality space. For crossing diagonals it never is.
pub fn pair_has_affine_combination(q: &PlanarConfig, d: Diagonal, e: Diagonal) -> bool {
    let mut cols: Vec<QVector> = lineality_basis(q).into();
    cols.push(gkz_facet_normal(q, d));
    cols.push(gkz_facet_normal(q, e));
    QMatrix::from_columns(&cols).expect("equal lengths").rank() < 5
}
