//! Signed-polygon associahedra `AssI(σ)`.
//!
//! The polygon `P(σ)` has vertices `0..=n+2` placed left to right, vertex `i`
//! above the horizontal axis when `σ̃(i) = +` and below when `σ̃(i) = -`, with
//! `σ̃ = (+, -, σ, -, +)`. These left-to-right names are the *HL labels*.
//! Everything exported as a [`Diagonal`] or [`Triangulation`] uses the
//! counterclockwise labels instead: position 0 is vertex 0, then the lower
//! chain from left to right, then vertex `n+2`, then the upper chain from
//! right to left. For `σ = (-, ..., -)` the two labelings coincide.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{rat, QVector, Rat};
use crate::polygon::{all_diagonals, Diagonal, Sign, SignSequence, Triangulation};
use crate::realization::{Equality, Facet, HPolytope};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPolygon {
    sigma: SignSequence,
    extended: Vec<Sign>,
    coords: Vec<(Rat, Rat)>,
    /// HL label -> counterclockwise position.
    position: Vec<usize>,
    /// Counterclockwise position -> HL label.
    label: Vec<usize>,
}

fn orient(p: &(Rat, Rat), q: &(Rat, Rat), r: &(Rat, Rat)) -> Rat {
    (&q.0 - &p.0) * (&r.1 - &p.1) - (&q.1 - &p.1) * (&r.0 - &p.0)
}

/// The canonical embedding of `P(σ)`.
pub fn hl_embed(sigma: &SignSequence) -> SignedPolygon {
    let mut ext = vec![Sign::Plus, Sign::Minus];
    ext.extend_from_slice(sigma.signs());
    ext.extend([Sign::Minus, Sign::Plus]);
    SignedPolygon::with_extended(sigma.clone(), ext).expect("the standard extension is valid")
}

impl SignedPolygon {
    /// A polygon from an explicit extended sign vector of length `n+3`;
    /// `sigma` is recorded as given.
    pub fn with_extended(sigma: SignSequence, extended: Vec<Sign>) -> Result<Self> {
        let m = extended.len();
        if m < 4 {
            return Err(Error::PolygonTooSmall { m, min: 4 });
        }
        let top = (m - 1) as i64;
        // parabolas y = ±(K - (x - c)^2) with c = (n+2)/2, K = 2(n+2)^2
        let k = rat(2 * top * top);
        let coords: Vec<(Rat, Rat)> = (0..m)
            .map(|i| {
                let dx = rat(i as i64) - Rat::new(top.into(), 2.into());
                let h = &k - &dx * &dx;
                let y = if extended[i] == Sign::Plus { h } else { -h };
                (rat(i as i64), y)
            })
            .collect();
        let mut label = vec![0];
        label.extend((1..m - 1).filter(|&i| extended[i] == Sign::Minus));
        label.push(m - 1);
        label.extend((1..m - 1).rev().filter(|&i| extended[i] == Sign::Plus));
        let mut position = vec![0; m];
        for (p, &l) in label.iter().enumerate() {
            position[l] = p;
        }
        let poly = SignedPolygon {
            sigma,
            extended,
            coords,
            position,
            label,
        };
        poly.check_convex()?;
        Ok(poly)
    }

    fn check_convex(&self) -> Result<()> {
        let m = self.m();
        for p in 0..m {
            let a = &self.coords[self.label[p]];
            let b = &self.coords[self.label[(p + 1) % m]];
            for q in 0..m {
                if q != p
                    && q != (p + 1) % m
                    && !orient(a, b, &self.coords[self.label[q]]).is_positive()
                {
                    return Err(Error::Verification(format!(
                        "embedding is not strictly convex at edge {p}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.extended.len()
    }

    pub fn n(&self) -> usize {
        self.m() - 3
    }

    pub fn sigma(&self) -> &SignSequence {
        &self.sigma
    }

    pub fn extended(&self) -> &[Sign] {
        &self.extended
    }

    pub fn coords(&self) -> &[(Rat, Rat)] {
        &self.coords
    }

    pub fn position(&self, hl: usize) -> usize {
        self.position[hl]
    }

    pub fn hl_label(&self, pos: usize) -> usize {
        self.label[pos]
    }

    /// Diagonal joining the HL vertices `i` and `j`.
    pub fn diagonal(&self, i: usize, j: usize) -> Result<Diagonal> {
        Diagonal::new(self.position[i], self.position[j], self.m())
    }

    /// HL endpoints `(i, j)`, `i < j`, of a diagonal.
    pub fn hl_endpoints(&self, d: Diagonal) -> (usize, usize) {
        let (i, j) = (self.label[d.a()], self.label[d.b()]);
        (i.min(j), i.max(j))
    }

    fn strictly_below(&self, i: usize, j: usize, v: usize) -> bool {
        orient(&self.coords[i], &self.coords[j], &self.coords[v]).is_negative()
    }

    /// `S` for the HL diagonal `ij`: vertices strictly below the line through
    /// `i` and `j`, with `0` renamed `i` and `n+2` renamed `j`.
    pub fn s_set_hl(&self, i: usize, j: usize) -> BTreeSet<usize> {
        let top = self.m() - 1;
        (0..self.m())
            .filter(|&v| v != i && v != j && self.strictly_below(i, j, v))
            .map(|v| match v {
                0 => i,
                v if v == top => j,
                v => v,
            })
            .collect()
    }
}

/// `S_d` for a counterclockwise-labeled diagonal.
pub fn hl_s(poly: &SignedPolygon, d: Diagonal) -> BTreeSet<usize> {
    let (i, j) = poly.hl_endpoints(d);
    poly.s_set_hl(i, j)
}

/// `Σ_{i∈S_d} x_i ≥ |S_d|(|S_d|+1)/2` for every diagonal and
/// `Σ x_i = (n+1)(n+2)/2`, in `R^{n+1}`.
pub fn hl_hrep(sigma: &SignedPolygon) -> HPolytope {
    let m = sigma.m();
    let n = m - 3;
    let facets = all_diagonals(m)
        .into_iter()
        .map(|d| {
            let s = hl_s(sigma, d);
            let k = s.len() as i64;
            let normal = (1..=n + 1)
                .map(|i| {
                    if s.contains(&i) {
                        -Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            Facet {
                label: d,
                normal,
                rhs: rat(-k * (k + 1) / 2),
            }
        })
        .collect();
    let eq = Equality {
        normal: QVector::new(vec![Rat::one(); n + 1]),
        rhs: rat(((n + 1) * (n + 2) / 2) as i64),
    };
    HPolytope::new(n + 1, m, facets, vec![eq]).expect("AssI rows are well formed")
}

/// Vertices strictly inside the boundary arc from `a` to `b` (positions)
/// that avoids position `c`.
fn cut_off(a: usize, b: usize, c: usize, m: usize) -> usize {
    let fwd = (b + m - a) % m; // steps a -> b counterclockwise
    let c_on_fwd = (c + m - a) % m < fwd;
    if c_on_fwd {
        m - fwd - 1
    } else {
        fwd - 1
    }
}

/// Coordinates of the vertex of `AssI(σ)` for `t`: with `τ_i` the triangle of
/// `t` at `i` straddling the vertical through `i`, and `l_i`, `r_i` the
/// numbers of polygon vertices cut off by its left and right edges,
/// `x_i = (l_i+1)(r_i+1)` for negative `i` and `n+2 - (l_i+1)(r_i+1)` for
/// positive `i`.
pub fn hl_vertex_rule(poly: &SignedPolygon, t: &Triangulation) -> Result<QVector> {
    let m = poly.m();
    if t.m() != m {
        return Err(Error::Invalid(format!(
            "triangulation of a {}-gon for a {m}-gon",
            t.m()
        )));
    }
    let n = m - 3;
    let triangles: Vec<[usize; 3]> = t
        .triangles()
        .into_iter()
        .map(|tri| tri.map(|p| poly.hl_label(p)))
        .collect();
    (1..=n + 1)
        .map(|i| {
            let (a, b) = triangles
                .iter()
                .filter(|tri| tri.contains(&i))
                .find_map(|tri| {
                    let others: Vec<usize> = tri.iter().copied().filter(|&v| v != i).collect();
                    let (lo, hi) = (others[0].min(others[1]), others[0].max(others[1]));
                    (lo < i && i < hi).then_some((lo, hi))
                })
                .ok_or_else(|| {
                    Error::Invalid(format!("no triangle straddles vertex {i} in {t}"))
                })?;
            let (pi, pa, pb) = (poly.position(i), poly.position(a), poly.position(b));
            let l = cut_off(pa, pi, pb, m) as i64;
            let r = cut_off(pi, pb, pa, m) as i64;
            let prod = (l + 1) * (r + 1);
            Ok(match poly.extended[i] {
                Sign::Minus => rat(prod),
                Sign::Plus => rat(n as i64 + 2 - prod),
            })
        })
        .collect::<Result<Vec<Rat>>>()
        .map(QVector::new)
}

/// The `n` parallel facet pairs: for `j = 1..=n` the two diagonals of the
/// quadrilateral on the HL vertices `i < j < j+1 < k`, where `i` is the last
/// vertex before `j` with sign opposite to `j` and `k` the first vertex after
/// `j+1` with sign opposite to `j+1`.
pub fn hl_parallel_pairs(poly: &SignedPolygon) -> BTreeSet<(Diagonal, Diagonal)> {
    let n = poly.n();
    let s = &poly.extended;
    (1..=n)
        .map(|j| {
            let i = (0..j)
                .rev()
                .find(|&r| s[r] != s[j])
                .expect("vertex 0 differs from every negative");
            let k = (j + 2..=n + 2)
                .find(|&r| s[r] != s[j + 1])
                .expect("vertex n+2 differs from every negative");
            let mut quad = [i, j, j + 1, k].map(|v| poly.position(v));
            quad.sort_unstable();
            let d = Diagonal::chord(quad[0], quad[2]);
            let e = Diagonal::chord(quad[1], quad[3]);
            (d.min(e), d.max(e))
        })
        .collect()
}

/// Lexicographic minimum (with `+ < -`) of `σ`, `-σ`, `σᵗ` and `-σᵗ`.
pub fn sign_canonical(sigma: &SignSequence) -> SignSequence {
    let rev = sigma.reversed();
    [sigma.negated(), rev.negated(), rev, sigma.clone()]
        .into_iter()
        .min()
        .expect("four candidates")
}
