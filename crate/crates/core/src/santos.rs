//! Seed-triangulation associahedra `AssII(T0)`: normal vectors read off a seed
//! triangulation, the flip dependences that make them a complete fan, and
//! certified right-hand sides that make the fan polytopal.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{rat, ratio, QVector, Rat};
use crate::polygon::{
    all_diagonals, enumerate_triangulations, is_boundary_edge, path_triangulation_from_signs,
    Diagonal, SignSequence, Triangulation,
};
use crate::realization::{Facet, HPolytope, LabeledFan};

/// A seed triangulation with its diagonals numbered `δ_1..δ_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedFrame {
    t0: Triangulation,
    order: Vec<Diagonal>,
}

impl SeedFrame {
    /// Numbers the diagonals along the dual path when the dual tree is a
    /// path, and in sorted order otherwise.
    pub fn new(t0: Triangulation) -> Self {
        let order = t0
            .dual_tree()
            .path_order()
            .unwrap_or_else(|| t0.diagonals().to_vec());
        SeedFrame { t0, order }
    }

    pub fn with_order(t0: Triangulation, order: Vec<Diagonal>) -> Result<Self> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != t0.diagonals() {
            return Err(Error::Invalid(format!(
                "order must list the diagonals of {t0} once each"
            )));
        }
        Ok(SeedFrame { t0, order })
    }

    /// The path triangulation `T_c` with its diagonals in path order.
    pub fn path(c: &SignSequence) -> Self {
        let (t0, order) = path_triangulation_from_signs(c);
        SeedFrame { t0, order }
    }

    pub fn t0(&self) -> &Triangulation {
        &self.t0
    }

    pub fn order(&self) -> &[Diagonal] {
        &self.order
    }

    pub fn m(&self) -> usize {
        self.t0.m()
    }

    pub fn n(&self) -> usize {
        self.t0.n()
    }

    /// `v(d)`: `-α_i` for `d = δ_i`, else the sum of `α_i` over the `δ_i`
    /// crossed by `d`. Boundary edges get the zero vector.
    pub fn v(&self, a: usize, b: usize) -> QVector {
        let n = self.n();
        if is_boundary_edge(a, b, self.m()) {
            return QVector::zeros(n);
        }
        let d = Diagonal::chord(a, b);
        if let Some(i) = self.order.iter().position(|&x| x == d) {
            return QVector::unit(n, i).scale(&-Rat::one());
        }
        self.order
            .iter()
            .map(|&x| {
                if x.crosses(d) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }
}

pub fn santos_vectors(frame: &SeedFrame) -> BTreeMap<Diagonal, QVector> {
    all_diagonals(frame.m())
        .into_iter()
        .map(|d| (d, frame.v(d.a(), d.b())))
        .collect()
}

/// The fan spanned by the `v` vectors.
pub fn santos_fan(frame: &SeedFrame) -> LabeledFan {
    LabeledFan::new(frame.m(), santos_vectors(frame)).expect("one nonzero vector per diagonal")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlipCase {
    /// A seed diagonal crosses two opposite sides of the quadrilateral.
    A,
    /// One of the two quadrilateral diagonals is in the seed.
    B,
    /// A seed triangle has a vertex at a corner and its opposite side
    /// crosses both sides at the opposite corner.
    C,
    /// A seed triangle shares a side with the quadrilateral and the opposite
    /// side crosses its two other sides.
    D,
}

/// The linear dependence among the vectors of the flip in `quad`, as
/// coefficients on diagonals (boundary edges carry zero vectors and are left
/// out). The two quadrilateral diagonals have positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipDependence {
    pub quad: [usize; 4],
    pub case: FlipCase,
    #[serde(serialize_with = "serialize_rat_map")]
    pub coefficients: BTreeMap<Diagonal, Rat>,
}

impl FlipDependence {
    /// `Σ λ_d v(d)`; zero when the dependence is correct.
    pub fn residual(&self, frame: &SeedFrame) -> QVector {
        self.coefficients
            .iter()
            .fold(QVector::zeros(frame.n()), |acc, (d, c)| {
                acc.axpy(c, &frame.v(d.a(), d.b()))
            })
    }

    pub fn dot(&self, omega: &BTreeMap<Diagonal, Rat>) -> Rat {
        self.coefficients.iter().map(|(d, c)| c * &omega[d]).sum()
    }
}

fn add_term(map: &mut BTreeMap<Diagonal, Rat>, a: usize, b: usize, c: Rat, m: usize) {
    if is_boundary_edge(a, b, m) {
        return;
    }
    let e = map.entry(Diagonal::chord(a, b)).or_insert_with(Rat::zero);
    *e += c;
}

/// Chords cross when their endpoints interleave; boundary edges never cross anything.
fn chords_cross(a: usize, b: usize, c: usize, d: usize) -> bool {
    Diagonal::chord(a, b).crosses(Diagonal::chord(c, d))
}

/// `x` strictly inside the counterclockwise arc from `from` to `to`.
fn strictly_between(x: usize, from: usize, to: usize, m: usize) -> bool {
    let span = (to + m - from) % m;
    let off = (x + m - from) % m;
    off > 0 && off < span
}

/// Classifies the flip exchanging the diagonals of `quad` and returns the
/// explicit dependence. Exactly one case must apply.
pub fn flip_dependence(frame: &SeedFrame, quad: [usize; 4]) -> Result<FlipDependence> {
    let m = frame.m();
    let [p, q, r, s] = quad;
    if !(p < q && q < r && r < s && s < m) {
        return Err(Error::Invalid(format!(
            "quadrilateral {quad:?} must satisfy p < q < r < s < m"
        )));
    }
    let t0 = &frame.t0;
    let fail = |detail: String| Error::FlipClassification { quad, detail };
    let corners = [p, q, r, s];
    let triangles = t0.triangles();
    let mut found: Vec<(FlipCase, BTreeMap<Diagonal, Rat>)> = Vec::new();

    // (a): a seed diagonal crossing two opposite sides
    for (e1, e2) in [((p, q), (r, s)), ((q, r), (s, p))] {
        if t0.diagonals().iter().any(|d| {
            chords_cross(d.a(), d.b(), e1.0, e1.1) && chords_cross(d.a(), d.b(), e2.0, e2.1)
        }) {
            let mut c = BTreeMap::new();
            add_term(&mut c, p, r, rat(1), m);
            add_term(&mut c, q, s, rat(1), m);
            add_term(&mut c, e1.0, e1.1, rat(-1), m);
            add_term(&mut c, e2.0, e2.1, rat(-1), m);
            found.push((FlipCase::A, c));
        }
    }

    // (b): pr or qs in the seed; rotate so that the seed diagonal is "pr"
    for k in 0..2 {
        let [p, q, r, s] = [
            corners[k],
            corners[k + 1],
            corners[(k + 2) % 4],
            corners[(k + 3) % 4],
        ];
        let d = Diagonal::chord(p, r);
        if !t0.contains(d) {
            continue;
        }
        let apex_on = |side: usize| {
            triangles
                .iter()
                .filter(|t| t.contains(&p) && t.contains(&r))
                .map(|t| {
                    t.iter()
                        .copied()
                        .find(|&v| v != p && v != r)
                        .expect("triangle")
                })
                .find(|&v| strictly_between(v, p, r, m) == strictly_between(side, p, r, m))
                .expect("a seed triangle on each side of a seed diagonal")
        };
        let (a, b) = (apex_on(q), apex_on(s));
        let mut c = BTreeMap::new();
        add_term(&mut c, p, r, rat(1), m);
        add_term(&mut c, q, s, rat(1), m);
        if a != q {
            let (x, y) = if strictly_between(a, p, q, m) {
                (p, q)
            } else {
                (q, r)
            };
            add_term(&mut c, x, y, rat(-1), m);
        }
        if b != s {
            let (x, y) = if strictly_between(b, s, p, m) {
                (s, p)
            } else {
                (r, s)
            };
            add_term(&mut c, x, y, rat(-1), m);
        }
        found.push((FlipCase::B, c));
    }

    for tri in &triangles {
        // (c): apex X at a corner, opposite side crossing both sides at the opposite corner Y
        for (k, &x) in corners.iter().enumerate() {
            if !tri.contains(&x) {
                continue;
            }
            let y = corners[(k + 2) % 4];
            let (u, w) = (corners[(k + 1) % 4], corners[(k + 3) % 4]);
            let others: Vec<usize> = tri.iter().copied().filter(|&v| v != x).collect();
            let (b, c) = (others[0], others[1]);
            if chords_cross(b, c, u, y) && chords_cross(b, c, y, w) {
                let mut co = BTreeMap::new();
                add_term(&mut co, x, y, rat(2), m);
                add_term(&mut co, u, w, rat(1), m);
                add_term(&mut co, u, y, rat(-1), m);
                add_term(&mut co, y, w, rat(-1), m);
                found.push((FlipCase::C, co));
            }
        }
        // (d): a triangle sharing side E of the quad whose other sides cross the opposite side F
        for k in 0..4 {
            let (e0, e1) = (corners[k], corners[(k + 1) % 4]);
            if !(tri.contains(&e0) && tri.contains(&e1)) {
                continue;
            }
            let apex = tri
                .iter()
                .copied()
                .find(|&v| v != e0 && v != e1)
                .expect("triangle");
            let (f0, f1) = (corners[(k + 2) % 4], corners[(k + 3) % 4]);
            if chords_cross(e0, apex, f0, f1) && chords_cross(e1, apex, f0, f1) {
                let mut co = BTreeMap::new();
                add_term(&mut co, p, r, rat(1), m);
                add_term(&mut co, q, s, rat(1), m);
                add_term(&mut co, f0, f1, rat(-1), m);
                found.push((FlipCase::D, co));
            }
        }
    }

    match found.len() {
        1 => {
            let (case, coefficients) = found.pop().expect("one entry");
            let dep = FlipDependence {
                quad,
                case,
                coefficients,
            };
            if !dep.residual(frame).is_zero() {
                return Err(fail(format!("case {case:?} dependence does not vanish")));
            }
            let pos = |a, b| {
                dep.coefficients
                    .get(&Diagonal::chord(a, b))
                    .is_some_and(|c| c.is_positive())
            };
            if !pos(p, r) || !pos(q, s) {
                return Err(fail(format!(
                    "case {case:?} has a non-positive coefficient on a flipped diagonal"
                )));
            }
            Ok(dep)
        }
        0 => Err(fail("no case applies".into())),
        _ => Err(fail(format!(
            "several cases apply: {:?}",
            found.iter().map(|(c, _)| *c).collect::<Vec<_>>()
        ))),
    }
}

/// All `C(m, 4)` quadrilaterals.
pub fn quadrilaterals(m: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for p in 0..m {
        for q in p + 1..m {
            for r in q + 1..m {
                for s in r + 1..m {
                    out.push([p, q, r, s]);
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    #[serde(serialize_with = "serialize_rat_map")]
    pub omega: BTreeMap<Diagonal, Rat>,
    #[serde(serialize_with = "crate::exactlin::serialize_rat")]
    pub epsilon: Rat,
    pub halvings: u32,
}

fn serialize_rat_map<S: serde::Serializer>(
    omega: &BTreeMap<Diagonal, Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(omega.iter().map(|(d, w)| (d.to_string(), w.to_string())))
}

const MAX_HALVINGS: u32 = 64;

fn perturbed_weights(frame: &SeedFrame, eps: &Rat) -> BTreeMap<Diagonal, Rat> {
    let m = frame.m() as i64;
    all_diagonals(frame.m())
        .into_iter()
        .map(|d| {
            let w = if frame.t0.contains(d) {
                rat(2)
            } else {
                let (i, j) = (d.a() as i64, d.b() as i64);
                Rat::one() + eps * rat((j - i) * (m + i - j))
            };
            (d, w)
        })
        .collect()
}

/// `ω = 2` on the seed and `1 + ε (j-i)(m+i-j)` elsewhere, with
/// `ε = 1/(4m^3)` halved until every flip dependence has `λ·ω > 0`.
pub fn santos_weights(frame: &SeedFrame) -> Result<WeightVector> {
    let deps = quadrilaterals(frame.m())
        .into_par_iter()
        .map(|quad| flip_dependence(frame, quad))
        .collect::<Result<Vec<_>>>()?;
    let mut eps = ratio(1, 4 * (frame.m() as i64).pow(3));
    for halvings in 0..=MAX_HALVINGS {
        let omega = perturbed_weights(frame, &eps);
        if deps.par_iter().all(|dep| dep.dot(&omega).is_positive()) {
            return Ok(WeightVector {
                omega,
                epsilon: eps,
                halvings,
            });
        }
        eps /= rat(2);
    }
    Err(Error::WeightCertification {
        halvings: MAX_HALVINGS,
    })
}

/// `{x : ⟨v(d), x⟩ ≤ ω(d)}` with certified weights.
pub fn santos_hrep(frame: &SeedFrame) -> Result<HPolytope> {
    let w = santos_weights(frame)?;
    santos_hrep_with(frame, &w)
}

pub fn santos_hrep_with(frame: &SeedFrame, w: &WeightVector) -> Result<HPolytope> {
    let facets = santos_vectors(frame)
        .into_iter()
        .map(|(d, v)| Facet {
            label: d,
            normal: v,
            rhs: w.omega[&d].clone(),
        })
        .collect();
    HPolytope::new(frame.n(), frame.m(), facets, vec![])
}

/// `{(δ, flip(δ, T0))}` for `δ` in the seed, each pair sorted.
pub fn santos_parallel_pairs(frame: &SeedFrame) -> BTreeSet<(Diagonal, Diagonal)> {
    frame
        .t0
        .flip_partners()
        .into_iter()
        .map(|(d, e)| (d.min(e), d.max(e)))
        .collect()
}

/// The diagonals of `t` together with their flip partners.
pub fn b_set(t: &Triangulation) -> BTreeSet<Diagonal> {
    let mut b: BTreeSet<Diagonal> = t.diagonals().iter().copied().collect();
    b.extend(t.flip_partners().into_iter().map(|(_, e)| e));
    assert_eq!(
        b.len(),
        2 * t.n(),
        "flips of distinct diagonals are distinct"
    );
    b
}

/// Every triangulation `T` with `B_T = b`, found by searching the
/// non-crossing subsets of `b`.
pub fn triangulations_with_b_set(b: &BTreeSet<Diagonal>, m: usize) -> Vec<Triangulation> {
    let items: Vec<Diagonal> = b.iter().copied().collect();
    let n = m - 3;
    let mut out = Vec::new();
    let mut chosen: Vec<Diagonal> = Vec::with_capacity(n);
    fn go(
        start: usize,
        items: &[Diagonal],
        n: usize,
        m: usize,
        chosen: &mut Vec<Diagonal>,
        b: &BTreeSet<Diagonal>,
        out: &mut Vec<Triangulation>,
    ) {
        if chosen.len() == n {
            let t = Triangulation::new(m, chosen.clone()).expect("non-crossing n-set");
            if b_set(&t) == *b {
                out.push(t);
            }
            return;
        }
        for i in start..items.len() {
            if items.len() - i < n - chosen.len() {
                break;
            }
            if chosen.iter().any(|c| c.crosses(items[i])) {
                continue;
            }
            chosen.push(items[i]);
            go(i + 1, items, n, m, chosen, b, out);
            chosen.pop();
        }
    }
    go(0, &items, n, m, &mut chosen, b, &mut out);
    out
}

/// The seeds give linearly equivalent normal-vector sets iff their dual
/// trees are isomorphic; decided by canonical tree codes.
pub fn dual_tree_normal_equiv(t1: &Triangulation, t2: &Triangulation) -> bool {
    t1.m() == t2.m() && t1.dual_tree().canonical_code() == t2.dual_tree().canonical_code()
}

/// For tree-isomorphic seeds, a coordinate permutation `π` (coordinate `i`
/// of the first frame goes to coordinate `π[i]` of the second) that carries
/// the vector set of `f1` onto that of `f2`.
pub fn normal_vector_relabeling(f1: &SeedFrame, f2: &SeedFrame) -> Option<Vec<usize>> {
    let map = f1.t0.dual_tree().edge_isomorphism(&f2.t0.dual_tree())?;
    Some(
        f1.order
            .iter()
            .map(|d| {
                f2.order
                    .iter()
                    .position(|e| *e == map[d])
                    .expect("edge map is onto")
            })
            .collect(),
    )
}

/// The vector set `{v(d)}` as a set.
pub fn vector_set(frame: &SeedFrame) -> BTreeSet<QVector> {
    santos_vectors(frame).into_values().collect()
}

pub fn permute_coordinates(v: &QVector, perm: &[usize]) -> QVector {
    let mut out = vec![Rat::zero(); v.dim()];
    for (i, &j) in perm.iter().enumerate() {
        out[j] = v[i].clone();
    }
    QVector::new(out)
}

/// Almost positive roots of `A_n` in the simple-root basis:
/// `-α_i` and `α_i + ... + α_j`.
pub fn almost_positive_roots(n: usize) -> BTreeSet<QVector> {
    let mut out: BTreeSet<QVector> = (0..n)
        .map(|i| QVector::unit(n, i).scale(&-Rat::one()))
        .collect();
    for i in 0..n {
        for j in i..n {
            out.insert(
                (0..n)
                    .map(|k| {
                        if (i..=j).contains(&k) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

/// Enumerates every seed up to symmetry, i.e. one per dihedral class.
pub fn canonical_seeds(m: usize) -> Result<Vec<Triangulation>> {
    Ok(enumerate_triangulations(m)?
        .into_iter()
        .filter(|t| t.is_canonical())
        .collect())
}
