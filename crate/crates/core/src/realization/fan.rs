use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{verify_realization, HPolytope};
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, QMatrix, QVector, Rat};
use crate::polygon::{all_diagonals, enumerate_triangulations, Diagonal, Dihedral, Triangulation};

/// A simplicial fan in `R^n` with one ray per diagonal of the `(n+3)`-gon;
/// its maximal cones are spanned by the rays of triangulations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledFan {
    m: usize,
    rays: BTreeMap<Diagonal, QVector>,
    /// Basis of the ambient quotient in which the rays are written; empty when
    /// the rays are the facet normals themselves.
    basis: Vec<QVector>,
}

impl LabeledFan {
    pub fn new(m: usize, rays: BTreeMap<Diagonal, QVector>) -> Result<Self> {
        let keys: Vec<Diagonal> = rays.keys().copied().collect();
        if keys != all_diagonals(m) {
            return Err(Error::Invalid(format!(
                "rays must be labeled by the diagonals of the {m}-gon"
            )));
        }
        for v in rays.values() {
            if v.dim() != m - 3 {
                return Err(Error::DimensionMismatch {
                    expected: m - 3,
                    found: v.dim(),
                });
            }
            if v.is_zero() {
                return Err(Error::Invalid("zero ray".into()));
            }
        }
        Ok(LabeledFan {
            m,
            rays,
            basis: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m - 3
    }

    pub fn rays(&self) -> &BTreeMap<Diagonal, QVector> {
        &self.rays
    }

    pub fn ray(&self, d: Diagonal) -> &QVector {
        &self.rays[&d]
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn cone(&self, t: &Triangulation) -> Vec<QVector> {
        t.diagonals().iter().map(|d| self.rays[d].clone()).collect()
    }

    /// Every triangulation spans a full-dimensional simplicial cone.
    pub fn check_simplicial(&self) -> Result<()> {
        for t in enumerate_triangulations(self.m)? {
            if QMatrix::from_columns(&self.cone(&t))?.rank() != self.n() {
                return Err(Error::Verification(format!(
                    "cone of {t} is not full-dimensional"
                )));
            }
        }
        Ok(())
    }

    /// The fan with every ray replaced by the ray of its image under `g`.
    pub fn relabeled(&self, g: Dihedral) -> LabeledFan {
        let rays = self
            .rays
            .iter()
            .map(|(&d, v)| (g.apply_diagonal(d, self.m), v.clone()))
            .collect();
        LabeledFan {
            m: self.m,
            rays,
            basis: self.basis.clone(),
        }
    }
}

/// Greedy complement of the row space of `eq`, drawn from the prefix sums
/// `e_1, e_1+e_2, ...` and then from unit vectors.
fn complement_basis(eq: &[QVector], dim: usize) -> Vec<QVector> {
    let prefix = (1..=dim).map(|j| {
        (0..dim)
            .map(|i| if i < j { Rat::one() } else { Rat::zero() })
            .collect()
    });
    let units = (0..dim).map(|i| QVector::unit(dim, i));
    let mut chosen: Vec<QVector> = Vec::new();
    let mut rows: Vec<QVector> = eq.to_vec();
    let mut rank = if rows.is_empty() {
        0
    } else {
        QMatrix::from_rows(rows.clone()).expect("same dims").rank()
    };
    for cand in prefix.chain(units) {
        if rank == dim {
            break;
        }
        rows.push(cand.clone());
        let r = QMatrix::from_rows(rows.clone()).expect("same dims").rank();
        if r > rank {
            rank = r;
            chosen.push(cand);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Outward facet normals, reduced modulo the equality space and made
/// primitive, without re-verifying the polytope.
pub fn normal_fan_unchecked(h: &HPolytope) -> Result<LabeledFan> {
    let m = h.m();
    if h.equalities().is_empty() {
        let rays = h
            .facets()
            .iter()
            .map(|f| (f.label, f.normal.primitive()))
            .collect();
        return LabeledFan::new(m, rays);
    }
    // independent subset of equality normals
    let mut eq: Vec<QVector> = Vec::new();
    for e in h.equalities() {
        eq.push(e.normal.clone());
        if QMatrix::from_rows(eq.clone())?.rank() < eq.len() {
            eq.pop();
        }
    }
    let basis = complement_basis(&eq, h.dim());
    let mut cols = eq.clone();
    cols.extend(basis.iter().cloned());
    let frame = QMatrix::from_columns(&cols)?;
    let inv = frame
        .inverse()
        .ok_or_else(|| Error::Verification("quotient frame is singular".into()))?;
    let k = eq.len();
    let mut rays = BTreeMap::new();
    for f in h.facets() {
        let coords = inv.mul_vec(&f.normal);
        let ray: QVector = coords.iter().skip(k).cloned().collect();
        rays.insert(f.label, ray.primitive());
    }
    let mut fan = LabeledFan::new(m, rays)?;
    fan.basis = basis;
    Ok(fan)
}

/// Normal fan of a verified associahedron.
pub fn normal_fan(h: &HPolytope) -> Result<LabeledFan> {
    let report = verify_realization(h);
    if !report.is_simple_associahedron {
        return Err(Error::Verification(report.failures.join("; ")));
    }
    normal_fan_unchecked(h)
}

/// Unordered pairs `{d, d'}` (stored with `d < d'`) of opposite rays.
pub fn parallel_pairs(f: &LabeledFan) -> BTreeSet<(Diagonal, Diagonal)> {
    let items: Vec<(&Diagonal, &QVector)> = f.rays.iter().collect();
    let mut out = BTreeSet::new();
    for (i, (d, u)) in items.iter().enumerate() {
        for (e, v) in &items[i + 1..] {
            if u.ratio_to(v).is_some_and(|c| c.is_negative()) {
                out.insert((**d, **e));
            }
        }
    }
    out
}

/// A fan with the coordinates of every ray in the ray basis of every dihedral
/// image of the fan triangulation, so many isomorphism tests can share the
/// linear algebra.
#[derive(Clone, Debug)]
pub struct PreparedFan {
    fan: LabeledFan,
    diagonals: Vec<Diagonal>,
    base: Triangulation,
    /// `coords[g][γ]`: coordinates of `ray(g γ)` in the basis `ray(g d)`, `d` in base.
    coords: Vec<Vec<QVector>>,
    /// `frames[g]`: matrix with columns `ray(g d)`, `d` in base.
    frames: Vec<QMatrix>,
    elements: Vec<Dihedral>,
}

impl PreparedFan {
    pub fn new(fan: &LabeledFan) -> Result<Self> {
        let m = fan.m;
        let diagonals = all_diagonals(m);
        let base = Triangulation::fan(m);
        let elements: Vec<Dihedral> = Dihedral::elements(m).collect();
        let mut coords = Vec::with_capacity(elements.len());
        let mut frames = Vec::with_capacity(elements.len());
        for &g in &elements {
            let cols: Vec<QVector> = base
                .diagonals()
                .iter()
                .map(|&d| fan.rays[&g.apply_diagonal(d, m)].clone())
                .collect();
            let frame = QMatrix::from_columns(&cols)?;
            let inv = frame.inverse().ok_or(Error::NotSimplicial)?;
            coords.push(
                diagonals
                    .iter()
                    .map(|&x| inv.mul_vec(&fan.rays[&g.apply_diagonal(x, m)]))
                    .collect(),
            );
            frames.push(frame);
        }
        Ok(PreparedFan {
            fan: fan.clone(),
            diagonals,
            base,
            coords,
            frames,
            elements,
        })
    }

    pub fn fan(&self) -> &LabeledFan {
        &self.fan
    }

    /// Linear isomorphism onto `other` composed with the dihedral relabeling
    /// `elements[gi]`, if one exists.
    fn try_element(&self, other: &PreparedFan, gi: usize) -> Option<FanIsomorphism> {
        let n = self.fan.n();
        let mut edges: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); n];
        for (c, c2) in self.coords[0].iter().zip(&other.coords[gi]) {
            let mut support: Vec<(usize, Rat)> = Vec::new();
            for k in 0..n {
                match (c[k].is_zero(), c2[k].is_zero()) {
                    (true, true) => {}
                    (false, false) => {
                        let t = &c2[k] / &c[k];
                        if !t.is_positive() {
                            return None;
                        }
                        support.push((k, t));
                    }
                    _ => return None,
                }
            }
            // λ_j / λ_k = t_j / t_k along the support
            for w in support.windows(2) {
                let ((j, tj), (k, tk)) = (&w[0], &w[1]);
                let r = tj / tk;
                edges[*j].push((*k, r.recip()));
                edges[*k].push((*j, r));
            }
        }
        let mut lambda: Vec<Option<Rat>> = vec![None; n];
        for root in 0..n {
            if lambda[root].is_some() {
                continue;
            }
            lambda[root] = Some(Rat::one());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let lu = lambda[u].clone().expect("assigned before enqueue");
                for (v, r) in &edges[u] {
                    // edge (u -> v, r) means λ_v = λ_u * r
                    let want = &lu * r;
                    match &lambda[*v] {
                        Some(lv) if *lv != want => return None,
                        Some(_) => {}
                        None => {
                            lambda[*v] = Some(want);
                            queue.push_back(*v);
                        }
                    }
                }
            }
        }
        let lambda: Vec<Rat> = lambda
            .into_iter()
            .map(|l| l.expect("every node assigned"))
            .collect();
        let scaled: Vec<QVector> = (0..n)
            .map(|k| other.frames[gi].column(k).scale(&lambda[k]))
            .collect();
        let scaled = QMatrix::from_columns(&scaled).ok()?;
        let matrix = scaled.mul(&self.frames[0].inverse()?);
        Some(FanIsomorphism {
            phi: self.elements[gi],
            matrix,
        })
    }

    fn base_edges_consistent(&self) -> bool {
        self.coords[0].len() == self.diagonals.len() && self.base.n() == self.fan.n()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanIsomorphism {
    /// Dihedral relabeling: the ray of `d` maps onto the ray of `phi(d)`.
    pub phi: Dihedral,
    pub matrix: QMatrix,
}

impl FanIsomorphism {
    /// Every ray of `f1` goes to a positive multiple of the corresponding ray of `f2`.
    pub fn verify(&self, f1: &LabeledFan, f2: &LabeledFan) -> bool {
        f1.rays.iter().all(|(&d, v)| {
            let image = self.matrix.mul_vec(v);
            let target = &f2.rays[&self.phi.apply_diagonal(d, f1.m)];
            image.ratio_to(target).is_some_and(|c| c.is_positive())
        })
    }
}

/// Searches the `2m` dihedral relabelings, rotations first, and returns the
/// first one admitting a linear map between the fans.
pub fn fans_linearly_isomorphic(f1: &PreparedFan, f2: &PreparedFan) -> Option<FanIsomorphism> {
    if f1.fan.m != f2.fan.m || !f1.base_edges_consistent() || !f2.base_edges_consistent() {
        return None;
    }
    (0..f1.elements.len())
        .into_par_iter()
        .find_map_first(|gi| f1.try_element(f2, gi))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompletenessReport {
    pub points: usize,
    pub resampled: usize,
    /// Points covered by no cone or by more than one.
    pub failures: Vec<String>,
}

impl CompletenessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Cone `R_T^{-1} = adj / det` in integers, for quick sign tests.
struct IntegerCone {
    adj: Vec<Vec<i128>>,
    det_sign: i32,
    gens: Vec<QVector>,
}

enum Membership {
    Inside,
    Outside,
    Boundary,
}

impl IntegerCone {
    fn new(gens: Vec<QVector>) -> Result<Self> {
        let r = QMatrix::from_columns(&gens)?;
        let det = r.determinant();
        let inv = r.inverse().ok_or(Error::NotSimplicial)?;
        let adj = inv
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * &det;
                        y.to_integer()
                            .to_i128()
                            .ok_or_else(|| Error::Invalid("adjugate overflow".into()))
                    })
                    .collect::<Result<Vec<i128>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let det_sign = if det.is_positive() { 1 } else { -1 };
        Ok(IntegerCone {
            adj,
            det_sign,
            gens,
        })
    }

    fn classify(&self, x: &[i64]) -> Membership {
        let mut boundary = false;
        for row in &self.adj {
            let s = row.iter().zip(x).try_fold(0i128, |acc, (a, &b)| {
                acc.checked_add(a.checked_mul(b as i128)?)
            });
            let sign = match s {
                Some(v) => v.signum() as i32 * self.det_sign,
                None => return self.classify_exact(x),
            };
            match sign {
                0 => boundary = true,
                s if s < 0 => return Membership::Outside,
                _ => {}
            }
        }
        if boundary {
            Membership::Boundary
        } else {
            Membership::Inside
        }
    }

    fn classify_exact(&self, x: &[i64]) -> Membership {
        let a = QMatrix::from_columns(&self.gens).expect("same dims");
        let xv: QVector = x
            .iter()
            .map(|&v| Rat::from_integer(BigInt::from(v)))
            .collect();
        let c = solve_linear(&a, &xv)
            .expect("dims agree")
            .expect("nonsingular cone");
        if c.iter().any(|v| v.is_negative()) {
            Membership::Outside
        } else if c.iter().any(|v| v.is_zero()) {
            Membership::Boundary
        } else {
            Membership::Inside
        }
    }
}

/// Samples `points` random rational points with entries in `[-10, 10]`
/// (denominator 10) and checks each lies in exactly one maximal cone. A point
/// on the boundary of any cone is replaced by a fresh sample.
pub fn sample_completeness(f: &LabeledFan, points: usize, seed: u64) -> Result<CompletenessReport> {
    let cones = enumerate_triangulations(f.m)?
        .into_par_iter()
        .map(|t| IntegerCone::new(f.cone(&t)).map(|c| (t, c)))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut resampled = 0;
    let mut failures = Vec::new();
    let n = f.n();
    let mut accepted = 0;
    while accepted < points {
        // entries p/10 with p in [-100, 100]; cone membership is scale invariant
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-100..=100)).collect();
        let verdicts: Vec<Membership> = cones.par_iter().map(|(_, c)| c.classify(&x)).collect();
        if verdicts.iter().any(|v| matches!(v, Membership::Boundary)) || x.iter().all(|&v| v == 0) {
            resampled += 1;
            if resampled > 100 * points.max(1) {
                return Err(Error::Verification("too many boundary samples".into()));
            }
            continue;
        }
        accepted += 1;
        let inside: Vec<&Triangulation> = verdicts
            .iter()
            .zip(&cones)
            .filter(|(v, _)| matches!(v, Membership::Inside))
            .map(|(_, (t, _))| t)
            .collect();
        if inside.len() != 1 {
            let pt: Vec<String> = x
                .iter()
                .map(|v| format!("{}", Rat::new(BigInt::from(*v), BigInt::from(10))))
                .collect();
            failures.push(format!(
                "point ({}) lies in {} cones",
                pt.join(","),
                inside.len()
            ));
        }
    }
    Ok(CompletenessReport {
        points,
        resampled,
        failures,
    })
}
