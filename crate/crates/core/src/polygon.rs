//! Combinatorics of a convex m-gon with vertices labeled `0..m` counterclockwise:
//! diagonals, triangulations, flips, dual trees and the dihedral action.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A chord `a-b` with `a < b` between non-adjacent vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    a: u8,
    b: u8,
}

impl Diagonal {
    pub fn new(a: usize, b: usize, m: usize) -> Result<Self> {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if b >= m || b - a < 2 || (a == 0 && b == m - 1) || m > u8::MAX as usize {
            return Err(Error::InvalidDiagonal { a, b, m });
        }
        Ok(Diagonal {
            a: a as u8,
            b: b as u8,
        })
    }

    /// Normalizes the endpoint order without checking against a polygon.
    pub(crate) fn chord(a: usize, b: usize) -> Self {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        Diagonal {
            a: a as u8,
            b: b as u8,
        }
    }

    pub fn a(self) -> usize {
        self.a as usize
    }

    pub fn b(self) -> usize {
        self.b as usize
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a(), self.b())
    }

    pub fn is_valid(self, m: usize) -> bool {
        Diagonal::new(self.a(), self.b(), m).is_ok()
    }

    pub fn has_endpoint(self, v: usize) -> bool {
        self.a() == v || self.b() == v
    }

    /// Cyclic length: the shorter boundary path between the endpoints.
    pub fn length(self, m: usize) -> usize {
        let d = self.b() - self.a();
        d.min(m - d)
    }

    /// Strict interleaving of endpoints. Shared endpoints do not cross.
    pub fn crosses(self, other: Diagonal) -> bool {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Diagonal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn is_boundary_edge(a: usize, b: usize, m: usize) -> bool {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    b - a == 1 || (a == 0 && b == m - 1)
}

pub fn crossing(d1: Diagonal, d2: Diagonal, m: usize) -> Result<bool> {
    for d in [d1, d2] {
        if !d.is_valid(m) {
            return Err(Error::InvalidDiagonal {
                a: d.a(),
                b: d.b(),
                m,
            });
        }
    }
    Ok(d1.crosses(d2))
}

/// All diagonals of the m-gon in lexicographic order.
pub fn all_diagonals(m: usize) -> Vec<Diagonal> {
    (0..m)
        .flat_map(|a| (a + 2..m).map(move |b| (a, b)))
        .filter_map(|(a, b)| Diagonal::new(a, b, m).ok())
        .collect()
}

pub fn catalan(k: usize) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i as u64 + 1) / (i as u64 + 2))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    m: usize,
    diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(m: usize, mut diagonals: Vec<Diagonal>) -> Result<Self> {
        if m < 3 {
            return Err(Error::PolygonTooSmall { m, min: 3 });
        }
        diagonals.sort_unstable();
        diagonals.dedup();
        if diagonals.len() != m - 3 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} distinct diagonals, got {}",
                m - 3,
                diagonals.len()
            )));
        }
        if let Some(d) = diagonals.iter().find(|d| !d.is_valid(m)) {
            return Err(Error::InvalidDiagonal {
                a: d.a(),
                b: d.b(),
                m,
            });
        }
        for (i, d) in diagonals.iter().enumerate() {
            if let Some(e) = diagonals[i + 1..].iter().find(|e| d.crosses(**e)) {
                return Err(Error::InvalidTriangulation(format!("{d} crosses {e}")));
            }
        }
        Ok(Triangulation { m, diagonals })
    }

    pub(crate) fn from_sorted_unchecked(m: usize, diagonals: Vec<Diagonal>) -> Self {
        Triangulation { m, diagonals }
    }

    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let ds = pairs
            .iter()
            .map(|&(a, b)| Diagonal::new(a, b, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, ds)
    }

    /// Fan triangulation at vertex 0; the lexicographically first one.
    pub fn fan(m: usize) -> Self {
        Triangulation {
            m,
            diagonals: (2..m - 1).map(|b| Diagonal::chord(0, b)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.m - 3
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    fn is_edge(&self, a: usize, b: usize) -> bool {
        is_boundary_edge(a, b, self.m) || self.contains(Diagonal::chord(a, b))
    }

    /// The `m - 2` triangles, each as sorted vertex triple, sorted.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let m = self.m;
        let mut chords: Vec<(usize, usize)> = (0..m - 1).map(|i| (i, i + 1)).collect();
        chords.push((0, m - 1));
        chords.extend(self.diagonals.iter().map(|d| d.endpoints()));
        let mut tris: Vec<[usize; 3]> = chords
            .into_iter()
            .filter_map(|(x, z)| {
                (x + 1..z)
                    .find(|&y| self.is_edge(x, y) && self.is_edge(y, z))
                    .map(|y| [x, y, z])
            })
            .collect();
        tris.sort_unstable();
        tris.dedup();
        tris
    }

    /// Apexes of the two triangles on either side of `d`: the one in `(a, b)`
    /// and the one outside it.
    fn apexes(&self, d: Diagonal) -> (usize, usize) {
        let (a, b) = d.endpoints();
        let inner = (a + 1..b)
            .find(|&c| self.is_edge(a, c) && self.is_edge(c, b))
            .expect("triangulation has a triangle on each side of a diagonal");
        let outer = (b + 1..a + self.m)
            .map(|c| c % self.m)
            .find(|&c| self.is_edge(a, c) && self.is_edge(c, b))
            .expect("triangulation has a triangle on each side of a diagonal");
        (inner, outer)
    }

    /// Replaces `d` by the other diagonal of its quadrilateral.
    pub fn flip(&self, d: Diagonal) -> Result<(Triangulation, Diagonal)> {
        if !self.contains(d) {
            return Err(Error::DiagonalNotInTriangulation(d));
        }
        let (c, e) = self.apexes(d);
        let new = Diagonal::chord(c, e);
        let mut ds: Vec<Diagonal> = self.diagonals.iter().copied().filter(|&x| x != d).collect();
        ds.push(new);
        ds.sort_unstable();
        Ok((
            Triangulation {
                m: self.m,
                diagonals: ds,
            },
            new,
        ))
    }

    /// The flip partner of every diagonal, in diagonal order.
    pub fn flip_partners(&self) -> Vec<(Diagonal, Diagonal)> {
        self.diagonals
            .iter()
            .map(|&d| {
                let (c, e) = self.apexes(d);
                (d, Diagonal::chord(c, e))
            })
            .collect()
    }

    /// The quadrilateral `p < q < r < s` in which `d` can be flipped; `d` is
    /// either `pr` or `qs`.
    pub fn flip_quadrilateral(&self, d: Diagonal) -> Result<[usize; 4]> {
        if !self.contains(d) {
            return Err(Error::DiagonalNotInTriangulation(d));
        }
        let (c, e) = self.apexes(d);
        let mut q = [d.a(), d.b(), c, e];
        q.sort_unstable();
        Ok(q)
    }

    pub fn dual_tree(&self) -> DualTree {
        let nodes = self.triangles();
        let mut edges = Vec::with_capacity(self.diagonals.len());
        for &d in &self.diagonals {
            let ends: Vec<usize> = nodes
                .iter()
                .enumerate()
                .filter(|(_, t)| t.contains(&d.a()) && t.contains(&d.b()))
                .map(|(i, _)| i)
                .collect();
            debug_assert_eq!(ends.len(), 2);
            edges.push((ends[0], ends[1], d));
        }
        DualTree { nodes, edges }
    }

    pub fn apply(&self, g: Dihedral) -> Triangulation {
        let mut ds: Vec<Diagonal> = self
            .diagonals
            .iter()
            .map(|&d| g.apply_diagonal(d, self.m))
            .collect();
        ds.sort_unstable();
        Triangulation {
            m: self.m,
            diagonals: ds,
        }
    }

    /// Lexicographically least image under the dihedral group of order `2m`.
    pub fn canonical(&self) -> Triangulation {
        Dihedral::elements(self.m)
            .map(|g| self.apply(g))
            .min()
            .expect("dihedral group is nonempty")
    }

    /// True iff no dihedral image is lexicographically smaller.
    pub fn is_canonical(&self) -> bool {
        let mut buf = Vec::with_capacity(self.diagonals.len());
        Dihedral::elements(self.m).all(|g| {
            buf.clear();
            buf.extend(self.diagonals.iter().map(|&d| g.apply_diagonal(d, self.m)));
            buf.sort_unstable();
            buf.as_slice() >= self.diagonals.as_slice()
        })
    }
}

pub fn canonical_triangulation(t: &Triangulation) -> Triangulation {
    t.canonical()
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.m)?;
        for (i, d) in self.diagonals.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    /// Parses `"m: a-b, c-d, ..."`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            msg: format!("{msg}: {s:?}"),
        };
        let (m, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let m: usize = m.trim().parse().map_err(|_| bad("bad polygon size"))?;
        let mut ds = Vec::new();
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = tok
                .split_once('-')
                .ok_or_else(|| bad("diagonal must be a-b"))?;
            let a: usize = a.trim().parse().map_err(|_| bad("bad vertex"))?;
            let b: usize = b.trim().parse().map_err(|_| bad("bad vertex"))?;
            ds.push(Diagonal::new(a, b, m)?);
        }
        Triangulation::new(m, ds)
    }
}

/// Every triangulation of the m-gon, sorted lexicographically by diagonal list.
pub fn enumerate_triangulations(m: usize) -> Result<Vec<Triangulation>> {
    if m < 3 {
        return Err(Error::PolygonTooSmall { m, min: 3 });
    }
    // shapes[k]: triangulations of the (k+1)-gon 0..=k with base edge 0-k
    let mut shapes: Vec<Vec<Vec<Diagonal>>> = vec![vec![vec![]], vec![vec![]]];
    for k in 2..m {
        let mut out = Vec::new();
        for apex in 1..k {
            let left = &shapes[apex];
            let right = &shapes[k - apex];
            for l in left {
                for r in right {
                    let mut ds = Vec::with_capacity(k - 2);
                    if apex >= 2 {
                        ds.push(Diagonal::chord(0, apex));
                    }
                    if k - apex >= 2 {
                        ds.push(Diagonal::chord(apex, k));
                    }
                    ds.extend(l.iter().copied());
                    ds.extend(
                        r.iter()
                            .map(|d| Diagonal::chord(d.a() + apex, d.b() + apex)),
                    );
                    out.push(ds);
                }
            }
        }
        shapes.push(out);
    }
    let mut all: Vec<Triangulation> = shapes
        .pop()
        .expect("shape table is nonempty")
        .into_par_iter()
        .map(|mut ds| {
            ds.sort_unstable();
            Triangulation { m, diagonals: ds }
        })
        .collect();
    all.par_sort_unstable();
    Ok(all)
}

/// Number of triangulations up to rotation and reflection, by enumeration.
pub fn count_dihedral_classes(m: usize) -> Result<usize> {
    Ok(enumerate_triangulations(m)?
        .par_iter()
        .filter(|t| t.is_canonical())
        .count())
}

/// Rotation or reflection `v -> (±v + shift) mod m`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Dihedral {
    pub reflect: bool,
    pub shift: usize,
}

impl Dihedral {
    pub const IDENTITY: Dihedral = Dihedral {
        reflect: false,
        shift: 0,
    };

    /// All `2m` elements, rotations first.
    pub fn elements(m: usize) -> impl Iterator<Item = Dihedral> {
        [false, true]
            .into_iter()
            .flat_map(move |reflect| (0..m).map(move |shift| Dihedral { reflect, shift }))
    }

    pub fn apply_vertex(self, v: usize, m: usize) -> usize {
        if self.reflect {
            (self.shift + m - v % m) % m
        } else {
            (v + self.shift) % m
        }
    }

    pub fn apply_diagonal(self, d: Diagonal, m: usize) -> Diagonal {
        Diagonal::chord(self.apply_vertex(d.a(), m), self.apply_vertex(d.b(), m))
    }

    pub fn inverse(self, m: usize) -> Dihedral {
        if self.reflect {
            self
        } else {
            Dihedral {
                reflect: false,
                shift: (m - self.shift) % m,
            }
        }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reflect {
            write!(f, "v -> {} - v", self.shift)
        } else {
            write!(f, "v -> v + {}", self.shift)
        }
    }
}

/// Crossing-preserving permutations of the diagonals (as index maps into
/// [`all_diagonals`]). Found by exhaustive backtracking for `m <= 9`, by
/// dihedral generation beyond. Fails unless the group has order `2m`.
pub fn diagonal_automorphism_group(m: usize) -> Result<Vec<Vec<usize>>> {
    if m < 5 {
        return Err(Error::PolygonTooSmall { m, min: 5 });
    }
    let diags = all_diagonals(m);
    let group = if m <= 9 {
        crossing_automorphisms(&diags)
    } else {
        let index: BTreeMap<Diagonal, usize> =
            diags.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        Dihedral::elements(m)
            .map(|g| {
                diags
                    .iter()
                    .map(|&d| index[&g.apply_diagonal(d, m)])
                    .collect()
            })
            .collect()
    };
    if group.len() != 2 * m {
        return Err(Error::Verification(format!(
            "automorphism group of the {m}-gon diagonals has order {}, expected {}",
            group.len(),
            2 * m
        )));
    }
    Ok(group)
}

fn crossing_automorphisms(diags: &[Diagonal]) -> Vec<Vec<usize>> {
    let k = diags.len();
    let cross: Vec<Vec<bool>> = diags
        .iter()
        .map(|d| diags.iter().map(|e| d.crosses(*e)).collect())
        .collect();
    // Assign in BFS order of the crossing graph so every step is constrained.
    let mut order = Vec::with_capacity(k);
    let mut seen = vec![false; k];
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in 0..k {
                if cross[u][v] && !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    let degree: Vec<usize> = cross
        .iter()
        .map(|r| r.iter().filter(|&&c| c).count())
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn search(
        depth: usize,
        order: &[usize],
        cross: &[Vec<bool>],
        degree: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(image.to_vec());
            return;
        }
        let u = order[depth];
        for cand in 0..order.len() {
            if used[cand] || degree[cand] != degree[u] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&w| cross[u][w] == cross[cand][image[w]]);
            if !consistent {
                continue;
            }
            image[u] = cand;
            used[cand] = true;
            search(depth + 1, order, cross, degree, image, used, out);
            used[cand] = false;
            image[u] = usize::MAX;
        }
    }
    search(0, &order, &cross, &degree, &mut image, &mut used, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A word over `{+, -}`; used both for the sign vectors of the signed polygon
/// construction and for turn sequences of path triangulations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignSequence(Vec<Sign>);

impl SignSequence {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignSequence(signs)
    }

    pub fn all_minus(len: usize) -> Self {
        SignSequence(vec![Sign::Minus; len])
    }

    /// `+ - + - ...` of the given length.
    pub fn alternating(len: usize) -> Self {
        SignSequence(
            (0..len)
                .map(|i| if i % 2 == 0 { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    /// All `2^len` words, in lexicographic order.
    pub fn all(len: usize) -> impl Iterator<Item = SignSequence> {
        (0u64..1 << len).map(move |bits| {
            SignSequence(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            )
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn negated(&self) -> SignSequence {
        SignSequence(self.0.iter().map(|s| s.negate()).collect())
    }

    pub fn reversed(&self) -> SignSequence {
        SignSequence(self.0.iter().rev().copied().collect())
    }

    pub fn is_alternating(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for SignSequence {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SignSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(Error::Parse {
                    line: 1,
                    msg: format!("sign must be '+' or '-', got {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignSequence)
    }
}

/// The path triangulation `T_c` of the `(len(c) + 4)`-gon.
///
/// The dual path starts at the ear on vertex 0 and crosses `1-(m-1)` first.
/// Standing on the current diagonal `l-r` and looking away from vertex 0, a
/// `+` turns right (next vertex `r - 1`) and a `-` turns left (next vertex
/// `l + 1`). The diagonals in path order are returned alongside.
pub fn path_triangulation_from_signs(c: &SignSequence) -> (Triangulation, Vec<Diagonal>) {
    let m = c.len() + 4;
    let (mut l, mut r) = (1, m - 1);
    let mut path = vec![Diagonal::chord(l, r)];
    for s in c.signs() {
        match s {
            Sign::Plus => r -= 1,
            Sign::Minus => l += 1,
        }
        path.push(Diagonal::chord(l, r));
    }
    let mut ds = path.clone();
    ds.sort_unstable();
    (Triangulation::from_sorted_unchecked(m, ds), path)
}

/// The snake (zig-zag) triangulation of the `(n+3)`-gon, `n >= 1`.
pub fn snake_triangulation(n: usize) -> Triangulation {
    path_triangulation_from_signs(&SignSequence::alternating(n - 1)).0
}

/// Dual graph of a triangulation: one node per triangle, one edge per diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTree {
    pub nodes: Vec<[usize; 3]>,
    pub edges: Vec<(usize, usize, Diagonal)>,
}

impl DualTree {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_path(&self) -> bool {
        self.degrees().iter().all(|&d| d <= 2)
    }

    fn adjacency(&self) -> Vec<Vec<(usize, Diagonal)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(u, v, d) in &self.edges {
            adj[u].push((v, d));
            adj[v].push((u, d));
        }
        adj
    }

    /// For a path, its edge labels from one end to the other, starting at the
    /// end whose edge label is smaller.
    pub fn path_order(&self) -> Option<Vec<Diagonal>> {
        if !self.is_path() {
            return None;
        }
        let adj = self.adjacency();
        if self.edges.is_empty() {
            return Some(Vec::new());
        }
        let start = (0..adj.len())
            .filter(|&u| adj[u].len() == 1)
            .min_by_key(|&u| adj[u][0].1)
            .expect("a path with an edge has a leaf");
        let mut order = Vec::with_capacity(self.edges.len());
        let (mut prev, mut cur) = (usize::MAX, start);
        while let Some(&(next, d)) = adj[cur].iter().find(|(v, _)| *v != prev) {
            order.push(d);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    fn centers(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut alive = self.nodes.len();
        let mut layer: Vec<usize> = (0..alive).filter(|&u| deg[u] <= 1).collect();
        let mut removed = vec![false; alive];
        while alive > 2 {
            let mut next = Vec::new();
            for &u in &layer {
                removed[u] = true;
                alive -= 1;
                for &(v, _) in &adj[u] {
                    if !removed[v] {
                        deg[v] -= 1;
                        if deg[v] == 1 {
                            next.push(v);
                        }
                    }
                }
            }
            layer = next;
        }
        (0..self.nodes.len()).filter(|&u| !removed[u]).collect()
    }

    fn rooted_code(adj: &[Vec<(usize, Diagonal)>], u: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[u]
            .iter()
            .filter(|(v, _)| *v != parent)
            .map(|&(v, _)| Self::rooted_code(adj, v, u))
            .collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }

    /// Isomorphism-invariant code of the unlabeled tree.
    pub fn canonical_code(&self) -> String {
        let adj = self.adjacency();
        self.centers()
            .into_iter()
            .map(|c| Self::rooted_code(&adj, c, usize::MAX))
            .min()
            .unwrap_or_default()
    }

    /// An explicit isomorphism onto `other`, as the induced bijection on edge
    /// labels (diagonals).
    pub fn edge_isomorphism(&self, other: &DualTree) -> Option<BTreeMap<Diagonal, Diagonal>> {
        if self.nodes.len() != other.nodes.len() {
            return None;
        }
        let (a1, a2) = (self.adjacency(), other.adjacency());
        for r1 in self.centers() {
            for r2 in other.centers() {
                if Self::rooted_code(&a1, r1, usize::MAX) != Self::rooted_code(&a2, r2, usize::MAX)
                {
                    continue;
                }
                let mut map = BTreeMap::new();
                Self::match_subtrees(&a1, &a2, r1, usize::MAX, r2, usize::MAX, &mut map);
                return Some(map);
            }
        }
        None
    }

    fn match_subtrees(
        a1: &[Vec<(usize, Diagonal)>],
        a2: &[Vec<(usize, Diagonal)>],
        u1: usize,
        p1: usize,
        u2: usize,
        p2: usize,
        map: &mut BTreeMap<Diagonal, Diagonal>,
    ) {
        let coded = |adj: &[Vec<(usize, Diagonal)>], u: usize, p: usize| {
            let mut kids: Vec<(String, usize, Diagonal)> = adj[u]
                .iter()
                .filter(|(v, _)| *v != p)
                .map(|&(v, d)| (Self::rooted_code(adj, v, u), v, d))
                .collect();
            kids.sort();
            kids
        };
        let k1 = coded(a1, u1, p1);
        let k2 = coded(a2, u2, p2);
        for ((c1, v1, d1), (c2, v2, d2)) in k1.into_iter().zip(k2) {
            debug_assert_eq!(c1, c2);
            map.insert(d1, d2);
            Self::match_subtrees(a1, a2, v1, u1, v2, u2, map);
        }
    }
}

/// Set of all diagonals crossing `d` in `ds`.
pub fn crossed_by(d: Diagonal, ds: &[Diagonal]) -> BTreeSet<Diagonal> {
    ds.iter().copied().filter(|e| d.crosses(*e)).collect()
}
