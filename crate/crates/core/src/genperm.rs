//! Generalized permutahedra: the Minkowski-sum polytopes `Post(a)` (Loday's
//! realization for `a ≡ 1`), the right-hand-side family `RSS(g)` (Buchstaber's
//! for `g_{i,j} = i(i-j)`) and the affine map between them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactlin::{rat, ratio, QVector, Rat};
use crate::polygon::{all_diagonals, Diagonal};
use crate::realization::{Equality, Facet, HPolytope};

/// Positive coefficients `a_{i,j}`, `1 ≤ i ≤ j ≤ n+1`, of the simplices
/// `Δ_{[i,j]}` in the Minkowski sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiWeights {
    n: usize,
    a: BTreeMap<(usize, usize), Rat>,
}

impl MinkowskiWeights {
    pub fn new(n: usize, a: BTreeMap<(usize, usize), Rat>) -> Result<Self> {
        for i in 1..=n + 1 {
            for j in i..=n + 1 {
                match a.get(&(i, j)) {
                    Some(v) if v.is_positive() => {}
                    Some(v) => {
                        return Err(Error::Invalid(format!(
                            "weight a_{{{i},{j}}} = {v} is not positive"
                        )))
                    }
                    None => return Err(Error::Invalid(format!("missing weight a_{{{i},{j}}}"))),
                }
            }
        }
        if a.len() != (n + 1) * (n + 2) / 2 {
            return Err(Error::Invalid(format!(
                "weights outside 1 <= i <= j <= {}",
                n + 1
            )));
        }
        Ok(MinkowskiWeights { n, a })
    }

    pub fn ones(n: usize) -> Self {
        let a = (1..=n + 1)
            .flat_map(|i| (i..=n + 1).map(move |j| ((i, j), Rat::one())))
            .collect();
        MinkowskiWeights { n, a }
    }

    /// Weights `k/4` with `k` uniform in `1..=40`.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let a = (1..=n + 1)
            .flat_map(|i| (i..=n + 1).map(move |j| (i, j)))
            .map(|ij| (ij, ratio(rng.gen_range(1..=40), 4)))
            .collect();
        MinkowskiWeights { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[&(i, j)]
    }

    /// `f_{p,q} = Σ_{p<i≤j<q} a_{i,j}`.
    pub fn f(&self, p: usize, q: usize) -> Rat {
        let mut s = Rat::zero();
        for i in p + 1..q {
            for j in i..q {
                s += &self.a[&(i, j)];
            }
        }
        s
    }
}

/// `Post(a)` in `R^{n+1}`: `Σ_{p<i<q} x_i ≥ f_{p,q}` for every diagonal
/// `(p, q)` and `Σ x_i = f_{0,n+2}`.
pub fn post_hrep(a: &MinkowskiWeights) -> HPolytope {
    let n = a.n;
    let m = n + 3;
    let facets = all_diagonals(m)
        .into_iter()
        .map(|d| {
            let normal = (1..=n + 1)
                .map(|i| {
                    if d.a() < i && i < d.b() {
                        -Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            Facet {
                label: d,
                normal,
                rhs: -a.f(d.a(), d.b()),
            }
        })
        .collect();
    let eq = Equality {
        normal: QVector::new(vec![Rat::one(); n + 1]),
        rhs: a.f(0, n + 2),
    };
    HPolytope::new(n + 1, m, facets, vec![eq]).expect("Post(a) rows are well formed")
}

/// Right-hand sides `g_{i,j}`, `0 ≤ i < j ≤ n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RssParams {
    n: usize,
    g: BTreeMap<(usize, usize), Rat>,
}

impl RssParams {
    pub fn new(n: usize, g: BTreeMap<(usize, usize), Rat>) -> Result<Self> {
        for i in 0..=n + 1 {
            for j in i + 1..=n + 1 {
                if !g.contains_key(&(i, j)) {
                    return Err(Error::InvalidRssParams(format!("missing g_{{{i},{j}}}")));
                }
            }
        }
        if g.len() != (n + 1) * (n + 2) / 2 {
            return Err(Error::InvalidRssParams(format!(
                "entries outside 0 <= i < j <= {}",
                n + 1
            )));
        }
        Ok(RssParams { n, g })
    }

    /// Buchstaber's parameters `g_{i,j} = i(i-j)`.
    pub fn g0(n: usize) -> Self {
        let g = (0..=n + 1)
            .flat_map(|i| {
                (i + 1..=n + 1).map(move |j| ((i, j), rat((i as i64) * (i as i64 - j as i64))))
            })
            .collect();
        RssParams { n, g }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.g[&(i, j)]
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize), Rat> {
        &self.g
    }

    /// The first violated strict inequality, if any.
    pub fn first_violation(&self) -> Option<String> {
        let top = self.n + 1;
        let g = |i: usize, j: usize| &self.g[&(i, j)];
        for i in 0..=top {
            for j in i + 1..=top {
                for k in j..=top {
                    for l in k + 1..=top {
                        // g_{j,k} with j = k is absent; the family needs j < k there
                        if j == k {
                            continue;
                        }
                        if g(i, l) + g(j, k) <= g(i, k) + g(j, l) {
                            return Some(format!(
                                "g_{{{i},{l}}} + g_{{{j},{k}}} > g_{{{i},{k}}} + g_{{{j},{l}}} fails"
                            ));
                        }
                    }
                }
            }
        }
        for i in 0..=top {
            for k in i + 1..=top {
                for l in k + 1..=top {
                    if g(i, l) <= &(g(i, k) + g(k, l)) {
                        return Some(format!(
                            "g_{{{i},{l}}} > g_{{{i},{k}}} + g_{{{k},{l}}} fails"
                        ));
                    }
                }
            }
        }
        None
    }
}

pub fn rss_validate(g: &RssParams) -> bool {
    g.first_violation().is_none()
}

/// `RSS(g)` in the coordinates `y_1..y_n`, after substituting `y_0 = 0` and
/// `y_{n+1} = g_{0,n+1}`. The row `y_j - y_i ≥ g_{i,j}` labels `(i, j+1)`.
pub fn rss_hrep(g: &RssParams) -> Result<HPolytope> {
    if let Some(v) = g.first_violation() {
        return Err(Error::InvalidRssParams(v));
    }
    let n = g.n;
    let m = n + 3;
    let top_value = g.get(0, n + 1).clone();
    let mut facets = Vec::new();
    for i in 0..=n + 1 {
        for j in i + 1..=n + 1 {
            if i == 0 && j == n + 1 {
                continue;
            }
            // -(y_j - y_i) ≤ -g_{i,j}, with constants moved to the right
            let mut normal = vec![Rat::zero(); n];
            let mut rhs = -g.get(i, j).clone();
            if (1..=n).contains(&j) {
                normal[j - 1] = -Rat::one();
            } else if j == n + 1 {
                rhs += &top_value;
            }
            if (1..=n).contains(&i) {
                normal[i - 1] = Rat::one();
            }
            let label = Diagonal::new(i, j + 1, m)?;
            facets.push(Facet {
                label,
                normal: QVector::new(normal),
                rhs,
            });
        }
    }
    HPolytope::new(n, m, facets, vec![])
}

/// `y_k = Σ_{i ≤ k} (x_i - i)` for `k = 1..n`.
pub fn phi_map(x: &QVector) -> QVector {
    let n = x.dim().saturating_sub(1);
    let mut acc = Rat::zero();
    (0..n)
        .map(|k| {
            acc += &x[k] - rat(k as i64 + 1);
            acc.clone()
        })
        .collect()
}

/// The parameters with `φ(Post(a)) = RSS(g)`:
/// `g_{i,j} = f_{i,j+1}(a) - (i+j+1)(j-i)/2`.
pub fn phi_transport(a: &MinkowskiWeights) -> RssParams {
    let n = a.n;
    let g = (0..=n + 1)
        .flat_map(|i| (i + 1..=n + 1).map(move |j| (i, j)))
        .map(|(i, j)| {
            let shift = ratio(((i + j + 1) * (j - i)) as i64, 2);
            ((i, j), a.f(i, j + 1) - shift)
        })
        .collect();
    RssParams { n, g }
}

/// The diagonal pairs `{(0, i+1), (i, n+2)}`, `1 ≤ i ≤ n`, carried by the
/// parallel facets of both families.
pub fn expected_parallel_pairs(n: usize) -> BTreeSet<(Diagonal, Diagonal)> {
    (1..=n)
        .map(|i| {
            let d = Diagonal::chord(0, i + 1);
            let e = Diagonal::chord(i, n + 2);
            if d < e {
                (d, e)
            } else {
                (e, d)
            }
        })
        .collect()
}
