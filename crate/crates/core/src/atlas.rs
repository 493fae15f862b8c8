//! Classification across families: equivalence classes, class counts and
//! their closed forms, and the cross-family isomorphism matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{ratio, Rat};
use crate::genperm::{post_hrep, rss_hrep, MinkowskiWeights, RssParams};
use crate::hl::{hl_embed, hl_hrep, sign_canonical};
use crate::polygon::{
    catalan, count_dihedral_classes, enumerate_triangulations, snake_triangulation, SignSequence,
    Triangulation,
};
use crate::realization::{
    fans_linearly_isomorphic, normal_fan, parallel_pairs, FanIsomorphism, LabeledFan, PreparedFan,
};
use crate::santos::{santos_fan, SeedFrame};
use crate::secondary::{gkz_quotient_fan, PlanarConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Gkz,
    Post,
    Rss,
    Hl,
    Santos,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Gkz,
        Family::Post,
        Family::Rss,
        Family::Hl,
        Family::Santos,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Gkz => "gkz",
            Family::Post => "post",
            Family::Rss => "rss",
            Family::Hl => "hl",
            Family::Santos => "santos",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| {
                Error::Invalid(format!("unknown family {s:?} (gkz, post, rss, hl, santos)"))
            })
    }
}

/// The parameter naming a class: its minimal member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum ClassParam {
    /// Fixed construction data (the parabola polygon, `a = 1`, `g = g0`).
    Fixed(String),
    Signs(SignSequence),
    Seed(Triangulation),
}

impl fmt::Display for ClassParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassParam::Fixed(s) => f.write_str(s),
            ClassParam::Signs(s) if s.is_empty() => f.write_str("()"),
            ClassParam::Signs(s) => write!(f, "{s}"),
            ClassParam::Seed(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivClass {
    pub family: Family,
    pub param: ClassParam,
    /// Number of parameters in the class.
    pub size: usize,
    pub fan: LabeledFan,
}

impl EquivClass {
    pub fn label(&self) -> String {
        format!("{}:{}", self.family, self.param)
    }
}

pub fn hl_fan(sigma: &SignSequence) -> Result<LabeledFan> {
    normal_fan(&hl_hrep(&hl_embed(sigma)))
}

pub fn family_fan(family: Family, param: &ClassParam, n: usize) -> Result<LabeledFan> {
    match (family, param) {
        (Family::Gkz, _) => gkz_quotient_fan(&PlanarConfig::parabola(n + 3)?),
        (Family::Post, _) => normal_fan(&post_hrep(&MinkowskiWeights::ones(n))),
        (Family::Rss, _) => normal_fan(&rss_hrep(&RssParams::g0(n))?),
        (Family::Hl, ClassParam::Signs(s)) => hl_fan(s),
        (Family::Santos, ClassParam::Seed(t)) => Ok(santos_fan(&SeedFrame::new(t.clone()))),
        _ => Err(Error::Invalid(format!(
            "parameter {param} does not belong to family {family}"
        ))),
    }
}

/// Every parameter of the family at dimension `n` (one for the fixed families).
pub fn family_members(family: Family, n: usize) -> Result<Vec<ClassParam>> {
    if n == 0 {
        return Err(Error::PolygonTooSmall { m: 3, min: 4 });
    }
    Ok(match family {
        Family::Gkz => vec![ClassParam::Fixed("parabola".into())],
        Family::Post => vec![ClassParam::Fixed("a=1".into())],
        Family::Rss => vec![ClassParam::Fixed("g0".into())],
        Family::Hl => SignSequence::all(n - 1).map(ClassParam::Signs).collect(),
        Family::Santos => enumerate_triangulations(n + 3)?
            .into_iter()
            .map(ClassParam::Seed)
            .collect(),
    })
}

/// Canonical form: `sign_canonical` for signs, the dihedral minimum for seeds.
pub fn canonical_param(p: &ClassParam) -> ClassParam {
    match p {
        ClassParam::Fixed(s) => ClassParam::Fixed(s.clone()),
        ClassParam::Signs(s) => ClassParam::Signs(sign_canonical(s)),
        ClassParam::Seed(t) => ClassParam::Seed(t.canonical()),
    }
}

/// Canonical-form classes with their representative fans.
pub fn classify_family(family: Family, n: usize) -> Result<Vec<EquivClass>> {
    let mut sizes: BTreeMap<ClassParam, usize> = BTreeMap::new();
    for p in family_members(family, n)? {
        *sizes.entry(canonical_param(&p)).or_default() += 1;
    }
    sizes
        .into_par_iter()
        .map(|(param, size)| {
            let fan = family_fan(family, &param, n)?;
            Ok(EquivClass {
                family,
                param,
                size,
                fan,
            })
        })
        .collect()
}

/// Checks, member by member, that a member's fan is linearly isomorphic to a
/// class representative exactly when the member lies in that class. Returns
/// the mismatches as `(member, representative)`.
pub fn cross_validate_family(family: Family, n: usize) -> Result<Vec<(String, String)>> {
    let classes = classify_family(family, n)?;
    let reps = classes
        .iter()
        .map(|c| PreparedFan::new(&c.fan))
        .collect::<Result<Vec<_>>>()?;
    let members = family_members(family, n)?;
    let per_member = members
        .par_iter()
        .map(|p| {
            let fan = PreparedFan::new(&family_fan(family, p, n)?)?;
            let canon = canonical_param(p);
            let mut bad = Vec::new();
            for (c, rep) in classes.iter().zip(&reps) {
                let iso = fans_linearly_isomorphic(&fan, rep).is_some();
                if iso != (c.param == canon) {
                    bad.push((p.to_string(), c.param.to_string()));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_member.into_iter().flatten().collect())
}

/// Class counts by enumeration: sign sequences up to reversal and negation,
/// and triangulations of the `(n+3)`-gon up to rotation and reflection.
pub fn enumerated_counts(n: usize) -> Result<(u64, u64)> {
    let type_i = if n == 0 {
        1
    } else {
        SignSequence::all(n - 1)
            .map(|s| sign_canonical(&s))
            .collect::<BTreeSet<_>>()
            .len() as u64
    };
    let type_ii = count_dihedral_classes(n + 3)? as u64;
    Ok((type_i, type_ii))
}

fn catalan_or_zero(x: &Rat) -> Rat {
    if x.is_integer() {
        let k: usize = x.to_integer().try_into().expect("small index");
        Rat::from_integer(catalan(k).into())
    } else {
        Rat::zero()
    }
}

/// Closed forms: `2^(n-3) + 2^floor((n-3)/2)` for type I (the three values
/// below `n = 3` are 1), and the Motzkin-type sum of Catalan numbers for
/// type II.
pub fn count_formulas(n: usize) -> (u64, u64) {
    let type_i = if n < 3 {
        1
    } else {
        (1u64 << (n - 3)) + (1u64 << ((n - 3) / 2))
    };
    let n_r = Rat::from_integer((n as i64).into());
    let one = ratio(1, 1);
    let terms = [
        (ratio(1, 2 * (n as i64 + 3)), n_r.clone() + &one),
        (ratio(1, 4), (n_r.clone() + &one) / ratio(2, 1)),
        (ratio(1, 2), Rat::from_integer(((n as i64 + 1) / 2).into())),
        (ratio(1, 3), n_r / ratio(3, 1)),
    ];
    let sum: Rat = terms.iter().map(|(c, k)| c * catalan_or_zero(k)).sum();
    assert!(sum.is_integer(), "type II count must be an integer");
    let type_ii = sum.to_integer().try_into().expect("fits in u64");
    (type_i, type_ii)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub i: usize,
    pub j: usize,
    pub iso: FanIsomorphism,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtlasReport {
    pub n: usize,
    pub class_counts: BTreeMap<Family, usize>,
    pub labels: Vec<String>,
    pub families: Vec<Family>,
    pub parallel_counts: Vec<usize>,
    /// `matrix[i][j]`: class `i` and class `j` have linearly isomorphic fans.
    pub matrix: Vec<Vec<bool>>,
    pub witnesses: Vec<Witness>,
    /// GKZ entries decided by the parallel-pair count rather than a search.
    pub gkz_by_parallel_count: bool,
    /// Isomorphic (hl, santos) pairs, by label.
    pub common_pairs: Vec<(String, String)>,
    /// Distinct fans among the hl and santos classes.
    pub union_size: usize,
    pub expected_pair: (String, String),
    pub single_common_class: bool,
}

/// All classes of every family at dimension `n`, compared pairwise. GKZ pairs
/// are searched only for `n <= 3`; above that the parallel-pair count (0 for
/// GKZ, `n` for the others) already separates them.
pub fn intersection_report(n: usize) -> Result<AtlasReport> {
    if n < 2 {
        return Err(Error::Invalid("the atlas needs n >= 2".into()));
    }
    let mut classes = Vec::new();
    let mut class_counts = BTreeMap::new();
    for family in Family::ALL {
        let cs = classify_family(family, n)?;
        class_counts.insert(family, cs.len());
        classes.extend(cs);
    }
    let prepared = classes
        .par_iter()
        .map(|c| PreparedFan::new(&c.fan))
        .collect::<Result<Vec<_>>>()?;
    let parallel_counts: Vec<usize> = classes
        .iter()
        .map(|c| parallel_pairs(&c.fan).len())
        .collect();
    let k = classes.len();
    let gkz_by_parallel_count = n > 3;
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let results: Vec<(usize, usize, Option<FanIsomorphism>)> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let gkz = classes[i].family == Family::Gkz || classes[j].family == Family::Gkz;
            let iso = if gkz && gkz_by_parallel_count && parallel_counts[i] != parallel_counts[j] {
                None
            } else {
                fans_linearly_isomorphic(&prepared[i], &prepared[j])
            };
            (i, j, iso)
        })
        .collect();
    let mut matrix = vec![vec![false; k]; k];
    let mut witnesses = Vec::new();
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = true;
    }
    for (i, j, iso) in results {
        if let Some(iso) = iso {
            matrix[i][j] = true;
            matrix[j][i] = true;
            witnesses.push(Witness { i, j, iso });
        }
    }

    let labels: Vec<String> = classes.iter().map(EquivClass::label).collect();
    let of = |f: Family| -> Vec<usize> { (0..k).filter(|&i| classes[i].family == f).collect() };
    let (hl, santos) = (of(Family::Hl), of(Family::Santos));
    let mut common_pairs = Vec::new();
    for &i in &hl {
        for &j in &santos {
            if matrix[i][j] {
                common_pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let union_size = hl.len() + santos.len() - common_pairs.len();
    let expected_pair = (
        format!(
            "hl:{}",
            ClassParam::Signs(sign_canonical(&SignSequence::alternating(n - 1)))
        ),
        format!("santos:{}", snake_triangulation(n).canonical()),
    );
    let gkz_isolated = of(Family::Gkz)
        .iter()
        .all(|&g| (0..k).all(|j| j == g || !matrix[g][j]));
    let single_common_class = common_pairs == [expected_pair.clone()] && gkz_isolated;
    Ok(AtlasReport {
        n,
        class_counts,
        labels,
        families: classes.iter().map(|c| c.family).collect(),
        parallel_counts,
        matrix,
        witnesses,
        gkz_by_parallel_count,
        common_pairs,
        union_size,
        expected_pair,
        single_common_class,
    })
}
