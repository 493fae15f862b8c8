//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use assoc_core::atlas::{
    count_formulas, cross_validate_family, enumerated_counts, intersection_report, Family,
};
use assoc_core::exactlin::{ratio, QVector};
use assoc_core::genperm::{
    expected_parallel_pairs, phi_map, post_hrep, rss_hrep, MinkowskiWeights, RssParams,
};
use assoc_core::hl::{hl_embed, hl_hrep, hl_parallel_pairs};
use assoc_core::polygon::{
    all_diagonals, diagonal_automorphism_group, enumerate_triangulations, Diagonal, SignSequence,
    Triangulation,
};
use assoc_core::realization::{
    normal_fan, parallel_pairs, sample_completeness, verify_realization,
};
use assoc_core::santos::{
    b_set, canonical_seeds, dual_tree_normal_equiv, flip_dependence, normal_vector_relabeling,
    permute_coordinates, quadrilaterals, santos_fan, santos_hrep_with, santos_parallel_pairs,
    santos_vectors, santos_weights, vector_set, SeedFrame,
};
use assoc_core::secondary::{gkz_quotient_fan, pair_has_affine_combination, PlanarConfig};

type Outcome = std::result::Result<String, String>;

const TABLE_I: [u64; 13] = [1, 1, 1, 2, 3, 6, 10, 20, 36, 72, 136, 272, 528];
const TABLE_II: [u64; 13] = [1, 1, 1, 3, 4, 12, 27, 82, 228, 733, 2282, 7528, 24834];

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn table_counts() -> std::result::Result<Vec<(u64, u64)>, String> {
    (0..=12)
        .map(|n| enumerated_counts(n).map_err(err))
        .collect()
}

fn c1_table(counts: &[(u64, u64)]) -> Outcome {
    for (n, &(i, ii)) in counts.iter().enumerate() {
        ensure(
            i == TABLE_I[n],
            format!("type I n={n}: {i} != {}", TABLE_I[n]),
        )?;
        ensure(
            ii == TABLE_II[n],
            format!("type II n={n}: {ii} != {}", TABLE_II[n]),
        )?;
    }
    Ok("type I and type II rows match for n = 0..12".into())
}

fn c2_formulas(counts: &[(u64, u64)]) -> Outcome {
    for (n, &c) in counts.iter().enumerate() {
        ensure(
            count_formulas(n) == c,
            format!(
                "n={n}: formula {:?} vs enumeration {c:?}",
                count_formulas(n)
            ),
        )?;
    }
    let sum = ratio(14, 12) + ratio(1, 2) + ratio(1, 1) + ratio(1, 3);
    ensure(
        sum == ratio(3, 1) && count_formulas(3).1 == 3,
        "n=3 Motzkin-type sum is not 3",
    )?;
    Ok("closed forms equal enumeration for n <= 12; 14/12+1/2+1+1/3 = 3".into())
}

fn c3_intersection() -> Outcome {
    let mut notes = Vec::new();
    for n in 3..=5 {
        let r = intersection_report(n).map_err(err)?;
        ensure(
            r.single_common_class,
            format!(
                "n={n}: common pairs {:?}, expected {:?}",
                r.common_pairs, r.expected_pair
            ),
        )?;
        if n == 3 {
            ensure(r.union_size == 4, format!("n=3 union {}", r.union_size))?;
        }
        if n == 4 {
            let (i, ii) = (r.class_counts[&Family::Hl], r.class_counts[&Family::Santos]);
            ensure(
                (i, ii, r.union_size) == (3, 4, 6),
                format!("n=4 counts {i}, {ii}, union {}", r.union_size),
            )?;
        }
        notes.push(format!(
            "n={n}: {} classes, union {}",
            r.labels.len(),
            r.union_size
        ));
    }
    Ok(format!(
        "one common class, (alternating, snake); {}",
        notes.join("; ")
    ))
}

fn vertex_set(
    h: &assoc_core::realization::HPolytope,
) -> std::result::Result<BTreeSet<QVector>, String> {
    let r = verify_realization(h);
    ensure(r.is_simple_associahedron, r.failures.join("; "))?;
    Ok(r.vertex_map.into_values().collect())
}

fn c4_vertex_fixtures() -> Outcome {
    let post = vertex_set(&post_hrep(&MinkowskiWeights::ones(2)))?;
    let want_post: BTreeSet<QVector> = [[3, 2, 1], [1, 4, 1], [1, 2, 3], [2, 1, 3], [3, 1, 2]]
        .iter()
        .map(|v| QVector::from_ints(v))
        .collect();
    ensure(post == want_post, format!("Post(1) pentagon {post:?}"))?;
    let rss = vertex_set(&rss_hrep(&RssParams::g0(2)).map_err(err)?)?;
    let want_rss: BTreeSet<QVector> = [[0, 0], [1, 0], [0, 2], [2, 2], [2, 1]]
        .iter()
        .map(|v| QVector::from_ints(v))
        .collect();
    ensure(rss == want_rss, format!("RSS(g0) pentagon {rss:?}"))?;
    for n in 1..=6 {
        let post = vertex_set(&post_hrep(&MinkowskiWeights::ones(n)))?;
        let rss = vertex_set(&rss_hrep(&RssParams::g0(n)).map_err(err)?)?;
        let image: BTreeSet<QVector> = post.iter().map(phi_map).collect();
        ensure(image == rss, format!("phi(Post(1)) != RSS(g0) at n={n}"))?;
    }
    Ok("pentagon fixtures exact; phi maps Post(1) onto RSS(g0) for n <= 6".into())
}

fn c5_hexagon() -> Outcome {
    let d = |a: usize, b: usize| Diagonal::new(a - 1, b - 1, 6).expect("hexagon diagonal");
    let t0 = Triangulation::new(6, vec![d(1, 3), d(3, 5), d(1, 5)]).map_err(err)?;
    let frame = SeedFrame::with_order(t0, vec![d(1, 3), d(3, 5), d(1, 5)]).map_err(err)?;
    let v = santos_vectors(&frame);
    let want: [((usize, usize), [i64; 3]); 9] = [
        ((1, 3), [-1, 0, 0]),
        ((3, 5), [0, -1, 0]),
        ((1, 5), [0, 0, -1]),
        ((2, 5), [1, 0, 0]),
        ((1, 4), [0, 1, 0]),
        ((3, 6), [0, 0, 1]),
        ((4, 6), [0, 1, 1]),
        ((2, 6), [1, 0, 1]),
        ((2, 4), [1, 1, 0]),
    ];
    ensure(v.len() == 9, "expected 9 diagonals")?;
    for ((a, b), x) in want {
        ensure(
            v[&d(a, b)] == QVector::from_ints(&x),
            format!("v_{a}{b} = {}", v[&d(a, b)]),
        )?;
    }
    Ok("all 9 vectors match (labels shifted by -1)".into())
}

fn c6_verification() -> Outcome {
    let mut counts = [0usize; 3];
    for n in 1..=6 {
        vertex_set(&post_hrep(&MinkowskiWeights::ones(n)))?;
        vertex_set(&rss_hrep(&RssParams::g0(n)).map_err(err)?)?;
        for s in SignSequence::all(n - 1) {
            vertex_set(&hl_hrep(&hl_embed(&s))).map_err(|e| format!("AssI({s}): {e}"))?;
            counts[1] += 1;
        }
        for t in canonical_seeds(n + 3).map_err(err)? {
            let f = SeedFrame::new(t.clone());
            let w = santos_weights(&f).map_err(err)?;
            vertex_set(&santos_hrep_with(&f, &w).map_err(err)?)
                .map_err(|e| format!("AssII({t}): {e}"))?;
            counts[2] += 1;
        }
        counts[0] += 2;
    }
    Ok(format!(
        "{} Post/RSS, {} AssI, {} AssII polytopes verified (n <= 6)",
        counts[0], counts[1], counts[2]
    ))
}

fn c7_parallel() -> Outcome {
    for n in 1..=6 {
        let post = normal_fan(&post_hrep(&MinkowskiWeights::ones(n))).map_err(err)?;
        ensure(
            parallel_pairs(&post) == expected_parallel_pairs(n),
            format!("Post n={n}"),
        )?;
        for s in SignSequence::all(n - 1) {
            let poly = hl_embed(&s);
            let pp = parallel_pairs(&normal_fan(&hl_hrep(&poly)).map_err(err)?);
            ensure(
                pp.len() == n && pp == hl_parallel_pairs(&poly),
                format!("AssI({s}) parallel pairs {pp:?}"),
            )?;
        }
        for t in canonical_seeds(n + 3).map_err(err)? {
            let f = SeedFrame::new(t.clone());
            let pp = parallel_pairs(&santos_fan(&f));
            ensure(
                pp.len() == n && pp == santos_parallel_pairs(&f),
                format!("AssII({t}) parallel pairs"),
            )?;
        }
    }
    for n in 2..=6 {
        let fan = gkz_quotient_fan(&PlanarConfig::parabola(n + 3).map_err(err)?).map_err(err)?;
        ensure(
            parallel_pairs(&fan).is_empty(),
            format!("GKZ n={n} has parallel facets"),
        )?;
    }
    let mut crossing = 0;
    for m in 5..=8 {
        let q = PlanarConfig::parabola(m).map_err(err)?;
        let ds = all_diagonals(m);
        for (i, &d) in ds.iter().enumerate() {
            for &e in &ds[i + 1..] {
                if d.crosses(e) {
                    ensure(
                        !pair_has_affine_combination(&q, d, e),
                        format!("{d} and {e} combine affinely"),
                    )?;
                    crossing += 1;
                }
            }
        }
    }
    Ok(format!("n pairs for AssI/AssII (n <= 6), none for GKZ (n = 2..6); {crossing} crossing pairs infeasible"))
}

fn c8_completeness() -> Outcome {
    let (mut fans, mut quads, mut resampled) = (0, 0, 0);
    for n in 1..=6 {
        for t in canonical_seeds(n + 3).map_err(err)? {
            let f = SeedFrame::new(t.clone());
            let report = sample_completeness(&santos_fan(&f), 1000, 0x5eed).map_err(err)?;
            ensure(
                report.passed(),
                format!("AssII({t}): {:?}", report.failures),
            )?;
            resampled += report.resampled;
            for quad in quadrilaterals(n + 3) {
                let dep = flip_dependence(&f, quad).map_err(err)?;
                ensure(
                    dep.residual(&f).is_zero(),
                    format!("AssII({t}) quad {quad:?}"),
                )?;
                quads += 1;
            }
            santos_weights(&f).map_err(|e| format!("AssII({t}): {e}"))?;
            fans += 1;
        }
    }
    Ok(format!(
        "{fans} fans x 1000 points in exactly one open cone ({resampled} boundary resamples); {quads} quads classified; weights certified"
    ))
}

fn c9_classification() -> Outcome {
    for n in 1..=5 {
        for family in [Family::Hl, Family::Santos] {
            let bad = cross_validate_family(family, n).map_err(err)?;
            ensure(bad.is_empty(), format!("{family} n={n}: {bad:?}"))?;
        }
    }
    for m in [5, 6] {
        let g = diagonal_automorphism_group(m).map_err(err)?;
        ensure(g.len() == 2 * m, format!("m={m}: group order {}", g.len()))?;
    }
    Ok("isomorphism agrees with canonical forms (n <= 5); automorphism orders 10 and 12".into())
}

/// Brute force: the lexicographically least sorted image of the vector set
/// under all coordinate permutations.
fn permutation_key(vs: &BTreeSet<QVector>, n: usize) -> Vec<Vec<i64>> {
    let ints: Vec<Vec<i64>> = vs.iter().map(|v| v.to_i64s().expect("integral")).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Vec<i64>>> = None;
    loop {
        let mut image: Vec<Vec<i64>> = ints
            .iter()
            .map(|v| perm.iter().map(|&p| v[p]).collect())
            .collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| perm[j] > perm[i - 1])
            .expect("successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    best.unwrap_or_default()
}

fn c10_bt_and_dual_trees() -> Outcome {
    let mut total = 0;
    // the statement needs n >= 2: both triangulations of the square share B_T
    for m in 5..=9 {
        let all = enumerate_triangulations(m).map_err(err)?;
        let bs: BTreeSet<BTreeSet<Diagonal>> = all.iter().map(b_set).collect();
        ensure(bs.len() == all.len(), format!("m={m}: B_T sets collide"))?;
        total += all.len();
    }
    let mut pairs = 0usize;
    for m in 4..=8 {
        let n = m - 3;
        let frames: Vec<SeedFrame> = enumerate_triangulations(m)
            .map_err(err)?
            .into_iter()
            .map(SeedFrame::new)
            .collect();
        let keys: Vec<Vec<Vec<i64>>> = frames
            .iter()
            .map(|f| permutation_key(&vector_set(f), n))
            .collect();
        let sets: Vec<BTreeSet<QVector>> = frames.iter().map(vector_set).collect();
        for i in 0..frames.len() {
            for j in 0..frames.len() {
                let tree = dual_tree_normal_equiv(frames[i].t0(), frames[j].t0());
                ensure(
                    tree == (keys[i] == keys[j]),
                    format!("{} vs {}: tree {tree}", frames[i].t0(), frames[j].t0()),
                )?;
                if tree {
                    let perm = normal_vector_relabeling(&frames[i], &frames[j])
                        .ok_or("no tree isomorphism")?;
                    let image: BTreeSet<QVector> = sets[i]
                        .iter()
                        .map(|v| permute_coordinates(v, &perm))
                        .collect();
                    ensure(
                        image == sets[j],
                        "relabeling does not carry the vector sets",
                    )?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "B_T distinct over {total} triangulations (m <= 9); dual-tree criterion matches permutation search on {pairs} pairs (m <= 8)"
    ))
}

fn main() {
    let started = Instant::now();
    let mut results: BTreeMap<usize, (&str, Outcome, f64)> = BTreeMap::new();
    let mut run = |k: usize, name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &out {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        println!("[{tag}] {k:>2}. {name} ({secs:.1}s): {detail}");
        results.insert(k, (name, out, secs));
    };
    let mut counts = Err(String::new());
    run(1, "class count table", &mut || {
        counts = table_counts();
        c1_table(&counts.clone()?)
    });
    run(2, "closed-form counts", &mut || {
        c2_formulas(&counts.clone()?)
    });
    run(3, "type I / type II intersection", &mut c3_intersection);
    run(4, "vertex fixtures and affine map", &mut c4_vertex_fixtures);
    run(5, "hexagon v-vectors", &mut c5_hexagon);
    run(6, "realization verification", &mut c6_verification);
    run(7, "parallel-facet invariants", &mut c7_parallel);
    run(
        8,
        "fan completeness and flip dependences",
        &mut c8_completeness,
    );
    run(9, "classification soundness", &mut c9_classification);
    run(
        10,
        "B_T injectivity and dual trees",
        &mut c10_bt_and_dual_trees,
    );
    let failed = results.values().filter(|(_, o, _)| o.is_err()).count();
    println!(
        "acceptance: {} passed, {failed} failed, {:.1}s total",
        results.len() - failed,
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
