use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use assoc_core::exactlin::{
    in_cone, linear_dependence, rat, ratio, solve_linear, QMatrix, QVector, Rat,
};
use assoc_core::genperm::{
    expected_parallel_pairs, phi_map, phi_transport, post_hrep, rss_hrep, rss_validate,
    MinkowskiWeights,
};
use assoc_core::hl::{hl_embed, hl_hrep, hl_vertex_rule, sign_canonical};
use assoc_core::polygon::{enumerate_triangulations, Dihedral, Sign, SignSequence, Triangulation};
use assoc_core::realization::{
    fans_linearly_isomorphic, normal_fan, parallel_pairs, parse_hrep, sample_completeness,
    verify_realization, PreparedFan,
};
use assoc_core::santos::{flip_dependence, santos_fan, SeedFrame};
use assoc_core::secondary::{gkz_polytope, gkz_quotient_fan, PlanarConfig};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows).prop_map(|rs| {
        QMatrix::from_rows(rs.iter().map(|r| QVector::from_ints(r)).collect()).expect("rectangular")
    })
}

fn triangulation(m_range: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Triangulation> {
    (m_range, any::<prop::sample::Index>()).prop_map(|(m, i)| {
        let all = enumerate_triangulations(m).expect("m >= 3");
        all[i.index(all.len())].clone()
    })
}

fn signs(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = SignSequence> {
    prop::collection::vec(any::<bool>(), len).prop_map(|bs| {
        SignSequence::new(
            bs.into_iter()
                .map(|b| if b { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    })
}

fn weights(n: usize) -> impl Strategy<Value = MinkowskiWeights> {
    let k = (n + 1) * (n + 2) / 2;
    prop::collection::vec(1i64..=40, k).prop_map(move |ks| {
        let keys = (1..=n + 1).flat_map(|i| (i..=n + 1).map(move |j| (i, j)));
        let a: BTreeMap<(usize, usize), Rat> =
            keys.zip(ks).map(|(ij, k)| (ij, ratio(k, 4))).collect();
        MinkowskiWeights::new(n, a).expect("positive weights")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solutions_are_exact(a in small_matrix(3, 3), b in prop::collection::vec(-5i64..=5, 3)) {
        let b = QVector::from_ints(&b);
        if let Some(x) = solve_linear(&a, &b).unwrap() {
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }

    #[test]
    fn dependences_vanish(a in small_matrix(4, 3)) {
        let vs: Vec<QVector> = a.rows().to_vec();
        let lambda = linear_dependence(&vs).unwrap().expect("four vectors in R^3 are dependent");
        prop_assert!(!lambda.is_zero());
        let sum = vs.iter().zip(lambda.iter()).fold(QVector::zeros(3), |acc, (v, c)| acc.axpy(c, v));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn cone_coefficients_roundtrip(a in small_matrix(3, 3), c in prop::collection::vec(0i64..=6, 3)) {
        prop_assume!(a.rank() == 3);
        let gens: Vec<QVector> = a.rows().to_vec();
        let c: Vec<Rat> = c.into_iter().map(|k| ratio(k, 3)).collect();
        let x = gens.iter().zip(&c).fold(QVector::zeros(3), |acc, (g, k)| acc.axpy(k, g));
        let got = in_cone(&gens, &x).unwrap().expect("inside by construction");
        prop_assert_eq!(got.coefficients.entries(), c.as_slice());
    }

    #[test]
    fn flips_are_involutions(t in triangulation(4..=10), i in any::<prop::sample::Index>()) {
        prop_assert_eq!(t.flip_partners().len(), t.m() - 3);
        let d = t.diagonals()[i.index(t.n())];
        let (t2, e) = t.flip(d).unwrap();
        prop_assert_ne!(d, e);
        let (back, d2) = t2.flip(e).unwrap();
        prop_assert_eq!(back, t.clone());
        prop_assert_eq!(d2, d);
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(t in triangulation(4..=11), reflect in any::<bool>(), k in 0usize..11) {
        let g = Dihedral { reflect, shift: k % t.m() };
        let image = t.apply(g);
        prop_assert_eq!(image.canonical(), t.canonical());
        prop_assert_eq!(image.apply(g.inverse(t.m())), t.clone());
    }

    #[test]
    fn post_is_an_associahedron_with_fixed_parallel_pairs(a in (1usize..=5).prop_flat_map(weights)) {
        let h = post_hrep(&a);
        let report = verify_realization(&h);
        prop_assert!(report.is_simple_associahedron, "{:?}", report.failures);
        prop_assert_eq!(parse_hrep(&h.to_hrep_string()).unwrap(), h.clone());
        let n = h.n();
        prop_assert_eq!(parallel_pairs(&normal_fan(&h).unwrap()), expected_parallel_pairs(n));

        // phi carries each vertex to the vertex of the same triangulation
        let g = phi_transport(&a);
        prop_assert!(rss_validate(&g));
        let rss = rss_hrep(&g).unwrap();
        let rss_report = verify_realization(&rss);
        prop_assert!(rss_report.is_simple_associahedron);
        for (t, x) in &report.vertex_map {
            prop_assert_eq!(&phi_map(x), &rss_report.vertex_map[t]);
        }
        prop_assert_eq!(parallel_pairs(&normal_fan(&rss).unwrap()), expected_parallel_pairs(n));
    }

    #[test]
    fn gkz_on_random_parabola_points(xs in prop::collection::btree_set(-20i64..=20, 5..=7)) {
        let pts: Vec<QVector> = xs.iter().map(|&x| QVector::from_ints(&[x, x * x])).collect();
        let q = PlanarConfig::new(pts).unwrap();
        let g = gkz_polytope(&q).unwrap();
        let distinct: BTreeSet<&QVector> = g.vertices.values().collect();
        prop_assert_eq!(distinct.len(), g.vertices.len());
        for v in g.vertices.values() {
            prop_assert_eq!(v.iter().sum::<Rat>(), q.area() * rat(3));
        }
        let fan = gkz_quotient_fan(&q).unwrap();
        prop_assert!(parallel_pairs(&fan).is_empty());
        prop_assert!(sample_completeness(&fan, 100, 7).unwrap().passed());
    }

    #[test]
    fn hl_rays_are_signed_prefix_vectors(sigma in signs(0..=5)) {
        let poly = hl_embed(&sigma);
        let h = hl_hrep(&poly);
        let fan = normal_fan(&h).unwrap();
        let n = fan.n();
        let one = rat(1);
        for v in fan.rays().values() {
            prop_assert!(v.iter().all(|x| *x == rat(0) || *x == rat(1) || *x == rat(-1)), "{}", v);
        }
        for j in 0..n {
            let e = QVector::unit(n, j);
            prop_assert!(fan.rays().values().any(|v| *v == e));
            prop_assert!(fan.rays().values().any(|v| *v == e.scale(&-one.clone())));
        }
        for t in enumerate_triangulations(n + 3).unwrap().iter().take(20) {
            prop_assert_eq!(hl_vertex_rule(&poly, t).unwrap(), assoc_core::realization::vertex_of_triangulation(&h, t).unwrap());
        }
    }

    #[test]
    fn flip_dependences_live_on_the_flip(
        (seed, t) in (5usize..=9).prop_flat_map(|m| (triangulation(m..=m), triangulation(m..=m))),
        i in any::<prop::sample::Index>(),
    ) {
        let frame = SeedFrame::new(seed);
        let d = t.diagonals()[i.index(t.n())];
        let (t2, e) = t.flip(d).unwrap();
        let quad = t.flip_quadrilateral(d).unwrap();
        let dep = flip_dependence(&frame, quad).unwrap();
        prop_assert!(dep.residual(&frame).is_zero());
        prop_assert!(dep.coefficients[&d] > rat(0));
        prop_assert!(dep.coefficients[&e] > rat(0));
        for k in dep.coefficients.keys() {
            prop_assert!(t.contains(*k) || t2.contains(*k));
        }
    }

    #[test]
    fn isomorphism_is_symmetric_with_checkable_witnesses(a in signs(2..=3), b in signs(2..=3)) {
        prop_assume!(a.len() == b.len());
        let fa = normal_fan(&hl_hrep(&hl_embed(&a))).unwrap();
        let fb = normal_fan(&hl_hrep(&hl_embed(&b))).unwrap();
        let (pa, pb) = (PreparedFan::new(&fa).unwrap(), PreparedFan::new(&fb).unwrap());
        let ab = fans_linearly_isomorphic(&pa, &pb);
        let ba = fans_linearly_isomorphic(&pb, &pa);
        prop_assert_eq!(ab.is_some(), ba.is_some());
        prop_assert_eq!(ab.is_some(), sign_canonical(&a) == sign_canonical(&b));
        if let Some(w) = ab {
            prop_assert!(w.verify(&fa, &fb));
        }
        prop_assert!(fans_linearly_isomorphic(&pa, &pa).is_some());
    }

    #[test]
    fn isomorphism_is_transitive_on_seeds(ts in prop::collection::vec(triangulation(7..=7), 3)) {
        let fans: Vec<PreparedFan> = ts.iter().map(|t| PreparedFan::new(&santos_fan(&SeedFrame::new(t.clone()))).unwrap()).collect();
        let iso = |i: usize, j: usize| fans_linearly_isomorphic(&fans[i], &fans[j]).is_some();
        if iso(0, 1) && iso(1, 2) {
            prop_assert!(iso(0, 2));
        }
        prop_assert_eq!(iso(0, 1), ts[0].canonical() == ts[1].canonical());
    }
}
