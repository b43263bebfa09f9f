//! Property-based invariants: arithmetic homomorphisms, rank oracles,
//! coordinate-change invariance of the classifier, interpolation
//! monotonicity, and file round-trips.

use proptest::prelude::*;

use severi_core::analysis::{classify_singularity, SingKind};
use severi_core::brill_noether::{mu_rank_after_delete, SingularityData};
use severi_core::form::{dim_forms, TernaryForm};
use severi_core::io::CurveFile;
use severi_core::normality::is_geometrically_t_normal;
use severi_core::numerology::eisenbud_harris_exists;
use severi_core::verify::synthetic_node_analysis;
use severi_core::{Elem, ExactMatrix, Field, ProjPoint};

fn f31() -> Field {
    Field::prime(31).unwrap()
}

fn form_strategy(degree: usize) -> impl Strategy<Value = TernaryForm> {
    prop::collection::vec(0i64..31, dim_forms(degree)).prop_map(move |cs| {
        let f = f31();
        let coeffs: Vec<Elem> = cs.iter().map(|&c| f.from_i64(c)).collect();
        TernaryForm::from_coeff_vec(&f, degree, coeffs).unwrap()
    })
}

fn point_strategy() -> impl Strategy<Value = ProjPoint> {
    (0i64..31, 0i64..31, 1i64..31)
        .prop_map(|(a, b, c)| ProjPoint::from_i64(&f31(), [a, b, c]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_a_ring_homomorphism(
        f in form_strategy(3),
        g in form_strategy(3),
        p in point_strategy(),
    ) {
        let fld = f31();
        let at = |h: &TernaryForm| h.eval_point(&p).unwrap();
        prop_assert_eq!(at(&f.add(&g)), fld.add(&at(&f), &at(&g)));
        prop_assert_eq!(at(&f.mul(&g)), fld.mul(&at(&f), &at(&g)));
        prop_assert_eq!(at(&f.neg()), fld.neg(&at(&f)));
    }

    #[test]
    fn rank_matches_transposed_elimination(
        entries in prop::collection::vec(0i64..31, 36),
    ) {
        // the same rank must come out of a second, independent elimination
        // order: eliminating the transpose works column-first
        let fld = f31();
        let rows: Vec<Vec<Elem>> = entries
            .chunks(6)
            .map(|r| r.iter().map(|&c| fld.from_i64(c)).collect())
            .collect();
        let m = ExactMatrix::from_rows(&fld, rows).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        // rank-nullity
        prop_assert_eq!(m.rank() + m.nullity(), m.cols());
        prop_assert_eq!(m.kernel_basis().len(), m.nullity());
    }

    #[test]
    fn classification_is_coordinate_free(
        entries in prop::collection::vec(1i64..31, 9),
    ) {
        // move the three-cusped quartic by a random invertible change of
        // coordinates; the transported points must classify as cusps
        let fld = f31();
        let rows: Vec<Vec<Elem>> = entries
            .chunks(3)
            .map(|r| r.iter().map(|&c| fld.from_i64(c)).collect())
            .collect();
        let m = ExactMatrix::from_rows(&fld, rows.clone()).unwrap();
        prop_assume!(m.rank() == 3);
        let quartic = TernaryForm::from_int_terms(
            &fld,
            4,
            &[
                ([2, 2, 0], 1),
                ([0, 2, 2], 1),
                ([2, 0, 2], 1),
                ([2, 1, 1], -2),
                ([1, 2, 1], -2),
                ([1, 1, 2], -2),
            ],
        )
        .unwrap();
        let lines: [TernaryForm; 3] = std::array::from_fn(|i| {
            TernaryForm::from_coeff_vec(&fld, 1, rows[i].clone()).unwrap()
        });
        let moved = quartic.linear_substitute(&lines);
        // cusps of the moved curve sit at the preimages of the coordinate
        // points under the substitution matrix
        for axis in 0..3 {
            let mut e = vec![fld.zero(); 3];
            e[axis] = fld.one();
            let pre = m.solve_affine(&e).unwrap().expect("matrix invertible");
            let p = ProjPoint::new(&fld, [pre[0].clone(), pre[1].clone(), pre[2].clone()])
                .unwrap();
            let s = classify_singularity(&moved, &p).unwrap();
            prop_assert_eq!(s.kind, SingKind::Cusp);
        }
    }

    #[test]
    fn interpolation_normality_is_downward_monotone(
        coords in prop::collection::vec((0i64..31, 0i64..31, 1i64..31), 1..6),
        n in 5usize..9,
    ) {
        let fld = f31();
        let mut points = Vec::new();
        for (a, b, c) in coords {
            let p = ProjPoint::from_i64(&fld, [a, b, c]).unwrap();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let analysis = synthetic_node_analysis(&fld, n, points);
        // as t falls the interpolation degree rises, so a true verdict at t
        // forces truth at every r < t
        for t in (1..=(n - 3)).rev() {
            let v = is_geometrically_t_normal(&analysis, t).unwrap().verdict;
            if v {
                for r in 1..t {
                    let w = is_geometrically_t_normal(&analysis, r).unwrap().verdict;
                    prop_assert!(w, "t-normal at {} but not at {}", t, r);
                }
            }
        }
    }

    #[test]
    fn ramification_existence_is_monotone(
        g in 0i64..12,
        n in 1i64..15,
        r in 1usize..4,
        raw in prop::collection::vec(0i64..5, 5),
    ) {
        let b: Vec<i64> = raw[..=r].to_vec();
        prop_assume!(eisenbud_harris_exists(g, n, r, &b).unwrap());
        let mut b2 = b.clone();
        if let Some(slot) = b2.iter_mut().find(|x| **x > 0) {
            *slot -= 1;
            prop_assert!(eisenbud_harris_exists(g, n, r, &b2).unwrap());
        }
        prop_assert!(eisenbud_harris_exists(g, n + 1, r, &b).unwrap());
        if g >= 1 {
            prop_assert!(eisenbud_harris_exists(g - 1, n, r, &b).unwrap());
        }
    }

    #[test]
    fn deleting_a_point_raises_the_mu_rank(
        coords in prop::collection::vec((0i64..31, 0i64..31, 1i64..31), 4..8),
        which in 0usize..4,
    ) {
        // rank-increment instances on point models of nodal curves
        let fld = f31();
        let mut points = Vec::new();
        for (a, b, c) in coords {
            let p = ProjPoint::from_i64(&fld, [a, b, c]).unwrap();
            if !points.contains(&p) {
                points.push(p);
            }
        }
        prop_assume!(points.len() >= 4);
        let n = 6usize;
        let data = SingularityData::from_points(&fld, n, points.clone());
        prop_assume!(data.g >= 2);
        let idx = which % points.len();
        if let Ok(rep) = mu_rank_after_delete(&data, idx) {
            if rep.lemma_applicable {
                prop_assert!(
                    rep.rank_increment_holds,
                    "rank {} -> {}",
                    rep.full.rank,
                    rep.deleted.rank
                );
            }
        }
    }

    #[test]
    fn curve_file_round_trip(
        degree in 1usize..5,
        values in prop::collection::vec(-20i64..20, 21),
    ) {
        let fld = Field::rationals();
        let coeffs: Vec<Elem> = values[..dim_forms(degree)]
            .iter()
            .map(|&c| fld.from_i64(c))
            .collect();
        prop_assume!(coeffs.iter().any(|c| !fld.is_zero(c)));
        let form = TernaryForm::from_coeff_vec(&fld, degree, coeffs).unwrap();
        let file = CurveFile::from_form(&form);
        let text = file.to_json_string();
        let back = CurveFile::from_json_str(&text).unwrap();
        prop_assert_eq!(back.form().unwrap(), form);
        prop_assert_eq!(back.to_json_string(), text);
    }
}
