use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use sdist_core::field::rat;
use sdist_core::geometry::{self, embedding_dimension, sdm_from_points};
use sdist_core::invariants::{self, k_invariants};
use sdist_core::{DistanceSpectrum, Error, ExactMatrix, PointSet, QuadExt};

const M: u64 = 5;

fn quad() -> impl Strategy<Value = QuadExt> {
    (-20i64..=20, 1i64..=6, -20i64..=20, 1i64..=6).prop_map(|(a, b, c, d)| QuadExt::new(rat(a, b), rat(c, d), M))
}

fn small_int_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n, 1..=max_n).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn symmetric_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            (0..n).map(|i| (0..n).map(|j| v[i.min(j) * n + i.max(j)]).collect()).collect()
        })
    })
}

fn spectrum(s: usize) -> impl Strategy<Value = DistanceSpectrum> {
    prop::collection::btree_set((1i64..=80, 1i64..=9), s)
        .prop_map(|set| DistanceSpectrum::from_values(set.into_iter().map(|(p, q)| QuadExt::from_frac(p, q)).collect()).unwrap())
        .prop_filter("distinct values", move |sp| sp.s() == s)
}

fn point_set(d: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set(prop::collection::vec(-3i64..=3, d), 2..=6)
        .prop_map(move |pts| PointSet::from_i64(d, &pts.into_iter().collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in quad(), b in quad(), c in quad()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, QuadExt::zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
    }

    #[test]
    fn sign_is_multiplicative_and_matches_floats(a in quad(), b in quad()) {
        prop_assert_eq!((&a * &b).sign_of(), a.sign_of() * b.sign_of());
        let f = a.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(a.sign_of(), f.signum() as i8);
        }
    }

    #[test]
    fn norm_is_product_with_conjugate(a in quad()) {
        prop_assert_eq!(&a * &a.conjugate(), QuadExt::from_rational(a.norm()));
    }

    #[test]
    fn rank_of_transpose(rows in small_int_matrix(5)) {
        let m = ExactMatrix::from_i64(&rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn exact_rank_matches_svd(rows in small_int_matrix(5)) {
        let m = ExactMatrix::from_i64(&rows);
        let (r, c) = m.shape();
        let f = DMatrix::from_fn(r, c, |i, j| rows[i][j] as f64);
        prop_assert_eq!(m.rank(), f.rank(1e-9));
    }

    #[test]
    fn nullspace_dimension(rows in small_int_matrix(5)) {
        let m = ExactMatrix::from_i64(&rows);
        prop_assert_eq!(m.nullspace().len() + m.rank(), m.cols());
    }

    #[test]
    fn inertia_under_congruence(rows in symmetric_matrix(5), p in small_int_matrix(5)) {
        let a = ExactMatrix::from_i64(&rows);
        let n = a.rows();
        // unit upper triangular change of basis, always invertible
        let mut t = ExactMatrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = p.get(i).and_then(|r| r.get(j)).copied().unwrap_or(1);
                t.set(i, j, QuadExt::from_int(v));
            }
        }
        let b = t.transpose().matmul(&a).unwrap().matmul(&t).unwrap();
        prop_assert_eq!(a.ldlt_inertia().unwrap(), b.ldlt_inertia().unwrap());
        let inertia = a.ldlt_inertia().unwrap();
        prop_assert_eq!(inertia.n_pos + inertia.n_neg, a.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in symmetric_matrix(4), b in symmetric_matrix(4)) {
        let (a, b) = (ExactMatrix::from_i64(&a), ExactMatrix::from_i64(&b));
        prop_assume!(a.rows() == b.rows());
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), &a.determinant().unwrap() * &b.determinant().unwrap());
    }

    #[test]
    fn k_sum_scale_and_signs(spec in (2usize..=4).prop_flat_map(spectrum)) {
        let k = k_invariants(&spec);
        prop_assert_eq!(k.iter().cloned().sum::<QuadExt>(), QuadExt::one());
        let scaled = k_invariants(&spec.scaled(&QuadExt::from_frac(7, 3)).unwrap());
        prop_assert_eq!(&scaled, &k);
        for (i, ki) in k.iter().enumerate() {
            prop_assert_eq!(ki.sign_of(), if i % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn geometry_invariances(x in point_set(3), extra in 0usize..=2, c in 1i64..=5) {
        let d = sdm_from_points(&x).unwrap();
        let spec = geometry::distance_spectrum(&d);
        prop_assume!(spec.is_ok());
        let spec = spec.unwrap();
        let dim = embedding_dimension(&d);

        let order: Vec<usize> = (0..x.len()).rev().collect();
        let dp = sdm_from_points(&x.permuted(&order).unwrap()).unwrap();
        prop_assert_eq!(&geometry::distance_spectrum(&dp).unwrap(), &spec);
        prop_assert_eq!(embedding_dimension(&dp), dim);

        let dpad = sdm_from_points(&x.padded(extra)).unwrap();
        prop_assert_eq!(&dpad, &d);

        let scale = QuadExt::from_int(c);
        let ds = d.scaled(&scale).unwrap();
        prop_assert_eq!(embedding_dimension(&ds), dim);
        prop_assert_eq!(k_invariants(&geometry::distance_spectrum(&ds).unwrap()), k_invariants(&spec));
        prop_assert!(geometry::is_realizable(&d).is_realizable());
    }

    #[test]
    // h·(c+1, …, c+s) always has integral invariants
    fn recovery_round_trip(s in 2i64..=4, c in 0i64..=30, h in 1i64..=5) {
        let v: Vec<i64> = (1..=s).map(|i| h * (c + i)).collect();
        let spec = DistanceSpectrum::from_i64(&v).unwrap();
        let k: Option<Vec<i64>> = k_invariants(&spec).iter().map(|x| x.to_integer().and_then(|z| z.to_i64())).collect();
        prop_assert!(k.is_some());
        let top = *v.last().unwrap() as f64;
        match invariants::recover_distances(&k.unwrap(), 1e-9) {
            Ok(g) => {
                for (a, &b) in g.iter().zip(&v) {
                    prop_assert!((a - b as f64 / top).abs() <= 1e-9, "{:?} -> {:?}", v, g);
                }
            }
            Err(e) => prop_assert!(matches!(e, Error::NoConvergence { .. }), "{}", e),
        }
    }
}

#[test]
fn scaled_spectrum_normalizes_to_same() {
    let a = DistanceSpectrum::from_i64(&[2, 4, 6]).unwrap();
    let b = DistanceSpectrum::from_i64(&[1, 2, 3]).unwrap();
    assert_eq!(a.normalized().unwrap(), b.normalized().unwrap());
}
