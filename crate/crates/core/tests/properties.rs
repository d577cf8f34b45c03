use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use zonoehr::classify::{classify_3d_deg2, Degree2Class};
use zonoehr::ehrhart::{
    degree_of, degree_via_dilates, ehrhart_oracle, ehrhart_stanley, eulerian, eulerian_table, from_cbasis,
    hstar_from_poly, interior_count_reciprocity, interpolate, to_cbasis, CVector, HStarVector,
};
use zonoehr::linalg::{
    column_hermite_form, combinations, gcd_of_minors, hyperplane_lattice_basis, integer_kernel, is_primitive,
    primitive_part, rank, segment_length,
};
use zonoehr::poly::Poly;
use zonoehr::zonotope::DEFAULT_CELL_BUDGET;
use zonoehr::{IntMatrix, IntVector, Zonotope};

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn vector(dim: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, dim)
}

fn generators(dim: usize, bound: i64, max_m: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(vector(dim, bound), 1..=max_m)
}

fn zonotope(dim: usize, bound: i64, max_m: usize) -> impl Strategy<Value = Zonotope> {
    generators(dim, bound, max_m).prop_map(move |g| {
        Zonotope::new(dim, g.iter().map(|v| IntVector::from_i64s(v)).collect(), None).unwrap()
    })
}

fn full_zonotope(dim: usize, bound: i64, max_m: usize) -> impl Strategy<Value = Zonotope> {
    zonotope(dim, bound, max_m).prop_filter("full-dimensional", Zonotope::is_full_dimensional)
}

fn rational_offset(dim: usize) -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec((-6i64..=6, 1i64..=6), dim)
        .prop_map(|v| v.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect())
}

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(vector(rows, bound), cols).prop_map(move |c| {
        IntMatrix::from_columns(rows, c.iter().map(|v| IntVector::from_i64s(v)).collect()).unwrap()
    })
}

/// Product of elementary integer matrices.
fn unimodular(dim: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..dim, 0..dim, -2i64..=2, any::<bool>()), 0..6).prop_map(move |ops| {
        let mut m = IntMatrix::identity(dim);
        for (i, j, k, flip) in ops {
            let mut rows: Vec<Vec<i64>> = (0..dim)
                .map(|r| (0..dim).map(|c| i64::from(r == c)).collect())
                .collect();
            if i != j {
                rows[i][j] = k;
            }
            if flip {
                rows[i][i] = -1;
            }
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            m = IntMatrix::from_rows_i64(&refs).unwrap().mul(&m);
        }
        m
    })
}

fn rational_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| BigRational::from_integer(m.entry(i, j).clone())).collect())
        .collect();
    let mut r = 0;
    for c in 0..m.cols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for k in c..m.cols() {
                    let t = &a[r][k] * &f;
                    a[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn minors_gcd_brute(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub: Vec<IntVector> = cols
                .iter()
                .map(|&c| IntVector::new(rows.iter().map(|&r| m.entry(r, c).clone()).collect()))
                .collect();
            g = g.gcd(&IntMatrix::from_columns(k, sub).unwrap().determinant().unwrap());
        }
    }
    g
}

fn sorted_points(z: &Zonotope) -> Vec<IntVector> {
    let mut p = z.lattice_points(1).unwrap();
    p.sort();
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_rational_elimination(m in matrix(3, 4, 3)) {
        prop_assert_eq!(rank(&m), rational_rank(&m));
    }

    #[test]
    fn gcd_of_minors_matches_brute_force(m in matrix(3, 4, 3), k in 1usize..=3) {
        prop_assert_eq!(gcd_of_minors(&m, k).unwrap(), minors_gcd_brute(&m, k));
    }

    #[test]
    fn primitive_part_scales_back(v in vector(3, 12).prop_filter("nonzero", |v| v.iter().any(|&a| a != 0))) {
        let v = IntVector::from_i64s(&v);
        let p = primitive_part(&v).unwrap();
        prop_assert!(is_primitive(&p));
        prop_assert_eq!(p.scaled(&v.content()), v);
    }

    #[test]
    fn segment_length_counts_lattice_points(v in vector(3, 9).prop_filter("nonzero", |v| v.iter().any(|&a| a != 0))) {
        let n = v.iter().map(|a| a.abs()).max().unwrap();
        let on_segment = (0..=n).filter(|j| v.iter().all(|a| (j * a) % n == 0)).count();
        prop_assert_eq!(segment_length(&IntVector::from_i64s(&v)).unwrap(), BigInt::from(on_segment - 1));
    }

    #[test]
    fn hyperplane_basis_is_saturated(v in vector(3, 7).prop_filter("nonzero", |v| v.iter().any(|&a| a != 0))) {
        let v = primitive_part(&IntVector::from_i64s(&v)).unwrap();
        let basis = hyperplane_lattice_basis(&v).unwrap();
        prop_assert_eq!(basis.len(), 2);
        for b in &basis {
            prop_assert!(v.dot(b).is_zero());
        }
        let m = IntMatrix::from_columns(3, basis).unwrap();
        prop_assert_eq!(gcd_of_minors(&m, 2).unwrap(), BigInt::one());
    }

    #[test]
    fn hermite_form_is_a_unimodular_change(m in matrix(3, 4, 4)) {
        let h = column_hermite_form(&m);
        prop_assert!(h.transform.is_unimodular());
        prop_assert_eq!(m.mul(&h.transform), h.hnf);
    }

    #[test]
    fn kernel_is_a_saturated_basis(m in matrix(2, 4, 3)) {
        let ker = integer_kernel(&m);
        prop_assert_eq!(ker.len(), 4 - rank(&m));
        for k in &ker {
            prop_assert!(m.mul_vec(k).is_zero());
        }
        if !ker.is_empty() {
            let km = IntMatrix::from_columns(4, ker.clone()).unwrap();
            prop_assert_eq!(gcd_of_minors(&km, ker.len()).unwrap(), BigInt::one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_matches_counts(z in zonotope(3, 2, 4), t in vector(3, 5)) {
        let z = z.with_translate(IntVector::from_i64s(&t).to_rational()).unwrap();
        prop_assert_eq!(ehrhart_stanley(&z).unwrap(), ehrhart_oracle(&z, DEFAULT_CELL_BUDGET).unwrap());
    }

    #[test]
    fn ehrhart_is_unimodular_invariant(z in zonotope(3, 2, 4), u in unimodular(3), s in vector(3, 4)) {
        prop_assume!(u.is_unimodular());
        let image = z.transformed(&u, &IntVector::from_i64s(&s)).unwrap();
        prop_assert_eq!(ehrhart_stanley(&image).unwrap(), ehrhart_stanley(&z).unwrap());
        prop_assert_eq!(z.lattice_points(1).unwrap().len(), image.lattice_points(1).unwrap().len());
    }

    #[test]
    fn merging_keeps_the_point_set(z in zonotope(2, 3, 4), t in rational_offset(2)) {
        let z = z.with_translate(t).unwrap();
        let m = z.merged_parallel();
        prop_assert!(!m.has_parallel_generators());
        prop_assert_eq!(sorted_points(&z), sorted_points(&m));
        if z.is_full_dimensional() {
            prop_assert_eq!(
                z.has_interior_lattice_point(1, DEFAULT_CELL_BUDGET).unwrap(),
                m.has_interior_lattice_point(1, DEFAULT_CELL_BUDGET).unwrap()
            );
        }
    }

    #[test]
    fn membership_of_vertices_and_center(z in zonotope(3, 3, 4), t in rational_offset(3)) {
        let z = z.with_translate(t.clone()).unwrap();
        let gens = z.generator_list().to_vec();
        for mask in 0..(1u32 << gens.len()) {
            let mut x = t.clone();
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (xi, gi) in x.iter_mut().zip(g.entries()) {
                        *xi += BigRational::from_integer(gi.clone());
                    }
                }
            }
            prop_assert!(z.contains(&x, false));
        }
        let half = BigRational::new(1.into(), 2.into());
        let mut center = t.clone();
        let mut far = t.clone();
        for g in &gens {
            for (k, gi) in g.entries().iter().enumerate() {
                center[k] += BigRational::from_integer(gi.clone()) * &half;
                far[k] += BigRational::from_integer(gi.abs() * 2);
            }
        }
        far[0] += rat(1);
        prop_assert_eq!(z.contains(&center, true), z.is_full_dimensional());
        prop_assert!(!z.contains(&far, false));
    }

    #[test]
    fn lattice_width_matches_brute_force(z in full_zonotope(2, 3, 3)) {
        let b = z.lattice_width_bound().unwrap();
        let b: i64 = b.try_into().unwrap();
        prop_assume!(b <= 40);
        let mut best: Option<BigInt> = None;
        for u0 in -b..=b {
            for u1 in -b..=b {
                if (u0, u1) == (0, 0) {
                    continue;
                }
                let w = z.width_in_direction(&IntVector::from_i64s(&[u0, u1])).unwrap();
                if best.as_ref().map_or(true, |x| &w < x) {
                    best = Some(w);
                }
            }
        }
        let lw = z.lattice_width().unwrap();
        prop_assert_eq!(&lw.width, best.as_ref().unwrap());
        prop_assert_eq!(z.width_in_direction(&lw.witness).unwrap(), lw.width);
    }

    #[test]
    fn lattice_width_3d_is_attained_and_minimal_on_small_box(z in full_zonotope(3, 2, 4)) {
        let lw = z.lattice_width().unwrap();
        prop_assert!(is_primitive(&lw.witness));
        prop_assert_eq!(z.width_in_direction(&lw.witness).unwrap(), lw.width.clone());
        for u in zonoehr::census::canonical_vectors(3, 2) {
            prop_assert!(z.width_in_direction(&u).unwrap() >= lw.width);
        }
    }

    #[test]
    fn degree_invariants(z in full_zonotope(3, 2, 4)) {
        let p = ehrhart_stanley(&z).unwrap();
        let degree = degree_of(&p, 3).unwrap();
        prop_assert!(degree == 2 || degree == 3);
        prop_assert_eq!(degree_via_dilates(&z, DEFAULT_CELL_BUDGET).unwrap(), degree);
        let interior = z.interior_lattice_points().unwrap().len();
        prop_assert_eq!(interior_count_reciprocity(&p).unwrap(), BigInt::from(interior));
        let c = to_cbasis(&p, 3).unwrap();
        prop_assert!(c.is_valid());
        prop_assert!(hstar_from_poly(&p, 3).unwrap().is_valid());
        let class = classify_3d_deg2(&z, DEFAULT_CELL_BUDGET).unwrap().class;
        prop_assert_eq!(matches!(class, Degree2Class::NotDegree2 { .. }), degree == 3);
    }

    #[test]
    fn width_one_decomposition_maps_points(z in full_zonotope(3, 2, 4), t in vector(3, 3)) {
        let z = z.with_translate(IntVector::from_i64s(&t).to_rational()).unwrap();
        if let Some(dec) = z.width1_decomposition().unwrap() {
            prop_assert!(dec.transform.is_unimodular());
            let image = z.transformed(&dec.transform, &dec.shift).unwrap();
            prop_assert_eq!(sorted_points(&image), sorted_points(&dec.product()));
            let product = &Poly::from_i64s(&[1, 1]) * &ehrhart_stanley(&dec.factor).unwrap();
            prop_assert_eq!(ehrhart_stanley(&z).unwrap(), product);
        } else {
            prop_assert!(z.lattice_width().unwrap().width > BigInt::one());
        }
    }

    #[test]
    fn three_directions_force_interior_points(z in full_zonotope(2, 3, 4), t in rational_offset(2)) {
        for candidate in [z.clone(), z.merged_parallel()] {
            prop_assume!(candidate.num_generators() >= 3 && !candidate.has_parallel_generators());
            let shifted = candidate.translated(&t).unwrap();
            prop_assert!(shifted.has_interior_lattice_point(1, DEFAULT_CELL_BUDGET).unwrap());
        }
    }

    #[test]
    fn solid_angles_sum_to_area(z in full_zonotope(2, 3, 3), t in rational_offset(2)) {
        let shifted = z.translated(&t).unwrap();
        let area: f64 = z.volume().unwrap().to_string().parse().unwrap();
        prop_assert!((shifted.solid_angle_sum_2d().unwrap() - area).abs() < 1e-6);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cbasis_round_trip(c in prop::collection::vec((-20i64..=20, 1i64..=5), 1..=3)) {
        let cv = CVector::new(c.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect());
        prop_assert_eq!(to_cbasis(&from_cbasis(&cv), cv.dim).unwrap(), cv);
    }

    #[test]
    fn hstar_round_trip(h in prop::collection::vec(-20i64..=20, 2..=4)) {
        let hv = HStarVector::from_i64s(&h);
        prop_assert_eq!(hstar_from_poly(&hv.to_ehrhart(), hv.dim).unwrap(), hv);
    }

    #[test]
    fn interpolation_recovers_polynomials(c in prop::collection::vec(-50i64..=50, 0..=5)) {
        let p = Poly::from_i64s(&c);
        let values: Vec<BigRational> = (0..=c.len() as i64).map(|n| p.eval_int(n)).collect();
        prop_assert_eq!(interpolate(&values), p);
    }
}

#[test]
fn eulerian_partition() {
    let mut factorial = BigRational::one();
    for d in 1..=9usize {
        factorial *= rat(d as i64);
        let total = eulerian_table(d)
            .unwrap()
            .iter()
            .fold(Poly::zero(), |acc, p| &acc + p);
        assert_eq!(total, eulerian(d).unwrap());
        assert_eq!(total.eval_int(1), factorial);
    }
}
