use cocyclelab_core::boundary::{
    cross_ratio, random_generic_tuple, random_mobius, BoundaryPoint,
};
use cocyclelab_core::cohomology::{
    corollary_even_degree_check, fixed_dim_combinatorial, fixed_dim_trace, invariant_dims,
    kernel_table, spectral_pages, PageEntry, PageLabel,
};
use cocyclelab_core::rational::RationalVector;
use cocyclelab_core::{longest_element, reflect, RootSystem, Signature};
use proptest::prelude::*;

fn small_vector(dim: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(-6i64..=6, dim).prop_map(|v| RationalVector::from_ints(&v))
}

fn finite_points(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-5.0f64..5.0, dim), count)
}

fn separated(points: &[Vec<f64>], eps: f64) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[i + 1..].iter().all(|b| {
            a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt() > eps
        })
    })
}

proptest! {
    #[test]
    fn reflections_are_isometric_involutions(
        root in small_vector(4).prop_filter("non-zero", |r| !r.is_zero()),
        u in small_vector(4),
        v in small_vector(4),
    ) {
        let su = reflect(&root, &u).unwrap();
        let sv = reflect(&root, &v).unwrap();
        prop_assert_eq!(su.dot(&sv), u.dot(&v));
        prop_assert_eq!(reflect(&root, &su).unwrap(), u);
    }

    #[test]
    fn trace_and_combinatorial_counts_agree(s in 0usize..=8, t in 0usize..=8, k in 0usize..=16) {
        prop_assume!(s + t >= 1 && s + t <= 8);
        let sig = Signature { s, t };
        prop_assert_eq!(fixed_dim_combinatorial(sig, k), fixed_dim_trace(sig, k));
    }

    #[test]
    fn table_invariants(s in 0usize..=6, t in 0usize..=6, extra in 0usize..4) {
        prop_assume!(s + t >= 1);
        let sig = Signature { s, t };
        let max_degree = s + t + 2 + extra;
        let inv = invariant_dims(sig, max_degree);
        for k in 0..=max_degree {
            prop_assert_eq!(inv.dims_ha_w0[k] + inv.dims_ha_equiv[k], inv.dims_ha[k]);
        }
        let total: u64 = inv.dims_ha_w0.iter().chain(&inv.dims_ha_equiv).sum();
        prop_assert_eq!(total, 1u64 << (s + t));
        if s == 0 {
            for k in 0..=max_degree {
                let expected = if k % 2 == 0 { inv.dims_ha[k] } else { 0 };
                prop_assert_eq!(inv.dims_ha_w0[k], expected);
            }
            prop_assert!(corollary_even_degree_check(&inv));
        }
        let table = kernel_table(&inv, max_degree, None);
        for row in &table.rows {
            prop_assert_eq!(row.dim_nh, row.dim_nh_nalt + row.dim_nh_alt);
            if row.degree > s + t + 2 {
                prop_assert_eq!(row.dim_nh, 0);
            }
        }
        for p in 3..=max_degree {
            prop_assert_eq!(table.nh(p), inv.w0(p as isize - 2) + inv.w0(p as isize - 1));
        }
    }

    #[test]
    fn page_shapes(s in 0usize..=4, t in 0usize..=4) {
        prop_assume!(s + t >= 1);
        let inv = invariant_dims(Signature { s, t }, 6);
        for page in spectral_pages(&inv, 6, 5, None) {
            for p in 1..=6 {
                match page.label {
                    PageLabel::NaltE1 | PageLabel::NaltE2 => {
                        prop_assert_eq!(page.entry(p, 0), Some(&PageEntry::Dim(0)));
                        prop_assert_eq!(page.entry(p, 1), Some(&PageEntry::Dim(0)));
                    }
                    PageLabel::AltE2 => {
                        for q in 2..=5 {
                            prop_assert_eq!(page.entry(p, q), Some(&PageEntry::Dim(0)));
                        }
                    }
                    PageLabel::AltE1 => {}
                }
            }
        }
    }

    #[test]
    fn cross_ratio_reversal_and_scaling(
        pts in finite_points(3, 4),
        lambda in 0.01f64..100.0,
    ) {
        prop_assume!(separated(&pts, 1e-3));
        let p: Vec<_> = pts.iter().map(|c| BoundaryPoint::finite(c.clone()).unwrap()).collect();
        let b = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
        let rev = cross_ratio(&p[3], &p[2], &p[1], &p[0]).unwrap();
        prop_assert!((b - rev).abs() <= 1e-12 * b);
        let scaled: Vec<_> = pts
            .iter()
            .map(|c| BoundaryPoint::finite(c.iter().map(|x| x * lambda).collect()).unwrap())
            .collect();
        let bs = cross_ratio(&scaled[0], &scaled[1], &scaled[2], &scaled[3]).unwrap();
        prop_assert!((b - bs).abs() <= 1e-12 * b);
    }
}

#[test]
fn w0_properties_for_all_types_up_to_rank_8() {
    for t in cocyclelab_core::root_system::simple_types_up_to_rank(8) {
        let rs = RootSystem::new(&[t]).unwrap();
        let rep = longest_element(&rs);
        assert!(rep.simple_root_permutation().is_some(), "{t}");
        let sig = cocyclelab_core::involution_signature(&rep).unwrap();
        assert_eq!(sig, rep.signature);
        assert_eq!(rep.minus_one, rep.action == cocyclelab_core::RationalMatrix::identity(rep.rank).neg());
    }
}

#[test]
fn products_combine_factorwise() {
    let pairs = [("A2", "B3"), ("A1", "A1"), ("E6", "G2"), ("D5", "C2")];
    for (a, b) in pairs {
        let ra = longest_element(&RootSystem::parse(a).unwrap());
        let rb = longest_element(&RootSystem::parse(b).unwrap());
        let rab = longest_element(&RootSystem::parse(&format!("{a},{b}")).unwrap());
        assert_eq!(rab.signature, ra.signature + rb.signature);
        assert_eq!(rab.minus_one, ra.minus_one && rb.minus_one);
        assert_eq!(rab.word_length(), ra.word_length() + rb.word_length());
    }
}

#[test]
fn cross_ratio_mobius_invariance() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let tuple = random_generic_tuple(seed, 4, &[3], 0.1).unwrap();
        let g = random_mobius(seed.wrapping_mul(7919), 3).unwrap();
        let x: Vec<_> = tuple.iter().map(|p| p.factor(0).clone()).collect();
        let y: Vec<_> = x.iter().map(|p| g.apply(p)).collect();
        let min_dist = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .filter_map(|(i, j)| cocyclelab_core::boundary::finite_distance(&y[i], &y[j]))
            .fold(f64::INFINITY, f64::min);
        if min_dist < 1e-6 {
            continue;
        }
        let before = cross_ratio(&x[0], &x[1], &x[2], &x[3]).unwrap();
        let after = cross_ratio(&y[0], &y[1], &y[2], &y[3]).unwrap();
        assert!((after - before).abs() <= 1e-9 * before, "seed {seed}: {before} vs {after}");
        checked += 1;
    }
    assert!(checked > 250);
}

#[test]
fn mobius_on_the_line() {
    let g = random_mobius(17, 1).unwrap();
    let pts: Vec<_> = [-1.0, 0.5, 2.0, 7.0]
        .iter()
        .map(|&c| BoundaryPoint::on_axis(1, c))
        .collect();
    let moved: Vec<_> = pts.iter().map(|p| g.apply(p)).collect();
    let b0 = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
    let b1 = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap();
    assert!((b0 - b1).abs() <= 1e-9 * b0);
}
