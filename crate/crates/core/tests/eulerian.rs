use peakalg::eulerian::{eulerian_basis, is_commutative, EulerianFlavor};
use peakalg::group_algebra::{closure_check, AlgebraElement, Group};
use peakalg::perm_stats::Kind;

fn basis(g: &Group, f: EulerianFlavor) -> Vec<AlgebraElement> {
    eulerian_basis(g, f).unwrap().into_iter().map(|p| p.1).collect()
}

fn closes_and_commutes(g: &Group, f: EulerianFlavor) -> bool {
    let b = basis(g, f);
    closure_check(g, &b).unwrap().closed && is_commutative(g, &b).unwrap()
}

#[test]
fn type_a_peak_number_algebras_close_and_commute() {
    for n in 1..=6 {
        let g = Group::new(n, Kind::A);
        assert!(closes_and_commutes(&g, EulerianFlavor::Interior), "interior n={n}");
        assert!(closes_and_commutes(&g, EulerianFlavor::Left), "left n={n}");
    }
}

#[test]
fn type_b_peak_numbers_close_for_n_at_most_2() {
    for n in 1..=2 {
        assert!(closes_and_commutes(&Group::new(n, Kind::B), EulerianFlavor::TypeB), "n={n}");
    }
}

/// The full claim up to `n = 5`. Fails from `n = 3` on: products of type B
/// peak-number sums leave their span, for the same reason the type B peak-set
/// sums do.
#[test]
#[ignore = "type B peak-number sums are not closed for n >= 3"]
fn type_b_peak_number_algebras_close_and_commute() {
    for n in 1..=5 {
        assert!(closes_and_commutes(&Group::new(n, Kind::B), EulerianFlavor::TypeB), "n={n}");
    }
}

#[test]
fn type_b_peak_numbers_escape_at_n_3() {
    let g = Group::new(3, Kind::B);
    let b = basis(&g, EulerianFlavor::TypeB);
    let r = closure_check(&g, &b).unwrap();
    assert_eq!(r.dim, 3);
    assert!(!r.closed);
    assert!(!r.witness.unwrap().residual.is_empty());
}
