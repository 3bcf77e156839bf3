//! Printed values, checked one by one.

mod common;

use common::{q, qf};
use num_bigint::BigInt;
use rhpp::lattice::{DiscriminantGroup, ExtendedLattice, GramLattice};
use rhpp::obstruction::{epsilon3, equal_rank_embed_test, i1m_form, square_index_test};
use rhpp::padic::{DiagonalForm, Place};
use rhpp::singularity::{ks2_star, ks_formulas, QuotientSingularity, StarRow};
use rhpp::spec::parse_lattice;

fn lattice(spec: &str) -> GramLattice {
    parse_lattice(spec).unwrap().lattice()
}

fn eps3_of(spec: &str) -> i8 {
    epsilon3(&lattice(spec).diagonalize().unwrap())
}

fn eps3_extended(spec: &str) -> i8 {
    let ext = ExtendedLattice::by_canonical_class(&lattice(spec)).unwrap();
    epsilon3(&ext.lattice().unwrap().diagonalize().unwrap())
}

#[test]
fn odd_unimodular_epsilon() {
    for m in 1..=30 {
        let f = i1m_form(m);
        for p in [3u64, 5, 7, 11] {
            assert_eq!(f.epsilon(Place::Prime(p)).unwrap(), 1, "I_(1,{m}) at {p}");
        }
    }
}

#[test]
fn e8_diagonal_form() {
    let f = DiagonalForm::new(vec![
        q(-2),
        qf(-3, 2),
        qf(-4, 3),
        qf(-5, 4),
        qf(-6, 5),
        qf(-7, 6),
        qf(-8, 7),
        qf(-1, 8),
    ])
    .unwrap();
    assert_eq!(f.product(), q(1));
    assert_eq!(epsilon3(&f), 1);
    assert_eq!(eps3_of("E8"), 1);
    assert_eq!(eps3_of("H"), 1);
    assert_eq!(eps3_of("H+E8"), 1);
    assert_eq!(lattice("E8").det(), BigInt::from(1));
}

#[test]
fn epsilon_of_excluded_cyclic_cases() {
    assert_eq!(lattice("3A1+A2+A4").det(), BigInt::from(-(8 * 3 * 5)));
    assert_eq!(eps3_of("3A1+A2+A4"), -1);
    assert_eq!(lattice("4A1+A5").det(), BigInt::from(-(16 * 6)));
    assert_eq!(eps3_of("4A1+A5"), -1);
    assert_eq!(eps3_extended("3A1+A2+diag(-5)"), -1);
    assert_eq!(eps3_extended("3A1+2A2"), -1);
}

#[test]
fn equal_rank_obstructions_at_three() {
    for spec in ["3A1+A2+A4", "4A1+A5"] {
        let v = equal_rank_embed_test(&lattice(spec)).unwrap();
        assert!(v.is_obstructed(), "{spec}");
        assert_eq!(v.failing_place(), Some(Place::Prime(3)), "{spec}");
    }
}

#[test]
fn square_test_determinant_540() {
    let ext = ExtendedLattice::by_canonical_class(&lattice("2A1+3diag(-3)")).unwrap();
    assert_eq!(ext.lattice().unwrap().det(), BigInt::from(-540));
    assert!(square_index_test(&ext).unwrap().is_obstructed());
}

#[test]
fn six_nodes_determinant_192() {
    let ext = ExtendedLattice::by_canonical_class(&lattice("6A1")).unwrap();
    assert_eq!(ext.ks2(), q(3));
    // signature (1,6), so the sign is +
    assert_eq!(ext.lattice().unwrap().det(), BigInt::from(192));
}

#[test]
fn table_spot_values() {
    assert_eq!(StarRow::matching(&[(2, 1), (3, 1), (4, 3)]).unwrap().id, "O2");
    assert_eq!(ks2_star("O2", 2).unwrap(), qf(-2, 5));
    assert_eq!(StarRow::matching(&[(2, 1), (3, 2), (5, 2)]).unwrap().id, "I4");
    assert_eq!(ks2_star("I4", 2).unwrap(), qf(-3, 13));
    assert_eq!(ks2_star("T1", 3).unwrap(), qf(-1, 7));
    assert_eq!(ks2_star("I2", 2).unwrap(), qf(-3, 7));
}

#[test]
fn table_claims_hold_up_to_100() {
    for f in ks_formulas() {
        for b in 2..=100 {
            let v = f.eval(b);
            for c in f.claims.iter().filter(|c| c.applies(b)) {
                assert!(c.holds(&v), "{} at b = {b}: {v}", f.row);
            }
        }
    }
}

#[test]
fn d5_discriminant_form() {
    let g = DiscriminantGroup::of(&lattice("4A1+D5")).unwrap();
    assert_eq!(g.invariant_factors, vec![2, 2, 2, 2, 4]);
    assert_eq!(g.order(), 64);
    let d5 = DiscriminantGroup::of(&lattice("D5")).unwrap();
    assert_eq!(d5.q_values.as_ref().unwrap(), &vec![qf(3, 4)]);
    // -5/4 = 3/4 mod 2
    assert_eq!(qf(-5, 4) + q(2), qf(3, 4));
}

#[test]
fn d5_point_is_the_b2_dihedral_arm_22() {
    let p = QuotientSingularity::dihedral(2, "2,2".parse().unwrap()).unwrap();
    assert_eq!(p.lattice_name(), "D5");
    assert_eq!(p.group_order(), BigInt::from(12));
    let (_, dp2) = p.discrepancy_and_dp2().unwrap();
    assert_eq!(dp2, q(0));
}
