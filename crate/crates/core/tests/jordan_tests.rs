//! Jordan block and spectrum tests: table assembly in both contexts,
//! block counts against characteristic polynomials, the lattice-point
//! shortcuts for the top sizes, the prime fast path, and the spectrum at
//! infinity.

use latsing::equivariant_hodge::{EHodgeTable, Entry, TableMode};
use latsing::error::Error;
use latsing::jordan_spectrum::{
    assemble_infinity, assemble_infinity_mode, assemble_local, assemble_local_parts,
    jordan_blocks, jordan_eigen1_top, jordan_infinity_prime, jordan_top_sizes,
    spectrum_infinity, verify_block_multiplicities, JordanTable, TableChoice,
};
use latsing::newton::{NewtonKind, NewtonPolyhedron, Support};
use latsing::qz::QZ;
use latsing::zeta::{charpoly, zeta_at_infinity, zeta_local};
use num_rational::Ratio;
use proptest::prelude::*;

fn sup(n: usize, pts: &[&[i64]]) -> Support<i64> {
    Support::new(n, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn local(n: usize, pts: &[&[i64]]) -> NewtonPolyhedron<i64> {
    NewtonPolyhedron::local(sup(n, pts)).unwrap()
}

fn at_inf(n: usize, pts: &[&[i64]]) -> NewtonPolyhedron<i64> {
    NewtonPolyhedron::at_infinity(sup(n, pts))
}

fn qz(a: i64, m: i64) -> QZ<i64> {
    QZ::new(a, m)
}

fn known(v: i64) -> Entry<i64> {
    Entry::Known(v)
}

fn pentagon() -> NewtonPolyhedron<i64> {
    at_inf(2, &[&[5, 0], &[5, 1], &[2, 4], &[0, 4]])
}

/// Compare two block tables on the given sizes, restricted to classes
/// accepted by the filter, over the union of their classes.
fn assert_sizes_match(
    a: &JordanTable<i64>,
    b: &JordanTable<i64>,
    sizes: &[usize],
    keep: impl Fn(&QZ<i64>) -> bool,
) {
    let mut classes = a.classes();
    classes.extend(b.classes());
    for c in classes {
        if !keep(&c) {
            continue;
        }
        for &s in sizes {
            assert_eq!(a.count(&c, s), b.count(&c, s), "class {c} size {s}");
        }
    }
}

#[test]
fn smooth_local_table_is_trivial() {
    let np = local(2, &[&[1, 0], &[0, 1]]);
    let t = assemble_local(&np).unwrap();
    let mut expect = EHodgeTable::new(2);
    expect.set_entry(0, 0, QZ::one(), known(1));
    assert_eq!(t, expect);
    let jt = jordan_blocks(&t, 2, NewtonKind::Local).unwrap();
    assert!(jt.iter().next().is_none());
    verify_block_multiplicities(&jt, &charpoly(&zeta_local(&np).unwrap(), 2).unwrap()).unwrap();
}

#[test]
fn cusp_local_table_and_blocks() {
    let np = local(2, &[&[2, 0], &[0, 3]]);
    let (first, _) = assemble_local_parts(&np).unwrap();
    // The pyramid part alone: unit class at (1,1), the two primitive
    // sixth-root classes on the edge entries.
    let mut expect_first = EHodgeTable::new(2);
    expect_first.set_entry(1, 1, QZ::one(), known(1));
    expect_first.set_entry(0, 1, qz(1, 6), known(-1));
    expect_first.set_entry(1, 0, qz(5, 6), known(-1));
    assert_eq!(first, expect_first);
    let t = assemble_local(&np).unwrap();
    let mut expect = EHodgeTable::new(2);
    expect.set_entry(0, 0, QZ::one(), known(1));
    expect.set_entry(0, 1, qz(1, 6), known(-1));
    expect.set_entry(1, 0, qz(5, 6), known(-1));
    assert_eq!(t, expect);
    let jt = jordan_blocks(&t, 2, NewtonKind::Local).unwrap();
    assert_eq!(jt.count(&qz(1, 6), 1), known(1));
    assert_eq!(jt.count(&qz(5, 6), 1), known(1));
    assert_eq!(jt.count(&QZ::one(), 1), known(0));
    assert_eq!(jt.count(&qz(1, 6), 2), known(0));
    assert_eq!(jt.is_semisimple(), Some(true));
    verify_block_multiplicities(&jt, &charpoly(&zeta_local(&np).unwrap(), 2).unwrap()).unwrap();
    // The eigenvalue-1 skeleton count: the only skeleton point in the open
    // quadrant would have to lie on a compact face; there is none, matching
    // the absence of unit-eigenvalue blocks.
    let e1 = jordan_eigen1_top(&np).unwrap();
    assert_eq!(e1.count(&QZ::one(), 1), known(0));
}

#[test]
fn cusp_at_infinity_table_and_spectrum() {
    let np = at_inf(2, &[&[2, 0], &[0, 3]]);
    let t = assemble_infinity(&np).unwrap();
    let mut expect = EHodgeTable::new(2);
    expect.set_entry(1, 1, QZ::one(), known(1));
    expect.set_entry(1, 0, qz(1, 6), known(-1));
    expect.set_entry(0, 1, qz(5, 6), known(-1));
    assert_eq!(t, expect);
    let jt = jordan_blocks(&t, 2, NewtonKind::AtInfinity).unwrap();
    assert_eq!(jt.count(&qz(1, 6), 1), known(1));
    assert_eq!(jt.count(&qz(5, 6), 1), known(1));
    assert_eq!(jt.count(&QZ::one(), 1), known(0));
    verify_block_multiplicities(&jt, &charpoly(&zeta_at_infinity(&np).unwrap(), 2).unwrap())
        .unwrap();
    let sp = spectrum_infinity(&np).unwrap();
    assert_eq!(sp.coeff(&Ratio::new(5, 6)), 1);
    assert_eq!(sp.coeff(&Ratio::new(7, 6)), 1);
    assert_eq!(sp.terms().len(), 2);
    assert_eq!(sp.to_string(), "t^(5/6) + t^(7/6)");
}

#[test]
fn node_and_smooth_spectra_at_infinity() {
    let node = at_inf(2, &[&[2, 0], &[0, 2]]);
    let sp = spectrum_infinity(&node).unwrap();
    assert_eq!(sp.terms().len(), 1);
    assert_eq!(sp.coeff(&Ratio::from_integer(1)), 1);
    let smooth = at_inf(2, &[&[1, 0], &[0, 1]]);
    let sp = spectrum_infinity(&smooth).unwrap();
    assert!(sp.is_empty());
    assert_eq!(sp.to_string(), "0");
}

#[test]
fn pentagon_jordan_blocks() {
    let np = pentagon();
    let t = assemble_infinity(&np).unwrap();
    assert!(!t.has_undetermined());
    assert_eq!(t.entry(0, 0, &QZ::one()), known(-5));
    assert_eq!(t.entry(1, 1, &QZ::one()), known(1));
    let jt = jordan_blocks(&t, 2, NewtonKind::AtInfinity).unwrap();
    // Unit eigenvalue: five one-dimensional blocks.
    assert_eq!(jt.count(&QZ::one(), 1), known(5));
    assert_eq!(jt.count(&QZ::one(), 2), known(0));
    // Eigenvalue -1: one 2x2 block and two 1x1 blocks.
    assert_eq!(jt.count(&qz(1, 2), 2), known(1));
    assert_eq!(jt.count(&qz(1, 2), 1), known(2));
    // Everything else is semisimple.
    for (a, c) in [
        (qz(1, 4), 1),
        (qz(3, 4), 1),
        (qz(1, 6), 3),
        (qz(5, 6), 3),
        (qz(1, 3), 3),
        (qz(2, 3), 3),
    ] {
        assert_eq!(jt.count(&a, 1), known(c), "class {a}");
        assert_eq!(jt.count(&a, 2), known(0), "class {a}");
    }
    verify_block_multiplicities(&jt, &charpoly(&zeta_at_infinity(&np).unwrap(), 2).unwrap())
        .unwrap();

    // The lattice-point shortcuts agree with the assembled route.
    let top = jordan_top_sizes(&np).unwrap();
    assert_eq!(top.count(&qz(1, 2), 2), known(1));
    assert_eq!(top.count(&qz(1, 2), 1), known(2));
    assert_sizes_match(&jt, &top, &[2, 1], |a| !a.is_one());
    let e1 = jordan_eigen1_top(&np).unwrap();
    assert_eq!(e1.count(&QZ::one(), 1), known(5));
    assert_sizes_match(&jt, &e1, &[1], |a| a.is_one());
}

#[test]
fn pentagon_spectrum_mass_and_symmetry() {
    let np = pentagon();
    let sp = spectrum_infinity(&np).unwrap();
    let cp = charpoly(&zeta_at_infinity(&np).unwrap(), 2).unwrap();
    // One spectral number per eigenvalue of the monodromy at infinity.
    assert_eq!(sp.terms().values().sum::<i64>(), cp.degree());
    assert!(sp.terms().values().all(|c| *c > 0));
    let two = Ratio::from_integer(2);
    for (e, c) in sp.terms() {
        assert_eq!(sp.coeff(&(two - e)), *c);
    }
}

#[test]
fn forced_modes_agree_with_auto() {
    for np in [pentagon(), at_inf(2, &[&[2, 0], &[0, 3]])] {
        let auto = assemble_infinity(&np).unwrap();
        let completion =
            assemble_infinity_mode(&np, TableChoice::Force(TableMode::Completion)).unwrap();
        let pseudo =
            assemble_infinity_mode(&np, TableChoice::Force(TableMode::PseudoPrime)).unwrap();
        assert_eq!(auto, completion);
        assert_eq!(auto, pseudo);
    }
}

#[test]
fn prime_fast_path_matches_assembled_route() {
    for np in [
        pentagon(),
        at_inf(2, &[&[2, 0], &[0, 3]]),
        at_inf(2, &[&[2, 0], &[0, 2]]),
        at_inf(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]),
    ] {
        let n = np.n();
        let fast = jordan_infinity_prime(&np).unwrap();
        let t = assemble_infinity(&np).unwrap();
        let full = jordan_blocks(&t, n, NewtonKind::AtInfinity).unwrap();
        let sizes: Vec<usize> = (1..=n).collect();
        assert_sizes_match(&full, &fast, &sizes, |a| !a.is_one());
        // The fast path never reports unit-eigenvalue blocks.
        assert!(fast.classes().iter().all(|a| !a.is_one()));
    }
}

#[test]
fn square_face_pyramid_is_not_prime() {
    // The 2-face at infinity spanned by (2,0,0), (0,2,0), (2,0,2), (0,2,2)
    // is a parallelogram, so the pyramid over it has a non-simplicial apex.
    let np = at_inf(3, &[&[2, 0, 0], &[0, 2, 0], &[2, 0, 2], &[0, 2, 2], &[0, 0, 2]]);
    assert!(matches!(jordan_infinity_prime(&np), Err(Error::Precondition(_))));
    // The assembled route still works.
    let t = assemble_infinity(&np).unwrap();
    let jt = jordan_blocks(&t, 3, NewtonKind::AtInfinity).unwrap();
    verify_block_multiplicities(&jt, &charpoly(&zeta_at_infinity(&np).unwrap(), 3).unwrap())
        .unwrap();
}

#[test]
fn brieskorn_local_blocks_are_semisimple() {
    let np = local(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
    let t = assemble_local(&np).unwrap();
    assert!(!t.has_undetermined());
    let jt = jordan_blocks(&t, 3, NewtonKind::Local).unwrap();
    assert_eq!(jt.is_semisimple(), Some(true));
    // The eight primitive 30th roots of unity, once each.
    let cp = charpoly(&zeta_local(&np).unwrap(), 3).unwrap();
    verify_block_multiplicities(&jt, &cp).unwrap();
    for a in [qz(1, 30), qz(7, 30), qz(29, 30)] {
        assert_eq!(jt.count(&a, 1), known(1), "class {a}");
    }
    assert_eq!(jt.count(&qz(1, 6), 1), known(0));
    assert_eq!(jt.count(&QZ::one(), 1), known(0));
    // No interior vertices or edges, so the shortcut tables are trivial.
    assert!(jordan_top_sizes(&np).unwrap().iter().next().is_none());
    assert!(jordan_eigen1_top(&np).unwrap().iter().next().is_none());
}

#[test]
fn unit_eigenvalue_block_from_inner_vertex() {
    // x^3 + y^3 + x*y has Milnor number 1 with eigenvalue 1.
    let np = local(2, &[&[3, 0], &[0, 3], &[1, 1]]);
    let t = assemble_local(&np).unwrap();
    let jt = jordan_blocks(&t, 2, NewtonKind::Local).unwrap();
    assert_eq!(jt.count(&QZ::one(), 1), known(1));
    assert_eq!(jt.total_multiplicity(&QZ::one()), known(1));
    verify_block_multiplicities(&jt, &charpoly(&zeta_local(&np).unwrap(), 2).unwrap()).unwrap();
    let e1 = jordan_eigen1_top(&np).unwrap();
    assert_eq!(e1.count(&QZ::one(), 1), known(1));
}

#[test]
fn one_variable_tables_and_spectrum() {
    let m = 4i64;
    let loc = local(1, &[&[m]]);
    let t = assemble_local(&loc).unwrap();
    for a in QZ::all_with_denominator(&m) {
        assert_eq!(t.entry(0, 0, &a), known(1), "class {a}");
    }
    let jt = jordan_blocks(&t, 1, NewtonKind::Local).unwrap();
    for j in 1..m {
        assert_eq!(jt.count(&qz(j, m), 1), known(1));
    }
    assert_eq!(jt.count(&QZ::one(), 1), known(0));
    verify_block_multiplicities(&jt, &charpoly(&zeta_local(&loc).unwrap(), 1).unwrap()).unwrap();

    let inf = at_inf(1, &[&[m]]);
    let t = assemble_infinity(&inf).unwrap();
    for a in QZ::all_with_denominator(&m) {
        assert_eq!(t.entry(0, 0, &a), known(1), "class {a}");
    }
    let jt = jordan_blocks(&t, 1, NewtonKind::AtInfinity).unwrap();
    for j in 1..m {
        assert_eq!(jt.count(&qz(j, m), 1), known(1));
    }
    assert_eq!(jt.count(&QZ::one(), 1), known(0));
    verify_block_multiplicities(&jt, &charpoly(&zeta_at_infinity(&inf).unwrap(), 1).unwrap())
        .unwrap();
    let top = jordan_top_sizes(&inf).unwrap();
    assert_sizes_match(&jt, &top, &[1], |a| !a.is_one());

    let sp = spectrum_infinity(&inf).unwrap();
    assert_eq!(sp.terms().len(), 3);
    for j in 1..m {
        assert_eq!(sp.coeff(&Ratio::new(j, m)), 1);
    }
}

#[test]
fn four_variable_quadric_cone() {
    let np = local(
        4,
        &[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]],
    );
    let t = assemble_local(&np).unwrap();
    let jt = jordan_blocks(&t, 4, NewtonKind::Local).unwrap();
    assert_eq!(jt.is_semisimple(), Some(true));
    let cp = charpoly(&zeta_local(&np).unwrap(), 4).unwrap();
    assert_eq!(cp.degree(), 1);
    verify_block_multiplicities(&jt, &cp).unwrap();
}

#[test]
fn five_dim_diagonal_quadric_at_infinity() {
    let pts: Vec<Vec<i64>> = (0..5)
        .map(|i| {
            let mut p = vec![0i64; 5];
            p[i] = 2;
            p
        })
        .collect();
    let refs: Vec<&[i64]> = pts.iter().map(|p| p.as_slice()).collect();
    let np = at_inf(5, &refs);
    let t = assemble_infinity(&np).unwrap();
    // The unit class of the five-dimensional pyramid is not fully
    // determined, but every nontrivial class is.
    for ((_, _, a), e) in t.iter() {
        if !a.is_one() {
            assert!(e.known().is_some());
        }
    }
    let jt = jordan_blocks(&t, 5, NewtonKind::AtInfinity).unwrap();
    let fast = jordan_infinity_prime(&np).unwrap();
    let sizes: Vec<usize> = (1..=5).collect();
    assert_sizes_match(&jt, &fast, &sizes, |a| !a.is_one());
    verify_block_multiplicities(&jt, &charpoly(&zeta_at_infinity(&np).unwrap(), 5).unwrap())
        .unwrap();
    // No vertex or edge meets the open orthant.
    assert!(jordan_top_sizes(&np).unwrap().iter().next().is_none());
    assert_eq!(jt.count(&qz(1, 2), 5), known(0));
    assert_eq!(jt.count(&qz(1, 2), 4), known(0));
}

#[test]
fn wrong_kind_and_nonconvenient_inputs_are_rejected() {
    let loc = local(2, &[&[2, 0], &[0, 3]]);
    let inf = at_inf(2, &[&[2, 0], &[0, 3]]);
    assert!(matches!(assemble_infinity(&loc), Err(Error::Precondition(_))));
    assert!(matches!(assemble_local(&inf), Err(Error::Precondition(_))));
    assert!(matches!(spectrum_infinity(&loc), Err(Error::Precondition(_))));
    let missing = at_inf(2, &[&[2, 0]]);
    assert!(matches!(assemble_infinity(&missing), Err(Error::NotConvenient(_))));
    assert!(matches!(spectrum_infinity(&missing), Err(Error::NotConvenient(_))));
    assert!(matches!(jordan_top_sizes(&missing), Err(Error::NotConvenient(_))));
    let missing_local = NewtonPolyhedron::local(sup(2, &[&[2, 0]])).unwrap();
    assert!(matches!(assemble_local(&missing_local), Err(Error::NotConvenient(_))));
}

#[test]
fn corrupted_tables_are_detected() {
    // A lone negative edge entry forces a negative block count.
    let mut t = EHodgeTable::<i64>::new(2);
    t.set_entry(1, 0, qz(1, 2), known(1));
    assert!(matches!(
        jordan_blocks(&t, 2, NewtonKind::AtInfinity),
        Err(Error::Inconsistent(_))
    ));
    // An entry beyond the monodromy size bound.
    let mut t = EHodgeTable::<i64>::new(2);
    t.set_entry(2, 2, qz(1, 2), known(-1));
    assert!(matches!(
        jordan_blocks(&t, 2, NewtonKind::AtInfinity),
        Err(Error::Inconsistent(_))
    ));
}

fn arb_support(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let axes = proptest::collection::vec(1i64..=4, n);
    let extra = proptest::collection::vec(proptest::collection::vec(0i64..=4, n), 0..3);
    (axes, extra).prop_map(move |(ax, ex)| {
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for (i, m) in ax.iter().enumerate() {
            let mut p = vec![0i64; n];
            p[i] = *m;
            pts.push(p);
        }
        for e in ex {
            if e.iter().any(|c| *c > 0) {
                pts.push(e);
            }
        }
        pts
    })
}

fn any_support() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    prop_oneof![
        arb_support(2).prop_map(|p| (2, p)),
        arb_support(3).prop_map(|p| (3, p)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn random_infinity_consistency((n, pts) in any_support()) {
        let np = NewtonPolyhedron::at_infinity(Support::new(n, &pts).unwrap());
        let t = assemble_infinity(&np).unwrap();
        let jt = jordan_blocks(&t, n, NewtonKind::AtInfinity).unwrap();
        let cp = charpoly(&zeta_at_infinity(&np).unwrap(), n).unwrap();
        verify_block_multiplicities(&jt, &cp).unwrap();
        let top = jordan_top_sizes(&np).unwrap();
        let top_sizes: Vec<usize> = if n >= 2 { vec![n, n - 1] } else { vec![n] };
        assert_sizes_match(&jt, &top, &top_sizes, |a| !a.is_one());
        let e1 = jordan_eigen1_top(&np).unwrap();
        let mut unit_sizes = vec![n - 1];
        if n >= 3 {
            unit_sizes.push(n - 2);
        }
        assert_sizes_match(&jt, &e1, &unit_sizes, |a| a.is_one());
        let sp = spectrum_infinity(&np).unwrap();
        prop_assert!(sp.terms().values().all(|c| *c > 0));
        prop_assert_eq!(sp.terms().values().sum::<i64>(), cp.degree());
    }

    #[test]
    fn random_local_consistency((n, pts) in any_support()) {
        let np = NewtonPolyhedron::local(Support::new(n, &pts).unwrap()).unwrap();
        let t = assemble_local(&np).unwrap();
        let jt = jordan_blocks(&t, n, NewtonKind::Local).unwrap();
        let cp = charpoly(&zeta_local(&np).unwrap(), n).unwrap();
        verify_block_multiplicities(&jt, &cp).unwrap();
        let top = jordan_top_sizes(&np).unwrap();
        let top_sizes: Vec<usize> = if n >= 2 { vec![n, n - 1] } else { vec![n] };
        assert_sizes_match(&jt, &top, &top_sizes, |a| !a.is_one());
        let e1 = jordan_eigen1_top(&np).unwrap();
        let mut unit_sizes = vec![n - 1];
        if n >= 3 {
            unit_sizes.push(n - 2);
        }
        assert_sizes_match(&jt, &e1, &unit_sizes, |a| a.is_one());
    }
}
