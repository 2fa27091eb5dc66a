//! Subdivision and weighted Ehrhart tests: toric g-polynomials, the
//! weight function and its classes, link and local h-polynomials,
//! weighted h*/l*-polynomials in one and two variables, the equivariant
//! Hodge-Deligne polynomial, and the full Jordan table of the local
//! monodromy, cross-checked against the assembled-table route.

use latsing::equivariant_hodge::{EHodgeTable, Entry};
use latsing::error::Error;
use latsing::jordan_spectrum::{assemble_local, jordan_blocks, jordan_top_sizes, JordanTable};
use latsing::lattice_geom::Polytope;
use latsing::newton::{NewtonKind, NewtonPolyhedron, Support};
use latsing::poly::{BiPoly, Poly};
use latsing::qz::QZ;
use latsing::stapledon::{
    equivariant_e, jordan_full, subdivision_from_newton, toric_g, toric_g_interval,
    PolySubdivision,
};
use num_rational::Ratio;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn sup(n: usize, pts: &[&[i64]]) -> Support<i64> {
    Support::new(n, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn local(n: usize, pts: &[&[i64]]) -> NewtonPolyhedron<i64> {
    NewtonPolyhedron::local(sup(n, pts)).unwrap()
}

fn subdiv(n: usize, pts: &[&[i64]]) -> PolySubdivision<i64> {
    subdivision_from_newton(&local(n, pts)).unwrap()
}

fn ptope(n: usize, pts: &[&[i64]]) -> Polytope<i64> {
    Polytope::new(n, &pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn qz(a: i64, m: i64) -> QZ<i64> {
    QZ::new(a, m)
}

fn known(v: i64) -> Entry<i64> {
    Entry::Known(v)
}

fn poly(cs: &[i64]) -> Poly<i64> {
    Poly::from_coeffs(cs.to_vec())
}

fn cell(s: &PolySubdivision<i64>, pts: &[&[i64]]) -> usize {
    s.cell_id(&pts.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

/// Compare the Jordan tables on every nontrivial class and every size.
fn assert_tables_match_nontrivial(a: &JordanTable<i64>, b: &JordanTable<i64>, n: usize) {
    let mut classes = a.classes();
    classes.extend(b.classes());
    for c in classes {
        if c.is_one() {
            continue;
        }
        for s in 1..=n {
            assert_eq!(a.count(&c, s), b.count(&c, s), "class {c} size {s}");
        }
    }
}

/// The equivariant E-polynomial must reproduce the assembled local table
/// entry by entry on every nontrivial class.
fn assert_e_matches_table(sub: &PolySubdivision<i64>, t: &EHodgeTable<i64>, n: usize) {
    let mut classes: BTreeSet<QZ<i64>> = sub.classes().into_iter().collect();
    classes.extend(t.classes());
    for cl in classes {
        if cl.is_one() {
            continue;
        }
        let ep = sub.e_polynomial(&cl).unwrap();
        for ((i, j), _) in ep.terms() {
            assert!(*i >= 0 && *j >= 0 && *i <= n as i64 && *j <= n as i64, "class {cl}");
        }
        for p in 0..=n {
            for q in 0..=n {
                assert_eq!(
                    t.entry(p, q, &cl),
                    known(ep.coeff(p as i64, q as i64)),
                    "class {cl} entry ({p}, {q})"
                );
            }
        }
    }
}

#[test]
fn toric_g_of_simplices_and_polygons() {
    let point = ptope(1, &[&[0]]);
    assert_eq!(toric_g(&point).unwrap(), poly(&[1]));
    let segment = ptope(1, &[&[0], &[2]]);
    assert_eq!(toric_g(&segment).unwrap(), poly(&[1]));
    let triangle = ptope(2, &[&[0, 0], &[2, 0], &[0, 3]]);
    assert_eq!(toric_g(&triangle).unwrap(), poly(&[1]));
    let square = ptope(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    assert_eq!(toric_g(&square).unwrap(), poly(&[1, 1]));
    let pentagon = ptope(2, &[&[0, 0], &[1, 0], &[2, 1], &[1, 2], &[0, 1]]);
    assert_eq!(toric_g(&pentagon).unwrap(), poly(&[1, 2]));
    let hexagon = ptope(2, &[&[0, 0], &[1, 0], &[2, 1], &[2, 2], &[1, 2], &[0, 1]]);
    assert_eq!(toric_g(&hexagon).unwrap(), poly(&[1, 3]));
}

#[test]
fn toric_g_in_three_dimensions_and_duality() {
    let cube = ptope(
        3,
        &[
            &[0, 0, 0],
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, 1, 0],
            &[1, 0, 1],
            &[0, 1, 1],
            &[1, 1, 1],
        ],
    );
    assert_eq!(toric_g(&cube).unwrap(), poly(&[1, 4]));
    let octa = ptope(
        3,
        &[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
    );
    assert_eq!(toric_g(&octa).unwrap(), poly(&[1, 2]));
    // The order-reversed full interval is the face lattice of the dual.
    let e = cube.empty_face_id();
    let t = cube.improper_face_id();
    assert_eq!(toric_g_interval(&cube, e, t, true).unwrap(), poly(&[1, 2]));
    let e = octa.empty_face_id();
    let t = octa.improper_face_id();
    assert_eq!(toric_g_interval(&octa, e, t, true).unwrap(), poly(&[1, 4]));
}

#[test]
fn toric_g_intervals_and_errors() {
    let square = ptope(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let e = square.empty_face_id();
    let t = square.improper_face_id();
    // A one-element interval and a reversed full interval (self-dual).
    assert_eq!(toric_g_interval(&square, t, t, false).unwrap(), poly(&[1]));
    assert_eq!(toric_g_interval(&square, e, t, true).unwrap(), poly(&[1, 1]));
    // Vertex-to-top intervals have rank two, hence trivial g.
    let v = square
        .faces()
        .iter()
        .position(|f| f.dim == 0)
        .unwrap();
    assert_eq!(toric_g_interval(&square, v, t, false).unwrap(), poly(&[1]));
    assert_eq!(toric_g_interval(&square, v, t, true).unwrap(), poly(&[1]));
    // Two distinct vertices are not comparable.
    let w = square
        .faces()
        .iter()
        .enumerate()
        .position(|(i, f)| f.dim == 0 && i != v)
        .unwrap();
    assert!(matches!(
        toric_g_interval(&square, v, w, false),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        toric_g_interval(&square, w, v, false),
        Err(Error::Precondition(_))
    ));
    let out = square.faces().len();
    assert!(matches!(
        toric_g_interval(&square, e, out, false),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn cusp_subdivision_structure() {
    let s = subdiv(2, &[&[2, 0], &[0, 3]]);
    assert_eq!(s.n(), 2);
    // Empty cell, origin, two boundary vertices, the boundary edge, two
    // vertex cones, and the full cone.
    assert_eq!(s.cell_count(), 8);
    assert_eq!(s.maximal_cell_count(), 1);
    assert_eq!(s.base().dim(), 2);
    assert_eq!(s.classes().len(), 6);
    assert_eq!(s.cell_dim(s.empty_cell_id()).unwrap(), -1);
    let max = cell(&s, &[&[0, 0], &[2, 0], &[0, 3]]);
    assert_eq!(s.cell_dim(max).unwrap(), 2);
    assert_eq!(
        s.cell_vertices(max).unwrap(),
        &[vec![0, 0], vec![0, 3], vec![2, 0]]
    );
    assert!(s.cell_id(&[vec![1, 1]]).is_none());

    assert_eq!(s.nu(&[0, 0]).unwrap(), Ratio::from_integer(1));
    assert_eq!(s.nu(&[1, 1]).unwrap(), Ratio::new(1, 6));
    assert_eq!(s.nu(&[2, 0]).unwrap(), Ratio::from_integer(0));
    assert_eq!(s.nu(&[0, 1]).unwrap(), Ratio::new(2, 3));
    assert_eq!(s.nu_class(&[1, 1]).unwrap(), qz(1, 6));
    assert_eq!(s.nu_class(&[2, 0]).unwrap(), QZ::one());
    assert!(matches!(s.nu(&[3, 3]), Err(Error::Precondition(_))));
    assert!(matches!(s.nu(&[-1, 0]), Err(Error::Precondition(_))));
    assert!(matches!(s.nu(&[1]), Err(Error::DimensionMismatch(_))));
    assert!(matches!(s.nu_class(&[1, 2, 3]), Err(Error::DimensionMismatch(_))));
}

#[test]
fn cusp_link_and_local_h() {
    let s = subdiv(2, &[&[2, 0], &[0, 3]]);
    let max = cell(&s, &[&[0, 0], &[2, 0], &[0, 3]]);
    let edge = cell(&s, &[&[2, 0], &[0, 3]]);
    let xcone = cell(&s, &[&[0, 0], &[2, 0]]);
    assert_eq!(s.link_h(max).unwrap(), poly(&[1]));
    assert_eq!(s.link_h(s.empty_cell_id()).unwrap(), poly(&[1]));
    assert_eq!(s.link_h(edge).unwrap(), poly(&[1]));
    assert_eq!(s.local_h(max).unwrap(), poly(&[1]));
    assert_eq!(s.local_h(s.empty_cell_id()).unwrap(), Poly::zero());
    assert_eq!(s.local_h(edge).unwrap(), Poly::zero());
    assert_eq!(s.local_h(xcone).unwrap(), Poly::zero());
    assert!(matches!(s.link_h(99), Err(Error::Precondition(_))));
    assert!(matches!(s.local_h(99), Err(Error::Precondition(_))));
    assert!(matches!(s.cell_dim(99), Err(Error::Precondition(_))));
}

#[test]
fn smooth_subdivision_is_trivial() {
    let s = subdiv(2, &[&[1, 0], &[0, 1]]);
    assert_eq!(s.cell_count(), 8);
    assert_eq!(s.maximal_cell_count(), 1);
    // The only weight class is trivial, so nothing survives at nontrivial
    // classes.
    assert_eq!(s.classes(), vec![QZ::one()]);
    assert_eq!(s.link_h(s.empty_cell_id()).unwrap(), poly(&[1]));
    assert!(s.e_polynomial(&qz(1, 2)).unwrap().is_zero());
    assert!(s.jordan_table().unwrap().classes().is_empty());
}

#[test]
fn cusp_weighted_polynomials() {
    let s = subdiv(2, &[&[2, 0], &[0, 3]]);
    let base = s.base();
    assert_eq!(s.weighted_hstar(base, &QZ::one()).unwrap(), poly(&[1]));
    assert_eq!(s.weighted_hstar(base, &qz(1, 6)).unwrap(), poly(&[0, 1]));
    assert_eq!(s.weighted_hstar(base, &qz(1, 2)).unwrap(), poly(&[0, 1]));
    assert_eq!(s.weighted_lstar(base, &qz(1, 6)).unwrap(), poly(&[0, 1]));
    assert_eq!(s.weighted_lstar(base, &qz(5, 6)).unwrap(), poly(&[0, 0, 1]));
    assert_eq!(s.weighted_lstar(base, &QZ::one()).unwrap(), Poly::zero());
    assert_eq!(s.weighted_lstar(base, &qz(1, 2)).unwrap(), Poly::zero());
    // The x-axis cone on its own: the midpoint carries the half class.
    let xcone = ptope(2, &[&[0, 0], &[2, 0]]);
    assert_eq!(s.weighted_hstar(&xcone, &qz(1, 2)).unwrap(), poly(&[0, 1]));
    assert_eq!(s.weighted_hstar(&xcone, &QZ::one()).unwrap(), poly(&[1]));
    assert_eq!(s.weighted_lstar(&xcone, &qz(1, 2)).unwrap(), poly(&[0, 1]));
    assert_eq!(s.weighted_lstar(&xcone, &QZ::one()).unwrap(), Poly::zero());
    // The boundary edge carries only the trivial class.
    let edge = ptope(2, &[&[2, 0], &[0, 3]]);
    assert_eq!(s.weighted_hstar(&edge, &QZ::one()).unwrap(), poly(&[1]));
    assert_eq!(s.weighted_hstar(&edge, &qz(1, 6)).unwrap(), Poly::zero());
    // A polytope leaving the region is rejected; so is a dimension clash.
    let far = ptope(2, &[&[0, 0], &[3, 0]]);
    assert!(matches!(
        s.weighted_hstar(&far, &QZ::one()),
        Err(Error::Precondition(_))
    ));
    let low = ptope(1, &[&[0], &[1]]);
    assert!(matches!(
        s.weighted_lstar(&low, &QZ::one()),
        Err(Error::DimensionMismatch(_))
    ));
}

#[test]
fn cusp_mixed_polynomials_and_e() {
    let s = subdiv(2, &[&[2, 0], &[0, 3]]);
    assert_eq!(s.weighted_hstar_mixed(&QZ::one()).unwrap(), BiPoly::one());
    assert_eq!(
        s.weighted_hstar_mixed(&qz(1, 2)).unwrap(),
        BiPoly::monomial(1, 1, 1)
    );
    assert_eq!(
        s.weighted_lstar_mixed(&qz(1, 6)).unwrap(),
        BiPoly::monomial(1, 1, 2)
    );
    assert_eq!(
        s.weighted_lstar_mixed(&qz(5, 6)).unwrap(),
        BiPoly::monomial(1, 2, 1)
    );
    assert!(s.weighted_lstar_mixed(&QZ::one()).unwrap().is_zero());
    assert_eq!(s.e_polynomial(&qz(1, 6)).unwrap(), BiPoly::monomial(-1, 0, 1));
    assert_eq!(s.e_polynomial(&qz(5, 6)).unwrap(), BiPoly::monomial(-1, 1, 0));
    assert!(s.e_polynomial(&qz(1, 2)).unwrap().is_zero());
    assert!(matches!(s.e_polynomial(&QZ::one()), Err(Error::Precondition(_))));
    let np = local(2, &[&[2, 0], &[0, 3]]);
    assert_eq!(
        equivariant_e(&np, &qz(1, 6)).unwrap(),
        BiPoly::monomial(-1, 0, 1)
    );
    assert!(matches!(equivariant_e(&np, &QZ::one()), Err(Error::Precondition(_))));
}

#[test]
fn cusp_jordan_table() {
    let np = local(2, &[&[2, 0], &[0, 3]]);
    let jf = jordan_full(&np).unwrap();
    assert_eq!(jf.classes(), vec![qz(1, 6), qz(5, 6)]);
    assert_eq!(jf.count(&qz(1, 6), 1), known(1));
    assert_eq!(jf.count(&qz(5, 6), 1), known(1));
    assert_eq!(jf.count(&qz(1, 6), 2), known(0));
    assert_eq!(jf.is_semisimple(), Some(true));
    let t = assemble_local(&np).unwrap();
    let jb = jordan_blocks(&t, 2, NewtonKind::Local).unwrap();
    assert_tables_match_nontrivial(&jf, &jb, 2);
    let s = subdivision_from_newton(&np).unwrap();
    assert_e_matches_table(&s, &t, 2);
}

#[test]
fn node_concentrates_at_the_trivial_class() {
    // x^2 + y^2: the monodromy eigenvalue is trivial, so the nontrivial
    // weighted data cancels exactly.
    let s = subdiv(2, &[&[2, 0], &[0, 2]]);
    let base = s.base();
    assert_eq!(s.weighted_hstar(base, &qz(1, 2)).unwrap(), poly(&[0, 2]));
    assert_eq!(s.weighted_lstar(base, &qz(1, 2)).unwrap(), Poly::zero());
    let edge = ptope(2, &[&[2, 0], &[0, 2]]);
    assert_eq!(s.weighted_hstar(&edge, &QZ::one()).unwrap(), poly(&[1, 1]));
    assert_eq!(s.weighted_hstar(&edge, &qz(1, 2)).unwrap(), Poly::zero());
    assert!(s.e_polynomial(&qz(1, 2)).unwrap().is_zero());
    assert!(s.jordan_table().unwrap().classes().is_empty());
}

#[test]
fn hull_vertex_on_the_boundary_edge() {
    // (1, 1) lies on the segment between (2, 0) and (0, 2): one compact
    // facet, one maximal cell.
    let s = subdiv(2, &[&[2, 0], &[1, 1], &[0, 2]]);
    assert_eq!(s.cell_count(), 8);
    assert_eq!(s.maximal_cell_count(), 1);
}

#[test]
fn dipping_support_grows_a_cap() {
    // x^3 + x*y + y^3: two compact facets, and the hull of the boundary
    // is a full-dimensional cell on which the weight vanishes.
    let s = subdiv(2, &[&[3, 0], &[1, 1], &[0, 3]]);
    assert_eq!(s.cell_count(), 14);
    assert_eq!(s.maximal_cell_count(), 3);
    let cap = cell(&s, &[&[3, 0], &[1, 1], &[0, 3]]);
    assert_eq!(s.cell_dim(cap).unwrap(), 2);
    let far = cell(&s, &[&[3, 0], &[0, 3]]);
    assert_eq!(s.cell_dim(far).unwrap(), 1);
    // The weight vanishes on the cap and is positive under it.
    assert_eq!(s.nu(&[1, 1]).unwrap(), Ratio::from_integer(0));
    assert_eq!(s.nu(&[2, 1]).unwrap(), Ratio::from_integer(0));
    assert_eq!(s.nu_class(&[2, 1]).unwrap(), QZ::one());
    assert_eq!(s.nu(&[1, 0]).unwrap(), Ratio::new(2, 3));
    assert_eq!(s.nu(&[0, 0]).unwrap(), Ratio::from_integer(1));
    // Weighted data of the full region.
    let base = s.base();
    assert_eq!(s.weighted_hstar(base, &QZ::one()).unwrap(), poly(&[1, 3, 1]));
    assert_eq!(s.weighted_hstar(base, &qz(1, 3)).unwrap(), poly(&[0, 2]));
    assert_eq!(s.weighted_hstar(base, &qz(2, 3)).unwrap(), poly(&[0, 2]));
    assert_eq!(s.weighted_lstar(base, &qz(1, 3)).unwrap(), Poly::zero());
    // The cap itself sees only the trivial class, with its plain Ehrhart
    // numerator.
    let cap_p = ptope(2, &[&[3, 0], &[1, 1], &[0, 3]]);
    assert_eq!(s.weighted_hstar(&cap_p, &QZ::one()).unwrap(), poly(&[1, 2]));
    assert_eq!(s.weighted_hstar(&cap_p, &qz(1, 3)).unwrap(), Poly::zero());
    // The Milnor number is one with trivial eigenvalue: everything
    // nontrivial cancels.
    let np = local(2, &[&[3, 0], &[1, 1], &[0, 3]]);
    assert!(s.e_polynomial(&qz(1, 3)).unwrap().is_zero());
    assert!(s.e_polynomial(&qz(2, 3)).unwrap().is_zero());
    let jf = jordan_full(&np).unwrap();
    assert!(jf.classes().is_empty());
    let t = assemble_local(&np).unwrap();
    assert_e_matches_table(&s, &t, 2);
    assert_tables_match_nontrivial(&jf, &jordan_blocks(&t, 2, NewtonKind::Local).unwrap(), 2);
}

#[test]
fn vanishing_weight_on_a_boundary_facet() {
    // In the plane x + y + z = 2 the weight vanishes, so the weighted
    // h*-polynomial is the plain Ehrhart numerator for the trivial class
    // and zero for every other class.
    let s = subdiv(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
    let seg = ptope(3, &[&[2, 0, 0], &[1, 1, 0]]);
    assert_eq!(s.weighted_hstar(&seg, &QZ::one()).unwrap(), poly(&[1]));
    assert_eq!(s.weighted_hstar(&seg, &qz(1, 2)).unwrap(), Poly::zero());
    let square = ptope(3, &[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
    assert_eq!(s.weighted_hstar(&square, &QZ::one()).unwrap(), poly(&[1, 1]));
    assert_eq!(s.weighted_hstar(&square, &qz(1, 2)).unwrap(), Poly::zero());
    assert_eq!(s.weighted_lstar(&square, &QZ::one()).unwrap(), Poly::zero());
}

#[test]
fn one_variable_full_route() {
    let m = 4i64;
    let np = local(1, &[&[m]]);
    let s = subdivision_from_newton(&np).unwrap();
    assert_eq!(s.cell_count(), 4);
    assert_eq!(s.maximal_cell_count(), 1);
    for j in 1..m {
        assert_eq!(s.e_polynomial(&qz(j, m)).unwrap(), BiPoly::one(), "class {j}/{m}");
    }
    let jf = jordan_full(&np).unwrap();
    for j in 1..m {
        assert_eq!(jf.count(&qz(j, m), 1), known(1));
    }
    let t = assemble_local(&np).unwrap();
    assert_e_matches_table(&s, &t, 1);
    assert_tables_match_nontrivial(&jf, &jordan_blocks(&t, 1, NewtonKind::Local).unwrap(), 1);
}

#[test]
fn brieskorn_full_route_matches_assembled() {
    let np = local(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
    let s = subdivision_from_newton(&np).unwrap();
    let t = assemble_local(&np).unwrap();
    assert_e_matches_table(&s, &t, 3);
    let jf = jordan_full(&np).unwrap();
    assert_eq!(jf.is_semisimple(), Some(true));
    for a in [qz(1, 30), qz(7, 30), qz(29, 30)] {
        assert_eq!(jf.count(&a, 1), known(1), "class {a}");
    }
    assert_eq!(jf.count(&qz(1, 6), 1), known(0));
    assert_tables_match_nontrivial(&jf, &jordan_blocks(&t, 3, NewtonKind::Local).unwrap(), 3);
}

#[test]
fn wrong_kind_and_nonconvenient_inputs_are_rejected() {
    let inf = NewtonPolyhedron::at_infinity(sup(2, &[&[2, 0], &[0, 3]]));
    assert!(matches!(subdivision_from_newton(&inf), Err(Error::Precondition(_))));
    assert!(matches!(jordan_full(&inf), Err(Error::Precondition(_))));
    assert!(matches!(equivariant_e(&inf, &qz(1, 2)), Err(Error::Precondition(_))));
    let missing = NewtonPolyhedron::local(sup(2, &[&[2, 0]])).unwrap();
    assert!(matches!(subdivision_from_newton(&missing), Err(Error::NotConvenient(_))));
    assert!(matches!(jordan_full(&missing), Err(Error::NotConvenient(_))));
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
    fn random_full_route_matches_assembled((n, pts) in any_support()) {
        let np = NewtonPolyhedron::local(Support::new(n, &pts).unwrap()).unwrap();
        let s = subdivision_from_newton(&np).unwrap();
        let t = assemble_local(&np).unwrap();
        assert_e_matches_table(&s, &t, n);
        let jf = s.jordan_table().unwrap();
        let jb = jordan_blocks(&t, n, NewtonKind::Local).unwrap();
        assert_tables_match_nontrivial(&jf, &jb, n);
        // The lattice-point shortcut agrees on the top sizes.
        let top = jordan_top_sizes(&np).unwrap();
        let sizes: Vec<usize> = if n >= 2 { vec![n, n - 1] } else { vec![n] };
        let mut classes = jf.classes();
        classes.extend(top.classes());
        for c in classes {
            if c.is_one() {
                continue;
            }
            for &sz in &sizes {
                assert_eq!(jf.count(&c, sz), top.count(&c, sz), "class {c} size {sz}");
            }
        }
    }
}
