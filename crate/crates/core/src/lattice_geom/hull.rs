//! Incremental convex hull over exact integers.
//!
//! Works on a full-dimensional point set in `Z^d` (the polytope layer maps
//! lower-dimensional inputs into span coordinates first). Facets are kept
//! simplicial during insertion; merging coplanar pieces and recovering true
//! vertex sets happens in the polytope layer. Visibility is strict, which
//! keeps every cone facet non-degenerate: a horizon ridge shared by a
//! strictly visible and an invisible facet can never be affinely spanned by
//! the inserted point together with fewer ridge vertices.

use super::linalg::{dot, hyperplane_normal, is_zero_vec, rank, vec_sub};
use crate::scalar::Scalar;
use std::collections::HashMap;

/// One simplicial facet: `d` vertex indices and an inner supporting
/// halfspace `<normal, x> >= offset` with equality on the facet.
#[derive(Clone, Debug)]
pub struct SimpFacet<S: Scalar> {
    pub verts: Vec<usize>,
    pub normal: Vec<S>,
    pub offset: S,
}

/// Simplicial boundary of the hull of a full-dimensional point set.
pub struct RawHull<S: Scalar> {
    pub facets: Vec<SimpFacet<S>>,
}

/// Compute the hull of `points` (distinct, affinely spanning `Z^d`, `d >= 1`).
pub fn raw_hull<S: Scalar>(points: &[Vec<S>], d: usize) -> RawHull<S> {
    assert!(d >= 1);
    let simplex = initial_simplex(points, d);
    // Interior reference: the vertex sum of the initial simplex. A facet
    // hyperplane can never pass through the simplex centroid, so comparing
    // <u, sum> with (d+1)*offset orients normals strictly.
    let refsum: Vec<S> = {
        let mut acc = vec![S::zero(); d];
        for &i in &simplex {
            for (a, x) in acc.iter_mut().zip(&points[i]) {
                *a = a.clone() + x.clone();
            }
        }
        acc
    };
    let refscale = S::from(d as i32 + 1);
    let mut facets: Vec<SimpFacet<S>> = Vec::new();
    for omit in 0..simplex.len() {
        let verts: Vec<usize> =
            simplex.iter().enumerate().filter(|&(k, _)| k != omit).map(|(_, &i)| i).collect();
        facets.push(make_facet(points, &verts, &refsum, &refscale, d));
    }
    for p in 0..points.len() {
        if simplex.contains(&p) {
            continue;
        }
        insert_point(points, p, &mut facets, &refsum, &refscale, d);
    }
    RawHull { facets }
}

fn initial_simplex<S: Scalar>(points: &[Vec<S>], d: usize) -> Vec<usize> {
    let mut chosen = vec![0usize];
    let mut dirs: Vec<Vec<S>> = Vec::new();
    for i in 1..points.len() {
        if chosen.len() == d + 1 {
            break;
        }
        let v = vec_sub(&points[i], &points[0]);
        if is_zero_vec(&v) {
            continue;
        }
        dirs.push(v);
        if rank(&dirs) == dirs.len() {
            chosen.push(i);
        } else {
            dirs.pop();
        }
    }
    assert_eq!(chosen.len(), d + 1, "point set does not span dimension {}", d);
    chosen
}

fn make_facet<S: Scalar>(
    points: &[Vec<S>],
    verts: &[usize],
    refsum: &[S],
    refscale: &S,
    d: usize,
) -> SimpFacet<S> {
    let base = &points[verts[0]];
    let dirs: Vec<Vec<S>> =
        verts[1..].iter().map(|&i| vec_sub(&points[i], base)).collect();
    let mut normal = hyperplane_normal(&dirs, d).expect("degenerate facet candidate");
    let mut offset = dot(&normal, base);
    // Orient inward: the interior reference must satisfy the inequality
    // strictly.
    let lhs = dot(&normal, refsum);
    let rhs = refscale.clone() * offset.clone();
    assert!(lhs != rhs, "interior reference on facet hyperplane");
    if lhs < rhs {
        normal = normal.iter().map(|x| -x.clone()).collect();
        offset = -offset;
    }
    SimpFacet { verts: verts.to_vec(), normal, offset }
}

fn insert_point<S: Scalar>(
    points: &[Vec<S>],
    p: usize,
    facets: &mut Vec<SimpFacet<S>>,
    refsum: &[S],
    refscale: &S,
    d: usize,
) {
    let visible: Vec<bool> = facets
        .iter()
        .map(|f| dot(&f.normal, &points[p]) < f.offset)
        .collect();
    if !visible.iter().any(|&v| v) {
        return;
    }
    // Ridge -> incident facet ids (each ridge belongs to exactly two).
    let mut ridges: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for omit in 0..f.verts.len() {
            let mut r: Vec<usize> = f
                .verts
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != omit)
                .map(|(_, &v)| v)
                .collect();
            r.sort_unstable();
            ridges.entry(r).or_default().push(fi);
        }
    }
    let mut new_facets: Vec<SimpFacet<S>> = Vec::new();
    for (ridge, inc) in ridges.iter() {
        debug_assert_eq!(inc.len(), 2, "boundary ridge not shared by two facets");
        let (a, b) = (inc[0], inc[1]);
        if visible[a] == visible[b] {
            continue;
        }
        let mut verts = ridge.clone();
        verts.push(p);
        new_facets.push(make_facet(points, &verts, refsum, refscale, d));
    }
    let mut kept: Vec<SimpFacet<S>> = Vec::new();
    for (fi, f) in facets.drain(..).enumerate() {
        if !visible[fi] {
            kept.push(f);
        }
    }
    kept.extend(new_facets);
    *facets = kept;
}
