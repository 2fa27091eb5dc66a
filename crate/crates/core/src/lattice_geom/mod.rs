//! Exact lattice geometry: convex hulls, face lattices, normal fans,
//! lattice point enumeration, normalized and mixed volumes.

pub mod linalg;
pub(crate) mod hull;
mod polytope;

pub use polytope::{FaceData, FacetData, LatticePointMode, Polytope};

use crate::error::Error;
use crate::scalar::{sign, Scalar};
use crate::Result;

/// A rational polyhedral cone given by generators plus a lineality space.
/// The cone is the set of nonnegative combinations of the generators plus
/// arbitrary integer combinations of the lineality basis.
#[derive(Clone, Debug)]
pub struct Cone<S: Scalar> {
    pub generators: Vec<Vec<S>>,
    pub lineality: Vec<Vec<S>>,
}

impl<S: Scalar> Cone<S> {
    /// Whether the cone is contained in the closed nonnegative orthant.
    pub fn in_nonneg_orthant(&self) -> bool {
        self.lineality.is_empty()
            && self.generators.iter().all(|g| g.iter().all(|c| *c >= S::zero()))
    }

    /// Sum of the generators; for a cone inside the nonnegative orthant its
    /// relative interior meets the open orthant exactly when this sum is
    /// strictly positive in every coordinate.
    pub fn generator_sum(&self, n: usize) -> Vec<S> {
        let mut s = vec![S::zero(); n];
        for g in &self.generators {
            for (a, b) in s.iter_mut().zip(g) {
                *a = a.clone() + b.clone();
            }
        }
        s
    }
}

/// The normal fan of a polytope: one cone per nonempty face, indexed by the
/// face id.
#[derive(Clone, Debug)]
pub struct Fan<S: Scalar> {
    pub cones: Vec<(usize, Cone<S>)>,
}

/// Hull of the given points in `Z^ambient`.
pub fn convex_hull<S: Scalar>(ambient: usize, points: &[Vec<S>]) -> Result<Polytope<S>> {
    Polytope::new(ambient, points)
}

/// All faces of the polytope including the empty and improper faces.
pub fn enumerate_faces<S: Scalar>(p: &Polytope<S>) -> &[FaceData] {
    p.faces()
}

/// Lattice points of the polytope in the requested region.
pub fn lattice_points<S: Scalar>(p: &Polytope<S>, mode: LatticePointMode) -> Vec<Vec<S>> {
    p.lattice_points(mode)
}

/// Normalized volume with respect to the lattice of the affine span.
pub fn normalized_volume<S: Scalar>(p: &Polytope<S>) -> S {
    p.normalized_volume()
}

/// Minkowski sum of two polytopes.
pub fn minkowski_sum<S: Scalar>(a: &Polytope<S>, b: &Polytope<S>) -> Result<Polytope<S>> {
    a.minkowski_sum(b)
}

/// Face minimizing the ambient functional `u`, with the minimum value.
pub fn supporting_face<'a, S: Scalar>(p: &'a Polytope<S>, u: &[S]) -> (usize, S) {
    p.supporting_face(u)
}

/// Normal fan: for each nonempty face, the cone of functionals minimized on
/// it. Generators are the ambient facet normals of the facets containing the
/// face; the lineality is the space of functionals constant on the polytope.
pub fn dual_fan<S: Scalar>(p: &Polytope<S>) -> Fan<S> {
    let lineality = p.span_orthogonal();
    let empty = p.empty_face_id();
    let cones = p
        .faces()
        .iter()
        .enumerate()
        .filter(|(id, _)| *id != empty)
        .map(|(id, f)| {
            let generators: Vec<Vec<S>> = f
                .facet_ids
                .iter()
                .map(|&fi| p.facets()[fi].normal_ambient.clone())
                .collect();
            (id, Cone { generators, lineality: lineality.clone() })
        })
        .collect();
    Fan { cones }
}

/// Lattice-normalized mixed volume of `n` polytopes in `Z^n`, computed by
/// inclusion-exclusion over Minkowski sums of subsets. Multilinear and
/// symmetric, with `mixed_volume([P, ..., P]) = normalized_volume(P)`.
/// The empty list (dimension zero) has mixed volume one.
pub fn mixed_volume<S: Scalar>(bodies: &[&Polytope<S>]) -> Result<S> {
    let n = bodies.len();
    if n == 0 {
        return Ok(S::one());
    }
    let ambient = bodies[0].ambient();
    if ambient != n || bodies.iter().any(|b| b.ambient() != ambient) {
        return Err(Error::DimensionMismatch(format!(
            "mixed volume needs {} bodies in dimension {}",
            ambient, ambient
        )));
    }
    let mut total = S::zero();
    for mask in 1u64..(1u64 << n) {
        let mut sum: Option<Polytope<S>> = None;
        for (i, body) in bodies.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = Some(match sum {
                    None => Polytope::new(ambient, body.points())?,
                    Some(s) => s.minkowski_sum(body)?,
                });
            }
        }
        let vol = sum.expect("mask is nonempty").ambient_normalized_volume();
        total = total + sign::<S>(n - (mask.count_ones() as usize)) * vol;
    }
    let mut fact = S::one();
    for k in 2..=n {
        fact = fact * S::small(k as i32);
    }
    let (q, r) = total.div_rem(&fact);
    if !r.is_zero() {
        return Err(Error::Inconsistent("mixed volume inclusion-exclusion not integral".into()));
    }
    Ok(q)
}
