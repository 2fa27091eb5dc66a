//! Newton polyhedra attached to exponent supports, in two flavours: the
//! local polyhedron at the origin (support plus the nonnegative orthant) and
//! the global polytope at infinity (hull of the support and the origin).
//!
//! The unbounded local polyhedron is represented by a bounded truncation:
//! every support point is shifted far along each coordinate axis and the
//! hull of support plus shifted points is taken. Faces whose vertices are
//! all genuine support points are exactly the compact faces of the local
//! polyhedron, with the same normals and the same supporting values, so all
//! downstream computations read off the truncation.

use crate::error::Error;
use crate::lattice_geom::linalg::{dot, hyperplane_normal, rank, solve_integer, vec_sub};
use crate::lattice_geom::{dual_fan, Polytope};
use crate::scalar::Scalar;
use crate::Result;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Exponent support of a polynomial in `n` variables. Exponents are
/// nonnegative; duplicate points are merged.
#[derive(Clone, Debug)]
pub struct Support<S: Scalar> {
    n: usize,
    points: Vec<Vec<S>>,
}

impl<S: Scalar> Support<S> {
    pub fn new(n: usize, points: &[Vec<S>]) -> Result<Self> {
        if n == 0 || n > 62 {
            return Err(Error::DimensionMismatch(format!(
                "number of variables must be between 1 and 62, got {}",
                n
            )));
        }
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        let mut uniq: Vec<Vec<S>> = Vec::new();
        for p in points {
            if p.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} with {} variables",
                    p.len(),
                    n
                )));
            }
            if let Some(bad) = p.iter().find(|c| **c < S::zero()) {
                return Err(Error::NegativeExponent(format!("{:?}", bad)));
            }
            if !uniq.contains(p) {
                uniq.push(p.clone());
            }
        }
        Ok(Support { n, points: uniq })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn contains_origin(&self) -> bool {
        self.points.iter().any(|p| p.iter().all(|c| c.is_zero()))
    }
}

/// Which polyhedron a [`NewtonPolyhedron`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NewtonKind {
    Local,
    AtInfinity,
}

/// Hull data of the restriction to a coordinate subspace, in compressed
/// coordinates (one per element of `s_elems`).
pub struct RestrictedData<S: Scalar> {
    pub n: usize,
    pub kind: NewtonKind,
    pub s_elems: Vec<usize>,
    pub poly: Polytope<S>,
    /// Per polytope point: whether it is a genuine support point (or the
    /// origin marker for the polytope at infinity) rather than a truncation
    /// artifact.
    pub support_part: Vec<bool>,
    /// Index of the origin among the polytope points (at infinity only).
    pub origin_index: Option<usize>,
}

impl<S: Scalar> RestrictedData<S> {
    /// Lift a compressed point back to `Z^n`.
    pub fn decompress(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.n];
        for (j, &i) in self.s_elems.iter().enumerate() {
            out[i] = v[j].clone();
        }
        out
    }

    /// Lift a compressed functional back to `Z^n` (zero off the subset).
    pub fn decompress_functional(&self, u: &[S]) -> Vec<S> {
        self.decompress(u)
    }

    /// Face ids of the compact faces of the local polyhedron: nonempty faces
    /// of the truncation all of whose vertices are support points.
    pub fn compact_face_ids(&self) -> Vec<usize> {
        debug_assert_eq!(self.kind, NewtonKind::Local);
        self.poly
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| {
                !f.verts.is_empty() && f.verts.iter().all(|&v| self.support_part[v])
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Face ids of the faces at infinity: nonempty faces of the polytope at
    /// infinity that do not contain the origin.
    pub fn infinity_face_ids(&self) -> Vec<usize> {
        debug_assert_eq!(self.kind, NewtonKind::AtInfinity);
        let o = self.origin_index.expect("polytope at infinity has an origin point");
        self.poly
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.verts.is_empty() && !f.verts.contains(&o))
            .map(|(i, _)| i)
            .collect()
    }

    /// Vertex points of a face, in `Z^n`.
    pub fn face_vertex_points(&self, fid: usize) -> Vec<Vec<S>> {
        self.poly.face(fid).verts.iter().map(|&v| self.decompress(&self.poly.points()[v])).collect()
    }
}

/// A facet of the boundary used in the zeta function products: its vertex
/// points, the primitive supporting functional `u` (zero off the coordinate
/// subset), the supporting value `d > 0`, and the normalized volume of the
/// facet with respect to the lattice of its affine span.
#[derive(Clone, Debug)]
pub struct BoundaryFacet<S: Scalar> {
    pub verts: Vec<Vec<S>>,
    pub u: Vec<S>,
    pub d: S,
    pub vol: S,
}

/// A face of the polytope at infinity flagged as atypical.
#[derive(Clone, Debug)]
pub struct AtypicalFace<S: Scalar> {
    pub verts: Vec<Vec<S>>,
    pub dim: isize,
    pub improper: bool,
}

/// Metric data of a face used by the Hodge-theoretic invariants: the
/// pyramid `delta` over the face with apex at the origin, the lattice
/// distance `d` of the face from the origin, the minimal coordinate subset
/// `s_set` containing the face, the codimension defect `m`, and an ambient
/// representative of the height functional (zero at the origin, `d` on the
/// face, primitive on the span lattice of the pyramid).
pub struct FaceGeometry<S: Scalar> {
    pub delta: Polytope<S>,
    pub d: S,
    pub s_set: Vec<usize>,
    pub m: usize,
    pub gamma_dim: usize,
    height: Vec<S>,
}

impl<S: Scalar> FaceGeometry<S> {
    /// Height of a lattice point of the span of the pyramid.
    pub fn height_of(&self, v: &[S]) -> S {
        dot(&self.height, v)
    }

    /// Ambient representative of the height functional (zero at the apex,
    /// `d` on the base face).
    pub fn height_row(&self) -> &[S] {
        &self.height
    }
}

/// The support of a lattice point: coordinates with a positive entry.
pub fn point_support<S: Scalar>(p: &[S]) -> Vec<usize> {
    p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect()
}

/// Whether the relative interior of the hull of the given points lies in the
/// open positive orthant: every coordinate must be positive somewhere.
pub fn relint_in_open_orthant<S: Scalar>(n: usize, verts: &[Vec<S>]) -> bool {
    (0..n).all(|i| verts.iter().any(|v| v[i] > S::zero()))
}

/// A Newton polyhedron (local or at infinity) with cached restrictions to
/// coordinate subspaces.
pub struct NewtonPolyhedron<S: Scalar> {
    kind: NewtonKind,
    support: Support<S>,
    cache: Mutex<HashMap<u64, Option<Arc<RestrictedData<S>>>>>,
}

impl<S: Scalar> NewtonPolyhedron<S> {
    /// Local Newton polyhedron at the origin. The origin may not be in the
    /// support (the polynomial must vanish at the origin).
    pub fn local(support: Support<S>) -> Result<Self> {
        if support.contains_origin() {
            return Err(Error::OriginInSupport);
        }
        Ok(NewtonPolyhedron { kind: NewtonKind::Local, support, cache: Mutex::new(HashMap::new()) })
    }

    /// Newton polytope at infinity (the origin is always adjoined).
    pub fn at_infinity(support: Support<S>) -> Self {
        NewtonPolyhedron {
            kind: NewtonKind::AtInfinity,
            support,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> NewtonKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.support.n
    }

    pub fn support(&self) -> &Support<S> {
        &self.support
    }

    fn mask_of(&self, s: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &i in s {
            if i >= self.support.n {
                return Err(Error::DimensionMismatch(format!(
                    "coordinate {} out of range for {} variables",
                    i, self.support.n
                )));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Restriction to the coordinate subspace given by the (0-based)
    /// coordinates in `s`. `None` when no support point lies in the
    /// subspace (local polyhedron only; the polytope at infinity always
    /// contains the origin).
    pub fn restrict(&self, s: &[usize]) -> Result<Option<Arc<RestrictedData<S>>>> {
        let mask = self.mask_of(s)?;
        if let Some(hit) = self.cache.lock().unwrap().get(&mask) {
            return Ok(hit.clone());
        }
        let built = self.build_restriction(mask)?;
        self.cache.lock().unwrap().insert(mask, built.clone());
        Ok(built)
    }

    /// Restriction to all coordinates.
    pub fn full(&self) -> Result<Option<Arc<RestrictedData<S>>>> {
        let all: Vec<usize> = (0..self.support.n).collect();
        self.restrict(&all)
    }

    fn build_restriction(&self, mask: u64) -> Result<Option<Arc<RestrictedData<S>>>> {
        let s_elems: Vec<usize> = (0..self.support.n).filter(|i| mask >> i & 1 == 1).collect();
        let restricted: Vec<Vec<S>> = self
            .support
            .points
            .iter()
            .filter(|p| {
                p.iter().enumerate().all(|(i, c)| c.is_zero() || mask >> i & 1 == 1)
            })
            .map(|p| s_elems.iter().map(|&i| p[i].clone()).collect())
            .collect();
        let k = s_elems.len();
        match self.kind {
            NewtonKind::Local => {
                if restricted.is_empty() {
                    return Ok(None);
                }
                let mut shift = S::one();
                for j in 0..k {
                    let mx = restricted.iter().map(|p| p[j].clone()).max().unwrap();
                    shift = shift + mx;
                }
                let mut pts = restricted.clone();
                for p in &restricted {
                    for j in 0..k {
                        let mut q = p.clone();
                        q[j] = q[j].clone() + shift.clone();
                        pts.push(q);
                    }
                }
                let poly = Polytope::new(k, &pts)?;
                let support_part: Vec<bool> =
                    poly.points().iter().map(|p| restricted.contains(p)).collect();
                Ok(Some(Arc::new(RestrictedData {
                    n: self.support.n,
                    kind: self.kind,
                    s_elems,
                    poly,
                    support_part,
                    origin_index: None,
                })))
            }
            NewtonKind::AtInfinity => {
                let origin = vec![S::zero(); k];
                let mut pts = vec![origin.clone()];
                pts.extend(restricted.iter().cloned());
                let poly = Polytope::new(k, &pts)?;
                let origin_index = poly.point_index(&origin);
                let support_part = vec![true; poly.points().len()];
                Ok(Some(Arc::new(RestrictedData {
                    n: self.support.n,
                    kind: self.kind,
                    s_elems,
                    poly,
                    support_part,
                    origin_index,
                })))
            }
        }
    }

    /// The facets entering the zeta function product for the subset `s`:
    /// compact facets of the restricted local polyhedron, respectively the
    /// `(|s|-1)`-dimensional faces at infinity of the restricted polytope.
    /// Empty when the restriction is empty or (at infinity) not of full
    /// dimension in the subspace.
    pub fn boundary_facets(&self, s: &[usize]) -> Result<Vec<BoundaryFacet<S>>> {
        let Some(rd) = self.restrict(s)? else {
            return Ok(vec![]);
        };
        let k = rd.s_elems.len();
        if k == 0 {
            return Ok(vec![]);
        }
        let mut out = Vec::new();
        match self.kind {
            NewtonKind::Local => {
                debug_assert_eq!(rd.poly.dim(), k, "truncated local polyhedron is full-dimensional");
                for f in rd.poly.facets() {
                    if !f.verts.iter().all(|&v| rd.support_part[v]) {
                        continue;
                    }
                    let u_c = f.normal_ambient.clone();
                    debug_assert!(u_c.iter().all(|c| *c > S::zero()));
                    let d = dot(&u_c, &rd.poly.points()[f.verts[0]]);
                    out.push(self.make_boundary_facet(&rd, &f.verts, u_c, d)?);
                }
            }
            NewtonKind::AtInfinity => {
                if rd.poly.dim() < k {
                    return Ok(vec![]);
                }
                let o = rd.origin_index.expect("origin present");
                for f in rd.poly.facets() {
                    if f.verts.contains(&o) {
                        continue;
                    }
                    let u_c = f.normal_ambient.clone();
                    let d = S::zero() - dot(&u_c, &rd.poly.points()[f.verts[0]]);
                    if !(d > S::zero()) {
                        return Err(Error::Inconsistent(
                            "face at infinity with nonpositive distance".into(),
                        ));
                    }
                    out.push(self.make_boundary_facet(&rd, &f.verts, u_c, d)?);
                }
            }
        }
        Ok(out)
    }

    fn make_boundary_facet(
        &self,
        rd: &RestrictedData<S>,
        verts: &[usize],
        u_c: Vec<S>,
        d: S,
    ) -> Result<BoundaryFacet<S>> {
        let k = rd.s_elems.len();
        let vpts: Vec<Vec<S>> = verts.iter().map(|&v| rd.poly.points()[v].clone()).collect();
        let facet_poly = Polytope::new(k, &vpts)?;
        let vol = facet_poly.normalized_volume();
        Ok(BoundaryFacet {
            verts: vpts.iter().map(|p| rd.decompress(p)).collect(),
            u: rd.decompress_functional(&u_c),
            d,
            vol,
        })
    }

    /// Whether the support touches every coordinate axis.
    pub fn is_convenient(&self) -> bool {
        self.missing_axis().is_none()
    }

    /// First coordinate axis not met by the support, if any.
    pub fn missing_axis(&self) -> Option<usize> {
        (0..self.support.n).find(|&i| {
            !self
                .support
                .points
                .iter()
                .any(|p| point_support(p) == vec![i])
        })
    }

    /// Atypical faces of the polytope at infinity: proper faces of positive
    /// dimension containing the origin whose normal cone leaves the dual
    /// orthant while the face stays in a proper coordinate subspace; the
    /// improper face exactly when the polytope is not full-dimensional.
    pub fn atypical_faces(&self) -> Result<Vec<AtypicalFace<S>>> {
        if self.kind != NewtonKind::AtInfinity {
            return Err(Error::Precondition(
                "atypical faces are defined for the polytope at infinity".into(),
            ));
        }
        let rd = self.full()?.expect("polytope at infinity is never empty");
        let n = self.support.n;
        let poly = &rd.poly;
        let o = rd.origin_index.expect("origin present");
        let improper_id = poly.improper_face_id();
        let fan = dual_fan(poly);
        let mut out = Vec::new();
        for (fid, cone) in &fan.cones {
            let face = poly.face(*fid);
            if *fid == improper_id {
                if poly.dim() < n {
                    out.push(AtypicalFace {
                        verts: rd.face_vertex_points(*fid),
                        dim: face.dim,
                        improper: true,
                    });
                }
                continue;
            }
            if !face.verts.contains(&o) || face.dim < 1 {
                continue;
            }
            if cone.in_nonneg_orthant() {
                continue;
            }
            let mut union: Vec<usize> = Vec::new();
            for &v in &face.verts {
                for i in point_support(&poly.points()[v]) {
                    if !union.contains(&i) {
                        union.push(i);
                    }
                }
            }
            if union.len() == n {
                continue;
            }
            out.push(AtypicalFace {
                verts: rd.face_vertex_points(*fid),
                dim: face.dim,
                improper: false,
            });
        }
        out.sort_by(|a, b| (a.dim, &a.verts).cmp(&(b.dim, &b.verts)));
        Ok(out)
    }

    /// Geometry of a face given by its vertex points in `Z^n`: the pyramid
    /// over the face with apex at the origin, lattice distance, minimal
    /// coordinate subset, codimension defect and height functional. The
    /// affine span of the face must avoid the origin.
    pub fn face_geometry(&self, verts: &[Vec<S>]) -> Result<FaceGeometry<S>> {
        let n = self.support.n;
        if verts.is_empty() {
            return Err(Error::Precondition("face with no vertices".into()));
        }
        let mut pts: Vec<Vec<S>> = vec![vec![S::zero(); n]];
        pts.extend(verts.iter().cloned());
        let delta = Polytope::new(n, &pts)?;
        let gamma_dim = {
            let dirs: Vec<Vec<S>> = verts[1..].iter().map(|v| vec_sub(v, &verts[0])).collect();
            rank(&dirs)
        };
        if delta.dim() != gamma_dim + 1 {
            return Err(Error::Precondition(
                "affine span of the face contains the origin".into(),
            ));
        }
        let mut s_set: Vec<usize> = Vec::new();
        for v in verts {
            for i in point_support(v) {
                if !s_set.contains(&i) {
                    s_set.push(i);
                }
            }
        }
        s_set.sort_unstable();
        let m = s_set.len() - gamma_dim - 1;
        // Height functional in the span basis: constant on the face
        // vertices, zero at the origin (the base point of the pyramid).
        let w: Vec<Vec<S>> = verts
            .iter()
            .map(|v| delta.to_local(v).expect("face vertex lies in the pyramid span"))
            .collect();
        let dirs: Vec<Vec<S>> = w[1..].iter().map(|x| vec_sub(x, &w[0])).collect();
        let mut h_loc = hyperplane_normal(&dirs, delta.dim())
            .expect("face directions have corank one in the pyramid span");
        let mut d = dot(&h_loc, &w[0]);
        if d < S::zero() {
            h_loc = h_loc.iter().map(|c| S::zero() - c.clone()).collect();
            d = S::zero() - d;
        }
        if d.is_zero() {
            return Err(Error::Inconsistent("face at lattice distance zero".into()));
        }
        for x in &w {
            debug_assert!(dot(&h_loc, x) == d, "height constant on the face");
        }
        let height = solve_integer(delta.span_basis(), n, &h_loc)
            .expect("span basis is saturated, so the height functional lifts");
        Ok(FaceGeometry { delta, d, s_set, m, gamma_dim, height })
    }
}
