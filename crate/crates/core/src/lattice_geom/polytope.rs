//! Lattice polytopes: hull, face lattice, volumes, lattice points.

use super::hull::{raw_hull, SimpFacet};
use super::linalg::{
    det, dot, express_in_basis, integer_kernel, rank, solve_integer, span_lattice_basis, vec_sub,
};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::Result;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

/// A facet of the polytope, in span coordinates, with an ambient
/// representative of its inner normal. `<normal, x> >= offset` holds on the
/// polytope with equality exactly on the facet.
#[derive(Clone, Debug)]
pub struct FacetData<S: Scalar> {
    pub normal_local: Vec<S>,
    pub offset: S,
    pub normal_ambient: Vec<S>,
    pub verts: Vec<usize>,
}

/// One face of the face lattice. The empty face has `dim = -1` and no
/// vertices; the improper face has `dim = dim(P)` and all vertices.
#[derive(Clone, Debug)]
pub struct FaceData {
    pub verts: Vec<usize>,
    pub dim: isize,
    pub facet_ids: Vec<usize>,
}

/// Which lattice points to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticePointMode {
    Full,
    RelativeInterior,
    Skeleton(usize),
}

/// A lattice polytope, possibly of lower dimension than its ambient space.
///
/// The hull is computed once at construction; faces, volumes and lattice
/// point enumeration all work off the stored data. Point indices refer to
/// the deduplicated input point list.
pub struct Polytope<S: Scalar> {
    id: u64,
    ambient: usize,
    pts: Vec<Vec<S>>,
    pt_index: HashMap<Vec<S>, usize>,
    base: Vec<S>,
    basis: Vec<Vec<S>>,
    dim: usize,
    local: Vec<Vec<S>>,
    vertices: Vec<usize>,
    facets: Vec<FacetData<S>>,
    simp: Vec<Vec<usize>>,
    faces: Vec<FaceData>,
    face_by_verts: HashMap<Vec<usize>, usize>,
    face_by_facets: HashMap<Vec<usize>, usize>,
}

impl<S: Scalar> Polytope<S> {
    /// Hull of the given points in `Z^ambient`.
    pub fn new(ambient: usize, points: &[Vec<S>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        for p in points {
            if p.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "point of length {} in ambient dimension {}",
                    p.len(),
                    ambient
                )));
            }
        }
        let mut pts: Vec<Vec<S>> = Vec::new();
        let mut pt_index: HashMap<Vec<S>, usize> = HashMap::new();
        for p in points {
            if !pt_index.contains_key(p) {
                pt_index.insert(p.clone(), pts.len());
                pts.push(p.clone());
            }
        }
        let base = pts[0].clone();
        let diffs: Vec<Vec<S>> = pts.iter().map(|p| vec_sub(p, &base)).collect();
        let basis = span_lattice_basis(&diffs, ambient);
        let dim = basis.len();
        let local: Vec<Vec<S>> = diffs
            .iter()
            .map(|v| express_in_basis(&basis, v).expect("point outside its own span lattice"))
            .collect();

        let mut poly = Polytope {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            ambient,
            pts,
            pt_index,
            base,
            basis,
            dim,
            local,
            vertices: vec![],
            facets: vec![],
            simp: vec![],
            faces: vec![],
            face_by_verts: HashMap::new(),
            face_by_facets: HashMap::new(),
        };
        if dim == 0 {
            poly.vertices = vec![0];
            poly.faces = vec![
                FaceData { verts: vec![], dim: -1, facet_ids: vec![] },
                FaceData { verts: vec![0], dim: 0, facet_ids: vec![] },
            ];
        } else {
            let hull = raw_hull(&poly.local, dim);
            poly.merge_facets(&hull.facets);
            poly.simp = hull.facets.into_iter().map(|f| f.verts).collect();
            poly.build_face_lattice();
        }
        poly.index_faces();
        Ok(poly)
    }

    fn merge_facets(&mut self, simp: &[SimpFacet<S>]) {
        let mut planes: Vec<(Vec<S>, S)> = Vec::new();
        for f in simp {
            if !planes.iter().any(|(n, c)| *n == f.normal && *c == f.offset) {
                planes.push((f.normal.clone(), f.offset.clone()));
            }
        }
        // Incidence of every point with every plane.
        let npts = self.local.len();
        let mut incident: Vec<Vec<usize>> = vec![vec![]; npts];
        for (hi, (n, c)) in planes.iter().enumerate() {
            for (pi, p) in self.local.iter().enumerate() {
                let v = dot(n, p);
                debug_assert!(v >= *c, "point outside a hull facet");
                if v == *c {
                    incident[pi].push(hi);
                }
            }
        }
        // True vertices: points whose incident normals span the full space.
        let mut vertices: Vec<usize> = Vec::new();
        for pi in 0..npts {
            let normals: Vec<Vec<S>> =
                incident[pi].iter().map(|&hi| planes[hi].0.clone()).collect();
            if rank(&normals) == self.dim {
                vertices.push(pi);
            }
        }
        let mut facets = Vec::new();
        for (hi, (n, c)) in planes.iter().enumerate() {
            let verts: Vec<usize> =
                vertices.iter().cloned().filter(|&pi| incident[pi].contains(&hi)).collect();
            let normal_ambient = solve_integer(&self.basis, self.ambient, n)
                .expect("span basis is saturated, so local normals lift");
            facets.push(FacetData {
                normal_local: n.clone(),
                offset: c.clone(),
                normal_ambient,
                verts,
            });
        }
        self.vertices = vertices;
        self.facets = facets;
    }

    fn build_face_lattice(&mut self) {
        let mut sets: Vec<Vec<usize>> = vec![self.vertices.clone()];
        for f in &self.facets {
            if !sets.contains(&f.verts) {
                sets.push(f.verts.clone());
            }
        }
        // Close under pairwise intersection.
        let mut i = 0;
        while i < sets.len() {
            for j in 0..i {
                let inter: Vec<usize> =
                    sets[i].iter().cloned().filter(|v| sets[j].contains(v)).collect();
                if !sets.contains(&inter) {
                    sets.push(inter);
                }
            }
            i += 1;
        }
        if !sets.contains(&vec![]) {
            sets.push(vec![]);
        }
        let mut faces: Vec<FaceData> = sets
            .into_iter()
            .map(|verts| {
                let dim = if verts.is_empty() {
                    -1
                } else {
                    let base = &self.local[verts[0]];
                    let dirs: Vec<Vec<S>> =
                        verts[1..].iter().map(|&v| vec_sub(&self.local[v], base)).collect();
                    rank(&dirs) as isize
                };
                let facet_ids: Vec<usize> = self
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| verts.iter().all(|v| f.verts.contains(v)))
                    .map(|(i, _)| i)
                    .collect();
                FaceData { verts, dim, facet_ids }
            })
            .collect();
        faces.sort_by(|a, b| (a.dim, &a.verts).cmp(&(b.dim, &b.verts)));
        self.faces = faces;
    }

    fn index_faces(&mut self) {
        // Faces are sorted by dimension, so later (larger) faces win the
        // facet-set index; the only collision is the empty face against the
        // improper face of a 0-dimensional polytope.
        for (i, f) in self.faces.iter().enumerate() {
            self.face_by_verts.insert(f.verts.clone(), i);
            self.face_by_facets.insert(f.facet_ids.clone(), i);
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Deduplicated input points, ambient coordinates.
    pub fn points(&self) -> &[Vec<S>] {
        &self.pts
    }

    pub fn point_index(&self, p: &[S]) -> Option<usize> {
        self.pt_index.get(p).copied()
    }

    /// Indices of the extreme points.
    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_points(&self) -> Vec<Vec<S>> {
        self.vertices.iter().map(|&i| self.pts[i].clone()).collect()
    }

    pub fn facets(&self) -> &[FacetData<S>] {
        &self.facets
    }

    pub fn faces(&self) -> &[FaceData] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &FaceData {
        &self.faces[id]
    }

    pub fn empty_face_id(&self) -> usize {
        self.face_by_verts[&vec![]]
    }

    pub fn improper_face_id(&self) -> usize {
        let mut all = self.vertices.clone();
        all.sort_unstable();
        self.face_by_verts[&all]
    }

    /// Whether face `a` is contained in face `b`.
    pub fn face_le(&self, a: usize, b: usize) -> bool {
        self.faces[a].verts.iter().all(|v| self.faces[b].verts.contains(v))
    }

    /// Ids of all faces contained in the given face (including it and the
    /// empty face).
    pub fn subfaces(&self, id: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.face_le(i, id)).collect()
    }

    /// Lattice basis of `Z^ambient ∩ lin(P - base)`.
    pub fn span_basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn base_point(&self) -> &[S] {
        &self.base
    }

    /// Map span coordinates to ambient coordinates.
    pub fn to_ambient(&self, local: &[S]) -> Vec<S> {
        let mut out = self.base.clone();
        for (c, b) in local.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
        out
    }

    /// Map an ambient lattice point into span coordinates, if it lies in the
    /// affine span.
    pub fn to_local(&self, p: &[S]) -> Option<Vec<S>> {
        express_in_basis(&self.basis, &vec_sub(p, &self.base))
    }

    pub fn local_coords(&self, idx: usize) -> &[S] {
        &self.local[idx]
    }

    /// Normalized volume with respect to the lattice of the affine span:
    /// `dim! *` the Euclidean volume in span coordinates. A point has
    /// normalized volume 1.
    pub fn normalized_volume(&self) -> S {
        if self.dim == 0 {
            return S::one();
        }
        let apex = &self.local[0];
        let mut total = S::zero();
        for f in &self.simp {
            let mat: Vec<Vec<S>> =
                f.iter().map(|&v| vec_sub(&self.local[v], apex)).collect();
            total = total + det(&mat).abs();
        }
        total
    }

    /// Normalized volume relative to the full ambient lattice; zero when the
    /// polytope does not span the ambient space.
    pub fn ambient_normalized_volume(&self) -> S {
        if self.dim < self.ambient {
            S::zero()
        } else {
            self.normalized_volume()
        }
    }

    /// All lattice points with the id of their carrier face (the smallest
    /// face containing them).
    pub fn lattice_points_classified(&self) -> Vec<(Vec<S>, usize)> {
        if self.dim == 0 {
            return vec![(self.base.clone(), self.improper_face_id())];
        }
        let mut lo = self.local[self.vertices[0]].clone();
        let mut hi = lo.clone();
        for &v in &self.vertices {
            for (k, c) in self.local[v].iter().enumerate() {
                if *c < lo[k] {
                    lo[k] = c.clone();
                }
                if *c > hi[k] {
                    hi[k] = c.clone();
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let mut equalities: Vec<usize> = Vec::new();
            let mut inside = true;
            for (hi_id, f) in self.facets.iter().enumerate() {
                let v = dot(&f.normal_local, &cur);
                if v < f.offset {
                    inside = false;
                    break;
                }
                if v == f.offset {
                    equalities.push(hi_id);
                }
            }
            if inside {
                let carrier = *self
                    .face_by_facets
                    .get(&equalities)
                    .expect("interior pattern matches a face");
                out.push((self.to_ambient(&cur), carrier));
            }
            // Odometer step.
            for k in 0..self.dim {
                if cur[k] < hi[k] {
                    cur[k] = cur[k].clone() + S::one();
                    for j in 0..k {
                        cur[j] = lo[j].clone();
                    }
                    continue 'outer;
                }
            }
            break;
        }
        out
    }

    /// Lattice points in the requested region, ambient coordinates.
    pub fn lattice_points(&self, mode: LatticePointMode) -> Vec<Vec<S>> {
        let improper = self.improper_face_id();
        self.lattice_points_classified()
            .into_iter()
            .filter(|(_, carrier)| match mode {
                LatticePointMode::Full => true,
                LatticePointMode::RelativeInterior => *carrier == improper,
                LatticePointMode::Skeleton(k) => {
                    *carrier != improper && self.faces[*carrier].dim <= k as isize
                }
            })
            .map(|(p, _)| p)
            .collect()
    }

    /// The face minimizing the ambient linear functional `u`, with the
    /// minimum value.
    pub fn supporting_face(&self, u: &[S]) -> (usize, S) {
        let mut min: Option<S> = None;
        for &v in &self.vertices {
            let val = dot(u, &self.pts[v]);
            if min.as_ref().map_or(true, |m| val < *m) {
                min = Some(val);
            }
        }
        let min = min.expect("polytope has vertices");
        let mut arg: Vec<usize> =
            self.vertices.iter().cloned().filter(|&v| dot(u, &self.pts[v]) == min).collect();
        arg.sort_unstable();
        let fid = *self.face_by_verts.get(&arg).expect("argmin set is a face");
        (fid, min)
    }

    /// Minkowski sum.
    pub fn minkowski_sum(&self, other: &Polytope<S>) -> Result<Polytope<S>> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch("minkowski sum of different ambients".into()));
        }
        let mut sums = Vec::new();
        for &a in &self.vertices {
            for &b in &other.vertices {
                sums.push(
                    self.pts[a].iter().zip(&other.pts[b]).map(|(x, y)| x.clone() + y.clone()).collect(),
                );
            }
        }
        Polytope::new(self.ambient, &sums)
    }

    /// Whether the ambient lattice point lies in the polytope.
    pub fn contains_lattice_point(&self, p: &[S]) -> bool {
        let Some(loc) = self.to_local(p) else {
            return false;
        };
        self.facets.iter().all(|f| dot(&f.normal_local, &loc) >= f.offset)
    }

    /// Functionals (a lattice basis of them) vanishing on the affine span
    /// directions; empty when the polytope is full-dimensional.
    pub fn span_orthogonal(&self) -> Vec<Vec<S>> {
        if self.dim == self.ambient {
            vec![]
        } else if self.basis.is_empty() {
            integer_kernel(&[], self.ambient)
        } else {
            integer_kernel(&self.basis, self.ambient)
        }
    }
}
