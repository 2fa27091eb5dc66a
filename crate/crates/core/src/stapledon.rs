//! Weighted Ehrhart theory of the region under the Newton boundary.
//!
//! A convenient local Newton polyhedron bounds a region `K`, the convex hull
//! of the origin and the compact boundary faces. The cones over the compact
//! faces with apex at the origin, together with the hull of the boundary
//! when that hull is full-dimensional, subdivide `K` into a polyhedral
//! complex `S`. The convex piecewise affine function that is `1` at the
//! origin and `0` on the hull of the boundary assigns every lattice point
//! of every dilation a weight class in `Q/Z`.
//!
//! This module computes the combinatorial invariants of that picture with
//! exact arithmetic: toric g-polynomials of face intervals, link and local
//! h-polynomials of the subdivision, weighted h*- and l*-polynomials of
//! subpolytopes in one and two variables, the equivariant Hodge-Deligne
//! polynomial of the Milnor fiber for each nontrivial eigenvalue class, and
//! from the symmetric unimodal decomposition of the local h-polynomials the
//! complete Jordan block structure of the local monodromy away from the
//! trivial eigenvalue.

use crate::equivariant_hodge::Entry;
use crate::error::Error;
use crate::jordan_spectrum::{require_kind, JordanTable};
use crate::lattice_geom::linalg::dot;
use crate::lattice_geom::{LatticePointMode, Polytope};
use crate::newton::{NewtonKind, NewtonPolyhedron};
use crate::poly::{BiPoly, Poly};
use crate::qz::QZ;
use crate::scalar::{binomial, sign, Scalar};
use crate::Result;
use num_rational::Ratio;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

/// A finite graded poset with memoized toric g-polynomials of its closed
/// intervals. Elements carry the dimension of the face they stand for; the
/// empty face has dimension `-1`.
struct Poset<S: Scalar> {
    dims: Vec<isize>,
    le: Vec<Vec<bool>>,
    memo: Mutex<HashMap<(usize, usize, bool), Poly<S>>>,
}

impl<S: Scalar> Poset<S> {
    fn new(dims: Vec<isize>, le: Vec<Vec<bool>>) -> Self {
        Poset { dims, le, memo: Mutex::new(HashMap::new()) }
    }

    /// Toric g-polynomial of the interval `[lo, hi]`, or of the reversed
    /// interval when `reversed` is set. The boundary sum of the defining
    /// recursion must factor as `(t - 1)` times a palindromic h-polynomial;
    /// the g-coefficients are the differences of consecutive h-coefficients
    /// up to half the degree.
    fn g(&self, lo: usize, hi: usize, reversed: bool) -> Result<Poly<S>> {
        if !self.le[lo][hi] {
            return Err(Error::Precondition(
                "toric g-polynomial of a non-comparable pair of faces".into(),
            ));
        }
        let span = (self.dims[hi] - self.dims[lo]) as usize;
        if span == 0 {
            return Ok(Poly::one());
        }
        if let Some(p) = self.memo.lock().unwrap().get(&(lo, hi, reversed)) {
            return Ok(p.clone());
        }
        let mut rhs = Poly::zero();
        for mid in 0..self.dims.len() {
            if !(self.le[lo][mid] && self.le[mid][hi]) {
                continue;
            }
            let term = if reversed {
                if mid == lo {
                    continue;
                }
                let expo = (self.dims[mid] - self.dims[lo]) as usize;
                self.g(mid, hi, true)?.mul(&Poly::t_minus_one_pow(expo))
            } else {
                if mid == hi {
                    continue;
                }
                let expo = (self.dims[hi] - self.dims[mid]) as usize;
                self.g(lo, mid, false)?.mul(&Poly::t_minus_one_pow(expo))
            };
            rhs = rhs.add(&term);
        }
        let h = rhs
            .div_exact(&Poly::from_coeffs(vec![-S::one(), S::one()]))
            .ok_or_else(|| Error::Inconsistent("toric h-recursion left a remainder".into()))?;
        if h.degree() != span as isize - 1 {
            return Err(Error::Inconsistent("toric h-polynomial of the wrong degree".into()));
        }
        for i in 0..span {
            if h.coeff(i) != h.coeff(span - 1 - i) {
                return Err(Error::Inconsistent("toric h-polynomial is not palindromic".into()));
            }
        }
        let mut gc = Vec::new();
        for i in 0..=(span - 1) / 2 {
            let prev = if i == 0 { S::zero() } else { h.coeff(i - 1) };
            gc.push(h.coeff(i) - prev);
        }
        let g = Poly::from_coeffs(gc);
        self.memo.lock().unwrap().insert((lo, hi, reversed), g.clone());
        Ok(g)
    }
}

fn face_poset<S: Scalar>(p: &Polytope<S>) -> Poset<S> {
    let k = p.faces().len();
    let dims: Vec<isize> = p.faces().iter().map(|f| f.dim).collect();
    let mut le = vec![vec![false; k]; k];
    for (a, row) in le.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = p.face_le(a, b);
        }
    }
    Poset::new(dims, le)
}

/// Toric g-polynomial of the full face interval of a polytope, from the
/// empty face to the polytope itself. `1` for simplices, `1 + t` for a
/// square, `1 + (m - 3) t` for an m-gon.
pub fn toric_g<S: Scalar>(p: &Polytope<S>) -> Result<Poly<S>> {
    toric_g_interval(p, p.empty_face_id(), p.improper_face_id(), false)
}

/// Toric g-polynomial of the face interval `[lo, hi]` of a polytope, with
/// ids as in [`Polytope::faces`]; `reversed` computes the g-polynomial of
/// the order-reversed interval.
pub fn toric_g_interval<S: Scalar>(
    p: &Polytope<S>,
    lo: usize,
    hi: usize,
    reversed: bool,
) -> Result<Poly<S>> {
    if lo >= p.faces().len() || hi >= p.faces().len() {
        return Err(Error::Precondition("face id out of range".into()));
    }
    face_poset(p).g(lo, hi, reversed)
}

/// One cell of the subdivision. The empty cell has no vertices and
/// dimension `-1`; cones over compact boundary faces record the dimension
/// of their base face.
struct Cell<S: Scalar> {
    verts: Vec<Vec<S>>,
    dim: isize,
    poly: Option<Polytope<S>>,
    gamma_dim: Option<usize>,
}

/// The region under the Newton boundary of a convenient local polyhedron,
/// subdivided by the cones over the compact faces and, when it is
/// full-dimensional, the hull of the boundary, together with the weight
/// function induced by the boundary.
pub struct PolySubdivision<S: Scalar> {
    n: usize,
    base: Polytope<S>,
    base_poset: Poset<S>,
    facet_offsets: Vec<S>,
    cells: Vec<Cell<S>>,
    cell_poset: Poset<S>,
    sigma: Vec<usize>,
    pieces: Vec<(Vec<S>, S)>,
    hstar_cache: Mutex<HashMap<Vec<Vec<S>>, BTreeMap<QZ<S>, Poly<S>>>>,
    lstar_cache: Mutex<HashMap<Vec<Vec<S>>, BTreeMap<QZ<S>, Poly<S>>>>,
}

impl<S: Scalar> PolySubdivision<S> {
    /// Build the subdivided region of a convenient local Newton polyhedron.
    /// The cells are verified to tile the region: the boundary facets must
    /// be the lower hull of their height functionals, maximal cells must
    /// meet in common faces, and their normalized volumes must add up to
    /// the volume of the region.
    pub fn from_newton(np: &NewtonPolyhedron<S>) -> Result<Self> {
        require_kind(np, NewtonKind::Local)?;
        let n = np.n();
        let rd = np.full()?.ok_or(Error::EmptySupport)?;
        let origin = vec![S::zero(); n];

        // Compact faces with their supporting data; facets give the affine
        // pieces of the weight function.
        let mut face_data: Vec<(Vec<Vec<S>>, usize)> = Vec::new();
        let mut pieces: Vec<(Vec<S>, S, BTreeSet<Vec<S>>)> = Vec::new();
        for fid in rd.compact_face_ids() {
            let mut verts = rd.face_vertex_points(fid);
            verts.sort();
            let fg = np.face_geometry(&verts)?;
            if fg.gamma_dim + 1 == n {
                pieces.push((
                    fg.height_row().to_vec(),
                    fg.d.clone(),
                    verts.iter().cloned().collect(),
                ));
            }
            face_data.push((verts, fg.gamma_dim));
        }
        if pieces.is_empty() {
            return Err(Error::Inconsistent("no boundary facet in a convenient region".into()));
        }

        // The region: hull of the origin and the compact boundary.
        let mut kpts: Vec<Vec<S>> = vec![origin.clone()];
        for (verts, _) in &face_data {
            kpts.extend(verts.iter().cloned());
        }
        let base = Polytope::new(n, &kpts)?;

        // Every boundary vertex must lie on or above every facet piece,
        // with equality exactly on the facet itself.
        let vert_set: BTreeSet<Vec<S>> =
            face_data.iter().flat_map(|(v, _)| v.iter().cloned()).collect();
        for (u, d, fverts) in &pieces {
            for w in &vert_set {
                let val = dot(u, w);
                if val < *d {
                    return Err(Error::Inconsistent(
                        "a boundary vertex lies under a facet of the region".into(),
                    ));
                }
                if (val == *d) != fverts.contains(w) {
                    return Err(Error::Inconsistent(
                        "a boundary facet does not match the lower hull of its height".into(),
                    ));
                }
            }
        }

        // Cells: the empty cell, the origin, every compact face, and the
        // cone over every compact face.
        let mut cells: Vec<Cell<S>> = Vec::new();
        let mut seen: BTreeSet<Vec<Vec<S>>> = BTreeSet::new();
        let push = |cells: &mut Vec<Cell<S>>,
                        seen: &mut BTreeSet<Vec<Vec<S>>>,
                        verts: Vec<Vec<S>>,
                        gamma_dim: Option<usize>|
         -> Result<()> {
            if !seen.insert(verts.clone()) {
                return Err(Error::Inconsistent("duplicate cell in the subdivision".into()));
            }
            let poly = Polytope::new(n, &verts)?;
            let dim = poly.dim() as isize;
            cells.push(Cell { verts, dim, poly: Some(poly), gamma_dim });
            Ok(())
        };
        cells.push(Cell { verts: Vec::new(), dim: -1, poly: None, gamma_dim: None });
        seen.insert(Vec::new());
        push(&mut cells, &mut seen, vec![origin.clone()], None)?;
        for (verts, gdim) in &face_data {
            push(&mut cells, &mut seen, verts.clone(), None)?;
            let last = cells.last().expect("cell just pushed");
            if last.dim != *gdim as isize {
                return Err(Error::Inconsistent("compact face dimension disagreement".into()));
            }
            let mut pverts = verts.clone();
            pverts.push(origin.clone());
            pverts.sort();
            push(&mut cells, &mut seen, pverts, Some(*gdim))?;
            let last = cells.last().expect("cell just pushed");
            if last.dim != (*gdim + 1) as isize {
                return Err(Error::Inconsistent("degenerate cone over a compact face".into()));
            }
        }

        // When the hull of the compact boundary is full-dimensional the
        // cones alone do not cover the region; the hull and its faces join
        // the complex as cells on which the weight function vanishes.
        let cap_verts: Vec<Vec<S>> = vert_set.iter().cloned().collect();
        let cap = Polytope::new(n, &cap_verts)?;
        if (pieces.len() >= 2) != (cap.dim() == n) {
            return Err(Error::Inconsistent(
                "the hull of the boundary disagrees with the facet count".into(),
            ));
        }
        let mut cap_id: Option<usize> = None;
        if cap.dim() == n {
            for fc in cap.faces() {
                if fc.dim < 0 {
                    continue;
                }
                let mut fverts: Vec<Vec<S>> =
                    fc.verts.iter().map(|&i| cap.points()[i].clone()).collect();
                fverts.sort();
                if seen.contains(&fverts) {
                    continue;
                }
                push(&mut cells, &mut seen, fverts, None)?;
            }
            cap_id = Some(cells.len() - 1);
            let last = cells.last().expect("cell just pushed");
            if last.dim != n as isize {
                return Err(Error::Inconsistent(
                    "the hull of the boundary is not the last cell".into(),
                ));
            }
        }

        // Containment order of the cells.
        let k = cells.len();
        let mut le = vec![vec![false; k]; k];
        for a in 0..k {
            for b in 0..k {
                le[a][b] = cells[a]
                    .verts
                    .iter()
                    .all(|v| cells[b].verts.binary_search(v).is_ok());
            }
        }
        let dims: Vec<isize> = cells.iter().map(|c| c.dim).collect();
        let cell_poset = Poset::new(dims, le);

        // Maximal cells must intersect in a common face of both.
        let mut maximal: Vec<usize> =
            (0..k).filter(|&c| cells[c].gamma_dim == Some(n - 1)).collect();
        maximal.extend(cap_id);
        for (ai, &a) in maximal.iter().enumerate() {
            for &b in &maximal[ai + 1..] {
                let common: Vec<Vec<S>> = cells[a]
                    .verts
                    .iter()
                    .filter(|v| cells[b].verts.binary_search(v).is_ok())
                    .cloned()
                    .collect();
                let pa = cells[a].poly.as_ref().expect("maximal cell polytope");
                let pb = cells[b].poly.as_ref().expect("maximal cell polytope");
                if !has_face_with_verts(pa, &common) || !has_face_with_verts(pb, &common) {
                    return Err(Error::Inconsistent(
                        "two maximal cells do not meet in a common face".into(),
                    ));
                }
            }
        }

        // The maximal cells must tile the region.
        let mut vol = S::zero();
        for &c in &maximal {
            let p = cells[c].poly.as_ref().expect("maximal cell polytope");
            if p.dim() != n {
                return Err(Error::Inconsistent("a maximal cell is not full-dimensional".into()));
            }
            vol = vol + p.normalized_volume();
        }
        if vol != base.normalized_volume() {
            return Err(Error::Inconsistent("the maximal cells do not tile the region".into()));
        }

        // Supporting face of the region for every cell: the smallest face
        // containing it, cut out by the facets the cell lies on.
        let facet_offsets: Vec<S> = base
            .facets()
            .iter()
            .map(|f| dot(&f.normal_ambient, &base.points()[f.verts[0]]))
            .collect();
        let on_facet = |fc: usize, x: &[S]| -> bool {
            dot(&base.facets()[fc].normal_ambient, x) == facet_offsets[fc]
        };
        let mut sigma = Vec::with_capacity(k);
        for cell in &cells {
            let mut best: Option<usize> = None;
            for (qid, q) in base.faces().iter().enumerate() {
                let fits = cell
                    .verts
                    .iter()
                    .all(|v| q.facet_ids.iter().all(|&fc| on_facet(fc, v)));
                if !fits {
                    continue;
                }
                best = Some(match best {
                    None => qid,
                    Some(prev) => {
                        if q.dim < base.face(prev).dim {
                            qid
                        } else {
                            prev
                        }
                    }
                });
            }
            let best = best.ok_or_else(|| {
                Error::Inconsistent("a cell lies in no face of the region".into())
            })?;
            for (qid, q) in base.faces().iter().enumerate() {
                let fits = cell
                    .verts
                    .iter()
                    .all(|v| q.facet_ids.iter().all(|&fc| on_facet(fc, v)));
                if fits && !base.face_le(best, qid) {
                    return Err(Error::Inconsistent(
                        "a cell has no unique minimal supporting face".into(),
                    ));
                }
            }
            sigma.push(best);
        }

        let base_poset = face_poset(&base);
        Ok(PolySubdivision {
            n,
            base,
            base_poset,
            facet_offsets,
            cells,
            cell_poset,
            sigma,
            pieces: pieces.into_iter().map(|(u, d, _)| (u, d)).collect(),
            hstar_cache: Mutex::new(HashMap::new()),
            lstar_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The subdivided region: the hull of the origin and the compact
    /// boundary faces.
    pub fn base(&self) -> &Polytope<S> {
        &self.base
    }

    /// Number of cells, including the empty cell.
    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Number of inclusion-maximal cells: the cones over the compact
    /// boundary facets, plus the hull of the boundary when that hull is
    /// full-dimensional.
    pub fn maximal_cell_count(&self) -> usize {
        (0..self.cells.len())
            .filter(|&c| (0..self.cells.len()).all(|d| d == c || !self.cell_poset.le[c][d]))
            .count()
    }

    pub fn empty_cell_id(&self) -> usize {
        0
    }

    /// Cell with the given vertex set, if any.
    pub fn cell_id(&self, verts: &[Vec<S>]) -> Option<usize> {
        let mut key = verts.to_vec();
        key.sort();
        key.dedup();
        self.cells.iter().position(|c| c.verts == key)
    }

    pub fn cell_dim(&self, cell: usize) -> Result<isize> {
        self.check_cell(cell)?;
        Ok(self.cells[cell].dim)
    }

    pub fn cell_vertices(&self, cell: usize) -> Result<&[Vec<S>]> {
        self.check_cell(cell)?;
        Ok(&self.cells[cell].verts)
    }

    /// All weight classes supported by the region: every class whose
    /// denominator divides the lattice distance of a boundary facet.
    pub fn classes(&self) -> Vec<QZ<S>> {
        let mut out: BTreeSet<QZ<S>> = BTreeSet::new();
        for (_, d) in &self.pieces {
            out.extend(QZ::all_with_denominator(d));
        }
        out.into_iter().collect()
    }

    fn check_cell(&self, cell: usize) -> Result<()> {
        if cell >= self.cells.len() {
            return Err(Error::Precondition("cell id out of range".into()));
        }
        Ok(())
    }

    fn min_ratio(&self, x: &[S]) -> Ratio<S> {
        self.pieces
            .iter()
            .map(|(u, d)| Ratio::new(dot(u, x), d.clone()))
            .min()
            .expect("at least one boundary facet")
    }

    fn in_base(&self, x: &[S]) -> bool {
        self.base
            .facets()
            .iter()
            .zip(&self.facet_offsets)
            .all(|(f, off)| dot(&f.normal_ambient, x) >= *off)
    }

    /// The weight function: `1` at the origin, `0` on the hull of the
    /// compact boundary, affine on each maximal cell.
    pub fn nu(&self, x: &[S]) -> Result<Ratio<S>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {}",
                x.len(),
                self.n
            )));
        }
        if !self.in_base(x) {
            return Err(Error::Precondition("point outside the subdivided region".into()));
        }
        let r = self.min_ratio(x);
        let one = Ratio::one();
        Ok(if r >= one { Ratio::from_integer(S::zero()) } else { one - r })
    }

    /// Weight class of a lattice point of the region: the value of the
    /// weight function modulo `Z`.
    pub fn nu_class(&self, x: &[S]) -> Result<QZ<S>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of length {} in dimension {}",
                x.len(),
                self.n
            )));
        }
        if !self.in_base(x) {
            return Err(Error::Precondition("point outside the subdivided region".into()));
        }
        Ok(self.class_of(x, 1))
    }

    /// Class of a lattice point of the `m`-th dilation: the weight extends
    /// to the dilation as `m - min_ratio`, clipped at the hull of the
    /// boundary where it stays zero.
    fn class_of(&self, x: &[S], m: usize) -> QZ<S> {
        let r = self.min_ratio(x);
        let cap = Ratio::from_integer(S::small(m as i32));
        let r = if r > cap { cap } else { r };
        QZ::new(-r.numer().clone(), r.denom().clone())
    }

    fn cell_in_base_face(&self, cell: usize, face_id: usize) -> bool {
        let q = self.base.face(face_id);
        self.cells[cell].verts.iter().all(|v| {
            q.facet_ids
                .iter()
                .all(|&fc| dot(&self.base.facets()[fc].normal_ambient, v) == self.facet_offsets[fc])
        })
    }

    /// Link h-polynomial of a cell inside the restriction of the
    /// subdivision to a face of the region.
    fn link_h_in(&self, face_id: usize, cell: usize) -> Result<Poly<S>> {
        if !self.cell_in_base_face(cell, face_id) {
            return Err(Error::Precondition(
                "the cell does not lie in the requested face of the region".into(),
            ));
        }
        let qdim = self.base.face(face_id).dim;
        let span = (qdim - self.cells[cell].dim) as usize;
        let mut rhs = Poly::zero();
        for c2 in 0..self.cells.len() {
            if !self.cell_poset.le[cell][c2] || !self.cell_in_base_face(c2, face_id) {
                continue;
            }
            let expo = (qdim - self.cells[c2].dim) as usize;
            rhs = rhs.add(&self.cell_poset.g(cell, c2, false)?.mul(&Poly::t_minus_one_pow(expo)));
        }
        if rhs.degree() > span as isize {
            return Err(Error::Inconsistent(
                "link h-polynomial exceeding its degree bound".into(),
            ));
        }
        Ok(rhs.reverse(span))
    }

    /// Link h-polynomial of a cell in the full subdivision. The empty cell
    /// gives the h-polynomial of the subdivision itself; a maximal cell
    /// gives `1`.
    pub fn link_h(&self, cell: usize) -> Result<Poly<S>> {
        self.check_cell(cell)?;
        self.link_h_in(self.base.improper_face_id(), cell)
    }

    /// Local h-polynomial of a cell: the inclusion-exclusion of its link
    /// h-polynomials over the faces of the region supporting it. Always
    /// palindromic with center half the codimension of the cell.
    pub fn local_h(&self, cell: usize) -> Result<Poly<S>> {
        self.check_cell(cell)?;
        let s = self.sigma[cell];
        let top = self.base.improper_face_id();
        let pdim = self.base.dim() as isize;
        let mut l = Poly::zero();
        for (qid, q) in self.base.faces().iter().enumerate() {
            if !self.base.face_le(s, qid) {
                continue;
            }
            let h = self.link_h_in(qid, cell)?;
            let g = self.base_poset.g(qid, top, true)?;
            l = l.add(&h.mul(&g).scale(&sign::<S>((pdim - q.dim) as usize)));
        }
        let span = (pdim - self.cells[cell].dim) as usize;
        if l.degree() > span as isize {
            return Err(Error::Inconsistent(
                "local h-polynomial exceeding its degree bound".into(),
            ));
        }
        if l != l.reverse(span) {
            return Err(Error::Inconsistent("local h-polynomial is not palindromic".into()));
        }
        Ok(l)
    }

    fn hstar_all(&self, verts: &[Vec<S>]) -> Result<BTreeMap<QZ<S>, Poly<S>>> {
        let mut key = verts.to_vec();
        key.sort();
        if let Some(m) = self.hstar_cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let p = Polytope::new(self.n, &key)?;
        let e = p.dim();
        // Class-refined lattice point counts of the first dilations; the
        // extra dilation checks that the counts are polynomial of degree
        // at most the dimension.
        let mut phis: Vec<BTreeMap<QZ<S>, S>> = Vec::with_capacity(e + 2);
        for m in 0..=e + 1 {
            let f = S::from(m as i32);
            let scaled: Vec<Vec<S>> = key
                .iter()
                .map(|v| v.iter().map(|c| c.clone() * f.clone()).collect())
                .collect();
            let dp = Polytope::new(self.n, &scaled)?;
            let mut hist: BTreeMap<QZ<S>, S> = BTreeMap::new();
            for pt in dp.lattice_points(LatticePointMode::Full) {
                let cl = self.class_of(&pt, m);
                let slot = hist.entry(cl).or_insert_with(S::zero);
                *slot = slot.clone() + S::one();
            }
            phis.push(hist);
        }
        let classes: BTreeSet<QZ<S>> = phis.iter().flat_map(|h| h.keys().cloned()).collect();
        let mut out: BTreeMap<QZ<S>, Poly<S>> = BTreeMap::new();
        for cl in classes {
            let phi = |m: usize| phis[m].get(&cl).cloned().unwrap_or_else(S::zero);
            let mut coeffs = Vec::with_capacity(e + 1);
            let mut top = S::zero();
            for k in 0..=e + 1 {
                let mut c = S::zero();
                for j in 0..=k {
                    c = c + sign::<S>(j) * binomial::<S>(e + 1, j) * phi(k - j);
                }
                if k <= e {
                    coeffs.push(c);
                } else {
                    top = c;
                }
            }
            if !top.is_zero() {
                return Err(Error::Inconsistent(
                    "weighted lattice point counts are not polynomial in the dilation".into(),
                ));
            }
            let poly = Poly::from_coeffs(coeffs);
            if !poly.is_zero() {
                out.insert(cl, poly);
            }
        }
        self.hstar_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn lstar_all(&self, verts: &[Vec<S>]) -> Result<BTreeMap<QZ<S>, Poly<S>>> {
        let mut key = verts.to_vec();
        key.sort();
        if let Some(m) = self.lstar_cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let p = Polytope::new(self.n, &key)?;
        let poset = face_poset(&p);
        let top = p.improper_face_id();
        let pdim = p.dim() as isize;
        let mut out: BTreeMap<QZ<S>, Poly<S>> = BTreeMap::new();
        for (qid, q) in p.faces().iter().enumerate() {
            let gq = poset.g(qid, top, true)?;
            let sgn = sign::<S>((pdim - q.dim) as usize);
            let hs: BTreeMap<QZ<S>, Poly<S>> = if q.dim < 0 {
                // The empty face counts one point of trivial class.
                let mut m = BTreeMap::new();
                m.insert(QZ::one(), Poly::one());
                m
            } else {
                let fverts: Vec<Vec<S>> =
                    q.verts.iter().map(|&i| p.points()[i].clone()).collect();
                self.hstar_all(&fverts)?
            };
            for (cl, h) in hs {
                let add = h.mul(&gq).scale(&sgn);
                let cur = out.remove(&cl).unwrap_or_else(Poly::zero);
                let next = cur.add(&add);
                out.insert(cl, next);
            }
        }
        out.retain(|_, poly| !poly.is_zero());
        self.lstar_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn check_region(&self, p: &Polytope<S>) -> Result<()> {
        if p.ambient() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "polytope in dimension {} against a region in dimension {}",
                p.ambient(),
                self.n
            )));
        }
        for v in p.vertex_points() {
            if !self.in_base(&v) {
                return Err(Error::Precondition(
                    "the polytope leaves the subdivided region".into(),
                ));
            }
        }
        Ok(())
    }

    /// Weighted h*-polynomial of a lattice polytope inside the region for
    /// one weight class: the numerator coefficients of the class-refined
    /// Ehrhart count.
    pub fn weighted_hstar(&self, p: &Polytope<S>, lambda: &QZ<S>) -> Result<Poly<S>> {
        self.check_region(p)?;
        let verts = p.vertex_points();
        Ok(self.hstar_all(&verts)?.get(lambda).cloned().unwrap_or_else(Poly::zero))
    }

    /// Weighted l*-polynomial of a lattice polytope inside the region for
    /// one weight class: the alternating face sum of weighted
    /// h*-polynomials against reversed-interval g-polynomials.
    pub fn weighted_lstar(&self, p: &Polytope<S>, lambda: &QZ<S>) -> Result<Poly<S>> {
        self.check_region(p)?;
        let verts = p.vertex_points();
        Ok(self.lstar_all(&verts)?.get(lambda).cloned().unwrap_or_else(Poly::zero))
    }

    fn cell_lstar(&self, cell: usize, lambda: &QZ<S>) -> Result<Poly<S>> {
        if self.cells[cell].dim < 0 {
            return Ok(if lambda.is_one() { Poly::one() } else { Poly::zero() });
        }
        Ok(self
            .lstar_all(&self.cells[cell].verts)?
            .get(lambda)
            .cloned()
            .unwrap_or_else(Poly::zero))
    }

    /// Two-variable weighted h*-polynomial of the region: the cell sum of
    /// `l*(F; u v^{-1})` times the link h-polynomial of `F` at `uv` times
    /// `v^(dim F + 1)`. Specializing `v = 1` recovers the one-variable
    /// weighted h*-polynomial.
    pub fn weighted_hstar_mixed(&self, lambda: &QZ<S>) -> Result<BiPoly<S>> {
        self.mixed(lambda, false)
    }

    /// Two-variable weighted l*-polynomial of the region: the cell sum of
    /// `l*(F; u v^{-1})` times the local h-polynomial of `F` at `uv` times
    /// `v^(dim F + 1)`. Specializing `v = 1` recovers the one-variable
    /// weighted l*-polynomial.
    pub fn weighted_lstar_mixed(&self, lambda: &QZ<S>) -> Result<BiPoly<S>> {
        self.mixed(lambda, true)
    }

    fn mixed(&self, lambda: &QZ<S>, local: bool) -> Result<BiPoly<S>> {
        let mut out = BiPoly::zero();
        for cid in 0..self.cells.len() {
            let lst = self.cell_lstar(cid, lambda)?;
            if lst.is_zero() {
                continue;
            }
            let inner = if local { self.local_h(cid)? } else { self.link_h(cid)? };
            if inner.is_zero() {
                continue;
            }
            let term = BiPoly::from_uni(&lst, 1, -1)
                .mul(&BiPoly::from_uni(&inner, 1, 1))
                .mul(&BiPoly::monomial(S::one(), 0, (self.cells[cid].dim + 1) as i64));
            out = out.add(&term);
        }
        if !out.is_polynomial() {
            return Err(Error::Inconsistent(
                "mixed weighted polynomial with negative exponents".into(),
            ));
        }
        let verts = self.base.vertex_points();
        let direct = if local {
            self.lstar_all(&verts)?.get(lambda).cloned().unwrap_or_else(Poly::zero)
        } else {
            self.hstar_all(&verts)?.get(lambda).cloned().unwrap_or_else(Poly::zero)
        };
        if specialize_v_one(&out) != direct {
            return Err(Error::Inconsistent(
                "mixed weighted polynomial fails its one-variable specialization".into(),
            ));
        }
        Ok(out)
    }

    /// Equivariant Hodge-Deligne polynomial of the Milnor fiber for a
    /// nontrivial eigenvalue class: the coefficient of `u^p v^q` is the
    /// Hodge-Deligne number of the eigenspace.
    pub fn e_polynomial(&self, lambda: &QZ<S>) -> Result<BiPoly<S>> {
        if lambda.is_one() {
            return Err(Error::Precondition(
                "the equivariant polynomial is computed for nontrivial eigenvalue classes only"
                    .into(),
            ));
        }
        let l = self.weighted_lstar_mixed(lambda)?;
        l.scale(&sign::<S>(self.n - 1)).div_uv().ok_or_else(|| {
            Error::Inconsistent("the mixed weighted polynomial is not divisible by uv".into())
        })
    }

    /// Jordan block counts of the local monodromy on all nontrivial
    /// eigenvalue classes. For every cone over a compact face the local
    /// h-polynomial splits into a nonnegative staircase; each staircase
    /// layer contributes blocks whose size drops by two per step, weighted
    /// by the l*-mass of the cone at the class.
    pub fn jordan_table(&self) -> Result<JordanTable<S>> {
        let n = self.n;
        let mut totals: BTreeMap<(QZ<S>, usize), S> = BTreeMap::new();
        let mut check: BTreeSet<QZ<S>> = BTreeSet::new();
        for cid in 0..self.cells.len() {
            let Some(gdim) = self.cells[cid].gamma_dim else {
                continue;
            };
            let span = n - 1 - gdim;
            let lh = self.local_h(cid)?;
            let tilde = peel(&lh, span)?;
            let ls = self.lstar_all(&self.cells[cid].verts)?;
            for (cl, poly) in ls {
                if cl.is_one() || poly.is_zero() {
                    continue;
                }
                check.insert(cl.clone());
                let c = poly.eval(&S::one());
                if c.is_zero() {
                    continue;
                }
                for (i, t) in tilde.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let size = n - gdim - 2 * i;
                    let key = (cl.clone(), size);
                    let cur = totals.remove(&key).unwrap_or_else(S::zero);
                    totals.insert(key, cur + c.clone() * t.clone());
                }
            }
        }
        // Cross-check: expanding every block of size `s` at a class into
        // `u^(n + 2 - s)` must reproduce the diagonal `v = u` of the
        // two-variable weighted l*-polynomial of that class.
        for cl in &check {
            let mut expansion = Poly::zero();
            for ((tcl, size), v) in &totals {
                if tcl == cl {
                    expansion = expansion.add(&Poly::monomial(v.clone(), n + 2 - size));
                }
            }
            let diag = self
                .weighted_lstar_mixed(cl)?
                .specialize_diagonal()
                .ok_or_else(|| {
                    Error::Inconsistent("mixed weighted polynomial with negative exponents".into())
                })?;
            if diag != expansion {
                return Err(Error::Inconsistent(
                    "Jordan blocks disagree with the diagonal of the mixed weighted polynomial"
                        .into(),
                ));
            }
        }
        let mut out = JordanTable::new(n);
        for ((cl, size), v) in totals {
            if v < S::zero() {
                return Err(Error::Inconsistent("negative Jordan block count".into()));
            }
            out.set_count(cl, size, Entry::Known(v));
        }
        Ok(out)
    }
}

fn has_face_with_verts<S: Scalar>(p: &Polytope<S>, pts: &[Vec<S>]) -> bool {
    let ids: Option<Vec<usize>> = pts.iter().map(|x| p.point_index(x)).collect();
    let Some(mut ids) = ids else {
        return false;
    };
    ids.sort_unstable();
    p.faces().iter().any(|f| {
        let mut fv = f.verts.clone();
        fv.sort_unstable();
        fv == ids
    })
}

fn specialize_v_one<S: Scalar>(b: &BiPoly<S>) -> Poly<S> {
    let mut out = Poly::zero();
    for ((i, _), c) in b.terms() {
        out = out.add(&Poly::monomial(c.clone(), *i as usize));
    }
    out
}

/// Nonnegative staircase decomposition of a palindromic polynomial with
/// center `span / 2`: coefficients of `t^i + ... + t^(span - i)` layers.
fn peel<S: Scalar>(l: &Poly<S>, span: usize) -> Result<Vec<S>> {
    if l.degree() > span as isize {
        return Err(Error::Inconsistent(
            "local h-polynomial exceeding its degree bound".into(),
        ));
    }
    let mut tilde = Vec::new();
    for i in 0..=span / 2 {
        let prev = if i == 0 { S::zero() } else { l.coeff(i - 1) };
        let t = l.coeff(i) - prev;
        if t < S::zero() {
            return Err(Error::Inconsistent("local h-polynomial is not unimodal".into()));
        }
        tilde.push(t);
    }
    let mut rec = Poly::zero();
    for (i, t) in tilde.iter().enumerate() {
        if t.is_zero() {
            continue;
        }
        let ones = Poly::from_coeffs(vec![S::one(); span - 2 * i + 1]).shift(i);
        rec = rec.add(&ones.scale(t));
    }
    if &rec != l {
        return Err(Error::Inconsistent(
            "the staircase decomposition does not reconstruct the local h-polynomial".into(),
        ));
    }
    Ok(tilde)
}

/// Subdivided region under the Newton boundary of a convenient local
/// polyhedron.
pub fn subdivision_from_newton<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<PolySubdivision<S>> {
    PolySubdivision::from_newton(np)
}

/// Equivariant Hodge-Deligne polynomial of the Milnor fiber at a
/// nontrivial eigenvalue class.
pub fn equivariant_e<S: Scalar>(np: &NewtonPolyhedron<S>, lambda: &QZ<S>) -> Result<BiPoly<S>> {
    if lambda.is_one() {
        return Err(Error::Precondition(
            "the equivariant polynomial is computed for nontrivial eigenvalue classes only".into(),
        ));
    }
    PolySubdivision::from_newton(np)?.e_polynomial(lambda)
}

/// Jordan block counts of the local monodromy on all nontrivial
/// eigenvalue classes.
pub fn jordan_full<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<JordanTable<S>> {
    PolySubdivision::from_newton(np)?.jordan_table()
}
