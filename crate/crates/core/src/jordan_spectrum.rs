//! Jordan structure of the monodromies and the Hodge spectrum at infinity.
//!
//! Every nonempty face `gamma` of the relevant Newton boundary (compact
//! faces locally, faces at infinity globally) contributes the equivariant
//! Hodge-Deligne table of the pyramid over it, weighted by the character
//! sending a lattice point to the class of its supporting value divided by
//! the lattice distance of the face, and twisted by a power of `(1 - L)`.
//! The sum of the contributions is the table of the (reduced) cohomology
//! the monodromy acts on. Signed anti-diagonal sums of this table count
//! Jordan blocks of each size per eigenvalue class; signed row sums give
//! the coefficients of the Hodge spectrum at infinity.
//!
//! Block counts of the two largest sizes, and counts for the unit
//! eigenvalue, also have direct lattice-point descriptions; these are
//! exposed separately ([`jordan_top_sizes`], [`jordan_eigen1_top`],
//! [`jordan_infinity_prime`]) and double as cross-checks. The spectrum is
//! computed by two independent routes (cone lattice-point generating
//! functions and table row sums) that must agree.

use crate::equivariant_hodge::{
    anti_diagonals_closed, e_row_sums, e_table, e_table_auto, primality, twist, EHodgeTable,
    Entry, TableMode, WeightedPolytope,
};
use crate::error::Error;
use crate::lattice_geom::linalg::dot;
use crate::lattice_geom::{LatticePointMode, Polytope};
use crate::newton::{relint_in_open_orthant, FaceGeometry, NewtonKind, NewtonPolyhedron};
use crate::qz::QZ;
use crate::scalar::{binomial, sign, Scalar};
use crate::zeta::CharPoly;
use crate::Result;
use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Strategy for the per-face tables during assembly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TableChoice {
    /// Per face, the strongest applicable mode (see `e_table_auto`).
    #[default]
    Auto,
    /// Force one table mode for every face.
    Force(TableMode),
}

/// Jordan block counts of a monodromy operator: for each eigenvalue class
/// and block size, the number of blocks, or an undetermined sentinel when
/// the underlying table entries were undetermined. Zero counts are not
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanTable<S: Scalar> {
    n: usize,
    counts: BTreeMap<(QZ<S>, usize), Entry<S>>,
}

impl<S: Scalar> JordanTable<S> {
    pub fn new(n: usize) -> Self {
        JordanTable { n, counts: BTreeMap::new() }
    }

    /// Number of variables the monodromy came from.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, lambda: &QZ<S>, size: usize) -> Entry<S> {
        self.counts
            .get(&(lambda.clone(), size))
            .cloned()
            .unwrap_or(Entry::Known(S::zero()))
    }

    pub fn set_count(&mut self, lambda: QZ<S>, size: usize, e: Entry<S>) {
        if e.is_zero() {
            self.counts.remove(&(lambda, size));
        } else {
            self.counts.insert((lambda, size), e);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(QZ<S>, usize), &Entry<S>)> {
        self.counts.iter()
    }

    /// Eigenvalue classes with at least one stored (nonzero or
    /// undetermined) block count.
    pub fn classes(&self) -> Vec<QZ<S>> {
        let set: BTreeSet<QZ<S>> = self.counts.keys().map(|(a, _)| a.clone()).collect();
        set.into_iter().collect()
    }

    /// Total multiplicity `sum_k k * count(lambda, k)` of an eigenvalue.
    pub fn total_multiplicity(&self, lambda: &QZ<S>) -> Entry<S> {
        let mut acc = Entry::Known(S::zero());
        for ((a, k), e) in &self.counts {
            if a == lambda {
                acc = acc.add(&e.scale(&S::from(*k as i32)));
            }
        }
        acc
    }

    /// Whether every block has size 1. `None` when blocks of size at least
    /// 2 are undetermined.
    pub fn is_semisimple(&self) -> Option<bool> {
        let mut known = true;
        for ((_, k), e) in &self.counts {
            if *k >= 2 {
                match e {
                    Entry::Known(v) if !v.is_zero() => return Some(false),
                    Entry::Known(_) => {}
                    Entry::Undetermined => known = false,
                }
            }
        }
        if known {
            Some(true)
        } else {
            None
        }
    }

    pub fn has_undetermined(&self) -> bool {
        self.counts.values().any(|e| matches!(e, Entry::Undetermined))
    }
}

impl<S: Scalar> fmt::Display for JordanTable<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "trivial");
        }
        let mut first = true;
        for ((a, k), e) in &self.counts {
            if first {
                first = false;
            } else {
                write!(f, ", ")?;
            }
            match e {
                Entry::Known(v) => write!(f, "J_{}({}) x {}", k, a, v)?,
                Entry::Undetermined => write!(f, "J_{}({}) x ?", k, a)?,
            }
        }
        Ok(())
    }
}

/// The Hodge spectrum at infinity: a finite formal sum of rational powers
/// of `t` with integer coefficients. Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum<S: Scalar> {
    n: usize,
    terms: BTreeMap<Ratio<S>, S>,
}

impl<S: Scalar> Spectrum<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Ratio<S>, S> {
        &self.terms
    }

    pub fn coeff(&self, e: &Ratio<S>) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<S: Scalar> fmt::Display for Spectrum<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "t^({})", e)?;
            } else {
                write!(f, "{}*t^({})", c, e)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn require_kind<S: Scalar>(np: &NewtonPolyhedron<S>, kind: NewtonKind) -> Result<()> {
    if np.kind() != kind {
        return Err(Error::Precondition(match kind {
            NewtonKind::Local => "this invariant needs the local Newton polyhedron".into(),
            NewtonKind::AtInfinity => "this invariant needs the Newton polytope at infinity".into(),
        }));
    }
    if let Some(i) = np.missing_axis() {
        return Err(Error::NotConvenient(format!(
            "no support point on the axis of variable {}",
            i + 1
        )));
    }
    Ok(())
}

/// Geometry of every assembly face: compact faces locally, faces at
/// infinity globally, in face id order.
fn assembly_faces<S: Scalar>(
    np: &NewtonPolyhedron<S>,
) -> Result<Vec<(FaceGeometry<S>, Vec<Vec<S>>)>> {
    let rd = np.full()?.expect("a convenient polyhedron has support points");
    let fids = match np.kind() {
        NewtonKind::Local => rd.compact_face_ids(),
        NewtonKind::AtInfinity => rd.infinity_face_ids(),
    };
    let mut out = Vec::new();
    for fid in fids {
        let verts = rd.face_vertex_points(fid);
        out.push((np.face_geometry(&verts)?, verts));
    }
    Ok(out)
}

/// The pyramid over a face, weighted by the supporting-value character of
/// the given context.
fn face_pyramid_weighted<S: Scalar>(
    n: usize,
    fg: &FaceGeometry<S>,
    kind: NewtonKind,
) -> Result<WeightedPolytope<S>> {
    let lin: Vec<S> = match kind {
        NewtonKind::AtInfinity => fg.height_row().iter().map(|c| -c.clone()).collect(),
        NewtonKind::Local => fg.height_row().to_vec(),
    };
    WeightedPolytope::new(n, fg.delta.points(), lin, fg.d.clone())
}

fn face_table<S: Scalar>(w: &WeightedPolytope<S>, choice: TableChoice) -> Result<EHodgeTable<S>> {
    let alphas = QZ::all_with_denominator(w.modulus());
    match choice {
        TableChoice::Auto => e_table_auto(w, &alphas),
        TableChoice::Force(mode) => e_table(w, &alphas, mode),
    }
}

/// Equivariant Hodge-Deligne table of the cohomology the monodromy at
/// infinity acts on, assembled from the faces at infinity. The result is
/// checked against its Serre-type symmetry before being returned.
pub fn assemble_infinity<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<EHodgeTable<S>> {
    assemble_infinity_mode(np, TableChoice::Auto)
}

/// [`assemble_infinity`] with an explicit per-face table strategy.
pub fn assemble_infinity_mode<S: Scalar>(
    np: &NewtonPolyhedron<S>,
    choice: TableChoice,
) -> Result<EHodgeTable<S>> {
    require_kind(np, NewtonKind::AtInfinity)?;
    let n = np.n();
    let mut total = EHodgeTable::new(n);
    for (fg, _) in assembly_faces(np)? {
        let w = face_pyramid_weighted(n, &fg, NewtonKind::AtInfinity)?;
        let t = face_table(&w, choice)?;
        total.add_table(&twist(&t, fg.m));
    }
    check_infinity_symmetry(&total, n)?;
    Ok(total)
}

/// The two summands of the local table: the weighted pyramid contributions
/// of all compact faces, and the trivially weighted contributions of the
/// compact faces of positive dimension (twisted one step further). Their
/// sum is the table of [`assemble_local`]; the first part alone enters one
/// of the unit-eigenvalue block-count routes.
pub fn assemble_local_parts<S: Scalar>(
    np: &NewtonPolyhedron<S>,
) -> Result<(EHodgeTable<S>, EHodgeTable<S>)> {
    assemble_local_parts_mode(np, TableChoice::Auto)
}

/// [`assemble_local_parts`] with an explicit per-face table strategy.
pub fn assemble_local_parts_mode<S: Scalar>(
    np: &NewtonPolyhedron<S>,
    choice: TableChoice,
) -> Result<(EHodgeTable<S>, EHodgeTable<S>)> {
    require_kind(np, NewtonKind::Local)?;
    let n = np.n();
    let mut first = EHodgeTable::new(n);
    let mut second = EHodgeTable::new(n);
    for (fg, verts) in assembly_faces(np)? {
        let w = face_pyramid_weighted(n, &fg, NewtonKind::Local)?;
        let t = face_table(&w, choice)?;
        first.add_table(&twist(&t, fg.m));
        if fg.gamma_dim >= 1 {
            let wt = WeightedPolytope::trivial(n, &verts)?;
            let tt = face_table(&wt, choice)?;
            second.add_table(&twist(&tt, fg.m + 1));
        }
    }
    Ok((first, second))
}

/// Equivariant Hodge-Deligne table of the reduced cohomology of the Milnor
/// fiber at the origin, assembled from the compact faces of the Newton
/// boundary. The result is checked against its Steenbrink-type symmetry
/// and the diagonal shift identity relating it to its first summand.
pub fn assemble_local<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<EHodgeTable<S>> {
    assemble_local_mode(np, TableChoice::Auto)
}

/// [`assemble_local`] with an explicit per-face table strategy.
pub fn assemble_local_mode<S: Scalar>(
    np: &NewtonPolyhedron<S>,
    choice: TableChoice,
) -> Result<EHodgeTable<S>> {
    let (first, second) = assemble_local_parts_mode(np, choice)?;
    let n = np.n();
    let mut total = first.clone();
    total.add_table(&second);
    check_local_symmetry(&total, n)?;
    check_local_shift(&first, &total, n)?;
    Ok(total)
}

fn symmetry_err(msg: &str) -> Error {
    Error::Inconsistent(msg.into())
}

/// Known entries of the table at infinity must vanish outside the known
/// support region, take the value 1 at the top corner for the unit class,
/// and satisfy `e^{p,q} = e^{n-1-q,n-1-p}` (shifted by one for the unit
/// class). Undetermined entries are skipped.
fn check_infinity_symmetry<S: Scalar>(t: &EHodgeTable<S>, n: usize) -> Result<()> {
    let ni = n as isize;
    for ((p, q, a), e) in t.iter() {
        let (pi, qi) = (*p as isize, *q as isize);
        if a.is_one() {
            if pi == ni - 1 && qi == ni - 1 {
                continue;
            }
            if pi > ni - 2 || qi > ni - 2 {
                if e.known().is_some() {
                    return Err(symmetry_err(
                        "unit-class entry outside the support region at infinity",
                    ));
                }
                continue;
            }
            let partner = t.entry((n - 2) - q, (n - 2) - p, a);
            if let (Some(x), Some(y)) = (e.known(), partner.known()) {
                if x != y {
                    return Err(symmetry_err("unit-class symmetry broken at infinity"));
                }
            }
        } else {
            if pi > ni - 1 || qi > ni - 1 {
                if e.known().is_some() {
                    return Err(symmetry_err("entry outside the support region at infinity"));
                }
                continue;
            }
            let partner = t.entry((n - 1) - q, (n - 1) - p, a);
            if let (Some(x), Some(y)) = (e.known(), partner.known()) {
                if x != y {
                    return Err(symmetry_err("symmetry broken at infinity"));
                }
            }
        }
    }
    if let Some(v) = t.entry(n - 1, n - 1, &QZ::one()).known() {
        if !v.is_one() {
            return Err(symmetry_err("top corner of the table at infinity is not 1"));
        }
    }
    Ok(())
}

/// Known entries of the local table must vanish outside the known support
/// region, take the value 1 at the origin corner for the unit class, and
/// satisfy `e^{p,q} = e^{n-1-q,n-1-p}` (shifted by one for the unit
/// class). Undetermined entries are skipped.
fn check_local_symmetry<S: Scalar>(t: &EHodgeTable<S>, n: usize) -> Result<()> {
    let ni = n as isize;
    for ((p, q, a), e) in t.iter() {
        let (pi, qi) = (*p as isize, *q as isize);
        if a.is_one() {
            if pi == 0 && qi == 0 {
                continue;
            }
            if pi < 1 || qi < 1 || pi > ni - 1 || qi > ni - 1 {
                if e.known().is_some() {
                    return Err(symmetry_err("unit-class entry outside the local support region"));
                }
                continue;
            }
            let partner = t.entry(n - q, n - p, a);
            if let (Some(x), Some(y)) = (e.known(), partner.known()) {
                if x != y {
                    return Err(symmetry_err("local unit-class symmetry broken"));
                }
            }
        } else {
            if pi > ni - 1 || qi > ni - 1 {
                if e.known().is_some() {
                    return Err(symmetry_err("entry outside the local support region"));
                }
                continue;
            }
            let partner = t.entry((n - 1) - q, (n - 1) - p, a);
            if let (Some(x), Some(y)) = (e.known(), partner.known()) {
                if x != y {
                    return Err(symmetry_err("local symmetry broken"));
                }
            }
        }
    }
    if let Some(v) = t.entry(0, 0, &QZ::one()).known() {
        if !v.is_one() {
            return Err(symmetry_err("origin corner of the local table is not 1"));
        }
    }
    Ok(())
}

/// The unit-class block of the first summand, shifted one step down the
/// diagonal, must agree with the unit-class block of the full local table.
fn check_local_shift<S: Scalar>(
    first: &EHodgeTable<S>,
    total: &EHodgeTable<S>,
    n: usize,
) -> Result<()> {
    if n < 2 {
        return Ok(());
    }
    let one = QZ::one();
    for p in 0..=n - 2 {
        for q in 0..=n - 2 {
            let x = first.entry(p, q, &one);
            let y = total.entry(p + 1, q + 1, &one);
            if let (Some(a), Some(b)) = (x.known(), y.known()) {
                if a != b {
                    return Err(symmetry_err("local table fails the diagonal shift identity"));
                }
            }
        }
    }
    Ok(())
}

/// Signed sum of two anti-diagonals of the table (skipping negative
/// indices), with the sign of the ambient parity.
fn signed_pair_sum<S: Scalar>(
    t: &EHodgeTable<S>,
    n: usize,
    a: &QZ<S>,
    r1: isize,
    r2: isize,
) -> Entry<S> {
    let mut acc = Entry::Known(S::zero());
    for r in [r1, r2] {
        if r >= 0 {
            acc = acc.add(&t.anti_diagonal_sum(r as usize, a));
        }
    }
    acc.scale(&sign::<S>(n - 1))
}

/// Anti-diagonal sum over the entries with both indices at least 1.
fn anti_diagonal_interior<S: Scalar>(t: &EHodgeTable<S>, r: isize, a: &QZ<S>) -> Entry<S> {
    let mut acc = Entry::Known(S::zero());
    if r < 2 {
        return acc;
    }
    for ((p, q, aa), e) in t.iter() {
        if *p >= 1 && *q >= 1 && (*p + *q) as isize == r && aa == a {
            acc = acc.add(e);
        }
    }
    acc
}

/// Turn a vector of "at least size k" counts (for `k = 1 ..= bound + 1`)
/// into exact per-size counts; the last entry must be zero and no exact
/// count may be negative.
fn package_ge<S: Scalar>(out: &mut JordanTable<S>, a: &QZ<S>, ge: &[Entry<S>]) -> Result<()> {
    if let Some(v) = ge[ge.len() - 1].known() {
        if !v.is_zero() {
            return Err(Error::Inconsistent(
                "Jordan blocks beyond the monodromy size bound".into(),
            ));
        }
    }
    for k in 1..ge.len() {
        let exact = ge[k - 1].add(&ge[k].scale(&-S::one()));
        if let Some(v) = exact.known() {
            if *v < S::zero() {
                return Err(Error::Inconsistent("negative Jordan block count".into()));
            }
        }
        out.set_count(a.clone(), k, exact);
    }
    Ok(())
}

/// Jordan block counts of the monodromy from its assembled table. The
/// `context` selects the local or the at-infinity index pattern for the
/// unit eigenvalue; nontrivial eigenvalues use the same pattern in both
/// contexts. In the local context the unit-eigenvalue counts are computed
/// by two routes that must agree where both are determined.
pub fn jordan_blocks<S: Scalar>(
    t: &EHodgeTable<S>,
    n: usize,
    context: NewtonKind,
) -> Result<JordanTable<S>> {
    if n == 0 {
        return Err(Error::Precondition("block counts need at least one variable".into()));
    }
    let mut classes: BTreeSet<QZ<S>> = t.classes().into_iter().collect();
    classes.insert(QZ::one());
    let mut out = JordanTable::new(n);
    let ni = n as isize;
    for a in &classes {
        let bound = if a.is_one() { n - 1 } else { n };
        let mut ge: Vec<Entry<S>> = Vec::new();
        for k in 1..=bound + 1 {
            let ki = k as isize;
            let e = if !a.is_one() {
                signed_pair_sum(t, n, a, ni - 2 + ki, ni - 1 + ki)
            } else {
                match context {
                    NewtonKind::AtInfinity => signed_pair_sum(t, n, a, ni - 2 - ki, ni - 1 - ki),
                    NewtonKind::Local => {
                        let direct = signed_pair_sum(t, n, a, ni - 1 + ki, ni + ki);
                        let shifted = anti_diagonal_interior(t, ni - ki, a)
                            .add(&anti_diagonal_interior(t, ni + 1 - ki, a))
                            .scale(&sign::<S>(n - 1));
                        match (direct.known(), shifted.known()) {
                            (Some(x), Some(y)) if x != y => {
                                return Err(Error::Inconsistent(
                                    "the two unit-eigenvalue block-count routes disagree".into(),
                                ));
                            }
                            (Some(_), _) => direct,
                            (None, _) => shifted,
                        }
                    }
                }
            };
            ge.push(e);
        }
        package_ge(&mut out, a, &ge)?;
    }
    Ok(out)
}

/// Counts of the two largest possible block sizes for nontrivial
/// eigenvalues, from lattice-point data of the low-dimensional faces in
/// the open orthant: size `n` from the lattice distances of interior
/// vertices, size `n - 1` from height counts inside the pyramids over
/// interior edges. Works for both contexts and any dimension.
pub fn jordan_top_sizes<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<JordanTable<S>> {
    require_kind(np, np.kind())?;
    let n = np.n();
    let mut vertex_distances: Vec<S> = Vec::new();
    let mut edge_data: Vec<(S, BTreeMap<S, S>)> = Vec::new();
    for (fg, verts) in assembly_faces(np)? {
        if fg.gamma_dim == 0 {
            if relint_in_open_orthant(n, &verts) {
                vertex_distances.push(fg.d.clone());
            }
        } else if fg.gamma_dim == 1 && relint_in_open_orthant(n, &verts) {
            let improper = fg.delta.improper_face_id();
            let mut hist: BTreeMap<S, S> = BTreeMap::new();
            for (pt, carrier) in fg.delta.lattice_points_classified() {
                if carrier == improper {
                    let h = fg.d.clone() - fg.height_of(&pt);
                    let slot = hist.entry(h).or_insert_with(S::zero);
                    *slot = slot.clone() + S::one();
                }
            }
            edge_data.push((fg.d.clone(), hist));
        }
    }
    let mut classes: BTreeSet<QZ<S>> = BTreeSet::new();
    for d in &vertex_distances {
        classes.extend(QZ::all_with_denominator(d).into_iter().filter(|a| !a.is_one()));
    }
    for (e, _) in &edge_data {
        classes.extend(QZ::all_with_denominator(e).into_iter().filter(|a| !a.is_one()));
    }
    let mut out = JordanTable::new(n);
    for a in classes {
        let mut top = S::zero();
        for d in &vertex_distances {
            if a.power_is_one(d) {
                top = top + S::one();
            }
        }
        if !top.is_zero() {
            out.set_count(a.clone(), n, Entry::Known(top));
        }
        if n >= 2 {
            let mut sub = S::zero();
            for (e, hist) in &edge_data {
                if a.power_is_one(e) {
                    let k = a.num().clone() * (e.clone() / a.order().clone());
                    let k2 = e.clone() - k.clone();
                    sub = sub
                        + hist.get(&k).cloned().unwrap_or_else(S::zero)
                        + hist.get(&k2).cloned().unwrap_or_else(S::zero);
                }
            }
            if !sub.is_zero() {
                out.set_count(a, n - 1, Entry::Known(sub));
            }
        }
    }
    Ok(out)
}

/// Counts of the two largest possible block sizes for the unit eigenvalue,
/// from the lattice points of the 1-skeleton in the open orthant (size
/// `n - 1`) and twice the interior counts of the 2-faces with relative
/// interior in the open orthant (size `n - 2`). Works for both contexts.
pub fn jordan_eigen1_top<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<JordanTable<S>> {
    require_kind(np, np.kind())?;
    let n = np.n();
    let mut out = JordanTable::new(n);
    if n < 2 {
        return Ok(out);
    }
    let mut skeleton: BTreeSet<Vec<S>> = BTreeSet::new();
    let mut two_face_interior = S::zero();
    for (fg, verts) in assembly_faces(np)? {
        if fg.gamma_dim <= 1 {
            let face = Polytope::new(n, &verts)?;
            for pt in face.lattice_points(LatticePointMode::Full) {
                if pt.iter().all(|c| *c >= S::one()) {
                    skeleton.insert(pt);
                }
            }
        } else if fg.gamma_dim == 2 && n >= 3 && relint_in_open_orthant(n, &verts) {
            let face = Polytope::new(n, &verts)?;
            let count = face.lattice_points(LatticePointMode::RelativeInterior).len();
            two_face_interior = two_face_interior + S::from(count as i32);
        }
    }
    let pi = S::from(skeleton.len() as i32);
    if !pi.is_zero() {
        out.set_count(QZ::one(), n - 1, Entry::Known(pi));
    }
    if n >= 3 {
        let twice = two_face_interior.clone() + two_face_interior;
        if !twice.is_zero() {
            out.set_count(QZ::one(), n - 2, Entry::Known(twice));
        }
    }
    Ok(out)
}

/// Jordan block counts at infinity for nontrivial eigenvalues when the
/// pyramid over every face at infinity is prime, by the direct
/// anti-diagonal face sums; no table is assembled, so nothing can come out
/// undetermined. Errors with a precondition failure when some pyramid is
/// not prime.
pub fn jordan_infinity_prime<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<JordanTable<S>> {
    require_kind(np, NewtonKind::AtInfinity)?;
    let n = np.n();
    let ni = n as isize;
    let mut per_face: Vec<(usize, usize, BTreeMap<QZ<S>, Vec<S>>)> = Vec::new();
    let mut classes: BTreeSet<QZ<S>> = BTreeSet::new();
    for (fg, _) in assembly_faces(np)? {
        let w = face_pyramid_weighted(n, &fg, NewtonKind::AtInfinity)?;
        let (prime, _) = primality(w.poly())?;
        if !prime {
            return Err(Error::Precondition(
                "a face pyramid at infinity is not prime".into(),
            ));
        }
        let mut per = BTreeMap::new();
        for a in QZ::all_with_denominator(&fg.d) {
            if a.is_one() {
                continue;
            }
            classes.insert(a.clone());
            per.insert(a.clone(), anti_diagonals_closed(&w, &a)?);
        }
        per_face.push((fg.gamma_dim, fg.m, per));
    }
    let mut out = JordanTable::new(n);
    for a in &classes {
        let mut ge: Vec<Entry<S>> = Vec::new();
        for k in 1..=n + 1 {
            let mut tot = S::zero();
            for (gamma_dim, m, per) in &per_face {
                let diags = per.get(a);
                for kk in [k, k + 1] {
                    let s = ni - 2 + kk as isize;
                    for r in 0..=*gamma_dim {
                        let diff = s - r as isize;
                        if diff < 0 || diff % 2 != 0 {
                            continue;
                        }
                        let dkr = (diff / 2) as usize;
                        let er = match diags {
                            Some(v) => v[r].clone(),
                            None => S::zero(),
                        };
                        tot = tot + sign::<S>(dkr) * binomial::<S>(*m, dkr) * er;
                    }
                }
            }
            ge.push(Entry::Known(sign::<S>(n - 1) * tot));
        }
        package_ge(&mut out, a, &ge)?;
    }
    Ok(out)
}

fn add_term<S: Scalar>(map: &mut BTreeMap<Ratio<S>, S>, e: Ratio<S>, c: S) {
    if c.is_zero() {
        return;
    }
    let updated = match map.get(&e) {
        Some(old) => old.clone() + c,
        None => c,
    };
    if updated.is_zero() {
        map.remove(&e);
    } else {
        map.insert(e, updated);
    }
}

/// The Hodge spectrum at infinity, computed by two independent routes that
/// must agree: lattice-point generating functions of the truncated cones
/// over the faces at infinity, and signed twisted row sums of the per-face
/// tables. The result is checked to be supported in the open interval
/// `(0, n)` and symmetric under `t -> t^n / t`.
pub fn spectrum_infinity<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<Spectrum<S>> {
    require_kind(np, NewtonKind::AtInfinity)?;
    let n = np.n();
    let nn = S::from(n as i32);
    let n_ratio = Ratio::from_integer(nn.clone());
    let geoms: Vec<FaceGeometry<S>> =
        assembly_faces(np)?.into_iter().map(|(fg, _)| fg).collect();

    let mut cone_route: BTreeMap<Ratio<S>, S> = BTreeMap::new();
    for fg in &geoms {
        let s_count = fg.s_set.len();
        let face_sign = sign::<S>(n - 1 - fg.gamma_dim);
        let delta = &fg.delta;
        let origin = vec![S::zero(); n];
        let origin_local = delta
            .to_local(&origin)
            .expect("the apex is a lattice point of the pyramid");
        let apex_facets: Vec<(Vec<S>, S)> = delta
            .facets()
            .iter()
            .filter(|f| dot(&f.normal_local, &origin_local) == f.offset)
            .map(|f| (f.normal_local.clone(), f.offset.clone()))
            .collect();
        let scaled: Vec<Vec<S>> = delta
            .points()
            .iter()
            .map(|p| p.iter().map(|c| c.clone() * nn.clone()).collect())
            .collect();
        let dilated = Polytope::new(n, &scaled)?;
        for pt in dilated.lattice_points(LatticePointMode::Full) {
            let Some(local) = delta.to_local(&pt) else {
                continue;
            };
            if !apex_facets.iter().all(|(nl, off)| dot(nl, &local) >= *off) {
                continue;
            }
            let h = Ratio::new(fg.height_of(&pt), fg.d.clone());
            for j in 0..=s_count {
                let e = h.clone() + Ratio::from_integer(S::from(j as i32));
                if e <= n_ratio {
                    add_term(
                        &mut cone_route,
                        e,
                        face_sign.clone() * sign::<S>(j) * binomial::<S>(s_count, j),
                    );
                }
            }
        }
    }
    add_term(&mut cone_route, Ratio::from_integer(S::zero()), sign::<S>(n));

    let mut row_route: BTreeMap<Ratio<S>, S> = BTreeMap::new();
    for fg in &geoms {
        let w = face_pyramid_weighted(n, fg, NewtonKind::AtInfinity)?;
        for a in QZ::all_with_denominator(&fg.d) {
            let beta = if a.is_one() {
                Ratio::from_integer(S::one())
            } else {
                Ratio::new(a.num().clone(), a.order().clone())
            };
            for i in 0..n {
                let mut row = S::zero();
                for j in 0..=fg.m.min(i) {
                    row = row + sign::<S>(j) * binomial::<S>(fg.m, j) * e_row_sums(&w, &a, i - j)?;
                }
                if row.is_zero() {
                    continue;
                }
                let e = Ratio::from_integer(S::from(i as i32)) + beta.clone();
                add_term(&mut row_route, e, sign::<S>(n - 1) * row);
            }
        }
    }
    add_term(&mut row_route, n_ratio.clone(), sign::<S>(n));

    if cone_route != row_route {
        return Err(Error::Inconsistent("the two spectrum routes disagree".into()));
    }
    let zero = Ratio::from_integer(S::zero());
    for e in cone_route.keys() {
        if *e <= zero || *e >= n_ratio {
            return Err(Error::Inconsistent(
                "spectrum support leaves the open interval".into(),
            ));
        }
    }
    for (e, c) in &cone_route {
        let partner = n_ratio.clone() - e.clone();
        if cone_route.get(&partner) != Some(c) {
            return Err(Error::Inconsistent("spectrum symmetry violated".into()));
        }
    }
    Ok(Spectrum { n, terms: cone_route })
}

/// Check that the block sizes of every eigenvalue sum to its multiplicity
/// in a characteristic polynomial. Classes with undetermined counts are
/// skipped.
pub fn verify_block_multiplicities<S: Scalar>(
    jt: &JordanTable<S>,
    cp: &CharPoly<S>,
) -> Result<()> {
    let mut classes: BTreeSet<QZ<S>> = jt.classes().into_iter().collect();
    for (d, _) in cp.factors() {
        classes.extend(QZ::all_with_denominator(&d));
    }
    for a in classes {
        if let Some(total) = jt.total_multiplicity(&a).known() {
            if *total != cp.multiplicity(&a) {
                return Err(Error::Inconsistent(
                    "Jordan block sizes do not sum to the eigenvalue multiplicity".into(),
                ));
            }
        }
    }
    Ok(())
}
