//! Monodromy zeta functions from Newton polyhedra: the local zeta function
//! at the origin, the zeta function at infinity, their complete
//! intersection versions, and the zeta function of a meromorphic germ.
//! All of them are alternating products of cyclotomic-type factors
//! `(1 - t^d)^e` read off boundary facets of (sums of) Newton polyhedra.

use crate::error::Error;
use crate::lattice_geom::linalg::{dot, span_lattice_basis, express_in_basis, vec_sub};
use crate::lattice_geom::{mixed_volume, Polytope};
use crate::newton::{NewtonKind, NewtonPolyhedron, Support};
use crate::poly::Poly;
use crate::qz::QZ;
use crate::scalar::{scalar_to_usize, sign, Scalar};
use crate::Result;
use std::collections::BTreeMap;
use std::fmt;

/// A finite product of factors `(1 - t^d)^e` with integer exponents.
#[derive(Clone, PartialEq, Eq)]
pub struct ZetaFunction<S: Scalar> {
    factors: BTreeMap<S, S>,
}

impl<S: Scalar> ZetaFunction<S> {
    pub fn one() -> Self {
        ZetaFunction { factors: BTreeMap::new() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiply by `(1 - t^d)^e`.
    pub fn mul_factor(&mut self, d: S, e: S) {
        if e.is_zero() || d.is_zero() {
            return;
        }
        let cur = self.factors.remove(&d).unwrap_or_else(S::zero);
        let new = cur + e;
        if !new.is_zero() {
            self.factors.insert(d, new);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, e) in &other.factors {
            out.mul_factor(d.clone(), e.clone());
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::one();
        for (d, e) in &self.factors {
            out.mul_factor(d.clone(), S::zero() - e.clone());
        }
        out
    }

    /// Factors as sorted `(d, e)` pairs with `e != 0`.
    pub fn factors(&self) -> Vec<(S, S)> {
        self.factors.iter().map(|(d, e)| (d.clone(), e.clone())).collect()
    }

    /// Degree as a rational function of `t`.
    pub fn degree(&self) -> S {
        let mut deg = S::zero();
        for (d, e) in &self.factors {
            deg = deg + d.clone() * e.clone();
        }
        deg
    }
}

impl<S: Scalar> fmt::Display for ZetaFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (d, e) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == S::one() {
                write!(f, "(1 - t^{})", d)?;
            } else {
                write!(f, "(1 - t^{})^{}", d, e)?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for ZetaFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A product `prod_d (t^d - 1)^{c_d}` representing the characteristic
/// polynomial of a quasi-unipotent monodromy operator.
#[derive(Clone, PartialEq, Eq)]
pub struct CharPoly<S: Scalar> {
    factors: BTreeMap<S, S>,
}

impl<S: Scalar> CharPoly<S> {
    pub fn factors(&self) -> Vec<(S, S)> {
        self.factors.iter().map(|(d, c)| (d.clone(), c.clone())).collect()
    }

    /// Degree of the polynomial: the dimension of the space the operator
    /// acts on.
    pub fn degree(&self) -> S {
        let mut deg = S::zero();
        for (d, c) in &self.factors {
            deg = deg + d.clone() * c.clone();
        }
        deg
    }

    /// Multiplicity of the eigenvalue `lambda` as a root.
    pub fn multiplicity(&self, lambda: &QZ<S>) -> S {
        let mut m = S::zero();
        for (d, c) in &self.factors {
            if lambda.power_is_one(d) {
                m = m + c.clone();
            }
        }
        m
    }

    /// Multiply the factored form out into a dense integer polynomial.
    pub fn expand(&self) -> Result<Poly<S>> {
        let range = || Error::Inconsistent("characteristic polynomial factor out of range".into());
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (d, c) in &self.factors {
            let du = scalar_to_usize(d).ok_or_else(range)?;
            let cu = scalar_to_usize(&c.abs()).ok_or_else(range)?;
            let mut co = vec![S::zero(); du + 1];
            co[0] = -S::one();
            co[du] = S::one();
            let f = Poly::from_coeffs(co);
            let target = if c.is_negative() { &mut den } else { &mut num };
            for _ in 0..cu {
                *target = target.mul(&f);
            }
        }
        num.div_exact(&den).ok_or_else(|| {
            Error::Inconsistent("characteristic polynomial factors do not divide".into())
        })
    }
}

impl<S: Scalar> fmt::Display for CharPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (d, c) in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *c == S::one() {
                write!(f, "(t^{} - 1)", d)?;
            } else {
                write!(f, "(t^{} - 1)^{}", d, c)?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for CharPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which cohomology the eigenvalue multiplicities refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EigenContext {
    /// Milnor fiber of an isolated singularity at the origin.
    LocalIsolated,
    /// Generic fiber of a tame polynomial, monodromy at infinity.
    AtInfinityTame,
    /// Milnor fiber of a meromorphic germ; the unipotent part is not
    /// determined by the zeta function here.
    Meromorphic,
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u64..(1 << n)).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// Local monodromy zeta function at the origin.
pub fn zeta_local<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<ZetaFunction<S>> {
    if np.kind() != NewtonKind::Local {
        return Err(Error::Precondition("local zeta function needs a local polyhedron".into()));
    }
    let mut z = ZetaFunction::one();
    for s in subsets(np.n()) {
        let sg = sign::<S>(s.len() - 1);
        for f in np.boundary_facets(&s)? {
            z.mul_factor(f.d, sg.clone() * f.vol);
        }
    }
    Ok(z)
}

/// Monodromy zeta function at infinity.
pub fn zeta_at_infinity<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<ZetaFunction<S>> {
    if np.kind() != NewtonKind::AtInfinity {
        return Err(Error::Precondition(
            "zeta function at infinity needs a polyhedron at infinity".into(),
        ));
    }
    let mut z = ZetaFunction::one();
    for s in subsets(np.n()) {
        let sg = sign::<S>(s.len() - 1);
        for f in np.boundary_facets(&s)? {
            z.mul_factor(f.d, sg.clone() * f.vol);
        }
    }
    Ok(z)
}

/// Euler characteristic of the Milnor fiber and, for a convenient support,
/// the Milnor number; `e_subsets` records the weighted volume sums per
/// coordinate subset.
pub struct MilnorData<S: Scalar> {
    pub chi: S,
    pub mu: Option<S>,
    pub e_subsets: Vec<(Vec<usize>, S)>,
}

/// Weighted boundary volumes, Euler characteristic of the Milnor fiber and
/// Milnor number of a local polyhedron.
pub fn milnor_data<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<MilnorData<S>> {
    if np.kind() != NewtonKind::Local {
        return Err(Error::Precondition("Milnor data needs a local polyhedron".into()));
    }
    let n = np.n();
    let mut chi = S::zero();
    // Empty subset contributes 1 with sign (-1)^n.
    let mut mu = sign::<S>(n);
    let mut e_subsets = Vec::new();
    for s in subsets(n) {
        let mut e = S::zero();
        for f in np.boundary_facets(&s)? {
            e = e + f.d * f.vol;
        }
        chi = chi + sign::<S>(s.len() - 1) * e.clone();
        mu = mu + sign::<S>(n - s.len()) * e.clone();
        e_subsets.push((s, e));
    }
    let mu = if np.is_convenient() {
        if mu < S::zero() {
            return Err(Error::Inconsistent("negative Milnor number".into()));
        }
        Some(mu)
    } else {
        None
    };
    Ok(MilnorData { chi, mu, e_subsets })
}

/// Milnor number of a convenient local polyhedron.
pub fn milnor_number<S: Scalar>(np: &NewtonPolyhedron<S>) -> Result<S> {
    milnor_data(np)?.mu.ok_or_else(|| {
        Error::Precondition(
            "support is not convenient; the singularity need not be isolated".into(),
        )
    })
}

/// Characteristic polynomial of the middle monodromy determined by a zeta
/// function in `n` variables.
pub fn charpoly<S: Scalar>(z: &ZetaFunction<S>, n: usize) -> Result<CharPoly<S>> {
    let sg = sign::<S>(n - 1);
    let mut factors: BTreeMap<S, S> = BTreeMap::new();
    for (d, e) in z.factors() {
        let c = sg.clone() * e;
        if !c.is_zero() {
            factors.insert(d, c);
        }
    }
    // Correction for the reduced cohomology in degree zero.
    let one = S::one();
    let c1 = factors.remove(&one).unwrap_or_else(S::zero) + sign::<S>(n);
    if !c1.is_zero() {
        factors.insert(one, c1);
    }
    let cp = CharPoly { factors };
    // Every eigenvalue multiplicity must be nonnegative.
    let mut orders: Vec<S> = Vec::new();
    for (d, _) in cp.factors() {
        let mut k = S::one();
        while k.clone() * k.clone() <= d {
            if d.is_multiple_of(&k) {
                for o in [k.clone(), d.clone() / k.clone()] {
                    if !orders.contains(&o) {
                        orders.push(o);
                    }
                }
            }
            k = k + S::one();
        }
    }
    for o in orders {
        let lambda = QZ::new(S::one(), o.clone());
        if cp.multiplicity(&lambda) < S::zero() {
            return Err(Error::Inconsistent(format!(
                "negative multiplicity for an eigenvalue of order {}",
                o
            )));
        }
    }
    if cp.degree() < S::zero() {
        return Err(Error::Inconsistent("characteristic polynomial of negative degree".into()));
    }
    Ok(cp)
}

/// Multiplicity of the eigenvalue `lambda` in the middle monodromy.
pub fn eigenvalue_multiplicity<S: Scalar>(
    z: &ZetaFunction<S>,
    n: usize,
    lambda: &QZ<S>,
    ctx: EigenContext,
) -> Result<S> {
    if ctx == EigenContext::Meromorphic && lambda.is_one() {
        return Err(Error::Precondition(
            "the multiplicity of the eigenvalue 1 is not determined in the meromorphic setting"
                .into(),
        ));
    }
    let mut acc = S::zero();
    for (d, e) in z.factors() {
        if lambda.power_is_one(&d) {
            acc = acc + e;
        }
    }
    if lambda.is_one() {
        acc = acc - S::one();
    }
    let m = sign::<S>(n - 1) * acc;
    if m < S::zero() {
        return Err(Error::Inconsistent("negative eigenvalue multiplicity".into()));
    }
    Ok(m)
}

fn restricted_compressed<S: Scalar>(sup: &Support<S>, s: &[usize]) -> Vec<Vec<S>> {
    sup.points()
        .iter()
        .filter(|p| {
            p.iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || s.contains(&i))
        })
        .map(|p| s.iter().map(|&i| p[i].clone()).collect())
        .collect()
}

fn min_over<S: Scalar>(pts: &[Vec<S>], u: &[S]) -> S {
    pts.iter().map(|p| dot(u, p)).min().expect("nonempty point set")
}

fn sum_supports<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    for p in a {
        for q in b {
            let s: Vec<S> = p.iter().zip(q).map(|(x, y)| x.clone() + y.clone()).collect();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Compositions `(a_1, ..., a_m)` of `total` with `a_q >= 1` for `q < m` and
/// `a_m >= 0`.
fn compositions(m: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, total: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == m - 1 {
            let mut full = acc.clone();
            full.push(total);
            out.push(full);
            return;
        }
        for a in 1..=total.saturating_sub(m - 2 - acc.len()) {
            acc.push(a);
            rec(m, total - a, acc, out);
            acc.pop();
        }
    }
    if m == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(m, total, &mut Vec::new(), &mut out);
    out
}

/// Supporting-face vertex sets of the summand polytopes at `u`, mapped into
/// the coordinates of the span lattice of the sum facet, as polytopes in
/// `Z^(k-1)`; then the composition-weighted mixed volume sum.
fn composition_mixed_sum<S: Scalar>(
    k: usize,
    facet_verts: &[Vec<S>],
    summand_faces: &[Vec<Vec<S>>],
    comps: &[Vec<usize>],
) -> Result<S> {
    let dim = k - 1;
    if dim == 0 {
        // Zero-dimensional mixed volumes are 1 per composition.
        return Ok(S::small(comps.len() as i32));
    }
    let dirs: Vec<Vec<S>> =
        facet_verts[1..].iter().map(|v| vec_sub(v, &facet_verts[0])).collect();
    let basis = span_lattice_basis(&dirs, k);
    if basis.len() != dim {
        return Err(Error::Inconsistent("boundary facet of unexpected dimension".into()));
    }
    let mapped: Vec<Polytope<S>> = summand_faces
        .iter()
        .map(|verts| {
            let local: Vec<Vec<S>> = verts
                .iter()
                .map(|v| {
                    express_in_basis(&basis, &vec_sub(v, &verts[0]))
                        .expect("summand face directions lie in the facet span lattice")
                })
                .collect();
            Polytope::new(dim, &local)
        })
        .collect::<Result<_>>()?;
    let mut total = S::zero();
    for comp in comps {
        let mut bodies: Vec<&Polytope<S>> = Vec::new();
        for (j, &mult) in comp.iter().enumerate() {
            for _ in 0..mult {
                bodies.push(&mapped[j]);
            }
        }
        total = total + mixed_volume(&bodies)?;
    }
    Ok(total)
}

/// Local monodromy zeta function of the last polynomial of a complete
/// intersection `f_1 = ... = f_{k-1} = 0`, restricted to the intersection of
/// the previous ones, at the origin.
pub fn zeta_ci_local<S: Scalar>(supports: &[Support<S>]) -> Result<ZetaFunction<S>> {
    let k = supports.len();
    if k == 0 {
        return Err(Error::EmptySupport);
    }
    let n = supports[0].n();
    for sup in supports {
        if sup.n() != n {
            return Err(Error::DimensionMismatch(
                "complete intersection supports in different variable counts".into(),
            ));
        }
    }
    if k > n {
        return Err(Error::Precondition(format!(
            "{} polynomials in {} variables do not cut a positive-dimensional germ",
            k, n
        )));
    }
    // All germs must vanish at the origin.
    let nps: Vec<NewtonPolyhedron<S>> = supports
        .iter()
        .map(|s| NewtonPolyhedron::local(s.clone()))
        .collect::<Result<_>>()?;
    let mut z = ZetaFunction::one();
    for s in subsets(n) {
        let restricted: Vec<Vec<Vec<S>>> =
            supports.iter().map(|sup| restricted_compressed(sup, &s)).collect();
        if restricted[k - 1].is_empty() {
            continue;
        }
        let idx: Vec<usize> = (0..k - 1).filter(|&j| !restricted[j].is_empty()).collect();
        let m = idx.len() + 1;
        if m > s.len() {
            continue;
        }
        let parts: Vec<usize> = idx.iter().cloned().chain([k - 1]).collect();
        let mut synthetic = restricted[parts[0]].clone();
        for &j in &parts[1..] {
            synthetic = sum_supports(&synthetic, &restricted[j]);
        }
        let sum_np =
            NewtonPolyhedron::local(Support::new(s.len(), &synthetic)?)?;
        let all: Vec<usize> = (0..s.len()).collect();
        let comps = compositions(m, s.len() - 1);
        let sg = sign::<S>(s.len() - m);
        for f in sum_np.boundary_facets(&all)? {
            let d = min_over(&restricted[k - 1], &f.u);
            let faces: Vec<Vec<Vec<S>>> = parts
                .iter()
                .map(|&j| {
                    let rd = nps[j].restrict(&s)?.expect("restriction checked nonempty");
                    let (fid, _) = rd.poly.supporting_face(&f.u);
                    Ok(rd
                        .poly
                        .face(fid)
                        .verts
                        .iter()
                        .map(|&v| rd.poly.points()[v].clone())
                        .collect())
                })
                .collect::<Result<_>>()?;
            let kk = composition_mixed_sum(s.len(), &f.verts, &faces, &comps)?;
            z.mul_factor(d, sg.clone() * kk);
        }
    }
    Ok(z)
}

/// Zeta function at infinity of the last polynomial of a complete
/// intersection, restricted to the previous ones; all supports must be
/// convenient.
pub fn zeta_ci_at_infinity<S: Scalar>(supports: &[Support<S>]) -> Result<ZetaFunction<S>> {
    let k = supports.len();
    if k == 0 {
        return Err(Error::EmptySupport);
    }
    let n = supports[0].n();
    for sup in supports {
        if sup.n() != n {
            return Err(Error::DimensionMismatch(
                "complete intersection supports in different variable counts".into(),
            ));
        }
    }
    if k > n {
        return Err(Error::Precondition(format!(
            "{} polynomials in {} variables do not cut a positive-dimensional variety",
            k, n
        )));
    }
    let nps: Vec<NewtonPolyhedron<S>> =
        supports.iter().map(|s| NewtonPolyhedron::at_infinity(s.clone())).collect();
    for (j, np) in nps.iter().enumerate() {
        if !np.is_convenient() {
            return Err(Error::NotConvenient(format!(
                "support {} misses a coordinate axis",
                j + 1
            )));
        }
    }
    let mut z = ZetaFunction::one();
    for s in subsets(n) {
        if s.len() < k {
            continue;
        }
        let rds: Vec<_> = nps
            .iter()
            .map(|np| np.restrict(&s).map(|o| o.expect("at infinity restrictions exist")))
            .collect::<Result<Vec<_>>>()?;
        let mut sum = Polytope::new(s.len(), rds[0].poly.points())?;
        for rd in &rds[1..] {
            sum = sum.minkowski_sum(&rd.poly)?;
        }
        debug_assert_eq!(sum.dim(), s.len(), "convenient supports give full-dimensional sums");
        let origin = sum
            .point_index(&vec![S::zero(); s.len()])
            .expect("sum of polytopes at infinity contains the origin");
        let comps = compositions(k, s.len() - 1);
        let sg = sign::<S>(s.len() - k);
        for f in sum.facets() {
            if f.verts.contains(&origin) {
                continue;
            }
            let u_c = &f.normal_ambient;
            let (_, min_k) = rds[k - 1].poly.supporting_face(u_c);
            let d = S::zero() - min_k;
            if !(d > S::zero()) {
                return Err(Error::Inconsistent(
                    "face at infinity of the sum with nonpositive distance".into(),
                ));
            }
            let facet_verts: Vec<Vec<S>> =
                f.verts.iter().map(|&v| sum.points()[v].clone()).collect();
            let faces: Vec<Vec<Vec<S>>> = rds
                .iter()
                .map(|rd| {
                    let (fid, _) = rd.poly.supporting_face(u_c);
                    rd.poly
                        .face(fid)
                        .verts
                        .iter()
                        .map(|&v| rd.poly.points()[v].clone())
                        .collect()
                })
                .collect();
            let kk = composition_mixed_sum(s.len(), &facet_verts, &faces, &comps)?;
            z.mul_factor(d, sg.clone() * kk);
        }
    }
    Ok(z)
}

/// Monodromy zeta function of the meromorphic germ `p/q` at the origin.
pub fn zeta_meromorphic<S: Scalar>(p: &Support<S>, q: &Support<S>) -> Result<ZetaFunction<S>> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch(
            "numerator and denominator in different variable counts".into(),
        ));
    }
    let n = p.n();
    // The numerator must vanish at the origin. A denominator whose support
    // contains the origin is a unit germ: its weight vanishes identically
    // and the quotient degenerates to the plain local case.
    NewtonPolyhedron::local(p.clone())?;
    if !q.contains_origin() {
        NewtonPolyhedron::local(q.clone())?;
    }
    let mut z = ZetaFunction::one();
    for s in subsets(n) {
        let rp = restricted_compressed(p, &s);
        let rq = restricted_compressed(q, &s);
        if rp.is_empty() || rq.is_empty() {
            continue;
        }
        let synthetic = sum_supports(&rp, &rq);
        let sum_np = NewtonPolyhedron::local(Support::new(s.len(), &synthetic)?)?;
        let all: Vec<usize> = (0..s.len()).collect();
        let sg = sign::<S>(s.len() - 1);
        for f in sum_np.boundary_facets(&all)? {
            let dp = min_over(&rp, &f.u);
            let dq = min_over(&rq, &f.u);
            let d = dp - dq;
            if !(d > S::zero()) {
                continue;
            }
            // Supporting faces of both parts at the facet normal.
            let face_of = |pts: &[Vec<S>]| -> Vec<Vec<S>> {
                let mn = min_over(pts, &f.u);
                pts.iter().filter(|x| dot(&f.u, x) == mn).cloned().collect()
            };
            let gp = face_of(&rp);
            let gq = face_of(&rq);
            // All splittings of the mixed volume between the two parts.
            let kdim = s.len() - 1;
            let comps: Vec<Vec<usize>> =
                (0..=kdim).map(|a| vec![a, kdim - a]).collect();
            let kk = composition_mixed_sum(s.len(), &f.verts, &[gp, gq], &comps)?;
            z.mul_factor(d, sg.clone() * kk);
        }
    }
    Ok(z)
}

/// Whether the local polyhedron of `p` is properly contained in the one of
/// `q`: the support minimum of `p` strictly exceeds the one of `q` on the
/// whole open positive orthant.
pub fn properly_contained<S: Scalar>(p: &Support<S>, q: &Support<S>) -> Result<bool> {
    if p.n() != q.n() {
        return Err(Error::DimensionMismatch(
            "proper containment of supports in different variable counts".into(),
        ));
    }
    let n = p.n();
    NewtonPolyhedron::local(p.clone())?;
    if q.contains_origin() {
        // The polyhedron of a unit germ is the whole orthant; a vanishing
        // numerator always sits strictly inside it.
        return Ok(true);
    }
    NewtonPolyhedron::local(q.clone())?;
    let synthetic = sum_supports(p.points(), q.points());
    let sum_np = NewtonPolyhedron::local(Support::new(n, &synthetic)?)?;
    let all: Vec<usize> = (0..n).collect();
    let rd = sum_np.restrict(&all)?.expect("sum support is nonempty");
    // The open orthant is covered by the normal cones of the compact faces;
    // on each such cone the difference of support minima is linear, so it is
    // positive on the relative interior exactly when it is nonnegative on
    // the generators and positive on at least one.
    for fid in rd.compact_face_ids() {
        let face = rd.poly.face(fid);
        let gens: Vec<Vec<S>> = face
            .facet_ids
            .iter()
            .map(|&fi| rd.poly.facets()[fi].normal_ambient.clone())
            .collect();
        let mut gen_sum = vec![S::zero(); n];
        for g in &gens {
            for (a, b) in gen_sum.iter_mut().zip(g) {
                *a = a.clone() + b.clone();
            }
        }
        if !gen_sum.iter().all(|c| *c > S::zero()) {
            // The cone's relative interior misses the open orthant.
            continue;
        }
        let mut some_positive = false;
        for g in &gens {
            let diff = min_over(p.points(), g) - min_over(q.points(), g);
            if diff < S::zero() {
                return Ok(false);
            }
            if diff > S::zero() {
                some_positive = true;
            }
        }
        if !some_positive {
            return Ok(false);
        }
    }
    Ok(true)
}
