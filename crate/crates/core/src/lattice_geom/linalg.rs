//! Exact integer linear algebra: rank, determinants, kernels, lattice bases.
//!
//! Everything works over the scalar `S` without rational intermediates.
//! Kernels are computed by unimodular column reduction, so kernel bases are
//! automatically saturated (and single-vector kernels primitive).

use crate::scalar::Scalar;

/// Greatest common divisor of the entries, nonnegative; 0 for a zero vector.
pub fn content<S: Scalar>(v: &[S]) -> S {
    let mut g = S::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

/// Divide a nonzero vector by its content.
pub fn primitive<S: Scalar>(v: &[S]) -> Vec<S> {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x.clone() / g.clone()).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_neg<S: Scalar>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<S: Scalar>(c: &S, a: &[S]) -> Vec<S> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Rank of the matrix given by `rows`.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for j in 0..ncols {
                m[i][j] = m[i][j].clone() * a.clone() - m[r][j].clone() * b.clone();
            }
            let g = content(&m[i]);
            if !g.is_zero() && !g.is_one() {
                for j in 0..ncols {
                    m[i][j] = m[i][j].clone() / g.clone();
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square matrix by the Bareiss fraction-free scheme.
pub fn det<S: Scalar>(mat: &[Vec<S>]) -> S {
    let n = mat.len();
    if n == 0 {
        return S::one();
    }
    let mut m: Vec<Vec<S>> = mat.to_vec();
    let mut sign = S::one();
    let mut prev = S::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return S::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = t / prev.clone();
            }
            m[i][k] = S::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Saturated basis of the integer kernel `{x : M x = 0}` of the matrix with
/// the given `rows`, each of length `ncols`.
pub fn integer_kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let (_e, u, lead, _pivots) = column_echelon(rows, ncols);
    (lead..ncols).map(|j| (0..ncols).map(|i| u[i][j].clone()).collect()).collect()
}

/// Column echelon form by unimodular column operations.
///
/// Returns `(E, U, lead, pivots)` with `E = M U`, `U` unimodular `ncols x
/// ncols`, the first `lead` columns of `E` carrying the pivots, and
/// `pivots[k] = (row, col=k)` for each pivot.
pub fn column_echelon<S: Scalar>(
    rows: &[Vec<S>],
    ncols: usize,
) -> (Vec<Vec<S>>, Vec<Vec<S>>, usize, Vec<(usize, usize)>) {
    let nrows = rows.len();
    let mut e: Vec<Vec<S>> = rows.to_vec();
    let mut u: Vec<Vec<S>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect();
    let mut lead = 0;
    let mut pivots = Vec::new();
    for r in 0..nrows {
        loop {
            let active: Vec<usize> = (lead..ncols).filter(|&j| !e[r][j].is_zero()).collect();
            if active.is_empty() {
                break;
            }
            if active.len() == 1 {
                let j0 = active[0];
                swap_cols(&mut e, &mut u, lead, j0);
                pivots.push((r, lead));
                lead += 1;
                break;
            }
            let &j0 = active
                .iter()
                .min_by_key(|&&j| e[r][j].abs())
                .expect("nonempty active set");
            for &j in &active {
                if j == j0 {
                    continue;
                }
                let q = div_round(&e[r][j], &e[r][j0]);
                if !q.is_zero() {
                    sub_col(&mut e, &mut u, j, j0, &q);
                }
            }
        }
        if lead == ncols {
            break;
        }
    }
    (e, u, lead, pivots)
}

fn swap_cols<S: Scalar>(e: &mut [Vec<S>], u: &mut [Vec<S>], a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in e.iter_mut() {
        row.swap(a, b);
    }
    for row in u.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_j -= q * col_j0` applied to both matrices.
fn sub_col<S: Scalar>(e: &mut [Vec<S>], u: &mut [Vec<S>], j: usize, j0: usize, q: &S) {
    for row in e.iter_mut() {
        row[j] = row[j].clone() - q.clone() * row[j0].clone();
    }
    for row in u.iter_mut() {
        row[j] = row[j].clone() - q.clone() * row[j0].clone();
    }
}

/// Rounded division, minimizing the remainder magnitude.
fn div_round<S: Scalar>(a: &S, b: &S) -> S {
    let (q, r) = a.div_mod_floor(b);
    let two_r = r.clone() + r;
    if two_r.abs() > b.abs() {
        q + S::one()
    } else {
        q
    }
}

/// One integer solution `x` of `M x = rhs`, if any.
pub fn solve_integer<S: Scalar>(rows: &[Vec<S>], ncols: usize, rhs: &[S]) -> Option<Vec<S>> {
    let (e, u, _lead, pivots) = column_echelon(rows, ncols);
    let mut y = vec![S::zero(); ncols];
    let mut covered = vec![false; rows.len()];
    for &(r, c) in &pivots {
        let mut acc = rhs[r].clone();
        for &(r2, c2) in &pivots {
            if c2 == c {
                break;
            }
            acc = acc - e[r][c2].clone() * y[c2].clone();
            let _ = r2;
        }
        let (q, rem) = acc.div_mod_floor(&e[r][c]);
        if !rem.is_zero() {
            return None;
        }
        y[c] = q;
        covered[r] = true;
    }
    // Verify rows without pivots (and all rows, cheaply) for consistency.
    for (r, row) in e.iter().enumerate() {
        let mut acc = S::zero();
        for c in 0..ncols {
            acc = acc + row[c].clone() * y[c].clone();
        }
        if acc != rhs[r] {
            let _ = covered[r];
            return None;
        }
    }
    let x: Vec<S> = (0..ncols).map(|i| dot(&u[i], &y)).collect();
    Some(x)
}

/// Basis of the saturated lattice `Z^n ∩ span_Q(vecs)`.
pub fn span_lattice_basis<S: Scalar>(vecs: &[Vec<S>], n: usize) -> Vec<Vec<S>> {
    let nz: Vec<Vec<S>> = vecs.iter().filter(|v| !is_zero_vec(v)).cloned().collect();
    if nz.is_empty() {
        return vec![];
    }
    let ortho = integer_kernel(&nz, n);
    integer_kernel(&ortho, n)
}

/// Coordinates of `v` in the given independent basis rows, if `v` lies in
/// their integer span.
pub fn express_in_basis<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    if basis.is_empty() {
        return if is_zero_vec(v) { Some(vec![]) } else { None };
    }
    let n = basis[0].len();
    // Solve B^T x = v, unknowns x of length basis.len().
    let rows: Vec<Vec<S>> = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    solve_integer(&rows, basis.len(), v)
}

/// Primitive integer functional vanishing on all `vecs` (rank `n-1`
/// expected); `None` if the span is not a hyperplane.
pub fn hyperplane_normal<S: Scalar>(vecs: &[Vec<S>], n: usize) -> Option<Vec<S>> {
    let k = integer_kernel(vecs, n);
    if k.len() != 1 {
        return None;
    }
    Some(primitive(&k[0]))
}
