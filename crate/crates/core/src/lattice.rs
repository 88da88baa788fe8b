//! Exact linear algebra over `Z` and `Q` for small lattices.
//!
//! Everything here is a pure function over immutable values. Dimensions are
//! expected to stay small (ambient rank up to 8, matrices up to 32x32), so the
//! algorithms favour clarity and determinism over asymptotic speed.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point of the lattice `N = Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        assert!(!coords.is_empty(), "lattice vectors have dimension >= 1");
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); dim];
        v[i] = BigInt::one();
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;

    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector::new(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;

    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim());
        LatticeVector::new(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;

    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// An element of the dual space `M_Q = Hom(N, Z) ⊗ Q`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCovector(Vec<BigRational>);

impl RationalCovector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        assert!(!coords.is_empty(), "covectors have dimension >= 1");
        RationalCovector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(BigRational::is_integer)
    }

    /// `<m, u>` for a lattice vector `u`.
    pub fn pair(&self, u: &LatticeVector) -> BigRational {
        assert_eq!(self.dim(), u.dim(), "pairing needs equal dimensions");
        self.0
            .iter()
            .zip(u.coords())
            .fold(BigRational::zero(), |acc, (m, c)| acc + m * c)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }
}

impl Add for &RationalCovector {
    type Output = RationalCovector;

    fn add(self, rhs: &RationalCovector) -> RationalCovector {
        assert_eq!(self.dim(), rhs.dim());
        RationalCovector::new(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalCovector {
    type Output = RationalCovector;

    fn sub(self, rhs: &RationalCovector) -> RationalCovector {
        assert_eq!(self.dim(), rhs.dim());
        RationalCovector::new(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<&LatticeVector> for RationalCovector {
    fn from(v: &LatticeVector) -> Self {
        RationalCovector::new(v.to_rational())
    }
}

impl fmt::Display for RationalCovector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from equal-length rows. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        IntegerMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Matrix whose rows are the given lattice vectors.
    pub fn from_lattice_rows<'a>(vs: impl IntoIterator<Item = &'a LatticeVector>) -> Self {
        Self::from_rows(vs.into_iter().map(|v| v.coords().to_vec()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Image `A·v` of a lattice vector.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.dim(), "matrix/vector shape mismatch");
        LatticeVector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * k;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * k;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }

    pub(crate) fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_tuple(f, self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `S = U·A·V` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transformation matrices.
///
/// Pivot: smallest nonzero absolute value in the active block, ties broken by
/// lowest row then lowest column index.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_pivot(&s, t) else {
                return finish(u, s, v);
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&s[(i, t)] / &s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&s[(t, j)] / &s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Row and column of the pivot are clear; enforce divisibility.
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, s, v)
}

fn finish(u: IntegerMatrix, s: IntegerMatrix, v: IntegerMatrix) -> SmithForm {
    SmithForm { u, s, v }
}

fn smallest_pivot(s: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = &s[(i, j)];
            if x.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => x.abs() < s[(bi, bj)].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Returns the unique rational `m` with `A·m = b`.
pub fn solve_rational(a: &IntegerMatrix, b: &[BigRational]) -> Result<RationalCovector> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: a.cols() });
    }
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let x = solve_square(a.to_rational(), b.to_vec()).ok_or(Error::SingularSystem)?;
    Ok(RationalCovector::new(x))
}

/// `v / gcd(v)`.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector::new(v.coords().iter().map(|c| c / &g).collect()))
}

/// Gauss–Jordan solve of a square rational system. `None` if singular.
pub(crate) fn solve_square(
    mut a: Vec<Vec<BigRational>>,
    mut b: Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for c in col..n {
            a[col][c] = &a[col][c] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
            let d = &f * &b[col];
            b[r] -= d;
        }
    }
    Some(b)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn row_reduce(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                let d = &f * &a[r][j];
                a[i][j] -= d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    row_reduce(&mut a).len()
}

/// Basis of `{x : A x = 0}` for a rational matrix with `cols` columns.
pub(crate) fn nullspace(rows: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut a = rows.to_vec();
    let pivots = row_reduce(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); cols];
            x[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -a[r][f].clone();
            }
            x
        })
        .collect()
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Inverse of a square rational matrix, `None` if singular.
pub(crate) fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn snf_identity() {
        let id = IntegerMatrix::identity(2);
        let f = smith_normal_form(&id);
        assert_eq!(f.u, id);
        assert_eq!(f.s, id);
        assert_eq!(f.v, id);
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(f.u.mul(&a).mul(&f.v), f.s);
    }

    #[test]
    fn snf_tall_matrix() {
        let a = IntegerMatrix::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal(), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(f.rank(), 2);
        assert_eq!(f.u.mul(&a).mul(&f.v), f.s);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntegerMatrix::zeros(2, 3);
        let f = smith_normal_form(&a);
        assert_eq!(f.rank(), 0);
        assert_eq!(f.s, a);
    }

    #[test]
    fn solve_identity() {
        let b = vec![q(-1), q(-1), q(-1)];
        let m = solve_rational(&IntegerMatrix::identity(3), &b).unwrap();
        assert_eq!(m, RationalCovector::from_i64s(&[-1, -1, -1]));
    }

    #[test]
    fn solve_cartier_equations() {
        let b = vec![q(-1), q(-1), q(-1)];
        // x1, z1, z2
        let a = IntegerMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[0, 2, 1]]);
        assert_eq!(solve_rational(&a, &b).unwrap(), RationalCovector::from_i64s(&[0, 0, -1]));
        // x3, x4, y1
        let a = IntegerMatrix::from_i64_rows(&[&[-1, 3, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert_eq!(solve_rational(&a, &b).unwrap(), RationalCovector::from_i64s(&[4, 1, -1]));
    }

    #[test]
    fn solve_singular() {
        let a = IntegerMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_rational(&a, &[q(1), q(0)]), Err(Error::SingularSystem));
    }

    #[test]
    fn solve_fractional() {
        let a = IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let m = solve_rational(&a, &[q(1), q(1)]).unwrap();
        assert_eq!(m.coords()[0], BigRational::new(1.into(), 2.into()));
        assert!(!m.is_integral());
    }

    #[test]
    fn primitive_examples() {
        let p = |xs: &[i64]| primitive(&LatticeVector::from_i64s(xs)).unwrap();
        assert_eq!(p(&[0, 2, 1]), LatticeVector::from_i64s(&[0, 2, 1]));
        assert_eq!(p(&[2, 4, 6]), LatticeVector::from_i64s(&[1, 2, 3]));
        assert_eq!(p(&[0, 0, -5]), LatticeVector::from_i64s(&[0, 0, -1]));
        assert_eq!(primitive(&LatticeVector::zero(3)), Err(Error::ZeroVector));
    }

    #[test]
    fn determinant_small() {
        let a = IntegerMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        assert_eq!(a.determinant(), BigInt::from(-5));
        let a = IntegerMatrix::from_i64_rows(&[&[1, 0], &[1, 2]]);
        assert_eq!(a.determinant(), BigInt::from(2));
    }

    #[test]
    fn nullspace_of_line() {
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![vec![q(-1), q(1), q(0)]]);
    }
}
