//! Exact integer and rational arithmetic, plus the integer linear algebra
//! the rest of the crate is built on.
//!
//! Scalars are arbitrary precision throughout. Lattices are represented by a
//! row-style Hermite normal form: rows are linearly independent, the pivot
//! (first nonzero entry) of each row is positive and lies strictly to the
//! right of the previous row's pivot, and every entry above a pivot lies in
//! `[0, pivot)`. This form is unique for a given row lattice, so it doubles
//! as a canonical name for the lattice.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;
/// Integer vector.
pub type IntVector = Vec<Integer>;
/// Rational vector.
pub type RatVector = Vec<Rational>;

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

pub fn int_vec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Integer::from(x)).collect()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn to_rational(v: &[Integer]) -> RatVector {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Integer], b: &[Integer]) -> Integer {
    assert_eq!(a.len(), b.len(), "dot: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rational vector times integer vector.
pub fn dot_mixed(a: &[Rational], b: &[Integer]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: dimension mismatch");
    a.iter().zip(b).map(|(x, y)| x * Rational::from_integer(y.clone())).sum()
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

/// Divide an integer vector by the gcd of its entries.
pub fn primitive(v: &[Integer]) -> IntVector {
    let g = content(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The unique positive multiple of a nonzero rational vector that is a
/// primitive integer vector.
pub fn primitive_from_rational(v: &[Rational]) -> IntVector {
    let lcm = v.iter().fold(Integer::one(), |l, x| l.lcm(x.denom()));
    let scaled: IntVector = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(&scaled)
}

/// `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
pub fn extended_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients `c` with `v . c = gcd(v)`.
pub fn bezout_vector(v: &[Integer]) -> (Integer, IntVector) {
    let mut coeffs = vec![Integer::zero(); v.len()];
    let mut g = Integer::zero();
    for (i, x) in v.iter().enumerate() {
        if i == 0 {
            g = x.abs();
            coeffs[0] = if x.is_negative() { -Integer::one() } else { Integer::one() };
            continue;
        }
        let (ng, a, b) = extended_gcd(&g, x);
        for c in coeffs.iter_mut().take(i) {
            *c *= &a;
        }
        coeffs[i] = b;
        g = ng;
    }
    if g.is_zero() {
        coeffs.iter_mut().for_each(|c| *c = Integer::zero());
    }
    (g, coeffs)
}

pub fn ceil_div(a: &Integer, b: &Integer) -> Integer {
    a.div_ceil(b)
}

pub fn floor_div(a: &Integer, b: &Integer) -> Integer {
    a.div_floor(b)
}

/// Dense integer matrix with immutable dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![Integer::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Integer::one();
        }
        m
    }

    /// Build from rows. Panics if the rows are ragged.
    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().cloned());
        }
        IntegerMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVector> = rows.iter().map(|r| int_vec(r)).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "matrix product: dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Integer]) -> IntVector {
        assert_eq!(v.len(), self.cols, "matrix-vector product: dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector `v` times `self`.
    pub fn combine_rows(&self, v: &[Integer]) -> IntVector {
        assert_eq!(v.len(), self.rows, "row combination: dimension mismatch");
        let mut out = vec![Integer::zero(); self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.row(i)) {
                *o += c * x;
            }
        }
        out
    }

    /// Pivot column of each row (first nonzero entry). Meaningful for
    /// matrices in echelon form.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row(i).iter().position(|x| !x.is_zero()).expect("zero row in basis")).collect()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i).to_vec())).finish()
    }
}

/// Row-style Hermite normal form of the row lattice of `m`, with zero rows
/// dropped. The row count of the result is the rank.
pub fn hermite_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let cols = m.cols();
    let mut rows = m.row_vecs();
    let mut k = 0;
    for j in 0..cols {
        if k == rows.len() {
            break;
        }
        for i in (k + 1)..rows.len() {
            if rows[i][j].is_zero() {
                continue;
            }
            let a = rows[k][j].clone();
            let b = rows[i][j].clone();
            let (g, x, y) = extended_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let rk: IntVector = rows[k].iter().zip(&rows[i]).map(|(p, q)| &x * p + &y * q).collect();
            let ri: IntVector = rows[k].iter().zip(&rows[i]).map(|(p, q)| &ag * q - &bg * p).collect();
            rows[k] = rk;
            rows[i] = ri;
        }
        if rows[k][j].is_zero() {
            continue;
        }
        if rows[k][j].is_negative() {
            rows[k].iter_mut().for_each(|x| *x = -x.clone());
        }
        let pivot = rows[k][j].clone();
        for i in 0..k {
            let f = floor_div(&rows[i][j], &pivot);
            if f.is_zero() {
                continue;
            }
            let pk = rows[k].clone();
            for (x, p) in rows[i].iter_mut().zip(&pk) {
                *x -= &f * p;
            }
        }
        k += 1;
    }
    rows.truncate(k);
    IntegerMatrix::from_rows(cols, &rows)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntegerMatrix) -> Integer {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return Integer::one();
    }
    let mut a = m.row_vecs();
    let mut sign = Integer::one();
    let mut prev = Integer::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `v` is not an integer combination of the basis rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInLattice;

/// Coefficients `c` with `c * basis = v`, for `basis` in Hermite form.
pub fn express_in_basis(v: &[Integer], basis: &IntegerMatrix) -> Result<IntVector, NotInLattice> {
    assert_eq!(v.len(), basis.cols(), "express_in_basis: dimension mismatch");
    let mut residual = v.to_vec();
    let mut coeffs = Vec::with_capacity(basis.rows());
    let mut start = 0;
    for (k, &p) in basis.pivots().iter().enumerate() {
        if residual[start..p].iter().any(|x| !x.is_zero()) {
            return Err(NotInLattice);
        }
        let b = basis.row(k);
        let (c, rem) = residual[p].div_rem(&b[p]);
        if !rem.is_zero() {
            return Err(NotInLattice);
        }
        for (r, x) in residual.iter_mut().zip(b) {
            *r -= &c * x;
        }
        coeffs.push(c);
        start = p + 1;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return Err(NotInLattice);
    }
    Ok(coeffs)
}

/// Visit every point of the row lattice of `basis` (Hermite form) inside the
/// box `lo <= x <= hi`. The callback receives the lattice coefficients and
/// the point. Enumeration is lexicographic in the coefficients.
pub fn for_each_lattice_point_in_box<F>(basis: &IntegerMatrix, lo: &[Integer], hi: &[Integer], mut f: F)
where
    F: FnMut(&[Integer], &[Integer]),
{
    let n = basis.cols();
    assert!(lo.len() == n && hi.len() == n, "box: dimension mismatch");
    let pivots = basis.pivots();
    let first = pivots.first().copied().unwrap_or(n);
    let zero = Integer::zero();
    if (0..first).any(|j| lo[j] > zero || hi[j] < zero) {
        return;
    }
    if pivots.is_empty() {
        let point = vec![Integer::zero(); n];
        f(&[], &point);
        return;
    }
    let mut point = vec![Integer::zero(); n];
    let mut coeffs = Vec::with_capacity(pivots.len());
    enumerate_level(basis, &pivots, 0, lo, hi, &mut point, &mut coeffs, &mut f);
}

#[allow(clippy::too_many_arguments)]
fn enumerate_level<F>(
    basis: &IntegerMatrix,
    pivots: &[usize],
    level: usize,
    lo: &[Integer],
    hi: &[Integer],
    point: &mut IntVector,
    coeffs: &mut IntVector,
    f: &mut F,
) where
    F: FnMut(&[Integer], &[Integer]),
{
    if level == pivots.len() {
        f(coeffs, point);
        return;
    }
    let p = pivots[level];
    let end = pivots.get(level + 1).copied().unwrap_or(point.len());
    let row = basis.row(level);
    let piv = &row[p];
    let cmin = ceil_div(&(&lo[p] - &point[p]), piv);
    let cmax = floor_div(&(&hi[p] - &point[p]), piv);
    if cmin > cmax {
        return;
    }
    // Move to the first candidate, then step by one row at a time.
    for (x, b) in point.iter_mut().zip(row) {
        *x += &cmin * b;
    }
    let mut c = cmin.clone();
    while c <= cmax {
        let settled = (p + 1..end).all(|j| point[j] >= lo[j] && point[j] <= hi[j]);
        if settled {
            coeffs.push(c.clone());
            enumerate_level(basis, pivots, level + 1, lo, hi, point, coeffs, f);
            coeffs.pop();
        }
        for (x, b) in point.iter_mut().zip(row) {
            *x += b;
        }
        c += 1;
    }
    let undo = &cmax + 1;
    for (x, b) in point.iter_mut().zip(row) {
        *x -= &undo * b;
    }
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[RatVector]) -> usize {
    let mut a: Vec<RatVector> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for j in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][j].clone();
        for i in rank + 1..a.len() {
            if a[i][j].is_zero() {
                continue;
            }
            let f = &a[i][j] / &pivot;
            let src = a[rank].clone();
            for (x, s) in a[i].iter_mut().zip(&src) {
                *x -= &f * s;
            }
        }
        rank += 1;
    }
    rank
}

pub fn integer_rank(rows: &[IntVector]) -> usize {
    let rows: Vec<RatVector> = rows.iter().map(|r| to_rational(r)).collect();
    rational_rank(&rows)
}

/// Determinant of a square rational matrix given by rows.
pub fn rational_determinant(rows: &[RatVector]) -> Rational {
    let n = rows.len();
    let mut a: Vec<RatVector> = rows.to_vec();
    let mut det = Rational::one();
    for j in 0..n {
        assert_eq!(a[j].len(), n, "determinant of a non-square matrix");
        let Some(p) = (j..n).find(|&i| !a[i][j].is_zero()) else {
            return Rational::zero();
        };
        if p != j {
            a.swap(p, j);
            det = -det;
        }
        let pivot = a[j][j].clone();
        det *= &pivot;
        for i in j + 1..n {
            if a[i][j].is_zero() {
                continue;
            }
            let f = &a[i][j] / &pivot;
            let src = a[j].clone();
            for (x, s) in a[i].iter_mut().zip(&src) {
                *x -= &f * s;
            }
        }
    }
    det
}

/// Solve `A x = b` for square nonsingular `A` (rows). Returns `None` if
/// `A` is singular.
pub fn solve_rational(a: &[RatVector], b: &[Rational]) -> Option<RatVector> {
    let n = a.len();
    let mut m: Vec<RatVector> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for j in 0..n {
        let p = (j..n).find(|&i| !m[i][j].is_zero())?;
        m.swap(p, j);
        let pivot = m[j][j].clone();
        m[j].iter_mut().for_each(|x| *x /= &pivot);
        let src = m[j].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == j || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (x, s) in row.iter_mut().zip(&src) {
                *x -= &f * s;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Render a rational as `p/q`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<Integer>().ok().map(Rational::from_integer),
    }
}

/// Decimal approximation for display only.
pub fn approximate(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(Integer::from(10), digits);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    let neg = scaled.is_negative();
    let abs = scaled.abs();
    let (whole, frac) = abs.div_rem(&scale);
    let mut frac = frac.to_string();
    while frac.len() < digits {
        frac.insert(0, '0');
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac}")
    }
}
