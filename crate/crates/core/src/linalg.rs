//! Checked integer and GF(2) linear algebra on small dense matrices.
//!
//! Everything here is exact: integer entries are `i64` with every addition and
//! multiplication checked (overflow is reported as an error, never wrapped or
//! saturated), and rank/kernel computations run over arbitrary-precision
//! rationals before being scaled back to primitive integer vectors.
//!
//! Orientation convention used throughout the crate: *covectors are row
//! vectors and act by right multiplication*, so `lambda * T` is
//! [`IntVector::mul_mat`], while tangent vectors transform as columns via
//! [`IntMatrix::mul_col`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Scalar type for all exact integer computations.
pub type Int = i64;

/// Errors produced by exact linear algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    /// Two operands had incompatible dimensions.
    #[error("shape mismatch: {context} ({left} vs {right})")]
    ShapeMismatch {
        context: &'static str,
        left: String,
        right: String,
    },
    /// An intermediate value left the `i64` range.
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    /// An integer inverse was requested for a matrix with |det| != 1.
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: Int },
    /// A primitive direction was requested for the zero vector.
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    /// A matrix literal had rows of unequal length.
    #[error("ragged rows: expected length {expected}, row {row} has length {found}")]
    RaggedRows {
        expected: usize,
        row: usize,
        found: usize,
    },
    /// A GF(2) literal contained an entry other than 0 or 1.
    #[error("GF(2) entries must be 0 or 1 (found {found})")]
    NotABit { found: Int },
}

pub(crate) fn add_i(a: Int, b: Int) -> Result<Int, LinalgError> {
    a.checked_add(b).ok_or(LinalgError::Overflow)
}

pub(crate) fn sub_i(a: Int, b: Int) -> Result<Int, LinalgError> {
    a.checked_sub(b).ok_or(LinalgError::Overflow)
}

pub(crate) fn mul_i(a: Int, b: Int) -> Result<Int, LinalgError> {
    a.checked_mul(b).ok_or(LinalgError::Overflow)
}

/// Nonnegative greatest common divisor, with `gcd(0, 0) = 0`.
pub fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as Int
}

fn shape_err(context: &'static str, left: impl ToString, right: impl ToString) -> LinalgError {
    LinalgError::ShapeMismatch {
        context,
        left: left.to_string(),
        right: right.to_string(),
    }
}

// ---------------------------------------------------------------------------
// Integer vectors
// ---------------------------------------------------------------------------

/// Fixed-length vector of checked 64-bit integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<Int>);

impl IntVector {
    pub fn zeros(len: usize) -> Self {
        IntVector(vec![0; len])
    }

    /// Standard basis vector `e_i` of the given length.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &IntVector) -> Result<IntVector, LinalgError> {
        if self.len() != other.len() {
            return Err(shape_err("vector add", self.len(), other.len()));
        }
        let entries = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| add_i(a, b))
            .collect::<Result<_, _>>()?;
        Ok(IntVector(entries))
    }

    pub fn sub(&self, other: &IntVector) -> Result<IntVector, LinalgError> {
        if self.len() != other.len() {
            return Err(shape_err("vector sub", self.len(), other.len()));
        }
        let entries = self
            .0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| sub_i(a, b))
            .collect::<Result<_, _>>()?;
        Ok(IntVector(entries))
    }

    pub fn neg(&self) -> Result<IntVector, LinalgError> {
        let entries = self
            .0
            .iter()
            .map(|&a| a.checked_neg().ok_or(LinalgError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(IntVector(entries))
    }

    pub fn scale(&self, k: Int) -> Result<IntVector, LinalgError> {
        let entries = self
            .0
            .iter()
            .map(|&a| mul_i(a, k))
            .collect::<Result<_, _>>()?;
        Ok(IntVector(entries))
    }

    /// Euclidean pairing `sum_i self_i * other_i`.
    pub fn dot(&self, other: &IntVector) -> Result<Int, LinalgError> {
        if self.len() != other.len() {
            return Err(shape_err("dot product", self.len(), other.len()));
        }
        let mut acc: Int = 0;
        for (&a, &b) in self.0.iter().zip(&other.0) {
            acc = add_i(acc, mul_i(a, b)?)?;
        }
        Ok(acc)
    }

    /// Nonnegative gcd of all entries (0 for the zero vector).
    pub fn content(&self) -> Int {
        self.0.iter().fold(0, |g, &x| gcd(g, x))
    }

    /// True when the entries are coprime (the vector generates its ray).
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Divide out the content, keeping the direction. Errors on the zero vector.
    pub fn primitive(&self) -> Result<IntVector, LinalgError> {
        let g = self.content();
        if g == 0 {
            return Err(LinalgError::ZeroVector);
        }
        Ok(IntVector(self.0.iter().map(|&x| x / g).collect()))
    }

    /// Row-vector times matrix: `self * m` (the action of `m` on covectors).
    pub fn mul_mat(&self, m: &IntMatrix) -> Result<IntVector, LinalgError> {
        if self.len() != m.rows() {
            return Err(shape_err("row-vector * matrix", self.len(), m.rows()));
        }
        let mut out = vec![0; m.cols()];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = add_i(*slot, mul_i(a, m.entry(i, j))?)?;
            }
        }
        Ok(IntVector(out))
    }

    /// Entrywise reduction mod 2.
    pub fn mod2(&self) -> Gf2Vector {
        Gf2Vector(self.0.iter().map(|&x| (x.rem_euclid(2)) as u8).collect())
    }
}

impl From<Vec<Int>> for IntVector {
    fn from(v: Vec<Int>) -> Self {
        IntVector(v)
    }
}

impl<const N: usize> From<[Int; N]> for IntVector {
    fn from(v: [Int; N]) -> Self {
        IntVector(v.to_vec())
    }
}

impl std::fmt::Display for IntVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Dense row-major integer matrix with checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Int>>", into = "Vec<Vec<Int>>")]
pub struct IntMatrix {
    rows: Vec<IntVector>,
    cols: usize,
}

impl IntMatrix {
    /// Build from row lists; all rows must have equal length.
    pub fn new(rows: Vec<Vec<Int>>) -> Result<Self, LinalgError> {
        IntMatrix::from_rows(rows.into_iter().map(IntVector).collect())
    }

    pub fn from_rows(rows: Vec<IntVector>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, IntVector::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::RaggedRows {
                    expected: cols,
                    row: i,
                    found: r.len(),
                });
            }
        }
        Ok(IntMatrix { rows, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows: vec![IntVector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| IntVector::basis(n, i)).collect();
        IntMatrix { rows, cols: n }
    }

    /// Outer product `col * row` (an n x m matrix of products).
    pub fn outer(col: &IntVector, row: &IntVector) -> Result<Self, LinalgError> {
        let rows = col
            .0
            .iter()
            .map(|&c| row.scale(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntMatrix {
            rows,
            cols: row.len(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Int {
        self.rows[i].0[j]
    }

    pub fn row(&self, i: usize) -> &IntVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn col(&self, j: usize) -> IntVector {
        IntVector(self.rows.iter().map(|r| r.0[j]).collect())
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.cols).map(|j| self.col(j)).collect();
        IntMatrix {
            rows,
            cols: self.rows(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(shape_err(
                "matrix add",
                format!("{}x{}", self.rows(), self.cols),
                format!("{}x{}", other.rows(), other.cols),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows,
            cols: self.cols,
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(shape_err(
                "matrix sub",
                format!("{}x{}", self.rows(), self.cols),
                format!("{}x{}", other.rows(), other.cols),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows,
            cols: self.cols,
        })
    }

    /// Matrix product `self * other` with checked arithmetic.
    pub fn mat_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows() {
            return Err(shape_err("matrix product", self.cols, other.rows()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.mul_mat(other))
            .collect::<Result<_, _>>()?;
        Ok(IntMatrix {
            rows,
            cols: other.cols,
        })
    }

    /// Matrix times column vector: `self * v` (the action on tangent vectors).
    pub fn mul_col(&self, v: &IntVector) -> Result<IntVector, LinalgError> {
        if self.cols != v.len() {
            return Err(shape_err("matrix * column", self.cols, v.len()));
        }
        let entries = self
            .rows
            .iter()
            .map(|r| r.dot(v))
            .collect::<Result<_, _>>()?;
        Ok(IntVector(entries))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.0.iter().enumerate().all(|(j, &x)| x == Int::from(i == j)))
    }

    /// Determinant by cofactor expansion (intended for rank <= 6).
    pub fn det(&self) -> Result<Int, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols,
            });
        }
        fn det_rec(m: &[Vec<Int>]) -> Result<Int, LinalgError> {
            let n = m.len();
            match n {
                0 => Ok(1),
                1 => Ok(m[0][0]),
                2 => sub_i(mul_i(m[0][0], m[1][1])?, mul_i(m[0][1], m[1][0])?),
                _ => {
                    let mut acc: Int = 0;
                    for j in 0..n {
                        if m[0][j] == 0 {
                            continue;
                        }
                        let minor: Vec<Vec<Int>> = m[1..]
                            .iter()
                            .map(|row| {
                                row.iter()
                                    .enumerate()
                                    .filter(|&(k, _)| k != j)
                                    .map(|(_, &x)| x)
                                    .collect()
                            })
                            .collect();
                        let term = mul_i(m[0][j], det_rec(&minor)?)?;
                        acc = if j % 2 == 0 {
                            add_i(acc, term)?
                        } else {
                            sub_i(acc, term)?
                        };
                    }
                    Ok(acc)
                }
            }
        }
        let raw: Vec<Vec<Int>> = self.rows.iter().map(|r| r.0.clone()).collect();
        det_rec(&raw)
    }

    /// Inverse of a matrix with determinant +-1, via the adjugate.
    ///
    /// Errors with [`LinalgError::NotUnimodular`] otherwise, so the result is
    /// always an exact integer matrix.
    #[allow(clippy::needless_range_loop)] // writes the transposed entry (j, i)
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, LinalgError> {
        let det = self.det()?;
        if det != 1 && det != -1 {
            return Err(LinalgError::NotUnimodular { det });
        }
        let n = self.rows();
        let mut inv = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                // Cofactor C_ij goes to entry (j, i) of the adjugate.
                let minor: Vec<Vec<Int>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| self.entry(r, c))
                            .collect()
                    })
                    .collect();
                let m = IntMatrix::new(minor)?;
                let cof = if (i + j) % 2 == 0 {
                    m.det()?
                } else {
                    -m.det()?
                };
                inv[j][i] = mul_i(cof, det)?; // dividing by det = multiplying by it when det = +-1
            }
        }
        IntMatrix::new(inv)
    }

    /// Rank over the rationals (exact, via big-rational elimination).
    pub fn rank(&self) -> usize {
        let (_, pivots) = rref_rational(to_rational_rows(&self.rows));
        pivots.len()
    }

    /// Primitive integer basis of `{ x : row . x = 0 for every row }`,
    /// the orthogonal complement of the row space.
    pub fn kernel_vectors(&self) -> Vec<IntVector> {
        rational_kernel(to_rational_rows(&self.rows), self.cols)
    }

    /// Entrywise reduction mod 2.
    pub fn mod2(&self) -> Gf2Matrix {
        Gf2Matrix {
            rows: self.rows.iter().map(IntVector::mod2).collect(),
            cols: self.cols,
        }
    }
}

impl TryFrom<Vec<Vec<Int>>> for IntMatrix {
    type Error = LinalgError;
    fn try_from(rows: Vec<Vec<Int>>) -> Result<Self, Self::Error> {
        IntMatrix::new(rows)
    }
}

impl From<IntMatrix> for Vec<Vec<Int>> {
    fn from(m: IntMatrix) -> Self {
        m.rows.into_iter().map(|r| r.0).collect()
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in r.0.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Exact rational elimination (internal)
// ---------------------------------------------------------------------------

fn to_rational_rows(rows: &[IntVector]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.0.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form; returns the reduced rows and the pivot columns.
#[allow(clippy::needless_range_loop)] // elimination reads row r while writing row i
pub(crate) fn rref_rational(
    mut rows: Vec<Vec<BigRational>>,
) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &rows[r][j];
                    rows[i][j] = &rows[i][j] - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

/// Primitive integer basis of the solution space of `rows . x = 0`.
fn rational_kernel(rows: Vec<Vec<BigRational>>, ncols: usize) -> Vec<IntVector> {
    let (rref, pivots) = rref_rational(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut x = vec![BigRational::zero(); ncols];
        x[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            // Pivot row r reads x_p + sum_{c free} a_c x_c = 0.
            x[p] = -rref[r][f].clone();
        }
        basis.push(clear_denominators(&x));
    }
    basis
}

/// Scale a rational vector to a primitive integer vector with the same direction.
fn clear_denominators(x: &[BigRational]) -> IntVector {
    let mut lcm = BigInt::one();
    for v in x {
        let d = v.denom();
        let g = gcd_big(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let scaled: Vec<BigInt> = x.iter().map(|v| (v * &lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for v in &scaled {
        g = gcd_big(&g, v);
    }
    let out: Vec<Int> = if g.is_zero() {
        scaled.iter().map(|_| 0).collect()
    } else {
        scaled
            .iter()
            .map(|v| {
                let q = v / &g;
                // Kernel vectors of i64 matrices with cleared denominators stay
                // well inside i64 at the matrix sizes this crate handles.
                i64::try_from(&q).expect("kernel vector entry out of i64 range")
            })
            .collect()
    };
    IntVector(out)
}

fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

// ---------------------------------------------------------------------------
// GF(2) vectors and matrices
// ---------------------------------------------------------------------------

/// Vector over GF(2); entries are stored as 0/1 bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Gf2Vector(Vec<u8>);

impl Gf2Vector {
    pub fn new(bits: Vec<u8>) -> Result<Self, LinalgError> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(LinalgError::NotABit {
                found: Int::from(bad),
            });
        }
        Ok(Gf2Vector(bits))
    }

    pub fn zeros(len: usize) -> Self {
        Gf2Vector(vec![0; len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = vec![0; len];
        v[i] = 1;
        Gf2Vector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    pub fn bit(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// Addition over GF(2) (entrywise xor).
    pub fn add(&self, other: &Gf2Vector) -> Result<Gf2Vector, LinalgError> {
        if self.len() != other.len() {
            return Err(shape_err("GF(2) add", self.len(), other.len()));
        }
        Ok(Gf2Vector(
            self.0.iter().zip(&other.0).map(|(&a, &b)| a ^ b).collect(),
        ))
    }

    pub fn dot(&self, other: &Gf2Vector) -> Result<u8, LinalgError> {
        if self.len() != other.len() {
            return Err(shape_err("GF(2) dot", self.len(), other.len()));
        }
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(0, |acc, (&a, &b)| acc ^ (a & b)))
    }

    /// Row-vector times matrix over GF(2).
    pub fn mul_mat(&self, m: &Gf2Matrix) -> Result<Gf2Vector, LinalgError> {
        if self.len() != m.rows() {
            return Err(shape_err("GF(2) row * matrix", self.len(), m.rows()));
        }
        let mut out = vec![0u8; m.cols()];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 1 {
                for (j, slot) in out.iter_mut().enumerate() {
                    *slot ^= m.rows[i].0[j];
                }
            }
        }
        Ok(Gf2Vector(out))
    }

    /// Encode as an integer index with bit `i` = entry `i` (entry 0 is the
    /// lowest bit). Used to number the 2^n points of a real fiber.
    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | ((b as usize) << i))
    }

    /// Inverse of [`Gf2Vector::to_index`] for vectors of length `len`.
    pub fn from_index(index: usize, len: usize) -> Self {
        Gf2Vector((0..len).map(|i| ((index >> i) & 1) as u8).collect())
    }
}

impl TryFrom<Vec<u8>> for Gf2Vector {
    type Error = LinalgError;
    fn try_from(bits: Vec<u8>) -> Result<Self, Self::Error> {
        Gf2Vector::new(bits)
    }
}

impl From<Gf2Vector> for Vec<u8> {
    fn from(v: Gf2Vector) -> Self {
        v.0
    }
}

impl std::fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct Gf2Matrix {
    rows: Vec<Gf2Vector>,
    cols: usize,
}

impl Gf2Matrix {
    pub fn new(rows: Vec<Vec<u8>>) -> Result<Self, LinalgError> {
        let rows = rows
            .into_iter()
            .map(Gf2Vector::new)
            .collect::<Result<Vec<_>, _>>()?;
        Gf2Matrix::from_rows(rows)
    }

    pub fn from_rows(rows: Vec<Gf2Vector>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Gf2Vector::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::RaggedRows {
                    expected: cols,
                    row: i,
                    found: r.len(),
                });
            }
        }
        Ok(Gf2Matrix { rows, cols })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows: vec![Gf2Vector::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            rows: (0..n).map(|i| Gf2Vector::basis(n, i)).collect(),
            cols: n,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i].0[j]
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinalgError> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(shape_err(
                "GF(2) matrix add",
                format!("{}x{}", self.rows(), self.cols),
                format!("{}x{}", other.rows(), other.cols),
            ));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(Gf2Matrix {
            rows,
            cols: self.cols,
        })
    }

    pub fn mat_mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinalgError> {
        if self.cols != other.rows() {
            return Err(shape_err("GF(2) matrix product", self.cols, other.rows()));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.mul_mat(other))
            .collect::<Result<_, _>>()?;
        Ok(Gf2Matrix {
            rows,
            cols: other.cols,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.0.iter().enumerate().all(|(j, &x)| x == u8::from(i == j)))
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u8>> = self.rows.iter().map(|r| r.0.clone()).collect();
        gf2_eliminate(&mut rows).len()
    }
}

impl TryFrom<Vec<Vec<u8>>> for Gf2Matrix {
    type Error = LinalgError;
    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self, Self::Error> {
        Gf2Matrix::new(rows)
    }
}

impl From<Gf2Matrix> for Vec<Vec<u8>> {
    fn from(m: Gf2Matrix) -> Self {
        m.rows.into_iter().map(|r| r.0).collect()
    }
}

/// Forward elimination in place; returns the pivot columns.
fn gf2_eliminate(rows: &mut [Vec<u8>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| rows[i][c] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..nrows {
            if i != r && rows[i][c] == 1 {
                let (head, tail) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, &y) in head.iter_mut().zip(tail.iter()) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Outcome of solving the row-convention linear system `x * a = b` over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Solution {
    /// One solution, if the system is consistent.
    pub particular: Option<Gf2Vector>,
    /// Basis of the homogeneous solution space `{ x : x * a = 0 }`.
    pub kernel: Vec<Gf2Vector>,
    /// Rank of the coefficient matrix.
    pub rank: usize,
}

/// Solve `x * a = b` over GF(2), where `x` ranges over row vectors of length
/// `a.rows()` and `b` has length `a.cols()`.
///
/// Returns a particular solution (when one exists), a basis of the kernel,
/// and the rank of `a`. The full solution set is the particular solution
/// plus the span of the kernel.
pub fn gf2_solve(a: &Gf2Matrix, b: &Gf2Vector) -> Result<Gf2Solution, LinalgError> {
    if b.len() != a.cols() {
        return Err(shape_err("GF(2) solve rhs", b.len(), a.cols()));
    }
    let unknowns = a.rows();
    // Work on the transposed system (a^T | b^T): one equation per column of a.
    let mut aug: Vec<Vec<u8>> = (0..a.cols())
        .map(|j| {
            let mut row: Vec<u8> = (0..unknowns).map(|i| a.entry(i, j)).collect();
            row.push(b.bit(j));
            row
        })
        .collect();
    let pivots = gf2_eliminate(&mut aug);
    // A pivot in the augmented column marks an inconsistent system.
    let consistent = !pivots.contains(&unknowns);
    let coeff_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < unknowns).collect();
    let rank = coeff_pivots.len();

    let particular = if consistent {
        let mut x = vec![0u8; unknowns];
        for (r, &p) in coeff_pivots.iter().enumerate() {
            x[p] = aug[r][unknowns];
        }
        Some(Gf2Vector(x))
    } else {
        None
    };

    let free: Vec<usize> = (0..unknowns)
        .filter(|c| !coeff_pivots.contains(c))
        .collect();
    let mut kernel = Vec::new();
    for &f in &free {
        let mut x = vec![0u8; unknowns];
        x[f] = 1;
        for (r, &p) in coeff_pivots.iter().enumerate() {
            x[p] = aug[r][f];
        }
        kernel.push(Gf2Vector(x));
    }

    Ok(Gf2Solution {
        particular,
        kernel,
        rank,
    })
}
