//! Dense weight matrices, packed bit matrices, and boolean multiplication
//! kernels.
//!
//! [`Matrix`] is a row-major rectangle of [`Weight`]s; distance tables and
//! product operands all use it. [`BitMatrix`] packs booleans 64 per word and
//! backs adjacency structure, eligibility tables, and the boolean kernels.
//!
//! [`bool_matmul`] multiplies bit matrices under a selectable kernel. The
//! work actually executed is whatever the kernel does; what lands on the
//! ledger's `matmul_ops` counter is the model cost of the selected kernel
//! (`rows * inner * cols` element operations for the cubic kernel, the exact
//! count of scalar multiplies and additions for Strassen). Callers pick the
//! kernel; growth-law analyses read the counter.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::CostLedger;
use crate::weight::Weight;

/// A dense `rows x cols` matrix of extended real weights, row-major.
///
/// Serialises as a JSON array of row arrays.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Weight>,
}

impl Matrix {
    /// A matrix with every entry equal to `fill`.
    pub fn filled(rows: usize, cols: usize, fill: Weight) -> Matrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![fill; rows * cols],
        }
    }

    /// The min-plus zero: every entry `+inf`.
    pub fn infinity(rows: usize, cols: usize) -> Matrix {
        Matrix::filled(rows, cols, Weight::INF)
    }

    /// The min-plus identity: zero diagonal, `+inf` off-diagonal.
    pub fn min_plus_identity(n: usize) -> Matrix {
        let mut m = Matrix::infinity(n, n);
        for i in 0..n {
            m.set(i, i, Weight::ZERO);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Weight) -> Matrix {
        let mut m = Matrix::filled(rows, cols, Weight::ZERO);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from nested rows, rejecting empty or ragged input.
    pub fn from_rows(rows: Vec<Vec<Weight>>) -> Result<Matrix> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: expected {cols} columns, found {}",
                bad.len()
            )));
        }
        let n_rows = rows.len();
        let data: Vec<Weight> = rows.into_iter().flatten().collect();
        Ok(Matrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Weight {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, w: Weight) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = w;
    }

    pub fn row(&self, i: usize) -> &[Weight] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Weight] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Entrywise minimum with `other`, in place. Panics on shape mismatch;
    /// use [`elementwise_min`] for a checked version.
    pub fn min_assign(&mut self, other: &Matrix) {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "entrywise min requires equal shapes"
        );
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a = (*a).min(*b);
        }
    }

    /// Number of finite entries.
    pub fn count_finite(&self) -> usize {
        self.data.iter().filter(|w| w.is_finite()).count()
    }
}

/// Entrywise minimum of two equal-shaped matrices.
pub fn elementwise_min(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(Error::DimensionMismatch(format!(
            "elementwise min of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = a.clone();
    out.min_assign(b);
    Ok(out)
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Matrix, D::Error> {
        let rows: Vec<Vec<Weight>> = Vec::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(de::Error::custom)
    }
}

/// A `rows x cols` boolean matrix, 64 entries per word, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        assert!(
            rows > 0 && cols > 0,
            "bit matrix dimensions must be positive"
        );
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> BitMatrix {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        let w = self.data[i * self.words_per_row + j / 64];
        (w >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let word = &mut self.data[i * self.words_per_row + j / 64];
        if value {
            *word |= 1u64 << (j % 64);
        } else {
            *word &= !(1u64 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// Indices of set bits in row `i`, ascending.
    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let words = self.row_words(i);
        words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    pub fn count_row_ones(&self, i: usize) -> usize {
        self.row_words(i)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// True when row `i` of `self` and row `j` of `other` share a set column.
    pub fn rows_intersect(&self, i: usize, other: &BitMatrix, j: usize) -> bool {
        assert_eq!(
            self.cols, other.cols,
            "row intersection requires equal widths"
        );
        self.row_words(i)
            .iter()
            .zip(other.row_words(j))
            .any(|(a, b)| a & b != 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn or_row_from(&mut self, dst: usize, src: &BitMatrix, src_row: usize) {
        let base = dst * self.words_per_row;
        for (k, &w) in src.row_words(src_row).iter().enumerate() {
            self.data[base + k] |= w;
        }
    }
}

/// Multiplication kernel for [`bool_matmul`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatmulKernel {
    /// Word-packed cubic kernel; charges `rows * inner * cols` element ops.
    NaiveCubic,
    /// Strassen over integer 0/1 matrices; charges one op per element triple
    /// in the base-case products (cubic below size 64) plus one per element
    /// of every submatrix addition, i.e. the exact subcubic op count.
    Strassen,
}

/// Boolean matrix product `C[i][j] = OR_k A[i][k] AND B[k][j]`, charging
/// `matmul_ops` at the model cost of the selected kernel.
pub fn bool_matmul(
    a: &BitMatrix,
    b: &BitMatrix,
    kernel: MatmulKernel,
    ledger: &mut CostLedger,
) -> Result<BitMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "boolean product of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    match kernel {
        MatmulKernel::NaiveCubic => {
            let mut out = BitMatrix::zeros(a.rows, b.cols);
            for i in 0..a.rows {
                for k in a.row_ones(i).collect::<Vec<_>>() {
                    out.or_row_from(i, b, k);
                }
            }
            ledger.charge_matmul((a.rows * a.cols * b.cols) as u64);
            Ok(out)
        }
        MatmulKernel::Strassen => {
            let (c, ops) = strassen_product(a, b);
            ledger.charge_matmul(ops);
            Ok(c)
        }
    }
}

const STRASSEN_BASE: usize = 64;

fn strassen_product(a: &BitMatrix, b: &BitMatrix) -> (BitMatrix, u64) {
    let m = a
        .rows
        .max(a.cols)
        .max(b.cols)
        .max(STRASSEN_BASE)
        .next_power_of_two();
    let lift = |src: &BitMatrix| -> Vec<i64> {
        let mut out = vec![0i64; m * m];
        for i in 0..src.rows {
            for j in src.row_ones(i) {
                out[i * m + j] = 1;
            }
        }
        out
    };
    let (pa, pb) = (lift(a), lift(b));
    let mut ops = 0u64;
    let pc = strassen_rec(&pa, &pb, m, &mut ops);
    let mut out = BitMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            if pc[i * m + j] != 0 {
                out.set(i, j, true);
            }
        }
    }
    (out, ops)
}

fn strassen_rec(a: &[i64], b: &[i64], m: usize, ops: &mut u64) -> Vec<i64> {
    if m <= STRASSEN_BASE {
        let mut c = vec![0i64; m * m];
        for i in 0..m {
            for k in 0..m {
                let aik = a[i * m + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..m {
                    c[i * m + j] += aik * b[k * m + j];
                }
            }
        }
        // One fused multiply-accumulate per (i, k, j), matching the cubic
        // kernel's element count.
        *ops += (m * m * m) as u64;
        return c;
    }

    let h = m / 2;
    let quad = |src: &[i64], qi: usize, qj: usize| -> Vec<i64> {
        let mut out = vec![0i64; h * h];
        for i in 0..h {
            for j in 0..h {
                out[i * h + j] = src[(qi * h + i) * m + (qj * h + j)];
            }
        }
        out
    };
    let add = |x: &[i64], y: &[i64], ops: &mut u64| -> Vec<i64> {
        *ops += (h * h) as u64;
        x.iter().zip(y).map(|(p, q)| p + q).collect()
    };
    let sub = |x: &[i64], y: &[i64], ops: &mut u64| -> Vec<i64> {
        *ops += (h * h) as u64;
        x.iter().zip(y).map(|(p, q)| p - q).collect()
    };

    let a11 = quad(a, 0, 0);
    let a12 = quad(a, 0, 1);
    let a21 = quad(a, 1, 0);
    let a22 = quad(a, 1, 1);
    let b11 = quad(b, 0, 0);
    let b12 = quad(b, 0, 1);
    let b21 = quad(b, 1, 0);
    let b22 = quad(b, 1, 1);

    let m1 = strassen_rec(&add(&a11, &a22, ops), &add(&b11, &b22, ops), h, ops);
    let m2 = strassen_rec(&add(&a21, &a22, ops), &b11, h, ops);
    let m3 = strassen_rec(&a11, &sub(&b12, &b22, ops), h, ops);
    let m4 = strassen_rec(&a22, &sub(&b21, &b11, ops), h, ops);
    let m5 = strassen_rec(&add(&a11, &a12, ops), &b22, h, ops);
    let m6 = strassen_rec(&sub(&a21, &a11, ops), &add(&b11, &b12, ops), h, ops);
    let m7 = strassen_rec(&sub(&a12, &a22, ops), &add(&b21, &b22, ops), h, ops);

    let c11 = sub(&add(&add(&m1, &m4, ops), &m7, ops), &m5, ops);
    let c12 = add(&m3, &m5, ops);
    let c21 = add(&m2, &m4, ops);
    let c22 = add(&sub(&add(&m1, &m3, ops), &m2, ops), &m6, ops);

    let mut c = vec![0i64; m * m];
    let place = |dst: &mut [i64], src: &[i64], qi: usize, qj: usize| {
        for i in 0..h {
            for j in 0..h {
                dst[(qi * h + i) * m + (qj * h + j)] = src[i * h + j];
            }
        }
    };
    place(&mut c, &c11, 0, 0);
    place(&mut c, &c12, 0, 1);
    place(&mut c, &c21, 1, 0);
    place(&mut c, &c22, 1, 1);
    c
}
