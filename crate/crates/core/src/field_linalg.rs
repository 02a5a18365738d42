//! Dense bitset vectors and matrices over GF(2).
//!
//! Every elimination routine scans columns left to right and takes the
//! lowest-index row carrying a one as pivot, so results are reproducible
//! across runs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// Errors raised by matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular; kernel witness {witness:?}")]
    Singular { witness: Gf2Vector },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("entry ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
}

/// A vector of fixed length over GF(2), stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    /// Builds the vector whose support is exactly `support`.
    ///
    /// Repeated indices are treated as a set, not summed.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        self.words[index / WORD] >> (index % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "index {index} out of range {}", self.len);
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn iter_ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors of different length");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Restriction to the listed coordinates, in the listed order.
    pub fn select(&self, indices: &[usize]) -> Gf2Vector {
        Gf2Vector::from_support(
            indices.len(),
            indices
                .iter()
                .enumerate()
                .filter(|(_, &i)| self.get(i))
                .map(|(k, _)| k),
        )
    }

    /// Scatters `self` (indexed by position in `indices`) into a vector of length `len`.
    pub fn scatter(&self, indices: &[usize], len: usize) -> Gf2Vector {
        assert_eq!(self.len, indices.len());
        Gf2Vector::from_support(len, self.iter_ones().map(|k| indices[k]))
    }

    fn xor_words(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "adding vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector[{}]", self.len)?;
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

impl AddAssign<&Gf2Vector> for Gf2Vector {
    fn add_assign(&mut self, rhs: &Gf2Vector) {
        self.xor_words(rhs);
    }
}

impl AddAssign for Gf2Vector {
    fn add_assign(&mut self, rhs: Gf2Vector) {
        self.xor_words(&rhs);
    }
}

impl Add for Gf2Vector {
    type Output = Gf2Vector;
    fn add(mut self, rhs: Gf2Vector) -> Gf2Vector {
        self += &rhs;
        self
    }
}

impl Add<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;
    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

/// Iterator over the set positions of a [`Gf2Vector`].
pub struct Ones<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD + bit);
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}

/// A dense GF(2) matrix stored as bitset rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            let line: alloc::string::String = (0..self.cols)
                .map(|j| if row.get(j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        write!(f, "]")
    }
}

/// Result of Gauss-Jordan elimination: reduced rows plus the pivot column of each.
struct Echelon {
    rows: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (row, col) in entries {
            if row >= rows || col >= cols {
                return Err(LinalgError::OutOfBounds {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            m.data[row].set(col, true);
        }
        Ok(m)
    }

    /// Builds a matrix from 0/1 rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let data = rows
            .iter()
            .map(|r| {
                let r = r.as_ref();
                assert_eq!(r.len(), cols, "ragged matrix rows");
                Gf2Vector::from_support(cols, (0..cols).filter(|&j| r[j] & 1 == 1))
            })
            .collect();
        Gf2Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_row_vectors(cols: usize, data: Vec<Gf2Vector>) -> Self {
        assert!(data.iter().all(|r| r.len() == cols), "row length mismatch");
        Gf2Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn from_column_vectors(rows: usize, columns: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in col.iter_ones() {
                m.data[i].set(j, true);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.data[row].get(col)
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.data[row].set(col, value);
    }

    pub fn row(&self, row: usize) -> &Gf2Vector {
        &self.data[row]
    }

    pub fn column(&self, col: usize) -> Gf2Vector {
        Gf2Vector::from_support(self.rows, (0..self.rows).filter(|&i| self.data[i].get(col)))
    }

    /// All positions holding a one, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter_ones().map(move |j| (i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vector::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.count_ones() == 1 && r.get(i))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (i, j) in self.entries() {
            t.data[j].set(i, true);
        }
        t
    }

    /// Submatrix on the listed rows and columns, in the listed order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
        let data = rows.iter().map(|&i| self.data[i].select(cols)).collect();
        Gf2Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn matmul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Gf2Vector::zeros(other.cols);
                for k in row.iter_ones() {
                    acc += &other.data[k];
                }
                acc
            })
            .collect();
        Ok(Gf2Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(Gf2Vector::from_support(
            self.rows,
            (0..self.rows).filter(|&i| self.data[i].dot(v)),
        ))
    }

    pub fn add(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(out)
    }

    fn echelon(&self) -> Echelon {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            let Some(p) = (next..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != next && row.get(col) {
                    *row += &pivot_row;
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of the right kernel `{x : self * x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Gf2Vector> {
        let Echelon { rows, pivots } = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = Gf2Vector::unit(self.cols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    pub fn invert(&self) -> Result<Gf2Matrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut left = self.data.clone();
        let mut right = Gf2Matrix::identity(n).data;
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| left[i].get(col)) else {
                let witness = self
                    .kernel_basis()
                    .into_iter()
                    .next()
                    .expect("singular matrix has a nontrivial kernel");
                return Err(LinalgError::Singular { witness });
            };
            left.swap(col, p);
            right.swap(col, p);
            let (pl, pr) = (left[col].clone(), right[col].clone());
            for i in 0..n {
                if i != col && left[i].get(col) {
                    left[i] += &pl;
                    right[i] += &pr;
                }
            }
        }
        Ok(Gf2Matrix {
            rows: n,
            cols: n,
            data: right,
        })
    }

    /// Some `x` with `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Gf2Vector, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        // augment with b as the last column
        let aug_cols = self.cols + 1;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = Gf2Vector::from_support(aug_cols, r.iter_ones());
                if b.get(i) {
                    row.set(self.cols, true);
                }
                row
            })
            .collect();
        let aug = Gf2Matrix {
            rows: self.rows,
            cols: aug_cols,
            data,
        };
        let Echelon { rows, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (row, &p) in rows.iter().zip(&pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(x)
    }

    /// Indices of the rows selected greedily (lowest index first) to form a
    /// row basis of the row space.
    pub fn independent_rows(&self) -> Vec<usize> {
        // reduce each candidate against the basis built so far
        let mut basis: Vec<(usize, Gf2Vector)> = Vec::new();
        let mut chosen = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut r = row.clone();
            for (lead, b) in &basis {
                if r.get(*lead) {
                    r += b;
                }
            }
            if let Some(lead) = r.first_one() {
                for (_, b) in basis.iter_mut() {
                    if b.get(lead) {
                        *b += &r;
                    }
                }
                basis.push((lead, r));
                chosen.push(i);
            }
        }
        chosen
    }
}
