//! Dense bit-packed linear algebra over the field with two elements.
//!
//! Rows are stored as runs of `u64` words, so row operations are word-parallel
//! XORs. Bases are kept in reduced row-echelon form with leftmost pivots,
//! which turns membership tests into a single reduction pass.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    words: Vec<u64>,
    len: usize,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; words_for(len)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Indicator vector of `support`. Indices must be `< len`.
    pub fn from_support<I: IntoIterator<Item = usize>>(len: usize, support: I) -> Self {
        let mut v = Self::zeros(len);
        for i in support {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_support(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (k, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push(k * WORD + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product (parity of the common support).
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones % 2 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Gf2Vector]) -> Result<Self> {
        let cols = rows.first().map_or(0, Gf2Vector::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            m.row_words_mut(i).copy_from_slice(&r.words);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols);
        self.data[r * self.stride + c / WORD] ^= 1u64 << (c % WORD);
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector { words: self.row_words(r).to_vec(), len: self.cols }
    }

    pub fn add_identity(&mut self) {
        assert_eq!(self.rows, self.cols, "A + I needs a square matrix");
        for i in 0..self.rows {
            self.flip(i, i);
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self.row_words(r).iter().zip(&v.words).map(|(a, b)| (a & b).count_ones()).sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b[from_word..].iter_mut().zip(&a[from_word..]) {
            *d ^= *x;
        }
    }

    /// In-place reduction to reduced row-echelon form. Returns the pivot
    /// column of each of the leading `rank` rows.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            if next == self.rows {
                break;
            }
            let Some(p) = (next..self.rows).find(|&r| self.get(r, c)) else {
                continue;
            };
            if p != next {
                let s = self.stride;
                for k in 0..s {
                    self.data.swap(p * s + k, next * s + k);
                }
            }
            let w = c / WORD;
            for r in 0..self.rows {
                if r != next && self.get(r, c) {
                    self.xor_row_into(next, r, w);
                }
            }
            pivots.push(c);
            next += 1;
        }
        pivots
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn rank(m: &Gf2Matrix) -> usize {
    m.clone().rref().len()
}

/// Basis of the right kernel `{ x : Mx = 0 }`, in reduced echelon form.
pub fn kernel_basis(m: &Gf2Matrix) -> Gf2Basis {
    let mut r = m.clone();
    let pivots = r.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Gf2Basis::empty(m.cols);
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = Gf2Vector::unit(m.cols, free);
        for (row, &p) in pivots.iter().enumerate() {
            if r.get(row, free) {
                v.set(p, true);
            }
        }
        let inserted = basis.insert(v).expect("kernel vector has the ambient length");
        debug_assert!(inserted);
    }
    basis
}

/// Outcome of trying to grow a basis by one vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(Gf2Basis),
    Dependent,
}

/// A linearly independent set kept in reduced row-echelon form: pivots
/// strictly increase and every pivot column is zero in all other rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Basis {
    vectors: Vec<Gf2Vector>,
    pivots: Vec<usize>,
    ambient_dim: usize,
}

impl Gf2Basis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { vectors: Vec::new(), pivots: Vec::new(), ambient_dim }
    }

    /// Echelonizes an arbitrary spanning list.
    pub fn span_of<'a, I: IntoIterator<Item = &'a Gf2Vector>>(ambient_dim: usize, vs: I) -> Result<Self> {
        let mut b = Self::empty(ambient_dim);
        for v in vs {
            b.insert(v.clone())?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Gf2Vector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, v: &Gf2Vector) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        Ok(())
    }

    /// Residue of `v` modulo the span.
    pub fn reduce(&self, v: &Gf2Vector) -> Result<Gf2Vector> {
        self.check_len(v)?;
        let mut r = v.clone();
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        Ok(r)
    }

    pub fn in_span(&self, v: &Gf2Vector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Inserts `v` if it is independent of the current span; returns whether it was.
    pub fn insert(&mut self, v: Gf2Vector) -> Result<bool> {
        let r = self.reduce(&v)?;
        let Some(p) = r.leading() else {
            return Ok(false);
        };
        for b in &mut self.vectors {
            if b.get(p) {
                b.xor_assign(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.vectors.insert(at, r);
        Ok(true)
    }

    pub fn extend_independent(&self, v: &Gf2Vector) -> Result<Extension> {
        let mut b = self.clone();
        Ok(if b.insert(v.clone())? { Extension::Extended(b) } else { Extension::Dependent })
    }

    /// The subspace of vectors vanishing at coordinate `i` (codimension at most one).
    pub fn vanishing_at(&self, i: usize) -> Gf2Basis {
        let mut vectors = self.vectors.clone();
        if let Some(k) = vectors.iter().position(|v| v.get(i)) {
            let pivot_row = vectors.remove(k);
            for v in &mut vectors {
                if v.get(i) {
                    v.xor_assign(&pivot_row);
                }
            }
        }
        Gf2Basis::span_of(self.ambient_dim, &vectors).expect("same ambient dimension")
    }

    /// The matrix whose rows are the basis vectors.
    pub fn to_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows(&self.vectors).unwrap_or_else(|_| Gf2Matrix::zeros(0, self.ambient_dim))
    }
}
