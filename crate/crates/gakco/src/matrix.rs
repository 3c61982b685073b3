//! Packed symmetric matrices.
//!
//! All N x N profile and kernel matrices are symmetric, so only the upper
//! triangle (diagonal included) is stored, row major. Reads and writes at
//! (i, j) with i > j resolve to (j, i).

use crate::error::{Error, Result};

/// Number of stored entries for an `n` x `n` symmetric matrix.
pub fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Copy + Default> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![T::default(); tri_len(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        debug_assert!(j < self.n);
        // row i starts after i full rows of shrinking length
        i * (2 * self.n - i + 1) / 2 + (j - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let at = self.idx(i, j);
        self.data[at] = v;
    }

    /// Packed upper-triangle storage, row major.
    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// Expand to a full dense matrix (mirroring the triangle).
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

impl SymMatrix<u64> {
    /// `self[i][j] += v` with overflow detection.
    #[inline]
    pub fn add_entry(&mut self, i: usize, j: usize, v: u64) -> Result<()> {
        let at = self.idx(i, j);
        self.data[at] = self.data[at]
            .checked_add(v)
            .ok_or(Error::Overflow("accumulating a profile entry"))?;
        Ok(())
    }

    /// `self += other`, entrywise.
    pub fn add_matrix(&mut self, other: &Self) -> Result<()> {
        debug_assert_eq!(self.n, other.n);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = a
                .checked_add(b)
                .ok_or(Error::Overflow("merging profile matrices"))?;
        }
        Ok(())
    }

    /// `self += factor * other`, entrywise.
    pub fn add_scaled(&mut self, other: &Self, factor: u64) -> Result<()> {
        debug_assert_eq!(self.n, other.n);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            let term = b
                .checked_mul(factor)
                .ok_or(Error::Overflow("scaling a profile matrix"))?;
            *a = a
                .checked_add(term)
                .ok_or(Error::Overflow("assembling a kernel entry"))?;
        }
        Ok(())
    }

    /// `self -= factor * other`, entrywise. A would-be negative entry is an
    /// internal-consistency error: the subtraction identities guarantee
    /// non-negativity on correct inputs.
    pub fn sub_scaled(&mut self, other: &Self, factor: u64) -> Result<()> {
        debug_assert_eq!(self.n, other.n);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            let term = b
                .checked_mul(factor)
                .ok_or(Error::Overflow("scaling a profile matrix"))?;
            *a = a.checked_sub(term).ok_or_else(|| {
                Error::Inconsistency("mismatch recovery produced a negative count".into())
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_symmetric() {
        let mut m = SymMatrix::<u64>::zeros(4);
        m.set(1, 3, 7);
        assert_eq!(m.get(1, 3), 7);
        assert_eq!(m.get(3, 1), 7);
        m.set(3, 1, 9);
        assert_eq!(m.get(1, 3), 9);
        assert_eq!(m.data().len(), tri_len(4));
    }

    #[test]
    fn dense_expansion_mirrors() {
        let mut m = SymMatrix::<u64>::zeros(3);
        m.set(0, 0, 1);
        m.set(0, 2, 5);
        m.set(1, 2, 3);
        let d = m.to_dense();
        assert_eq!(d, vec![vec![1, 0, 5], vec![0, 0, 3], vec![5, 3, 0]]);
    }

    #[test]
    fn every_cell_has_a_distinct_slot() {
        let n = 7;
        let mut m = SymMatrix::<u64>::zeros(n);
        let mut v = 1;
        for i in 0..n {
            for j in i..n {
                m.set(i, j, v);
                v += 1;
            }
        }
        let mut v = 1;
        for i in 0..n {
            for j in i..n {
                assert_eq!(m.get(i, j), v);
                v += 1;
            }
        }
    }

    #[test]
    fn checked_ops_detect_overflow() {
        let mut m = SymMatrix::<u64>::zeros(2);
        m.set(0, 1, u64::MAX - 1);
        assert!(m.add_entry(0, 1, 1).is_ok());
        assert!(matches!(m.add_entry(0, 1, 1), Err(Error::Overflow(_))));

        let mut a = SymMatrix::<u64>::zeros(2);
        a.set(0, 0, 5);
        let mut b = SymMatrix::<u64>::zeros(2);
        b.set(0, 0, 2);
        assert!(a.sub_scaled(&b, 2).is_ok());
        assert_eq!(a.get(0, 0), 1);
        assert!(matches!(
            a.sub_scaled(&b, 2),
            Err(Error::Inconsistency(_))
        ));
    }
}
