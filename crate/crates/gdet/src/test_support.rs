//! Deterministic helpers for the randomized unit suites.

use crate::matrix::Matrix;

/// Tiny seeded xorshift generator, so failures reproduce exactly.
pub(crate) struct TestRng(u64);

impl TestRng {
    pub(crate) fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform in `lo..=hi`.
    pub(crate) fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next() % (hi - lo + 1) as u64) as usize
    }

    /// m-by-n matrix with integer entries in `-span..=span`.
    pub(crate) fn int_matrix(&mut self, m: usize, n: usize, span: i64) -> Matrix {
        let data: Vec<f64> = (0..m * n)
            .map(|_| (self.next() % (2 * span + 1) as u64) as i64 - span)
            .map(|v| v as f64)
            .collect();
        Matrix::new(m, n, data).unwrap()
    }
}
