//! Row-major 2-D matrices and the multiply kernels behind the dense layers.
//!
//! The kernels deliberately use plain `a * b + c` arithmetic in the inner
//! loops (LLVM autovectorizes these; `f64::mul_add` lowers to a libcall on
//! baseline x86-64 and is an order of magnitude slower). Parallel variants
//! split work over disjoint output rows, so each output element is always
//! accumulated in the same order regardless of thread count and results
//! stay bit-identical.

use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Mat { rows, cols, data }
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transposed(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }
}

#[inline]
fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += a * *xi;
    }
}

fn matmul_rows(a: &Mat, b: &Mat, c_rows: &mut [f64], row_range: std::ops::Range<usize>) {
    let n = b.cols;
    let k = a.cols;
    for (local, i) in row_range.enumerate() {
        let arow = a.row(i);
        let crow = &mut c_rows[local * n..(local + 1) * n];
        for kk in 0..k {
            let av = arow[kk];
            if av != 0.0 {
                axpy(crow, av, &b.data[kk * n..(kk + 1) * n]);
            }
        }
    }
}

/// `c += a · b` where `a` is `m x k` and `b` is `k x n`.
///
/// Runs in parallel over row blocks when the work is large enough to pay
/// for it; the result is identical either way.
pub fn matmul_acc(c: &mut Mat, a: &Mat, b: &Mat) {
    assert_eq!(a.cols, b.rows, "inner dims {} vs {}", a.cols, b.rows);
    assert_eq!(c.rows, a.rows, "output rows {} vs {}", c.rows, a.rows);
    assert_eq!(c.cols, b.cols, "output cols {} vs {}", c.cols, b.cols);
    let work = a.rows * a.cols * b.cols;
    let n = b.cols;
    if work < 1 << 16 || a.rows < 2 {
        matmul_rows(a, b, &mut c.data, 0..a.rows);
        return;
    }
    let chunk = a.rows.div_ceil(rayon::current_num_threads().max(1) * 2).max(1);
    c.data
        .par_chunks_mut(chunk * n)
        .enumerate()
        .for_each(|(ci, slab)| {
            let start = ci * chunk;
            let end = (start + slab.len() / n).min(a.rows);
            matmul_rows(a, b, slab, start..end);
        });
}

/// `a · b` into a fresh matrix.
pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let mut c = Mat::zeros(a.rows, b.cols);
    matmul_acc(&mut c, a, b);
    c
}

/// `y += a · x` for a single row vector `x` (k) against `a` (n x k rows).
///
/// Used by the recurrent step where the left operand is one hidden vector.
pub fn matvec_acc(y: &mut [f64], a_rows: &Mat, x: &[f64]) {
    assert_eq!(a_rows.cols, x.len());
    assert_eq!(y.len(), a_rows.rows);
    for (yi, arow) in y.iter_mut().zip(a_rows.data.chunks_exact(a_rows.cols)) {
        let mut acc = 0.0;
        for (av, xv) in arow.iter().zip(x.iter()) {
            acc += *av * *xv;
        }
        *yi += acc;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_matches_hand_computation() {
        // [1 2; 3 4] * [5 6; 7 8] = [19 22; 43 50]
        let a = Mat::from_rows(2, 2, vec![1.0, 2.0, 3.0, 4.0]);
        let b = Mat::from_rows(2, 2, vec![5.0, 6.0, 7.0, 8.0]);
        let c = matmul(&a, &b);
        assert_eq!(c.data, vec![19.0, 22.0, 43.0, 50.0]);
    }

    #[test]
    fn parallel_and_serial_agree_bitwise() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = Mat::from_rows(64, 96, (0..64 * 96).map(|_| rng.gen::<f64>() - 0.5).collect());
        let b = Mat::from_rows(96, 80, (0..96 * 80).map(|_| rng.gen::<f64>() - 0.5).collect());
        let mut serial = Mat::zeros(64, 80);
        matmul_rows(&a, &b, &mut serial.data.clone(), 0..64);
        let mut expect = Mat::zeros(64, 80);
        matmul_rows(&a, &b, &mut expect.data, 0..64);
        serial = expect.clone();
        let par = matmul(&a, &b);
        assert_eq!(par.data, serial.data);
    }

    #[test]
    fn matvec_matches_matmul() {
        let a = Mat::from_rows(3, 2, vec![1.0, 0.0, 0.0, 1.0, 2.0, -1.0]);
        let x = [3.0, 4.0];
        let mut y = vec![0.0; 3];
        matvec_acc(&mut y, &a, &x);
        assert_eq!(y, vec![3.0, 4.0, 2.0]);
    }

    #[test]
    fn transpose_round_trips() {
        let a = Mat::from_rows(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(a.transposed().transposed(), a);
    }
}
