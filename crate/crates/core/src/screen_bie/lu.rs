//! Dense complex LU factorization with partial pivoting.
//!
//! Real and imaginary parts are kept in separate row-major planes so the
//! elimination loops are plain real axpys.

use num_complex::Complex;

use crate::scalar::Real;

#[derive(Debug, Clone)]
pub(crate) struct ComplexLu<T> {
    n: usize,
    re: Vec<T>,
    im: Vec<T>,
    perm: Vec<usize>,
}

/// Factorization failure: the pivot column that vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Singular(pub usize);

impl<T: Real> ComplexLu<T> {
    /// Factors the row-major `n x n` matrix.
    pub fn factor(n: usize, matrix: &[Complex<T>]) -> Result<Self, Singular> {
        assert_eq!(matrix.len(), n * n);
        let mut re: Vec<T> = matrix.iter().map(|c| c.re).collect();
        let mut im: Vec<T> = matrix.iter().map(|c| c.im).collect();
        let scale = matrix.iter().map(|c| c.norm()).fold(T::zero(), T::max);
        let tiny = scale * T::epsilon() * T::lit(1e-3);
        let mut perm: Vec<usize> = (0..n).collect();

        for col in 0..n {
            let mut best = col;
            let mut best_mag = T::zero();
            for row in col..n {
                let idx = row * n + col;
                let mag = re[idx] * re[idx] + im[idx] * im[idx];
                if mag > best_mag {
                    best_mag = mag;
                    best = row;
                }
            }
            if !(best_mag.sqrt() > tiny) {
                return Err(Singular(col));
            }
            if best != col {
                for j in 0..n {
                    re.swap(best * n + j, col * n + j);
                    im.swap(best * n + j, col * n + j);
                }
                perm.swap(best, col);
            }
            let pr = re[col * n + col];
            let pi = im[col * n + col];
            let denom = pr * pr + pi * pi;
            let (inv_r, inv_i) = (pr / denom, -pi / denom);

            let (head_re, tail_re) = re.split_at_mut((col + 1) * n);
            let (head_im, tail_im) = im.split_at_mut((col + 1) * n);
            let piv_re = &head_re[col * n + col + 1..col * n + n];
            let piv_im = &head_im[col * n + col + 1..col * n + n];
            for (row_re, row_im) in tail_re.chunks_exact_mut(n).zip(tail_im.chunks_exact_mut(n)) {
                let ar = row_re[col];
                let ai = row_im[col];
                if ar == T::zero() && ai == T::zero() {
                    continue;
                }
                let fr = ar * inv_r - ai * inv_i;
                let fi = ar * inv_i + ai * inv_r;
                row_re[col] = fr;
                row_im[col] = fi;
                let dst_re = &mut row_re[col + 1..];
                let dst_im = &mut row_im[col + 1..];
                for j in 0..piv_re.len() {
                    let (ur, ui) = (piv_re[j], piv_im[j]);
                    dst_re[j] -= fr * ur - fi * ui;
                    dst_im[j] -= fr * ui + fi * ur;
                }
            }
        }
        Ok(Self { n, re, im, perm })
    }

    pub fn solve(&self, rhs: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.n;
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let mut acc = x[i];
            for j in 0..i {
                acc -= Complex::new(self.re[i * n + j], self.im[i * n + j]) * x[j];
            }
            x[i] = acc;
        }
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc -= Complex::new(self.re[i * n + j], self.im[i * n + j]) * x[j];
            }
            x[i] = acc / Complex::new(self.re[i * n + i], self.im[i * n + i]);
        }
        x
    }
}

/// `max_i |(A x - b)_i|` for a row-major square matrix.
pub(crate) fn max_residual<T: Real>(n: usize, matrix: &[Complex<T>], x: &[Complex<T>], b: &[Complex<T>]) -> T {
    let mut worst = T::zero();
    for i in 0..n {
        let mut acc = -b[i];
        for j in 0..n {
            acc += matrix[i * n + j] * x[j];
        }
        worst = worst.max(acc.norm());
    }
    worst
}
