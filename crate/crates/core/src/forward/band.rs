//! Banded LU factorisation with partial pivoting.

use crate::error::{Error, Result};

/// Square band matrix with `kl` sub- and `ku` super-diagonals. Storage keeps
/// `kl` extra super-diagonals for pivoting fill-in.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        BandMatrix { n, kl, ku, width, data: vec![0.0; n * width] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.kl + self.ku, "({i},{j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || j > i + self.kl + self.ku {
            0.0
        } else {
            self.data[self.idx(i, j)]
        }
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(j + self.kl >= i && j <= i + self.ku, "entry ({i},{j}) outside declared band");
        let k = self.idx(i, j);
        self.data[k] += v;
    }

    /// `A x` using the original band.
    pub fn mul(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// `|A| |x|`, used to scale residuals.
    pub fn mul_abs(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.kl);
                let hi = (i + self.ku).min(self.n - 1);
                (lo..=hi).map(|j| (self.get(i, j) * x[j]).abs()).sum()
            })
            .collect()
    }

    /// Solves `A x = b`, consuming a copy of the matrix.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        let mut a = self.clone();
        let mut x = b.to_vec();
        let reach = self.kl + self.ku;
        for c in 0..n {
            let last = (c + self.kl).min(n - 1);
            let mut p = c;
            for r in c + 1..=last {
                if a.get(r, c).abs() > a.get(p, c).abs() {
                    p = r;
                }
            }
            let piv = a.get(p, c);
            if piv == 0.0 || !piv.is_finite() {
                return Err(Error::Solver { msg: format!("singular band matrix at column {c}"), residual: f64::NAN });
            }
            let jmax = (c + reach).min(n - 1);
            if p != c {
                for j in c..=jmax {
                    let (ic, ip) = (a.idx(c, j), a.idx(p, j));
                    a.data.swap(ic, ip);
                }
                x.swap(c, p);
            }
            for r in c + 1..=last {
                let irc = a.idx(r, c);
                let m = a.data[irc] / piv;
                if m == 0.0 {
                    continue;
                }
                a.data[irc] = 0.0;
                for j in c + 1..=jmax {
                    let (irj, icj) = (a.idx(r, j), a.idx(c, j));
                    a.data[irj] -= m * a.data[icj];
                }
                x[r] -= m * x[c];
            }
        }
        for i in (0..n).rev() {
            let jmax = (i + reach).min(n - 1);
            let mut s = x[i];
            for j in i + 1..=jmax {
                s -= a.data[a.idx(i, j)] * x[j];
            }
            x[i] = s / a.data[a.idx(i, i)];
        }
        Ok(x)
    }
}
