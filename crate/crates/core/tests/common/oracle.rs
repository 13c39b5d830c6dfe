//! Reference linear algebra that shares no code with the library: dense
//! row-major complex matrices, cyclic Jacobi on the realified matrix, and
//! Faddeev–LeVerrier characteristic polynomials.

use freespec::{ComplexMatrix, HermitianTuple};
use num_complex::Complex64 as C;

#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub a: Vec<C>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![C::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = C::new(1.0, 0.0);
        }
        m
    }

    pub fn from_lib(m: &ComplexMatrix<f64>) -> Self {
        let n = m.rows();
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.a[r * n + c] = m[(r, c)];
            }
        }
        out
    }

    pub fn at(&self, r: usize, c: usize) -> C {
        self.a[r * self.n + c]
    }

    pub fn kron(&self, o: &Self) -> Self {
        let n = self.n * o.n;
        let mut out = Self::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                for p in 0..o.n {
                    for q in 0..o.n {
                        out.a[(i * o.n + p) * n + j * o.n + q] = self.at(i, j) * o.at(p, q);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self, s: f64) -> Self {
        Self { n: self.n, a: self.a.iter().zip(&o.a).map(|(x, y)| x + y * s).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                for j in 0..n {
                    out.a[i * n + j] += x * o.at(k, j);
                }
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self { n: self.n, a: self.a.iter().map(|z| z.conj()).collect() }
    }

    pub fn trace(&self) -> C {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }
}

/// `Σ A_i ⊗ X_i`.
pub fn lambda(a: &HermitianTuple<f64>, x: &HermitianTuple<f64>) -> Dense {
    let mut out = Dense::zeros(a.size() * x.size());
    for (ai, xi) in a.iter().zip(x.iter()) {
        out = out.add(&Dense::from_lib(ai).kron(&Dense::from_lib(xi)), 1.0);
    }
    out
}

/// `I − Σ A_i ⊗ X_i`.
pub fn pencil(a: &HermitianTuple<f64>, x: &HermitianTuple<f64>) -> Dense {
    let l = lambda(a, x);
    Dense::identity(l.n).add(&l, -1.0)
}

/// Ascending eigenvalues of a Hermitian matrix. The realified matrix
/// `[[Re, −Im], [Im, Re]]` carries each eigenvalue twice.
pub fn jacobi_eigenvalues(h: &Dense) -> Vec<f64> {
    let n = h.n;
    let m = 2 * n;
    let mut s = vec![0.0; m * m];
    for r in 0..n {
        for c in 0..n {
            let z = h.at(r, c);
            s[r * m + c] = z.re;
            s[(r + n) * m + c + n] = z.re;
            s[r * m + c + n] = -z.im;
            s[(r + n) * m + c] = z.im;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| s[i * m + j].powi(2)).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = s[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (s[q * m + q] - s[p * m + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..m {
                    let (akp, akq) = (s[k * m + p], s[k * m + q]);
                    s[k * m + p] = c * akp - sn * akq;
                    s[k * m + q] = sn * akp + c * akq;
                }
                for k in 0..m {
                    let (apk, aqk) = (s[p * m + k], s[q * m + k]);
                    s[p * m + k] = c * apk - sn * aqk;
                    s[q * m + k] = sn * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<f64> = (0..m).map(|i| s[i * m + i]).collect();
    d.sort_by(f64::total_cmp);
    d.into_iter().step_by(2).collect()
}

/// Coefficients `c_0, …, c_n` of `det(λI − M) = Σ c_k λ^k`.
pub fn characteristic_polynomial(m: &Dense) -> Vec<C> {
    let n = m.n;
    let mut c = vec![C::new(0.0, 0.0); n + 1];
    c[n] = C::new(1.0, 0.0);
    let mut mk = Dense::zeros(n);
    for k in 1..=n {
        mk = m.mul(&mk);
        for i in 0..n {
            mk.a[i * n + i] += c[n - k + 1];
        }
        c[n - k] = -m.mul(&mk).trace() / k as f64;
    }
    c
}

pub fn eval_polynomial(c: &[C], x: f64) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, &ck| acc * x + ck)
}
