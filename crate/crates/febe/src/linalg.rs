//! Minimal dense complex 4×4 linear algebra: just enough for the Bloch-like
//! four-vector dynamics (matrix exponential, linear solve, eigenvalues).

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vec4 = [Complex64; 4];

/// Row-major complex 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat4(pub [[Complex64; 4]; 4]);

impl Mat4 {
    pub fn zeros() -> Self {
        Mat4([[Complex64::new(0.0, 0.0); 4]; 4])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            m.0[i][i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut m = *self;
        for row in &mut m.0 {
            for v in row {
                *v *= c;
            }
        }
        m
    }

    pub fn add(&self, other: &Mat4) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] += other.0[i][j];
            }
        }
        m
    }

    pub fn sub(&self, other: &Mat4) -> Self {
        let mut m = *self;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] -= other.0[i][j];
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat4) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for k in 0..4 {
                let a = self.0[i][k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..4 {
                    m.0[i][j] += a * other.0[k][j];
                }
            }
        }
        m
    }

    pub fn matvec(&self, v: &Vec4) -> Vec4 {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    /// Max absolute row sum (induced ∞-norm).
    pub fn norm_inf(&self) -> f64 {
        (0..4)
            .map(|i| self.0[i].iter().map(|v| v.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Matrix exponential by scaling-and-squaring with a Taylor series on the
    /// scaled matrix; accurate to machine precision for the well-conditioned
    /// anti-Hermitian-plus-decay generators used here.
    pub fn expm(&self) -> Self {
        let norm = self.norm_inf();
        let squarings = if norm > 0.25 {
            (norm / 0.25).log2().ceil().max(0.0) as u32
        } else {
            0
        };
        let a = self.scale(Complex64::new(1.0 / 2f64.powi(squarings as i32), 0.0));
        let mut result = Mat4::identity();
        let mut term = Mat4::identity();
        for k in 1..=24 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term);
            if term.norm_inf() < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }

    /// Solves A x = b by Gaussian elimination with partial pivoting.
    pub fn solve(&self, b: &Vec4) -> Result<Vec4> {
        let mut a = self.0;
        let mut x = *b;
        let tiny = 1e-14 * self.norm_inf().max(f64::MIN_POSITIVE);
        for col in 0..4 {
            let (pivot, pmax) = (col..4)
                .map(|r| (r, a[r][col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax < tiny {
                return Err(Error::domain("singular matrix in linear solve"));
            }
            a.swap(col, pivot);
            x.swap(col, pivot);
            let inv = Complex64::new(1.0, 0.0) / a[col][col];
            for r in (col + 1)..4 {
                let f = a[r][col] * inv;
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for c in col..4 {
                    let sub = f * a[col][c];
                    a[r][c] -= sub;
                }
                let sub = f * x[col];
                x[r] -= sub;
            }
        }
        for col in (0..4).rev() {
            let mut v = x[col];
            for c in (col + 1)..4 {
                v -= a[col][c] * x[c];
            }
            x[col] = v / a[col][col];
        }
        Ok(x)
    }

    /// Coefficients of the characteristic polynomial
    /// λ⁴ + c₃λ³ + c₂λ² + c₁λ + c₀ via Faddeev–LeVerrier.
    pub fn char_poly(&self) -> [Complex64; 4] {
        let mut m = Mat4::identity();
        let mut coeffs = [Complex64::new(0.0, 0.0); 4];
        for k in 1..=4 {
            let am = self.mul(&m);
            let c = -am.trace() / Complex64::new(k as f64, 0.0);
            coeffs[4 - k] = c;
            m = am;
            for i in 0..4 {
                m.0[i][i] += c;
            }
        }
        coeffs
    }

    /// All four eigenvalues via Durand–Kerner iteration on the
    /// characteristic polynomial. Adequate for diagnostics (not for repeated
    /// eigenvalues at high accuracy).
    pub fn eigenvalues(&self) -> [Complex64; 4] {
        let c = self.char_poly();
        let poly = |z: Complex64| (((z + c[3]) * z + c[2]) * z + c[1]) * z + c[0];
        // initial guesses on a circle of radius ~ the norm, offset angle to
        // avoid symmetry stalls
        let r = self.norm_inf().max(1e-30);
        let mut roots = [Complex64::new(0.0, 0.0); 4];
        for (k, root) in roots.iter_mut().enumerate() {
            *root = Complex64::from_polar(r, 0.4 + 1.7 * k as f64);
        }
        for _ in 0..400 {
            let mut max_step = 0.0f64;
            for i in 0..4 {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..4 {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                if denom.norm() < 1e-280 {
                    continue;
                }
                let step = poly(roots[i]) / denom;
                roots[i] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-14 * r.max(1.0) {
                break;
            }
        }
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> Mat4 {
        let mut m = Mat4::zeros();
        let vals = [
            [(1.0, 0.2), (0.3, -0.1), (0.0, 0.5), (0.7, 0.0)],
            [(-0.2, 0.4), (2.0, 0.0), (0.1, 0.1), (0.0, -0.3)],
            [(0.5, 0.0), (-0.6, 0.2), (0.9, -0.4), (0.2, 0.2)],
            [(0.0, 0.1), (0.4, 0.0), (-0.3, 0.6), (1.5, 0.1)],
        ];
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = c(vals[i][j].0, vals[i][j].1);
            }
        }
        m
    }

    #[test]
    fn identity_is_neutral() {
        let m = sample();
        let i = Mat4::identity();
        assert!(m.mul(&i).sub(&m).norm_inf() < 1e-15);
        assert!(i.mul(&m).sub(&m).norm_inf() < 1e-15);
    }

    #[test]
    fn solve_recovers_vector() {
        let m = sample();
        let x = [c(1.0, -0.5), c(0.0, 2.0), c(-1.2, 0.1), c(0.3, 0.3)];
        let b = m.matvec(&x);
        let got = m.solve(&b).unwrap();
        for i in 0..4 {
            assert!((got[i] - x[i]).norm() < 1e-12, "component {i}");
        }
    }

    #[test]
    fn solve_rejects_singular() {
        let mut m = sample();
        m.0[2] = m.0[1]; // duplicate row
        let b = [c(1.0, 0.0); 4];
        assert!(m.solve(&b).is_err());
    }

    #[test]
    fn expm_of_zero_is_identity() {
        let e = Mat4::zeros().expm();
        assert!(e.sub(&Mat4::identity()).norm_inf() < 1e-15);
    }

    #[test]
    fn expm_diagonal_matches_scalar_exp() {
        let mut m = Mat4::zeros();
        let d = [c(0.3, 1.0), c(-2.0, 0.4), c(0.0, -3.0), c(1.2, 0.0)];
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        let e = m.expm();
        for i in 0..4 {
            assert!((e.0[i][i] - d[i].exp()).norm() < 1e-13, "diag {i}");
        }
    }

    #[test]
    fn expm_additivity_on_commuting_scalings() {
        // exp(A) exp(A) = exp(2A)
        let a = sample().scale(c(0.3, 0.1));
        let lhs = a.expm().mul(&a.expm());
        let rhs = a.scale(c(2.0, 0.0)).expm();
        assert!(lhs.sub(&rhs).norm_inf() < 1e-12);
    }

    #[test]
    fn expm_antihermitian_is_unitary() {
        // A − A† generator exponentiates to a unitary
        let s = sample();
        let a = s.sub(&s.adjoint()).scale(c(0.5, 0.0));
        let u = a.expm();
        let prod = u.adjoint().mul(&u);
        assert!(prod.sub(&Mat4::identity()).norm_inf() < 1e-13);
    }

    #[test]
    fn char_poly_roots_satisfy_det_relation() {
        let m = sample();
        let c4 = m.char_poly();
        // c0 = det(A) (degree 4): check against product of eigenvalues
        let ev = m.eigenvalues();
        let prod = ev.iter().fold(c(1.0, 0.0), |a, b| a * b);
        assert!((prod - c4[0]).norm() < 1e-9);
        // trace = -c3 = sum of eigenvalues
        let sum: Complex64 = ev.iter().sum();
        assert!((sum + c4[3]).norm() < 1e-9);
        assert!((sum - m.trace()).norm() < 1e-9);
    }

    #[test]
    fn eigenvalues_of_diagonal_matrix() {
        let mut m = Mat4::zeros();
        let d = [c(1.0, 0.0), c(-2.0, 1.0), c(0.5, -0.5), c(3.0, 2.0)];
        for i in 0..4 {
            m.0[i][i] = d[i];
        }
        let mut ev = m.eigenvalues().to_vec();
        for want in d {
            let (idx, _) = ev
                .iter()
                .enumerate()
                .map(|(i, v)| (i, (v - want).norm()))
                .fold((0, f64::INFINITY), |b, cur| if cur.1 < b.1 { cur } else { b });
            assert!((ev[idx] - want).norm() < 1e-10, "missing eigenvalue {want}");
            ev.remove(idx);
        }
    }

    #[test]
    fn eigenvalue_residuals_vanish() {
        let m = sample();
        for lam in m.eigenvalues() {
            // det(A - λI) via char poly evaluation
            let cp = m.char_poly();
            let v = (((lam + cp[3]) * lam + cp[2]) * lam + cp[1]) * lam + cp[0];
            assert!(v.norm() < 1e-8, "residual {v} at λ={lam}");
        }
    }
}
