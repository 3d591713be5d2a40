//! Dense Hermitian eigensolver.
//!
//! Householder reduction of the Hermitian matrix to a complex tridiagonal
//! form, a diagonal phase similarity that makes the off-diagonal real, then
//! implicit-shift QL on the real symmetric tridiagonal matrix.

use crate::error::{invalid, Error, Result};
use crate::{ComplexMatrix, C64};

const MAX_QL_ITERATIONS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `max_i ||M v_i - lambda_i v_i||`.
    pub fn max_residual(&self, m: &ComplexMatrix) -> f64 {
        let mv = m * &self.eigenvectors;
        (0..self.eigenvalues.len())
            .map(|i| {
                let lam = self.eigenvalues[i];
                (0..m.nrows())
                    .map(|r| (mv[(r, i)] - self.eigenvectors[(r, i)] * lam).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

/// `max |M - M†|`.
pub fn hermiticity_residual(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..=i {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(invalid(format!(
            "matrix must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let asym = hermiticity_residual(m);
    if asym > 1e-10 {
        return Err(invalid(format!("matrix is not Hermitian: asymmetry {asym:e}")));
    }
    Ok(())
}

/// All eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(m)?;
    let (mut d, mut e, _) = tridiagonalize(m, false);
    tql(&mut d, &mut e, None)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let n = m.nrows();
    let (mut d, mut e, q) = tridiagonalize(m, true);
    let q = q.expect("requested");
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    tql(&mut d, &mut e, Some(&mut z))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (out, &col) in order.iter().enumerate() {
        for r in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += q[(r, k)] * z[k * n + col];
            }
            vectors[(r, out)] = acc;
        }
    }
    Ok(HermitianEigen {
        eigenvalues: order.iter().map(|&i| d[i]).collect(),
        eigenvectors: vectors,
    })
}

/// Reduces `m` to a real symmetric tridiagonal matrix `(d, e)` with
/// `m = Q T Q†`, `e[i]` coupling rows `i` and `i + 1`. The returned `Q`
/// already contains the phase similarity.
fn tridiagonalize(m: &ComplexMatrix, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<ComplexMatrix>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut reflectors: Vec<(usize, Vec<C64>, f64)> = Vec::new();

    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let x: Vec<C64> = (0..len).map(|i| a[(k + 1 + i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // trailing block update: A <- A - v w† - w v†
        let off = k + 1;
        let mut p = vec![C64::new(0.0, 0.0); len];
        for i in 0..len {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..len {
                acc += a[(off + i, off + j)] * v[j];
            }
            p[i] = acc * tau;
        }
        let kappa: C64 = v.iter().zip(&p).map(|(vi, pi)| vi.conj() * pi).sum::<C64>() * (tau / 2.0);
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa.re * vi).collect();
        for i in 0..len {
            for j in 0..len {
                let upd = v[i] * w[j].conj() + w[i] * v[j].conj();
                a[(off + i, off + j)] -= upd;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in 1..len {
            a[(k + 1 + i, k)] = C64::new(0.0, 0.0);
            a[(k, k + 1 + i)] = C64::new(0.0, 0.0);
        }
        if want_q {
            reflectors.push((off, v, tau));
        }
    }

    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    let mut phases = vec![C64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1, i)];
        let mag = sub.norm();
        e[i] = mag;
        phases[i + 1] = if mag == 0.0 { phases[i] } else { phases[i] * sub / mag };
    }

    let q = want_q.then(|| {
        // Q = H_0 H_1 ... applied from the right onto the identity
        let mut q = ComplexMatrix::identity(n, n);
        for (off, v, tau) in &reflectors {
            let len = v.len();
            for r in 0..n {
                let mut dot = C64::new(0.0, 0.0);
                for j in 0..len {
                    dot += q[(r, off + j)] * v[j];
                }
                let dot = dot * *tau;
                for j in 0..len {
                    q[(r, off + j)] -= dot * v[j].conj();
                }
            }
        }
        for c in 0..n {
            for r in 0..n {
                q[(r, c)] *= phases[c];
            }
        }
        q
    });
    (d, e, q)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `z` (row-major,
/// n x n) accumulates the rotations when given.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::Accuracy {
                    message: "QL iteration did not converge".into(),
                    tail: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        let n = rows.len();
        ComplexMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j], 0.0))
    }

    #[test]
    fn diagonal_input() {
        let m = real(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = real(&[&[2.0, 0.1], &[0.1, 1.0]]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        // 1.5 -/+ sqrt(0.25 + 0.01)
        assert_abs_diff_eq!(ev[0], 1.5 - 0.26f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 1.5 + 0.26f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ev[0], 0.990098, epsilon = 1e-6);
        assert_abs_diff_eq!(ev[1], 2.009902, epsilon = 1e-6);

        let g = 0.7;
        let m = real(&[&[0.0, g], &[g, 0.0]]);
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], -g, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], g, epsilon = 1e-15);
    }

    #[test]
    fn complex_hermitian_pauli_y() {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(0.0, -1.0),
                C64::new(0.0, 1.0),
                C64::new(0.0, 0.0),
            ],
        );
        let ev = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(ev[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ev[1], 1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = real(&[&[1.0, 2.0], &[0.0, 1.0]]);
        match hermitian_eigenvalues(&m) {
            Err(Error::InvalidArgument(msg)) => assert!(msg.contains("asymmetry")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_and_scalar() {
        assert!(hermitian_eigenvalues(&ComplexMatrix::zeros(0, 0)).unwrap().is_empty());
        assert_eq!(hermitian_eigenvalues(&real(&[&[4.5]])).unwrap(), vec![4.5]);
    }

    fn random_hermitian(n: usize, seed: &[f64]) -> ComplexMatrix {
        let mut it = seed.iter().cycle();
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(*it.next().unwrap(), 0.0);
            for j in 0..i {
                let z = C64::new(*it.next().unwrap(), *it.next().unwrap());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        // independent route: real symmetric embedding [[Re, -Im], [Im, Re]]
        // diagonalized by nalgebra, which doubles every eigenvalue
        #[test]
        fn agrees_with_real_embedding(n in 1usize..12, seed in prop::collection::vec(-2.0f64..2.0, 7..40)) {
            let m = random_hermitian(n, &seed);
            let ours = hermitian_eigenvalues(&m).unwrap();
            let emb = nalgebra::DMatrix::<f64>::from_fn(2 * n, 2 * n, |i, j| {
                let z = m[(i % n, j % n)];
                match (i < n, j < n) {
                    (true, true) | (false, false) => z.re,
                    (true, false) => -z.im,
                    (false, true) => z.im,
                }
            });
            let mut reference: Vec<f64> = emb.symmetric_eigen().eigenvalues.iter().copied().collect();
            reference.sort_by(f64::total_cmp);
            for i in 0..n {
                prop_assert!((ours[i] - reference[2 * i]).abs() < 1e-10);
                prop_assert!((ours[i] - reference[2 * i + 1]).abs() < 1e-10);
            }
        }

        #[test]
        fn eigenpairs_have_small_residual(n in 1usize..16, seed in prop::collection::vec(-3.0f64..3.0, 7..50)) {
            let m = random_hermitian(n, &seed);
            let eig = hermitian_eigen(&m).unwrap();
            let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(eig.max_residual(&m) <= 1e-9 * scale * n as f64);
            let gram = eig.eigenvectors.adjoint() * &eig.eigenvectors;
            for i in 0..n {
                for j in 0..n {
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((gram[(i, j)] - C64::new(target, 0.0)).norm() < 1e-12);
                }
            }
            let vals = hermitian_eigenvalues(&m).unwrap();
            for (a, b) in vals.iter().zip(&eig.eigenvalues) {
                prop_assert!((a - b).abs() < 1e-12 * scale);
            }
        }
    }
}
