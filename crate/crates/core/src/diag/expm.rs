//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13 chosen from the 1-norm.

use crate::error::{Error, Result};
use crate::{ComplexMatrix, C64};

const THETA: [(usize, f64); 5] = [
    (3, 1.495585217958292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504178996162932e-1),
    (9, 2.097847961257068e0),
    (13, 5.371920351148152e0),
];

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const PADE_9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn one_norm(m: &ComplexMatrix) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn scaled(m: &ComplexMatrix, s: f64) -> ComplexMatrix {
    m.map(|z| z * s)
}

/// `exp(M)` for a square complex matrix.
pub fn matrix_exponential(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::InvalidArgument("matrix must be square".into()));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    if n == 0 {
        return Ok(m.clone());
    }
    let norm = one_norm(m);
    let id = ComplexMatrix::identity(n, n);

    for &(order, theta) in &THETA[..4] {
        if norm <= theta {
            let coeffs: &[f64] = match order {
                3 => &PADE_3,
                5 => &PADE_5,
                7 => &PADE_7,
                _ => &PADE_9,
            };
            return low_order(m, coeffs, &id);
        }
    }

    let theta13 = THETA[4].1;
    let squarings = if norm > theta13 {
        (norm / theta13).log2().ceil() as i32
    } else {
        0
    };
    let a = scaled(m, 0.5f64.powi(squarings));
    let mut r = order13(&a, &id)?;
    for _ in 0..squarings {
        r = &r * &r;
    }
    if r.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Accuracy {
            message: "matrix exponential overflowed".into(),
            tail: norm,
        });
    }
    Ok(r)
}

fn solve_pade(u: ComplexMatrix, v: ComplexMatrix) -> Result<ComplexMatrix> {
    let num = &v + &u;
    let den = v - u;
    den.lu().solve(&num).ok_or_else(|| Error::Accuracy {
        message: "singular Padé denominator".into(),
        tail: f64::INFINITY,
    })
}

fn low_order(a: &ComplexMatrix, b: &[f64], id: &ComplexMatrix) -> Result<ComplexMatrix> {
    let a2 = a * a;
    let mut powers = vec![id.clone()];
    while powers.len() * 2 < b.len() {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let n = a.nrows();
    let mut odd = ComplexMatrix::zeros(n, n);
    let mut even = ComplexMatrix::zeros(n, n);
    for (k, p) in powers.iter().enumerate() {
        even += p * C64::new(b[2 * k], 0.0);
        odd += p * C64::new(b[2 * k + 1], 0.0);
    }
    solve_pade(a * odd, even)
}

fn order13(a: &ComplexMatrix, id: &ComplexMatrix) -> Result<ComplexMatrix> {
    let b = &PADE_13;
    let c = |x: f64| C64::new(x, 0.0);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = &a6 * (&a6 * c(b[13]) + &a4 * c(b[11]) + &a2 * c(b[9]));
    let u = a * (inner_u + &a6 * c(b[7]) + &a4 * c(b[5]) + &a2 * c(b[3]) + id * c(b[1]));
    let inner_v = &a6 * (&a6 * c(b[12]) + &a4 * c(b[10]) + &a2 * c(b[8]));
    let v = inner_v + &a6 * c(b[6]) + &a4 * c(b[4]) + &a2 * c(b[2]) + id * c(b[0]);
    solve_pade(u, v)
}
