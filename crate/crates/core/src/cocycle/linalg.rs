use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::hp::cabs;

/// Solves a square system by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<Complex>>, mut b: Vec<Complex>) -> Result<Vec<Complex>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n), "square system expected");
    if n == 0 {
        return Ok(vec![]);
    }
    let bits = b[0].prec().0;
    let scale = a
        .iter()
        .flatten()
        .map(cabs)
        .fold(Float::new(bits), |m, x| m.max(&x));
    let tiny = Float::with_val(bits, Float::i_exp(1, -(bits as i32) / 2)) * &scale;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| cabs(&a[i][col]).partial_cmp(&cabs(&a[j][col])).unwrap())
            .unwrap();
        if cabs(&a[piv][col]) <= tiny {
            return Err(Error::SingularSystem);
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = Complex::with_val(bits, &a[row][col] / &a[col][col]);
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let t = Complex::with_val(bits, &factor * &a[col][k]);
                a[row][k] -= t;
            }
            let t = Complex::with_val(bits, &factor * &b[col]);
            b[row] -= t;
        }
    }
    let mut x = vec![Complex::with_val(bits, 0); n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in row + 1..n {
            s -= Complex::with_val(bits, &a[row][k] * &x[k]);
        }
        x[row] = s / &a[row][row];
    }
    Ok(x)
}

/// Least squares through the normal equations `A^H A x = A^H b`.
///
/// Returns the solution and `max|Ax - b| / max|b|`.
pub fn least_squares(a: &[Vec<Complex>], b: &[Complex]) -> Result<(Vec<Complex>, Float)> {
    let rows = b.len();
    assert!(a.len() == rows && rows > 0);
    let cols = a[0].len();
    let bits = b[0].prec().0;
    let mut ata = vec![vec![Complex::with_val(bits, 0); cols]; cols];
    let mut atb = vec![Complex::with_val(bits, 0); cols];
    for (r, br) in a.iter().zip(b) {
        for i in 0..cols {
            let ci = Complex::with_val(bits, r[i].conj_ref());
            for j in 0..cols {
                ata[i][j] += Complex::with_val(bits, &ci * &r[j]);
            }
            atb[i] += Complex::with_val(bits, &ci * br);
        }
    }
    let x = solve(ata, atb)?;
    let mut worst = Float::new(bits);
    let mut size = Float::new(bits);
    for (r, br) in a.iter().zip(b) {
        let mut s = Complex::with_val(bits, -br);
        for (aij, xj) in r.iter().zip(&x) {
            s += Complex::with_val(bits, aij * xj);
        }
        worst = worst.max(&cabs(&s));
        size = size.max(&cabs(br));
    }
    let residual = if size.is_zero() { worst } else { worst / size };
    Ok((x, residual))
}
