//! Dense reference computations, independent of the sparse/CG code path.

use seampaste::image::{BinaryMask, GrayImage};

/// Builds the dense 5-point system straight from the stencil definition,
/// without going through `assemble_system`.
pub fn dense_system(
    target: &GrayImage,
    mask: &BinaryMask,
    guidance: &[f64],
) -> (Vec<(usize, usize)>, Vec<Vec<f64>>, Vec<f64>) {
    let pixels: Vec<(usize, usize)> = mask.members().collect();
    let n = pixels.len();
    let pos = |x: usize, y: usize| pixels.iter().position(|&p| p == (x, y));
    let mut a = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for (i, &(x, y)) in pixels.iter().enumerate() {
        a[i][i] = 4.0;
        b[i] = guidance[i];
        for (nx, ny) in [(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)] {
            match pos(nx, ny) {
                Some(j) => a[i][j] = -1.0,
                None => b[i] += target.get(nx, ny),
            }
        }
    }
    (pixels, a, b)
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        let d = a[col][col];
        assert!(d.abs() > 1e-14, "singular matrix");
        for row in col + 1..n {
            let f = a[row][col] / d;
            if f == 0.0 {
                continue;
            }
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Cholesky factorization; `None` if a pivot is not positive, i.e. the
/// matrix is not positive definite.
pub fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Solves the membrane problem densely and returns the filled image.
pub fn dense_harmonic_fill(target: &GrayImage, mask: &BinaryMask) -> Vec<f64> {
    let zero = vec![0.0; mask.count()];
    let (pixels, a, b) = dense_system(target, mask, &zero);
    let x = gauss_solve(a, b);
    let mut out = target.data().to_vec();
    for (&(px, py), v) in pixels.iter().zip(x) {
        out[py * target.width() + px] = v;
    }
    out
}
