//! Small dense 3×3 helpers.

pub type Mat3 = [[f64; 3]; 3];
pub type Vec3 = [f64; 3];

pub const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Gaussian elimination with partial pivoting. Returns `None` when a pivot
/// vanishes relative to the matrix scale.
pub fn solve(a: &Mat3, b: &Vec3) -> Option<Vec3> {
    let scale = norm_inf(a);
    if scale == 0.0 {
        return None;
    }
    let mut m = *a;
    let mut rhs = *b;
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - s) / m[row][row];
    }
    Some(x)
}

/// Gaussian elimination with complete pivoting that tolerates rank
/// deficiency. Unknowns beyond the numerical rank are set to zero. Returns
/// the solution, the rank, and the largest residual `|A·x − b|`.
pub fn solve_rank_revealing(a: &Mat3, b: &Vec3, rel_tol: f64) -> (Vec3, usize, f64) {
    let scale = norm_inf(a);
    let mut m = *a;
    let mut rhs = *b;
    let mut perm = [0usize, 1, 2];
    let mut rank = 0;
    for step in 0..3 {
        let mut best = (step, step, 0.0);
        for r in step..3 {
            for c in step..3 {
                if m[r][c].abs() > best.2 {
                    best = (r, c, m[r][c].abs());
                }
            }
        }
        if best.2 <= rel_tol * scale || scale == 0.0 {
            break;
        }
        m.swap(step, best.0);
        rhs.swap(step, best.0);
        for row in m.iter_mut() {
            row.swap(step, best.1);
        }
        perm.swap(step, best.1);
        for row in step + 1..3 {
            let f = m[row][step] / m[step][step];
            for k in step..3 {
                m[row][k] -= f * m[step][k];
            }
            rhs[row] -= f * rhs[step];
        }
        rank += 1;
    }
    let mut y = [0.0; 3];
    for row in (0..rank).rev() {
        let s: f64 = (row + 1..rank).map(|k| m[row][k] * y[k]).sum();
        y[row] = (rhs[row] - s) / m[row][row];
    }
    let mut x = [0.0; 3];
    for k in 0..3 {
        x[perm[k]] = y[k];
    }
    let back = mat_vec(a, &x);
    let residual = (0..3).fold(0.0, |acc: f64, k| acc.max((back[k] - b[k]).abs()));
    (x, rank, residual)
}

pub fn inverse(a: &Mat3) -> Option<Mat3> {
    let mut inv = [[0.0; 3]; 3];
    for col in 0..3 {
        let x = solve(a, &IDENTITY[col])?;
        for row in 0..3 {
            inv[row][col] = x[row];
        }
    }
    Some(inv)
}

pub fn det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

pub fn norm_inf(a: &Mat3) -> f64 {
    a.iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖A‖∞·‖A⁻¹‖∞`, infinite for singular matrices.
pub fn condition(a: &Mat3) -> f64 {
    match inverse(a) {
        Some(inv) => norm_inf(a) * norm_inf(&inv),
        None => f64::INFINITY,
    }
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for (r, row) in a.iter().enumerate() {
        out[r] = row.iter().zip(v).map(|(x, y)| x * y).sum();
    }
    out
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
