//! Small dense matrix helpers for the d×d objects that appear along
//! characteristics (Jacobians, resolvents). Row-major `Vec<f64>` storage;
//! dimensions here are the data dimension d, i.e. tiny.

/// Row-major d×d matrix times vector.
pub fn matvec(m: &[f64], v: &[f64], d: usize) -> Vec<f64> {
    debug_assert_eq!(m.len(), d * d);
    debug_assert_eq!(v.len(), d);
    let mut out = vec![0.0; d];
    for i in 0..d {
        let row = &m[i * d..(i + 1) * d];
        out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

/// Transpose(m) times vector.
pub fn mat_t_vec(m: &[f64], v: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d];
    for i in 0..d {
        for j in 0..d {
            out[j] += m[i * d + j] * v[i];
        }
    }
    out
}

/// Row-major d×d matrix product a·b.
pub fn matmul(a: &[f64], b: &[f64], d: usize) -> Vec<f64> {
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

pub fn identity(d: usize) -> Vec<f64> {
    let mut m = vec![0.0; d * d];
    for i in 0..d {
        m[i * d + i] = 1.0;
    }
    m
}

/// Invert a small matrix by Gauss-Jordan with partial pivoting.
/// Returns `None` when a pivot degenerates (singular at working precision).
pub fn invert(m: &[f64], d: usize) -> Option<Vec<f64>> {
    let mut a = m.to_vec();
    let mut inv = identity(d);
    for col in 0..d {
        let pivot = (col..d).max_by(|&r, &s| {
            a[r * d + col]
                .abs()
                .partial_cmp(&a[s * d + col].abs())
                .unwrap()
        })?;
        if a[pivot * d + col].abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for j in 0..d {
                a.swap(col * d + j, pivot * d + j);
                inv.swap(col * d + j, pivot * d + j);
            }
        }
        let p = a[col * d + col];
        for j in 0..d {
            a[col * d + j] /= p;
            inv[col * d + j] /= p;
        }
        for r in 0..d {
            if r == col {
                continue;
            }
            let f = a[r * d + col];
            if f == 0.0 {
                continue;
            }
            for j in 0..d {
                a[r * d + j] -= f * a[col * d + j];
                inv[r * d + j] -= f * inv[col * d + j];
            }
        }
    }
    Some(inv)
}

pub fn determinant(m: &[f64], d: usize) -> f64 {
    let mut a = m.to_vec();
    let mut det = 1.0;
    for col in 0..d {
        let pivot = (col..d)
            .max_by(|&r, &s| {
                a[r * d + col]
                    .abs()
                    .partial_cmp(&a[s * d + col].abs())
                    .unwrap()
            })
            .unwrap();
        if a[pivot * d + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..d {
                a.swap(col * d + j, pivot * d + j);
            }
            det = -det;
        }
        det *= a[col * d + col];
        for r in col + 1..d {
            let f = a[r * d + col] / a[col * d + col];
            for j in col..d {
                a[r * d + j] -= f * a[col * d + j];
            }
        }
    }
    det
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Compensated (Neumaier) summation; used where mass drift is asserted at
/// 1e-12 and plain accumulation would already spend that budget.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn invert_roundtrip() {
        let m = vec![2.0, 1.0, -1.0, 3.0];
        let inv = invert(&m, 2).unwrap();
        let id = matmul(&m, &inv, 2);
        for (got, want) in id.iter().zip(identity(2)) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-12);
        }
    }

    #[test]
    fn determinant_2x2() {
        assert_abs_diff_eq!(determinant(&[2.0, 1.0, -1.0, 3.0], 2), 7.0, epsilon = 1e-12);
    }

    #[test]
    fn neumaier_beats_naive_on_cancellation() {
        let xs = vec![1e16, 1.0, -1e16];
        assert_eq!(neumaier_sum(xs), 1.0);
    }
}
