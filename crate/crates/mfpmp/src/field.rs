//! The controlled layer map `F(x, θ) = tanh(Wx + τ)` and its analytic
//! derivatives, plus piecewise-constant control paths on a uniform time grid.
//!
//! Flattening convention, fixed globally: a parameter vector in `R^m` lists
//! `W` row-major first, then `τ` (when biases are enabled), so
//! `m = d² + d` with bias and `m = d²` without.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[inline]
pub fn tanh_prime(z: f64) -> f64 {
    let t = z.tanh();
    1.0 - t * t
}

#[inline]
pub fn tanh_second(z: f64) -> f64 {
    let t = z.tanh();
    -2.0 * t * (1.0 - t * t)
}

/// Parameters of one layer: weight matrix `W` (row-major d×d) and shift `τ`.
/// With `with_bias == false` the shift is identically zero and is excluded
/// from the flattened parameter vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlParams {
    pub dim: usize,
    pub weight: Vec<f64>,
    pub shift: Vec<f64>,
    pub with_bias: bool,
}

impl ControlParams {
    pub fn zero(dim: usize, with_bias: bool) -> Self {
        ControlParams {
            dim,
            weight: vec![0.0; dim * dim],
            shift: vec![0.0; dim],
            with_bias,
        }
    }

    /// Constant `c` on every weight entry and zero shift.
    pub fn constant(dim: usize, with_bias: bool, c: f64) -> Self {
        let mut p = Self::zero(dim, with_bias);
        for w in p.weight.iter_mut() {
            *w = c;
        }
        p
    }

    pub fn param_len(&self) -> usize {
        self.dim * self.dim + if self.with_bias { self.dim } else { 0 }
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut v = self.weight.clone();
        if self.with_bias {
            v.extend_from_slice(&self.shift);
        }
        v
    }

    pub fn from_flat(dim: usize, with_bias: bool, flat: &[f64]) -> Result<Self> {
        let m = dim * dim + if with_bias { dim } else { 0 };
        if flat.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "expected {m} flattened parameters, got {}",
                flat.len()
            )));
        }
        Ok(ControlParams {
            dim,
            weight: flat[..dim * dim].to_vec(),
            shift: if with_bias {
                flat[dim * dim..].to_vec()
            } else {
                vec![0.0; dim]
            },
            with_bias,
        })
    }

    /// Get flattened component `j`.
    pub fn component(&self, j: usize) -> f64 {
        if j < self.dim * self.dim {
            self.weight[j]
        } else {
            self.shift[j - self.dim * self.dim]
        }
    }

    pub fn set_component(&mut self, j: usize, v: f64) {
        if j < self.dim * self.dim {
            self.weight[j] = v;
        } else {
            self.shift[j - self.dim * self.dim] = v;
        }
    }

    /// Euclidean norm of the flattened parameters.
    pub fn norm(&self) -> f64 {
        let w: f64 = self.weight.iter().map(|x| x * x).sum();
        let t: f64 = if self.with_bias {
            self.shift.iter().map(|x| x * x).sum()
        } else {
            0.0
        };
        (w + t).sqrt()
    }

    fn preactivation(&self, x: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut z = self.shift.clone();
        for k in 0..d {
            let row = &self.weight[k * d..(k + 1) * d];
            z[k] += row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>();
        }
        z
    }
}

/// `F(x, θ) = tanh(Wx + τ)`, componentwise.
pub fn eval_field(x: &[f64], theta: &ControlParams) -> Vec<f64> {
    theta
        .preactivation(x)
        .into_iter()
        .map(|z| z.tanh())
        .collect()
}

/// In-place variant used in particle loops; `out` has length d.
pub fn eval_field_into(x: &[f64], theta: &ControlParams, out: &mut [f64]) {
    let d = theta.dim;
    for k in 0..d {
        let row = &theta.weight[k * d..(k + 1) * d];
        let z = theta.shift[k] + row.iter().zip(x).map(|(w, xi)| w * xi).sum::<f64>();
        out[k] = z.tanh();
    }
}

/// Spatial Jacobian `∂F_k/∂x_i = tanh'(z_k) W_{k,i}`, row-major d×d.
pub fn jac_x(x: &[f64], theta: &ControlParams) -> Vec<f64> {
    let d = theta.dim;
    let z = theta.preactivation(x);
    let mut jac = vec![0.0; d * d];
    for k in 0..d {
        let tp = tanh_prime(z[k]);
        for i in 0..d {
            jac[k * d + i] = tp * theta.weight[k * d + i];
        }
    }
    jac
}

/// Gradient w.r.t. the flattened parameters: d×m, row-major.
///
/// `∂F_k/∂W_{i,j} = δ_{k,i} tanh'(z_k) x_j` and, with bias,
/// `∂F_k/∂τ_i = δ_{k,i} tanh'(z_k)`.
pub fn grad_theta(x: &[f64], theta: &ControlParams) -> Vec<f64> {
    let d = theta.dim;
    let m = theta.param_len();
    let z = theta.preactivation(x);
    let mut g = vec![0.0; d * m];
    for k in 0..d {
        let tp = tanh_prime(z[k]);
        for j in 0..d {
            g[k * m + k * d + j] = tp * x[j];
        }
        if theta.with_bias {
            g[k * m + d * d + k] = tp;
        }
    }
    g
}

/// `∇_θF(x,θ)ᵀ v` for `v ∈ R^d`, exploiting the block-diagonal structure.
pub fn grad_theta_t_vec(x: &[f64], theta: &ControlParams, v: &[f64]) -> Vec<f64> {
    let d = theta.dim;
    let z = theta.preactivation(x);
    let mut out = vec![0.0; theta.param_len()];
    for k in 0..d {
        let s = tanh_prime(z[k]) * v[k];
        for j in 0..d {
            out[k * d + j] = s * x[j];
        }
        if theta.with_bias {
            out[d * d + k] = s;
        }
    }
    out
}

/// Upper estimate of the operator norm of the second parameter derivative
/// tensor at `(x, θ)`.
///
/// Each component `F_k` has the rank-one Hessian `tanh''(z_k) v_k v_kᵀ` with
/// `v_k` the k-th block row of `∇_θF/tanh'`; the returned value
/// `sqrt(Σ_k tanh''(z_k)² |v_k|⁴)` dominates `|∇²_θF(ϑ,ϑ)|` over unit `ϑ` and
/// stays below the coarse bound `4√d |x|²` (plus the bias block).
pub fn hessian_theta_norm(x: &[f64], theta: &ControlParams) -> f64 {
    let z = theta.preactivation(x);
    let vk_sq: f64 = x.iter().map(|xi| xi * xi).sum::<f64>()
        + if theta.with_bias { 1.0 } else { 0.0 };
    z.iter()
        .map(|&zk| {
            let h = tanh_second(zk) * vk_sq;
            h * h
        })
        .sum::<f64>()
        .sqrt()
}

/// Quadratic form of the second parameter derivative:
/// returns `(∇²_θF(x,θ)[ϑ,ϑ])_k = tanh''(z_k) (v_kᵀϑ)²`.
pub fn hessian_theta_apply(x: &[f64], theta: &ControlParams, dir: &[f64]) -> Vec<f64> {
    let d = theta.dim;
    let z = theta.preactivation(x);
    (0..d)
        .map(|k| {
            let mut vdot = 0.0;
            for j in 0..d {
                vdot += dir[k * d + j] * x[j];
            }
            if theta.with_bias {
                vdot += dir[d * d + k];
            }
            tanh_second(z[k]) * vdot * vdot
        })
        .collect()
}

/// Piecewise-constant control path: `θ_t = values[k]` on `[k·dt, (k+1)·dt)`,
/// horizon `T = L·dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlPath {
    pub dt: f64,
    pub values: Vec<ControlParams>,
}

impl ControlPath {
    pub fn new(dt: f64, values: Vec<ControlParams>) -> Result<Self> {
        if dt <= 0.0 || !dt.is_finite() {
            return Err(Error::invalid(format!("dt must be positive, got {dt}")));
        }
        if values.is_empty() {
            return Err(Error::invalid("control path needs at least one layer"));
        }
        let d = values[0].dim;
        let b = values[0].with_bias;
        if values.iter().any(|p| p.dim != d || p.with_bias != b) {
            return Err(Error::DimensionMismatch(
                "all layers must share dim and bias flag".into(),
            ));
        }
        Ok(ControlPath { dt, values })
    }

    pub fn zero(dim: usize, with_bias: bool, dt: f64, layers: usize) -> Self {
        ControlPath {
            dt,
            values: vec![ControlParams::zero(dim, with_bias); layers],
        }
    }

    pub fn constant(dim: usize, with_bias: bool, dt: f64, layers: usize, c: f64) -> Self {
        ControlPath {
            dt,
            values: vec![ControlParams::constant(dim, with_bias, c); layers],
        }
    }

    pub fn dim(&self) -> usize {
        self.values[0].dim
    }

    pub fn with_bias(&self) -> bool {
        self.values[0].with_bias
    }

    pub fn layers(&self) -> usize {
        self.values.len()
    }

    pub fn horizon(&self) -> f64 {
        self.dt * self.values.len() as f64
    }

    /// Layer index owning time `t`; clamps to the final layer at `t = T`.
    pub fn layer_at(&self, t: f64) -> usize {
        let k = (t / self.dt).floor() as isize;
        k.clamp(0, self.values.len() as isize - 1) as usize
    }

    pub fn at(&self, t: f64) -> &ControlParams {
        &self.values[self.layer_at(t)]
    }

    /// `‖θ‖₂ = (dt · Σ_k |θ_k|²)^{1/2}`.
    pub fn norm_l2(&self) -> f64 {
        (self.dt
            * self
                .values
                .iter()
                .map(|p| {
                    let n = p.norm();
                    n * n
                })
                .sum::<f64>())
        .sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        self.dt * self.values.iter().map(|p| p.norm()).sum::<f64>()
    }

    pub fn norm_linf(&self) -> f64 {
        self.values.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }

    /// L²-in-time distance between two paths on the same grid.
    pub fn dist_l2(&self, other: &ControlPath) -> Result<f64> {
        if self.values.len() != other.values.len()
            || (self.dt - other.dt).abs() > 1e-12
            || self.dim() != other.dim()
            || self.with_bias() != other.with_bias()
        {
            return Err(Error::DimensionMismatch(
                "control paths must share grid and shape".into(),
            ));
        }
        let mut acc = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            let fa = a.flatten();
            let fb = b.flatten();
            acc += fa
                .iter()
                .zip(&fb)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>();
        }
        Ok((self.dt * acc).sqrt())
    }

    /// Serialize as `{dt, d, with_bias, layers: [[W row-major…, τ…], …]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dt": self.dt,
            "d": self.dim(),
            "with_bias": self.with_bias(),
            "layers": self.values.iter().map(|p| p.flatten()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dt = v["dt"]
            .as_f64()
            .ok_or_else(|| Error::invalid("control path json: missing dt"))?;
        let d = v["d"]
            .as_u64()
            .ok_or_else(|| Error::invalid("control path json: missing d"))? as usize;
        let with_bias = v["with_bias"]
            .as_bool()
            .ok_or_else(|| Error::invalid("control path json: missing with_bias"))?;
        let layers = v["layers"]
            .as_array()
            .ok_or_else(|| Error::invalid("control path json: missing layers"))?;
        let mut values = Vec::with_capacity(layers.len());
        for layer in layers {
            let flat: Vec<f64> = layer
                .as_array()
                .ok_or_else(|| Error::invalid("control path json: layer is not an array"))?
                .iter()
                .map(|x| x.as_f64().unwrap_or(f64::NAN))
                .collect();
            values.push(ControlParams::from_flat(d, with_bias, &flat)?);
        }
        ControlPath::new(dt, values)
    }
}
