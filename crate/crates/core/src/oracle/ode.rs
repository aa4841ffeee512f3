//! Adaptive Dormand-Prince 5(4) integrator for a two-component real system.

use crate::error::{Error, Result};

pub type State = [f64; 2];

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th and embedded 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol, max_steps: 2_000_000 }
    }

    /// Integrates `s' = f(x, s)` from `x0` to `x1` (either direction) with
    /// an initial step magnitude `h0`.
    pub fn integrate<F>(&self, f: F, x0: f64, x1: f64, s0: State, h0: f64) -> Result<State>
    where
        F: Fn(f64, &State) -> State,
    {
        let dir = (x1 - x0).signum();
        let mut x = x0;
        let mut s = s0;
        let mut h = h0.abs().min((x1 - x0).abs()) * dir;
        let mut k1 = f(x, &s);
        for _ in 0..self.max_steps {
            if (x1 - x) * dir <= 0.0 {
                return Ok(s);
            }
            if (x + h - x1) * dir > 0.0 {
                h = x1 - x;
            }
            if h.abs() <= 1e-15 * x.abs().max(1e-300) {
                return Err(Error::IntegratorFailure { x, reason: "step size underflow" });
            }
            let stage = |coef: &[(f64, &State)]| -> State {
                let mut out = s;
                for (c, k) in coef {
                    out[0] += h * c * k[0];
                    out[1] += h * c * k[1];
                }
                out
            };
            let k2 = f(x + C2 * h, &stage(&[(A21, &k1)]));
            let k3 = f(x + C3 * h, &stage(&[(A31, &k1), (A32, &k2)]));
            let k4 = f(x + C4 * h, &stage(&[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(x + C5 * h, &stage(&[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
            let k6 = f(x + h, &stage(&[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
            let next = stage(&[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = f(x + h, &next);

            let mut err2 = 0.0;
            for i in 0..2 {
                let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = self.atol + self.rtol * s[i].abs().max(next[i].abs());
                err2 += (e / sc).powi(2);
            }
            let err = (err2 / 2.0).sqrt();
            if !err.is_finite() {
                h *= 0.2;
                continue;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if err <= 1.0 {
                x += h;
                s = next;
                k1 = k7;
            }
            h *= factor;
        }
        Err(Error::IntegratorFailure { x, reason: "too many steps" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let ode = Dopri5::new(1e-12, 1e-14);
        let s = ode.integrate(|_, s| [s[1], -s[0]], 0.0, 10.0, [0.0, 1.0], 1e-3).unwrap();
        assert!((s[0] - 10f64.sin()).abs() < 1e-10);
        assert!((s[1] - 10f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn backwards_exponential() {
        let ode = Dopri5::new(1e-12, 1e-14);
        let s = ode.integrate(|_, s| [s[0], s[1] * 2.0], 1.0, 0.0, [1f64.exp(), 2f64.exp()], 1e-2).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-11);
        assert!((s[1] - 1.0).abs() < 1e-11);
    }
}
