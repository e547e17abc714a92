//! Graded Milnor algebra `M(f) = S / (f_x, f_y, f_z)`.
//!
//! `dim M(f)_k` is `dim S_k` minus the rank of the map
//! `S_{k-N+1}^3 -> S_k, (a, b, c) |-> a f_x + b f_y + c f_z`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactla::LinalgError;
pub use crate::jacobian::Jacobian;
use crate::poly::{dim_s, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("polynomial is zero or not homogeneous")]
    NotHomogeneous,
    #[error("curve degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error(
        "dim M(f)_k has not stabilised by degree {k_max}: dims {tail:?} around 3N-5; \
         the curve is not reduced or has non-isolated singularities"
    )]
    NotStable { k_max: usize, tail: Vec<usize> },
    #[error("k_max {k_max} is below the stabilisation check range (needs at least {needed})")]
    KMaxTooSmall { k_max: usize, needed: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl Jacobian {
    pub fn milnor_dim(&self, k: i64) -> Result<usize, LinalgError> {
        if k < 0 {
            return Ok(0);
        }
        Ok(dim_s(k) - self.jacobian_rank(k)?)
    }

    /// Hilbert function through `k_max` (default `3N - 3`) with thresholds.
    pub fn hilbert_series(&self, k_max: Option<usize>) -> Result<HilbertFunction, MilnorError> {
        let n = self.degree() as usize;
        if n < 3 {
            return Err(MilnorError::DegreeTooSmall(self.degree()));
        }
        let needed = 3 * n - 3;
        let k_max = k_max.unwrap_or(needed);
        if k_max < needed {
            return Err(MilnorError::KMaxTooSmall { k_max, needed });
        }
        let dims = (0..=k_max)
            .map(|k| self.milnor_dim(k as i64))
            .collect::<Result<Vec<_>, _>>()?;
        let bound = 3 * n - 5;
        let tail = dims[bound..=needed].to_vec();
        if tail.iter().any(|&d| d != tail[0]) || dims[needed..].iter().any(|&d| d != tail[0]) {
            return Err(MilnorError::NotStable { k_max, tail });
        }
        let tau = dims[bound];
        let st = (0..=bound)
            .rev()
            .take_while(|&k| dims[k] == tau)
            .last()
            .unwrap_or(bound + 1);
        let ct = (0..=k_max)
            .position(|k| dims[k] != smooth_reference_dim(self.degree(), k as i64))
            .map(|first_diff| first_diff - 1);
        let hf = HilbertFunction {
            degree: self.degree(),
            dims,
            tau,
            ct,
            st,
            mdr: ct.map(|c| c + 2 - n),
        };
        Ok(hf)
    }
}

/// `dim M(f)_k` over `Q`. `f` must be homogeneous.
pub fn milnor_dim(f: &Polynomial, k: i64) -> usize {
    Jacobian::new(f)
        .expect("homogeneous polynomial")
        .milnor_dim(k)
        .expect("rational rank never fails")
}

pub fn hilbert_series(f: &Polynomial, k_max: Option<usize>) -> Result<HilbertFunction, MilnorError> {
    Jacobian::new(f)?.hilbert_series(k_max)
}

/// Total Tjurina number, the stable value of the Hilbert function.
pub fn tau(f: &Polynomial) -> Result<usize, MilnorError> {
    Ok(hilbert_series(f, None)?.tau)
}

/// Coefficient of `t^k` in `((1 - t^{N-1}) / (1 - t))^3`, the Hilbert function
/// of the Milnor algebra of a smooth curve of degree `N`.
pub fn smooth_reference_dim(n: u32, k: i64) -> usize {
    assert!(n >= 2, "smooth reference needs N >= 2");
    let top = 3 * (n as i64 - 2);
    if k < 0 || k > top {
        return 0;
    }
    // inclusion-exclusion over how many exponents reach N-1
    let mut acc: i64 = 0;
    for j in 0..=3i64 {
        let rest = k - j * (n as i64 - 1);
        if rest < 0 {
            break;
        }
        let binom3 = [1, 3, 3, 1][j as usize];
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc += sign * binom3 * dim_s(rest) as i64;
    }
    acc as usize
}

/// `k |-> dim M(f)_k` with the stable value and the three thresholds.
///
/// `ct` and `mdr` are `None` for smooth curves, where the Hilbert function
/// coincides with the smooth reference in every degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub degree: u32,
    pub dims: Vec<usize>,
    pub tau: usize,
    pub ct: Option<usize>,
    pub st: usize,
    pub mdr: Option<usize>,
}

impl HilbertFunction {
    pub fn dim(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.dims.get(k as usize).copied().unwrap_or(self.tau)
        }
    }

    /// The series written as `1+3t+6t^2+...+45(t^13+...)`, folding the stable tail.
    pub fn series_string(&self) -> String {
        let term = |k: usize| match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        let mut parts = Vec::new();
        for k in 0..self.st {
            let d = self.dims[k];
            if d == 0 {
                continue;
            }
            parts.push(match (d, k) {
                (_, 0) => d.to_string(),
                (1, _) => term(k),
                _ => format!("{d}{}", term(k)),
            });
        }
        if self.tau > 0 {
            let st = self.st;
            let tail = if st == 0 {
                "1+t+t^2+...".to_string()
            } else {
                format!("{}+{}+...", term(st), term(st + 1))
            };
            parts.push(if self.tau == 1 {
                format!("({tail})")
            } else {
                format!("{}({tail})", self.tau)
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series_string())
    }
}

/// Line in the symbolic form used by the CLI: `ct=4 st=4 tau=6 mdr=2`.
pub fn threshold_line(h: &HilbertFunction) -> String {
    let opt = |v: Option<usize>| v.map_or("inf".to_string(), |x| x.to_string());
    format!("ct={} st={} tau={} mdr={}", opt(h.ct), h.st, h.tau, opt(h.mdr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn f(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn generic_four_lines() {
        let h = hilbert_series(&f("xyz(x+y+z)"), None).unwrap();
        assert_eq!(&h.dims[..6], &[1, 3, 6, 7, 6, 6]);
        assert_eq!((h.ct, h.st, h.tau, h.mdr), (Some(4), 4, 6, Some(2)));
        assert_eq!(h.series_string(), "1+3t+6t^2+7t^3+6(t^4+t^5+...)");
    }

    #[test]
    fn line_plus_fermat_cubic() {
        let g = f("x(x^3+y^3+z^3)");
        assert_eq!(milnor_dim(&g, 5), 4);
        let h = hilbert_series(&g, None).unwrap();
        assert_eq!(&h.dims[..8], &[1, 3, 6, 7, 6, 4, 3, 3]);
        assert_eq!((h.ct, h.st, h.tau), (Some(4), 6, 3));
    }

    #[test]
    fn degree_zero_is_one() {
        for s in ["x^3+y^3+z^3", "xyz(x+y+z)", "xy^2+z^3"] {
            assert_eq!(milnor_dim(&f(s), 0), 1);
        }
        assert_eq!(milnor_dim(&f("x^3+y^3+z^3"), -1), 0);
    }

    #[test]
    fn smooth_reference() {
        let seq: Vec<usize> = (0..8).map(|k| smooth_reference_dim(4, k)).collect();
        assert_eq!(seq, vec![1, 3, 6, 7, 6, 3, 1, 0]);
        for n in 2..10u32 {
            let top = 3 * (n as i64 - 2);
            assert_eq!(smooth_reference_dim(n, 0), 1);
            assert_eq!(smooth_reference_dim(n, top), 1);
            assert_eq!(smooth_reference_dim(n, top + 1), 0);
        }
    }

    #[test]
    fn smooth_quartic() {
        let h = hilbert_series(&f("x^4+y^4+z^4"), None).unwrap();
        assert_eq!(h.tau, 0);
        assert_eq!(h.st, 7);
        assert_eq!(h.ct, None);
        assert_eq!(h.mdr, None);
        assert_eq!(h.series_string(), "1+3t+6t^2+7t^3+6t^4+3t^5+t^6");
    }

    #[test]
    fn non_reduced_is_rejected() {
        let err = hilbert_series(&f("x^2(x^3+y^3+z^3)"), None).unwrap_err();
        assert!(matches!(err, MilnorError::NotStable { .. }));
        assert_eq!(
            hilbert_series(&f("x^2+y^2+z^2"), None).unwrap_err(),
            MilnorError::DegreeTooSmall(2)
        );
        assert_eq!(
            hilbert_series(&f("x^3+z"), None).unwrap_err(),
            MilnorError::NotHomogeneous
        );
    }
}
