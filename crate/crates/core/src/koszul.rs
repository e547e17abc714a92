//! Cohomology of the Koszul complex `0 -> Omega^0 -> Omega^1 -> Omega^2 -> Omega^3 -> 0`
//! with differential `df ^ -`, essential syzygies, and the `E_1` table.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::exactla::LinalgError;
use crate::geometry::Check;
use crate::jacobian::{form_components, Jacobian};
use crate::milnor::{smooth_reference_dim, HilbertFunction, MilnorError};
use crate::poly::{dim_s, Polynomial};

impl Jacobian {
    /// `dim H^m(K*(f))_k`: kernel of the outgoing map on `Omega^m_k` modulo
    /// the image of `Omega^{m-1}_{k-N}`.
    pub fn koszul_h_dim(&self, m: u8, k: i64) -> Result<usize, LinalgError> {
        assert!(m <= 3, "cohomological index out of range");
        let n = self.degree() as i64;
        let kernel = Jacobian::form_dim(m, k)
            - if m < 3 { self.wedge_rank(m, k)? } else { 0 };
        let image = if m > 0 { self.wedge_rank(m - 1, k - n)? } else { 0 };
        Ok(kernel - image)
    }

    /// `dim ER(f)_m = dim H^2_{m+2}`.
    pub fn er_dim(&self, m: i64) -> Result<usize, LinalgError> {
        self.koszul_h_dim(2, m + 2)
    }

    /// Essential syzygies of degree `m`, one per dimension of `ER(f)_m`.
    pub fn syzygy_basis(&self, m: i64) -> Result<Vec<SyzygyClass>, LinalgError> {
        let classes = self
            .essential_syzygies(m)?
            .into_iter()
            .map(|mut v| {
                // primitive with a positive first entry
                let g = v.iter().fold(BigInt::zero(), |acc, (_, c)| num_integer::Integer::gcd(&acc, c));
                let g = if v.first().is_some_and(|(_, c)| c.is_negative()) { -g } else { g };
                for (_, c) in &mut v {
                    *c /= &g;
                }
                let [a, b, c] = <[Polynomial; 3]>::try_from(form_components(2, m + 2, &v))
                    .expect("three components");
                SyzygyClass { degree: m, a, b, c }
            })
            .collect();
        Ok(classes)
    }

    /// The lines `p + q = 2, 3` of `E_1` for `q = 0, 1, 2`, and `dim E_2^{2,1}`.
    pub fn spectral_table(&self) -> Result<SpectralTable, MilnorError> {
        let n = self.degree() as i64;
        let mut entries = Vec::new();
        for total in [2u8, 3] {
            for q in 0..=2u8 {
                let p = total - q;
                let dim = self.koszul_h_dim(total, (q as i64 + 1) * n)?;
                entries.push(SpectralEntry { p, q, dim });
            }
        }
        let h = self.hilbert_series(None)?;
        let e2_21 = self.milnor_dim(2 * n - 3)? - h.tau;
        Ok(SpectralTable { entries, e2_21 })
    }
}

impl Jacobian {
    /// Degreewise identities of the Koszul strands on `k in [0, 3N]`. Each
    /// check compares the number of failing degrees with zero.
    pub fn strand_audits(&self, h: &HilbertFunction) -> Result<Vec<Check>, LinalgError> {
        let n = self.degree() as i64;
        let range = 0..=3 * n;
        let (mut low, mut euler, mut formula, mut top) = (0, 0, 0, 0);
        let mut first_h2 = None;
        for k in range.clone() {
            let h = [0, 1, 2, 3].map(|m| self.koszul_h_dim(m, k));
            let [h0, h1, h2, h3] = [h[0].clone()?, h[1].clone()?, h[2].clone()?, h[3].clone()?];
            low += (h0 != 0 || h1 != 0) as i64;
            let h3_shift = self.koszul_h_dim(3, k + n)? as i64;
            let omega = |m: u8, d: i64| Jacobian::form_dim(m, d) as i64;
            let alt = omega(3, k + n) - omega(2, k) + omega(1, k - n) - omega(0, k - 2 * n);
            euler += (h3_shift - h2 as i64 != alt) as i64;
            let d = k + n - 3;
            let expected = self.milnor_dim(d)? as i64 - smooth_reference_dim(self.degree(), d) as i64;
            formula += (h2 as i64 != expected) as i64;
            top += (h3 != self.milnor_dim(k - 3)?) as i64;
            if h2 != 0 && first_h2.is_none() && k >= 2 {
                first_h2 = Some(k - 2);
            }
        }
        let mut stable = 0;
        // M(f)_{m+N-1} = tau and M(f_s)_{m+N-1} = 0 once m >= 2N-4
        for m in 2 * n - 4..=2 * n {
            stable += (self.er_dim(m)? != h.tau) as i64;
        }
        let opt = |v: Option<i64>| v.unwrap_or(-1);
        Ok(vec![
            Check::new("H^0_k = H^1_k = 0, failing degrees", low, 0),
            Check::new("strand Euler identity, failing degrees", euler, 0),
            Check::new("H^2_k = M_{k+N-3} - M(f_s)_{k+N-3}, failing degrees", formula, 0),
            Check::new("H^3_k = M_{k-3}, failing degrees", top, 0),
            Check::new("ER_m = tau for m in [2N-4, 2N], failing degrees", stable, 0),
            Check::new(
                "min{q : H^2_{q+2} != 0} = ct - N + 2 (-1 if none)",
                opt(first_h2),
                opt(h.mdr.map(|v| v as i64)),
            ),
        ])
    }
}

/// `dim H^m(K*(f))_k` over `Q`.
pub fn koszul_h_dim(f: &Polynomial, m: u8, k: i64) -> Result<usize, MilnorError> {
    Ok(Jacobian::new(f)?.koszul_h_dim(m, k)?)
}

pub fn er_dim(f: &Polynomial, m: i64) -> Result<usize, MilnorError> {
    Ok(Jacobian::new(f)?.er_dim(m)?)
}

pub fn syzygy_basis(f: &Polynomial, m: i64) -> Result<Vec<SyzygyClass>, MilnorError> {
    Ok(Jacobian::new(f)?.syzygy_basis(m)?)
}

pub fn spectral_table(f: &Polynomial) -> Result<SpectralTable, MilnorError> {
    Jacobian::new(f)?.spectral_table()
}

/// Dimension of the trivial syzygies `v x grad f` in degree `m`: the map
/// `v |-> v x grad f` on `S_{m-N+1}^3` has kernel `S_{m-2N+2} grad f`.
pub fn trivial_syzygy_dim(n: u32, m: i64) -> usize {
    let n = n as i64;
    3 * dim_s(m - n + 1) - dim_s(m - 2 * n + 2)
}

/// A syzygy `a f_x + b f_y + c f_z = 0` with `a, b, c` of degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyClass {
    pub degree: i64,
    pub a: Polynomial,
    pub b: Polynomial,
    pub c: Polynomial,
}

impl SyzygyClass {
    pub fn components(&self) -> [&Polynomial; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// `a f_x + b f_y + c f_z`, the zero polynomial for a genuine syzygy.
    pub fn evaluate(&self, grad: &[Polynomial; 3]) -> Polynomial {
        self.components()
            .iter()
            .zip(grad)
            .fold(Polynomial::zero(), |acc, (p, g)| &acc + &(*p * g))
    }
}

impl fmt::Display for SyzygyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·fx + ({})·fy + ({})·fz = 0", self.a, self.b, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralEntry {
    pub p: u8,
    pub q: u8,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralTable {
    pub entries: Vec<SpectralEntry>,
    /// `dim M(f)_{2N-3} - tau(C)`.
    pub e2_21: usize,
}

impl SpectralTable {
    pub fn get(&self, p: u8, q: u8) -> Option<usize> {
        self.entries.iter().find(|e| e.p == p && e.q == q).map(|e| e.dim)
    }
}
