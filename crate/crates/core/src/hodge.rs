//! Hodge numbers of `H^2(U)`, `U = P^2 \ C`, for curves with nodes and ordinary
//! triple points, and the bounds relating them to the Milnor algebra.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{arithmetic_genus, Check, SingularityProfile};
use crate::jacobian::Jacobian;
use crate::milnor::{HilbertFunction, MilnorError};
use crate::poly::Polynomial;

/// An integer polynomial in `u, v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeDeligne {
    terms: BTreeMap<(u32, u32), i64>,
}

impl HodgeDeligne {
    pub fn coefficient(&self, p: u32, q: u32) -> i64 {
        self.terms.get(&(p, q)).copied().unwrap_or(0)
    }

    fn add(&mut self, p: u32, q: u32, c: i64) {
        let e = self.terms.entry((p, q)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&(p, q));
        }
    }

    /// `self - other`.
    pub fn minus(&self, other: &HodgeDeligne) -> HodgeDeligne {
        let mut out = self.clone();
        for (&(p, q), &c) in &other.terms {
            out.add(p, q, -c);
        }
        out
    }

    /// `(p, q, coefficient)` in decreasing total degree, then decreasing `p`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        let mut v: Vec<_> = self.terms.iter().map(|(&(p, q), &c)| (p, q, c)).collect();
        v.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        v.into_iter()
    }
}

impl fmt::Display for HodgeDeligne {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, q, c) in self.terms() {
            let mono = |e: u32, name: &str| match e {
                0 => String::new(),
                1 => name.to_string(),
                _ => format!("{name}^{e}"),
            };
            let m = format!("{}{}", mono(p, "u"), mono(q, "v"));
            let abs = c.unsigned_abs();
            let body = if abs == 1 && !m.is_empty() { m } else { format!("{abs}{m}") };
            match (first, c < 0) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for HodgeDeligne {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            p: u32,
            q: u32,
            coeff: i64,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (p, q, coeff) in self.terms() {
            seq.serialize_element(&Term { p, q, coeff })?;
        }
        seq.end()
    }
}

/// Hodge–Deligne polynomial of the curve, by additivity over its strata.
pub fn hodge_deligne_curve(profile: &SingularityProfile) -> HodgeDeligne {
    let mut pc = HodgeDeligne::default();
    let r = profile.r as i64;
    let g = profile.total_genus() as i64;
    let local: i64 = profile.components.iter().map(|c| (c.n + 2 * c.t) as i64).sum();
    pc.add(1, 1, r);
    pc.add(1, 0, -g);
    pc.add(0, 1, -g);
    pc.add(
        0,
        0,
        r - local - (profile.degree_pairs() as i64 - profile.s as i64) + profile.t_prime as i64,
    );
    pc
}

/// `P(U) = P(P^2) - P(C)`.
#[allow(non_snake_case)]
pub fn hodge_deligne_U(profile: &SingularityProfile) -> HodgeDeligne {
    let mut plane = HodgeDeligne::default();
    plane.add(2, 2, 1);
    plane.add(1, 1, 1);
    plane.add(0, 0, 1);
    plane.minus(&hodge_deligne_curve(profile))
}

/// `(dim Gr^1_F H^2(U), dim Gr^2_F H^2(U)) = (sum g_j, (N-1)(N-2)/2 - t)`.
pub fn hodge_filtration_dims(profile: &SingularityProfile) -> (i64, i64) {
    (
        profile.total_genus() as i64,
        arithmetic_genus(profile.degree) as i64 - profile.t as i64,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("inconsistent profile: h22 = (N-1)(N-2)/2 - sum g_j - t = {0} < 0")]
    NegativeH22(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub gr1: i64,
    pub gr2: i64,
    pub h21: i64,
    pub h12: i64,
    pub h22: i64,
    pub h20: i64,
    pub h11: i64,
    pub h02: i64,
    pub b2: i64,
    /// `H^2(U)` is pure of type `(2,2)`.
    pub pure: bool,
    pub p_curve: HodgeDeligne,
    pub p_complement: HodgeDeligne,
    /// The filtration dimensions read back off `P(U)`.
    pub audits: Vec<Check>,
}

pub fn mixed_hodge_numbers(profile: &SingularityProfile) -> Result<HodgeReport, HodgeError> {
    let (gr1, gr2) = hodge_filtration_dims(profile);
    let h22 = gr2 - gr1;
    if h22 < 0 {
        return Err(HodgeError::NegativeH22(h22));
    }
    let pu = hodge_deligne_U(profile);
    let b2 = gr1 + gr2;
    let audits = vec![
        Check::new("gr1 = [u]P(U)", gr1, pu.coefficient(1, 0)),
        Check::new("gr1 = [v]P(U)", gr1, pu.coefficient(0, 1)),
        Check::new("gr2 = [v]P(U) + [1]P(U)", gr2, pu.coefficient(0, 1) + pu.coefficient(0, 0)),
        Check::new("-(r-1) = [uv]P(U)", 1 - profile.r as i64, pu.coefficient(1, 1)),
    ];
    Ok(HodgeReport {
        gr1,
        gr2,
        h21: gr1,
        h12: gr1,
        h22,
        h20: 0,
        h11: 0,
        h02: 0,
        b2,
        pure: gr1 == 0,
        p_curve: hodge_deligne_curve(profile),
        p_complement: pu,
        audits,
    })
}

/// `lower <= value <= upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub lower: i64,
    pub value: i64,
    pub upper: i64,
    pub holds: bool,
}

impl Bound {
    fn new(lower: i64, value: i64, upper: i64) -> Self {
        Bound {
            lower,
            value,
            upper,
            holds: lower <= value && value <= upper,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = |a: i64, b: i64| if a < b { "<" } else if a == b { "=" } else { ">" };
        write!(
            f,
            "{} {} {} {} {}",
            self.lower,
            rel(self.lower, self.value),
            self.value,
            rel(self.value, self.upper),
            self.upper
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    /// `0 <= dim M(f)_{2N-3} - tau <= sum g_j`.
    pub part_a: Bound,
    /// Upper bound of part A attained.
    pub f2_equals_p2: bool,
    /// `max(r-1+t-sum g_j, r-1) <= dim ER(f)_{N-2} <= r-1+t`.
    pub part_b: Bound,
    pub identities: Vec<Check>,
}

impl Theorem2Report {
    pub fn bounds_hold(&self) -> bool {
        self.part_a.holds && self.part_b.holds
    }

    pub fn identities_hold(&self) -> bool {
        self.identities.iter().all(|c| c.pass)
    }
}

/// Assembles the report from `dim M(f)_{2N-3}`, `tau` and `dim ER(f)_{N-2}`.
pub fn theorem2_from_values(m_2n3: usize, tau: usize, er: usize, profile: &SingularityProfile) -> Theorem2Report {
    let (m, tau, er) = (m_2n3 as i64, tau as i64, er as i64);
    let sum_g = profile.total_genus() as i64;
    let r = profile.r as i64;
    let t = profile.t as i64;
    let g = arithmetic_genus(profile.degree) as i64;
    let part_a = Bound::new(0, m - tau, sum_g);
    let part_b = Bound::new((r - 1 + t - sum_g).max(r - 1), er, r - 1 + t);
    let mut identities = vec![
        Check::new("tau = n + 4t", tau, profile.tau_expected() as i64),
        Check::new("dim ER_{N-2} = dim M_{2N-3} - g", er, m - g),
        Check::new("g + sum g_j - t = 2g - tau + r - 1", g + sum_g - t, 2 * g - tau + r - 1),
    ];
    if profile.is_nodal() {
        identities.push(Check::new("dim M_{2N-3} = n + sum g_j", m, profile.n as i64 + sum_g));
    }
    Theorem2Report {
        part_a,
        f2_equals_p2: m - tau == sum_g,
        part_b,
        identities,
    }
}

impl Jacobian {
    pub fn theorem2_report(
        &self,
        h: &HilbertFunction,
        profile: &SingularityProfile,
    ) -> Result<Theorem2Report, MilnorError> {
        let n = self.degree() as i64;
        let m = self.milnor_dim(2 * n - 3)?;
        let er = self.er_dim(n - 2)?;
        Ok(theorem2_from_values(m, h.tau, er, profile))
    }
}

pub fn theorem2_report(f: &Polynomial, profile: &SingularityProfile) -> Result<Theorem2Report, MilnorError> {
    let j = Jacobian::new(f)?;
    let h = j.hilbert_series(None)?;
    j.theorem2_report(&h, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{analyze_arrangement, Component};
    use crate::poly::parse_polynomial;

    fn arrangement(ls: &[&str]) -> SingularityProfile {
        let lines: Vec<Polynomial> = ls.iter().map(|s| parse_polynomial(s).unwrap()).collect();
        analyze_arrangement(&lines).unwrap()
    }

    #[test]
    fn four_lines_polynomials() {
        let p = arrangement(&["x", "y", "z", "x+y+z"]);
        assert_eq!(hodge_deligne_curve(&p).to_string(), "4uv - 2");
        assert_eq!(hodge_deligne_U(&p).to_string(), "u^2v^2 - 3uv + 3");
        let h = mixed_hodge_numbers(&p).unwrap();
        assert_eq!((h.gr1, h.gr2, h.b2), (0, 3, 3));
        assert!(h.pure && h.audits.iter().all(|c| c.pass));
    }

    #[test]
    fn smooth_cubic() {
        let p = SingularityProfile {
            degree: 3,
            r: 1,
            components: vec![Component { degree: 3, genus: 1, n: 0, t: 0 }],
            points: vec![],
            n: 0,
            t: 0,
            s: 0,
            t_prime: 0,
        };
        assert_eq!(hodge_deligne_curve(&p).to_string(), "uv - u - v + 1");
        assert_eq!(hodge_deligne_U(&p).to_string(), "u^2v^2 + u + v");
        let h = mixed_hodge_numbers(&p).unwrap();
        assert_eq!((h.gr1, h.h22, h.b2), (1, 0, 2));
        assert!(h.audits.iter().all(|c| c.pass));
    }

    #[test]
    fn negative_h22_is_rejected() {
        let mut p = arrangement(&["x", "y", "z", "x+y+z"]);
        p.t = 5;
        assert_eq!(mixed_hodge_numbers(&p), Err(HodgeError::NegativeH22(-2)));
    }

    #[test]
    fn bound_rendering() {
        assert_eq!(Bound::new(0, 2, 3).to_string(), "0 < 2 < 3");
        assert_eq!(Bound::new(8, 8, 11).to_string(), "8 = 8 < 11");
    }
}
