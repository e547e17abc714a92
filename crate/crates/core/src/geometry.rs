//! Singularity census for curves with nodes and ordinary triple points.
//!
//! Line arrangements are analyzed exactly. Any other component needs a
//! declared profile, which is then audited against `tau = n + 4t`, the genus
//! formula and Bezout.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Curve, Monomial, Polynomial};

/// A point of `P^2` with coprime integer coordinates, first nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint([BigInt; 3]);

impl ProjectivePoint {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn new(v: [BigInt; 3]) -> Option<Self> {
        let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return None;
        }
        let lead_neg = v.iter().find(|x| !x.is_zero()).unwrap().is_negative();
        let g = if lead_neg { -g } else { g };
        Some(ProjectivePoint(v.map(|x| x / &g)))
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{}:{})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // coordinates are small in practice but kept exact as strings when large
        let fits: Option<Vec<i64>> = self.0.iter().map(|x| x.try_into().ok()).collect();
        match fits {
            Some(v) => v.serialize(s),
            None => self.0.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularityType {
    A1,
    D4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub location: ProjectivePoint,
    pub multiplicity: u32,
    #[serde(rename = "type")]
    pub kind: SingularityType,
    pub components: Vec<usize>,
}

/// Degree, genus and interior singularity counts of one irreducible component.
///
/// `n` counts every node of the component itself, including nodes through
/// which a second component passes to form a triple point of the curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub degree: u32,
    pub genus: u32,
    #[serde(default)]
    pub n: u32,
    #[serde(default)]
    pub t: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityProfile {
    pub degree: u32,
    pub r: usize,
    pub components: Vec<Component>,
    /// Explicit points, when they were computed.
    pub points: Vec<SingularPoint>,
    pub n: u32,
    pub t: u32,
    /// Triple points lying on exactly two components.
    pub s: u32,
    /// Triple points lying on three components.
    pub t_prime: u32,
}

impl SingularityProfile {
    pub fn total_genus(&self) -> u32 {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn tau_expected(&self) -> u32 {
        self.n + 4 * self.t
    }

    pub fn is_nodal(&self) -> bool {
        self.t == 0
    }

    /// `sum_{i<j} N_i N_j`.
    pub fn degree_pairs(&self) -> u64 {
        let d: Vec<u64> = self.components.iter().map(|c| c.degree as u64).collect();
        let total: u64 = d.iter().sum();
        (total * total - d.iter().map(|x| x * x).sum::<u64>()) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("factor {0} is not a line")]
    NotALine(usize),
    #[error("need at least two lines")]
    TooFewLines,
    #[error("lines {0} and {1} coincide")]
    DuplicateLines(usize, usize),
    #[error("point {point} has multiplicity {multiplicity}: singularity outside A1/D4 scope")]
    HighMultiplicity { point: String, multiplicity: usize },
    #[error("curve has non-linear factors; a singularity profile must be declared")]
    ProfileRequired,
    #[error("genus of component {index} would be negative: {detail}")]
    NegativeGenus { index: usize, detail: String },
    #[error("declared profile: {0}")]
    Declared(String),
}

/// `(N-1)(N-2)/2 - n - 3t`, the geometric genus of an irreducible curve of
/// degree `N` with `n` nodes and `t` ordinary triple points.
pub fn genus_from_counts(degree: u32, n: u32, t: u32) -> Result<u32, GeometryError> {
    let pa = arithmetic_genus(degree);
    let g = pa as i64 - n as i64 - 3 * t as i64;
    u32::try_from(g).map_err(|_| GeometryError::NegativeGenus {
        index: 0,
        detail: format!("({degree}-1)({degree}-2)/2 - {n} - 3*{t} = {g}"),
    })
}

pub fn arithmetic_genus(degree: u32) -> u32 {
    if degree == 0 {
        return 0;
    }
    (degree - 1) * (degree.max(2) - 2) / 2
}

/// Primitive integer coefficients `(a, b, c)` of `ax + by + cz`.
fn line_coefficients(p: &Polynomial) -> Option<[BigInt; 3]> {
    if p.homogeneous_degree() != Some(1) {
        return None;
    }
    let c = [
        p.coefficient(&Monomial::new(1, 0, 0)),
        p.coefficient(&Monomial::new(0, 1, 0)),
        p.coefficient(&Monomial::new(0, 0, 1)),
    ];
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = c.map(|x| x.numer() * (&den / x.denom()));
    ProjectivePoint::new(ints).map(|pp| pp.0)
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// All intersection points of a line arrangement, each with the set of lines
/// through it. Lines are compared up to scaling.
pub fn line_incidences(lines: &[Polynomial]) -> Result<BTreeMap<ProjectivePoint, BTreeSet<usize>>, GeometryError> {
    let coeffs = lines
        .iter()
        .enumerate()
        .map(|(i, l)| line_coefficients(l).ok_or(GeometryError::NotALine(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut points: BTreeMap<ProjectivePoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..coeffs.len() {
        for j in i + 1..coeffs.len() {
            let p = ProjectivePoint::new(cross(&coeffs[i], &coeffs[j]))
                .ok_or(GeometryError::DuplicateLines(i, j))?;
            let on = points.entry(p).or_default();
            on.insert(i);
            on.insert(j);
        }
    }
    Ok(points)
}

/// Exact census of a line arrangement with only double and triple points.
pub fn analyze_arrangement(lines: &[Polynomial]) -> Result<SingularityProfile, GeometryError> {
    if lines.len() < 2 {
        return Err(GeometryError::TooFewLines);
    }
    let incidences = line_incidences(lines)?;
    let mut points = Vec::with_capacity(incidences.len());
    let (mut n, mut t) = (0, 0);
    for (location, on) in incidences {
        let kind = match on.len() {
            2 => {
                n += 1;
                SingularityType::A1
            }
            3 => {
                t += 1;
                SingularityType::D4
            }
            m => {
                return Err(GeometryError::HighMultiplicity {
                    point: location.to_string(),
                    multiplicity: m,
                })
            }
        };
        points.push(SingularPoint {
            multiplicity: on.len() as u32,
            location,
            kind,
            components: on.into_iter().collect(),
        });
    }
    let r = lines.len();
    Ok(SingularityProfile {
        degree: r as u32,
        r,
        components: vec![
            Component {
                degree: 1,
                genus: 0,
                n: 0,
                t: 0
            };
            r
        ],
        points,
        n,
        t,
        s: 0,
        t_prime: t,
    })
}

/// A singularity profile as written in a curve file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredProfile {
    pub n: u32,
    pub t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Component>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_prime: Option<u32>,
}

/// Builds the profile of `curve` from a declaration, or from the arrangement
/// analysis when every factor is a line and nothing is declared.
///
/// Without declared components every factor is one component with no interior
/// singularities and the factor's genus (or its arithmetic genus). Without
/// `s` and `t_prime`, every triple point not interior to a component is taken
/// to lie on three components.
pub fn curve_profile(curve: &Curve, declared: Option<&DeclaredProfile>) -> Result<SingularityProfile, GeometryError> {
    let Some(d) = declared else {
        if !curve.all_lines() {
            return Err(GeometryError::ProfileRequired);
        }
        let lines: Vec<Polynomial> = curve.factors.iter().map(|c| c.poly.clone()).collect();
        return analyze_arrangement(&lines);
    };
    let components = match &d.components {
        Some(c) => c.clone(),
        None => curve
            .factors
            .iter()
            .map(|c| Component {
                degree: c.degree,
                genus: c.genus.unwrap_or_else(|| arithmetic_genus(c.degree)),
                n: 0,
                t: 0,
            })
            .collect(),
    };
    let interior: u32 = components.iter().map(|c| c.t).sum();
    let s = d.s.unwrap_or(0);
    let t_prime = match d.t_prime {
        Some(tp) => tp,
        None => d
            .t
            .checked_sub(interior + s)
            .ok_or_else(|| GeometryError::Declared(format!("t = {} is below sum t_j + s = {}", d.t, interior + s)))?,
    };
    let points = if curve.all_lines() && d.components.is_none() {
        let lines: Vec<Polynomial> = curve.factors.iter().map(|c| c.poly.clone()).collect();
        analyze_arrangement(&lines).map(|p| p.points).unwrap_or_default()
    } else {
        Vec::new()
    };
    Ok(SingularityProfile {
        degree: curve.degree(),
        r: components.len(),
        components,
        points,
        n: d.n,
        t: d.t,
        s,
        t_prime,
    })
}

/// One audited equality, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
            pass: lhs == rhs,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.pass { "=" } else { "!=" };
        write!(f, "{}: {} {rel} {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn tau_check(&self) -> &Check {
        &self.checks[0]
    }
}

/// Audits a profile against the computed total Tjurina number `tau`.
pub fn validate_profile(tau: usize, profile: &SingularityProfile) -> ValidationReport {
    let mut checks = vec![
        Check::new("tau = n + 4t", tau as i64, profile.tau_expected() as i64),
        Check::new(
            "N = sum N_j",
            profile.degree as i64,
            profile.components.iter().map(|c| c.degree as i64).sum(),
        ),
    ];
    for (j, c) in profile.components.iter().enumerate() {
        checks.push(Check::new(
            format!("g_{j} + n_{j} + 3t_{j} = p_a(C_{j})"),
            (c.genus + c.n + 3 * c.t) as i64,
            arithmetic_genus(c.degree) as i64,
        ));
    }
    let sum_n: i64 = profile.components.iter().map(|c| c.n as i64).sum();
    let sum_t: i64 = profile.components.iter().map(|c| c.t as i64).sum();
    checks.push(Check::new(
        "t = sum t_j + s + t'",
        profile.t as i64,
        sum_t + (profile.s + profile.t_prime) as i64,
    ));
    checks.push(Check::new(
        "sum N_i N_j = n - sum n_j + 3(t - sum t_j)",
        profile.degree_pairs() as i64,
        profile.n as i64 - sum_n + 3 * (profile.t as i64 - sum_t),
    ));
    if !profile.points.is_empty() {
        let pairs: i64 = profile
            .points
            .iter()
            .map(|p| (p.multiplicity * (p.multiplicity - 1) / 2) as i64)
            .sum();
        let r = profile.r as i64;
        checks.push(Check::new("sum m_P(m_P-1)/2 = r(r-1)/2", pairs, r * (r - 1) / 2));
    }
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{build_curve, parse_polynomial, CurveSpec};

    fn lines(ls: &[&str]) -> Vec<Polynomial> {
        ls.iter().map(|s| parse_polynomial(s).unwrap()).collect()
    }

    #[test]
    fn canonical_points() {
        let p = ProjectivePoint::new([(-2).into(), 4.into(), 0.into()]).unwrap();
        assert_eq!(p.to_string(), "(1:-2:0)");
        let q = ProjectivePoint::new([0.into(), (-3).into(), 6.into()]).unwrap();
        assert_eq!(q.to_string(), "(0:1:-2)");
        assert!(ProjectivePoint::new([0.into(), 0.into(), 0.into()]).is_none());
    }

    #[test]
    fn generic_four_lines() {
        let p = analyze_arrangement(&lines(&["x", "y", "z", "x+y+z"])).unwrap();
        assert_eq!((p.n, p.t, p.r), (6, 0, 4));
        assert!(validate_profile(6, &p).all_pass());
        let bad = SingularityProfile { n: 5, ..p };
        let report = validate_profile(6, &bad);
        assert!(!report.tau_check().pass);
        assert_eq!((report.tau_check().lhs, report.tau_check().rhs), (6, 5));
    }

    #[test]
    fn six_lines() {
        let p = analyze_arrangement(&lines(&["x-y", "x+y", "y-z", "y+z", "x-z", "x+z"])).unwrap();
        assert_eq!((p.n, p.t), (3, 4));
        assert!(validate_profile(19, &p).all_pass());
    }

    #[test]
    fn rejections() {
        assert_eq!(
            analyze_arrangement(&lines(&["x", "2x", "y"])),
            Err(GeometryError::DuplicateLines(0, 1))
        );
        assert!(matches!(
            analyze_arrangement(&lines(&["x", "y", "x+y", "x-y"])),
            Err(GeometryError::HighMultiplicity { multiplicity: 4, .. })
        ));
        assert_eq!(analyze_arrangement(&lines(&["x", "y^2"])), Err(GeometryError::NotALine(1)));
    }

    #[test]
    fn genera() {
        assert_eq!(genus_from_counts(1, 0, 0), Ok(0));
        assert_eq!(genus_from_counts(3, 0, 0), Ok(1));
        assert_eq!(genus_from_counts(5, 0, 1), Ok(3));
        assert!(genus_from_counts(3, 2, 0).is_err());
    }

    #[test]
    fn triangle_and_cubic_declared() {
        let spec = CurveSpec::new(["x", "y", "z", "x^2y+x^2z+y^2x+y^2z+z^2x+z^2y"]);
        let curve = build_curve(&spec).unwrap();
        assert_eq!(curve_profile(&curve, None), Err(GeometryError::ProfileRequired));
        let d = DeclaredProfile {
            n: 3,
            t: 3,
            components: None,
            s: None,
            t_prime: None,
        };
        let p = curve_profile(&curve, Some(&d)).unwrap();
        assert_eq!((p.total_genus(), p.t_prime, p.s), (1, 3, 0));
        assert!(validate_profile(15, &p).all_pass());
    }
}
