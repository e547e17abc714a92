use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{parse_polynomial, ParseError, Polynomial};

/// One irreducible factor as supplied by the user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    #[serde(rename = "poly")]
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

impl FactorSpec {
    pub fn new(text: impl Into<String>) -> Self {
        FactorSpec {
            text: text.into(),
            genus: None,
        }
    }

    pub fn with_genus(text: impl Into<String>, genus: u32) -> Self {
        FactorSpec {
            text: text.into(),
            genus: Some(genus),
        }
    }
}

/// The factor list defining `C: f = 0`, with `f` their product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub factors: Vec<FactorSpec>,
}

impl CurveSpec {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(factors: I) -> Self {
        CurveSpec {
            factors: factors.into_iter().map(FactorSpec::new).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub text: String,
    pub poly: Polynomial,
    pub degree: u32,
    pub genus: Option<u32>,
}

impl Factor {
    pub fn is_line(&self) -> bool {
        self.degree == 1
    }
}

/// An expanded curve equation together with its factor metadata.
#[derive(Clone, Debug)]
pub struct Curve {
    pub f: Polynomial,
    pub factors: Vec<Factor>,
}

impl Curve {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|c| c.degree).sum()
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn lines(&self) -> impl Iterator<Item = (usize, &Factor)> {
        self.factors.iter().enumerate().filter(|(_, c)| c.is_line())
    }

    pub fn all_lines(&self) -> bool {
        self.factors.iter().all(Factor::is_line)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("no factors given")]
    Empty,
    #[error("factor {index}: {source}")]
    Parse {
        index: usize,
        #[source]
        source: ParseError,
    },
    #[error("factor {index} is not homogeneous of positive degree")]
    Inhomogeneous { index: usize },
    #[error("factors {first} and {second} are proportional")]
    Proportional { first: usize, second: usize },
}

/// Parses every factor, checks homogeneity and distinctness, and expands the product.
pub fn build_curve(spec: &CurveSpec) -> Result<Curve, CurveError> {
    if spec.factors.is_empty() {
        return Err(CurveError::Empty);
    }
    let mut factors: Vec<Factor> = Vec::with_capacity(spec.factors.len());
    for (index, fs) in spec.factors.iter().enumerate() {
        let poly = parse_polynomial(&fs.text).map_err(|source| CurveError::Parse { index, source })?;
        let degree = match poly.homogeneous_degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(CurveError::Inhomogeneous { index }),
        };
        if let Some(first) = factors.iter().position(|g| g.poly.is_proportional_to(&poly)) {
            return Err(CurveError::Proportional {
                first,
                second: index,
            });
        }
        factors.push(Factor {
            text: fs.text.clone(),
            poly,
            degree,
            genus: fs.genus,
        });
    }
    let f = factors
        .iter()
        .fold(Polynomial::one(), |acc, c| &acc * &c.poly);
    Ok(Curve { f, factors })
}
