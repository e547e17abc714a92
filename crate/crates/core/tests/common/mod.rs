#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use plane_curves::cli::{build_report, CurveSpecFile, Report, RunOptions};
use plane_curves::exactla::is_prime;
use plane_curves::geometry::analyze_arrangement;
use plane_curves::poly::{parse_polynomial, FactorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixture_dir().join(format!("{name}.curve"))
}

pub fn load(name: &str) -> CurveSpecFile {
    CurveSpecFile::load(&fixture(name)).unwrap()
}

pub struct Case {
    pub spec: CurveSpecFile,
    pub report: Report,
}

/// Every fixture that produces a report, in rational arithmetic. Fixtures
/// that only switch the field are left out.
pub fn corpus() -> &'static [Case] {
    static CORPUS: OnceLock<Vec<Case>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut paths: Vec<_> = std::fs::read_dir(fixture_dir())
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|x| x == "curve"))
            .collect();
        paths.sort();
        paths
            .into_iter()
            .filter(|p| !p.to_string_lossy().ends_with("_modp.curve"))
            .filter_map(|p| {
                let mut spec = CurveSpecFile::load(&p).unwrap();
                spec.options = None;
                let report = build_report(&spec, &RunOptions::json()).ok()?;
                Some(Case { spec, report })
            })
            .collect()
    })
}

pub fn case(name: &str) -> &'static Case {
    corpus()
        .iter()
        .find(|c| c.spec.name == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
}

fn line_text([a, b, c]: [i64; 3]) -> String {
    let mut s = String::new();
    for (coef, v) in [(a, 'x'), (b, 'y'), (c, 'z')] {
        if coef == 0 {
            continue;
        }
        if !s.is_empty() || coef < 0 {
            s.push(if coef < 0 { '-' } else { '+' });
        }
        if coef.abs() != 1 {
            s.push_str(&coef.abs().to_string());
        }
        s.push(v);
    }
    s
}

/// Seeded arrangements of 3..=7 distinct lines with only double and triple points.
pub fn random_arrangements(count: usize, seed: u64) -> Vec<CurveSpecFile> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let r = rng.gen_range(3..=7);
        let texts: Vec<String> = (0..r)
            .map(|_| loop {
                let v = [0; 3].map(|_| rng.gen_range(-3i64..=3));
                if v != [0, 0, 0] {
                    break line_text(v);
                }
            })
            .collect();
        let lines: Vec<_> = texts.iter().map(|t| parse_polynomial(t).unwrap()).collect();
        if analyze_arrangement(&lines).is_err() {
            continue;
        }
        out.push(CurveSpecFile {
            name: format!("random{}", out.len()),
            factors: texts.into_iter().map(FactorSpec::new).collect(),
            profile: None,
            options: None,
        });
    }
    out
}

pub fn random_arrangement_reports() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        random_arrangements(50, 0x5eed)
            .into_iter()
            .map(|spec| {
                let report = build_report(&spec, &RunOptions::json())
                    .unwrap_or_else(|e| panic!("{:?}: {e}", spec.factors));
                Case { spec, report }
            })
            .collect()
    })
}

/// Three distinct random primes in `[2^29, 2^30)`.
pub fn random_primes(seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut primes = Vec::new();
    while primes.len() < 3 {
        let mut p = rng.gen_range(1u64 << 29..1 << 30) | 1;
        while !is_prime(p) {
            p += 2;
        }
        if p < 1 << 30 && !primes.contains(&p) {
            primes.push(p);
        }
    }
    primes
}
