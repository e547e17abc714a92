//! The graded strands of the Koszul complex of `(f_x, f_y, f_z)` and their ranks.
//!
//! `Omega^m_k` is the space of homogeneous `m`-forms whose coefficients lie in
//! `S_{k-m}`, with dimension `binom(3, m) dim S_{k-m}`. Wedge with `df` maps
//! `Omega^m_k -> Omega^{m+1}_{k+N}`. Coefficient vectors are laid out
//! block by block (`dx, dy, dz` for 1-forms, `dy^dz, dz^dx, dx^dy` for
//! 2-forms), each block in the monomial order of [`monomial_basis`].
//!
//! Over `Q` every rank is certified rather than eliminated in full. A rank
//! modulo a large prime is a lower bound for the rational rank, and a set of
//! explicit rational kernel vectors gives an upper bound:
//!
//! * `d0` is injective whenever `f != 0`, so the bound is the column count;
//! * `ker d1` contains `g df` for all `g` of the right degree, i.e. `im d0`;
//! * `ker d2` contains `im d1` (the trivial syzygies) and the products of the
//!   essential syzygies one degree lower with `x, y, z`.
//!
//! When the two bounds meet the rank is exact. Otherwise the degree is settled
//! by fraction-free elimination, and for `d2` the kernel vectors found there
//! seed the next degree. Exact elimination is therefore only paid in degrees
//! where new syzygy generators appear.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactla::{self, residues, ExactMatrix, Field, LinalgError, ModularEchelon};
use crate::milnor::MilnorError;
use crate::poly::{dim_s, monomial_basis, Monomial, Polynomial, Var};

/// Prime used for the modular half of the rank certificates over `Q`.
pub const CERTIFICATE_PRIME: u64 = 2_147_483_647;

/// A sparse integer vector.
pub type SparseVec = Vec<(usize, BigInt)>;

#[derive(Debug, Default, Clone)]
struct Strands {
    d0: BTreeMap<i64, usize>,
    d1: BTreeMap<i64, usize>,
    d2: BTreeMap<i64, usize>,
    /// Representatives of `ker d2 / im d1` on `Omega^2_k`, keyed by `k`.
    essential: BTreeMap<i64, Vec<SparseVec>>,
    /// `(m, k)` pairs that needed full elimination.
    eliminated: BTreeSet<(u8, i64)>,
}

/// A homogeneous polynomial with its gradient and the ranks computed so far.
#[derive(Debug)]
pub struct Jacobian {
    f: Polynomial,
    degree: u32,
    grad: [Polynomial; 3],
    field: Field,
    strands: Mutex<Strands>,
}

impl Clone for Jacobian {
    fn clone(&self) -> Self {
        Jacobian {
            f: self.f.clone(),
            degree: self.degree,
            grad: self.grad.clone(),
            field: self.field.clone(),
            strands: Mutex::new(self.strands.lock().unwrap().clone()),
        }
    }
}

impl Jacobian {
    pub fn new(f: &Polynomial) -> Result<Self, MilnorError> {
        Self::with_field(f, Field::Rational)
    }

    pub fn with_field(f: &Polynomial, field: Field) -> Result<Self, MilnorError> {
        let degree = match f.homogeneous_degree() {
            Some(d) if !f.is_zero() => d,
            _ => return Err(MilnorError::NotHomogeneous),
        };
        if let Field::Modular(primes) = &field {
            exactla::validate_primes(primes)?;
        }
        Ok(Jacobian {
            f: f.clone(),
            degree,
            grad: f.gradient(),
            field,
            strands: Mutex::new(Strands::default()),
        })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn gradient(&self) -> &[Polynomial; 3] {
        &self.grad
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn n(&self) -> i64 {
        self.degree as i64
    }

    /// `dim Omega^m_k`.
    pub fn form_dim(m: u8, k: i64) -> usize {
        [1, 3, 3, 1][m as usize] * dim_s(k - m as i64)
    }

    /// Matrix of `df ^ - : Omega^m_k -> Omega^{m+1}_{k+N}` for `m = 0, 1, 2`.
    pub fn wedge_matrix(&self, m: u8, k: i64) -> ExactMatrix {
        assert!(m <= 2, "no wedge map out of 3-forms");
        let tgt_deg = k + self.n() - m as i64 - 1;
        let tgt_block = dim_s(tgt_deg);
        let mut mat = ExactMatrix::new(Self::form_dim(m + 1, k + self.n()));
        let g = &self.grad;
        // (target block, gradient component, sign) for each source block
        let pattern: Vec<Vec<(usize, usize, bool)>> = match m {
            0 => vec![vec![(0, 0, false), (1, 1, false), (2, 2, false)]],
            // df ^ (a dx + b dy + c dz) = grad f x (a, b, c)
            1 => vec![
                vec![(1, 2, false), (2, 1, true)],
                vec![(0, 2, true), (2, 0, false)],
                vec![(0, 1, false), (1, 0, true)],
            ],
            _ => vec![vec![(0, 0, false)], vec![(0, 1, false)], vec![(0, 2, false)]],
        };
        for blocks in &pattern {
            for mono in monomial_basis(k - m as i64) {
                let mut col = Vec::new();
                for &(tb, comp, neg) in blocks {
                    for (t, c) in g[comp].terms() {
                        let idx = tb * tgt_block + t.mul(&mono).basis_index();
                        col.push((idx, if neg { -c.clone() } else { c.clone() }));
                    }
                }
                mat.push_column(col);
            }
        }
        mat
    }

    /// Rank of `df ^ - ` on `Omega^m_k`.
    pub fn wedge_rank(&self, m: u8, k: i64) -> Result<usize, LinalgError> {
        let mut st = self.strands.lock().unwrap();
        self.rank_in(&mut st, m, k)
    }

    /// Rank of the Jacobian map `S_{k-N+1}^3 -> S_k`, which is `d2` on `Omega^2_{k-N+3}`.
    pub fn jacobian_rank(&self, k: i64) -> Result<usize, LinalgError> {
        self.wedge_rank(2, k - self.n() + 3)
    }

    /// The Jacobian map into degree `k`; columns are `m f_x`, then `m f_y`, then `m f_z`.
    pub fn jacobian_matrix(&self, k: i64) -> ExactMatrix {
        self.wedge_matrix(2, k - self.n() + 3)
    }

    /// Representatives of the essential syzygies `(a, b, c)` of degree `m`,
    /// as coefficient vectors on `Omega^2_{m+2}`, chosen to be linearly
    /// independent modulo the trivial ones.
    pub fn essential_syzygies(&self, m: i64) -> Result<Vec<SparseVec>, LinalgError> {
        if self.field != Field::Rational {
            return Jacobian::new(&self.f)
                .expect("already validated")
                .essential_syzygies(m);
        }
        let mut st = self.strands.lock().unwrap();
        self.rank_in(&mut st, 2, m + 2)?;
        Ok(st.essential.get(&(m + 2)).cloned().unwrap_or_default())
    }

    /// Degrees `(m, k)` whose rank needed full elimination.
    pub fn eliminated_degrees(&self) -> Vec<(u8, i64)> {
        self.strands.lock().unwrap().eliminated.iter().copied().collect()
    }

    fn rank_in(&self, st: &mut Strands, m: u8, k: i64) -> Result<usize, LinalgError> {
        if k - (m as i64) < 0 {
            return Ok(0);
        }
        let cached = match m {
            0 => st.d0.get(&k),
            1 => st.d1.get(&k),
            _ => st.d2.get(&k),
        };
        if let Some(&r) = cached {
            return Ok(r);
        }
        let r = match (&self.field, m) {
            (Field::Modular(_), _) => self.field.rank(&self.wedge_matrix(m, k))?,
            (Field::Rational, 0) => {
                let a = self.wedge_matrix(0, k);
                self.certified(st, 0, k, &a, a.cols())
            }
            (Field::Rational, 1) => {
                let a = self.wedge_matrix(1, k);
                let upper = a.cols() - self.rank_in(st, 0, k - self.n())?;
                self.certified(st, 1, k, &a, upper)
            }
            (Field::Rational, _) => {
                let first = st.d2.keys().next_back().map_or(2, |&j| j + 1);
                for j in first..k {
                    self.syzygy_step(st, j)?;
                }
                self.syzygy_step(st, k)?
            }
        };
        match m {
            0 => st.d0.insert(k, r),
            1 => st.d1.insert(k, r),
            _ => st.d2.insert(k, r),
        };
        Ok(r)
    }

    fn certified(&self, st: &mut Strands, m: u8, k: i64, a: &ExactMatrix, upper: usize) -> usize {
        let lower = exactla::rank_mod_p(a, CERTIFICATE_PRIME);
        if lower == upper {
            return lower;
        }
        st.eliminated.insert((m, k));
        exactla::rank(a)
    }

    /// Certifies the rank of `d2` on `Omega^2_k` and records the essential
    /// syzygies there; assumes every lower degree is done.
    fn syzygy_step(&self, st: &mut Strands, k: i64) -> Result<usize, LinalgError> {
        let m = k - 2;
        if m < 0 {
            st.d2.insert(k, 0);
            return Ok(0);
        }
        let a = self.wedge_matrix(2, k);
        let cols = a.cols();
        let p = CERTIFICATE_PRIME;
        let lower = exactla::rank_mod_p(&a, p);
        let mut span = ModularEchelon::new(cols, p);
        for col in self.wedge_matrix(1, k - self.n()).integer_columns() {
            span.insert(&residues(&col, p));
        }
        let mut essential = Vec::new();
        let prev = st.essential.get(&(k - 1)).map(Vec::as_slice).unwrap_or(&[]);
        let shifts = shift_tables(m - 1);
        for s in prev {
            for table in &shifts {
                let v: SparseVec = s.iter().map(|(i, c)| (table[*i], c.clone())).collect();
                if span.insert(&residues(&v, p)) {
                    essential.push(v);
                }
            }
        }
        let r = if lower + span.rank() == cols {
            lower
        } else {
            st.eliminated.insert((2, k));
            let kernel = exactla::kernel_basis(&a);
            for dense in &kernel {
                let v: SparseVec = dense
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect();
                if span.insert(&residues(&v, p)) {
                    essential.push(v);
                }
            }
            cols - kernel.len()
        };
        st.essential.insert(k, essential);
        st.d2.insert(k, r);
        Ok(r)
    }
}

/// For each variable, the index map `Omega^2_{d+2} -> Omega^2_{d+3}` induced
/// by multiplying coefficients with that variable.
fn shift_tables(d: i64) -> Vec<Vec<usize>> {
    let basis = monomial_basis(d);
    let (from, to) = (basis.len(), dim_s(d + 1));
    Var::ALL
        .iter()
        .map(|&v| {
            let x = Monomial::var(v);
            (0..3 * from)
                .map(|i| (i / from) * to + basis[i % from].mul(&x).basis_index())
                .collect()
        })
        .collect()
}

/// Splits a coefficient vector on `Omega^m_k` into its component polynomials.
pub fn form_components(m: u8, k: i64, v: &[(usize, BigInt)]) -> Vec<Polynomial> {
    let basis = monomial_basis(k - m as i64);
    let blocks = [1, 3, 3, 1][m as usize];
    let mut out = vec![Polynomial::zero(); blocks];
    for (i, c) in v {
        out[i / basis.len()].add_term(basis[i % basis.len()], c.clone().into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn jac(s: &str) -> Jacobian {
        Jacobian::new(&parse_polynomial(s).unwrap()).unwrap()
    }

    #[test]
    fn complex_property() {
        let j = jac("xyz(x+y+z)");
        for k in 0..9 {
            for m in 0..2u8 {
                let a = j.wedge_matrix(m, k);
                let b = j.wedge_matrix(m + 1, k + 4);
                assert_eq!(b.rows(), Jacobian::form_dim(m + 2, k + 8));
                assert_eq!(a.rows(), b.cols());
                // b * a = 0
                for c in 0..a.cols() {
                    let mut acc = vec![num_rational::BigRational::zero(); b.rows()];
                    for (i, v) in a.column(c) {
                        for (r, w) in b.column(*i) {
                            acc[*r] += v * w;
                        }
                    }
                    assert!(acc.iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn certified_ranks_match_elimination() {
        for s in ["xyz(x+y+z)", "x(x^3+y^3+z^3)", "xy^2+z^3", "xyz(x-y)(y-z)"] {
            let j = jac(s);
            for k in 0..14 {
                for m in 0..3u8 {
                    let direct = exactla::rank(&j.wedge_matrix(m, k));
                    assert_eq!(j.wedge_rank(m, k).unwrap(), direct, "{s} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn essential_syzygies_are_syzygies() {
        let j = jac("xyz(x+y+z)");
        let syz = j.essential_syzygies(2).unwrap();
        assert_eq!(syz.len(), 3);
        for v in &syz {
            let [a, b, c] = <[Polynomial; 3]>::try_from(form_components(2, 4, v)).unwrap();
            let g = j.gradient();
            assert!((&(&a * &g[0]) + &(&(&b * &g[1]) + &(&c * &g[2]))).is_zero());
        }
        assert!(j.essential_syzygies(1).unwrap().is_empty());
    }
}
