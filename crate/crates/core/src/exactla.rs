//! Exact rank and kernel computations.
//!
//! Every graded map in this crate (multiplication by the gradient, wedge with
//! `df`) is assembled as an [`ExactMatrix`] whose columns are the images of
//! monomial basis vectors. Ranks over `Q` use fraction-free integer
//! elimination on primitive columns; ranks modulo a prime use plain
//! elimination in `Z/p`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// A sparse column-major matrix with rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, BigRational)>>,
}

impl ExactMatrix {
    pub fn new(rows: usize) -> Self {
        ExactMatrix {
            rows,
            cols: Vec::new(),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::new(n);
        for i in 0..n {
            m.push_column(vec![(i, BigRational::one())]);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.cols[j].push((i, BigRational::from_integer(v.into())));
                }
            }
        }
        m
    }

    /// Appends a column given as `(row, value)` pairs; duplicates are summed.
    pub fn push_column(&mut self, entries: Vec<(usize, BigRational)>) {
        let mut entries = entries;
        entries.sort_by_key(|e| e.0);
        let mut col: Vec<(usize, BigRational)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            assert!(i < self.rows, "row index {i} out of range");
            match col.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => col.push((i, v)),
            }
        }
        col.retain(|(_, v)| !v.is_zero());
        self.cols.push(col);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigRational)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> BigRational {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map_or_else(BigRational::zero, |(_, v)| v.clone())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                t.cols[*i].push((j, v.clone()));
            }
        }
        t
    }

    pub fn scale_column(&mut self, j: usize, c: &BigRational) {
        assert!(!c.is_zero());
        for (_, v) in &mut self.cols[j] {
            *v *= c;
        }
    }

    pub fn permute_rows(&self, perm: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::new(self.rows);
        for col in &self.cols {
            m.push_column(col.iter().map(|(i, v)| (perm[*i], v.clone())).collect());
        }
        m
    }

    pub fn permute_cols(&self, perm: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::new(self.rows);
        for &j in perm {
            m.cols.push(self.cols[j].clone());
        }
        m
    }

    /// Columns scaled to primitive integer vectors.
    pub(crate) fn integer_columns(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.cols.iter().map(|c| primitive_column(c)).collect()
    }

    /// Euclidean column norms of the primitive integer columns, as `log2` upper bounds.
    fn log2_column_norms(&self) -> Vec<f64> {
        self.integer_columns()
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let sq: BigInt = c.iter().map(|(_, v)| v * v).sum();
                0.5 * (sq.bits() as f64)
            })
            .collect()
    }
}

fn primitive_column(col: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
    if col.is_empty() {
        return Vec::new();
    }
    let den = col
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut ints: Vec<(usize, BigInt)> = col
        .iter()
        .map(|(i, v)| (*i, v.numer() * (&den / v.denom())))
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_one() {
        for (_, v) in &mut ints {
            *v /= &g;
        }
    }
    ints
}

/// Incremental column echelon form over `Z` built by fraction-free elimination.
///
/// Each stored pivot vector is primitive and keyed by its first nonzero row.
#[derive(Debug)]
pub struct IntegerEchelon {
    rows: usize,
    lead_limit: usize,
    pivots: Vec<Option<Vec<(usize, BigInt)>>>,
    rank: usize,
}

impl IntegerEchelon {
    pub fn new(rows: usize) -> Self {
        IntegerEchelon {
            rows,
            lead_limit: rows,
            pivots: vec![None; rows],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `col` against the stored pivots; keeps it as a new pivot when
    /// it does not reduce to zero. Returns whether the rank grew.
    pub fn insert(&mut self, col: &[(usize, BigInt)]) -> bool {
        if col.is_empty() || self.rank == self.lead_limit {
            return false;
        }
        let mut dense: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        for (i, v) in col {
            dense[*i] = v.clone();
        }
        self.reduce(&mut dense, col[0].0)
    }

    /// Fraction-free reduction of a dense vector; pivots are only sought in
    /// rows below `lead_limit`, the remaining rows are carried along.
    fn reduce(&mut self, dense: &mut [BigInt], mut start: usize) -> bool {
        let mut steps = 0usize;
        loop {
            let Some(lead) = (start..self.lead_limit).find(|&i| !dense[i].is_zero()) else {
                return false;
            };
            let Some(pivot) = &self.pivots[lead] else {
                let mut stored: Vec<(usize, BigInt)> = dense
                    .iter_mut()
                    .enumerate()
                    .skip(lead)
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, std::mem::take(v)))
                    .collect();
                make_primitive(&mut stored);
                self.pivots[lead] = Some(stored);
                self.rank += 1;
                return true;
            };
            let pl = &pivot[0].1;
            let g = dense[lead].gcd(pl);
            let a = pl / &g;
            let b = &dense[lead] / &g;
            if !a.is_one() {
                for v in &mut dense[lead + 1..] {
                    if !v.is_zero() {
                        *v *= &a;
                    }
                }
            }
            dense[lead] = BigInt::zero();
            for (j, pj) in &pivot[1..] {
                dense[*j] -= &b * pj;
            }
            start = lead + 1;
            steps += 1;
            if steps.is_multiple_of(16) {
                divide_content(&mut dense[start..]);
            }
        }
    }
}

fn make_primitive(v: &mut [(usize, BigInt)]) {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    let flip = v.first().is_some_and(|(_, x)| x.is_negative());
    if g.is_one() && !flip {
        return;
    }
    let g = if flip { -g } else { g };
    for (_, x) in v.iter_mut() {
        *x /= &g;
    }
}

fn divide_content(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x /= &g;
        }
    }
}

/// Incremental column echelon form over `Z/p`.
#[derive(Debug)]
pub struct ModularEchelon {
    p: u64,
    rows: usize,
    pivots: Vec<Option<Vec<(usize, u64)>>>,
    rank: usize,
}

impl ModularEchelon {
    pub fn new(rows: usize, p: u64) -> Self {
        ModularEchelon {
            p,
            rows,
            pivots: vec![None; rows],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn insert(&mut self, col: &[(usize, u64)]) -> bool {
        if self.rank == self.rows {
            return false;
        }
        let p = self.p;
        let mut dense = vec![0u64; self.rows];
        let mut start = self.rows;
        for &(i, v) in col {
            dense[i] = v % p;
            start = start.min(i);
        }
        loop {
            let Some(lead) = (start..self.rows).find(|&i| dense[i] != 0) else {
                return false;
            };
            let Some(pivot) = &self.pivots[lead] else {
                // normalise lead to 1
                let inv = inv_mod(dense[lead], p);
                let stored: Vec<(usize, u64)> = (lead..self.rows)
                    .filter(|&i| dense[i] != 0)
                    .map(|i| (i, mul_mod(dense[i], inv, p)))
                    .collect();
                self.pivots[lead] = Some(stored);
                self.rank += 1;
                return true;
            };
            let c = dense[lead];
            for &(j, pj) in pivot {
                dense[j] = sub_mod(dense[j], mul_mod(c, pj, p), p);
            }
            start = lead + 1;
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact rank over `Q`.
pub fn rank(m: &ExactMatrix) -> usize {
    let mut ech = IntegerEchelon::new(m.rows());
    for col in m.integer_columns() {
        ech.insert(&col);
    }
    ech.rank()
}

/// `cols - rank`.
pub fn kernel_dim(m: &ExactMatrix) -> usize {
    m.cols() - rank(m)
}

/// Rank of the primitive integer form of `m` reduced modulo `p`.
pub fn rank_mod_p(m: &ExactMatrix, p: u64) -> usize {
    let mut ech = ModularEchelon::new(m.rows(), p);
    for col in m.integer_columns() {
        ech.insert(&residues(&col, p));
    }
    ech.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("prime list is empty")]
    NoPrimes,
    #[error("{0} is not a prime above 2^20")]
    BadPrime(u64),
    #[error("prime {0} listed twice")]
    DuplicatePrime(u64),
    #[error("modular ranks {modular:?} disagree and rational rank {rational} confirms none of them")]
    Inconsistent { modular: Vec<usize>, rational: usize },
}

/// Outcome of a cross-checked modular rank computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularRank {
    pub rank: usize,
    pub per_prime: Vec<(u64, usize)>,
    /// Primes whose rank fell below the confirmed value.
    pub unlucky: Vec<u64>,
    /// Whether a rational recomputation was needed to settle a disagreement.
    pub rational_confirmed: bool,
}

/// Rank modulo each prime; on disagreement the maximum is accepted only after
/// a rational recomputation confirms it.
pub fn modular_rank_with_check(m: &ExactMatrix, primes: &[u64]) -> Result<ModularRank, LinalgError> {
    validate_primes(primes)?;
    let per_prime: Vec<(u64, usize)> = primes.iter().map(|&p| (p, rank_mod_p(m, p))).collect();
    let max = per_prime.iter().map(|x| x.1).max().unwrap();
    if per_prime.iter().all(|x| x.1 == max) {
        return Ok(ModularRank {
            rank: max,
            per_prime,
            unlucky: Vec::new(),
            rational_confirmed: false,
        });
    }
    let exact = rank(m);
    if exact != max {
        return Err(LinalgError::Inconsistent {
            modular: per_prime.iter().map(|x| x.1).collect(),
            rational: exact,
        });
    }
    let unlucky = per_prime
        .iter()
        .filter(|x| x.1 < max)
        .map(|x| x.0)
        .collect();
    Ok(ModularRank {
        rank: max,
        per_prime,
        unlucky,
        rational_confirmed: true,
    })
}

pub fn validate_primes(primes: &[u64]) -> Result<(), LinalgError> {
    if primes.is_empty() {
        return Err(LinalgError::NoPrimes);
    }
    for (i, &p) in primes.iter().enumerate() {
        if p <= 1 << 20 || !is_prime(p) {
            return Err(LinalgError::BadPrime(p));
        }
        if primes[..i].contains(&p) {
            return Err(LinalgError::DuplicatePrime(p));
        }
    }
    Ok(())
}

/// Upper bound (in bits) on the absolute value of any minor of the primitive
/// integer form of `m`, via Hadamard's inequality.
pub fn hadamard_bits(m: &ExactMatrix) -> f64 {
    m.log2_column_norms().iter().sum()
}

/// Which arithmetic the graded computations run in.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Field {
    #[default]
    Rational,
    /// Cross-checked modular ranks over the listed primes.
    Modular(Vec<u64>),
}

impl Field {
    pub fn rank(&self, m: &ExactMatrix) -> Result<usize, LinalgError> {
        match self {
            Field::Rational => Ok(rank(m)),
            Field::Modular(primes) => modular_rank_with_check(m, primes).map(|r| r.rank),
        }
    }
}

/// A basis of the right kernel of `m` as primitive integer vectors.
///
/// Columns are eliminated left to right over `Z` while recording the
/// combination that produced each residual; every column that reduces to zero
/// contributes that combination. The last nonzero entry is made positive.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    let rows = m.rows();
    let ncols = m.cols();
    let mut ech = IntegerEchelon {
        rows: rows + ncols,
        lead_limit: rows,
        pivots: vec![None; rows],
        rank: 0,
    };
    let mut basis = Vec::new();
    // column j is scaled by the lcm of its denominators, undone on output
    let dens: Vec<BigInt> = (0..ncols)
        .map(|j| m.column(j).iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom())))
        .collect();
    for j in 0..ncols {
        let mut dense = vec![BigInt::zero(); rows + ncols];
        for (i, v) in m.column(j) {
            dense[*i] = v.numer() * (&dens[j] / v.denom());
        }
        dense[rows + j] = BigInt::one();
        if !ech.reduce(&mut dense, 0) {
            let mut v = dense.split_off(rows);
            for (x, d) in v.iter_mut().zip(&dens) {
                *x *= d;
            }
            normalize_sign_last(&mut v);
            basis.push(v);
        }
    }
    basis
}

fn normalize_sign_last(v: &mut [BigInt]) {
    let mut g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    if v.iter().rev().find(|x| !x.is_zero()).unwrap().sign() == Sign::Minus {
        g = -g;
    }
    for x in v.iter_mut() {
        *x /= &g;
    }
}

/// Sparse residues of an integer vector modulo `p`.
pub fn residues(col: &[(usize, BigInt)], p: u64) -> Vec<(usize, u64)> {
    col.iter()
        .map(|(i, v)| (*i, reduce_mod(v, p)))
        .filter(|(_, r)| *r != 0)
        .collect()
}

/// Clears denominators and content; the last nonzero entry is made positive.
pub fn rational_to_primitive(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    normalize_sign_last(&mut ints);
    ints
}
