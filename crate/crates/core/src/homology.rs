//! Smith normal form, ranks over prime fields and homology of complexes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::ChainComplex;
use crate::error::{Result, SchurError};
use crate::matrix::IntMatrix;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Invariant factors `d_1 | d_2 | ...` (nonzero ones only) and, when
/// requested, unimodular `U`, `V` with `U M V` diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub transforms: Option<(IntMatrix, IntMatrix)>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors different from 1.
    pub fn torsion_factors(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().filter(|f| !f.is_one())
    }
}

/// Minimal arithmetic needed by the elimination, so the same code runs on
/// machine words (with overflow detection) and on big integers.
trait Entry: Clone + PartialEq {
    fn vanishes(&self) -> bool;
    fn magnitude_less(&self, other: &Self) -> bool;
    fn unit(&self) -> bool;
    fn quotient(&self, divisor: &Self) -> Self;
    /// `self - q * b`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn magnitude_less(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn quotient(&self, divisor: &Self) -> Self {
        // The pivot has minimal magnitude, so this cannot be MIN / -1 unless
        // both are MIN, which gives 1.
        self.wrapping_div(*divisor)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn magnitude_less(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn quotient(&self, divisor: &Self) -> Self {
        self / divisor
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Diagonalizes `a` in place and returns the diagonal. Pivots are chosen by
/// minimal magnitude, ties broken by the Markowitz fill-in estimate.
fn diagonalize<T: Entry>(mut a: Vec<Vec<T>>, cols: usize) -> Option<Vec<T>> {
    let rows = a.len();
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let (pi, pj) = match choose_pivot(&a, t, cols) {
            Some(p) => p,
            None => break,
        };
        a.swap(t, pi);
        for row in a.iter_mut().skip(t) {
            row.swap(t, pj);
        }
        loop {
            // Clear the pivot column with row operations.
            let support: Vec<usize> = (t + 1..cols).filter(|&j| !a[t][j].vanishes()).collect();
            let mut leftover = false;
            for i in t + 1..rows {
                if a[i][t].vanishes() {
                    continue;
                }
                let q = a[i][t].quotient(&a[t][t]);
                if !q.vanishes() {
                    let (head, tail) = a.split_at_mut(i);
                    let (pivot_row, row) = (&head[t], &mut tail[0]);
                    row[t] = row[t].sub_mul(&q, &pivot_row[t])?;
                    for &j in &support {
                        row[j] = row[j].sub_mul(&q, &pivot_row[j])?;
                    }
                }
                leftover |= !a[i][t].vanishes();
            }
            if leftover {
                let best = (t + 1..rows)
                    .filter(|&i| !a[i][t].vanishes())
                    .min_by(|&x, &y| cmp_magnitude(&a[x][t], &a[y][t]))
                    .expect("a remainder is nonzero");
                a.swap(t, best);
                continue;
            }
            // The column is clear, so column operations only touch row t.
            let mut leftover = None;
            for j in t + 1..cols {
                if a[t][j].vanishes() {
                    continue;
                }
                let q = a[t][j].quotient(&a[t][t]);
                a[t][j] = a[t][j].sub_mul(&q, &a[t][t])?;
                if !a[t][j].vanishes() && leftover.is_none_or(|b: usize| a[t][j].magnitude_less(&a[t][b])) {
                    leftover = Some(j);
                }
            }
            match leftover {
                Some(j) => {
                    for row in a.iter_mut().skip(t) {
                        row.swap(t, j);
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    Some(diagonal)
}

fn cmp_magnitude<T: Entry>(x: &T, y: &T) -> std::cmp::Ordering {
    if x.magnitude_less(y) {
        std::cmp::Ordering::Less
    } else if y.magnitude_less(x) {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

fn choose_pivot<T: Entry>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let rows = a.len();
    let mut row_count = vec![0usize; rows];
    let mut col_count = vec![0usize; cols];
    let mut any_unit = false;
    for i in t..rows {
        for j in t..cols {
            if !a[i][j].vanishes() {
                row_count[i] += 1;
                col_count[j] += 1;
                any_unit |= a[i][j].unit();
            }
        }
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..rows {
        if row_count[i] == 0 {
            continue;
        }
        for j in t..cols {
            let v = &a[i][j];
            if v.vanishes() || (any_unit && !v.unit()) {
                continue;
            }
            let cost = (row_count[i] - 1) * (col_count[j] - 1);
            let better = match best {
                None => true,
                Some((bi, bj, bc)) => {
                    let w = &a[bi][bj];
                    v.magnitude_less(w) || (!w.magnitude_less(v) && cost < bc)
                }
            };
            if better {
                best = Some((i, j, cost));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Turns a list of nonzero diagonal entries into the invariant factor chain.
fn normalize_diagonal(diagonal: Vec<BigInt>) -> Vec<BigInt> {
    let units = diagonal.iter().filter(|d| d.unit()).count();
    let mut rest: Vec<BigInt> = diagonal.into_iter().filter(|d| !d.unit()).map(|d| d.abs()).collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let ones = units + rest.iter().filter(|d| d.is_one()).count();
    let mut out = vec![BigInt::one(); ones];
    out.extend(rest.into_iter().filter(|d| !d.is_one()));
    out
}

/// Invariant factors of `m`, without transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let dense = m.to_dense();
    let small: Option<Vec<Vec<i64>>> =
        dense.iter().map(|row| row.iter().map(ToPrimitive::to_i64).collect()).collect();
    let diagonal = small
        .and_then(|a| diagonalize(a, m.cols()))
        .map(|d| d.iter().map(Entry::to_big).collect())
        .unwrap_or_else(|| diagonalize(dense, m.cols()).expect("big integers do not overflow"));
    SmithForm { factors: normalize_diagonal(diagonal), transforms: None }
}

/// Smith form together with unimodular `U`, `V` such that `U m V` is the
/// diagonal matrix of invariant factors.
pub fn smith_normal_form_with_transforms(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.to_dense();
    let mut u = IntMatrix::identity(rows).to_dense();
    let mut v = IntMatrix::identity(cols).to_dense();

    fn row_op(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
        let src = a[source].clone();
        for (x, y) in a[target].iter_mut().zip(&src) {
            *x -= q * y;
        }
    }
    fn col_op(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
        for row in a.iter_mut() {
            let y = row[source].clone();
            row[target] -= q * y;
        }
    }
    fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }

    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && pivot.is_none_or(|(pi, pj)| a[i][j].magnitude() < a[pi][pj].magnitude()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    row_op(&mut a, i, t, &q);
                    row_op(&mut u, i, t, &q);
                    changed |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    col_op(&mut a, j, t, &q);
                    col_op(&mut v, j, t, &q);
                    changed |= !a[t][j].is_zero();
                }
            }
            if changed {
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].magnitude() < a[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].magnitude() < a[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                }
                continue;
            }
            // Enforce divisibility by folding an offending row into row t.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_op(&mut a, t, i, &minus_one);
                    row_op(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let factors = (0..rows.min(cols)).map(|i| a[i][i].clone()).filter(|d| !d.is_zero()).collect();
    let to_matrix = |d: Vec<Vec<BigInt>>, n: usize| {
        let t = d.into_iter().enumerate().flat_map(|(i, row)| {
            row.into_iter().enumerate().map(move |(j, x)| (i, j, x))
        });
        IntMatrix::from_triplets(n, n, t).expect("square transform")
    };
    SmithForm { factors, transforms: Some((to_matrix(u, rows), to_matrix(v, cols))) }
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(SchurError::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = vec![vec![0; m.cols()]; m.rows()];
    for (i, j, v) in m.triplets() {
        a[i][j] = v.mod_floor(&modulus).to_u64().expect("reduced below p");
    }
    let p128 = p as u128;
    let inverse = |x: u64| -> u64 {
        // Fermat: x^(p-2).
        let (mut base, mut exp, mut acc) = (x as u128, p - 2, 1u128);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p128;
            }
            base = base * base % p128;
            exp >>= 1;
        }
        acc as u64
    };
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for j in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| a[i][j] != 0) else { continue };
        a.swap(rank, pivot);
        let inv = inverse(a[rank][j]) as u128;
        let support: Vec<usize> = (j..cols).filter(|&c| a[rank][c] != 0).collect();
        for i in rank + 1..rows {
            if a[i][j] == 0 {
                continue;
            }
            let factor = a[i][j] as u128 * inv % p128;
            for &c in &support {
                let sub = factor * a[rank][c] as u128 % p128;
                a[i][c] = ((a[i][c] as u128 + p128 - sub) % p128) as u64;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

/// `Z^free_rank + sum Z/q` with `q` prime powers, or a vector space over
/// `F_p` when computed modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
    pub modulus: Option<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            match self.modulus {
                Some(p) => parts.push(format!("F{p}^{}", self.free_rank)),
                None => parts.push(format!("Z^{}", self.free_rank)),
            }
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Prime power decomposition of `n > 1` by trial division.
pub fn prime_power_factors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= rest {
        let mut power = BigUint::one();
        while (&rest % &d).is_zero() {
            rest /= &d;
            power *= &d;
        }
        if !power.is_one() {
            out.push(power);
        }
        d += 1u32;
    }
    if rest > BigUint::one() {
        out.push(rest);
    }
    out.sort();
    out
}

/// Homology in every degree of `x`, computing each differential's rank (or
/// Smith form over the integers) once.
pub fn homology_all(x: &ChainComplex) -> Result<Vec<(i64, HomologyGroup)>> {
    let lo = x.lo();
    let hi = x.hi();
    // data[i] describes d_{lo + i}; d_lo and d_{hi + 1} are zero.
    let mut ranks = Vec::new();
    let mut torsion = Vec::new();
    for k in lo..=hi + 1 {
        let d = x.differential(k);
        match x.modulus() {
            Some(p) => {
                ranks.push(rank_mod_p(&d, p)?);
                torsion.push(Vec::new());
            }
            None => {
                let snf = smith_normal_form(&d);
                let mut t: Vec<BigUint> = snf
                    .torsion_factors()
                    .flat_map(|f| prime_power_factors(&f.magnitude().clone()))
                    .collect();
                t.sort();
                ranks.push(snf.rank());
                torsion.push(t);
            }
        }
    }
    Ok((lo..=hi)
        .map(|k| {
            let i = (k - lo) as usize;
            let group = HomologyGroup {
                free_rank: x.rank(k) - ranks[i] - ranks[i + 1],
                torsion: torsion[i + 1].clone(),
                modulus: x.modulus(),
            };
            (k, group)
        })
        .collect())
}

/// `H_k = ker d_k / im d_{k+1}`.
pub fn homology(x: &ChainComplex, k: i64) -> Result<HomologyGroup> {
    if !x.degrees().contains(&k) {
        return Err(SchurError::DegreeOutOfRange(k));
    }
    let single = x.restrict_window(k)?;
    Ok(homology_all(&single)?.into_iter().find(|(d, _)| *d == k).expect("degree kept").1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: i64,
    pub homology: HomologyGroup,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub modulus: Option<u64>,
    pub checks: Vec<DegreeCheck>,
}

impl ExactnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.exact)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DegreeCheck> {
        self.checks.iter().filter(|c| !c.exact)
    }
}

/// Checks `H_k = 0` for the requested degrees; degrees outside the complex
/// are trivially exact.
pub fn verify_exactness(x: &ChainComplex, degrees: &[i64]) -> Result<ExactnessReport> {
    let all = homology_all(x)?;
    let checks = degrees
        .iter()
        .map(|&k| {
            let homology = all.iter().find(|(d, _)| *d == k).map(|(_, h)| h.clone()).unwrap_or(
                HomologyGroup { free_rank: 0, torsion: Vec::new(), modulus: x.modulus() },
            );
            DegreeCheck { degree: k, exact: homology.is_zero(), homology }
        })
        .collect();
    Ok(ExactnessReport { modulus: x.modulus(), checks })
}

impl ChainComplex {
    /// The piece `C_{k-1} <- C_k <- C_{k+1}` that determines `H_k`.
    fn restrict_window(&self, k: i64) -> Result<ChainComplex> {
        let keep: Vec<Vec<usize>> = self
            .degrees()
            .map(|j| if (k - 1..=k + 1).contains(&j) { (0..self.rank(j)).collect() } else { Vec::new() })
            .collect();
        self.restrict(&keep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{reduce_mod, BasisLabel};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn two_term(d: IntMatrix) -> ChainComplex {
        let b = |k| vec![BasisLabel::Generator; k];
        ChainComplex::new(0, vec![b(d.rows()), b(d.cols())], vec![d]).unwrap()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).factors, big(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])).factors, big(&[1, 6]));
        assert!(smith_normal_form(&IntMatrix::zeros(2, 3)).factors.is_empty());
        assert_eq!(smith_normal_form(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).factors, big(&[2, 6, 12]));
    }

    #[test]
    fn transforms_reconstruct() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16], &[1, 0, 3]]);
        let snf = smith_normal_form_with_transforms(&a);
        assert_eq!(snf.factors, smith_normal_form(&a).factors);
        let (u, v) = snf.transforms.unwrap();
        let d = u.mul(&a).unwrap().mul(&v).unwrap();
        for (i, j, x) in d.triplets() {
            assert_eq!(i, j);
            assert_eq!(x, snf.factors[i]);
        }
        assert_eq!(smith_normal_form(&u).factors.len(), 4);
        assert!(smith_normal_form(&u).torsion_factors().next().is_none());
        assert!(smith_normal_form(&v).torsion_factors().next().is_none());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 3;
        let a = m(&[&[huge, huge - 1], &[huge - 7, huge + 5]]);
        let expected = smith_normal_form_with_transforms(&a).factors;
        assert_eq!(smith_normal_form(&a).factors, expected);
    }

    #[test]
    fn ranks_mod_p() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(rank_mod_p(&a, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&a, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&a, 5).unwrap(), 2);
        assert_eq!(rank_mod_p(&a, 6), Err(SchurError::NotPrime(6)));
    }

    #[test]
    fn homology_examples() {
        let exact = two_term(m(&[&[1]]));
        assert!(verify_exactness(&exact, &[0, 1]).unwrap().passed());

        let doubling = two_term(m(&[&[2]]));
        let h0 = homology(&doubling, 0).unwrap();
        assert_eq!(h0.free_rank, 0);
        assert_eq!(h0.torsion, vec![BigUint::from(2u32)]);
        assert_eq!(h0.to_string(), "Z/2");
        let report = verify_exactness(&doubling, &[0, 1]).unwrap();
        assert_eq!(report.failures().map(|c| c.degree).collect::<Vec<_>>(), vec![0]);

        let mod2 = reduce_mod(&doubling, 2).unwrap();
        assert_eq!(homology(&mod2, 1).unwrap().free_rank, 1);
        assert!(homology(&doubling, 5).is_err());
    }

    #[test]
    fn prime_powers() {
        let f = prime_power_factors(&BigUint::from(360u32));
        assert_eq!(f, vec![BigUint::from(5u32), BigUint::from(8u32), BigUint::from(9u32)]);
    }
}
