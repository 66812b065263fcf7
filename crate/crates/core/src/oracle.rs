//! Brute-force realizations of `S(n, r)` used to check the structure
//! constants.
//!
//! * [`TensorEndomorphism`]: explicit linear maps of `(R^n)^{(x) r}` written in
//!   the matrix units `e_{i,j}`, with `e_{i,j} e_k = delta_{jk} e_i`.
//! * [`green_convolution`]: the product on the dual of the coalgebra of
//!   homogeneous polynomials, `(f1 f2)(c_{i,j}) = sum_k f1(c_{i,k}) f2(c_{k,j})`.
//! * [`rho`] and [`monomial_eval`]: the action of an integer matrix `g` on the
//!   tensor power and its expansion in the `xi` basis.
//!
//! The `n^r`-dimensional computations are guarded by a size limit, read from
//! `SCHUR_ORACLE_MAX_DIM` (default 4096).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::AlgebraElement;
use crate::combinatorics::{
    enumerate_weight_matrices, pair_weight, MatrixConstraints, MultiIndex, WeightMatrix,
};
use crate::error::{Result, SchurError};

pub const ORACLE_LIMIT_VAR: &str = "SCHUR_ORACLE_MAX_DIM";
pub const DEFAULT_ORACLE_LIMIT: u128 = 4096;

fn oracle_limit() -> u128 {
    std::env::var(ORACLE_LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

/// Fails when `n^r` exceeds the configured limit.
pub fn check_oracle_size(n: usize, r: u32) -> Result<()> {
    let limit = oracle_limit();
    let dim = (n as u128).checked_pow(r).unwrap_or(u128::MAX);
    if dim > limit {
        return Err(SchurError::OracleTooLarge { dim, limit });
    }
    Ok(())
}

/// A linear endomorphism of `(R^n)^{(x) r}` as a sparse sum of `e_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorEndomorphism {
    n: usize,
    r: u32,
    entries: BTreeMap<(MultiIndex, MultiIndex), BigInt>,
}

impl TensorEndomorphism {
    pub fn zero(n: usize, r: u32) -> Result<Self> {
        check_oracle_size(n, r)?;
        Ok(TensorEndomorphism { n, r, entries: BTreeMap::new() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &BigInt)> {
        self.entries.iter()
    }

    fn add(&mut self, i: MultiIndex, j: MultiIndex, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry((i, j)).or_insert_with(BigInt::zero);
        *slot += c;
    }

    fn prune(&mut self) {
        self.entries.retain(|_, v| !v.is_zero());
    }
}

/// `xi_omega` as the sum of `e_{i,j}` over the orbit `(i, j) in omega`.
pub fn endo_of_basis(omega: &WeightMatrix) -> Result<TensorEndomorphism> {
    let mut out = TensorEndomorphism::zero(omega.n(), omega.r())?;
    let (i0, j0) = omega.representative();
    let r = omega.r() as usize;
    // Walk all permutations of the positions; duplicates collapse in the map.
    let mut seen = std::collections::BTreeSet::new();
    let mut perm: Vec<u32> = (1..=r as u32).collect();
    loop {
        let i = i0.permuted(&perm);
        let j = j0.permuted(&perm);
        if seen.insert((i.clone(), j.clone())) {
            out.add(i, j, BigInt::one());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

pub(crate) fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `f o g`, i.e. `sum f_{ij} g_{jk} e_{i,k}`.
pub fn compose(f: &TensorEndomorphism, g: &TensorEndomorphism) -> Result<TensorEndomorphism> {
    if f.n != g.n || f.r != g.r {
        return Err(SchurError::SizeMismatch("endomorphisms of different spaces".into()));
    }
    let mut by_row: HashMap<&MultiIndex, Vec<(&MultiIndex, &BigInt)>> = HashMap::new();
    for ((j, k), c) in &g.entries {
        by_row.entry(j).or_default().push((k, c));
    }
    let mut out = TensorEndomorphism { n: f.n, r: f.r, entries: BTreeMap::new() };
    for ((i, j), a) in &f.entries {
        if let Some(row) = by_row.get(j) {
            for (k, b) in row {
                out.add(i.clone(), (*k).clone(), a * *b);
            }
        }
    }
    out.prune();
    Ok(out)
}

/// Expresses a symmetric-group invariant endomorphism in the `xi` basis.
pub fn decode(f: &TensorEndomorphism) -> Result<AlgebraElement> {
    let mut orbits: HashMap<WeightMatrix, (BigInt, u128)> = HashMap::new();
    for ((i, j), c) in &f.entries {
        let omega = pair_weight(i, j)?;
        match orbits.get_mut(&omega) {
            Some((coefficient, count)) => {
                if coefficient != c {
                    return Err(SchurError::NotInvariant);
                }
                *count += 1;
            }
            None => {
                orbits.insert(omega, (c.clone(), 1));
            }
        }
    }
    let mut terms = Vec::with_capacity(orbits.len());
    for (omega, (c, count)) in orbits {
        if omega.orbit_size().to_u128() != Some(count) {
            return Err(SchurError::NotInvariant);
        }
        terms.push((omega, c));
    }
    AlgebraElement::from_terms(f.n, f.r, terms)
}

/// Product of basis elements computed through explicit endomorphisms.
pub fn endomorphism_product(omega: &WeightMatrix, pi: &WeightMatrix) -> Result<AlgebraElement> {
    decode(&compose(&endo_of_basis(omega)?, &endo_of_basis(pi)?)?)
}

/// Index of `wt(i, j)` for every pair of multi-indices, as a lookup table.
struct PairWeightTable {
    indices: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
    weight_id: Vec<usize>,
    weights: Vec<WeightMatrix>,
}

impl PairWeightTable {
    fn new(n: usize, r: u32) -> Result<Self> {
        check_oracle_size(n, r)?;
        let indices = MultiIndex::all(n, r as usize);
        let weights = enumerate_weight_matrices(n, r, &MatrixConstraints::none())?;
        let id_of: HashMap<&WeightMatrix, usize> =
            weights.iter().enumerate().map(|(idx, w)| (w, idx)).collect();
        let size = indices.len();
        let mut weight_id = vec![0usize; size * size];
        for (a, i) in indices.iter().enumerate() {
            for (b, j) in indices.iter().enumerate() {
                weight_id[a * size + b] = id_of[&pair_weight(i, j)?];
            }
        }
        let position = indices.iter().enumerate().map(|(idx, i)| (i.clone(), idx)).collect();
        Ok(PairWeightTable { indices, position, weight_id, weights })
    }

    fn id(&self, a: usize, b: usize) -> usize {
        self.weight_id[a * self.indices.len() + b]
    }
}

/// The convolution product of the dual basis functionals `xi^_omega` and
/// `xi^_pi`: the coefficient of `xi_tau` is the number of `k` with
/// `wt(i, k) = omega` and `wt(k, j) = pi`, for a fixed `(i, j)` in `tau`.
pub fn green_convolution(omega: &WeightMatrix, pi: &WeightMatrix) -> Result<AlgebraElement> {
    if omega.n() != pi.n() || omega.r() != pi.r() {
        return Err(SchurError::SizeMismatch(format!("{omega} and {pi} differ in size")));
    }
    GreenConvolution::new(omega.n(), omega.r())?.product(omega, pi)
}

/// Reusable state for many [`green_convolution`] calls on the same algebra.
pub struct GreenConvolution {
    n: usize,
    r: u32,
    table: PairWeightTable,
    weight_index: HashMap<WeightMatrix, usize>,
    representatives: Vec<(usize, usize)>,
}

impl GreenConvolution {
    pub fn new(n: usize, r: u32) -> Result<Self> {
        let table = PairWeightTable::new(n, r)?;
        let weight_index =
            table.weights.iter().enumerate().map(|(idx, w)| (w.clone(), idx)).collect();
        let representatives = table
            .weights
            .iter()
            .map(|tau| {
                let (i, j) = tau.representative();
                (table.position[&i], table.position[&j])
            })
            .collect();
        Ok(GreenConvolution { n, r, table, weight_index, representatives })
    }

    pub fn product(&self, omega: &WeightMatrix, pi: &WeightMatrix) -> Result<AlgebraElement> {
        let lookup = |w: &WeightMatrix| {
            self.weight_index.get(w).copied().ok_or_else(|| {
                SchurError::SizeMismatch(format!("{w} is not in S({}, {})", self.n, self.r))
            })
        };
        let (a, b) = (lookup(omega)?, lookup(pi)?);
        let size = self.table.indices.len();
        let mut terms = Vec::new();
        for (tau, &(i, j)) in self.table.weights.iter().zip(&self.representatives) {
            let count = (0..size)
                .filter(|&k| self.table.id(i, k) == a && self.table.id(k, j) == b)
                .count();
            if count > 0 {
                terms.push((tau.clone(), BigInt::from(count)));
            }
        }
        AlgebraElement::from_terms(self.n, self.r, terms)
    }
}

/// A square integer matrix `g`, acting on `R^n` by `g e_t = sum_s g_st e_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl GroupMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(SchurError::SizeMismatch(format!("need {} entries", n * n)));
        }
        Ok(GroupMatrix { n, entries })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SchurError::SizeMismatch("group matrix must be square".into()));
        }
        Ok(GroupMatrix { n, entries: rows.iter().flat_map(|r| r.iter().map(|&v| BigInt::from(v))).collect() })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for s in 0..n {
            entries[s * n + s] = BigInt::one();
        }
        GroupMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(s, t)`.
    pub fn get(&self, s: usize, t: usize) -> &BigInt {
        &self.entries[s * self.n + t]
    }

    pub fn mul(&self, other: &GroupMatrix) -> Result<GroupMatrix> {
        if self.n != other.n {
            return Err(SchurError::SizeMismatch("group matrices of different sizes".into()));
        }
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for s in 0..n {
            for t in 0..n {
                let mut acc = BigInt::zero();
                for q in 0..n {
                    acc += self.get(s, q) * other.get(q, t);
                }
                entries[s * n + t] = acc;
            }
        }
        Ok(GroupMatrix { n, entries })
    }
}

impl fmt::Display for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for s in 0..self.n {
            if s > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for t in 0..self.n {
                if t > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(s, t))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `prod_{s,t} g_st^{omega_st}`.
pub fn monomial_eval(omega: &WeightMatrix, g: &GroupMatrix) -> Result<BigInt> {
    if omega.n() != g.n {
        return Err(SchurError::SizeMismatch("weight matrix and group matrix sizes differ".into()));
    }
    let n = g.n;
    let mut acc = BigInt::one();
    for s in 0..n {
        for t in 0..n {
            let e = omega.get(s, t);
            if e > 0 {
                acc *= num_traits::pow(g.get(s, t).clone(), e as usize);
            }
        }
    }
    Ok(acc)
}

/// `rho(g) = sum_omega monomial_eval(omega, g) xi_omega`.
pub fn rho(g: &GroupMatrix, r: u32) -> Result<AlgebraElement> {
    let mut terms = Vec::new();
    for omega in enumerate_weight_matrices(g.n, r, &MatrixConstraints::none())? {
        let c = monomial_eval(&omega, g)?;
        terms.push((omega, c));
    }
    AlgebraElement::from_terms(g.n, r, terms)
}

/// The diagonal action of `g` on the tensor power, as an explicit
/// endomorphism: `g e_i = sum_j (prod_q g_{j_q, i_q}) e_j`.
pub fn tensor_action(g: &GroupMatrix, r: u32) -> Result<TensorEndomorphism> {
    let mut out = TensorEndomorphism::zero(g.n, r)?;
    let all = MultiIndex::all(g.n, r as usize);
    for i in &all {
        for j in &all {
            let mut c = BigInt::one();
            for (&a, &b) in j.entries().iter().zip(i.entries()) {
                c *= g.get(a as usize - 1, b as usize - 1);
                if c.is_zero() {
                    break;
                }
            }
            out.add(j.clone(), i.clone(), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{identity, multiply_basis};
    use crate::combinatorics::Composition;

    fn m(rows: &[&[u32]]) -> WeightMatrix {
        WeightMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn mi(n: usize, e: &[u32]) -> MultiIndex {
        MultiIndex::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn basis_endomorphisms() {
        let f = endo_of_basis(&WeightMatrix::diag(&Composition::new(vec![1, 1]))).unwrap();
        let keys: Vec<_> = f.entries().map(|(k, _)| k.clone()).collect();
        assert_eq!(
            keys,
            vec![(mi(2, &[1, 2]), mi(2, &[1, 2])), (mi(2, &[2, 1]), mi(2, &[2, 1]))]
        );
        let single = endo_of_basis(&m(&[&[2, 0], &[0, 0]])).unwrap();
        assert_eq!(single.len(), 1);

        let total: usize = enumerate_weight_matrices(2, 3, &MatrixConstraints::none())
            .unwrap()
            .iter()
            .map(|w| endo_of_basis(w).unwrap().len())
            .sum();
        assert_eq!(total, 64);
    }

    #[test]
    fn composition_oracle() {
        let d = WeightMatrix::diag(&Composition::new(vec![1, 1]));
        let e = endo_of_basis(&d).unwrap();
        assert_eq!(compose(&e, &e).unwrap(), e);
        let zero = TensorEndomorphism::zero(2, 2).unwrap();
        assert!(compose(&e, &zero).unwrap().is_empty());

        let product = endomorphism_product(&m(&[&[1, 1], &[0, 0]]), &m(&[&[1, 0], &[1, 0]])).unwrap();
        assert_eq!(product.to_string(), "2*xi([[2,0],[0,0]])");
    }

    #[test]
    fn decode_rejects_non_invariant() {
        let mut f = TensorEndomorphism::zero(2, 2).unwrap();
        f.add(mi(2, &[1, 2]), mi(2, &[1, 2]), BigInt::one());
        assert_eq!(decode(&f), Err(SchurError::NotInvariant));
    }

    #[test]
    fn green_product_matches_on_small_algebra() {
        let all = enumerate_weight_matrices(2, 2, &MatrixConstraints::none()).unwrap();
        let green = GreenConvolution::new(2, 2).unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(green.product(a, b).unwrap(), multiply_basis(a, b).unwrap());
            }
        }
        let zero = green_convolution(
            &WeightMatrix::diag(&Composition::new(vec![2, 0])),
            &WeightMatrix::diag(&Composition::new(vec![0, 2])),
        )
        .unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn monomials() {
        let id = GroupMatrix::identity(2);
        assert_eq!(monomial_eval(&m(&[&[1, 0], &[0, 2]]), &id).unwrap(), BigInt::one());
        assert!(monomial_eval(&m(&[&[1, 1], &[0, 1]]), &id).unwrap().is_zero());
        let g = GroupMatrix::from_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(monomial_eval(&m(&[&[1, 1], &[0, 1]]), &g).unwrap(), BigInt::from(8));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&GroupMatrix::identity(2), 2).unwrap(), identity(2, 2));
        let a = GroupMatrix::from_rows(&[&[7]]).unwrap();
        assert_eq!(rho(&a, 1).unwrap().to_string(), "7*xi([[1]])");

        let unipotent = GroupMatrix::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let image = rho(&unipotent, 2).unwrap();
        let upper = enumerate_weight_matrices(2, 2, &MatrixConstraints::none().upper_triangular()).unwrap();
        assert_eq!(image.len(), upper.len());
        for w in upper {
            assert_eq!(image.coefficient(&w), BigInt::one());
        }
        assert_eq!(decode(&tensor_action(&unipotent, 2).unwrap()).unwrap(), image);
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            TensorEndomorphism::zero(5, 9),
            Err(SchurError::OracleTooLarge { .. })
        ));
    }
}
