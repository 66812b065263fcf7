//! Reduced bar resolutions of the rank-one modules `R_lambda` over the Borel
//! subalgebra, and the induced complexes over the full Schur algebra whose
//! zeroth homology is the Weyl module.
//!
//! A degree `k` basis element is a tuple `(omega_0, omega_1, ..., omega_k)`
//! with every `omega_t` (`t >= 1`) upper triangular of filtration degree at
//! least one, column sums of `omega_k` equal to `lambda`, and
//! `omega_t^1 = omega_{t+1}^2`. In the Borel variant `omega_0` is upper
//! triangular, in the full variant it is arbitrary.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{AlgebraElement, ProductTable};
use crate::combinatorics::{
    enumerate_weight_matrices, max_chain_length, Composition, MatrixConstraints, WeightMatrix,
};
use crate::complex::{BasisLabel, ChainComplex};
use crate::error::{Result, SchurError};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Resolution over the Borel subalgebra.
    Borel,
    /// Induced up to the full Schur algebra.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarTuple {
    matrices: Vec<WeightMatrix>,
}

impl BarTuple {
    pub fn new(matrices: Vec<WeightMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(SchurError::SizeMismatch("a bar tuple has at least one entry".into()));
        }
        Ok(BarTuple { matrices })
    }

    pub fn degree(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn matrices(&self) -> &[WeightMatrix] {
        &self.matrices
    }

    pub fn head(&self) -> &WeightMatrix {
        &self.matrices[0]
    }

    pub fn into_label(self) -> BasisLabel {
        BasisLabel::Matrices(self.matrices)
    }
}

/// Enumerates bases and assembles differentials for one `lambda`, caching
/// products and the admissible `J` blocks.
pub struct BarBuilder {
    lambda: Composition,
    variant: Variant,
    head_rows: Option<Composition>,
    products: ProductTable,
    blocks: HashMap<Composition, Vec<WeightMatrix>>,
    heads: HashMap<Composition, Vec<WeightMatrix>>,
    bases: Vec<Vec<BarTuple>>,
}

impl BarBuilder {
    pub fn new(lambda: &Composition, variant: Variant) -> Result<Self> {
        if lambda.n() == 0 {
            return Err(SchurError::InvalidComposition("lambda needs at least one part".into()));
        }
        Ok(BarBuilder {
            lambda: lambda.clone(),
            variant,
            head_rows: None,
            products: ProductTable::new(),
            blocks: HashMap::new(),
            heads: HashMap::new(),
            bases: Vec::new(),
        })
    }

    /// Keeps only tuples whose head has the given row sums. Left
    /// multiplication preserves row sums, so the result is a subcomplex.
    pub fn with_head_row_sums(mut self, rows: Composition) -> Result<Self> {
        if rows.n() != self.lambda.n() || rows.r() != self.lambda.r() {
            return Err(SchurError::SizeMismatch(format!("{rows} does not match {}", self.lambda)));
        }
        self.head_rows = Some(rows);
        Ok(self)
    }

    fn n(&self) -> usize {
        self.lambda.n()
    }

    fn r(&self) -> u32 {
        self.lambda.r()
    }

    fn block(&mut self, columns: &Composition) -> &[WeightMatrix] {
        let (n, r) = (self.n(), self.r());
        self.blocks.entry(columns.clone()).or_insert_with(|| {
            let c = MatrixConstraints::none().with_column_sums(columns.clone()).with_min_degree(1);
            enumerate_weight_matrices(n, r, &c).expect("sizes agree")
        })
    }

    fn heads(&mut self, columns: &Composition) -> &[WeightMatrix] {
        let (n, r, variant) = (self.n(), self.r(), self.variant);
        let rows = self.head_rows.clone();
        self.heads.entry(columns.clone()).or_insert_with(|| {
            let mut c = MatrixConstraints::none().with_column_sums(columns.clone());
            if variant == Variant::Borel {
                c = c.upper_triangular();
            }
            if let Some(rows) = rows {
                c = c.with_row_sums(rows);
            }
            enumerate_weight_matrices(n, r, &c).expect("sizes agree")
        })
    }

    /// Chains `(omega_1, ..., omega_k)` ending at `lambda`.
    fn chains(&mut self, k: usize) -> Vec<Vec<WeightMatrix>> {
        let mut partial: Vec<Vec<WeightMatrix>> = vec![Vec::new()];
        for _ in 0..k {
            let mut next = Vec::new();
            for tail in partial {
                let columns = tail.first().map_or_else(|| self.lambda.clone(), |m| m.row_sums());
                for m in self.block(&columns).to_vec() {
                    let mut chain = Vec::with_capacity(tail.len() + 1);
                    chain.push(m);
                    chain.extend(tail.iter().cloned());
                    next.push(chain);
                }
            }
            partial = next;
        }
        partial
    }

    /// Basis in degree `k`, canonical (descending lexicographic) order.
    pub fn basis(&mut self, k: usize) -> &[BarTuple] {
        while self.bases.len() <= k {
            let degree = self.bases.len();
            let mut tuples = Vec::new();
            for chain in self.chains(degree) {
                let columns = chain.first().map_or_else(|| self.lambda.clone(), |m| m.row_sums());
                for head in self.heads(&columns).to_vec() {
                    let mut matrices = Vec::with_capacity(degree + 1);
                    matrices.push(head);
                    matrices.extend(chain.iter().cloned());
                    tuples.push(BarTuple { matrices });
                }
            }
            tuples.sort_by(|a, b| b.cmp(a));
            self.bases.push(tuples);
        }
        &self.bases[k]
    }

    /// Highest degree with a nonempty basis.
    pub fn top_degree(&mut self) -> usize {
        let mut k = 0;
        while !self.basis(k + 1).is_empty() {
            k += 1;
        }
        k
    }

    /// `d_k` for `k >= 1`: the alternating sum of adjacent products.
    pub fn differential(&mut self, k: usize) -> Result<IntMatrix> {
        let mut table = std::mem::take(&mut self.products);
        let result = self.differential_with(k, |a, b| table.product(a, b).cloned());
        self.products = table;
        result
    }

    /// `d_k` with the products `xi_a xi_b` supplied by `product`, so that the
    /// matrices can be recomputed from an independent multiplication.
    pub fn differential_with<F>(&mut self, k: usize, mut product: F) -> Result<IntMatrix>
    where
        F: FnMut(&WeightMatrix, &WeightMatrix) -> Result<AlgebraElement>,
    {
        if k == 0 {
            return Err(SchurError::DegreeOutOfRange(0));
        }
        let source = self.basis(k).to_vec();
        let target = self.basis(k - 1).to_vec();
        let position: HashMap<&BarTuple, usize> = target.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut triplets = Vec::new();
        for (col, tuple) in source.iter().enumerate() {
            for t in 0..k {
                let sign = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let m = tuple.matrices();
                let terms = product(&m[t], &m[t + 1])?;
                for (tau, c) in terms.terms() {
                    let mut merged = Vec::with_capacity(k);
                    merged.extend(m[..t].iter().cloned());
                    merged.push(tau.clone());
                    merged.extend(m[t + 2..].iter().cloned());
                    let key = BarTuple { matrices: merged };
                    let row = *position.get(&key).ok_or_else(|| {
                        SchurError::NotInSpan(format!("product term {tau} leaves the bar basis"))
                    })?;
                    triplets.push((row, col, &sign * c));
                }
            }
        }
        IntMatrix::from_triplets(target.len(), source.len(), triplets)
    }

    /// `s_k : B_k -> B_{k+1}`: zero on tuples with diagonal head, otherwise
    /// `(omega_0, ...) -> (diag(omega_0^2), omega_0, ...)`.
    pub fn homotopy(&mut self, k: usize) -> Result<IntMatrix> {
        if self.variant != Variant::Borel {
            return Err(SchurError::NotUpperTriangular);
        }
        let source = self.basis(k).to_vec();
        let target = self.basis(k + 1).to_vec();
        let position: HashMap<&BarTuple, usize> = target.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut triplets = Vec::new();
        for (col, tuple) in source.iter().enumerate() {
            let head = tuple.head();
            if head.is_diagonal() {
                continue;
            }
            let mut matrices = Vec::with_capacity(k + 2);
            matrices.push(WeightMatrix::diag(&head.row_sums()));
            matrices.extend(tuple.matrices().iter().cloned());
            let key = BarTuple { matrices };
            let row = *position
                .get(&key)
                .ok_or_else(|| SchurError::NotInSpan("homotopy image outside the basis".into()))?;
            triplets.push((row, col, BigInt::one()));
        }
        IntMatrix::from_triplets(target.len(), source.len(), triplets)
    }

    /// Augmentation `d_0 : B_0 -> R_lambda`, `(omega_0) -> [omega_0 = diag(lambda)]`.
    pub fn augmentation(&mut self) -> Result<IntMatrix> {
        let diag = WeightMatrix::diag(&self.lambda);
        let t: Vec<_> = self
            .basis(0)
            .iter()
            .enumerate()
            .filter(|(_, b)| *b.head() == diag)
            .map(|(j, _)| (0, j, BigInt::one()))
            .collect();
        let cols = self.basis(0).len();
        IntMatrix::from_triplets(1, cols, t)
    }

    /// `s_{-1} : R_lambda -> B_0`, `1 -> (diag(lambda))`.
    pub fn unit_homotopy(&mut self) -> Result<IntMatrix> {
        let key = BarTuple { matrices: vec![WeightMatrix::diag(&self.lambda)] };
        let basis = self.basis(0);
        let t: Vec<_> = basis.iter().position(|b| *b == key).map(|i| (i, 0, BigInt::one())).into_iter().collect();
        IntMatrix::from_triplets(basis.len(), 1, t)
    }

    fn labels(&mut self, k: usize) -> Vec<BasisLabel> {
        self.basis(k).iter().cloned().map(BarTuple::into_label).collect()
    }

    /// Degrees `0..=top` with differentials `d_1..d_top`.
    fn unaugmented(&mut self) -> Result<(Vec<Vec<BasisLabel>>, Vec<IntMatrix>)> {
        let top = self.top_degree();
        let bases = (0..=top).map(|k| self.labels(k)).collect();
        let differentials = (1..=top).map(|k| self.differential(k)).collect::<Result<Vec<_>>>()?;
        Ok((bases, differentials))
    }
}

/// Degree `k` basis in canonical order.
pub fn enumerate_bar_basis(lambda: &Composition, k: usize, variant: Variant) -> Result<Vec<BarTuple>> {
    if k > max_chain_length(lambda.n(), lambda.r()) {
        return Ok(Vec::new());
    }
    Ok(BarBuilder::new(lambda, variant)?.basis(k).to_vec())
}

pub fn differential(lambda: &Composition, k: usize, variant: Variant) -> Result<IntMatrix> {
    BarBuilder::new(lambda, variant)?.differential(k)
}

pub fn homotopy(lambda: &Composition, k: usize) -> Result<IntMatrix> {
    BarBuilder::new(lambda, Variant::Borel)?.homotopy(k)
}

fn ensure_complex(x: ChainComplex) -> Result<ChainComplex> {
    match x.boundary_failures().first() {
        Some(&k) => Err(SchurError::NotAComplex(k)),
        None => Ok(x),
    }
}

/// The augmented Borel resolution: degree `-1` is `R_lambda`, with the
/// contracting homotopy attached.
pub fn build_borel_resolution(lambda: &Composition) -> Result<ChainComplex> {
    let mut builder = BarBuilder::new(lambda, Variant::Borel)?;
    let (mut bases, differentials) = builder.unaugmented()?;
    let top = bases.len() - 1;
    bases.insert(0, vec![BasisLabel::Generator]);
    let mut all = vec![builder.augmentation()?];
    all.extend(differentials);
    let mut homotopies = vec![builder.unit_homotopy()?];
    for k in 0..=top {
        homotopies.push(builder.homotopy(k)?);
    }
    ensure_complex(ChainComplex::new(-1, bases, all)?.with_homotopies(homotopies)?)
}

/// The induced complex over the full Schur algebra, degrees `>= 0`.
pub fn build_weyl_resolution(lambda: &Composition) -> Result<ChainComplex> {
    let (bases, differentials) = BarBuilder::new(lambda, Variant::Full)?.unaugmented()?;
    ensure_complex(ChainComplex::new(0, bases, differentials)?)
}

/// The induced complex restricted to tuples whose head has row sums `rows`.
pub fn build_weyl_resolution_with_head_rows(lambda: &Composition, rows: &Composition) -> Result<ChainComplex> {
    let mut builder = BarBuilder::new(lambda, Variant::Full)?.with_head_row_sums(rows.clone())?;
    // The restricted basis may vanish below the unrestricted top degree, so
    // use the unrestricted length to keep both complexes aligned.
    let top = BarBuilder::new(lambda, Variant::Full)?.top_degree();
    let bases = (0..=top).map(|k| builder.labels(k)).collect();
    let differentials = (1..=top).map(|k| builder.differential(k)).collect::<Result<Vec<_>>>()?;
    ensure_complex(ChainComplex::new(0, bases, differentials)?)
}
