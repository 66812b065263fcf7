//! Tableaux, the homomorphisms `theta_T` between permutation modules, and the
//! complex of permutation-module homomorphisms whose cokernel in degree zero
//! is the co-Specht module.
//!
//! The permutation module `M^mu` has basis the row-semistandard tableaux of
//! shape `mu` and content `delta`, with `sigma` acting by relabeling entries
//! and re-sorting rows. For `T` of shape `lambda` and content `mu`,
//! `theta_T : M^mu -> M^lambda` sends `t` to the sum of all `s` whose row `a`
//! contains exactly `omega(T)_{ab}` entries of row `b` of `t`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::{enumerate_dominance_chains, Composition, WeightMatrix};
use crate::complex::{BasisLabel, ChainComplex};
use crate::error::{Result, SchurError};
use crate::homology::{homology_all, HomologyGroup};
use crate::matrix::IntMatrix;
use crate::schur_functor::{build_schur_functor_complex, delta, Permutation};

/// A filling of the diagram of `shape`; row `s` has `shape[s]` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    shape: Composition,
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(SchurError::InvalidTableau("entries must be positive".into()));
        }
        let shape = Composition::new(rows.iter().map(|r| r.len() as u32).collect());
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_row_semistandard(&self) -> bool {
        self.rows.iter().all(|row| row.windows(2).all(|w| w[0] <= w[1]))
    }

    /// `c(T)_t`, the number of entries equal to `t`, for `t = 1..=n`.
    pub fn content(&self, n: usize) -> Result<Composition> {
        let mut parts = vec![0u32; n];
        for &x in self.rows.iter().flatten() {
            if x as usize > n {
                return Err(SchurError::InvalidTableau(format!("entry {x} exceeds {n}")));
            }
            parts[x as usize - 1] += 1;
        }
        Ok(Composition::new(parts))
    }

    /// `r(sigma t)`: relabel every entry by `sigma` and sort each row.
    pub fn act(&self, sigma: &Permutation) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut new: Vec<u32> = row.iter().map(|&x| sigma.apply(x)).collect();
                new.sort_unstable();
                new
            })
            .collect();
        Tableau { shape: self.shape.clone(), rows }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", rows.join("|"))
    }
}

/// Row-semistandard tableaux of shape `lambda` and content `mu`, filled row
/// by row with weakly increasing sequences. Ordered by their matrices,
/// descending.
pub fn row_semistandard_tableaux(lambda: &Composition, mu: &Composition) -> Result<Vec<Tableau>> {
    if lambda.n() != mu.n() || lambda.r() != mu.r() {
        return Err(SchurError::SizeMismatch(format!("{lambda} and {mu}")));
    }
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut left = mu.parts().to_vec();
    fn fill_row(
        lambda: &[u32],
        row: usize,
        current: &mut Vec<u32>,
        rows: &mut Vec<Vec<u32>>,
        left: &mut Vec<u32>,
        out: &mut Vec<Tableau>,
    ) {
        if row == lambda.len() {
            out.push(Tableau::new(rows.clone()).expect("entries are positive"));
            return;
        }
        if current.len() == lambda[row] as usize {
            rows.push(std::mem::take(current));
            fill_row(lambda, row + 1, &mut Vec::new(), rows, left, out);
            *current = rows.pop().expect("just pushed");
            return;
        }
        let start = current.last().copied().unwrap_or(1);
        for x in start..=left.len() as u32 {
            if left[x as usize - 1] == 0 {
                continue;
            }
            left[x as usize - 1] -= 1;
            current.push(x);
            fill_row(lambda, row, current, rows, left, out);
            current.pop();
            left[x as usize - 1] += 1;
        }
    }
    fill_row(lambda.parts(), 0, &mut Vec::new(), &mut rows, &mut left, &mut out);
    let n = lambda.n();
    out.sort_by_cached_key(|t| std::cmp::Reverse(matrix_of_tableau(t, n).expect("valid by construction")));
    Ok(out)
}

/// `omega(T)_{st}` = number of entries `t` in row `s`.
pub fn matrix_of_tableau(t: &Tableau, n: usize) -> Result<WeightMatrix> {
    if !t.is_row_semistandard() {
        return Err(SchurError::InvalidTableau(format!("{t} is not row semistandard")));
    }
    if t.rows.len() != n {
        return Err(SchurError::SizeMismatch(format!("{t} does not have {n} rows")));
    }
    let mut entries = vec![0u32; n * n];
    for (s, row) in t.rows.iter().enumerate() {
        for &x in row {
            if x as usize > n {
                return Err(SchurError::InvalidTableau(format!("entry {x} exceeds {n}")));
            }
            entries[s * n + x as usize - 1] += 1;
        }
    }
    WeightMatrix::new(n, entries)
}

/// The tableau whose row `s` is `1^{omega_s1} ... n^{omega_sn}`.
pub fn tableau_of_matrix(omega: &WeightMatrix) -> Tableau {
    let n = omega.n();
    let rows = (0..n)
        .map(|s| (0..n).flat_map(|t| std::iter::repeat_n(t as u32 + 1, omega.get(s, t) as usize)).collect())
        .collect();
    Tableau::new(rows).expect("entries are positive")
}

/// Basis of `M^mu`: row-semistandard tableaux of shape `mu`, content `delta`.
pub fn permutation_module_basis(mu: &Composition) -> Result<Vec<Tableau>> {
    row_semistandard_tableaux(mu, &delta(mu.n(), mu.r())?)
}

/// Matrix of `sigma` acting on `M^mu`.
pub fn permutation_action(sigma: &Permutation, mu: &Composition) -> Result<IntMatrix> {
    let basis = permutation_module_basis(mu)?;
    let position: HashMap<&Tableau, usize> = basis.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let t = basis.iter().enumerate().map(|(j, tab)| (position[&tab.act(sigma)], j, BigInt::one()));
    IntMatrix::from_triplets(basis.len(), basis.len(), t)
}

fn overlap_matrix(s: &Tableau, t: &Tableau, n: usize) -> Vec<u32> {
    let mut row_of = HashMap::new();
    for (b, row) in t.rows.iter().enumerate() {
        for &x in row {
            row_of.insert(x, b);
        }
    }
    let mut out = vec![0u32; n * n];
    for (a, row) in s.rows.iter().enumerate() {
        for x in row {
            out[a * n + row_of[x]] += 1;
        }
    }
    out
}

/// Matrix of `theta_T : M^mu -> M^lambda` where `T` has shape `lambda` and
/// content `mu`, on the bases of [`permutation_module_basis`].
pub fn theta_map(t: &Tableau, lambda: &Composition, mu: &Composition) -> Result<IntMatrix> {
    let n = lambda.n();
    if t.shape() != lambda || &t.content(n)? != mu {
        return Err(SchurError::MarginalMismatch(format!("{t} is not of shape {lambda} and content {mu}")));
    }
    let omega = matrix_of_tableau(t, n)?;
    let target = permutation_module_basis(lambda)?;
    let source = permutation_module_basis(mu)?;
    let mut triplets = Vec::new();
    for (j, b) in source.iter().enumerate() {
        for (i, a) in target.iter().enumerate() {
            if overlap_matrix(a, b, n) == omega.entries() {
                triplets.push((i, j, BigInt::one()));
            }
        }
    }
    IntMatrix::from_triplets(target.len(), source.len(), triplets)
}

/// Expresses a homomorphism `M^mu -> M^lambda` in the basis
/// `{theta_T : T in T^rs(lambda, mu)}`. The `theta_T` have disjoint supports,
/// so each coefficient is read off one support entry and the sum is checked.
pub fn expand_in_theta_basis(
    f: &IntMatrix,
    lambda: &Composition,
    mu: &Composition,
) -> Result<Vec<(Tableau, BigInt)>> {
    let mut out = Vec::new();
    let mut rebuilt = IntMatrix::zeros(f.rows(), f.cols());
    for t in row_semistandard_tableaux(lambda, mu)? {
        let theta = theta_map(&t, lambda, mu)?;
        if (theta.rows(), theta.cols()) != (f.rows(), f.cols()) {
            return Err(SchurError::SizeMismatch("homomorphism has the wrong shape".into()));
        }
        let (i, j, _) = theta.triplets().into_iter().next().expect("theta_T is nonzero");
        let c = f.get(i, j);
        if !c.is_zero() {
            for (a, b, _) in theta.triplets() {
                rebuilt.add_to(a, b, &c);
            }
            out.push((t, c));
        }
    }
    if &rebuilt != f {
        return Err(SchurError::NotInSpan("map is not a combination of theta_T".into()));
    }
    Ok(out)
}

/// Theta matrices and permutation-module bases for one `lambda`, memoized.
struct BhCache {
    n: usize,
    bases: HashMap<Composition, Vec<Tableau>>,
    thetas: HashMap<(Tableau, Composition), IntMatrix>,
    expansions: HashMap<(Tableau, Tableau), Vec<(Tableau, BigInt)>>,
}

impl BhCache {
    fn basis(&mut self, mu: &Composition) -> Result<&Vec<Tableau>> {
        if !self.bases.contains_key(mu) {
            let b = permutation_module_basis(mu)?;
            self.bases.insert(mu.clone(), b);
        }
        Ok(&self.bases[mu])
    }

    fn content(&self, t: &Tableau) -> Composition {
        t.content(self.n).expect("entries bounded by n")
    }

    fn theta(&mut self, t: &Tableau) -> Result<&IntMatrix> {
        let key = (t.clone(), self.content(t));
        if !self.thetas.contains_key(&key) {
            let m = theta_map(t, t.shape(), &key.1)?;
            self.thetas.insert(key.clone(), m);
        }
        Ok(&self.thetas[&key])
    }

    /// `theta_a o theta_b` in the theta basis.
    fn compose(&mut self, a: &Tableau, b: &Tableau) -> Result<Vec<(Tableau, BigInt)>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.expansions.get(&key) {
            return Ok(v.clone());
        }
        let product = self.theta(a)?.clone().mul(self.theta(b)?)?;
        let expansion = expand_in_theta_basis(&product, a.shape(), &self.content(b))?;
        self.expansions.insert(key, expansion.clone());
        Ok(expansion)
    }
}

fn is_upper(t: &Tableau, n: usize) -> bool {
    matrix_of_tableau(t, n).map(|m| m.is_upper_triangular()).unwrap_or(false)
}

/// Degree `k` basis: a tableau `t` of shape `mu_1`, content `delta` (standing
/// for the dual functional), followed by `T_1, ..., T_k` with `T_i` of shape
/// `mu_i`, content `mu_{i+1}`, and `omega(T_i)` upper triangular, over all
/// chains `mu_1 > ... > mu_k > lambda`.
fn bh_basis(lambda: &Composition, k: usize, cache: &mut BhCache) -> Result<Vec<Vec<Tableau>>> {
    let n = lambda.n();
    let mut out = Vec::new();
    for chain in enumerate_dominance_chains(lambda, k) {
        let mut shapes = chain.clone();
        shapes.push(lambda.clone());
        let mut partial: Vec<Vec<Tableau>> = vec![Vec::new()];
        for i in 0..k {
            let options: Vec<Tableau> = row_semistandard_tableaux(&shapes[i], &shapes[i + 1])?
                .into_iter()
                .filter(|t| is_upper(t, n))
                .collect();
            partial = partial
                .into_iter()
                .flat_map(|p| {
                    options.iter().map(move |t| {
                        let mut q = p.clone();
                        q.push(t.clone());
                        q
                    })
                })
                .collect();
        }
        let functionals = cache.basis(&shapes[0])?.clone();
        for tail in partial {
            for f in &functionals {
                let mut label = vec![f.clone()];
                label.extend(tail.iter().cloned());
                out.push(label);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The complex with degree `k` spanned by `t^* (x) theta_{T_1} (x) ... (x)
/// theta_{T_k}`, differential `sum_{i<k} (-1)^i f_0 (x) ... (x) f_i f_{i+1}
/// (x) ...`. Degree zero is `Hom(M^lambda, R)`; the co-Specht module is its
/// cokernel.
pub fn build_bh_complex(lambda: &Composition) -> Result<ChainComplex> {
    if !lambda.is_partition() {
        return Err(SchurError::InvalidComposition(format!("{lambda} is not a partition")));
    }
    let n = lambda.n();
    delta(n, lambda.r())?;
    let mut cache = BhCache { n, bases: HashMap::new(), thetas: HashMap::new(), expansions: HashMap::new() };
    let mut bases = vec![bh_basis(lambda, 0, &mut cache)?];
    loop {
        let next = bh_basis(lambda, bases.len(), &mut cache)?;
        if next.is_empty() {
            break;
        }
        bases.push(next);
    }
    let mut differentials = Vec::new();
    for k in 1..bases.len() {
        let position: HashMap<&Vec<Tableau>, usize> =
            bases[k - 1].iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut triplets = Vec::new();
        for (col, label) in bases[k].iter().enumerate() {
            for i in 0..k {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let merged: Vec<(Tableau, BigInt)> = if i == 0 {
                    // t^* o theta is row t of the theta matrix, read in the dual basis.
                    let functional = &label[0];
                    let row = cache.basis(label[1].shape())?.iter().position(|b| b == functional).expect("in basis");
                    let theta = cache.theta(&label[1])?.clone();
                    let source = cache.basis(&cache.content(&label[1]))?.clone();
                    theta
                        .triplets()
                        .into_iter()
                        .filter(|(a, _, _)| *a == row)
                        .map(|(_, b, v)| (source[b].clone(), v))
                        .collect()
                } else {
                    cache.compose(&label[i], &label[i + 1])?
                };
                for (t, c) in merged {
                    let mut key: Vec<Tableau> = label[..i].to_vec();
                    key.push(t);
                    key.extend(label[i + 2..].iter().cloned());
                    let row = *position
                        .get(&key)
                        .ok_or_else(|| SchurError::NotInSpan("composite leaves the upper triangular basis".into()))?;
                    triplets.push((row, col, &sign * c));
                }
            }
        }
        differentials.push(IntMatrix::from_triplets(bases[k - 1].len(), bases[k].len(), triplets)?);
    }
    let labels = bases.into_iter().map(|b| b.into_iter().map(BasisLabel::Tableaux).collect()).collect();
    let x = ChainComplex::new(0, labels, differentials)?;
    match x.boundary_failures().first() {
        Some(&k) => Err(SchurError::NotAComplex(k)),
        None => Ok(x),
    }
}

/// The dual basis functional corresponding to a head `omega_0` with row sums
/// `delta`: the coefficient of `t_delta` in `theta_{T(omega_0)}(m)` is one for
/// exactly one basis tableau `t`, which is returned.
pub fn functional_of_head(omega0: &WeightMatrix) -> Result<Tableau> {
    let n = omega0.n();
    let d = delta(n, omega0.r())?;
    if omega0.row_sums() != d {
        return Err(SchurError::MarginalMismatch(format!("{omega0} does not have row sums {d}")));
    }
    let mu = omega0.column_sums();
    let theta = theta_map(&tableau_of_matrix(omega0), &d, &mu)?;
    let target = permutation_module_basis(&d)?;
    let t_delta = Tableau::new((0..n).map(|s| if s < omega0.r() as usize { vec![s as u32 + 1] } else { vec![] }).collect())?;
    let row = target.iter().position(|t| *t == t_delta).expect("t_delta is a basis element");
    let hits: Vec<usize> = theta.triplets().into_iter().filter(|(a, _, _)| *a == row).map(|(_, b, _)| b).collect();
    match hits.as_slice() {
        [b] => Ok(permutation_module_basis(&mu)?[*b].clone()),
        _ => Err(SchurError::NotInSpan(format!("head {omega0} does not give a basis functional"))),
    }
}

/// Outcome of comparing two complexes under a degreewise basis map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    /// `(degree, rank on each side)`.
    pub ranks: Vec<(i64, usize, usize)>,
    /// Degrees whose basis map is not a bijection.
    pub bijection_failures: Vec<i64>,
    /// Degrees `k` whose `d_k` disagrees under the map.
    pub differential_failures: Vec<i64>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.bijection_failures.is_empty() && self.differential_failures.is_empty()
    }
}

/// Compares `x` and `y` when basis element `i` of `x` in degree `k` is sent
/// to `map[k - lo][i]` in `y`.
pub fn compare_under_bijection(x: &ChainComplex, y: &ChainComplex, map: &[Vec<usize>]) -> ComparisonReport {
    let mut report = ComparisonReport { ranks: Vec::new(), bijection_failures: Vec::new(), differential_failures: Vec::new() };
    let degrees: Vec<i64> = (x.lo().min(y.lo())..=x.hi().max(y.hi())).collect();
    let image = |k: i64| map.get((k - x.lo()) as usize).cloned().unwrap_or_default();
    for &k in &degrees {
        report.ranks.push((k, x.rank(k), y.rank(k)));
        let m = image(k);
        let mut seen = vec![false; y.rank(k)];
        let ok = m.len() == x.rank(k) && x.rank(k) == y.rank(k) && m.iter().all(|&j| j < seen.len() && !std::mem::replace(&mut seen[j], true));
        if !ok {
            report.bijection_failures.push(k);
        }
    }
    for &k in &degrees {
        if report.bijection_failures.contains(&k) || report.bijection_failures.contains(&(k - 1)) {
            continue;
        }
        let (src, dst) = (image(k), image(k - 1));
        let dx = x.differential(k);
        let dy = y.differential(k);
        let moved = IntMatrix::from_triplets(dy.rows(), dy.cols(), dx.triplets().into_iter().map(|(i, j, v)| (dst[i], src[j], v)))
            .expect("indices come from a bijection");
        if moved != dy {
            report.differential_failures.push(k);
        }
    }
    report
}

/// Basis map from the Schur functor complex to the permutation-module
/// complex: the head goes to its functional, every other `omega_i` to
/// `T(omega_i)`.
pub fn schur_functor_bijection(fx: &ChainComplex, bh: &ChainComplex) -> Result<Vec<Vec<usize>>> {
    let mut functionals: HashMap<WeightMatrix, Tableau> = HashMap::new();
    let mut out = Vec::new();
    for k in fx.degrees() {
        let position: HashMap<&BasisLabel, usize> = bh.basis(k).iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut degree_map = Vec::new();
        for label in fx.basis(k) {
            let BasisLabel::Matrices(ms) = label else {
                return Err(SchurError::NotInSpan("expected bar tuple labels".into()));
            };
            let head = match functionals.get(&ms[0]) {
                Some(t) => t.clone(),
                None => {
                    let t = functional_of_head(&ms[0])?;
                    functionals.insert(ms[0].clone(), t.clone());
                    t
                }
            };
            let mut tabs = vec![head];
            tabs.extend(ms[1..].iter().map(tableau_of_matrix));
            let image = BasisLabel::Tableaux(tabs);
            let j = *position
                .get(&image)
                .ok_or_else(|| SchurError::NotInSpan(format!("{image} is not a basis element in degree {k}")))?;
            degree_map.push(j);
        }
        out.push(degree_map);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BhComparison {
    pub lambda: Composition,
    pub report: ComparisonReport,
    /// Homology of the Schur functor side and of the permutation-module side.
    pub schur_functor_homology: Vec<(i64, HomologyGroup)>,
    pub bh_homology: Vec<(i64, HomologyGroup)>,
}

impl BhComparison {
    /// Both sides exact in positive degrees, with isomorphic torsion-free
    /// cokernels in degree zero.
    pub fn passed(&self) -> bool {
        let exact = |h: &[(i64, HomologyGroup)]| h.iter().all(|(k, g)| if *k == 0 { g.is_torsion_free() } else { g.is_zero() });
        self.report.passed()
            && exact(&self.schur_functor_homology)
            && exact(&self.bh_homology)
            && self.co_specht_rank() == self.bh_homology.first().map(|(_, g)| g.free_rank)
    }

    /// Free rank of the degree-zero cokernel on the Schur functor side.
    pub fn co_specht_rank(&self) -> Option<usize> {
        self.schur_functor_homology.first().map(|(_, g)| g.free_rank)
    }
}

/// Builds both complexes for the partition `lambda` (with `n = r`) and
/// compares them entrywise under [`schur_functor_bijection`].
pub fn compare_with_schur_functor(lambda: &Composition) -> Result<BhComparison> {
    let fx = build_schur_functor_complex(lambda)?;
    let bh = build_bh_complex(lambda)?;
    // Trailing empty degrees of the functor side are dropped by the
    // comparison; the permutation-module side stops at its last nonzero one.
    let map = schur_functor_bijection(&trim(&fx)?, &bh)?;
    let report = compare_under_bijection(&trim(&fx)?, &bh, &map);
    Ok(BhComparison {
        lambda: lambda.clone(),
        report,
        schur_functor_homology: homology_all(&fx)?,
        bh_homology: homology_all(&bh)?,
    })
}

/// Drops empty top degrees.
fn trim(x: &ChainComplex) -> Result<ChainComplex> {
    let mut top = x.hi();
    while top > x.lo() && x.rank(top) == 0 {
        top -= 1;
    }
    let keep: Vec<Vec<usize>> = x.degrees().map(|k| if k <= top { (0..x.rank(k)).collect() } else { Vec::new() }).collect();
    let restricted = x.restrict(&keep)?;
    let count = (top - x.lo() + 1) as usize;
    let bases = (0..count).map(|i| restricted.basis(x.lo() + i as i64).to_vec()).collect();
    let differentials = (1..count).map(|i| restricted.differential(x.lo() + i as i64)).collect();
    ChainComplex::new(x.lo(), bases, differentials)
}
