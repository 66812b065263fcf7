//! Index families used throughout the crate.
//!
//! Compositions of `r` into `n` parts, multi-indices in `{1..n}^r`, weight
//! matrices (`n x n`, total `r`) and weight tensors (`n x n x n`, total `r`),
//! together with their marginals, the dominance order and the degree that
//! filters the Borel subalgebra.
//!
//! Every enumerator returns its items in the canonical order: descending
//! lexicographic order on the flattened (row-major) entry sequence, so
//! `(2,0)` comes before `(1,1)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Result, SchurError};

/// A sequence of `n` non-negative integers; a partition when weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    /// Parses a comma separated list such as `2,1,0`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(SchurError::Parse(format!("empty composition {text:?}")));
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| SchurError::Parse(format!("bad part {p:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Composition { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.len()
    }

    pub fn r(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    fn prefix_sums(&self) -> impl Iterator<Item = u32> + '_ {
        self.parts.iter().scan(0u32, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
    }

    /// Dominance order: every prefix sum of `self` is at least the
    /// corresponding prefix sum of `other`. The strict variant also requires
    /// `self != other`.
    pub fn dominates(&self, other: &Composition, strict: bool) -> Result<bool> {
        if self.n() != other.n() || self.r() != other.r() {
            return Err(SchurError::SizeMismatch(format!(
                "cannot compare {self} and {other} in the dominance order"
            )));
        }
        let weak = self.prefix_sums().zip(other.prefix_sums()).all(|(a, b)| a >= b);
        Ok(weak && !(strict && self == other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (idx, p) in self.parts.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Element of `{1..n}^r`. Entries are stored with their 1-based values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    n: usize,
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&e| e == 0 || e as usize > n) {
            return Err(SchurError::SizeMismatch(format!(
                "multi-index entry {bad} outside 1..={n}"
            )));
        }
        Ok(MultiIndex { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Right action `(x_1..x_r) sigma = (x_{sigma(1)} .. x_{sigma(r)})`;
    /// `images[q]` is the 1-based image of `q + 1`.
    pub fn permuted(&self, images: &[u32]) -> MultiIndex {
        MultiIndex {
            n: self.n,
            entries: images.iter().map(|&q| self.entries[q as usize - 1]).collect(),
        }
    }

    /// All of `I(n, r)` in lexicographic order.
    pub fn all(n: usize, r: usize) -> Vec<MultiIndex> {
        let total = (n as u128).pow(r as u32) as usize;
        let mut out = Vec::with_capacity(total);
        let mut current = vec![1u32; r];
        for _ in 0..total {
            out.push(MultiIndex { n, entries: current.clone() });
            for pos in (0..r).rev() {
                if (current[pos] as usize) < n {
                    current[pos] += 1;
                    break;
                }
                current[pos] = 1;
            }
        }
        out
    }

    /// The multi-indices of weight `mu`, in lexicographic order.
    pub fn of_weight(mu: &Composition) -> Vec<MultiIndex> {
        let n = mu.n();
        let r = mu.r() as usize;
        let mut out = Vec::new();
        let mut remaining = mu.parts().to_vec();
        let mut current = Vec::with_capacity(r);
        fn rec(
            n: usize,
            r: usize,
            remaining: &mut [u32],
            current: &mut Vec<u32>,
            out: &mut Vec<MultiIndex>,
        ) {
            if current.len() == r {
                out.push(MultiIndex { n, entries: current.clone() });
                return;
            }
            for x in 0..n {
                if remaining[x] > 0 {
                    remaining[x] -= 1;
                    current.push(x as u32 + 1);
                    rec(n, r, remaining, current, out);
                    current.pop();
                    remaining[x] += 1;
                }
            }
        }
        rec(n, r, &mut remaining, &mut current, &mut out);
        out
    }
}

/// `wt(u)_x` counts the positions holding `x`.
pub fn weight(u: &MultiIndex) -> Composition {
    let mut parts = vec![0u32; u.n];
    for &e in &u.entries {
        parts[e as usize - 1] += 1;
    }
    Composition::new(parts)
}

/// Weight of the pair `(i, j)` viewed as a word in `(n x n)^r`.
pub fn pair_weight(i: &MultiIndex, j: &MultiIndex) -> Result<WeightMatrix> {
    if i.r() != j.r() || i.n != j.n {
        return Err(SchurError::SizeMismatch("multi-index lengths differ".into()));
    }
    let n = i.n;
    let mut entries = vec![0u32; n * n];
    for (&a, &b) in i.entries.iter().zip(&j.entries) {
        entries[(a as usize - 1) * n + (b as usize - 1)] += 1;
    }
    Ok(WeightMatrix { n, entries })
}

/// Weight of the triple `(i, j, k)` viewed as a word in `(n x n x n)^r`.
pub fn triple_weight(i: &MultiIndex, j: &MultiIndex, k: &MultiIndex) -> Result<WeightTensor> {
    if i.r() != j.r() || j.r() != k.r() || i.n != j.n || j.n != k.n {
        return Err(SchurError::SizeMismatch("multi-index lengths differ".into()));
    }
    let n = i.n;
    let mut entries = vec![0u32; n * n * n];
    for ((&a, &b), &c) in i.entries.iter().zip(&j.entries).zip(&k.entries) {
        entries[((a as usize - 1) * n + (b as usize - 1)) * n + (c as usize - 1)] += 1;
    }
    Ok(WeightTensor { n, entries })
}

/// An `n x n` matrix of non-negative integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl WeightMatrix {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(SchurError::SizeMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(WeightMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(SchurError::SizeMismatch("weight matrix must be square".into()));
        }
        Ok(WeightMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diag(lambda: &Composition) -> Self {
        let n = lambda.n();
        let mut entries = vec![0u32; n * n];
        for (s, &p) in lambda.parts().iter().enumerate() {
            entries[s * n + s] = p;
        }
        WeightMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// Entry at 0-based position `(s, t)`.
    pub fn get(&self, s: usize, t: usize) -> u32 {
        self.entries[s * self.n + t]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n.max(1)).map(|c| c.to_vec()).take(self.n).collect()
    }

    /// Column sums, `(omega^1)_t = sum_s omega_st`.
    pub fn column_sums(&self) -> Composition {
        let n = self.n;
        Composition::new((0..n).map(|t| (0..n).map(|s| self.get(s, t)).sum()).collect())
    }

    /// Row sums, `(omega^2)_s = sum_t omega_st`.
    pub fn row_sums(&self) -> Composition {
        let n = self.n;
        Composition::new((0..n).map(|s| (0..n).map(|t| self.get(s, t)).sum()).collect())
    }

    pub fn transpose(&self) -> WeightMatrix {
        let n = self.n;
        let mut entries = vec![0u32; n * n];
        for s in 0..n {
            for t in 0..n {
                entries[t * n + s] = self.get(s, t);
            }
        }
        WeightMatrix { n, entries }
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|s| (0..s).all(|t| self.get(s, t) == 0))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|s| (0..self.n).all(|t| s == t || self.get(s, t) == 0))
    }

    /// `sum_{k <= l} (l - k) omega_kl`, defined for upper triangular matrices.
    pub fn filtration_degree(&self) -> Result<u32> {
        if !self.is_upper_triangular() {
            return Err(SchurError::NotUpperTriangular);
        }
        let n = self.n;
        Ok((0..n)
            .flat_map(|k| (k..n).map(move |l| (k, l)))
            .map(|(k, l)| (l - k) as u32 * self.get(k, l))
            .sum())
    }

    /// Number of pairs `(i, j)` in the orbit indexed by this matrix.
    pub fn orbit_size(&self) -> BigUint {
        multinomial(&self.entries)
    }

    /// Lexicographically smallest pair `(i, j)` with `wt(i, j) = self`.
    pub fn representative(&self) -> (MultiIndex, MultiIndex) {
        let n = self.n;
        let mut i = Vec::new();
        let mut j = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for _ in 0..self.get(s, t) {
                    i.push(s as u32 + 1);
                    j.push(t as u32 + 1);
                }
            }
        }
        (MultiIndex { n, entries: i }, MultiIndex { n, entries: j })
    }
}

impl fmt::Display for WeightMatrix {
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

/// An `n x n x n` tensor of non-negative integers, index order `(s, t, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightTensor {
    n: usize,
    entries: Vec<u32>,
}

impl WeightTensor {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n * n {
            return Err(SchurError::SizeMismatch(format!(
                "expected {} entries for an {n}x{n}x{n} tensor",
                n * n * n
            )));
        }
        Ok(WeightTensor { n, entries })
    }

    /// Tensor with the listed 0-based positions set to the given values.
    pub fn from_entries(n: usize, nonzero: &[((usize, usize, usize), u32)]) -> Self {
        let mut entries = vec![0u32; n * n * n];
        for &((s, t, q), v) in nonzero {
            entries[(s * n + t) * n + q] = v;
        }
        WeightTensor { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn get(&self, s: usize, t: usize, q: usize) -> u32 {
        self.entries[(s * self.n + t) * self.n + q]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn collapse(&self, keep: impl Fn(usize, usize, usize) -> (usize, usize)) -> WeightMatrix {
        let n = self.n;
        let mut entries = vec![0u32; n * n];
        for s in 0..n {
            for t in 0..n {
                for q in 0..n {
                    let (a, b) = keep(s, t, q);
                    entries[a * n + b] += self.get(s, t, q);
                }
            }
        }
        WeightMatrix { n, entries }
    }

    /// `(theta^1)_tq = sum_s theta_stq`.
    pub fn sum_over_first(&self) -> WeightMatrix {
        self.collapse(|_, t, q| (t, q))
    }

    /// `(theta^2)_sq = sum_t theta_stq`.
    pub fn sum_over_middle(&self) -> WeightMatrix {
        self.collapse(|s, _, q| (s, q))
    }

    /// `(theta^3)_st = sum_q theta_stq`.
    pub fn sum_over_last(&self) -> WeightMatrix {
        self.collapse(|s, t, _| (s, t))
    }
}

pub fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, x| acc * x)
}

/// `(sum k_i)! / prod k_i!`.
pub fn multinomial(parts: &[u32]) -> BigUint {
    let mut total = 0u32;
    let mut acc = BigUint::one();
    for &k in parts {
        for x in 1..=k {
            total += 1;
            acc = acc * total / x;
        }
    }
    acc
}

/// All of `Lambda(n; r)`, canonical order.
pub fn enumerate_compositions(n: usize, r: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if current.len() + 1 == n {
            current.push(remaining);
            out.push(Composition::new(current.clone()));
            current.pop();
            return;
        }
        for v in (0..=remaining).rev() {
            current.push(v);
            rec(n, remaining - v, current, out);
            current.pop();
        }
    }
    if n == 0 {
        if r == 0 {
            out.push(Composition::new(Vec::new()));
        }
        return out;
    }
    rec(n, r, &mut current, &mut out);
    out
}

/// The partitions in `Lambda(n; r)`, canonical order.
pub fn enumerate_partitions(n: usize, r: u32) -> Vec<Composition> {
    enumerate_compositions(n, r).into_iter().filter(Composition::is_partition).collect()
}

/// Optional restrictions for [`enumerate_weight_matrices`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MatrixConstraints {
    pub column_sums: Option<Composition>,
    pub row_sums: Option<Composition>,
    pub upper_triangular: bool,
    pub min_degree: Option<u32>,
}

impl MatrixConstraints {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_column_sums(mut self, sums: Composition) -> Self {
        self.column_sums = Some(sums);
        self
    }

    pub fn with_row_sums(mut self, sums: Composition) -> Self {
        self.row_sums = Some(sums);
        self
    }

    pub fn upper_triangular(mut self) -> Self {
        self.upper_triangular = true;
        self
    }

    /// Implies upper triangularity.
    pub fn with_min_degree(mut self, s: u32) -> Self {
        self.upper_triangular = true;
        self.min_degree = Some(s);
        self
    }
}

/// All `n x n` weight matrices of total `r` satisfying `constraints`.
pub fn enumerate_weight_matrices(
    n: usize,
    r: u32,
    constraints: &MatrixConstraints,
) -> Result<Vec<WeightMatrix>> {
    for sums in [&constraints.column_sums, &constraints.row_sums].into_iter().flatten() {
        if sums.n() != n {
            return Err(SchurError::SizeMismatch(format!("{sums} has length != {n}")));
        }
        if sums.r() != r {
            // No matrix of total r can have these marginals.
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    let mut entries = vec![0u32; n * n];
    let mut state = FillState {
        n,
        constraints,
        row_left: constraints.row_sums.as_ref().map(|c| c.parts().to_vec()),
        col_left: constraints.column_sums.as_ref().map(|c| c.parts().to_vec()),
    };
    fill(&mut state, 0, r, &mut entries, &mut out);
    if let Some(s) = constraints.min_degree {
        out.retain(|m| m.filtration_degree().map(|d| d >= s).unwrap_or(false));
    }
    Ok(out)
}

struct FillState<'a> {
    n: usize,
    constraints: &'a MatrixConstraints,
    row_left: Option<Vec<u32>>,
    col_left: Option<Vec<u32>>,
}

fn fill(
    state: &mut FillState<'_>,
    pos: usize,
    total_left: u32,
    entries: &mut [u32],
    out: &mut Vec<WeightMatrix>,
) {
    let n = state.n;
    if pos == n * n {
        if total_left == 0 {
            out.push(WeightMatrix { n, entries: entries.to_vec() });
        }
        return;
    }
    let (s, t) = (pos / n, pos % n);
    let mut hi = total_left;
    if let Some(rows) = &state.row_left {
        hi = hi.min(rows[s]);
    }
    if let Some(cols) = &state.col_left {
        hi = hi.min(cols[t]);
    }
    if state.constraints.upper_triangular && s > t {
        hi = 0;
    }
    let mut lo = 0;
    if pos == n * n - 1 {
        lo = total_left;
    }
    if t == n - 1 {
        if let Some(rows) = &state.row_left {
            lo = lo.max(rows[s]);
        }
    }
    if s == n - 1 {
        if let Some(cols) = &state.col_left {
            lo = lo.max(cols[t]);
        }
    }
    if lo > hi {
        return;
    }
    for v in (lo..=hi).rev() {
        entries[pos] = v;
        if let Some(rows) = state.row_left.as_mut() {
            rows[s] -= v;
        }
        if let Some(cols) = state.col_left.as_mut() {
            cols[t] -= v;
        }
        fill(state, pos + 1, total_left - v, entries, out);
        if let Some(rows) = state.row_left.as_mut() {
            rows[s] += v;
        }
        if let Some(cols) = state.col_left.as_mut() {
            cols[t] += v;
        }
    }
    entries[pos] = 0;
}

/// All `n x n` matrices with the given row and column sums, canonical order.
pub(crate) fn contingency_tables(row_sums: &[u32], col_sums: &[u32]) -> Vec<Vec<u32>> {
    let n = row_sums.len();
    let r: u32 = row_sums.iter().sum();
    if col_sums.iter().sum::<u32>() != r {
        return Vec::new();
    }
    let constraints = MatrixConstraints::none()
        .with_row_sums(Composition::new(row_sums.to_vec()))
        .with_column_sums(Composition::new(col_sums.to_vec()));
    enumerate_weight_matrices(n, r, &constraints)
        .expect("sizes agree by construction")
        .into_iter()
        .map(|m| m.entries)
        .collect()
}

/// Calls `visit` on every tensor with `sum_over_last = omega` and
/// `sum_over_first = pi`, in no particular order.
///
/// The middle index splits the problem: for fixed `t` the slice
/// `theta_{. t .}` is a contingency table with row sums taken from column `t`
/// of `omega` and column sums from row `t` of `pi`.
pub fn for_each_weight_tensor(
    omega: &WeightMatrix,
    pi: &WeightMatrix,
    mut visit: impl FnMut(&WeightTensor),
) -> Result<()> {
    if omega.n != pi.n || omega.r() != pi.r() {
        return Err(SchurError::SizeMismatch(format!("{omega} and {pi} differ in size")));
    }
    let n = omega.n;
    let mut slices = Vec::with_capacity(n);
    for t in 0..n {
        let rows: Vec<u32> = (0..n).map(|s| omega.get(s, t)).collect();
        let cols: Vec<u32> = (0..n).map(|q| pi.get(t, q)).collect();
        let tables = contingency_tables(&rows, &cols);
        if tables.is_empty() {
            return Ok(());
        }
        slices.push(tables);
    }
    let mut theta = WeightTensor { n, entries: vec![0; n * n * n] };
    let mut choice = vec![0usize; n];
    loop {
        for t in 0..n {
            let table = &slices[t][choice[t]];
            for s in 0..n {
                for q in 0..n {
                    theta.entries[(s * n + t) * n + q] = table[s * n + q];
                }
            }
        }
        visit(&theta);
        let mut t = n;
        loop {
            if t == 0 {
                return Ok(());
            }
            t -= 1;
            choice[t] += 1;
            if choice[t] < slices[t].len() {
                break;
            }
            choice[t] = 0;
        }
    }
}

/// All tensors `theta` with `sum_over_last = omega` and `sum_over_first = pi`,
/// canonical order. Empty when the column sums of `omega` differ from the row
/// sums of `pi`.
pub fn enumerate_weight_tensors(omega: &WeightMatrix, pi: &WeightMatrix) -> Result<Vec<WeightTensor>> {
    let mut out = Vec::new();
    for_each_weight_tensor(omega, pi, |theta| out.push(theta.clone()))?;
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Chains `mu_1 > mu_2 > ... > mu_k > lambda` in the strict dominance order,
/// each listed from the top element down.
pub fn enumerate_dominance_chains(lambda: &Composition, k: usize) -> Vec<Vec<Composition>> {
    let above = strictly_above_map(lambda.n(), lambda.r());
    let mut out = Vec::new();
    let mut chain: Vec<Composition> = Vec::with_capacity(k);
    fn rec(
        bottom: &Composition,
        k: usize,
        above: &HashMap<Composition, Vec<Composition>>,
        chain: &mut Vec<Composition>,
        out: &mut Vec<Vec<Composition>>,
    ) {
        if chain.len() == k {
            out.push(chain.iter().rev().cloned().collect());
            return;
        }
        let current = chain.last().unwrap_or(bottom).clone();
        for mu in &above[&current] {
            chain.push(mu.clone());
            rec(bottom, k, above, chain, out);
            chain.pop();
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    rec(lambda, k, &above, &mut chain, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn strictly_above_map(n: usize, r: u32) -> HashMap<Composition, Vec<Composition>> {
    let all = enumerate_compositions(n, r);
    all.iter()
        .map(|mu| {
            let above = all
                .iter()
                .filter(|nu| nu.dominates(mu, true).expect("same size"))
                .cloned()
                .collect();
            (mu.clone(), above)
        })
        .collect()
}

/// Number of elements in the longest strictly decreasing chain of
/// `(Lambda(n; r), dominance)`.
pub fn max_chain_length(n: usize, r: u32) -> usize {
    let all = enumerate_compositions(n, r);
    let above = strictly_above_map(n, r);
    // Longest chain ending at mu = 1 + longest chain ending at something above.
    let mut memo: HashMap<Composition, usize> = HashMap::new();
    fn longest(
        mu: &Composition,
        above: &HashMap<Composition, Vec<Composition>>,
        memo: &mut HashMap<Composition, usize>,
    ) -> usize {
        if let Some(&v) = memo.get(mu) {
            return v;
        }
        let best = above[mu].iter().map(|nu| longest(nu, above, memo)).max().unwrap_or(0) + 1;
        memo.insert(mu.clone(), best);
        best
    }
    all.iter().map(|mu| longest(mu, &above, &mut memo)).max().unwrap_or(0)
}
