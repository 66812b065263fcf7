//! Finite chain complexes of free modules with labeled bases.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::boltje_hartmann::Tableau;
use crate::combinatorics::WeightMatrix;
use crate::error::{Result, SchurError};
use crate::homology::is_prime;
use crate::matrix::IntMatrix;

/// Name of a basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    /// The generator of a rank-one augmentation module.
    Generator,
    /// A bar tuple `(omega_0, ..., omega_k)`.
    Matrices(Vec<WeightMatrix>),
    /// A tensor of a dual tableau functional and `theta_T` factors.
    Tableaux(Vec<Tableau>),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Generator => write!(f, "1"),
            BasisLabel::Matrices(ms) => {
                let parts: Vec<String> = ms.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join("; "))
            }
            BasisLabel::Tableaux(ts) => {
                let parts: Vec<String> = ts.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join("; "))
            }
        }
    }
}

/// A complex `C_lo <- C_{lo+1} <- ... <- C_hi` of free modules.
///
/// `d_k : C_k -> C_{k-1}` has shape `rank(k-1) x rank(k)`. Homotopies, when
/// present, are `s_k : C_k -> C_{k+1}` for `lo <= k <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    lo: i64,
    bases: Vec<Vec<BasisLabel>>,
    differentials: Vec<IntMatrix>,
    homotopies: Option<Vec<IntMatrix>>,
    modulus: Option<u64>,
}

impl ChainComplex {
    /// `differentials[i]` is `d_{lo + 1 + i}`.
    pub fn new(lo: i64, bases: Vec<Vec<BasisLabel>>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if bases.is_empty() {
            return Err(SchurError::SizeMismatch("a complex needs at least one degree".into()));
        }
        if differentials.len() + 1 != bases.len() {
            return Err(SchurError::SizeMismatch(format!(
                "{} degrees need {} differentials, got {}",
                bases.len(),
                bases.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != bases[i].len() || d.cols() != bases[i + 1].len() {
                return Err(SchurError::SizeMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + 1 + i as i64,
                    d.rows(),
                    d.cols(),
                    bases[i].len(),
                    bases[i + 1].len()
                )));
            }
        }
        Ok(ChainComplex { lo, bases, differentials, homotopies: None, modulus: None })
    }

    /// `homotopies[i]` is `s_{lo + i}`.
    pub fn with_homotopies(mut self, homotopies: Vec<IntMatrix>) -> Result<Self> {
        if homotopies.len() != self.bases.len() {
            return Err(SchurError::SizeMismatch("one homotopy per degree expected".into()));
        }
        for (i, s) in homotopies.iter().enumerate() {
            let k = self.lo + i as i64;
            if s.rows() != self.rank(k + 1) || s.cols() != self.rank(k) {
                return Err(SchurError::SizeMismatch(format!("s_{k} has the wrong shape")));
            }
        }
        self.homotopies = Some(homotopies);
        Ok(self)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.bases.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    fn index(&self, k: i64) -> Option<usize> {
        (self.lo..=self.hi()).contains(&k).then(|| (k - self.lo) as usize)
    }

    pub fn rank(&self, k: i64) -> usize {
        self.index(k).map_or(0, |i| self.bases[i].len())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, k: i64) -> &[BasisLabel] {
        self.index(k).map_or(&[], |i| &self.bases[i])
    }

    /// `d_k`, or the zero map of the right shape outside the stored range.
    pub fn differential(&self, k: i64) -> IntMatrix {
        match self.index(k) {
            Some(i) if i > 0 => self.differentials[i - 1].clone(),
            _ => IntMatrix::zeros(self.rank(k - 1), self.rank(k)),
        }
    }

    pub fn has_homotopies(&self) -> bool {
        self.homotopies.is_some()
    }

    /// `s_k`, zero outside the stored range; `None` without homotopies.
    pub fn homotopy(&self, k: i64) -> Option<IntMatrix> {
        let hs = self.homotopies.as_ref()?;
        Some(match self.index(k) {
            Some(i) => hs[i].clone(),
            None => IntMatrix::zeros(self.rank(k + 1), self.rank(k)),
        })
    }

    fn normalize(&self, m: IntMatrix) -> IntMatrix {
        match self.modulus {
            Some(p) => m.reduce_mod(p),
            None => m,
        }
    }

    /// Degrees `k` with `d_{k-1} d_k != 0`.
    pub fn boundary_failures(&self) -> Vec<i64> {
        ((self.lo + 2)..=self.hi())
            .filter(|&k| {
                let product = self.differential(k - 1).mul(&self.differential(k)).expect("shapes agree");
                !self.normalize(product).is_zero()
            })
            .collect()
    }

    /// Degrees `k` where `d_{k+1} s_k + s_{k-1} d_k` is not the identity.
    /// Empty when there are no homotopies to check.
    pub fn homotopy_failures(&self) -> Vec<i64> {
        if self.homotopies.is_none() {
            return Vec::new();
        }
        self.degrees()
            .filter(|&k| {
                let up = self.differential(k + 1).mul(&self.homotopy(k).unwrap()).expect("shapes agree");
                let down = self.homotopy(k - 1).unwrap().mul(&self.differential(k)).expect("shapes agree");
                let total = self.normalize(up.add(&down).expect("shapes agree"));
                !total.is_identity()
            })
            .collect()
    }

    /// `sum_k (-1)^k rank C_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(k) as i64).sum()
    }

    /// Keeps, in every degree, the basis elements at the listed positions.
    /// Homotopies are dropped.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Result<ChainComplex> {
        if keep.len() != self.bases.len() {
            return Err(SchurError::SizeMismatch("one index list per degree expected".into()));
        }
        let bases = keep
            .iter()
            .zip(&self.bases)
            .map(|(idx, basis)| idx.iter().map(|&i| basis[i].clone()).collect())
            .collect();
        let differentials = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| d.select(&keep[i], &keep[i + 1]))
            .collect();
        let mut out = ChainComplex::new(self.lo, bases, differentials)?;
        out.modulus = self.modulus;
        Ok(out)
    }

    /// Drops the lowest degree (for instance an augmentation).
    pub fn truncate_below(&self) -> Result<ChainComplex> {
        if self.bases.len() < 2 {
            return Err(SchurError::DegreeOutOfRange(self.lo));
        }
        let mut out =
            ChainComplex::new(self.lo + 1, self.bases[1..].to_vec(), self.differentials[1..].to_vec())?;
        out.modulus = self.modulus;
        Ok(out)
    }

    /// Adds `delta` to entry `(row, col)` of `d_k`.
    pub fn perturb(&mut self, k: i64, row: usize, col: usize, delta: i64) -> Result<()> {
        let i = match self.index(k) {
            Some(i) if i > 0 => i,
            _ => return Err(SchurError::DegreeOutOfRange(k)),
        };
        let d = &mut self.differentials[i - 1];
        if row >= d.rows() || col >= d.cols() {
            return Err(SchurError::SizeMismatch(format!("d_{k} has no entry ({row}, {col})")));
        }
        d.add_to(row, col, &BigInt::from(delta));
        Ok(())
    }
}

/// Entrywise reduction of every differential and homotopy modulo `p`.
pub fn reduce_mod(complex: &ChainComplex, p: u64) -> Result<ChainComplex> {
    if !is_prime(p) {
        return Err(SchurError::NotPrime(p));
    }
    let mut out = complex.clone();
    out.differentials = complex.differentials.iter().map(|d| d.reduce_mod(p)).collect();
    out.homotopies =
        complex.homotopies.as_ref().map(|hs| hs.iter().map(|s| s.reduce_mod(p)).collect());
    out.modulus = Some(p);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn gens(k: usize) -> Vec<BasisLabel> {
        vec![BasisLabel::Generator; k]
    }

    #[test]
    fn shapes_are_checked() {
        assert!(ChainComplex::new(0, vec![gens(1), gens(2)], vec![m(&[&[1, 1]])]).is_ok());
        assert!(ChainComplex::new(0, vec![gens(1), gens(2)], vec![m(&[&[1]])]).is_err());
        assert!(ChainComplex::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn boundaries_and_homotopies() {
        // 0 <- Z <-(1)- Z <- 0 with contraction s_0 = 1.
        let x = ChainComplex::new(0, vec![gens(1), gens(1)], vec![m(&[&[1]])])
            .unwrap()
            .with_homotopies(vec![m(&[&[1]]), IntMatrix::zeros(0, 1)])
            .unwrap();
        assert!(x.boundary_failures().is_empty());
        assert!(x.homotopy_failures().is_empty());
        assert_eq!(x.euler_characteristic(), 0);

        let mut bad = ChainComplex::new(0, vec![gens(1), gens(1), gens(1)], vec![m(&[&[1]]), m(&[&[1]])]).unwrap();
        assert_eq!(bad.boundary_failures(), vec![2]);
        bad.perturb(2, 0, 0, -1).unwrap();
        assert!(bad.boundary_failures().is_empty());
        assert!(bad.perturb(0, 0, 0, 1).is_err());
    }

    #[test]
    fn modular_reduction() {
        let x = ChainComplex::new(0, vec![gens(1), gens(1), gens(1)], vec![m(&[&[2]]), m(&[&[3]])]).unwrap();
        assert_eq!(x.boundary_failures(), vec![2]);
        let x2 = reduce_mod(&x, 2).unwrap();
        assert_eq!(x2.differential(1), m(&[&[0]]));
        assert!(x2.boundary_failures().is_empty());
        assert_eq!(x2.ranks(), x.ranks());
        assert_eq!(reduce_mod(&x, 4), Err(SchurError::NotPrime(4)));
    }
}
