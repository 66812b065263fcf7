//! The idempotent `xi_delta` with `delta = (1^r, 0^{n-r})`, the embedding of
//! the symmetric group `sigma -> xi_{omega(sigma)}`, and the Schur functor on
//! induced bar complexes.

use std::fmt;

use crate::bar::build_weyl_resolution_with_head_rows;
use crate::combinatorics::{Composition, WeightMatrix};
use crate::complex::{BasisLabel, ChainComplex};
use crate::error::{Result, SchurError};

/// A bijection of `{1, ..., r}`, stored by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            if x == 0 || x as usize > r || seen[x as usize - 1] {
                return Err(SchurError::Parse(format!("{images:?} is not a permutation")));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(r: usize) -> Self {
        Permutation { images: (1..=r as u32).collect() }
    }

    pub fn r(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `sigma(x)` for `1 <= x <= r`.
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize - 1]
    }

    /// `self o other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.r() != other.r() {
            return Err(SchurError::SizeMismatch("permutations of different degrees".into()));
        }
        Ok(Permutation { images: other.images.iter().map(|&x| self.apply(x)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.r()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u32 + 1;
        }
        Permutation { images }
    }

    /// All of `Sigma_r` in lexicographic order of images.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut current: Vec<u32> = (1..=r as u32).collect();
        let mut out = vec![Permutation { images: current.clone() }];
        while crate::oracle::next_permutation(&mut current) {
            out.push(Permutation { images: current.clone() });
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `(1, ..., 1, 0, ..., 0)` with `r` ones and `n - r` zeros.
pub fn delta(n: usize, r: u32) -> Result<Composition> {
    if (r as usize) > n {
        return Err(SchurError::NeedsLargeN { n, r });
    }
    Ok(Composition::new((0..n).map(|i| u32::from(i < r as usize)).collect()))
}

/// `omega(sigma)_{st} = 1` exactly when `t <= r` and `s = sigma(t)`.
pub fn omega_of_permutation(sigma: &Permutation, n: usize) -> Result<WeightMatrix> {
    let r = sigma.r();
    if r > n {
        return Err(SchurError::NeedsLargeN { n, r: r as u32 });
    }
    let mut entries = vec![0u32; n * n];
    for t in 1..=r as u32 {
        let s = sigma.apply(t);
        entries[(s as usize - 1) * n + (t as usize - 1)] = 1;
    }
    WeightMatrix::new(n, entries)
}

pub fn permutation_of_omega(omega: &WeightMatrix) -> Result<Permutation> {
    let d = delta(omega.n(), omega.r())?;
    if omega.column_sums() != d || omega.row_sums() != d {
        return Err(SchurError::MarginalMismatch(format!("{omega} does not have both marginals {d}")));
    }
    let r = omega.r() as usize;
    let images = (0..r)
        .map(|t| (0..r).find(|&s| omega.get(s, t) == 1).expect("column sum is one") as u32 + 1)
        .collect();
    Permutation::new(images)
}

fn sizes_of(x: &ChainComplex) -> Option<(usize, u32)> {
    x.degrees().flat_map(|k| x.basis(k).iter()).find_map(|label| match label {
        BasisLabel::Matrices(ms) => ms.first().map(|m| (m.n(), m.r())),
        _ => None,
    })
}

/// `xi_delta X`: keeps the bar tuples whose head has row sums `delta` and
/// restricts every differential to them.
pub fn apply_schur_functor(x: &ChainComplex) -> Result<ChainComplex> {
    let Some((n, r)) = sizes_of(x) else {
        return Ok(x.clone());
    };
    let d = delta(n, r)?;
    let keep: Vec<Vec<usize>> = x
        .degrees()
        .map(|k| {
            x.basis(k)
                .iter()
                .enumerate()
                .filter(|(_, label)| match label {
                    BasisLabel::Matrices(ms) => ms[0].row_sums() == d,
                    _ => false,
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    x.restrict(&keep)
}

/// The same complex built directly, enumerating only tuples with head row
/// sums `delta`.
pub fn build_schur_functor_complex(lambda: &Composition) -> Result<ChainComplex> {
    let d = delta(lambda.n(), lambda.r())?;
    build_weyl_resolution_with_head_rows(lambda, &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::multiply_basis;
    use crate::bar::build_weyl_resolution;
    use crate::homology::homology;

    #[test]
    fn delta_examples() {
        assert_eq!(delta(2, 2).unwrap(), Composition::new(vec![1, 1]));
        assert_eq!(delta(4, 2).unwrap(), Composition::new(vec![1, 1, 0, 0]));
        assert_eq!(delta(1, 2), Err(SchurError::NeedsLargeN { n: 1, r: 2 }));
    }

    #[test]
    fn permutation_matrices() {
        let id = Permutation::identity(2);
        assert_eq!(omega_of_permutation(&id, 2).unwrap(), WeightMatrix::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap());
        let swap = Permutation::new(vec![2, 1]).unwrap();
        assert_eq!(omega_of_permutation(&swap, 2).unwrap(), WeightMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap());
        for sigma in Permutation::all(3) {
            let omega = omega_of_permutation(&sigma, 3).unwrap();
            assert_eq!(permutation_of_omega(&omega).unwrap(), sigma);
        }
        assert!(permutation_of_omega(&WeightMatrix::from_rows(vec![vec![2, 0], vec![0, 0]]).unwrap()).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn group_embedding_small() {
        for a in Permutation::all(3) {
            for b in Permutation::all(3) {
                let product = multiply_basis(&omega_of_permutation(&a, 3).unwrap(), &omega_of_permutation(&b, 3).unwrap()).unwrap();
                let expected = omega_of_permutation(&a.compose(&b).unwrap(), 3).unwrap();
                assert_eq!(product, crate::algebra::AlgebraElement::basis(expected));
            }
        }
    }

    #[test]
    fn functor_on_small_weyl_complex() {
        let lambda = Composition::new(vec![1, 1]);
        let x = build_weyl_resolution(&lambda).unwrap();
        let fx = apply_schur_functor(&x).unwrap();
        assert_eq!(fx.ranks(), vec![2, 1]);
        assert!(fx.boundary_failures().is_empty());
        assert_eq!(homology(&fx, 0).unwrap().free_rank, 1);
        assert_eq!(build_schur_functor_complex(&lambda).unwrap(), fx);

        let top = apply_schur_functor(&build_weyl_resolution(&Composition::new(vec![2, 0])).unwrap()).unwrap();
        assert_eq!(top.ranks(), vec![1]);
    }
}
