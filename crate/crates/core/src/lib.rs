//! Integral Schur algebras `S(n, r)`, their Borel subalgebras, and explicit
//! resolutions of Weyl modules, verified in exact arithmetic over the integers
//! and over prime fields.
//!
//! The pieces, bottom up:
//!
//! * [`combinatorics`]: compositions, multi-indices, weight matrices and
//!   tensors, dominance chains.
//! * [`algebra`]: the basis `xi_omega` and its structure constants.
//! * [`oracle`]: brute-force realizations of the product used as references.
//! * [`bar`]: bar resolutions of `R_lambda` and the induced Weyl complexes.
//! * [`homology`]: Smith normal form, ranks modulo primes, exactness checks.
//! * [`schur_functor`]: the symmetric group inside `S(n, r)` and the functor
//!   `xi_delta (-)`.
//! * [`boltje_hartmann`]: tableaux and the permutation-module complex.
//! * [`divided_powers`]: `D_lambda(R^n)` and its comparison with
//!   `S(n, r) xi_lambda`.
//!
//! ```
//! use schur_core::{build_weyl_resolution, homology, multiply_basis, Composition, WeightMatrix};
//!
//! let a = WeightMatrix::from_rows(vec![vec![1, 1], vec![0, 0]])?;
//! let b = WeightMatrix::from_rows(vec![vec![1, 0], vec![1, 0]])?;
//! assert_eq!(multiply_basis(&a, &b)?.to_string(), "2*xi([[2,0],[0,0]])");
//!
//! let x = build_weyl_resolution(&Composition::new(vec![2, 1, 0]))?;
//! assert_eq!(homology(&x, 0)?.to_string(), "Z^8");
//! # Ok::<(), schur_core::SchurError>(())
//! ```

pub mod algebra;
pub mod bar;
pub mod boltje_hartmann;
pub mod combinatorics;
pub mod complex;
pub mod divided_powers;
pub mod error;
pub mod homology;
pub mod matrix;
pub mod oracle;
pub mod schur_functor;

pub use algebra::{multiply, multiply_basis, AlgebraElement, ProductTable};
pub use bar::{build_borel_resolution, build_weyl_resolution, BarBuilder, BarTuple, Variant};
pub use boltje_hartmann::{build_bh_complex, compare_with_schur_functor, Tableau};
pub use combinatorics::{Composition, MultiIndex, WeightMatrix, WeightTensor};
pub use complex::{reduce_mod, BasisLabel, ChainComplex};
pub use error::{Result, SchurError};
pub use homology::{homology, smith_normal_form, verify_exactness, HomologyGroup, SmithForm};
pub use matrix::IntMatrix;
pub use oracle::GroupMatrix;
pub use schur_functor::{apply_schur_functor, Permutation};
