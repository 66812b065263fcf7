//! The Schur algebra `S(n, r)` in its basis `xi_omega` indexed by weight
//! matrices, and the Borel subalgebra spanned by upper triangular `omega`.
//!
//! The product of two basis elements is computed from the structure
//! constants
//!
//! ```text
//! xi_omega * xi_pi = sum over theta with sum_over_last(theta) = omega and
//!                    sum_over_first(theta) = pi of [theta] xi_{sum_over_middle(theta)}
//! ```
//!
//! where `[theta]` is a product of multinomial coefficients (see
//! [`theta_coefficient`]).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{
    enumerate_compositions, for_each_weight_tensor, multinomial, Composition, WeightMatrix,
    WeightTensor,
};
use crate::error::{Result, SchurError};

/// A sparse integer combination of basis elements `xi_omega`.
///
/// Zero coefficients are never stored, so structural equality is equality in
/// the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    n: usize,
    r: u32,
    terms: BTreeMap<WeightMatrix, BigInt>,
}

impl AlgebraElement {
    pub fn zero(n: usize, r: u32) -> Self {
        AlgebraElement { n, r, terms: BTreeMap::new() }
    }

    pub fn basis(omega: WeightMatrix) -> Self {
        let (n, r) = (omega.n(), omega.r());
        let mut terms = BTreeMap::new();
        terms.insert(omega, BigInt::one());
        AlgebraElement { n, r, terms }
    }

    pub fn from_terms(
        n: usize,
        r: u32,
        terms: impl IntoIterator<Item = (WeightMatrix, BigInt)>,
    ) -> Result<Self> {
        let mut out = AlgebraElement::zero(n, r);
        for (omega, c) in terms {
            out.check_key(&omega)?;
            out.add_term(omega, c);
        }
        Ok(out)
    }

    fn check_key(&self, omega: &WeightMatrix) -> Result<()> {
        if omega.n() != self.n || omega.r() != self.r {
            return Err(SchurError::SizeMismatch(format!(
                "{omega} is not a basis index of S({}, {})",
                self.n, self.r
            )));
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, omega: WeightMatrix, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(omega) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, omega: &WeightMatrix) -> BigInt {
        self.terms.get(omega).cloned().unwrap_or_default()
    }

    /// Terms in canonical (descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&WeightMatrix, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return AlgebraElement::zero(self.n, self.r);
        }
        AlgebraElement {
            n: self.n,
            r: self.r,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.r != other.r {
            return Err(SchurError::SizeMismatch(format!(
                "S({}, {}) versus S({}, {})",
                self.n, self.r, other.n, other.r
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// True iff every basis index is upper triangular.
    pub fn is_borel_element(&self) -> bool {
        self.terms.keys().all(WeightMatrix::is_upper_triangular)
    }

    /// True iff every basis index is upper triangular of filtration degree at
    /// least `s`.
    pub fn is_ideal_element(&self, s: u32) -> bool {
        self.terms.keys().all(|k| k.filtration_degree().map(|d| d >= s).unwrap_or(false))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (omega, c)) in self.terms().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude.is_one() {
                write!(f, "xi({omega})")?;
            } else {
                write!(f, "{magnitude}*xi({omega})")?;
            }
        }
        Ok(())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("adding elements of different Schur algebras")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;

    fn neg(self) -> AlgebraElement {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;

    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        multiply(self, rhs).expect("multiplying elements of different Schur algebras")
    }
}

/// `[theta] = prod_{s,q} multinomial(theta_{s1q}, ..., theta_{snq})`; the
/// multinomial's top is the `(s, q)` entry of `sum_over_middle(theta)`.
pub fn theta_coefficient(theta: &WeightTensor) -> BigInt {
    let n = theta.n();
    let mut acc = num_bigint::BigUint::one();
    let mut column = vec![0u32; n];
    for s in 0..n {
        for q in 0..n {
            for (t, slot) in column.iter_mut().enumerate() {
                *slot = theta.get(s, t, q);
            }
            acc *= multinomial(&column);
        }
    }
    BigInt::from(acc)
}

/// Product of two basis elements.
pub fn multiply_basis(omega: &WeightMatrix, pi: &WeightMatrix) -> Result<AlgebraElement> {
    if omega.n() != pi.n() || omega.r() != pi.r() {
        return Err(SchurError::SizeMismatch(format!("{omega} and {pi} differ in size")));
    }
    let mut out = AlgebraElement::zero(omega.n(), omega.r());
    if omega.column_sums() != pi.row_sums() {
        return Ok(out);
    }
    for_each_weight_tensor(omega, pi, |theta| {
        out.add_term(theta.sum_over_middle(), theta_coefficient(theta));
    })?;
    Ok(out)
}

/// Bilinear extension of [`multiply_basis`].
pub fn multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.same_algebra(y)?;
    let mut out = AlgebraElement::zero(x.n, x.r);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if a.column_sums() != b.row_sums() {
                continue;
            }
            let c = ca * cb;
            for (k, v) in multiply_basis(a, b)?.terms {
                out.add_term(k, v * &c);
            }
        }
    }
    Ok(out)
}

/// `xi_lambda = xi_{diag(lambda)}`.
pub fn idempotent(lambda: &Composition) -> AlgebraElement {
    AlgebraElement::basis(WeightMatrix::diag(lambda))
}

/// The identity `sum_lambda xi_lambda` of `S(n, r)`.
pub fn identity(n: usize, r: u32) -> AlgebraElement {
    let mut out = AlgebraElement::zero(n, r);
    for lambda in enumerate_compositions(n, r) {
        out.add_term(WeightMatrix::diag(&lambda), BigInt::one());
    }
    out
}

/// The anti-involution `xi_omega -> xi_{omega^t}`.
pub fn transpose_involution(x: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(x.n, x.r);
    for (k, v) in &x.terms {
        out.add_term(k.transpose(), v.clone());
    }
    out
}

/// Memoized basis products, shared by the complex builders.
#[derive(Debug, Default)]
pub struct ProductTable {
    table: HashMap<(WeightMatrix, WeightMatrix), AlgebraElement>,
}

impl ProductTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn product(&mut self, omega: &WeightMatrix, pi: &WeightMatrix) -> Result<&AlgebraElement> {
        let key = (omega.clone(), pi.clone());
        if !self.table.contains_key(&key) {
            let value = multiply_basis(omega, pi)?;
            self.table.insert(key.clone(), value);
        }
        Ok(&self.table[&key])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec())
    }

    fn m(rows: &[&[u32]]) -> WeightMatrix {
        WeightMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn theta_coefficients() {
        let diagonal = WeightTensor::from_entries(2, &[((0, 0, 0), 2), ((1, 1, 1), 3)]);
        assert_eq!(theta_coefficient(&diagonal), int(1));
        let split = WeightTensor::from_entries(2, &[((0, 0, 0), 1), ((0, 1, 0), 1)]);
        assert_eq!(theta_coefficient(&split), int(2));
        let uneven = WeightTensor::from_entries(2, &[((0, 0, 0), 2), ((0, 1, 0), 1)]);
        assert_eq!(theta_coefficient(&uneven), int(3));
    }

    #[test]
    fn basis_products() {
        let upper = m(&[&[1, 1], &[0, 0]]);
        let lower = m(&[&[1, 0], &[1, 0]]);
        let product = multiply_basis(&upper, &lower).unwrap();
        assert_eq!(product.to_string(), "2*xi([[2,0],[0,0]])");

        for omega in [upper.clone(), lower.clone()] {
            let left = idempotent(&omega.row_sums());
            assert_eq!(multiply(&left, &AlgebraElement::basis(omega.clone())).unwrap(), AlgebraElement::basis(omega.clone()));
            let wrong = idempotent(&c(&[0, 2]));
            assert!(multiply(&wrong, &AlgebraElement::basis(omega)).unwrap().is_zero());
        }

        let one = m(&[&[3]]);
        assert_eq!(multiply_basis(&one, &one).unwrap(), AlgebraElement::basis(one));

        assert!(multiply_basis(&upper, &m(&[&[1]])).is_err());
    }

    #[test]
    fn scalar_bilinearity() {
        let omega = m(&[&[1, 1], &[0, 0]]);
        let pi = m(&[&[1, 0], &[1, 0]]);
        let two = AlgebraElement::basis(omega.clone()).scale(&int(2));
        let lhs = multiply(&two, &AlgebraElement::basis(pi.clone())).unwrap();
        assert_eq!(lhs, multiply_basis(&omega, &pi).unwrap().scale(&int(2)));

        let zero = AlgebraElement::zero(2, 2);
        assert!(multiply(&zero, &two).unwrap().is_zero());
        let id = identity(2, 2);
        assert_eq!(multiply(&id, &two).unwrap(), two);
    }

    #[test]
    fn identity_and_idempotents() {
        assert_eq!(identity(1, 1), AlgebraElement::basis(m(&[&[1]])));
        assert_eq!(identity(2, 2).len(), 3);
        let a = idempotent(&c(&[1, 1]));
        let b = idempotent(&c(&[2, 0]));
        assert!(multiply(&a, &b).unwrap().is_zero());
        assert_eq!(multiply(&a, &a).unwrap(), a);
    }

    #[test]
    fn involution() {
        let d = idempotent(&c(&[2, 1]));
        assert_eq!(transpose_involution(&d), d);
        let upper = AlgebraElement::basis(m(&[&[1, 1], &[0, 0]]));
        assert_eq!(transpose_involution(&upper), AlgebraElement::basis(m(&[&[1, 0], &[1, 0]])));
    }

    #[test]
    fn borel_predicates() {
        let d = idempotent(&c(&[1, 1]));
        assert!(d.is_borel_element());
        assert!(!d.is_ideal_element(1));
        let upper = AlgebraElement::basis(m(&[&[1, 1], &[0, 0]]));
        assert!(upper.is_borel_element());
        assert!(upper.is_ideal_element(1));
        let lower = AlgebraElement::basis(m(&[&[1, 0], &[1, 0]]));
        assert!(!lower.is_borel_element());
    }

    #[test]
    fn display_signs() {
        let x = AlgebraElement::from_terms(
            2,
            2,
            [(m(&[&[2, 0], &[0, 0]]), int(-1)), (m(&[&[1, 1], &[0, 0]]), int(3))],
        )
        .unwrap();
        assert_eq!(x.to_string(), "-xi([[2,0],[0,0]]) + 3*xi([[1,1],[0,0]])");
        assert_eq!(AlgebraElement::zero(2, 2).to_string(), "0");
    }
}
