//! Divided powers `D_lambda(R^n) = D_{lambda_1}(R^n) (x) ... (x) D_{lambda_n}(R^n)`
//! in the monomial basis `e^{(pi)}`, where column `t` of `pi` lists the
//! exponents of the `t`-th tensor factor.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{multiply, theta_coefficient, AlgebraElement};
use crate::combinatorics::{
    enumerate_weight_matrices, for_each_weight_tensor, multinomial, Composition, MatrixConstraints,
    WeightMatrix,
};
use crate::error::{Result, SchurError};
use crate::oracle::{monomial_eval, rho, GroupMatrix};

/// A monomial `e_1^{(a_1)} ... e_n^{(a_n)}` of a single divided power algebra.
pub type Exponents = Vec<u32>;

/// An element of `D(R^n)` as a sparse combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DividedPolynomial {
    terms: BTreeMap<Exponents, BigInt>,
}

impl DividedPolynomial {
    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n])
    }

    pub fn monomial(exponents: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exponents, BigInt::one());
        DividedPolynomial { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Product using `e^{(a)} e^{(b)} = binom(a + b, a) e^{(a + b)}` in each
    /// generator.
    pub fn multiply(&self, other: &DividedPolynomial) -> Result<DividedPolynomial> {
        let mut out = DividedPolynomial::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.len() != b.len() {
                    return Err(SchurError::SizeMismatch("monomials in different numbers of generators".into()));
                }
                let mut coefficient = x * y;
                let sum: Exponents = a.iter().zip(b).map(|(p, q)| p + q).collect();
                for (p, q) in a.iter().zip(b) {
                    coefficient *= BigInt::from(multinomial(&[*p, *q]));
                }
                out.add_term(sum, coefficient);
            }
        }
        Ok(out)
    }

    /// `(sum_q c_q e_q)^{(k)} = sum_{|a| = k} prod_q c_q^{a_q} e^{(a)}`.
    pub fn power_of_linear(coefficients: &[BigInt], k: u32) -> DividedPolynomial {
        let n = coefficients.len();
        let mut out = DividedPolynomial::default();
        for a in crate::combinatorics::enumerate_compositions(n, k) {
            let mut c = BigInt::one();
            for (x, &e) in coefficients.iter().zip(a.parts()) {
                c *= num_traits::pow(x.clone(), e as usize);
            }
            out.add_term(a.parts().to_vec(), c);
        }
        out
    }
}

/// An element of `D_lambda(R^n)`, keyed by `pi` with column sums `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedElement {
    lambda: Composition,
    terms: BTreeMap<WeightMatrix, BigInt>,
}

impl DividedElement {
    pub fn zero(lambda: &Composition) -> Self {
        DividedElement { lambda: lambda.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(pi: &WeightMatrix) -> Self {
        let mut x = DividedElement::zero(&pi.column_sums());
        x.terms.insert(pi.clone(), BigInt::one());
        x
    }

    pub fn lambda(&self) -> &Composition {
        &self.lambda
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeightMatrix, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, pi: &WeightMatrix) -> BigInt {
        self.terms.get(pi).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, pi: WeightMatrix, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(pi.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&pi);
        }
    }
}

impl fmt::Display for DividedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (pi, c)) in self.terms().enumerate() {
            let sign = if c < &BigInt::zero() { "-" } else { "+" };
            let magnitude = if c < &BigInt::zero() { -c } else { c.clone() };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if magnitude.is_one() {
                write!(f, "e({pi})")?;
            } else {
                write!(f, "{magnitude}*e({pi})")?;
            }
        }
        Ok(())
    }
}

/// `{pi : pi^1 = lambda}` in canonical order.
pub fn divided_basis(lambda: &Composition) -> Vec<WeightMatrix> {
    let c = MatrixConstraints::none().with_column_sums(lambda.clone());
    enumerate_weight_matrices(lambda.n(), lambda.r(), &c).expect("sizes agree")
}

fn check_shape(g: &GroupMatrix, pi: &WeightMatrix) -> Result<()> {
    if g.n() != pi.n() {
        return Err(SchurError::SizeMismatch("group matrix and monomial sizes differ".into()));
    }
    Ok(())
}

/// `g e^{(pi)} = sum_{theta^1 = pi} [theta] c_{theta^3}(g) e^{(theta^2)}`.
pub fn gl_action(g: &GroupMatrix, pi: &WeightMatrix) -> Result<DividedElement> {
    check_shape(g, pi)?;
    let mut out = DividedElement::zero(&pi.column_sums());
    let c = MatrixConstraints::none().with_column_sums(pi.row_sums());
    for omega in enumerate_weight_matrices(pi.n(), pi.r(), &c)? {
        let weight = monomial_eval(&omega, g)?;
        if weight.is_zero() {
            continue;
        }
        let mut failure = None;
        for_each_weight_tensor(&omega, pi, |theta| {
            let key = theta.sum_over_middle();
            if key.column_sums() != *out.lambda() {
                failure = Some(key.clone());
            }
            out.add_term(key, &weight * theta_coefficient(theta));
        })?;
        if let Some(key) = failure {
            return Err(SchurError::MarginalMismatch(format!("{key} left D_lambda")));
        }
    }
    Ok(out)
}

/// The same action computed by expanding `prod_s (g e_s)^{(pi_st)}` in each
/// tensor factor with the divided power relations.
pub fn gl_action_by_expansion(g: &GroupMatrix, pi: &WeightMatrix) -> Result<DividedElement> {
    check_shape(g, pi)?;
    let n = pi.n();
    let mut factors = Vec::with_capacity(n);
    for t in 0..n {
        let mut acc = DividedPolynomial::one(n);
        for s in 0..n {
            let image: Vec<BigInt> = (0..n).map(|q| g.get(q, s).clone()).collect();
            acc = acc.multiply(&DividedPolynomial::power_of_linear(&image, pi.get(s, t)))?;
        }
        factors.push(acc);
    }
    let mut out = DividedElement::zero(&pi.column_sums());
    let mut columns: Vec<(Vec<&Exponents>, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for factor in &factors {
        columns = columns
            .into_iter()
            .flat_map(|(cols, c)| {
                factor.terms().map(move |(e, x)| {
                    let mut next = cols.clone();
                    next.push(e);
                    (next, &c * x)
                })
            })
            .collect();
    }
    for (cols, c) in columns {
        let mut entries = vec![0u32; n * n];
        for (t, e) in cols.iter().enumerate() {
            for s in 0..n {
                entries[s * n + t] = e[s];
            }
        }
        out.add_term(WeightMatrix::new(n, entries)?, c);
    }
    Ok(out)
}

/// `g` applied to every term.
pub fn gl_action_on(g: &GroupMatrix, x: &DividedElement) -> Result<DividedElement> {
    let mut out = DividedElement::zero(&x.lambda);
    for (pi, c) in x.terms() {
        for (key, v) in gl_action(g, pi)?.terms() {
            out.add_term(key.clone(), c * v);
        }
    }
    Ok(out)
}

/// `e^{(pi)} -> xi_pi`.
pub fn psi(pi: &WeightMatrix, lambda: &Composition) -> Result<WeightMatrix> {
    if &pi.column_sums() != lambda {
        return Err(SchurError::MarginalMismatch(format!("{pi} does not have column sums {lambda}")));
    }
    Ok(pi.clone())
}

pub fn psi_element(x: &DividedElement) -> Result<AlgebraElement> {
    let (n, r) = (x.lambda.n(), x.lambda.r());
    let terms = x.terms().map(|(pi, c)| psi(pi, &x.lambda).map(|m| (m, c.clone()))).collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_terms(n, r, terms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub lambda: Composition,
    pub checked: usize,
    pub mismatches: Vec<WeightMatrix>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks `psi(g e^{(pi)}) = rho(g) xi_pi` on the whole basis of
/// `D_lambda(R^n)`.
pub fn verify_equivariance(lambda: &Composition, g: &GroupMatrix) -> Result<EquivarianceReport> {
    let image = rho(g, lambda.r())?;
    let mut report = EquivarianceReport { lambda: lambda.clone(), checked: 0, mismatches: Vec::new() };
    for pi in divided_basis(lambda) {
        let lhs = psi_element(&gl_action(g, &pi)?)?;
        let rhs = multiply(&image, &AlgebraElement::basis(psi(&pi, lambda)?))?;
        report.checked += 1;
        if lhs != rhs {
            report.mismatches.push(pi);
        }
    }
    Ok(report)
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

    #[test]
    fn basis_sizes() {
        assert_eq!(divided_basis(&c(&[1, 1])).len(), 4);
        assert_eq!(divided_basis(&c(&[3])).len(), 1);
        assert_eq!(divided_basis(&c(&[2, 0])).len(), 3);
    }

    #[test]
    fn single_factor_relations() {
        let e1 = DividedPolynomial::monomial(vec![1, 0]);
        let square = e1.multiply(&e1).unwrap();
        assert_eq!(square.coefficient(&[2, 0]), BigInt::from(2));
        let mixed = DividedPolynomial::monomial(vec![2, 0]).multiply(&DividedPolynomial::monomial(vec![0, 3])).unwrap();
        assert_eq!(mixed, DividedPolynomial::monomial(vec![2, 3]));
        let sum = DividedPolynomial::power_of_linear(&[BigInt::one(), BigInt::one()], 2);
        let expected: Vec<(Exponents, BigInt)> =
            vec![(vec![0, 2], BigInt::one()), (vec![1, 1], BigInt::one()), (vec![2, 0], BigInt::one())];
        assert_eq!(sum.terms().map(|(e, c)| (e.clone(), c.clone())).collect::<Vec<_>>(), expected);
    }

    #[test]
    fn action_examples() {
        let pi = m(&[&[2, 0], &[0, 0]]);
        assert_eq!(gl_action(&GroupMatrix::identity(2), &pi).unwrap(), DividedElement::basis(&pi));
        let g = GroupMatrix::from_rows(&[&[1, 0], &[1, 1]]).unwrap();
        let image = gl_action(&g, &pi).unwrap();
        assert_eq!(image.to_string(), "e([[2,0],[0,0]]) + e([[1,0],[1,0]]) + e([[0,0],[2,0]])");
        assert_eq!(image, gl_action_by_expansion(&g, &pi).unwrap());
    }

    #[test]
    fn equivariance_small() {
        let g = GroupMatrix::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
        for lambda in crate::combinatorics::enumerate_compositions(2, 2) {
            assert!(verify_equivariance(&lambda, &g).unwrap().passed());
        }
        assert!(psi(&m(&[&[1, 0], &[0, 1]]), &c(&[2, 0])).is_err());
    }
}
