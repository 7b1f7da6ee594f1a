//! Polynomial scalar fields in the flattened chart coordinates.

use alloc::vec::Vec;

use rand::Rng;

use super::linalg::Matrix;

/// `Σ c · Π xᵢ^{kᵢ}` over the row-major entries of a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    variables: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl ScalarField {
    pub fn zero(variables: usize) -> Self {
        ScalarField { variables, terms: Vec::new() }
    }

    pub fn constant(variables: usize, c: f64) -> Self {
        ScalarField { variables, terms: alloc::vec![(c, alloc::vec![0; variables])] }
    }

    /// The `i`-th coordinate function.
    pub fn coordinate(variables: usize, i: usize) -> Self {
        let mut exps = alloc::vec![0; variables];
        exps[i] = 1;
        ScalarField { variables, terms: alloc::vec![(1.0, exps)] }
    }

    pub fn linear(coefficients: &[f64]) -> Self {
        let n = coefficients.len();
        let mut f = Self::zero(n);
        for (i, &c) in coefficients.iter().enumerate() {
            f = f.add(&Self::coordinate(n, i).scale(c));
        }
        f
    }

    /// `terms` monomials with uniform coefficients in `[-1, 1]` and total
    /// degree at most `degree`.
    pub fn random<R: Rng>(rng: &mut R, variables: usize, degree: u32, terms: usize) -> Self {
        let mut out = Vec::with_capacity(terms);
        for _ in 0..terms {
            let mut exps = alloc::vec![0u32; variables];
            let d = rng.gen_range(0..=degree);
            for _ in 0..d {
                exps[rng.gen_range(0..variables)] += 1;
            }
            out.push((rng.gen_range(-1.0..1.0), exps));
        }
        ScalarField { variables, terms: out }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, e)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &Matrix) -> f64 {
        let x = point.as_slice();
        assert_eq!(x.len(), self.variables, "point has the wrong number of coordinates");
        self.terms
            .iter()
            .map(|(c, exps)| exps.iter().zip(x).fold(*c, |acc, (&k, &xi)| acc * libm::pow(xi, f64::from(k))))
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        ScalarField { variables: self.variables, terms: self.terms.iter().map(|(c, e)| (c * s, e.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.variables, other.variables);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ScalarField { variables: self.variables, terms }
    }

    /// Product as a polynomial, term by term.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.variables, other.variables);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ea) in &self.terms {
            for (b, eb) in &other.terms {
                terms.push((a * b, ea.iter().zip(eb).map(|(x, y)| x + y).collect()));
            }
        }
        ScalarField { variables: self.variables, terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        let x = Matrix::column(&[2.0, -1.0]);
        let f = ScalarField::coordinate(2, 0).mul(&ScalarField::coordinate(2, 1)).add(&ScalarField::constant(2, 3.0));
        assert_eq!(f.eval(&x), 1.0);
        assert_eq!(f.degree(), 2);
        assert_eq!(ScalarField::linear(&[1.0, 4.0]).eval(&x), -2.0);
        assert_eq!(ScalarField::zero(2).eval(&x), 0.0);
    }
}
