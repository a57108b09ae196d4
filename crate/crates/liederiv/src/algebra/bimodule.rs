use serde::Serialize;

use crate::error::Error;
use crate::exact::{Matrix, Scalar};

use super::structure::StructureAlgebra;

/// A finite-dimensional bimodule over a structure-constant algebra, given
/// by action tensors on the bases:
///
///   e_i . x_j = sum_k left[i][j][k] x_k      (left action)
///   x_j . e_i = sum_k right[j][i][k] x_k     (right action)
///
/// Module elements are coordinate vectors in Q^m. `validate` re-checks the
/// unital bimodule axioms against a given algebra.
#[derive(Clone, PartialEq, Debug)]
pub struct Bimodule {
    algebra_dim: usize,
    dim: usize,
    /// l(i,j,k) at `(i * dim + j) * dim + k`, i over the algebra basis.
    left: Vec<Scalar>,
    /// r(j,i,k) at `(j * algebra_dim + i) * dim + k`, j over the module basis.
    right: Vec<Scalar>,
}

impl Bimodule {
    pub fn new(
        algebra_dim: usize,
        left: Vec<Vec<Vec<Scalar>>>,
        right: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, Error> {
        let dim = if algebra_dim == 0 {
            0
        } else {
            left.first().map_or(0, Vec::len)
        };
        let bad = |found| Error::DimensionMismatch {
            context: "bimodule action tensor shape",
            expected: dim,
            found,
        };
        if left.len() != algebra_dim {
            return Err(Error::DimensionMismatch {
                context: "left action tensor length",
                expected: algebra_dim,
                found: left.len(),
            });
        }
        if right.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "right action tensor length",
                expected: dim,
                found: right.len(),
            });
        }
        let mut flat_left = Vec::with_capacity(algebra_dim * dim * dim);
        for plane in &left {
            if plane.len() != dim {
                return Err(bad(plane.len()));
            }
            for row in plane {
                if row.len() != dim {
                    return Err(bad(row.len()));
                }
                flat_left.extend(row.iter().cloned());
            }
        }
        let mut flat_right = Vec::with_capacity(dim * algebra_dim * dim);
        for plane in &right {
            if plane.len() != algebra_dim {
                return Err(Error::DimensionMismatch {
                    context: "right action tensor width",
                    expected: algebra_dim,
                    found: plane.len(),
                });
            }
            for row in plane {
                if row.len() != dim {
                    return Err(bad(row.len()));
                }
                flat_right.extend(row.iter().cloned());
            }
        }
        Ok(Bimodule {
            algebra_dim,
            dim,
            left: flat_left,
            right: flat_right,
        })
    }

    /// Builds from action tables `left(i, j) = e_i . x_j` and
    /// `right(j, i) = x_j . e_i`.
    pub fn from_tables(
        algebra_dim: usize,
        dim: usize,
        mut left: impl FnMut(usize, usize) -> Vec<Scalar>,
        mut right: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let mut flat_left = Vec::with_capacity(algebra_dim * dim * dim);
        for i in 0..algebra_dim {
            for j in 0..dim {
                let v = left(i, j);
                assert_eq!(v.len(), dim);
                flat_left.extend(v);
            }
        }
        let mut flat_right = Vec::with_capacity(dim * algebra_dim * dim);
        for j in 0..dim {
            for i in 0..algebra_dim {
                let v = right(j, i);
                assert_eq!(v.len(), dim);
                flat_right.extend(v);
            }
        }
        Bimodule {
            algebra_dim,
            dim,
            left: flat_left,
            right: flat_right,
        }
    }

    /// The regular bimodule: `a` acting on itself by multiplication.
    pub fn regular(a: &StructureAlgebra) -> Self {
        Bimodule::from_tables(
            a.dim(),
            a.dim(),
            |i, j| a.basis_product(i, j),
            |j, i| a.basis_product(j, i),
        )
    }

    /// The zero bimodule over an algebra of the given dimension.
    pub fn zero(algebra_dim: usize) -> Self {
        Bimodule {
            algebra_dim,
            dim: 0,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn left_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.left[(i * self.dim + j) * self.dim + k]
    }

    pub fn right_constant(&self, j: usize, i: usize, k: usize) -> &Scalar {
        &self.right[(j * self.algebra_dim + i) * self.dim + k]
    }

    /// e_i . x_j as a coordinate vector.
    pub fn left_basis_action(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.left[start..start + self.dim].to_vec()
    }

    /// x_j . e_i as a coordinate vector.
    pub fn right_basis_action(&self, j: usize, i: usize) -> Vec<Scalar> {
        let start = (j * self.algebra_dim + i) * self.dim;
        self.right[start..start + self.dim].to_vec()
    }

    pub fn left_tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.algebra_dim)
            .map(|i| (0..self.dim).map(|j| self.left_basis_action(i, j)).collect())
            .collect()
    }

    pub fn right_tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|j| {
                (0..self.algebra_dim)
                    .map(|i| self.right_basis_action(j, i))
                    .collect()
            })
            .collect()
    }

    /// `a . x` for coordinate vectors.
    pub fn left_action(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), self.algebra_dim);
        assert_eq!(x.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.algebra_dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if x[j].is_zero() {
                    continue;
                }
                let coeff = &a[i] * &x[j];
                for k in 0..self.dim {
                    let c = self.left_constant(i, j, k);
                    if !c.is_zero() {
                        out[k] += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// `x . a` for coordinate vectors.
    pub fn right_action(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(a.len(), self.algebra_dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for j in 0..self.dim {
            if x[j].is_zero() {
                continue;
            }
            for i in 0..self.algebra_dim {
                if a[i].is_zero() {
                    continue;
                }
                let coeff = &x[j] * &a[i];
                for k in 0..self.dim {
                    let c = self.right_constant(j, i, k);
                    if !c.is_zero() {
                        out[k] += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Mixed bracket `[a, x] = a.x - x.a`, a module element.
    pub fn mixed_bracket(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let ax = self.left_action(a, x);
        let xa = self.right_action(x, a);
        ax.into_iter().zip(xa).map(|(u, v)| u - v).collect()
    }

    /// Matrix of `x -> a . x` on module coordinates.
    pub fn left_action_matrix(&self, a: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            (0..self.algebra_dim)
                .filter(|&i| !a[i].is_zero())
                .map(|i| &a[i] * self.left_constant(i, j, k))
                .sum()
        })
    }

    /// Matrix of `x -> x . a` on module coordinates.
    pub fn right_action_matrix(&self, a: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            (0..self.algebra_dim)
                .filter(|&i| !a[i].is_zero())
                .map(|i| self.right_constant(j, i, k) * &a[i])
                .sum()
        })
    }

    /// Matrix of `a -> a . x` from algebra coordinates to module coordinates.
    pub fn algebra_to_module_left(&self, x: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.dim, self.algebra_dim, |k, i| {
            (0..self.dim)
                .filter(|&j| !x[j].is_zero())
                .map(|j| self.left_constant(i, j, k) * &x[j])
                .sum()
        })
    }

    /// Matrix of `a -> x . a` from algebra coordinates to module coordinates.
    pub fn algebra_to_module_right(&self, x: &[Scalar]) -> Matrix {
        Matrix::from_fn(self.dim, self.algebra_dim, |k, i| {
            (0..self.dim)
                .filter(|&j| !x[j].is_zero())
                .map(|j| self.right_constant(j, i, k) * &x[j])
                .sum()
        })
    }

    /// Matrix of `a -> [a, x] = a.x - x.a`.
    pub fn mixed_bracket_matrix(&self, x: &[Scalar]) -> Matrix {
        self.algebra_to_module_left(x)
            .sub(&self.algebra_to_module_right(x))
    }

    /// Re-checks the unital bimodule axioms over `algebra` on all basis
    /// triples: both associativities, the mixed associativity, and the two
    /// unit laws. Every violation is reported.
    pub fn validate(&self, algebra: &StructureAlgebra) -> BimoduleValidation {
        let mut report = BimoduleValidation::default();
        if algebra.dim() != self.algebra_dim {
            report.algebra_dim_mismatch = Some((algebra.dim(), self.algebra_dim));
            return report;
        }
        let n = self.algebra_dim;
        let m = self.dim;
        for i in 0..n {
            for j in 0..n {
                let prod = algebra.basis_product(i, j);
                for k in 0..m {
                    let x = basis(m, k);
                    // (e_i e_j) . x == e_i . (e_j . x)
                    let lhs = self.left_action(&prod, &x);
                    let rhs = self.left_action(&algebra.basis_vector(i), &self.left_basis_action(j, k));
                    if lhs != rhs {
                        report.left_associativity.push([i, j, k]);
                    }
                    // x . (e_i e_j) == (x . e_i) . e_j
                    let lhs = self.right_action(&x, &prod);
                    let rhs = self.right_action(&self.right_basis_action(k, i), &algebra.basis_vector(j));
                    if lhs != rhs {
                        report.right_associativity.push([i, j, k]);
                    }
                    // (e_i . x) . e_j == e_i . (x . e_j)
                    let lhs = self.right_action(&self.left_basis_action(i, k), &algebra.basis_vector(j));
                    let rhs = self.left_action(&algebra.basis_vector(i), &self.right_basis_action(k, j));
                    if lhs != rhs {
                        report.mixed_associativity.push([i, j, k]);
                    }
                }
            }
        }
        for k in 0..m {
            let x = basis(m, k);
            if self.left_action(algebra.unit(), &x) != x {
                report.unit_left.push(k);
            }
            if self.right_action(&x, algebra.unit()) != x {
                report.unit_right.push(k);
            }
        }
        report
    }

    pub fn ensure_valid(&self, algebra: &StructureAlgebra) -> Result<(), Error> {
        let report = self.validate(algebra);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidBimodule {
                violations: report.violation_count(),
            })
        }
    }
}

fn basis(m: usize, k: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); m];
    v[k] = Scalar::one();
    v
}

/// Bimodule axiom report; triples are (algebra index, algebra index,
/// module index) at which the corresponding identity fails.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BimoduleValidation {
    pub algebra_dim_mismatch: Option<(usize, usize)>,
    pub left_associativity: Vec<[usize; 3]>,
    pub right_associativity: Vec<[usize; 3]>,
    pub mixed_associativity: Vec<[usize; 3]>,
    pub unit_left: Vec<usize>,
    pub unit_right: Vec<usize>,
}

impl BimoduleValidation {
    pub fn is_valid(&self) -> bool {
        self.algebra_dim_mismatch.is_none()
            && self.left_associativity.is_empty()
            && self.right_associativity.is_empty()
            && self.mixed_associativity.is_empty()
            && self.unit_left.is_empty()
            && self.unit_right.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        usize::from(self.algebra_dim_mismatch.is_some())
            + self.left_associativity.len()
            + self.right_associativity.len()
            + self.mixed_associativity.len()
            + self.unit_left.len()
            + self.unit_right.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{matrix_units, pointwise};

    #[test]
    fn regular_bimodule_is_valid() {
        let a = matrix_units(2);
        let x = Bimodule::regular(&a);
        assert!(x.validate(&a).is_valid());
    }

    #[test]
    fn broken_action_is_reported() {
        let a = pointwise(2);
        // Doubled character: 1.x = 2x, so the unit law fails on both sides.
        let two = || Scalar::from_int(2);
        let x = Bimodule::from_tables(
            2,
            1,
            |i, _| vec![if i == 0 { two() } else { Scalar::zero() }],
            |_, i| vec![if i == 0 { two() } else { Scalar::zero() }],
        );
        let report = x.validate(&a);
        assert!(!report.is_valid());
        assert_eq!(report.unit_left, vec![0]);
        assert_eq!(report.unit_right, vec![0]);
        assert!(x.ensure_valid(&a).is_err());
    }

    #[test]
    fn action_matrices_agree_with_actions() {
        let a = matrix_units(2);
        let x = Bimodule::regular(&a);
        let v = vec![
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
            Scalar::from_int(4),
        ];
        let w = vec![
            Scalar::from_int(-1),
            Scalar::from_int(0),
            Scalar::from_int(5),
            Scalar::from_int(2),
        ];
        assert_eq!(x.left_action_matrix(&v).mul_vec(&w), x.left_action(&v, &w));
        assert_eq!(x.right_action_matrix(&v).mul_vec(&w), x.right_action(&w, &v));
        assert_eq!(
            x.algebra_to_module_left(&w).mul_vec(&v),
            x.left_action(&v, &w)
        );
        assert_eq!(
            x.algebra_to_module_right(&w).mul_vec(&v),
            x.right_action(&w, &v)
        );
        assert_eq!(
            x.mixed_bracket_matrix(&w).mul_vec(&v),
            x.mixed_bracket(&v, &w)
        );
    }

    #[test]
    fn zero_module_is_valid_and_empty() {
        let a = pointwise(2);
        let x = Bimodule::zero(2);
        assert_eq!(x.dim(), 0);
        assert!(x.validate(&a).is_valid());
    }
}
