use serde::Serialize;

use crate::error::Error;
use crate::exact::{Matrix, Scalar, Subspace};

/// A finite-dimensional unital associative algebra over Q, presented by
/// structure constants on a distinguished basis e_0..e_{n-1}:
///
///   e_i * e_j = sum_k c[i][j][k] e_k
///
/// together with the coordinates of the unit. Elements are coordinate
/// vectors in Q^n. Validation re-checks associativity and the unit laws;
/// nothing downstream assumes them without that check having passed.
#[derive(Clone, PartialEq, Debug)]
pub struct StructureAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// Flattened structure tensor, c(i,j,k) at `(i * dim + j) * dim + k`.
    mul: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl StructureAlgebra {
    pub fn new(
        labels: Vec<String>,
        mul: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, Error> {
        let dim = labels.len();
        let shape_err = |found| Error::DimensionMismatch {
            context: "structure tensor shape",
            expected: dim,
            found,
        };
        if mul.len() != dim {
            return Err(shape_err(mul.len()));
        }
        let mut flat = Vec::with_capacity(dim * dim * dim);
        for plane in &mul {
            if plane.len() != dim {
                return Err(shape_err(plane.len()));
            }
            for row in plane {
                if row.len() != dim {
                    return Err(shape_err(row.len()));
                }
                flat.extend(row.iter().cloned());
            }
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                context: "unit vector length",
                expected: dim,
                found: unit.len(),
            });
        }
        Ok(StructureAlgebra {
            dim,
            labels,
            mul: flat,
            unit,
        })
    }

    /// Builds from a basis-product table: `table(i, j)` returns e_i * e_j.
    pub fn from_table(
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mut table: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Self {
        let dim = labels.len();
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let prod = table(i, j);
                assert_eq!(prod.len(), dim, "product vector has wrong length");
                mul.extend(prod);
            }
        }
        assert_eq!(unit.len(), dim);
        StructureAlgebra {
            dim,
            labels,
            mul,
            unit,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mul[(i * self.dim + j) * self.dim + k]
    }

    /// e_i * e_j as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.mul[start..start + self.dim].to_vec()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    /// Structure tensor in nested form (for serialization).
    pub fn mul_tensor(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    /// Bilinear product of two coordinate vectors.
    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let coeff = &u[i] * &v[j];
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out[k] += &(&coeff * c);
                    }
                }
            }
        }
        out
    }

    /// Commutator `[u, v] = uv - vu`.
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let uv = self.multiply(u, v);
        let vu = self.multiply(v, u);
        uv.into_iter().zip(vu).map(|(a, b)| a - b).collect()
    }

    /// Matrix of left multiplication by `v`: column action `w -> v w`.
    pub fn left_mult_matrix(&self, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), self.dim);
        Matrix::from_fn(self.dim, self.dim, |k, l| {
            (0..self.dim)
                .filter(|&i| !v[i].is_zero())
                .map(|i| &v[i] * self.structure_constant(i, l, k))
                .sum()
        })
    }

    /// Matrix of right multiplication by `v`: `w -> w v`.
    pub fn right_mult_matrix(&self, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), self.dim);
        Matrix::from_fn(self.dim, self.dim, |k, l| {
            (0..self.dim)
                .filter(|&j| !v[j].is_zero())
                .map(|j| self.structure_constant(l, j, k) * &v[j])
                .sum()
        })
    }

    /// Left multiplication by the basis vector e_i.
    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, l| {
            self.structure_constant(i, l, k).clone()
        })
    }

    /// Right multiplication by the basis vector e_j.
    pub fn right_mult_basis(&self, j: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |k, l| {
            self.structure_constant(l, j, k).clone()
        })
    }

    /// Re-checks associativity on all basis triples and both unit laws.
    /// Every violation is reported, not just the first.
    pub fn validate(&self) -> AlgebraValidation {
        let n = self.dim;
        let mut report = AlgebraValidation::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let lhs: Scalar = (0..n)
                            .map(|m| self.structure_constant(i, j, m) * self.structure_constant(m, k, l))
                            .sum();
                        let rhs: Scalar = (0..n)
                            .map(|m| self.structure_constant(j, k, m) * self.structure_constant(i, m, l))
                            .sum();
                        if lhs != rhs {
                            report.associativity.push([i, j, k, l]);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.multiply(&self.unit, &e) != e {
                report.unit_left.push(i);
            }
            if self.multiply(&e, &self.unit) != e {
                report.unit_right.push(i);
            }
        }
        report
    }

    /// Errors out (with the violation count) unless validation is clean.
    pub fn ensure_valid(&self) -> Result<(), Error> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidAlgebra {
                violations: report.violation_count(),
            })
        }
    }

    /// Center `{z : z a = a z for all a}`, computed as the kernel of the
    /// stacked operators `L_{e_i} - R_{e_i}`.
    pub fn center(&self) -> Subspace {
        let mut stacked = Matrix::zeros(0, self.dim);
        for i in 0..self.dim {
            let diff = self.left_mult_basis(i).sub(&self.right_mult_basis(i));
            stacked = stacked.vstack(&diff);
        }
        stacked.kernel_basis()
    }

    /// Span of all commutators `[e_i, e_j]`, i < j.
    pub fn commutator_subspace(&self) -> Subspace {
        let mut vectors = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let ij = self.basis_product(i, j);
                let ji = self.basis_product(j, i);
                vectors.push(ij.into_iter().zip(ji).map(|(a, b)| a - b).collect());
            }
        }
        Subspace::from_span(self.dim, vectors)
    }

    /// Image of `a -> e a f` for idempotent-like elements `e`, `f`
    /// (the Peirce component relative to the pair).
    pub fn peirce_component(&self, e: &[Scalar], f: &[Scalar]) -> Subspace {
        let map = self.left_mult_matrix(e).mul(&self.right_mult_matrix(f));
        let columns: Vec<Vec<Scalar>> = (0..self.dim).map(|c| map.col(c)).collect();
        Subspace::from_span(self.dim, columns)
    }

    /// Smallest subalgebra (not required to contain the unit) whose span
    /// contains the generators: alternate span-closure and products until
    /// the dimension stabilizes.
    pub fn subalgebra_closure(&self, generators: &[Vec<Scalar>]) -> Subspace {
        let mut space = Subspace::from_span(self.dim, generators.to_vec());
        loop {
            let basis = space.basis().row_vecs();
            let mut products = Vec::new();
            for u in &basis {
                for v in &basis {
                    let p = self.multiply(u, v);
                    if !space.contains(&p) {
                        products.push(p);
                    }
                }
            }
            if products.is_empty() {
                return space;
            }
            let grown = space
                .sum(&Subspace::from_span(self.dim, products))
                .expect("same ambient");
            debug_assert!(grown.dim() > space.dim());
            space = grown;
        }
    }
}

/// Validation report for a structure-constant presentation. Associativity
/// violations are identified by the basis index quadruple (i, j, k, l) at
/// which the two ways of bracketing e_i e_j e_k differ in coordinate l.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AlgebraValidation {
    pub associativity: Vec<[usize; 4]>,
    pub unit_left: Vec<usize>,
    pub unit_right: Vec<usize>,
}

impl AlgebraValidation {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty() && self.unit_left.is_empty() && self.unit_right.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.associativity.len() + self.unit_left.len() + self.unit_right.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builders::{matrix_units, pointwise, upper_triangular_2};

    #[test]
    fn validation_passes_on_matrix_algebra() {
        let a = matrix_units(2);
        assert!(a.validate().is_valid());
    }

    #[test]
    fn validation_reports_every_broken_triple() {
        // Corrupt e0*e0 in M_2: associativity breaks at many quadruples,
        // and each one is listed.
        let mut mul = matrix_units(2).mul_tensor();
        mul[0][0][1] = Scalar::one();
        let labels = matrix_units(2).labels().to_vec();
        let unit = matrix_units(2).unit().to_vec();
        let broken = StructureAlgebra::new(labels, mul, unit).unwrap();
        let report = broken.validate();
        assert!(!report.is_valid());
        assert!(!report.associativity.is_empty());
        assert!(broken.ensure_valid().is_err());
    }

    #[test]
    fn unit_law_violations_are_reported_by_index() {
        let a = pointwise(2);
        let bad_unit = vec![Scalar::one(), Scalar::zero()];
        let broken =
            StructureAlgebra::new(a.labels().to_vec(), a.mul_tensor(), bad_unit).unwrap();
        let report = broken.validate();
        assert_eq!(report.unit_left, vec![1]);
        assert_eq!(report.unit_right, vec![1]);
        assert!(report.associativity.is_empty());
    }

    #[test]
    fn center_of_full_matrix_algebra_is_scalars() {
        let a = matrix_units(2);
        let z = a.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(a.unit()));
    }

    #[test]
    fn center_of_upper_triangular_2_is_scalars() {
        let a = upper_triangular_2();
        assert_eq!(a.center().dim(), 1);
    }

    #[test]
    fn commutators_of_matrix_algebra_are_trace_zero() {
        let a = matrix_units(2);
        let c = a.commutator_subspace();
        assert_eq!(c.dim(), 3);
        assert!(!c.contains(a.unit()));
    }

    #[test]
    fn multiplication_matrices_match_products() {
        let a = upper_triangular_2();
        let u = vec![Scalar::from_int(2), Scalar::from_int(-1), Scalar::from_int(5)];
        let v = vec![Scalar::from_int(1), Scalar::from_int(3), Scalar::from_int(-2)];
        assert_eq!(a.left_mult_matrix(&u).mul_vec(&v), a.multiply(&u, &v));
        assert_eq!(a.right_mult_matrix(&v).mul_vec(&u), a.multiply(&u, &v));
    }

    #[test]
    fn closure_of_nilpotent_generator_stays_small() {
        // In T_2, the span of E_12 is already closed under products.
        let a = upper_triangular_2();
        let gen = vec![a.basis_vector(1)];
        let s = a.subalgebra_closure(&gen);
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn closure_grows_to_products() {
        // g = E_11 + E_12 + 2 E_22 has g^2 = E_11 + 3 E_12 + 4 E_22,
        // independent of g; higher powers stay in their plane.
        let a = upper_triangular_2();
        let mut g = a.basis_vector(0);
        g[1] = Scalar::one();
        g[2] = Scalar::from_int(2);
        let s = a.subalgebra_closure(&[g.clone()].to_vec());
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&a.multiply(&g, &g)));
    }
}
