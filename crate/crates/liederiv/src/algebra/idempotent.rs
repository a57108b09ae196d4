use std::collections::BTreeSet;

use crate::error::Error;
use crate::exact::{Matrix, Scalar, Subspace};

use super::structure::StructureAlgebra;

/// A verified idempotent element: `e * e = e` is checked at construction
/// and the invariant cannot be broken afterwards. The complement `1 - e`
/// is always derived, never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Idempotent {
    vector: Vec<Scalar>,
}

impl Idempotent {
    pub fn new(a: &StructureAlgebra, vector: Vec<Scalar>) -> Result<Self, Error> {
        if vector.len() != a.dim() {
            return Err(Error::DimensionMismatch {
                context: "idempotent vector length",
                expected: a.dim(),
                found: vector.len(),
            });
        }
        if a.multiply(&vector, &vector) != vector {
            return Err(Error::NotIdempotent);
        }
        Ok(Idempotent { vector })
    }

    pub fn vector(&self) -> &[Scalar] {
        &self.vector
    }

    /// Zero and the unit are the trivial idempotents.
    pub fn is_trivial(&self, a: &StructureAlgebra) -> bool {
        self.vector.iter().all(Scalar::is_zero) || self.vector == a.unit()
    }

    /// The complementary idempotent `1 - e`.
    pub fn complement(&self, a: &StructureAlgebra) -> Idempotent {
        let vector: Vec<Scalar> = a
            .unit()
            .iter()
            .zip(&self.vector)
            .map(|(u, e)| u - e)
            .collect();
        debug_assert_eq!(a.multiply(&vector, &vector), vector);
        Idempotent { vector }
    }
}

/// Outcome of the idempotent search. `exhaustive` is true only when the
/// search provably enumerated every idempotent of the algebra (currently:
/// bases with pairwise-orthogonal vectors squaring into themselves, i.e.
/// pointwise-style products, within budget). Otherwise the list is a
/// correct but possibly incomplete sample.
#[derive(Clone, Debug)]
pub struct IdempotentSearch {
    pub found: Vec<Idempotent>,
    pub exhaustive: bool,
}

/// Budgeted idempotent search.
///
/// Strategy: seed with zero, the unit, idempotent basis vectors and
/// complements; close under sums of orthogonal pairs; then run a
/// support-pattern search: choose a maximal set U of basis coordinates
/// whose pairwise products vanish, fix a 0/1 pattern on the remaining
/// coordinates, and solve `e^2 = e`, which has become linear in the U
/// coordinates. The budget bounds the number of patterns tried.
pub fn find_idempotents(a: &StructureAlgebra, budget: usize) -> IdempotentSearch {
    let n = a.dim();
    let mut found: BTreeSet<Vec<Scalar>> = BTreeSet::new();
    let push = |set: &mut BTreeSet<Vec<Scalar>>, v: Vec<Scalar>| {
        if a.multiply(&v, &v) == v {
            set.insert(v);
        }
    };

    push(&mut found, vec![Scalar::zero(); n]);
    push(&mut found, a.unit().to_vec());
    for i in 0..n {
        push(&mut found, a.basis_vector(i));
    }

    let mut exhaustive = false;
    if let Some(diagonal) = pointwise_diagonal(a) {
        // e^2 = e decouples per coordinate: t_i in {0, 1/lambda_i}
        // (just {0} where lambda_i = 0). Enumerate everything if the
        // budget allows; that enumeration is provably complete.
        let options: Vec<Vec<Scalar>> = diagonal
            .iter()
            .map(|lambda| {
                if lambda.is_zero() {
                    vec![Scalar::zero()]
                } else {
                    vec![Scalar::zero(), lambda.recip()]
                }
            })
            .collect();
        let total: usize = options.iter().map(Vec::len).product();
        if total <= budget.max(1) {
            let mut stack = vec![Vec::new()];
            for opts in &options {
                let mut next = Vec::new();
                for prefix in &stack {
                    for o in opts {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        next.push(v);
                    }
                }
                stack = next;
            }
            for v in stack {
                push(&mut found, v);
            }
            exhaustive = true;
        }
    } else {
        support_pattern_search(a, budget, &mut found);
    }

    // Complements, then sums of orthogonal pairs, to a fixpoint.
    loop {
        let snapshot: Vec<Vec<Scalar>> = found.iter().cloned().collect();
        let before = found.len();
        for e in &snapshot {
            let c: Vec<Scalar> = a.unit().iter().zip(e).map(|(u, x)| u - x).collect();
            push(&mut found, c);
        }
        for e in &snapshot {
            for f in &snapshot {
                let ef = a.multiply(e, f);
                let fe = a.multiply(f, e);
                if ef.iter().all(Scalar::is_zero) && fe.iter().all(Scalar::is_zero) {
                    let sum: Vec<Scalar> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                    push(&mut found, sum);
                }
            }
        }
        if found.len() == before || found.len() > budget.max(16) {
            break;
        }
    }

    IdempotentSearch {
        found: found
            .into_iter()
            .map(|vector| Idempotent { vector })
            .collect(),
        exhaustive,
    }
}

/// If every off-diagonal basis product vanishes and e_i^2 = lambda_i e_i,
/// returns the lambdas. In that case idempotents decouple per coordinate.
fn pointwise_diagonal(a: &StructureAlgebra) -> Option<Vec<Scalar>> {
    let n = a.dim();
    let mut lambdas = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            let prod = a.basis_product(i, j);
            if i != j {
                if prod.iter().any(|c| !c.is_zero()) {
                    return None;
                }
            } else {
                for (k, c) in prod.iter().enumerate() {
                    if k != i && !c.is_zero() {
                        return None;
                    }
                }
                lambdas.push(prod[i].clone());
            }
        }
    }
    Some(lambdas)
}

fn support_pattern_search(
    a: &StructureAlgebra,
    budget: usize,
    found: &mut BTreeSet<Vec<Scalar>>,
) {
    let n = a.dim();
    // Greedy maximal set U of coordinates with all pairwise products zero
    // (including squares), so terms quadratic in the unknowns vanish.
    let mut unknown: Vec<usize> = Vec::new();
    for i in 0..n {
        let self_ok = a.basis_product(i, i).iter().all(Scalar::is_zero);
        let pair_ok = unknown.iter().all(|&j| {
            a.basis_product(i, j).iter().all(Scalar::is_zero)
                && a.basis_product(j, i).iter().all(Scalar::is_zero)
        });
        if self_ok && pair_ok {
            unknown.push(i);
        }
    }
    let fixed: Vec<usize> = (0..n).filter(|i| !unknown.contains(i)).collect();
    if fixed.len() >= usize::BITS as usize {
        return;
    }
    let patterns = 1usize << fixed.len();
    for bits in 0..patterns.min(budget.max(1)) {
        let mut f = vec![Scalar::zero(); n];
        for (pos, &idx) in fixed.iter().enumerate() {
            if bits & (1 << pos) != 0 {
                f[idx] = Scalar::one();
            }
        }
        // Solve (L_f + R_f - I) u = f - f^2 over the unknown coordinates.
        let op = a
            .left_mult_matrix(&f)
            .add(&a.right_mult_matrix(&f))
            .sub(&Matrix::identity(n));
        let system = Matrix::from_fn(n, unknown.len(), |r, c| op[(r, unknown[c])].clone());
        let ff = a.multiply(&f, &f);
        let rhs: Vec<Scalar> = f.iter().zip(&ff).map(|(x, y)| x - y).collect();
        if let Ok(Some(t)) = system.solve(&rhs) {
            let mut e = f.clone();
            for (pos, &idx) in unknown.iter().enumerate() {
                e[idx] = t[pos].clone();
            }
            if a.multiply(&e, &e) == e {
                found.insert(e);
            }
        }
    }
}

/// A corner algebra `e A e` for an idempotent `e`, re-based on the
/// canonical basis of its image inside the ambient algebra.
#[derive(Clone, Debug)]
pub struct Corner {
    algebra: StructureAlgebra,
    /// Rows are the ambient coordinates of the corner basis vectors (RREF).
    inclusion: Matrix,
    pivots: Vec<usize>,
    idempotent: Idempotent,
}

impl Corner {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn idempotent(&self) -> &Idempotent {
        &self.idempotent
    }

    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    /// Corner coordinates -> ambient coordinates.
    pub fn to_ambient(&self, coords: &[Scalar]) -> Vec<Scalar> {
        crate::exact::matrix::combine(self.inclusion.cols(), coords, &self.inclusion)
    }

    /// Ambient coordinates -> corner coordinates, if the vector lies in the
    /// corner. Because the inclusion rows are in RREF, coordinates can be
    /// read off at the pivot columns once membership is confirmed.
    pub fn from_ambient(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.to_ambient(&coords);
        if recon == v {
            Some(coords)
        } else {
            None
        }
    }
}

/// Extracts the corner `e A e` as a structure-constant algebra with unit
/// `e`, together with the inclusion back into `A`.
pub fn corner(a: &StructureAlgebra, e: &Idempotent) -> Corner {
    let n = a.dim();
    let map = a
        .left_mult_matrix(e.vector())
        .mul(&a.right_mult_matrix(e.vector()));
    let columns: Vec<Vec<Scalar>> = (0..n).map(|c| map.col(c)).collect();
    let image = Subspace::from_span(n, columns);
    let inclusion = image.basis().clone();
    let pivots = image.pivots().to_vec();
    let labels: Vec<String> = pivots.iter().map(|&p| a.labels()[p].clone()).collect();
    let coords_of = |v: &[Scalar]| -> Vec<Scalar> {
        debug_assert!(image.contains(v), "corner product left the corner");
        pivots.iter().map(|&p| v[p].clone()).collect()
    };
    let unit = coords_of(e.vector());
    let basis_rows = inclusion.row_vecs();
    let algebra = StructureAlgebra::from_table(labels, unit, |i, j| {
        coords_of(&a.multiply(&basis_rows[i], &basis_rows[j]))
    });
    debug_assert!(algebra.validate().is_valid());
    Corner {
        algebra,
        inclusion,
        pivots,
        idempotent: e.clone(),
    }
}

/// The smallest subalgebra containing all commutators and all idempotents
/// the budgeted search can find (plus caller-supplied extras). The result
/// is a lower bound for that subalgebra; the second component is true when
/// it provably is the whole algebra, which is the only certification this
/// computation can give.
pub fn w_subalgebra(
    a: &StructureAlgebra,
    extra_idempotents: &[Idempotent],
    budget: usize,
) -> Result<(Subspace, bool), Error> {
    for e in extra_idempotents {
        if e.vector().len() != a.dim() {
            return Err(Error::DimensionMismatch {
                context: "extra idempotent length",
                expected: a.dim(),
                found: e.vector().len(),
            });
        }
        if a.multiply(e.vector(), e.vector()) != e.vector() {
            return Err(Error::NotIdempotent);
        }
    }
    let mut generators = a.commutator_subspace().basis().row_vecs();
    for e in find_idempotents(a, budget).found {
        generators.push(e.vector().to_vec());
    }
    for e in extra_idempotents {
        generators.push(e.vector().to_vec());
    }
    let closure = a.subalgebra_closure(&generators);
    let certified = closure.dim() == a.dim();
    Ok((closure, certified))
}
