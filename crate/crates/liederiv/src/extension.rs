//! Trivial extension algebras `A ⋉ X`: the vector space `A ⊕ X` with
//! product `(a, x)(b, y) = (ab, a.y + x.b)`, so `X` embeds as a
//! square-zero ideal. Triangular algebras arise as the special case
//! `A ⊕ B ⋉ X` with `X` an (A, B)-bimodule lifted to the direct sum.
//!
//! The basis of the total algebra is the concatenation of the base basis
//! and the module basis, so the embeddings and projections are coordinate
//! slices and never need to be stored.

use serde::Serialize;

use crate::algebra::{Bimodule, Idempotent, StructureAlgebra};
use crate::algebra::builders::direct_sum;
use crate::error::Error;
use crate::exact::{Scalar, Subspace};

/// A trivial extension `A ⋉ X` with the assembled total algebra.
#[derive(Clone, Debug)]
pub struct TrivialExtension {
    base: StructureAlgebra,
    module: Bimodule,
    total: StructureAlgebra,
}

impl TrivialExtension {
    /// Validates the base and the module, assembles the total algebra, and
    /// re-validates the result (associativity of the total algebra is a
    /// theorem, but it is checked, not assumed).
    pub fn build(base: StructureAlgebra, module: Bimodule) -> Result<Self, Error> {
        base.ensure_valid()?;
        if module.algebra_dim() != base.dim() {
            return Err(Error::DimensionMismatch {
                context: "bimodule algebra dimension",
                expected: base.dim(),
                found: module.algebra_dim(),
            });
        }
        module.ensure_valid(&base)?;
        let n = base.dim();
        let m = module.dim();
        let mut labels: Vec<String> = base.labels().to_vec();
        for j in 0..m {
            let mut candidate = format!("x{j}");
            while labels.contains(&candidate) {
                candidate.push('\'');
            }
            labels.push(candidate);
        }
        let mut unit = base.unit().to_vec();
        unit.extend(vec![Scalar::zero(); m]);
        let total = StructureAlgebra::from_table(labels, unit, |i, j| {
            let mut v = vec![Scalar::zero(); n + m];
            if i < n && j < n {
                v[..n].clone_from_slice(&base.basis_product(i, j));
            } else if i < n && j >= n {
                v[n..].clone_from_slice(&module.left_basis_action(i, j - n));
            } else if i >= n && j < n {
                v[n..].clone_from_slice(&module.right_basis_action(i - n, j));
            } // x * y = 0: the module embeds square-zero
            v
        });
        let report = total.validate();
        assert!(
            report.is_valid(),
            "total algebra of a validated extension must validate"
        );
        Ok(TrivialExtension {
            base,
            module,
            total,
        })
    }

    pub fn base(&self) -> &StructureAlgebra {
        &self.base
    }

    pub fn module(&self) -> &Bimodule {
        &self.module
    }

    pub fn total(&self) -> &StructureAlgebra {
        &self.total
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn module_dim(&self) -> usize {
        self.module.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.total.dim()
    }

    pub fn embed_base(&self, a: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), self.base_dim());
        let mut v = a.to_vec();
        v.extend(vec![Scalar::zero(); self.module_dim()]);
        v
    }

    pub fn embed_module(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.module_dim());
        let mut v = vec![Scalar::zero(); self.base_dim()];
        v.extend_from_slice(x);
        v
    }

    pub fn project_base(&self, v: &[Scalar]) -> Vec<Scalar> {
        v[..self.base_dim()].to_vec()
    }

    pub fn project_module(&self, v: &[Scalar]) -> Vec<Scalar> {
        v[self.base_dim()..].to_vec()
    }
}

/// A trivial extension together with a nontrivial idempotent `p` of the
/// base satisfying `p x q = x` for every module element (`q = 1 - p`).
/// Constructed through `check_star`, which verifies that identity on the
/// module basis.
#[derive(Clone, Debug)]
pub struct StarContext {
    extension: TrivialExtension,
    p: Idempotent,
}

impl StarContext {
    /// Caller asserts the compatibility identity instead of proving it;
    /// used to build deliberate negative controls in test suites. Normal
    /// construction goes through `check_star`.
    pub fn assume(extension: TrivialExtension, p: Idempotent) -> Self {
        StarContext { extension, p }
    }

    pub fn extension(&self) -> &TrivialExtension {
        &self.extension
    }

    pub fn p(&self) -> &Idempotent {
        &self.p
    }

    pub fn p_vec(&self) -> &[Scalar] {
        self.p.vector()
    }

    /// `q = 1 - p`, derived on demand.
    pub fn q(&self) -> Idempotent {
        self.p.complement(self.extension.base())
    }
}

/// Result of testing the idempotent-compatibility condition.
#[derive(Clone, Debug)]
pub enum StarCheck {
    Holds(StarContext),
    /// The first module basis index where `p x q != x`.
    Violated { module_index: usize },
}

/// Checks `p x_j q = x_j` for every module basis vector. The idempotent
/// must be nontrivial; a trivial one is an input error, not a violation.
pub fn check_star(extension: &TrivialExtension, p: &Idempotent) -> Result<StarCheck, Error> {
    let base = extension.base();
    if p.vector().len() != base.dim() {
        return Err(Error::DimensionMismatch {
            context: "idempotent vector length",
            expected: base.dim(),
            found: p.vector().len(),
        });
    }
    if p.is_trivial(base) {
        return Err(Error::TrivialIdempotent);
    }
    let q = p.complement(base);
    let module = extension.module();
    for j in 0..module.dim() {
        let mut x = vec![Scalar::zero(); module.dim()];
        x[j] = Scalar::one();
        let px = module.left_action(p.vector(), &x);
        let pxq = module.right_action(&px, q.vector());
        if pxq != x {
            return Ok(StarCheck::Violated { module_index: j });
        }
    }
    Ok(StarCheck::Holds(StarContext {
        extension: extension.clone(),
        p: p.clone(),
    }))
}

/// Which multiplication shortcut failed, and where.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplificationIdentity {
    /// q . x = 0
    QxZero,
    /// x . p = 0
    XpZero,
    /// p . x = x
    PxIdentity,
    /// x . q = x
    XqIdentity,
    /// a . x = (p a p) . x
    LeftThroughCorner,
    /// x . a = x . (q a q)
    RightThroughCorner,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplificationViolation {
    pub identity: SimplificationIdentity,
    /// Algebra basis index, for the identities quantified over `a`.
    pub algebra_index: Option<usize>,
    pub module_index: usize,
}

/// Report of the multiplication shortcuts implied by the compatibility
/// condition; empty on any honestly-constructed context.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SimplificationReport {
    pub violations: Vec<SimplificationViolation>,
}

impl SimplificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies, on all basis elements, the simplification identities
/// `qx = 0`, `xp = 0`, `px = x`, `xq = x`, `ax = (pap)x`, `xa = x(qaq)`.
pub fn check_simplifications(ctx: &StarContext) -> SimplificationReport {
    let ext = ctx.extension();
    let base = ext.base();
    let module = ext.module();
    let p = ctx.p_vec();
    let q = ctx.q();
    let q = q.vector();
    let mut report = SimplificationReport::default();
    let mut record = |identity, algebra_index, module_index| {
        report.violations.push(SimplificationViolation {
            identity,
            algebra_index,
            module_index,
        });
    };
    for j in 0..module.dim() {
        let mut x = vec![Scalar::zero(); module.dim()];
        x[j] = Scalar::one();
        if module.left_action(q, &x).iter().any(|c| !c.is_zero()) {
            record(SimplificationIdentity::QxZero, None, j);
        }
        if module.right_action(&x, p).iter().any(|c| !c.is_zero()) {
            record(SimplificationIdentity::XpZero, None, j);
        }
        if module.left_action(p, &x) != x {
            record(SimplificationIdentity::PxIdentity, None, j);
        }
        if module.right_action(&x, q) != x {
            record(SimplificationIdentity::XqIdentity, None, j);
        }
        for i in 0..base.dim() {
            let a = base.basis_vector(i);
            let pap = base.multiply(p, &base.multiply(&a, p));
            if module.left_action(&a, &x) != module.left_action(&pap, &x) {
                record(SimplificationIdentity::LeftThroughCorner, Some(i), j);
            }
            let qaq = base.multiply(q, &base.multiply(&a, q));
            if module.right_action(&x, &a) != module.right_action(&x, &qaq) {
                record(SimplificationIdentity::RightThroughCorner, Some(i), j);
            }
        }
    }
    report
}

/// The center of the total algebra computed from the closed form valid
/// under a compatibility context: `{(a, 0) : a central in A, [a, x] = 0}`.
/// Must coincide with the directly computed center; callers (and the
/// campaign suites) assert that equality rather than assume it.
pub fn center_via_formula(ctx: &StarContext) -> Subspace {
    let ext = ctx.extension();
    let base = ext.base();
    let module = ext.module();
    let n = base.dim();
    let m = module.dim();
    // a must be central in A and commute with the module: [a, x_j] = 0.
    let mut constraint = base.center().annihilator().basis().clone();
    for j in 0..m {
        let mut x = vec![Scalar::zero(); m];
        x[j] = Scalar::one();
        constraint = constraint.vstack(&module.mixed_bracket_matrix(&x));
    }
    let commuting = constraint.kernel_basis();
    let vectors: Vec<Vec<Scalar>> = commuting
        .basis()
        .row_vecs()
        .into_iter()
        .map(|a| ext.embed_base(&a))
        .collect();
    let formula = Subspace::from_span(n + m, vectors);
    debug_assert_eq!(
        formula,
        ext.total().center(),
        "closed-form center disagrees with direct computation"
    );
    formula
}

/// An (A, B)-bimodule presented by its two one-sided action tensors:
/// `left[i][j][k]` for the A-action and `right[j][i][k]` for the B-action.
#[derive(Clone, Debug)]
pub struct AbBimodule {
    pub dim: usize,
    /// `left[i][j][k]`: i over the A basis, j, k over the module basis.
    pub left: Vec<Vec<Vec<Scalar>>>,
    /// `right[j][i][k]`: j over the module basis, i over the B basis.
    pub right: Vec<Vec<Vec<Scalar>>>,
}

/// A triangular algebra `Tri(A, X, B)` realized as the trivial extension
/// `(A ⊕ B) ⋉ X`, keeping the original summands for the checks that
/// operate on them directly.
#[derive(Clone, Debug)]
pub struct TriangularBuild {
    pub a: StructureAlgebra,
    pub b: StructureAlgebra,
    pub star: StarContext,
}

impl TriangularBuild {
    pub fn extension(&self) -> &TrivialExtension {
        self.star.extension()
    }
}

/// Builds `Tri(A, X, B)`: forms `A ⊕ B`, lifts `X` to a bimodule over the
/// sum (A acts on the left, B on the right, the other two actions vanish),
/// validates the lift, and verifies the compatibility condition at
/// `p = (1_A, 0)` together with the corner identities `pDq = qDp = 0`.
pub fn build_triangular(
    a: &StructureAlgebra,
    x: &AbBimodule,
    b: &StructureAlgebra,
) -> Result<TriangularBuild, Error> {
    a.ensure_valid()?;
    b.ensure_valid()?;
    let na = a.dim();
    let nb = b.dim();
    let m = x.dim;
    if x.left.len() != na {
        return Err(Error::DimensionMismatch {
            context: "left action tensor length",
            expected: na,
            found: x.left.len(),
        });
    }
    let sum = direct_sum(a, b);
    let zero_row = vec![Scalar::zero(); m];
    let mut left = Vec::with_capacity(na + nb);
    for i in 0..na + nb {
        if i < na {
            left.push(x.left[i].clone());
        } else {
            left.push(vec![zero_row.clone(); m]);
        }
    }
    let mut right = Vec::with_capacity(m);
    for j in 0..m {
        if x.right.len() != m {
            return Err(Error::DimensionMismatch {
                context: "right action tensor length",
                expected: m,
                found: x.right.len(),
            });
        }
        let mut plane = vec![zero_row.clone(); na];
        plane.extend(x.right[j].iter().cloned());
        if plane.len() != na + nb {
            return Err(Error::DimensionMismatch {
                context: "right action tensor width",
                expected: nb,
                found: x.right[j].len(),
            });
        }
        right.push(plane);
    }
    let lifted = Bimodule::new(na + nb, left, right)?;
    lifted.ensure_valid(&sum)?;
    let extension = TrivialExtension::build(sum, lifted)?;
    let base = extension.base();
    let mut p_vec = a.unit().to_vec();
    p_vec.extend(vec![Scalar::zero(); nb]);
    let p = Idempotent::new(base, p_vec).expect("(1_A, 0) is idempotent");
    let star = match check_star(&extension, &p)? {
        StarCheck::Holds(ctx) => ctx,
        StarCheck::Violated { module_index } => unreachable!(
            "triangular compatibility failed at module index {module_index}"
        ),
    };
    let q = star.q();
    assert!(
        base.peirce_component(star.p_vec(), q.vector()).is_zero(),
        "pDq must vanish in a direct sum"
    );
    assert!(
        base.peirce_component(q.vector(), star.p_vec()).is_zero(),
        "qDp must vanish in a direct sum"
    );
    Ok(TriangularBuild {
        a: a.clone(),
        b: b.clone(),
        star,
    })
}
