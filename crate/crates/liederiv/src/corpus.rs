//! Built-in instances, deterministic instance families, and the
//! invariant campaign that runs the decision procedures across them.
//!
//! Instances never come from raw random structure tensors (associativity
//! would almost surely fail); every family is a construction that is
//! associative by design, so a campaign failure always means a bug or a
//! falsified expectation, never a bad sample.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::builders::{
    direct_sum, dual_numbers, m4_block5, matrix_units, pointwise, scalar_plus_nil3,
};
use crate::algebra::{corner, find_idempotents, Bimodule, Idempotent, StructureAlgebra};
use crate::derivations::{
    decompose, derivation_conditions_subspace, derivation_space, is_derivation,
    lie_conditions_subspace, lie_derivation_space, unflatten,
};
use crate::error::Error;
use crate::exact::matrix::combine;
use crate::exact::{Matrix, Scalar};
use crate::extension::{
    build_triangular, center_via_formula, check_star, AbBimodule, StarCheck, StarContext,
    TrivialExtension,
};
use crate::properness::{
    central_witness, has_lie_derivation_property, has_lie_derivation_property_with,
    is_proper_with, ldp_sufficiency, loyalty, proof_identity_holds, proper_spaces,
    tau_isomorphism, triangular_sufficiency, Conclusion, ProperSpaces, TauOutcome, Verdict,
};

/// Default pattern budget for idempotent searches driven by the corpus.
pub const DEFAULT_BUDGET: usize = 512;

/// Where an expected fact comes from: quoted from the source material,
/// forced by definitions, or derived — in which case the independent
/// oracle is named.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived { oracle: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExpectedValue {
    Bool(bool),
    Dim(usize),
    Text(String),
}

impl fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedValue::Bool(b) => write!(f, "{b}"),
            ExpectedValue::Dim(d) => write!(f, "{d}"),
            ExpectedValue::Text(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedFact {
    pub value: ExpectedValue,
    pub provenance: Provenance,
}

fn paper(value: ExpectedValue) -> ExpectedFact {
    ExpectedFact {
        value,
        provenance: Provenance::Paper,
    }
}

fn trivial(value: ExpectedValue) -> ExpectedFact {
    ExpectedFact {
        value,
        provenance: Provenance::Trivial,
    }
}

fn derived(value: ExpectedValue, oracle: &str) -> ExpectedFact {
    ExpectedFact {
        value,
        provenance: Provenance::Derived {
            oracle: oracle.to_string(),
        },
    }
}

/// The three pieces a triangular instance was built from, kept so the
/// triangular-specialization checks can run against the original
/// summands.
#[derive(Clone, Debug)]
pub struct TriangularData {
    pub a: StructureAlgebra,
    pub x: AbBimodule,
    pub b: StructureAlgebra,
}

/// A named instance: an algebra, optionally a bimodule over it, an
/// idempotent expected to be compatible, triangular origin data when the
/// instance came from a triangular construction, and a table of expected
/// facts with provenance.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub module: Option<Bimodule>,
    pub idempotent: Option<Idempotent>,
    pub tri: Option<TriangularData>,
    pub expected: BTreeMap<String, ExpectedFact>,
}

impl CorpusInstance {
    /// The trivial extension, when the instance carries a module.
    pub fn extension(&self) -> Result<Option<TrivialExtension>, Error> {
        match &self.module {
            None => Ok(None),
            Some(m) => Ok(Some(TrivialExtension::build(
                self.algebra.clone(),
                m.clone(),
            )?)),
        }
    }

    /// The compatible-idempotent context, when module and idempotent are
    /// both present and the compatibility condition holds.
    pub fn star_context(&self) -> Result<Option<StarContext>, Error> {
        let Some(ext) = self.extension()? else {
            return Ok(None);
        };
        let Some(p) = &self.idempotent else {
            return Ok(None);
        };
        match check_star(&ext, p)? {
            StarCheck::Holds(ctx) => Ok(Some(ctx)),
            StarCheck::Violated { module_index } => Err(Error::BadInput(format!(
                "instance {} violates the compatibility condition at module index {module_index}",
                self.name
            ))),
        }
    }

    /// The algebra the global decision procedures run on: the total
    /// algebra of the extension when a module is present, the bare
    /// algebra otherwise.
    pub fn total_algebra(&self) -> Result<StructureAlgebra, Error> {
        Ok(match self.extension()? {
            Some(ext) => ext.total().clone(),
            None => self.algebra.clone(),
        })
    }
}

fn expected_map(entries: Vec<(&str, ExpectedFact)>) -> BTreeMap<String, ExpectedFact> {
    entries
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

/// The block-diagonal five-dimensional subalgebra of 4×4 matrices with
/// the one-dimensional bimodule acting through the (3,3) entry on the
/// left and the (2,2) entry on the right.
pub fn block5_instance() -> CorpusInstance {
    let a = m4_block5();
    let module = Bimodule::from_tables(
        5,
        1,
        |i, _| vec![if i == 3 { Scalar::one() } else { Scalar::zero() }],
        |_, i| vec![if i == 1 { Scalar::one() } else { Scalar::zero() }],
    );
    let p = Idempotent::new(&a, a.basis_vector(3)).unwrap();
    CorpusInstance {
        name: "m4_block5".into(),
        algebra: a,
        module: Some(module),
        idempotent: Some(p),
        tri: None,
        expected: expected_map(vec![
            ("star_holds", paper(ExpectedValue::Bool(true))),
            ("corner_p_dim", paper(ExpectedValue::Dim(1))),
            ("corner_q_dim", paper(ExpectedValue::Dim(3))),
            ("thm24_conclusion", paper(ExpectedValue::Text("guaranteed".into()))),
            ("ldp", paper(ExpectedValue::Bool(true))),
            ("ldp_base", paper(ExpectedValue::Bool(true))),
            (
                "loyal_left",
                derived(
                    ExpectedValue::Bool(true),
                    "annihilator of the left action is the span without the (3,3) \
                     coordinate; its p-corner sandwich is zero by direct products",
                ),
            ),
            (
                "loyal_right",
                derived(
                    ExpectedValue::Bool(false),
                    "the first diagonal unit annihilates the right action but its \
                     q-corner sandwich is itself, nonzero",
                ),
            ),
            (
                "idempotent_count",
                derived(
                    ExpectedValue::Dim(16),
                    "0/1 patterns on the four diagonal units with the nilpotent \
                     coordinate forced to zero by the canonical solve",
                ),
            ),
            (
                "center_dim",
                derived(
                    ExpectedValue::Dim(3),
                    "hand solve of the commuting equations: scalars on the first \
                     unit, the tied middle pair, and the last unit",
                ),
            ),
            (
                "commutator_dim",
                derived(
                    ExpectedValue::Dim(1),
                    "only the nilpotent basis vector arises as a commutator",
                ),
            ),
        ]),
    }
}

fn triangular_instance(
    name: &str,
    a: StructureAlgebra,
    x: AbBimodule,
    b: StructureAlgebra,
    mut expected: BTreeMap<String, ExpectedFact>,
) -> CorpusInstance {
    let build = build_triangular(&a, &x, &b).expect("builtin triangular data is valid");
    expected
        .entry("star_holds".to_string())
        .or_insert_with(|| trivial(ExpectedValue::Bool(true)));
    expected
        .entry("t_block_zero".to_string())
        .or_insert_with(|| paper(ExpectedValue::Bool(true)));
    CorpusInstance {
        name: name.into(),
        algebra: build.star.extension().base().clone(),
        module: Some(build.star.extension().module().clone()),
        idempotent: Some(build.star.p().clone()),
        tri: Some(TriangularData { a, x, b }),
        expected,
    }
}

/// `Tri(Q, Q, Q)`: the 2×2 upper-triangular matrices.
pub fn t2_instance() -> CorpusInstance {
    let q1 = pointwise(1);
    let x = AbBimodule {
        dim: 1,
        left: vec![vec![vec![Scalar::one()]]],
        right: vec![vec![vec![Scalar::one()]]],
    };
    triangular_instance(
        "t2",
        q1.clone(),
        x,
        q1,
        expected_map(vec![
            (
                "dim_der",
                derived(
                    ExpectedValue::Dim(2),
                    "hand elimination of the Leibniz system on the three-dimensional \
                     triangular algebra; all derivations are inner",
                ),
            ),
            (
                "dim_lie_der",
                derived(
                    ExpectedValue::Dim(4),
                    "derivations plus the two-dimensional space of central maps, \
                     with zero intersection by the unit argument",
                ),
            ),
            (
                "dim_central",
                derived(
                    ExpectedValue::Dim(2),
                    "(3 − 1)·1 by the dimension formula for central maps killing \
                     commutators",
                ),
            ),
            ("ldp", derived(ExpectedValue::Bool(true), "4 == 2 + 2 − 0")),
            ("thm24_conclusion", derived(ExpectedValue::Text("guaranteed".into()), "corners are scalars; their only idempotents 0 and 1 already close to everything")),
            ("loyal_left", derived(ExpectedValue::Bool(true), "left annihilator is the second summand, whose p-sandwich is zero")),
            ("loyal_right", derived(ExpectedValue::Bool(true), "mirror of the left case")),
            ("tau_exists", derived(ExpectedValue::Bool(true), "one-dimensional center projections spanned by the two corner units")),
            ("center_dim", trivial(ExpectedValue::Dim(1))),
            ("central_ideal_free", derived(ExpectedValue::Bool(true), "fixpoint from the scalar line empties in one step")),
        ]),
    )
}

/// `Tri(Q, Q², Q×Q)`: one-dimensional algebra over a two-dimensional
/// row module over the pointwise plane; corners of dimensions 1 and 2.
pub fn t3_instance() -> CorpusInstance {
    let a = pointwise(1);
    let b = pointwise(2);
    let x = AbBimodule {
        dim: 2,
        // a . (x1, x2) = (a x1, a x2)
        left: vec![vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::one()],
        ]],
        // (x1, x2) . e_i scales the matching coordinate
        right: vec![
            vec![
                vec![Scalar::one(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::zero()],
            ],
            vec![
                vec![Scalar::zero(), Scalar::zero()],
                vec![Scalar::zero(), Scalar::one()],
            ],
        ],
    };
    triangular_instance(
        "t3",
        a,
        x,
        b,
        expected_map(vec![
            ("corner_p_dim", derived(ExpectedValue::Dim(1), "block sizes")),
            ("corner_q_dim", derived(ExpectedValue::Dim(2), "block sizes")),
            ("thm24_conclusion", derived(ExpectedValue::Text("guaranteed".into()), "pointwise corners are filled by their 0/1 idempotent patterns")),
            ("loyal_left", derived(ExpectedValue::Bool(true), "left annihilator is the second summand")),
            ("loyal_right", derived(ExpectedValue::Bool(true), "right annihilator is the first summand")),
            ("tau_exists", derived(ExpectedValue::Bool(true), "center projections are the corner units")),
        ]),
    )
}

/// `Tri(M₂, M₂, M₂)` with the regular actions.
pub fn tri_m2_instance() -> CorpusInstance {
    let m2 = matrix_units(2);
    let left: Vec<Vec<Vec<Scalar>>> = (0..4)
        .map(|i| (0..4).map(|j| m2.basis_product(i, j)).collect())
        .collect();
    let right: Vec<Vec<Vec<Scalar>>> = (0..4)
        .map(|j| (0..4).map(|i| m2.basis_product(j, i)).collect())
        .collect();
    let x = AbBimodule {
        dim: 4,
        left,
        right,
    };
    triangular_instance(
        "tri_m2_m2_m2",
        m2.clone(),
        x,
        m2,
        expected_map(vec![
            ("corner_p_dim", trivial(ExpectedValue::Dim(4))),
            ("corner_q_dim", trivial(ExpectedValue::Dim(4))),
            (
                "thm24_conclusion",
                derived(
                    ExpectedValue::Text("guaranteed".into()),
                    "matrix-unit commutators and idempotents span the matrix \
                     algebra, and it has the property by the subspace identity",
                ),
            ),
        ]),
    )
}

/// The dual numbers: commutative, so every linear map is a Lie
/// derivation and properness is automatic, but the nilpotent line is a
/// central ideal.
pub fn dual_numbers_instance() -> CorpusInstance {
    CorpusInstance {
        name: "dual_numbers".into(),
        algebra: dual_numbers(),
        module: None,
        idempotent: None,
        tri: None,
        expected: expected_map(vec![
            ("ldp", trivial(ExpectedValue::Bool(true))),
            ("dim_lie_der", trivial(ExpectedValue::Dim(4))),
            ("center_dim", trivial(ExpectedValue::Dim(2))),
            ("central_ideal_free", trivial(ExpectedValue::Bool(false))),
        ]),
    }
}

/// The pointwise three-dimensional commutative algebra.
pub fn q3_instance() -> CorpusInstance {
    CorpusInstance {
        name: "q3".into(),
        algebra: pointwise(3),
        module: None,
        idempotent: None,
        tri: None,
        expected: expected_map(vec![
            ("dim_lie_der", trivial(ExpectedValue::Dim(9))),
            ("dim_central", trivial(ExpectedValue::Dim(9))),
            ("ldp", trivial(ExpectedValue::Bool(true))),
            ("center_dim", trivial(ExpectedValue::Dim(3))),
            (
                "idempotent_count",
                trivial(ExpectedValue::Dim(8)),
            ),
            (
                "idempotent_search_exhaustive",
                trivial(ExpectedValue::Bool(true)),
            ),
        ]),
    }
}

/// The 2×2 matrix algebra.
pub fn m2_instance() -> CorpusInstance {
    CorpusInstance {
        name: "m2".into(),
        algebra: matrix_units(2),
        module: None,
        idempotent: None,
        tri: None,
        expected: expected_map(vec![
            (
                "dim_der",
                derived(
                    ExpectedValue::Dim(3),
                    "all derivations inner; the adjoint span loses one dimension \
                     to the center",
                ),
            ),
            (
                "dim_lie_der",
                derived(
                    ExpectedValue::Dim(4),
                    "inner derivations plus the trace direction",
                ),
            ),
            (
                "dim_central",
                derived(ExpectedValue::Dim(1), "(4 − 3)·1 by the dimension formula"),
            ),
            ("ldp", derived(ExpectedValue::Bool(true), "subspace identity 4 == 3 + 1")),
            ("center_dim", derived(ExpectedValue::Dim(1), "scalars only")),
            ("commutator_dim", derived(ExpectedValue::Dim(3), "trace-zero matrices")),
            ("central_ideal_free", derived(ExpectedValue::Bool(true), "fixpoint from the scalar line empties: the unit generates everything")),
        ]),
    }
}

/// Scalars plus the strictly-upper 3×3 triangle: the smallest of the
/// shipped algebras without the Lie derivation property.
pub fn nil4_instance() -> CorpusInstance {
    CorpusInstance {
        name: "scalar_plus_nil3".into(),
        algebra: scalar_plus_nil3(),
        module: None,
        idempotent: None,
        tri: None,
        expected: expected_map(vec![
            (
                "dim_der",
                derived(
                    ExpectedValue::Dim(4),
                    "hand elimination: images of the two generators constrained to \
                     the square-zero lines, the third basis vector determined",
                ),
            ),
            (
                "dim_lie_der",
                derived(
                    ExpectedValue::Dim(10),
                    "hand elimination of the bracket system: one bracket relation \
                     on sixteen unknowns, six forced zeros",
                ),
            ),
            (
                "dim_central",
                derived(ExpectedValue::Dim(6), "(4 − 1)·2 by the dimension formula"),
            ),
            (
                "dim_sum",
                derived(
                    ExpectedValue::Dim(8),
                    "4 + 6 − 2: central-valued derivations killing commutators \
                     form the intersection",
                ),
            ),
            (
                "ldp",
                derived(
                    ExpectedValue::Bool(false),
                    "the map sending the first nilpotent generator to the second \
                     is a Lie derivation outside the sum: both summands exclude \
                     the needed image coordinate",
                ),
            ),
            ("central_ideal_free", derived(ExpectedValue::Bool(false), "the top nilpotent line is a central ideal")),
        ]),
    }
}

/// Builds the one-dimensional module over (nil4 ⊕ Q) acting by the
/// second-summand character on the left and the unit coordinate of the
/// first summand on the right.
fn nil_lift_parts() -> (StructureAlgebra, Bimodule, Idempotent) {
    let base = direct_sum(&scalar_plus_nil3(), &pointwise(1));
    let module = Bimodule::from_tables(
        5,
        1,
        |i, _| vec![if i == 4 { Scalar::one() } else { Scalar::zero() }],
        |_, i| vec![if i == 0 { Scalar::one() } else { Scalar::zero() }],
    );
    let mut p_vec = vec![Scalar::zero(); 5];
    p_vec[4] = Scalar::one();
    let p = Idempotent::new(&base, p_vec).unwrap();
    (base, module, p)
}

/// Extension whose base fails the Lie derivation property: the lift of
/// the bad base map is a non-proper Lie derivation on the total algebra,
/// so the sufficiency conditions cannot conclude and the total fails the
/// property too.
pub fn nil_lift_instance() -> CorpusInstance {
    let (base, module, p) = nil_lift_parts();
    CorpusInstance {
        name: "nil_lift".into(),
        algebra: base,
        module: Some(module),
        idempotent: Some(p),
        tri: None,
        expected: expected_map(vec![
            ("star_holds", derived(ExpectedValue::Bool(true), "the adjoined unit is the left character and the old unit the right one")),
            ("ldp_base", derived(ExpectedValue::Bool(false), "direct sums inherit failure from a summand")),
            (
                "ldp",
                derived(
                    ExpectedValue::Bool(false),
                    "the zero-extended bad map is a Lie derivation whose base \
                     block still cannot split as derivation plus central map",
                ),
            ),
            ("thm24_conclusion", derived(ExpectedValue::Text("not-concluded".into()), "the first condition already fails")),
        ]),
    }
}

/// The map on the nil_lift base whose zero extension is the canonical
/// non-proper Lie derivation of that instance.
pub fn nil_lift_bad_base_map() -> Matrix {
    let mut la = Matrix::zeros(5, 5);
    la[(2, 1)] = Scalar::one();
    la
}

/// All shipped instances, sorted by name.
pub fn builtin_corpus() -> Vec<CorpusInstance> {
    let mut v = vec![
        block5_instance(),
        t2_instance(),
        t3_instance(),
        tri_m2_instance(),
        dual_numbers_instance(),
        q3_instance(),
        m2_instance(),
        nil4_instance(),
        nil_lift_instance(),
    ];
    v.sort_by(|a, b| a.name.cmp(&b.name));
    v
}

/// A deliberately broken instance (non-associative table) for exercising
/// the campaign's negative path.
pub fn corrupted_instance() -> CorpusInstance {
    let one = || Scalar::one();
    let zero = || Scalar::zero();
    let mul = vec![
        vec![
            vec![one(), zero(), zero()],
            vec![zero(), one(), zero()],
            vec![zero(), zero(), one()],
        ],
        vec![
            vec![zero(), one(), zero()],
            vec![zero(), zero(), zero()],
            vec![one(), zero(), zero()],
        ],
        vec![
            vec![zero(), zero(), one()],
            vec![one(), zero(), zero()],
            vec![zero(), zero(), zero()],
        ],
    ];
    let algebra = StructureAlgebra::new(
        vec!["one".into(), "u".into(), "v".into()],
        mul,
        vec![one(), zero(), zero()],
    )
    .expect("shape is consistent even though the table is not associative");
    CorpusInstance {
        name: "corrupted_negative_control".into(),
        algebra,
        module: None,
        idempotent: None,
        tri: None,
        expected: BTreeMap::new(),
    }
}

/// Descriptor for the deterministic instance families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    /// Pointwise algebras of the given dimensions joined by a seeded
    /// coordinate-projection bimodule.
    Triangular { na: usize, mx: usize, nb: usize },
    DirectSum(String, String),
    CornerOf(String, usize),
    TrivialExtensionOf(String),
    ScalarExtension(String),
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Triangular { na, mx, nb } => {
                write!(f, "triangular({na},{mx},{nb})")
            }
            FamilyDescriptor::DirectSum(a, b) => write!(f, "direct_sum({a},{b})"),
            FamilyDescriptor::CornerOf(a, k) => write!(f, "corner_of({a},{k})"),
            FamilyDescriptor::TrivialExtensionOf(a) => write!(f, "trivial_extension_of({a})"),
            FamilyDescriptor::ScalarExtension(a) => write!(f, "scalar_extension({a})"),
        }
    }
}

impl FromStr for FamilyDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let open = s.find('(');
        let (head, args) = match open {
            Some(i) if s.ends_with(')') => (&s[..i], &s[i + 1..s.len() - 1]),
            _ => return Err(Error::UnknownFamily(s.to_string())),
        };
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let dim = |t: &str| -> Result<usize, Error> {
            t.parse()
                .map_err(|_| Error::UnknownFamily(s.to_string()))
        };
        match (head, parts.as_slice()) {
            ("triangular", [na, mx, nb]) => Ok(FamilyDescriptor::Triangular {
                na: dim(na)?,
                mx: dim(mx)?,
                nb: dim(nb)?,
            }),
            ("direct_sum", [a, b]) => Ok(FamilyDescriptor::DirectSum(
                a.to_string(),
                b.to_string(),
            )),
            ("corner_of", [a, k]) => Ok(FamilyDescriptor::CornerOf(a.to_string(), dim(k)?)),
            ("trivial_extension_of", [a]) => {
                Ok(FamilyDescriptor::TrivialExtensionOf(a.to_string()))
            }
            ("scalar_extension", [a]) => Ok(FamilyDescriptor::ScalarExtension(a.to_string())),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Named atoms the non-triangular families draw from.
pub fn atom(name: &str) -> Result<StructureAlgebra, Error> {
    match name {
        "q1" => Ok(pointwise(1)),
        "q2" => Ok(pointwise(2)),
        "q3" => Ok(pointwise(3)),
        "q4" => Ok(pointwise(4)),
        "m2" => Ok(matrix_units(2)),
        "t2" => Ok(crate::algebra::builders::upper_triangular_2()),
        "dual" => Ok(dual_numbers()),
        "nil4" => Ok(scalar_plus_nil3()),
        "block5" => Ok(m4_block5()),
        other => Err(Error::UnknownFamily(format!("atom {other}"))),
    }
}

/// Generates the instances of a family, deterministically in
/// `(descriptor, seed)`. Only the triangular family consumes the seed.
pub fn generate_family(desc: &FamilyDescriptor, seed: u64) -> Result<Vec<CorpusInstance>, Error> {
    match desc {
        FamilyDescriptor::Triangular { na, mx, nb } => {
            if *na == 0 || *nb == 0 {
                return Err(Error::BadInput(
                    "triangular summands must be unital, so nonzero".into(),
                ));
            }
            let a = pointwise(*na);
            let b = pointwise(*nb);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let left_controls: Vec<usize> = (0..*mx).map(|_| rng.gen_range(0..*na)).collect();
            let right_controls: Vec<usize> = (0..*mx).map(|_| rng.gen_range(0..*nb)).collect();
            let x = AbBimodule {
                dim: *mx,
                left: (0..*na)
                    .map(|i| {
                        (0..*mx)
                            .map(|j| {
                                let mut v = vec![Scalar::zero(); *mx];
                                if left_controls[j] == i {
                                    v[j] = Scalar::one();
                                }
                                v
                            })
                            .collect()
                    })
                    .collect(),
                right: (0..*mx)
                    .map(|j| {
                        (0..*nb)
                            .map(|i| {
                                let mut v = vec![Scalar::zero(); *mx];
                                if right_controls[j] == i {
                                    v[j] = Scalar::one();
                                }
                                v
                            })
                            .collect()
                    })
                    .collect(),
            };
            let mut inst = triangular_instance(
                &format!("{desc}@{seed}"),
                a,
                x,
                b,
                BTreeMap::new(),
            );
            inst.expected.insert(
                "validates".into(),
                trivial(ExpectedValue::Bool(true)),
            );
            Ok(vec![inst])
        }
        FamilyDescriptor::DirectSum(l, r) => {
            let algebra = direct_sum(&atom(l)?, &atom(r)?);
            Ok(vec![CorpusInstance {
                name: format!("{desc}"),
                algebra,
                module: None,
                idempotent: None,
                tri: None,
                expected: expected_map(vec![(
                    "validates",
                    trivial(ExpectedValue::Bool(true)),
                )]),
            }])
        }
        FamilyDescriptor::CornerOf(name, k) => {
            let a = atom(name)?;
            let search = find_idempotents(&a, DEFAULT_BUDGET);
            let found = search.found;
            let e = found.get(*k).ok_or_else(|| {
                Error::BadInput(format!(
                    "corner index {k} out of range: search found {} idempotents",
                    found.len()
                ))
            })?;
            if e.is_trivial(&a) {
                return Err(Error::BadInput(format!(
                    "corner index {k} selects a trivial idempotent"
                )));
            }
            let cr = corner(&a, e);
            Ok(vec![CorpusInstance {
                name: format!("{desc}"),
                algebra: cr.algebra().clone(),
                module: None,
                idempotent: None,
                tri: None,
                expected: expected_map(vec![(
                    "validates",
                    trivial(ExpectedValue::Bool(true)),
                )]),
            }])
        }
        FamilyDescriptor::TrivialExtensionOf(name) => {
            let a = atom(name)?;
            let module = Bimodule::regular(&a);
            Ok(vec![CorpusInstance {
                name: format!("{desc}"),
                algebra: a,
                module: Some(module),
                idempotent: None,
                tri: None,
                expected: expected_map(vec![(
                    "validates",
                    trivial(ExpectedValue::Bool(true)),
                )]),
            }])
        }
        FamilyDescriptor::ScalarExtension(name) => {
            let algebra = direct_sum(&atom(name)?, &pointwise(1));
            Ok(vec![CorpusInstance {
                name: format!("{desc}"),
                algebra,
                module: None,
                idempotent: None,
                tri: None,
                expected: expected_map(vec![(
                    "validates",
                    trivial(ExpectedValue::Bool(true)),
                )]),
            }])
        }
    }
}

/// All triangular shapes with total dimension at most `max_total`.
pub fn triangular_shapes(max_total: usize) -> Vec<FamilyDescriptor> {
    let mut shapes = Vec::new();
    for na in 1..=max_total {
        for mx in 1..=max_total {
            for nb in 1..=max_total {
                if na + mx + nb <= max_total {
                    shapes.push(FamilyDescriptor::Triangular { na, mx, nb });
                }
            }
        }
    }
    shapes
}

/// Invariant suites the campaign can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Validate,
    CenterFormula,
    BlockConditions,
    TCollapse,
    Thm22Equivalence,
    Thm24Soundness,
    Certificates,
    ProofIdentity,
    Tau,
    Expected,
}

impl Suite {
    pub fn all() -> Vec<Suite> {
        vec![
            Suite::Validate,
            Suite::CenterFormula,
            Suite::BlockConditions,
            Suite::TCollapse,
            Suite::Thm22Equivalence,
            Suite::Thm24Soundness,
            Suite::Certificates,
            Suite::ProofIdentity,
            Suite::Tau,
            Suite::Expected,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::CenterFormula => "center-formula",
            Suite::BlockConditions => "block-conditions",
            Suite::TCollapse => "t-collapse",
            Suite::Thm22Equivalence => "thm22-equivalence",
            Suite::Thm24Soundness => "thm24-soundness",
            Suite::Certificates => "certificates",
            Suite::ProofIdentity => "proof-identity",
            Suite::Tau => "tau",
            Suite::Expected => "expected",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::all()
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::BadInput(format!("unknown suite {s}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignEntry {
    pub instance: String,
    pub suite: String,
    pub invariant: String,
    pub status: EntryStatus,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub entries: Vec<CampaignEntry>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Per-instance lazy computations shared across suites.
struct InstanceState<'a> {
    inst: &'a CorpusInstance,
    ext: OnceCell<Option<TrivialExtension>>,
    star: OnceCell<Option<StarContext>>,
    total: OnceCell<StructureAlgebra>,
    spaces: OnceCell<ProperSpaces>,
    lie_basis: OnceCell<Vec<Matrix>>,
    witnesses: OnceCell<Vec<(Verdict, Option<Matrix>)>>,
}

impl<'a> InstanceState<'a> {
    fn new(inst: &'a CorpusInstance) -> Self {
        InstanceState {
            inst,
            ext: OnceCell::new(),
            star: OnceCell::new(),
            total: OnceCell::new(),
            spaces: OnceCell::new(),
            lie_basis: OnceCell::new(),
            witnesses: OnceCell::new(),
        }
    }

    fn ext(&self) -> &Option<TrivialExtension> {
        self.ext
            .get_or_init(|| self.inst.extension().ok().flatten())
    }

    fn star(&self) -> &Option<StarContext> {
        self.star
            .get_or_init(|| self.inst.star_context().ok().flatten())
    }

    fn total(&self) -> &StructureAlgebra {
        self.total.get_or_init(|| match self.ext() {
            Some(ext) => ext.total().clone(),
            None => self.inst.algebra.clone(),
        })
    }

    fn spaces(&self) -> &ProperSpaces {
        self.spaces.get_or_init(|| proper_spaces(self.total()))
    }

    fn lie_basis(&self) -> &Vec<Matrix> {
        self.lie_basis.get_or_init(|| {
            let n = self.total().dim();
            self.spaces()
                .lie_der
                .basis()
                .row_vecs()
                .into_iter()
                .map(|row| unflatten(n, n, &row))
                .collect()
        })
    }

    /// Characterization outcomes (verdict and the central witness when
    /// found) for every basis Lie derivation, against the star context.
    fn witnesses(&self) -> &Vec<(Verdict, Option<Matrix>)> {
        self.witnesses.get_or_init(|| {
            let Some(ctx) = self.star() else {
                return Vec::new();
            };
            self.lie_basis()
                .iter()
                .map(|l| match central_witness(ctx, l) {
                    Ok(report) => (report.verdict, report.witness.map(|w| w.ell)),
                    Err(_) => (Verdict::NotProper, None),
                })
                .collect()
        })
    }
}

/// Runs the selected suites over the instances. The `seed` only drives
/// the sampled-decomposition suite. Entries are sorted by instance,
/// suite, and invariant; every selected suite leaves at least one entry
/// per instance (a skip when inapplicable).
pub fn run_campaign(
    instances: &[CorpusInstance],
    suites: &[Suite],
    seed: u64,
) -> CampaignReport {
    let mut entries = Vec::new();
    for inst in instances {
        run_instance(inst, suites, seed, &mut entries);
    }
    entries.sort_by(|a, b| {
        (a.instance.as_str(), a.suite.as_str(), a.invariant.as_str()).cmp(&(
            b.instance.as_str(),
            b.suite.as_str(),
            b.invariant.as_str(),
        ))
    });
    let passed = entries
        .iter()
        .filter(|e| e.status == EntryStatus::Pass)
        .count();
    let failed = entries
        .iter()
        .filter(|e| e.status == EntryStatus::Fail)
        .count();
    let skipped = entries.len() - passed - failed;
    CampaignReport {
        entries,
        passed,
        failed,
        skipped,
    }
}

fn run_instance(
    inst: &CorpusInstance,
    suites: &[Suite],
    seed: u64,
    entries: &mut Vec<CampaignEntry>,
) {
    let selected = |s: Suite| suites.contains(&s);
    let mut push = |suite: Suite, invariant: &str, ok: Option<bool>, details: String| {
        entries.push(CampaignEntry {
            instance: inst.name.clone(),
            suite: suite.name().to_string(),
            invariant: invariant.to_string(),
            status: match ok {
                Some(true) => EntryStatus::Pass,
                Some(false) => EntryStatus::Fail,
                None => EntryStatus::Skip,
            },
            details,
        });
    };

    // Validation gates everything else, whether or not it is selected.
    let algebra_report = inst.algebra.validate();
    let algebra_ok = algebra_report.is_valid();
    let module_ok = inst
        .module
        .as_ref()
        .map(|m| m.validate(&inst.algebra).is_valid());
    let idempotent_ok = inst.idempotent.as_ref().map(|e| {
        inst.algebra.multiply(e.vector(), e.vector()) == e.vector()
            && !e.is_trivial(&inst.algebra)
    });
    let valid = algebra_ok && module_ok.unwrap_or(true) && idempotent_ok.unwrap_or(true);
    if selected(Suite::Validate) {
        push(
            Suite::Validate,
            "algebra-validates",
            Some(algebra_ok),
            format!("{} violations", algebra_report.violation_count()),
        );
        if let Some(ok) = module_ok {
            push(Suite::Validate, "module-validates", Some(ok), String::new());
        }
        if let Some(ok) = idempotent_ok {
            push(
                Suite::Validate,
                "idempotent-nontrivial",
                Some(ok),
                String::new(),
            );
        }
        if inst.module.is_some() && inst.idempotent.is_some() && valid {
            let star_ok = matches!(inst.star_context(), Ok(Some(_)));
            push(
                Suite::Validate,
                "compatibility-holds",
                Some(star_ok),
                String::new(),
            );
        }
    }
    if !valid {
        for s in suites.iter().filter(|s| **s != Suite::Validate) {
            push(*s, "all", None, "instance failed validation".to_string());
        }
        return;
    }

    let state = InstanceState::new(inst);

    if selected(Suite::CenterFormula) {
        match state.star() {
            Some(ctx) => {
                let formula = center_via_formula(ctx);
                let direct = ctx.extension().total().center();
                push(
                    Suite::CenterFormula,
                    "formula-matches-direct",
                    Some(formula == direct),
                    format!("dim {}", direct.dim()),
                );
                let proj_zero = direct.basis().row_vecs().iter().all(|z| {
                    ctx.extension()
                        .project_module(z)
                        .iter()
                        .all(Scalar::is_zero)
                });
                push(
                    Suite::CenterFormula,
                    "module-projection-vanishes",
                    Some(proj_zero),
                    String::new(),
                );
            }
            None => push(
                Suite::CenterFormula,
                "all",
                None,
                "no compatible idempotent".to_string(),
            ),
        }
    }

    if selected(Suite::BlockConditions) {
        match state.ext() {
            Some(ext) => {
                let lie_ok = lie_conditions_subspace(ext) == lie_derivation_space(ext.total());
                push(
                    Suite::BlockConditions,
                    "lie-conditions-carve-lie-derivations",
                    Some(lie_ok),
                    String::new(),
                );
                let der_ok =
                    derivation_conditions_subspace(ext) == derivation_space(ext.total());
                push(
                    Suite::BlockConditions,
                    "derivation-conditions-carve-derivations",
                    Some(der_ok),
                    String::new(),
                );
            }
            None => push(Suite::BlockConditions, "all", None, "no module".to_string()),
        }
    }

    if selected(Suite::TCollapse) {
        match (state.star(), &inst.tri) {
            (Some(ctx), Some(_)) => {
                let ext = ctx.extension();
                let all_zero = state
                    .lie_basis()
                    .iter()
                    .all(|l| decompose(ext, l).xa.is_zero());
                push(
                    Suite::TCollapse,
                    "t-block-vanishes",
                    Some(all_zero),
                    format!("{} basis maps", state.lie_basis().len()),
                );
            }
            _ => push(
                Suite::TCollapse,
                "all",
                None,
                "not a triangular build".to_string(),
            ),
        }
    }

    if selected(Suite::Thm22Equivalence) {
        match state.star() {
            Some(_) => {
                let total = state.total().clone();
                let spaces = state.spaces();
                let mut agree = true;
                let mut details = String::new();
                for (l, (verdict, _)) in state.lie_basis().iter().zip(state.witnesses()) {
                    let direct = is_proper_with(spaces, &total, l)
                        .map(|c| c.verdict)
                        .unwrap_or(Verdict::NotProper);
                    if direct != *verdict {
                        agree = false;
                        details = "witness existence disagrees with direct membership".into();
                        break;
                    }
                }
                push(
                    Suite::Thm22Equivalence,
                    "witness-iff-proper",
                    Some(agree),
                    if details.is_empty() {
                        format!("{} basis maps", state.lie_basis().len())
                    } else {
                        details
                    },
                );
            }
            None => push(
                Suite::Thm22Equivalence,
                "all",
                None,
                "no compatible idempotent".to_string(),
            ),
        }
    }

    if selected(Suite::Thm24Soundness) {
        match state.star() {
            Some(ctx) => match ldp_sufficiency(ctx, &[], DEFAULT_BUDGET) {
                Ok(report) => {
                    let sound = if report.conclusion == Conclusion::Guaranteed {
                        has_lie_derivation_property_with(state.spaces()).holds
                    } else {
                        true
                    };
                    push(
                        Suite::Thm24Soundness,
                        "guaranteed-implies-property",
                        Some(sound),
                        format!("conclusion {:?}", report.conclusion),
                    );
                    if let Some(tri) = &inst.tri {
                        match (
                            build_triangular(&tri.a, &tri.x, &tri.b),
                            report.conclusion,
                        ) {
                            (Ok(build), conclusion) => {
                                let spec =
                                    triangular_sufficiency(&build, &[], &[], DEFAULT_BUDGET);
                                let agrees = spec
                                    .map(|s| s.conclusion == conclusion)
                                    .unwrap_or(false);
                                push(
                                    Suite::Thm24Soundness,
                                    "triangular-specialization-agrees",
                                    Some(agrees),
                                    String::new(),
                                );
                            }
                            (Err(_), _) => push(
                                Suite::Thm24Soundness,
                                "triangular-specialization-agrees",
                                Some(false),
                                "triangular rebuild failed".to_string(),
                            ),
                        }
                    }
                }
                Err(e) => push(
                    Suite::Thm24Soundness,
                    "guaranteed-implies-property",
                    Some(false),
                    format!("checker error: {e}"),
                ),
            },
            None => push(
                Suite::Thm24Soundness,
                "all",
                None,
                "no compatible idempotent".to_string(),
            ),
        }
    }

    if selected(Suite::Certificates) {
        let total = state.total().clone();
        let spaces = state.spaces();
        let n = total.dim();
        let mixed = inst
            .name
            .bytes()
            .fold(seed, |s, b| s.wrapping_mul(131).wrapping_add(b as u64));
        let mut rng = ChaCha8Rng::seed_from_u64(mixed);
        let mut ok = true;
        let trials = 5;
        for _ in 0..trials {
            let dc: Vec<Scalar> = (0..spaces.der.dim())
                .map(|_| Scalar::from_int(rng.gen_range(-3..=3)))
                .collect();
            let cc: Vec<Scalar> = (0..spaces.central.dim())
                .map(|_| Scalar::from_int(rng.gen_range(-3..=3)))
                .collect();
            let d = combine(n * n, &dc, spaces.der.basis());
            let c = combine(n * n, &cc, spaces.central.basis());
            let l: Vec<Scalar> = d.iter().zip(&c).map(|(u, v)| u + v).collect();
            let l = unflatten(n, n, &l);
            match is_proper_with(spaces, &total, &l) {
                Ok(cert) => {
                    let wd = cert.witness_d.unwrap_or_else(|| Matrix::zeros(n, n));
                    let we = cert.witness_ell.unwrap_or_else(|| Matrix::zeros(n, n));
                    if cert.verdict != Verdict::Proper
                        || !is_derivation(&total, &wd)
                        || wd.add(&we) != l
                    {
                        ok = false;
                        break;
                    }
                }
                Err(_) => {
                    ok = false;
                    break;
                }
            }
        }
        push(
            Suite::Certificates,
            "constructed-decompositions-recover",
            Some(ok),
            format!("{trials} seeded samples"),
        );
    }

    if selected(Suite::ProofIdentity) {
        match state.star() {
            Some(ctx) => {
                let mut ok = true;
                let mut count = 0usize;
                for (_, ell) in state.witnesses() {
                    if let Some(ell) = ell {
                        count += 1;
                        if !proof_identity_holds(ctx, ell) {
                            ok = false;
                            break;
                        }
                    }
                }
                push(
                    Suite::ProofIdentity,
                    "corner-product-identity",
                    Some(ok),
                    format!("{count} witnesses"),
                );
            }
            None => push(
                Suite::ProofIdentity,
                "all",
                None,
                "no compatible idempotent".to_string(),
            ),
        }
    }

    if selected(Suite::Tau) {
        match state.star() {
            Some(ctx) => {
                if loyalty(ctx).is_loyal() {
                    let ok = matches!(tau_isomorphism(ctx), Ok(TauOutcome::Found(_)));
                    push(
                        Suite::Tau,
                        "isomorphism-constructed",
                        Some(ok),
                        String::new(),
                    );
                } else {
                    push(
                        Suite::Tau,
                        "isomorphism-constructed",
                        None,
                        "module not loyal".to_string(),
                    );
                }
            }
            None => push(
                Suite::Tau,
                "all",
                None,
                "no compatible idempotent".to_string(),
            ),
        }
    }

    if selected(Suite::Expected) {
        if inst.expected.is_empty() {
            push(Suite::Expected, "all", None, "no expectations".to_string());
        }
        for (key, fact) in &inst.expected {
            match evaluate_expected(inst, &state, key) {
                Ok(actual) => {
                    let ok = actual == fact.value;
                    push(
                        Suite::Expected,
                        key,
                        Some(ok),
                        if ok {
                            String::new()
                        } else {
                            format!("expected {}, got {}", fact.value, actual)
                        },
                    );
                }
                Err(msg) => push(Suite::Expected, key, Some(false), msg),
            }
        }
    }
}

/// Recomputes an expected fact from scratch.
fn evaluate_expected(
    inst: &CorpusInstance,
    state: &InstanceState,
    key: &str,
) -> Result<ExpectedValue, String> {
    let need_star = || {
        state
            .star()
            .clone()
            .ok_or_else(|| "no compatible idempotent".to_string())
    };
    match key {
        "validates" => Ok(ExpectedValue::Bool(inst.algebra.validate().is_valid())),
        "dim_der" => Ok(ExpectedValue::Dim(state.spaces().der.dim())),
        "dim_lie_der" => Ok(ExpectedValue::Dim(state.spaces().lie_der.dim())),
        "dim_central" => Ok(ExpectedValue::Dim(state.spaces().central.dim())),
        "dim_sum" => Ok(ExpectedValue::Dim(state.spaces().sum.dim())),
        "ldp" => Ok(ExpectedValue::Bool(
            state.spaces().sum == state.spaces().lie_der,
        )),
        "ldp_base" => Ok(ExpectedValue::Bool(
            has_lie_derivation_property(&inst.algebra).holds,
        )),
        "center_dim" => Ok(ExpectedValue::Dim(state.total().center().dim())),
        "commutator_dim" => Ok(ExpectedValue::Dim(
            inst.algebra.commutator_subspace().dim(),
        )),
        "star_holds" => Ok(ExpectedValue::Bool(matches!(
            inst.star_context(),
            Ok(Some(_))
        ))),
        "loyal_left" => Ok(ExpectedValue::Bool(loyalty(&need_star()?).left)),
        "loyal_right" => Ok(ExpectedValue::Bool(loyalty(&need_star()?).right)),
        "thm24_conclusion" => {
            let report = ldp_sufficiency(&need_star()?, &[], DEFAULT_BUDGET)
                .map_err(|e| format!("checker error: {e}"))?;
            Ok(ExpectedValue::Text(
                match report.conclusion {
                    Conclusion::Guaranteed => "guaranteed",
                    Conclusion::NotConcluded => "not-concluded",
                }
                .to_string(),
            ))
        }
        "corner_p_dim" => {
            let ctx = need_star()?;
            Ok(ExpectedValue::Dim(
                corner(ctx.extension().base(), ctx.p()).dim(),
            ))
        }
        "corner_q_dim" => {
            let ctx = need_star()?;
            Ok(ExpectedValue::Dim(
                corner(ctx.extension().base(), &ctx.q()).dim(),
            ))
        }
        "idempotent_count" => Ok(ExpectedValue::Dim(
            find_idempotents(&inst.algebra, DEFAULT_BUDGET).found.len(),
        )),
        "idempotent_search_exhaustive" => Ok(ExpectedValue::Bool(
            find_idempotents(&inst.algebra, DEFAULT_BUDGET).exhaustive,
        )),
        "tau_exists" => {
            let ctx = need_star()?;
            match tau_isomorphism(&ctx) {
                Ok(TauOutcome::Found(_)) => Ok(ExpectedValue::Bool(true)),
                Ok(TauOutcome::Failed { .. }) | Err(_) => Ok(ExpectedValue::Bool(false)),
            }
        }
        "t_block_zero" => {
            let ctx = need_star()?;
            let ext = ctx.extension();
            Ok(ExpectedValue::Bool(
                state
                    .lie_basis()
                    .iter()
                    .all(|l| decompose(ext, l).xa.is_zero()),
            ))
        }
        "central_ideal_free" => Ok(ExpectedValue::Bool(
            crate::properness::central_ideal_free(state.total()),
        )),
        other => Err(format!("unknown expected-fact key {other}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid_and_sorted() {
        let corpus = builtin_corpus();
        assert_eq!(corpus.len(), 9);
        let names: Vec<&str> = corpus.iter().map(|i| i.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        for inst in &corpus {
            assert!(inst.algebra.validate().is_valid(), "{}", inst.name);
            if let Some(m) = &inst.module {
                assert!(m.validate(&inst.algebra).is_valid(), "{}", inst.name);
            }
            if inst.module.is_some() && inst.idempotent.is_some() {
                assert!(
                    matches!(inst.star_context(), Ok(Some(_))),
                    "{} should carry a compatible idempotent",
                    inst.name
                );
            }
        }
    }

    #[test]
    fn family_parsing_round_trips() {
        for text in [
            "triangular(1,2,1)",
            "direct_sum(m2,q1)",
            "corner_of(m2,1)",
            "trivial_extension_of(q2)",
            "scalar_extension(nil4)",
        ] {
            let desc: FamilyDescriptor = text.parse().unwrap();
            assert_eq!(desc.to_string(), text);
        }
        assert!(matches!(
            "mystery(1)".parse::<FamilyDescriptor>(),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn triangular_family_is_deterministic() {
        let desc = FamilyDescriptor::Triangular {
            na: 2,
            mx: 2,
            nb: 2,
        };
        let a = generate_family(&desc, 7).unwrap();
        let b = generate_family(&desc, 7).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a[0].name, b[0].name);
        assert_eq!(
            a[0].algebra.mul_tensor(),
            b[0].algebra.mul_tensor()
        );
        assert_eq!(
            a[0].module.as_ref().unwrap().left_tensor(),
            b[0].module.as_ref().unwrap().left_tensor()
        );
        let c = generate_family(&desc, 8).unwrap();
        assert_eq!(c[0].name, "triangular(2,2,2)@8");
    }

    #[test]
    fn triangular_family_smallest_shape_is_t2_like() {
        let desc: FamilyDescriptor = "triangular(1,1,1)".parse().unwrap();
        let inst = generate_family(&desc, 0).unwrap().remove(0);
        let total = inst.total_algebra().unwrap();
        assert_eq!(total.dim(), 3);
        assert_eq!(derivation_space(&total).dim(), 2);
        assert_eq!(lie_derivation_space(&total).dim(), 4);
    }

    #[test]
    fn direct_sum_family_center_adds() {
        let desc: FamilyDescriptor = "direct_sum(m2,q1)".parse().unwrap();
        let inst = generate_family(&desc, 0).unwrap().remove(0);
        assert_eq!(inst.algebra.dim(), 5);
        assert_eq!(inst.algebra.center().dim(), 2);
    }

    #[test]
    fn corner_family_rejects_trivial_choices() {
        // In the sorted search output for m2, index 1 is the zero
        // idempotent and index 6 the unit; both are trivial.
        for text in ["corner_of(m2,1)", "corner_of(m2,6)"] {
            let desc: FamilyDescriptor = text.parse().unwrap();
            assert!(matches!(generate_family(&desc, 0), Err(Error::BadInput(_))));
        }
        // Index 0 is e22 - e21, a genuine rank-one idempotent.
        let desc: FamilyDescriptor = "corner_of(m2,0)".parse().unwrap();
        let inst = generate_family(&desc, 0).unwrap().remove(0);
        assert_eq!(inst.algebra.dim(), 1);
    }

    #[test]
    fn campaign_over_small_instances_passes() {
        let instances = vec![t2_instance(), q3_instance(), m2_instance()];
        let report = run_campaign(&instances, &Suite::all(), 42);
        assert!(
            report.all_passed(),
            "failures: {:?}",
            report
                .entries
                .iter()
                .filter(|e| e.status == EntryStatus::Fail)
                .collect::<Vec<_>>()
        );
        assert!(report.passed > 0);
    }

    #[test]
    fn campaign_flags_corruption_and_skips_downstream() {
        let report = run_campaign(&[corrupted_instance()], &Suite::all(), 0);
        assert!(!report.all_passed());
        assert!(report
            .entries
            .iter()
            .any(|e| e.suite == "validate" && e.status == EntryStatus::Fail));
        assert!(report
            .entries
            .iter()
            .any(|e| e.suite == "expected" && e.status == EntryStatus::Skip));
    }

    #[test]
    fn campaign_on_empty_list_is_empty_success() {
        let report = run_campaign(&[], &Suite::all(), 0);
        assert!(report.all_passed());
        assert!(report.entries.is_empty());
    }

    #[test]
    fn suites_parse_by_name() {
        for s in Suite::all() {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }
}
