//! JSON file schemas for the command-line frontend. Every scalar travels
//! as an exact `"p/q"` string, so files round-trip without loss.
//!
//! A `format` field is optional on input but must equal [`FORMAT`] when
//! present; outputs always carry it.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Bimodule, Idempotent, StructureAlgebra};
use crate::corpus::CorpusInstance;
use crate::error::Error;
use crate::exact::{Matrix, Scalar};
use crate::extension::AbBimodule;

pub const FORMAT: &str = "liederiv/1";

fn check_format(found: &Option<String>) -> Result<(), Error> {
    match found {
        None => Ok(()),
        Some(f) if f == FORMAT => Ok(()),
        Some(f) => Err(Error::BadInput(format!(
            "unsupported format {f:?}; this build reads {FORMAT:?}"
        ))),
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, Error> {
    serde_json::from_str(text).map_err(|e| Error::BadInput(format!("malformed {what}: {e}")))
}

/// An algebra given by labels, the structure tensor `mul[i][j] = e_i e_j`
/// (a coefficient vector), and the unit's coefficient vector. Labels are
/// optional; missing ones default to `e1..en`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub unit: Vec<Scalar>,
    pub mul: Vec<Vec<Vec<Scalar>>>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<StructureAlgebra, Error> {
        check_format(&self.format)?;
        let dim = self.mul.len();
        let labels = match &self.labels {
            Some(l) => {
                if l.len() != dim {
                    return Err(Error::DimensionMismatch {
                        context: "label list length",
                        expected: dim,
                        found: l.len(),
                    });
                }
                l.clone()
            }
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        StructureAlgebra::new(labels, self.mul.clone(), self.unit.clone())
    }

    pub fn from_algebra(a: &StructureAlgebra) -> Self {
        AlgebraFile {
            format: Some(FORMAT.to_string()),
            name: None,
            labels: Some(a.labels().to_vec()),
            unit: a.unit().to_vec(),
            mul: a.mul_tensor(),
        }
    }
}

/// A bimodule given by its action tensors `left[i][j] = e_i . x_j` and
/// `right[j][i] = x_j . e_i`, each entry a coefficient vector over the
/// module basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BimoduleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub left: Vec<Vec<Vec<Scalar>>>,
    pub right: Vec<Vec<Vec<Scalar>>>,
}

impl BimoduleFile {
    pub fn to_bimodule(&self, algebra_dim: usize) -> Result<Bimodule, Error> {
        check_format(&self.format)?;
        Bimodule::new(algebra_dim, self.left.clone(), self.right.clone())
    }

    pub fn from_bimodule(m: &Bimodule) -> Self {
        BimoduleFile {
            format: Some(FORMAT.to_string()),
            left: m.left_tensor(),
            right: m.right_tensor(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdempotentFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub vector: Vec<Scalar>,
}

impl IdempotentFile {
    pub fn to_idempotent(&self, a: &StructureAlgebra) -> Result<Idempotent, Error> {
        check_format(&self.format)?;
        Idempotent::new(a, self.vector.clone())
    }
}

/// A linear map as a dense matrix acting on coefficient columns.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub matrix: Vec<Vec<Scalar>>,
}

impl MapFile {
    pub fn to_matrix(&self) -> Result<Matrix, Error> {
        check_format(&self.format)?;
        Matrix::from_rows(self.matrix.clone())
    }
}

/// One-sided action tensors for a triangular build: `left[i][j][k]` over
/// the A basis, `right[j][i][k]` over the B basis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbBimoduleFile {
    pub dim: usize,
    pub left: Vec<Vec<Vec<Scalar>>>,
    pub right: Vec<Vec<Vec<Scalar>>>,
}

/// The three ingredients of `Tri(A, X, B)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangularFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(rename = "A")]
    pub a: AlgebraFile,
    #[serde(rename = "X")]
    pub x: AbBimoduleFile,
    #[serde(rename = "B")]
    pub b: AlgebraFile,
}

impl TriangularFile {
    pub fn to_parts(&self) -> Result<(StructureAlgebra, AbBimodule, StructureAlgebra), Error> {
        check_format(&self.format)?;
        let a = self.a.to_algebra()?;
        let b = self.b.to_algebra()?;
        let x = AbBimodule {
            dim: self.x.dim,
            left: self.x.left.clone(),
            right: self.x.right.clone(),
        };
        Ok((a, x, b))
    }
}

pub fn parse_algebra(text: &str) -> Result<StructureAlgebra, Error> {
    parse::<AlgebraFile>(text, "algebra file")?.to_algebra()
}

pub fn parse_bimodule(text: &str, algebra_dim: usize) -> Result<Bimodule, Error> {
    parse::<BimoduleFile>(text, "bimodule file")?.to_bimodule(algebra_dim)
}

pub fn parse_idempotent(text: &str, a: &StructureAlgebra) -> Result<Idempotent, Error> {
    parse::<IdempotentFile>(text, "idempotent file")?.to_idempotent(a)
}

pub fn parse_map(text: &str) -> Result<Matrix, Error> {
    parse::<MapFile>(text, "map file")?.to_matrix()
}

pub fn parse_triangular(
    text: &str,
) -> Result<(StructureAlgebra, AbBimodule, StructureAlgebra), Error> {
    parse::<TriangularFile>(text, "triangular file")?.to_parts()
}

/// Serializes a corpus instance, embedding algebra/module/idempotent in
/// the same schemas the file readers accept.
pub fn instance_json(inst: &CorpusInstance) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("name".into(), Value::String(inst.name.clone()));
    obj.insert(
        "algebra".into(),
        serde_json::to_value(AlgebraFile::from_algebra(&inst.algebra))
            .expect("algebra files serialize"),
    );
    if let Some(m) = &inst.module {
        obj.insert(
            "module".into(),
            serde_json::to_value(BimoduleFile::from_bimodule(m)).expect("bimodule files serialize"),
        );
    }
    if let Some(p) = &inst.idempotent {
        obj.insert(
            "idempotent".into(),
            serde_json::json!({ "vector": p.vector() }),
        );
    }
    obj.insert(
        "expected".into(),
        serde_json::to_value(&inst.expected).expect("expected facts serialize"),
    );
    Value::Object(obj)
}
