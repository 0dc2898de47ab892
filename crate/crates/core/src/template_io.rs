//! JSON ansatz-definition documents.
//!
//! ```json
//! {
//!   "id": "8",
//!   "n_qubits": 2,
//!   "family": "PEP",
//!   "ops": [
//!     {"kind": "RY", "target": 0, "slot": 0},
//!     {"kind": "CNOT", "control": 0, "target": 1},
//!     {"kind": "RX", "target": 1, "angle": 0.25}
//!   ]
//! }
//! ```
//!
//! `family` is optional; when present it must agree with the structural
//! classifier. A rotation carries exactly one of `slot` or `angle`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::{CircuitTemplate, Family};
use crate::error::{Error, Result};
use crate::statevec::{AngleSource, GateKind, GateOp};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum IdRepr {
    Num(u64),
    Str(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpDoc {
    pub kind: GateKind,
    pub target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub control: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slot: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateDoc {
    id: IdRepr,
    pub n_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub ops: Vec<OpDoc>,
}

impl TemplateDoc {
    pub fn id(&self) -> String {
        match &self.id {
            IdRepr::Num(n) => n.to_string(),
            IdRepr::Str(s) => s.clone(),
        }
    }
}

impl From<&CircuitTemplate> for TemplateDoc {
    fn from(t: &CircuitTemplate) -> Self {
        let ops = t
            .ops()
            .iter()
            .map(|op| OpDoc {
                kind: op.kind,
                target: op.target,
                control: op.control,
                slot: op.slot(),
                angle: match op.angle {
                    Some(AngleSource::Fixed(a)) => Some(a),
                    _ => None,
                },
            })
            .collect();
        TemplateDoc {
            id: IdRepr::Str(t.id().to_string()),
            n_qubits: t.n_qubits(),
            family: Some(t.family().to_string()),
            ops,
        }
    }
}

fn op_from_doc(i: usize, doc: &OpDoc) -> Result<GateOp> {
    let field = |name: &str| format!("ops[{i}].{name}");
    let angle = match (doc.kind.is_rotation(), doc.slot, doc.angle) {
        (true, Some(_), Some(_)) => {
            return Err(Error::template(field("slot"), "give either slot or angle, not both"))
        }
        (true, None, None) => {
            return Err(Error::template(
                field("slot"),
                format!("{} needs a slot or an angle", doc.kind),
            ))
        }
        (true, Some(s), None) => Some(AngleSource::Slot(s)),
        (true, None, Some(a)) if !a.is_finite() => {
            return Err(Error::template(field("angle"), "angle must be finite"))
        }
        (true, None, Some(a)) => Some(AngleSource::Fixed(a)),
        (false, None, None) => None,
        (false, _, _) => {
            return Err(Error::template(
                field(if doc.slot.is_some() { "slot" } else { "angle" }),
                format!("{} takes no angle", doc.kind),
            ))
        }
    };
    Ok(GateOp {
        kind: doc.kind,
        target: doc.target,
        control: doc.control,
        angle,
    })
}

impl TryFrom<&TemplateDoc> for CircuitTemplate {
    type Error = Error;

    fn try_from(doc: &TemplateDoc) -> Result<Self> {
        if doc.n_qubits == 0 || doc.n_qubits > crate::statevec::MAX_QUBITS {
            return Err(Error::template(
                "n_qubits",
                format!("{} outside supported range 1..={}", doc.n_qubits, crate::statevec::MAX_QUBITS),
            ));
        }
        let mut ops = Vec::with_capacity(doc.ops.len());
        for (i, op) in doc.ops.iter().enumerate() {
            let gate = op_from_doc(i, op)?;
            if let Err(e) = gate.validate(doc.n_qubits) {
                let name = match e {
                    Error::QubitOutOfRange { index, .. } if Some(index) == op.control => "control",
                    Error::QubitOutOfRange { .. } => "target",
                    _ => "kind",
                };
                return Err(Error::template(format!("ops[{i}].{name}"), e.to_string()));
            }
            ops.push(gate);
        }
        let template = CircuitTemplate::new(doc.id(), doc.n_qubits, ops)?;
        if let Some(declared) = &doc.family {
            let declared: Family = declared.parse()?;
            if declared != template.family() {
                return Err(Error::template(
                    "family",
                    format!(
                        "declared {declared} but the gate structure classifies as {}",
                        template.family()
                    ),
                ));
            }
        }
        Ok(template)
    }
}

/// Parses and validates an ansatz document.
pub fn load_template(document: &str) -> Result<CircuitTemplate> {
    let doc: TemplateDoc =
        serde_json::from_str(document).map_err(|e| Error::parse("ansatz document", &e))?;
    CircuitTemplate::try_from(&doc)
}

pub fn load_template_file(path: &Path) -> Result<CircuitTemplate> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let doc: TemplateDoc = serde_json::from_str(&text)
        .map_err(|e| Error::parse(path.display().to_string(), &e))?;
    CircuitTemplate::try_from(&doc)
}

pub fn template_to_json(template: &CircuitTemplate) -> String {
    serde_json::to_string_pretty(&TemplateDoc::from(template)).expect("template serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_all, catalog_get};

    #[test]
    fn minimal_document() {
        let t = load_template(r#"{"id": "one", "n_qubits": 1, "ops": [{"kind": "RX", "target": 0, "slot": 0}]}"#)
            .unwrap();
        assert_eq!(t.n_params(), 1);
        assert_eq!(t.id(), "one");
    }

    #[test]
    fn numeric_ids_accepted() {
        let t = load_template(r#"{"id": 5, "n_qubits": 1, "ops": [{"kind": "H", "target": 0}]}"#).unwrap();
        assert_eq!(t.id(), "5");
    }

    #[test]
    fn non_contiguous_slots() {
        let err = load_template(
            r#"{"id": "x", "n_qubits": 2, "ops": [
                {"kind": "RX", "target": 0, "slot": 0},
                {"kind": "RX", "target": 1, "slot": 2}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("non-contiguous parameter slots"), "{err}");
    }

    #[test]
    fn field_context_in_errors() {
        let err = load_template(
            r#"{"id": "x", "n_qubits": 2, "ops": [
                {"kind": "H", "target": 0},
                {"kind": "CNOT", "control": 4, "target": 1}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("ops[1].control"), "{err}");

        let err = load_template(r#"{"id": "x", "n_qubits": 1, "ops": [{"kind": "RY", "target": 0}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("ops[0].slot"), "{err}");

        let err = load_template(r#"{"id": "x", "n_qubits": 1, "ops": [{"kind": "H", "target": 0, "slot": 0}]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("ops[0].slot"), "{err}");
    }

    #[test]
    fn schema_violations_report_line() {
        let err = load_template("{\n  \"id\": \"x\",\n  \"n_qubits\": 1,\n  \"ops\": [{\"kind\": \"RW\", \"target\": 0}]\n}")
            .unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other}"),
        }
        assert!(load_template(r#"{"id": "x", "n_qubits": 1, "ops": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn declared_family_must_match() {
        let err = load_template(
            r#"{"id": "x", "n_qubits": 1, "family": "PE", "ops": [{"kind": "RX", "target": 0, "slot": 0}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("family"), "{err}");
    }

    #[test]
    fn catalog_round_trip() {
        let c8 = catalog_get(8).unwrap();
        assert_eq!(load_template(&template_to_json(&c8)).unwrap(), c8);
        for t in catalog_all() {
            assert_eq!(load_template(&template_to_json(&t)).unwrap(), t);
        }
    }
}
