//! The JSON algebra file format.
//!
//! ```json
//! {
//!   "group": {"orders": [2, 2]},
//!   "bicharacter": {"exponents": [[0, 1], [1, 0]]},
//!   "basis": [{"name": "x", "degree": [1, 0]}, ...],
//!   "brackets": [{"left": "x", "right": "y", "result": {"z": "1"}}, ...]
//! }
//! ```
//!
//! Scalars use the text form of [`CycloScalar`] with conductor equal to the
//! group exponent. A bracket `[a, b]` whose reverse is not listed is filled
//! in by ε-antisymmetry.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{AlgebraError, BracketEntry, ColorAlgebra};
use crate::grading::{Bicharacter, GradingGroup};
use crate::scalars::CycloScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid algebra at {location}: {message}")]
    Validation { location: String, message: String },
}

fn invalid(location: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Validation {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub group: GroupSpec,
    pub bicharacter: BicharacterSpec,
    pub basis: Vec<BasisSpec>,
    pub brackets: Vec<BracketSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub orders: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BicharacterSpec {
    pub exponents: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisSpec {
    pub name: String,
    pub degree: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub result: IndexMap<String, String>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<ColorAlgebra, FormatError> {
        let group =
            GradingGroup::new(self.group.orders.clone()).map_err(|e| invalid("group", e))?;
        let bichar = Bicharacter::new(group.clone(), self.bicharacter.exponents.clone())
            .map_err(|e| invalid("bicharacter", e))?;
        let report = bichar.validate();
        if !report.is_valid() {
            return Err(invalid(
                "bicharacter",
                format!(
                    "skew violations at {:?}, order violations at {:?}",
                    report.skew_violations, report.order_violations
                ),
            ));
        }
        let m = group.exponent();

        let mut basis = Vec::with_capacity(self.basis.len());
        for (i, b) in self.basis.iter().enumerate() {
            let deg = group
                .element(b.degree.clone())
                .map_err(|e| invalid(format!("basis[{i}].degree"), e))?;
            basis.push((b.name.clone(), deg));
        }
        let index = |name: &str, loc: String| {
            self.basis
                .iter()
                .position(|b| b.name == name)
                .ok_or_else(|| invalid(loc, format!("unknown basis element {name:?}")))
        };

        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (bi, spec) in self.brackets.iter().enumerate() {
            let left = index(&spec.left, format!("brackets[{bi}].left"))?;
            let right = index(&spec.right, format!("brackets[{bi}].right"))?;
            let mut result = Vec::with_capacity(spec.result.len());
            for (name, text) in &spec.result {
                let loc = format!("brackets[{bi}].result.{name}");
                let k = index(name, loc.clone())?;
                let c = CycloScalar::parse(text, m).map_err(|e| invalid(loc, e))?;
                result.push((k, c));
            }
            brackets.push(BracketEntry {
                left,
                right,
                result,
            });
        }

        ColorAlgebra::from_brackets(bichar, basis, brackets).map_err(|e| match &e {
            AlgebraError::GradingSupport {
                left,
                right,
                target,
            } => invalid(format!("brackets[{left},{right}].result.{target}"), e),
            AlgebraError::Antisymmetry { left, right } => {
                invalid(format!("brackets[{right},{left}]"), e)
            }
            AlgebraError::DuplicateBracket(l, r) => invalid(format!("brackets[{l},{r}]"), e),
            AlgebraError::DuplicateName(n) => invalid(format!("basis.{n}"), e),
            _ => invalid("algebra", e),
        })
    }

    /// Canonical file: brackets `[e_i, e_j]` with `i <= j` that are nonzero,
    /// result terms in basis order.
    pub fn from_algebra(alg: &ColorAlgebra) -> Self {
        let d = alg.dim();
        let names = alg.names();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i..d {
                let result: IndexMap<String, String> = alg
                    .bracket_basis(i, j)
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (names[k].clone(), c.to_string()))
                    .collect();
                if !result.is_empty() {
                    brackets.push(BracketSpec {
                        left: names[i].clone(),
                        right: names[j].clone(),
                        result,
                    });
                }
            }
        }
        Self {
            group: GroupSpec {
                orders: alg.group().orders().to_vec(),
            },
            bicharacter: BicharacterSpec {
                exponents: alg.bichar().exponents().to_vec(),
            },
            basis: names
                .iter()
                .zip(alg.degrees())
                .map(|(name, deg)| BasisSpec {
                    name: name.clone(),
                    degree: deg.residues().to_vec(),
                })
                .collect(),
            brackets,
        }
    }
}

pub fn parse_algebra_file(text: &str) -> Result<ColorAlgebra, FormatError> {
    let file: AlgebraFile =
        serde_json::from_str(text).map_err(|e| FormatError::Parse(e.to_string()))?;
    file.to_algebra()
}

/// Canonical serialization, pretty-printed with a trailing newline.
pub fn serialize_algebra(alg: &ColorAlgebra) -> String {
    let mut out = serde_json::to_string_pretty(&AlgebraFile::from_algebra(alg))
        .expect("algebra files always serialize");
    out.push('\n');
    out
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn fingerprint(alg: &ColorAlgebra) -> String {
    hex::encode(Sha256::digest(serialize_algebra(alg).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const COLOR_SL2: &str = r#"{
        "group": {"orders": [2, 2]},
        "bicharacter": {"exponents": [[0, 1], [1, 0]]},
        "basis": [
            {"name": "x", "degree": [1, 0]},
            {"name": "y", "degree": [0, 1]},
            {"name": "z", "degree": [1, 1]}
        ],
        "brackets": [
            {"left": "x", "right": "y", "result": {"z": "1"}},
            {"left": "y", "right": "z", "result": {"x": "1"}},
            {"left": "z", "right": "x", "result": {"y": "1"}}
        ]
    }"#;

    #[test]
    fn parses_hand_written_file() {
        let a = parse_algebra_file(COLOR_SL2).unwrap();
        assert_eq!(a, catalog::color_sl2());
    }

    #[test]
    fn catalog_round_trip() {
        for (name, alg) in catalog::all() {
            let text = serialize_algebra(&alg);
            let back = parse_algebra_file(&text).unwrap();
            assert_eq!(back, alg, "{name}");
            assert_eq!(serialize_algebra(&back), text, "{name}");
        }
    }

    #[test]
    fn wrong_degree_rejected() {
        let text = COLOR_SL2.replace(r#""result": {"z": "1"}"#, r#""result": {"x": "1"}"#);
        match parse_algebra_file(&text) {
            Err(FormatError::Validation { location, .. }) => {
                assert_eq!(location, "brackets[x,y].result.x")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_reverse_rejected() {
        // [y, x] = +z is what antisymmetry gives; -z contradicts it.
        let text = COLOR_SL2.replace(
            r#"{"left": "z", "right": "x", "result": {"y": "1"}}"#,
            r#"{"left": "z", "right": "x", "result": {"y": "1"}},
               {"left": "y", "right": "x", "result": {"z": "-1"}}"#,
        );
        assert!(matches!(
            parse_algebra_file(&text),
            Err(FormatError::Validation { .. })
        ));
        let consistent = text.replace(r#"{"z": "-1"}"#, r#"{"z": "1"}"#);
        assert_eq!(
            parse_algebra_file(&consistent).unwrap(),
            catalog::color_sl2()
        );
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(
            parse_algebra_file("{"),
            Err(FormatError::Parse(_))
        ));
        let extra = COLOR_SL2.replacen('{', r#"{"extra": 1,"#, 1);
        assert!(matches!(
            parse_algebra_file(&extra),
            Err(FormatError::Parse(_))
        ));
        let bad_bichar = COLOR_SL2.replace("[[0, 1], [1, 0]]", "[[0, 1], [0, 0]]");
        assert!(matches!(
            parse_algebra_file(&bad_bichar),
            Err(FormatError::Validation { location, .. }) if location == "bicharacter"
        ));
        let unknown = COLOR_SL2.replace(r#"{"x": "1"}"#, r#"{"w": "1"}"#);
        assert!(parse_algebra_file(&unknown).is_err());
        let bad_scalar = COLOR_SL2.replace(r#"{"x": "1"}"#, r#"{"x": "1/0"}"#);
        assert!(parse_algebra_file(&bad_scalar).is_err());
    }

    #[test]
    fn fingerprint_is_stable() {
        let a = catalog::sl2();
        assert_eq!(fingerprint(&a), fingerprint(&catalog::sl2()));
        assert_ne!(fingerprint(&a), fingerprint(&catalog::osp12()));
        assert_eq!(fingerprint(&a).len(), 64);
    }
}
