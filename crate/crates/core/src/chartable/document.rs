//! Versioned JSON form of a character table.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::irreducible::{CharacterTable, IrrLabel, Irreducible};
use crate::classfun::ClassFunction;
use crate::cyclotomic::{gauss_sum, Cyc};
use crate::error::{Error, Result};
use crate::group::{ClassKey, ClassKind, Sl2Group};

pub const SCHEMA: &str = "dlcusp.chartable";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub key: ClassKey,
    pub kind: ClassKind,
    pub size: u64,
    pub centralizer_order: u64,
    pub trace: u64,
    pub inverse_class: usize,
    pub representative: [[u64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub label: IrrLabel,
    pub degree: u64,
    pub values: Vec<Cyc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableDocument {
    pub schema: String,
    pub schema_version: u32,
    pub p: u64,
    pub epsilon: u64,
    pub classes: Vec<ClassEntry>,
    pub characters: Vec<CharacterEntry>,
}

impl CharTableDocument {
    pub fn from_table(t: &CharacterTable) -> Self {
        let classes = t
            .classes()
            .classes()
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.representative.entries();
                ClassEntry {
                    key: c.key,
                    kind: c.kind,
                    size: c.size,
                    centralizer_order: c.centralizer_order,
                    trace: c.trace,
                    inverse_class: c.inverse_class,
                    representative: [[a, b], [cc, d]],
                }
            })
            .collect();
        let characters = t
            .irreducibles
            .iter()
            .map(|c| CharacterEntry {
                label: c.label,
                degree: c.degree,
                values: c.chi.values().to_vec(),
            })
            .collect();
        CharTableDocument {
            schema: SCHEMA.to_string(),
            schema_version: SCHEMA_VERSION,
            p: t.p(),
            epsilon: t.classes().epsilon(),
            classes,
            characters,
        }
    }

    /// Rebuilds the table. Class data must agree with a fresh enumeration;
    /// character values are taken from the document as given.
    pub fn into_table(self) -> Result<CharacterTable> {
        if self.schema != SCHEMA || self.schema_version != SCHEMA_VERSION {
            return Err(Error::Document(format!(
                "schema {} v{} (expected {SCHEMA} v{SCHEMA_VERSION})",
                self.schema, self.schema_version
            )));
        }
        let group = Arc::new(Sl2Group::new(self.p)?);
        let fresh = CharTableDocument {
            characters: Vec::new(),
            ..Self::from_table(&CharacterTable {
                group: group.clone(),
                gauss_sum: Cyc::zero(),
                irreducibles: Vec::new(),
            })
        };
        if fresh.epsilon != self.epsilon || fresh.classes != self.classes {
            return Err(Error::Document(format!("class data does not match SL2(F_{})", self.p)));
        }
        let irreducibles = self
            .characters
            .into_iter()
            .map(|c| {
                let chi = ClassFunction::new(group.table.clone(), c.values)?;
                if *chi.degree() != Cyc::from_integer(c.degree as i64) {
                    return Err(Error::Document(format!("{}: degree field disagrees with values", c.label)));
                }
                Ok(Irreducible {
                    label: c.label,
                    chi,
                    degree: c.degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            gauss_sum: gauss_sum(self.p),
            group,
            irreducibles,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartable::{irreducible_table, validate_table};

    #[test]
    fn round_trip_at_seven() {
        let t = irreducible_table(Arc::new(Sl2Group::new(7).unwrap())).unwrap();
        let doc = CharTableDocument::from_table(&t);
        let json = doc.to_json();
        let back = CharTableDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        let t2 = back.into_table().unwrap();
        assert_eq!(t2.irreducibles, t.irreducibles);
        validate_table(&t2).unwrap();
    }

    #[test]
    fn rejects_wrong_version_and_tampering() {
        let t = irreducible_table(Arc::new(Sl2Group::new(7).unwrap())).unwrap();
        let mut doc = CharTableDocument::from_table(&t);
        doc.schema_version = 0;
        assert!(doc.clone().into_table().is_err());
        doc.schema_version = SCHEMA_VERSION;
        doc.classes[3].size += 1;
        assert!(doc.into_table().is_err());
    }
}
