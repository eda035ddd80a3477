//! The JSON document format for algebras, named operators and named states.
//!
//! Tables are rows of element indices. `prod` is required. A missing
//! `meet` means the algebra is a chain in label order; a missing `join` is
//! derived from `meet` and a missing `impl` by residuation. Operator maps
//! are written with labels and state values as `p/q` rationals.

use std::fmt::Write as _;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::algebra::{
    chain_lattice, join_from_meet, residuum_from_monoid, AlgebraError, BlAlgebra, ElementId, Table, Tables,
};
use crate::operators::StateOperator;
use crate::states::RationalState;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub format_version: u32,
    #[serde(deserialize_with = "nonempty")]
    pub labels: Vec<String>,
    pub tables: DocumentTables,
    #[serde(default)]
    pub operators: Vec<NamedOperator>,
    #[serde(default)]
    pub states: Vec<NamedState>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentTables {
    #[serde(default)]
    pub meet: Option<Vec<Vec<ElementId>>>,
    #[serde(default)]
    pub join: Option<Vec<Vec<ElementId>>>,
    #[serde(deserialize_with = "nonempty")]
    pub prod: Vec<Vec<ElementId>>,
    #[serde(default, rename = "impl")]
    pub imp: Option<Vec<Vec<ElementId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedOperator {
    pub name: String,
    pub map: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedState {
    pub name: String,
    pub values: Vec<String>,
}

fn nonempty<'de, D: Deserializer<'de>, T: Deserialize<'de>>(d: D) -> Result<Vec<T>, D::Error> {
    let v = Vec::<T>::deserialize(d)?;
    if v.is_empty() {
        return Err(serde::de::Error::custom("must not be empty"));
    }
    Ok(v)
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("invalid algebra: {0}")]
    Validation(#[from] AlgebraError),
    #[error("operator {name:?}: {message}")]
    Operator { name: String, message: String },
    #[error("state {name:?}: {message}")]
    State { name: String, message: String },
}

impl From<serde_json::Error> for DocumentError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C" to the message.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_owned(),
            None => message,
        };
        DocumentError::Parse { line: e.line(), column: e.column(), message }
    }
}

/// A document turned into verified objects.
#[derive(Clone, Debug)]
pub struct LoadedDocument {
    pub algebra: BlAlgebra,
    pub operators: Vec<(String, StateOperator)>,
    pub states: Vec<(String, RationalState)>,
}

impl LoadedDocument {
    pub fn operator(&self, name: &str) -> Option<&StateOperator> {
        self.operators.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDocument, DocumentError> {
    let doc: AlgebraDocument = serde_json::from_str(text)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(DocumentError::Version(doc.format_version));
    }
    Ok(doc)
}

fn table(rows: &[Vec<ElementId>]) -> Result<Table, AlgebraError> {
    Table::from_rows(rows)
}

impl AlgebraDocument {
    pub fn build_algebra(&self) -> Result<BlAlgebra, DocumentError> {
        let n = self.labels.len();
        let prod = table(&self.tables.prod)?;
        let (meet, join) = match (&self.tables.meet, &self.tables.join) {
            (None, None) => chain_lattice(n),
            (None, Some(_)) => {
                return Err(AlgebraError::Malformed("join given without meet".into()).into());
            }
            (Some(m), None) => {
                let meet = table(m)?;
                let join = join_from_meet(&meet)?;
                (meet, join)
            }
            (Some(m), Some(j)) => (table(m)?, table(j)?),
        };
        let imp = match &self.tables.imp {
            Some(i) => table(i)?,
            None => residuum_from_monoid(&meet, &prod)?,
        };
        Ok(BlAlgebra::new(Tables { labels: self.labels.clone(), meet, join, prod, imp })?)
    }

    pub fn load(&self) -> Result<LoadedDocument, DocumentError> {
        let algebra = self.build_algebra()?;
        let mut operators = Vec::with_capacity(self.operators.len());
        for op in &self.operators {
            let err = |message: String| DocumentError::Operator { name: op.name.clone(), message };
            let map = op
                .map
                .iter()
                .map(|l| algebra.index_of(l).ok_or_else(|| err(format!("unknown label {l:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let sigma = StateOperator::new(&algebra, map).map_err(|e| err(e.to_string()))?;
            operators.push((op.name.clone(), sigma));
        }
        let mut states = Vec::with_capacity(self.states.len());
        for st in &self.states {
            let values: Vec<&str> = st.values.iter().map(String::as_str).collect();
            let s = RationalState::parse(&algebra, &values)
                .map_err(|e| DocumentError::State { name: st.name.clone(), message: e.to_string() })?;
            states.push((st.name.clone(), s));
        }
        Ok(LoadedDocument { algebra, operators, states })
    }

    /// A document with all four tables spelled out.
    pub fn from_algebra(a: &BlAlgebra) -> AlgebraDocument {
        let rows = |t: &Table| t.rows().map(<[ElementId]>::to_vec).collect::<Vec<_>>();
        let t = a.tables();
        AlgebraDocument {
            format_version: FORMAT_VERSION,
            labels: t.labels.clone(),
            tables: DocumentTables {
                meet: Some(rows(&t.meet)),
                join: Some(rows(&t.join)),
                prod: rows(&t.prod),
                imp: Some(rows(&t.imp)),
            },
            operators: Vec::new(),
            states: Vec::new(),
        }
    }

    pub fn with_operator(mut self, a: &BlAlgebra, name: &str, sigma: &StateOperator) -> AlgebraDocument {
        self.operators.push(NamedOperator { name: name.to_owned(), map: sigma.labels(a) });
        self
    }

    pub fn with_state(mut self, name: &str, s: &RationalState) -> AlgebraDocument {
        self.states.push(NamedState { name: name.to_owned(), values: s.to_strings() });
        self
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn write_list<T>(out: &mut String, items: &[T], f: impl Fn(&T) -> String) {
    out.push('[');
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        out.push_str(&f(x));
    }
    out.push(']');
}

fn write_table(out: &mut String, name: &str, rows: &[Vec<ElementId>], last: bool) {
    let _ = writeln!(out, "    {}: [", json_str(name));
    for (i, row) in rows.iter().enumerate() {
        out.push_str("      ");
        write_list(out, row, |v| v.to_string());
        out.push_str(if i + 1 < rows.len() { ",\n" } else { "\n" });
    }
    out.push_str(if last { "    ]\n" } else { "    ],\n" });
}

/// Canonical text: fixed field order, one table row per line, trailing
/// newline. Parsing this text and serializing again gives the same bytes.
pub fn serialize_algebra(doc: &AlgebraDocument) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format_version\": {},", doc.format_version);
    out.push_str("  \"labels\": ");
    write_list(&mut out, &doc.labels, |l| json_str(l));
    out.push_str(",\n  \"tables\": {\n");
    let t = &doc.tables;
    let present: Vec<(&str, &Vec<Vec<ElementId>>)> =
        [("meet", t.meet.as_ref()), ("join", t.join.as_ref()), ("prod", Some(&t.prod)), ("impl", t.imp.as_ref())]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect();
    for (i, (name, rows)) in present.iter().enumerate() {
        write_table(&mut out, name, rows, i + 1 == present.len());
    }
    out.push_str("  }");
    if !doc.operators.is_empty() {
        out.push_str(",\n  \"operators\": [\n");
        for (i, op) in doc.operators.iter().enumerate() {
            let _ = write!(out, "    {{\"name\": {}, \"map\": ", json_str(&op.name));
            write_list(&mut out, &op.map, |l| json_str(l));
            out.push_str(if i + 1 < doc.operators.len() { "},\n" } else { "}\n" });
        }
        out.push_str("  ]");
    }
    if !doc.states.is_empty() {
        out.push_str(",\n  \"states\": [\n");
        for (i, st) in doc.states.iter().enumerate() {
            let _ = write!(out, "    {{\"name\": {}, \"values\": ", json_str(&st.name));
            write_list(&mut out, &st.values, |v| json_str(v));
            out.push_str(if i + 1 < doc.states.len() { "},\n" } else { "}\n" });
        }
        out.push_str("  ]");
    }
    out.push_str("\n}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{four_element, mv_chain};
    use crate::states::extremal_states;

    fn four_element_doc() -> String {
        let (a, s) = four_element();
        let st = extremal_states(&a).extremal_states.remove(0);
        serialize_algebra(&AlgebraDocument::from_algebra(&a).with_operator(&a, "sigma", &s).with_state("m", &st))
    }

    #[test]
    fn canonical_round_trip() {
        let text = four_element_doc();
        let doc = parse_algebra(&text).unwrap();
        assert_eq!(serialize_algebra(&doc), text);
        let loaded = doc.load().unwrap();
        assert_eq!(loaded.algebra, four_element().0);
        assert!(loaded.operator("sigma").unwrap().is_morphism());
        assert_eq!(loaded.states[0].1.to_strings(), ["0", "1/2", "1", "1"]);
    }

    #[test]
    fn prod_only_derives_the_rest() {
        let a = mv_chain(3);
        let mut doc = AlgebraDocument::from_algebra(&a);
        doc.tables.meet = None;
        doc.tables.join = None;
        doc.tables.imp = None;
        let text = serialize_algebra(&doc);
        let b = parse_algebra(&text).unwrap().build_algebra().unwrap();
        assert_eq!(b.tables().imp, a.tables().imp);
        assert_eq!(b, a);
    }

    #[test]
    fn empty_tables_are_a_parse_error() {
        let text = "{\n  \"format_version\": 1,\n  \"labels\": [\"0\"],\n  \"tables\": {\"prod\": []}\n}";
        match parse_algebra(text) {
            Err(DocumentError::Parse { line, message, .. }) => {
                assert_eq!(line, 4);
                assert!(message.contains("empty"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = four_element_doc().replacen("\"labels\"", "\"colour\": 1, \"labels\"", 1);
        match parse_algebra(&text) {
            Err(DocumentError::Parse { line: 3, message, .. }) => assert!(message.contains("colour")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mutated_table_fails_validation() {
        let mut doc = parse_algebra(&four_element_doc()).unwrap();
        doc.tables.prod[1][1] = 1;
        assert!(matches!(doc.load(), Err(DocumentError::Validation(_))));
    }

    #[test]
    fn unknown_operator_label() {
        let text = four_element_doc().replace("\"map\": [\"0\"", "\"map\": [\"z\"");
        assert!(matches!(parse_algebra(&text).unwrap().load(), Err(DocumentError::Operator { .. })));
    }
}
