//! JSON documents for bases, quivers, representations and reports.
//!
//! Output goes through `serde_json::Value`, whose maps are ordered, so keys
//! come out sorted and serialization is deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::base::{BaseDescriptor, SerialBase};
use crate::enumerate::{Class, EnumerationReport, TableVerdict};
use crate::error::{Error, Result};
use crate::quiver::{Quiver, QuiverSpec};
use crate::rep::{Certificate, RepMorphism, Representation};
use crate::serialmod::{SerialModule, SerialMorphism};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuiverDoc {
    Builtin(String),
    Spec(QuiverSpec),
}

impl QuiverDoc {
    pub fn build(&self) -> Result<Quiver> {
        match self {
            QuiverDoc::Builtin(name) => Quiver::builtin(name),
            QuiverDoc::Spec(spec) => Quiver::from_spec(spec),
        }
    }

    pub fn of(q: &Quiver) -> Self {
        match q.builtin_name() {
            Some(name) => QuiverDoc::Builtin(name.to_string()),
            None => QuiverDoc::Spec(q.to_spec()),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub parts: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDoc {
    pub coeff: Vec<u32>,
}

/// Rows follow the target's parts and columns the source's, in the order
/// the module documents list them. Missing or null entries are zero.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    #[serde(default)]
    pub entries: Vec<Option<Vec<Option<CoeffDoc>>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub base: BaseDescriptor,
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub maps: BTreeMap<String, MorphismDoc>,
}

fn parse_module(base: &SerialBase, doc: &ModuleDoc) -> Result<(SerialModule, Vec<usize>)> {
    let parts = doc.parts.iter().map(|n| base.label_by_name(n)).collect::<Result<Vec<_>>>()?;
    Ok(SerialModule::sorted(base, parts))
}

/// A morphism from its document, given the modules in document order and
/// their sorting permutations.
fn parse_morphism(
    base: &SerialBase,
    doc: &MorphismDoc,
    (s, spos, sraw): (&SerialModule, &[usize], &[usize]),
    (t, tpos, traw): (&SerialModule, &[usize], &[usize]),
) -> Result<SerialMorphism> {
    let ring = base.coeff();
    if doc.entries.len() > t.num_parts() {
        return Err(Error::ShapeMismatch(format!("{} rows for {} target parts", doc.entries.len(), t.num_parts())));
    }
    let mut f = SerialMorphism::zero(s, t);
    for (i, row) in doc.entries.iter().enumerate() {
        let Some(row) = row else { continue };
        if row.len() > s.num_parts() {
            return Err(Error::ShapeMismatch(format!("{} columns for {} source parts", row.len(), s.num_parts())));
        }
        for (j, e) in row.iter().enumerate() {
            let Some(e) = e else { continue };
            if e.coeff.len() > ring.n() as usize {
                return Err(Error::Invalid(format!("coefficient {:?} has too many digits", e.coeff)));
            }
            let c = ring.from_digits(&e.coeff)?;
            let (x, y) = (sraw[j], traw[i]);
            if base.reduce(x, y, c) != c {
                return Err(Error::Invalid(format!(
                    "coefficient {:?} is not reduced for Hom({}, {})",
                    e.coeff,
                    base.label(x).name,
                    base.label(y).name
                )));
            }
            f.set(tpos[i], spos[j], c);
        }
    }
    Ok(f)
}

impl RepDoc {
    pub fn build(&self) -> Result<Representation> {
        let base = SerialBase::from_descriptor(&self.base)?;
        let q = self.quiver.build()?;
        for name in self.modules.keys() {
            q.vertex_index(name)?;
        }
        for name in self.maps.keys() {
            q.arrow_index(name)?;
        }
        let empty = ModuleDoc::default();
        let mut modules = Vec::new();
        let mut raw = Vec::new();
        let mut pos = Vec::new();
        for v in 0..q.num_vertices() {
            let doc = self.modules.get(q.vertex_name(v)).unwrap_or(&empty);
            let (m, p) = parse_module(&base, doc)?;
            raw.push(doc.parts.iter().map(|n| base.label_by_name(n)).collect::<Result<Vec<_>>>()?);
            modules.push(m);
            pos.push(p);
        }
        let zero = MorphismDoc::default();
        let mut maps = Vec::new();
        for a in 0..q.num_arrows() {
            let (s, t) = (q.source(a), q.target(a));
            let doc = self.maps.get(q.arrow_name(a)).unwrap_or(&zero);
            maps.push(parse_morphism(&base, doc, (&modules[s], &pos[s], &raw[s]), (&modules[t], &pos[t], &raw[t]))?);
        }
        Representation::new(&q, &base, modules, maps)
    }

    pub fn of(r: &Representation) -> Self {
        let q = r.quiver();
        let modules = (0..q.num_vertices())
            .map(|v| (q.vertex_name(v).to_string(), ModuleDoc { parts: r.module(v).names() }))
            .collect();
        let maps = (0..q.num_arrows()).map(|a| (q.arrow_name(a).to_string(), morphism_doc(r.map(a)))).collect();
        RepDoc { base: r.base().descriptor(), quiver: QuiverDoc::of(q), modules, maps }
    }
}

pub fn morphism_doc(f: &SerialMorphism) -> MorphismDoc {
    let ring = f.base().coeff();
    let entries = (0..f.target().num_parts())
        .map(|i| Some((0..f.source().num_parts()).map(|j| Some(CoeffDoc { coeff: ring.digits(f.entry(i, j)) })).collect()))
        .collect();
    MorphismDoc { entries }
}

pub fn parse_rep(text: &str) -> Result<Representation> {
    let doc: RepDoc = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed representation: {e}")))?;
    doc.build()
}

pub fn rep_value(r: &Representation) -> Value {
    serde_json::to_value(RepDoc::of(r)).expect("documents serialize")
}

pub fn morphism_value(f: &RepMorphism) -> Value {
    let q = f.source.quiver();
    let components: BTreeMap<String, MorphismDoc> =
        f.components.iter().enumerate().map(|(v, c)| (q.vertex_name(v).to_string(), morphism_doc(c))).collect();
    json!({
        "source": rep_value(&f.source),
        "target": rep_value(&f.target),
        "components": serde_json::to_value(components).expect("documents serialize"),
    })
}

pub fn module_value(m: &SerialModule) -> Value {
    json!({ "parts": m.names() })
}

pub fn certificate_name(c: Certificate) -> String {
    match c {
        Certificate::Exhaustive => "exhaustive".into(),
        Certificate::Witness => "witness".into(),
        Certificate::Sampled(n) => format!("sampled:{n}"),
        Certificate::Decomposition => "decomposition".into(),
    }
}

fn class_value(c: &Class) -> Value {
    json!({
        "representation": rep_value(&c.rep),
        "certificate": serde_json::to_value(c.certificate).expect("serializes"),
        "indecomposable": certificate_name(c.indecomposable),
        "length_vector": c.rep.length_vector(),
    })
}

pub fn report_value(r: &EnumerationReport) -> Value {
    json!({
        "base": serde_json::to_value(r.base.descriptor()).expect("serializes"),
        "quiver": serde_json::to_value(QuiverDoc::of(&r.quiver)).expect("serializes"),
        "caps": r.caps,
        "classes": r.classes.iter().map(class_value).collect::<Vec<_>>(),
        "counts": { "injective": r.counts.0, "non_injective": r.counts.1 },
    })
}

pub fn table_value(t: &TableVerdict) -> Value {
    json!({
        "caps": t.caps,
        "vectors": t.vectors.iter().map(|(v, x)| json!({ "vector": v, "verdict": x })).collect::<Vec<_>>(),
        "extras": t.extras.iter().map(|(v, n)| json!({ "vector": v, "classes": n })).collect::<Vec<_>>(),
        "passed": t.passed(),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Length vectors written as digit strings such as `"012"`.
pub fn parse_length_table(text: &str) -> Result<Vec<Vec<u32>>> {
    #[derive(Deserialize)]
    struct Table {
        vectors: Vec<String>,
    }
    let t: Table = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("malformed table: {e}")))?;
    t.vectors
        .iter()
        .map(|s| {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Invalid(format!("bad length vector {s:?}"))))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const EMB: &str = r#"{
        "base": {"kind": "chain", "arith": "poly", "p": 2, "n": 2},
        "quiver": "An-linear:2",
        "modules": {"1": {"parts": ["M1"]}, "2": {"parts": ["M1", "M2"]}},
        "maps": {"a1": {"entries": [[{"coeff": [1, 0]}], null]}}
    }"#;

    #[test]
    fn parts_are_normalized_with_the_map() {
        let r = parse_rep(EMB).unwrap();
        assert_eq!(r.module(1).names(), vec!["M2", "M1"]);
        // the M1 row moved below the M2 row
        assert_eq!(r.map(0).entry(0, 0), 0);
        assert_eq!(r.map(0).entry(1, 0), 1);
    }

    #[test]
    fn emitted_documents_reload_to_equal_values() {
        let r = parse_rep(EMB).unwrap();
        let text = to_text(&rep_value(&r));
        assert_eq!(parse_rep(&text).unwrap(), r);
        assert_eq!(to_text(&rep_value(&parse_rep(&text).unwrap())), text);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse_rep("{").is_err());
        let bad_vertex = EMB.replace("\"2\": {", "\"7\": {");
        assert!(parse_rep(&bad_vertex).is_err());
        // Hom(M1, M1) over F2[x]/x^2 has length 1
        let unreduced = EMB.replace(r#""parts": ["M1", "M2"]"#, r#""parts": ["M1"]"#).replace("[1, 0]", "[1, 1]");
        assert!(parse_rep(&unreduced).is_err());
        let wide = EMB.replace(r#"[{"coeff": [1, 0]}]"#, r#"[{"coeff": [1, 0]}, null]"#);
        assert!(parse_rep(&wide).is_err());
    }

    #[test]
    fn keys_are_sorted() {
        let text = to_text(&rep_value(&parse_rep(EMB).unwrap()));
        let b = text.find("\"base\"").unwrap();
        let m = text.find("\"maps\"").unwrap();
        let q = text.find("\"quiver\"").unwrap();
        assert!(b < m && m < q);
    }
}
