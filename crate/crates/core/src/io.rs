//! JSON documents.
//!
//! A document lists its sets under `"sets"` as `{"name", "elements"}`, with
//! elements written as strings or `[left, right]` pairs; everything else
//! refers to sets by name. Maps are `{"source", "target", "map": [[x, y]..]}`.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::bicategory::Cell1;
use crate::equivariant::{FinGroup, GSet};
use crate::error::{Error, Result};
use crate::finset::{Elem, FinMap, FinSet};
use crate::smbf::{Context, IndexedSpace, MultiSpan, ParamSet, SpaceMap};

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(format!("malformed JSON: {e}")))
}

pub fn elem_to_json(e: &Elem) -> Value {
    match e.as_pair() {
        Some((l, r)) => json!([elem_to_json(l), elem_to_json(r)]),
        None => json!(e.as_atom().expect("atoms and pairs only")),
    }
}

pub fn elem_from_json(v: &Value) -> Result<Elem> {
    match v {
        Value::String(s) => Ok(Elem::atom(s)),
        Value::Array(items) if items.len() == 2 => {
            Ok(Elem::pair(elem_from_json(&items[0])?, elem_from_json(&items[1])?))
        }
        _ => Err(bad(format!("not an element: {v}"))),
    }
}

pub fn set_to_json(s: &FinSet) -> Value {
    json!({
        "name": s.name(),
        "elements": s.iter().map(|e| elem_to_json(&e)).collect::<Vec<_>>(),
    })
}

pub fn set_from_json(v: &Value) -> Result<FinSet> {
    let name = str_field(v, "name")?;
    let elems = array_field(v, "elements")?
        .iter()
        .map(elem_from_json)
        .collect::<Result<Vec<_>>>()?;
    FinSet::new(name, elems)
}

pub fn map_to_json(f: &FinMap) -> Value {
    json!({
        "source": f.source().name(),
        "target": f.target().name(),
        "map": f.pairs().iter().map(|(x, y)| json!([elem_to_json(x), elem_to_json(y)])).collect::<Vec<_>>(),
    })
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn str_field<'v>(v: &'v Value, key: &str) -> Result<&'v str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field \"{key}\" must be a string")))
}

fn array_field<'v>(v: &'v Value, key: &str) -> Result<&'v Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field \"{key}\" must be an array")))
}

/// Named sets collected from one or more documents.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    sets: HashMap<String, FinSet>,
}

impl Registry {
    pub fn from_doc(doc: &Value) -> Result<Self> {
        let mut reg = Registry::default();
        reg.add_doc(doc)?;
        Ok(reg)
    }

    /// Adds the document's `"sets"`; a name may only be redefined identically.
    pub fn add_doc(&mut self, doc: &Value) -> Result<()> {
        let Some(sets) = doc.get("sets") else {
            return Ok(());
        };
        let sets = sets.as_array().ok_or_else(|| bad("\"sets\" must be an array"))?;
        for s in sets {
            self.add(set_from_json(s)?)?;
        }
        Ok(())
    }

    pub fn add(&mut self, set: FinSet) -> Result<()> {
        match self.sets.get(set.name()) {
            Some(old) if old != &set => Err(bad(format!("set {} defined twice", set.name()))),
            _ => {
                self.sets.insert(set.name().to_string(), set);
                Ok(())
            }
        }
    }

    pub fn set(&self, name: &str) -> Result<FinSet> {
        self.sets
            .get(name)
            .cloned()
            .ok_or_else(|| bad(format!("unknown set {name}")))
    }

    pub fn map(&self, v: &Value) -> Result<FinMap> {
        let source = self.set(str_field(v, "source")?)?;
        let target = self.set(str_field(v, "target")?)?;
        let pairs = array_field(v, "map")?
            .iter()
            .map(|p| match p.as_array() {
                Some(xy) if xy.len() == 2 => Ok((elem_from_json(&xy[0])?, elem_from_json(&xy[1])?)),
                _ => Err(bad(format!("map entries are [x, y] pairs, got {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::from_pairs(source, target, &pairs)
    }

    /// `"ctx"` names the base set; absent (or `"*"`) means the point.
    pub fn context(&self, doc: &Value) -> Result<Context> {
        match doc.get("ctx").and_then(Value::as_str) {
            None | Some("*") => Ok(Context::absolute()),
            Some(name) => Ok(Context::over(self.set(name)?)),
        }
    }

    /// The space on a named set: over the point, or through the structure map
    /// listed under `"over"` (keyed by set name).
    pub fn space(&self, doc: &Value, ctx: &Context, name: &str) -> Result<IndexedSpace> {
        let set = self.set(name)?;
        if ctx.is_absolute() {
            return ctx.space(set);
        }
        let over = doc
            .get("over")
            .and_then(|o| o.get(name))
            .ok_or_else(|| bad(format!("no structure map for {name} under \"over\"")))?;
        let to_base = self.map(over)?;
        if to_base.target() != ctx.base() || to_base.source() != &set {
            return Err(bad(format!("structure map for {name} must run from {name} to the base")));
        }
        IndexedSpace::new(set, to_base)
    }
}

/// `{"ctx", "B", "C", "inputs", "f", "g"}`.
pub fn read_multispan(doc: &Value) -> Result<(Registry, MultiSpan)> {
    let reg = Registry::from_doc(doc)?;
    let ctx = reg.context(doc)?;
    let apex = reg.space(doc, &ctx, str_field(doc, "B")?)?;
    let target = reg.space(doc, &ctx, str_field(doc, "C")?)?;
    let inputs = array_field(doc, "inputs")?
        .iter()
        .map(|v| {
            let name = v.as_str().ok_or_else(|| bad("inputs are set names"))?;
            reg.space(doc, &ctx, name)
        })
        .collect::<Result<Vec<_>>>()?;
    let f = SpaceMap::new(apex.clone(), target, reg.map(field(doc, "f")?)?)?;
    let gs = array_field(doc, "g")?;
    if gs.len() != inputs.len() {
        return Err(Error::Arity {
            expected: inputs.len(),
            got: gs.len(),
        });
    }
    let g = gs
        .iter()
        .zip(&inputs)
        .map(|(v, a)| SpaceMap::new(apex.clone(), a.clone(), reg.map(v)?))
        .collect::<Result<Vec<_>>>()?;
    Ok((reg.clone(), MultiSpan::new(ctx, f, g)?))
}

/// `{"total", "base", "proj"}`, over the given space.
pub fn read_param_set(reg: &Registry, doc: &Value, base: &IndexedSpace) -> Result<ParamSet> {
    if str_field(doc, "base")? != base.space().name() {
        return Err(bad(format!(
            "input lies over {}, expected {}",
            str_field(doc, "base")?,
            base.space().name()
        )));
    }
    let total = reg.set(str_field(doc, "total")?)?;
    let proj = reg.map(field(doc, "proj")?)?;
    ParamSet::new(total, base.clone(), proj)
}

pub fn param_set_to_json(x: &ParamSet) -> Value {
    json!({
        "sets": [set_to_json(x.total()), set_to_json(x.base().space())],
        "total": x.total().name(),
        "base": x.base().space().name(),
        "proj": map_to_json(x.proj()),
    })
}

pub fn space_to_json(a: &IndexedSpace) -> Value {
    json!({
        "set": set_to_json(a.space()),
        "to_base": map_to_json(a.to_base()),
    })
}

/// `{"src", "dst", "body"}` with the body over `src ×_B dst`, plus the sets.
pub fn cell_to_json(x: &Cell1) -> Value {
    let body = x.body();
    json!({
        "sets": [set_to_json(x.src().space()), set_to_json(x.dst().space())],
        "src": x.src().space().name(),
        "dst": x.dst().space().name(),
        "body": param_set_to_json(&body),
    })
}

/// `{"name"?, "elements", "table"}` with the table indexed by element
/// positions: `table[i][j] = elements[i] · elements[j]`.
pub fn read_group(doc: &Value) -> Result<FinGroup> {
    let names = array_field(doc, "elements")?
        .iter()
        .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("group elements are strings")))
        .collect::<Result<Vec<_>>>()?;
    let elements = FinSet::atoms(doc.get("name").and_then(Value::as_str).unwrap_or("G"), &names)?;
    let index = |v: &Value| -> Result<usize> {
        let s = v.as_str().ok_or_else(|| bad("table entries are strings"))?;
        names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| bad(format!("unknown group element {s}")))
    };
    let table = array_field(doc, "table")?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| bad("table rows are arrays"))?
                .iter()
                .map(index)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let name = doc.get("name").and_then(Value::as_str).unwrap_or("G");
    FinGroup::new(name, elements, table)
}

/// A builtin group name or a group document.
pub fn group_from_spec(spec: &str, load: impl FnOnce(&str) -> Result<String>) -> Result<FinGroup> {
    if let Some(g) = FinGroup::builtin(spec) {
        return Ok(g);
    }
    read_group(&parse(&load(spec)?)?)
}

/// `"action": [[g, x, gx], ..]` on `set`.
pub fn read_action(doc: &Value, group: &FinGroup, set: &FinSet) -> Result<GSet> {
    let triples = array_field(doc, "action")?
        .iter()
        .map(|t| match t.as_array() {
            Some(t) if t.len() == 3 => Ok((elem_from_json(&t[0])?, elem_from_json(&t[1])?, elem_from_json(&t[2])?)),
            _ => Err(bad(format!("action entries are [g, x, gx], got {t}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    GSet::from_triples(group.clone(), set.clone(), &triples)
}

/// An endomap document: `{"sets", "map"}`, optionally with `"action"`.
pub fn read_endomap(doc: &Value) -> Result<FinMap> {
    let reg = Registry::from_doc(doc)?;
    reg.map(field(doc, "map")?)
}

/// The document read by [`read_multispan`].
pub fn multispan_to_json(span: &MultiSpan) -> Value {
    let ctx = span.ctx();
    let mut spaces = vec![span.apex(), span.target()];
    spaces.extend(span.inputs());
    let mut sets: Vec<Value> = Vec::new();
    let mut over = serde_json::Map::new();
    for a in spaces {
        let js = set_to_json(a.space());
        if !sets.contains(&js) {
            sets.push(js);
        }
        over.insert(a.space().name().to_string(), map_to_json(a.to_base()));
    }
    let mut doc = json!({
        "B": span.apex().space().name(),
        "C": span.target().space().name(),
        "inputs": span.inputs().iter().map(|a| a.space().name()).collect::<Vec<_>>(),
        "f": map_to_json(span.f().map()),
        "g": span.g().iter().map(|g| map_to_json(g.map())).collect::<Vec<_>>(),
    });
    if !ctx.is_absolute() {
        sets.push(set_to_json(ctx.base()));
        doc["ctx"] = json!(ctx.base().name());
        doc["over"] = Value::Object(over);
    }
    doc["sets"] = Value::Array(sets);
    doc
}

/// `{"set", "action": [[g, x, gx], ..]}`.
pub fn gset_to_json(x: &GSet) -> Value {
    let g = x.group().elements();
    let triples: Vec<Value> = (0..g.len())
        .flat_map(|a| {
            (0..x.len()).map(move |i| {
                json!([elem_to_json(&g.elem(a)), elem_to_json(&x.set().elem(i)), elem_to_json(&x.set().elem(x.act(a, i)))])
            })
        })
        .collect();
    json!({ "set": set_to_json(x.set()), "action": triples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_round_trip() {
        let e = Elem::pair(Elem::atom("a"), Elem::pair(Elem::atom("b"), Elem::atom("c")));
        assert_eq!(elem_from_json(&elem_to_json(&e)).unwrap(), e);
        assert!(elem_from_json(&json!(3)).is_err());
    }

    #[test]
    fn nullary_span_document() {
        let doc = json!({
            "sets": [
                {"name": "B", "elements": ["b0", "b1"]},
                {"name": "C", "elements": ["c"]}
            ],
            "B": "B", "C": "C", "inputs": [],
            "f": {"source": "B", "target": "C", "map": [["b0", "c"], ["b1", "c"]]},
            "g": []
        });
        let (_, span) = read_multispan(&doc).unwrap();
        assert_eq!(span.arity(), 0);
        assert!(!span.is_rigid());
        let out = span.act(&[]).unwrap();
        assert_eq!(out.len(), 2);
        let js = param_set_to_json(&out);
        assert_eq!(js["base"], "C");
    }

    #[test]
    fn fibered_spaces_need_structure_maps() {
        let doc = json!({
            "sets": [
                {"name": "U", "elements": ["u0", "u1"]},
                {"name": "A", "elements": ["a"]}
            ],
            "ctx": "U", "B": "A", "C": "A", "inputs": ["A"],
            "f": {"source": "A", "target": "A", "map": [["a", "a"]]},
            "g": [{"source": "A", "target": "A", "map": [["a", "a"]]}]
        });
        assert!(matches!(read_multispan(&doc), Err(Error::Input(_))));
        let mut doc = doc;
        doc["over"] = json!({"A": {"source": "A", "target": "U", "map": [["a", "u1"]]}});
        let (_, span) = read_multispan(&doc).unwrap();
        assert!(span.is_rigid());
        let (_, again) = read_multispan(&multispan_to_json(&span)).unwrap();
        assert_eq!(again.f(), span.f());
    }

    #[test]
    fn groups_and_actions() {
        let doc = json!({
            "name": "C2", "elements": ["e", "t"], "table": [["e", "t"], ["t", "e"]],
        });
        let g = read_group(&doc).unwrap();
        assert_eq!(g.order(), 2);
        let set = FinSet::atoms("X", &["x", "y"]).unwrap();
        let act = json!({"action": [["e","x","x"],["e","y","y"],["t","x","y"],["t","y","x"]]});
        let gs = read_action(&act, &g, &set).unwrap();
        assert_eq!(gs.orbits().len(), 1);
        let broken = json!({"elements": ["e", "t"], "table": [["e", "t"], ["t", "t"]]});
        assert!(read_group(&broken).is_err());
    }

    #[test]
    fn duplicate_set_names_must_agree() {
        let mut reg = Registry::default();
        reg.add(FinSet::atoms("A", &["a"]).unwrap()).unwrap();
        assert!(reg.add(FinSet::atoms("A", &["a"]).unwrap()).is_ok());
        assert!(reg.add(FinSet::atoms("A", &["b"]).unwrap()).is_err());
    }
}
