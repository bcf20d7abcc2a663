//! Categories given by explicit tables, loadable from JSON:
//!
//! ```json
//! {"name": "chain", "objects": ["a", "b"],
//!  "morphisms": [{"name": "f", "src": "a", "dst": "b", "we": true}],
//!  "compose": [["g", "f", "gf"]],
//!  "deformation": {"radiant": ["b"], "objects": {"a": "b"},
//!                  "morphisms": {"f": "id_b"}, "unit": {"a": "f"}},
//!  "functors": [{"name": "F", "objects": {..}, "morphisms": {..}}]}
//! ```
//!
//! Identities `id_<object>` are implicit and always weak equivalences.
//! Unlisted objects and identities map to themselves under functors, and
//! the unit defaults to identities.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Deserialize;

use super::{
    check_category, check_functor, Category, Functor, IdentityFunctor, Mor, NatTrans,
    RightDeformation, WeCategory, WeFunctor,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Deserialize)]
pub struct MorSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
    #[serde(default)]
    pub we: bool,
}

#[derive(Clone, Debug, Deserialize)]
pub struct DeformSpec {
    pub radiant: Vec<String>,
    #[serde(default)]
    pub objects: HashMap<String, String>,
    #[serde(default)]
    pub morphisms: HashMap<String, String>,
    #[serde(default)]
    pub unit: HashMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct FunctorSpec {
    pub name: String,
    #[serde(default)]
    pub objects: HashMap<String, String>,
    #[serde(default)]
    pub morphisms: HashMap<String, String>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ModelSpec {
    pub name: String,
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorSpec>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    pub deformation: Option<DeformSpec>,
    #[serde(default)]
    pub functors: Vec<FunctorSpec>,
}

struct Arrow {
    name: String,
    src: usize,
    dst: usize,
    we: bool,
}

pub struct TableCat {
    name: String,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    by_name: HashMap<String, usize>,
    homs: Vec<Vec<Vec<usize>>>,
    table: HashMap<(usize, usize), usize>,
}

impl TableCat {
    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        let obj_index: HashMap<&str, usize> =
            spec.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if obj_index.len() != spec.objects.len() {
            return Err(Error::Category("duplicate object name".into()));
        }
        let find_obj = |o: &str| {
            obj_index
                .get(o)
                .copied()
                .ok_or_else(|| Error::Category(format!("unknown object {o}")))
        };
        let mut arrows: Vec<Arrow> = spec
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow {
                name: format!("id_{o}"),
                src: i,
                dst: i,
                we: true,
            })
            .collect();
        for m in &spec.morphisms {
            arrows.push(Arrow {
                name: m.name.clone(),
                src: find_obj(&m.src)?,
                dst: find_obj(&m.dst)?,
                we: m.we,
            });
        }
        let by_name: HashMap<String, usize> =
            arrows.iter().enumerate().map(|(i, a)| (a.name.clone(), i)).collect();
        if by_name.len() != arrows.len() {
            return Err(Error::Category("duplicate morphism name".into()));
        }
        let n = spec.objects.len();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.src][a.dst].push(i);
        }
        let mut cat = TableCat {
            name: spec.name.clone(),
            objects: spec.objects.clone(),
            arrows,
            by_name,
            homs,
            table: HashMap::new(),
        };
        for [g, f, gf] in &spec.compose {
            let (g, f, gf) = (cat.arrow(g)?, cat.arrow(f)?, cat.arrow(gf)?);
            cat.table.insert((g, f), gf);
        }
        Ok(cat)
    }

    pub fn arrow(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::Category(format!("unknown morphism {name}")))
    }

    pub fn object(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::Category(format!("unknown object {name}")))
    }

    pub fn mor(&self, i: usize) -> Mor {
        Mor {
            src: self.arrows[i].src,
            dst: self.arrows[i].dst,
            data: smallvec::smallvec![i as u32],
        }
    }
}

impl WeCategory for TableCat {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.objects.len()
    }

    fn describe(&self, a: usize) -> String {
        self.objects[a].clone()
    }

    fn describe_mor(&self, f: &Mor) -> String {
        let a = &self.arrows[f.data[0] as usize];
        format!("{}: {} → {}", a.name, self.objects[a.src], self.objects[a.dst])
    }

    fn identity(&self, a: usize) -> Mor {
        self.mor(a)
    }

    fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        if f.dst != g.src {
            return Err(Error::Category(format!("cannot compose {} after {}", self.describe_mor(g), self.describe_mor(f))));
        }
        let (gi, fi) = (g.data[0] as usize, f.data[0] as usize);
        if gi < self.objects.len() {
            return Ok(f.clone());
        }
        if fi < self.objects.len() {
            return Ok(g.clone());
        }
        self.table
            .get(&(gi, fi))
            .map(|&h| self.mor(h))
            .ok_or_else(|| Error::Category(format!("no composite for {} ∘ {}", self.arrows[gi].name, self.arrows[fi].name)))
    }

    fn is_we(&self, f: &Mor) -> bool {
        self.arrows[f.data[0] as usize].we
    }

    fn is_iso(&self, f: &Mor) -> bool {
        self.homs[f.dst][f.src].iter().any(|&g| {
            let g = self.mor(g);
            self.compose(&g, f).ok() == Some(self.identity(f.src))
                && self.compose(f, &g).ok() == Some(self.identity(f.dst))
        })
    }

    fn for_each_hom(&self, a: usize, b: usize, visit: &mut dyn FnMut(Mor) -> bool) -> Result<()> {
        for &i in &self.homs[a][b] {
            if !visit(self.mor(i)) {
                break;
            }
        }
        Ok(())
    }
}

/// An endofunctor of a table category.
pub struct TableFunctor {
    name: String,
    cat: Category,
    objects: Vec<usize>,
    arrows: Vec<usize>,
}

impl TableFunctor {
    fn from_maps(
        name: &str,
        table: &Arc<TableCat>,
        objects: &HashMap<String, String>,
        morphisms: &HashMap<String, String>,
    ) -> Result<Self> {
        let mut obj_map: Vec<usize> = (0..table.objects.len()).collect();
        for (k, v) in objects {
            obj_map[table.object(k)?] = table.object(v)?;
        }
        let mut arrow_map: Vec<usize> = (0..table.arrows.len()).collect();
        for (i, slot) in arrow_map.iter_mut().enumerate().take(table.objects.len()) {
            *slot = obj_map[i];
        }
        for (k, v) in morphisms {
            arrow_map[table.arrow(k)?] = table.arrow(v)?;
        }
        Ok(TableFunctor {
            name: name.into(),
            cat: table.clone(),
            objects: obj_map,
            arrows: arrow_map,
        })
    }
}

impl WeFunctor for TableFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn source(&self) -> &Category {
        &self.cat
    }
    fn target(&self) -> &Category {
        &self.cat
    }
    fn on_obj(&self, a: usize) -> usize {
        self.objects[a]
    }
    fn on_mor(&self, f: &Mor) -> Mor {
        Mor {
            src: self.objects[f.src],
            dst: self.objects[f.dst],
            data: smallvec::smallvec![self.arrows[f.data[0] as usize] as u32],
        }
    }
}

/// A loaded table model: the category, its deformation and endofunctors.
pub struct TableModel {
    pub table: Arc<TableCat>,
    pub cat: Category,
    pub deformation: RightDeformation,
    pub functors: Vec<Functor>,
}

impl TableModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ModelSpec = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        TableModel::from_spec(&spec)
    }

    /// Validates the category axioms and functoriality before returning.
    pub fn from_spec(spec: &ModelSpec) -> Result<Self> {
        let table = Arc::new(TableCat::from_spec(spec)?);
        let report = check_category(table.as_ref())?;
        if !report.valid {
            return Err(Error::Category(report.violations.join("; ")));
        }
        let cat: Category = table.clone();
        let id: Functor = Arc::new(IdentityFunctor(cat.clone()));
        let mut functors = vec![id.clone()];
        for f in &spec.functors {
            let functor: Functor = Arc::new(TableFunctor::from_maps(&f.name, &table, &f.objects, &f.morphisms)?);
            if let Some(w) = check_functor(&functor)? {
                return Err(Error::Category(w));
            }
            functors.push(functor);
        }
        let deformation = match &spec.deformation {
            None => RightDeformation::trivial(&cat),
            Some(d) => {
                let r: Functor = Arc::new(TableFunctor::from_maps("R", &table, &d.objects, &d.morphisms)?);
                if let Some(w) = check_functor(&r)? {
                    return Err(Error::Category(w));
                }
                let mut radiant = vec![false; table.objects.len()];
                for o in &d.radiant {
                    radiant[table.object(o)?] = true;
                }
                let mut unit = (0..table.objects.len()).collect::<Vec<usize>>();
                for (k, v) in &d.unit {
                    unit[table.object(k)?] = table.arrow(v)?;
                }
                let t2 = table.clone();
                let unit = NatTrans::new("η", id, r.clone(), move |a| Ok(t2.mor(unit[a])))?;
                RightDeformation::new("R", cat.clone(), radiant, r, unit)?
            }
        };
        Ok(TableModel {
            table,
            cat,
            deformation,
            functors,
        })
    }

    pub fn functor(&self, name: &str) -> Result<Functor> {
        self.functors
            .iter()
            .find(|f| f.name() == name)
            .cloned()
            .ok_or_else(|| Error::Category(format!("unknown functor {name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{homotopy_category, validate_deformation};

    /// `a → b → c` with every arrow a weak equivalence and a two-step `R`.
    const CHAIN: &str = r#"{
        "name": "chain", "objects": ["a", "b", "c"],
        "morphisms": [
            {"name": "f", "src": "a", "dst": "b", "we": true},
            {"name": "g", "src": "b", "dst": "c", "we": true},
            {"name": "gf", "src": "a", "dst": "c", "we": true}],
        "compose": [["g", "f", "gf"]],
        "deformation": {"radiant": ["b", "c"],
            "objects": {"a": "b", "b": "c"},
            "morphisms": {"f": "g", "g": "id_c", "gf": "g"},
            "unit": {"a": "f", "b": "g"}}
    }"#;

    #[test]
    fn chain_loads_and_validates() {
        let m = TableModel::from_json(CHAIN).unwrap();
        assert_eq!(m.cat.object_count(), 3);
        let r = validate_deformation(&m.functors[0], &m.deformation).unwrap();
        assert!(r.valid, "{:?}", r.violations);
    }

    #[test]
    fn non_idempotent_replacement_is_rejected() {
        let m = TableModel::from_json(CHAIN).unwrap();
        let err = homotopy_category(&m.deformation).err().unwrap();
        assert!(err.to_string().contains("not idempotent at a"), "{err}");
    }

    #[test]
    fn missing_composite_is_reported() {
        let broken = CHAIN.replace(r#"[["g", "f", "gf"]]"#, "[]");
        assert!(matches!(TableModel::from_json(&broken), Err(Error::Category(_))));
    }
}
