//! Right-deformable functors between finitely presented categories with weak
//! equivalences, and the calculus of their derived functors.
//!
//! Categories are dynamic: objects are indices, morphisms are [`Mor`] values
//! whose payload is interpreted by the owning category. Hom-sets are streamed
//! rather than stored, so exhaustive checks scale to a few million arrows.

pub mod graph;
pub mod sets;
pub mod table;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Morphism payload, stored inline for small categories.
pub type MorData = SmallVec<[u32; 8]>;

/// A morphism `src → dst`; `data` is private to the owning category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mor {
    pub src: usize,
    pub dst: usize,
    pub data: MorData,
}

/// A finite category with a class of weak equivalences.
pub trait WeCategory: Send + Sync {
    fn name(&self) -> &str;
    fn object_count(&self) -> usize;
    fn describe(&self, a: usize) -> String;
    fn describe_mor(&self, f: &Mor) -> String {
        format!("{}→{} {:?}", self.describe(f.src), self.describe(f.dst), f.data)
    }
    fn identity(&self, a: usize) -> Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor>;
    fn is_we(&self, f: &Mor) -> bool;
    fn is_iso(&self, f: &Mor) -> bool;
    /// Streams `hom(a, b)`; the visitor returns `false` to stop early.
    fn for_each_hom(&self, a: usize, b: usize, visit: &mut dyn FnMut(Mor) -> bool) -> Result<()>;

    fn hom(&self, a: usize, b: usize) -> Result<Vec<Mor>> {
        let mut out = Vec::new();
        self.for_each_hom(a, b, &mut |m| {
            out.push(m);
            true
        })?;
        Ok(out)
    }
}

pub type Category = Arc<dyn WeCategory>;

/// Streams every morphism between the given objects (all objects if `None`).
pub fn for_each_mor(
    cat: &dyn WeCategory,
    objects: Option<&[usize]>,
    visit: &mut dyn FnMut(Mor) -> bool,
) -> Result<()> {
    let all: Vec<usize>;
    let objs = match objects {
        Some(o) => o,
        None => {
            all = (0..cat.object_count()).collect();
            &all
        }
    };
    let mut go = true;
    for &a in objs {
        for &b in objs {
            cat.for_each_hom(a, b, &mut |m| {
                go = visit(m);
                go
            })?;
            if !go {
                return Ok(());
            }
        }
    }
    Ok(())
}

fn same(a: &Category, b: &Category) -> bool {
    a.name() == b.name()
}

/// A functor between categories with weak equivalences.
pub trait WeFunctor: Send + Sync {
    fn name(&self) -> String;
    fn source(&self) -> &Category;
    fn target(&self) -> &Category;
    fn on_obj(&self, a: usize) -> usize;
    fn on_mor(&self, f: &Mor) -> Mor;
}

pub type Functor = Arc<dyn WeFunctor>;

impl fmt::Debug for dyn WeFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} → {}", self.name(), self.source().name(), self.target().name())
    }
}

pub struct IdentityFunctor(pub Category);

impl WeFunctor for IdentityFunctor {
    fn name(&self) -> String {
        "id".into()
    }
    fn source(&self) -> &Category {
        &self.0
    }
    fn target(&self) -> &Category {
        &self.0
    }
    fn on_obj(&self, a: usize) -> usize {
        a
    }
    fn on_mor(&self, f: &Mor) -> Mor {
        f.clone()
    }
}

/// `F_n ∘ .. ∘ F_1`, stored first-applied first.
pub struct Composite {
    parts: Vec<Functor>,
}

impl Composite {
    pub fn new(parts: Vec<Functor>) -> Result<Functor> {
        if parts.is_empty() {
            return Err(Error::Category("empty composite".into()));
        }
        for w in parts.windows(2) {
            if !same(w[0].target(), w[1].source()) {
                return Err(Error::Category(format!(
                    "{} lands in {}, but {} starts from {}",
                    w[0].name(),
                    w[0].target().name(),
                    w[1].name(),
                    w[1].source().name()
                )));
            }
        }
        if parts.len() == 1 {
            return Ok(parts[0].clone());
        }
        Ok(Arc::new(Composite { parts }))
    }
}

impl WeFunctor for Composite {
    fn name(&self) -> String {
        let names: Vec<String> = self.parts.iter().rev().map(|p| p.name()).collect();
        names.join("∘")
    }
    fn source(&self) -> &Category {
        self.parts[0].source()
    }
    fn target(&self) -> &Category {
        self.parts.last().unwrap().target()
    }
    fn on_obj(&self, a: usize) -> usize {
        self.parts.iter().fold(a, |x, p| p.on_obj(x))
    }
    fn on_mor(&self, f: &Mor) -> Mor {
        self.parts.iter().fold(f.clone(), |x, p| p.on_mor(&x))
    }
}

type Component = Arc<dyn Fn(usize) -> Result<Mor> + Send + Sync>;

/// A transformation `F ⇒ G` given by its components.
#[derive(Clone)]
pub struct NatTrans {
    pub name: String,
    pub source: Functor,
    pub target: Functor,
    component: Component,
}

impl NatTrans {
    pub fn new(
        name: impl Into<String>,
        source: Functor,
        target: Functor,
        component: impl Fn(usize) -> Result<Mor> + Send + Sync + 'static,
    ) -> Result<Self> {
        if !same(source.source(), target.source()) || !same(source.target(), target.target()) {
            return Err(Error::Category("transformation between functors of different shape".into()));
        }
        Ok(NatTrans {
            name: name.into(),
            source,
            target,
            component: Arc::new(component),
        })
    }

    pub fn identity(f: &Functor) -> Self {
        let g = f.clone();
        NatTrans::new("1", f.clone(), f.clone(), move |a| Ok(g.target().identity(g.on_obj(a)))).unwrap()
    }

    pub fn at(&self, a: usize) -> Result<Mor> {
        let m = (self.component)(a)?;
        if m.src != self.source.on_obj(a) || m.dst != self.target.on_obj(a) {
            return Err(Error::Category(format!(
                "component of {} at {} has the wrong endpoints",
                self.name,
                self.source.source().describe(a)
            )));
        }
        Ok(m)
    }

    /// `υ ∘ η`.
    pub fn vertical(upsilon: &NatTrans, eta: &NatTrans) -> Result<NatTrans> {
        if upsilon.source.name() != eta.target.name() {
            return Err(Error::Category("transformations are not composable".into()));
        }
        let (u, e) = (upsilon.clone(), eta.clone());
        let d = eta.source.target().clone();
        NatTrans::new(
            format!("{}∘{}", upsilon.name, eta.name),
            eta.source.clone(),
            upsilon.target.clone(),
            move |a| d.compose(&u.at(a)?, &e.at(a)?),
        )
    }

    /// `κ * η : G F ⇒ G' F'`, with component `κ_{F'X} ∘ G(η_X)`.
    pub fn horizontal(kappa: &NatTrans, eta: &NatTrans) -> Result<NatTrans> {
        let source = Composite::new(vec![eta.source.clone(), kappa.source.clone()])?;
        let target = Composite::new(vec![eta.target.clone(), kappa.target.clone()])?;
        let (k, e) = (kappa.clone(), eta.clone());
        let cat = kappa.source.target().clone();
        NatTrans::new(
            format!("{}*{}", kappa.name, eta.name),
            source,
            target,
            move |a| {
                let g_eta = k.source.on_mor(&e.at(a)?);
                cat.compose(&k.at(e.target.on_obj(a))?, &g_eta)
            },
        )
    }
}

/// Exhaustive naturality check; returns the first failing morphism.
pub fn check_natural(eta: &NatTrans) -> Result<Option<String>> {
    let c = eta.source.source().clone();
    let d = eta.source.target().clone();
    let components = (0..c.object_count()).map(|a| eta.at(a)).collect::<Result<Vec<_>>>()?;
    let mut witness = None;
    let mut err = None;
    for_each_mor(c.as_ref(), None, &mut |f| {
        let run = || -> Result<bool> {
            let left = d.compose(&eta.target.on_mor(&f), &components[f.src])?;
            let right = d.compose(&components[f.dst], &eta.source.on_mor(&f))?;
            Ok(left == right)
        };
        match run() {
            Ok(true) => true,
            Ok(false) => {
                witness = Some(format!("{} is not natural at {}", eta.name, c.describe_mor(&f)));
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(witness),
    }
}

/// Radiant objects, a replacement endofunctor `R`, and a unit `id ⇒ R`.
#[derive(Clone)]
pub struct RightDeformation {
    pub name: String,
    pub cat: Category,
    pub radiant: Arc<[bool]>,
    pub r: Functor,
    pub unit: NatTrans,
    memo: Arc<Memo>,
}

/// Results of exhaustive checks that depend only on the deformation (and,
/// for derived functors, on the functor's name).
#[derive(Default)]
struct Memo {
    intrinsic: OnceLock<Vec<String>>,
    derived: Mutex<HashMap<String, Vec<String>>>,
}

impl RightDeformation {
    pub fn new(name: impl Into<String>, cat: Category, radiant: Vec<bool>, r: Functor, unit: NatTrans) -> Result<Self> {
        if radiant.len() != cat.object_count() || !same(r.source(), &cat) || !same(r.target(), &cat) {
            return Err(Error::Category("deformation data does not match its category".into()));
        }
        Ok(RightDeformation {
            name: name.into(),
            cat,
            radiant: radiant.into(),
            r,
            unit,
            memo: Arc::default(),
        })
    }

    /// All objects radiant, `R = id`.
    pub fn trivial(cat: &Category) -> Self {
        let id: Functor = Arc::new(IdentityFunctor(cat.clone()));
        let unit = NatTrans::identity(&id);
        RightDeformation::new("trivial", cat.clone(), vec![true; cat.object_count()], id, unit)
            .expect("identity data matches")
    }

    /// `R` lands in radiant objects; the unit is natural with weak
    /// equivalence components.
    fn intrinsic_violations(&self) -> Result<&[String]> {
        if let Some(v) = self.memo.intrinsic.get() {
            return Ok(v);
        }
        let c = &self.cat;
        let mut out = Vec::new();
        for a in 0..c.object_count() {
            let ra = self.r.on_obj(a);
            if !self.radiant[ra] {
                out.push(format!("R({}) = {} is not radiant", c.describe(a), c.describe(ra)));
            }
            if !c.is_we(&self.unit.at(a)?) {
                out.push(format!("unit at {} is not a weak equivalence", c.describe(a)));
            }
        }
        if let Some(w) = check_natural(&self.unit)? {
            out.push(w);
        }
        Ok(self.memo.intrinsic.get_or_init(|| out))
    }

    pub fn radiant_objects(&self) -> Vec<usize> {
        (0..self.radiant.len()).filter(|&a| self.radiant[a]).collect()
    }
}

/// Outcome of an exhaustive verification.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Report {
    pub checked: String,
    pub valid: bool,
    pub objects: usize,
    pub morphisms: usize,
    pub violations: Vec<String>,
}

impl Report {
    fn new(checked: impl Into<String>) -> Self {
        Report {
            checked: checked.into(),
            valid: true,
            ..Report::default()
        }
    }

    fn fail(&mut self, what: String) {
        self.valid = false;
        if self.violations.len() < 20 {
            self.violations.push(what);
        }
    }
}

/// Checks that `F` preserves weak equivalences among the given objects.
fn preserves_we(f: &Functor, objects: Option<&[usize]>, report: &mut Report) -> Result<()> {
    let c = f.source().clone();
    let d = f.target().clone();
    for_each_mor(c.as_ref(), objects, &mut |m| {
        report.morphisms += 1;
        if c.is_we(&m) && !d.is_we(&f.on_mor(&m)) {
            report.fail(format!("{} does not preserve the weak equivalence {}", f.name(), c.describe_mor(&m)));
            return false;
        }
        true
    })
}

/// Verifies the deformation clauses for `F`: `R` lands in radiant objects,
/// the unit is natural with weak-equivalence components, and `F` preserves
/// weak equivalences between radiant objects.
pub fn validate_deformation(f: &Functor, d: &RightDeformation) -> Result<Report> {
    if !same(f.source(), &d.cat) {
        return Err(Error::Category(format!(
            "{} starts from {}, the deformation lives on {}",
            f.name(),
            f.source().name(),
            d.cat.name()
        )));
    }
    let mut report = Report::new(format!("{} with {}", f.name(), d.name));
    report.objects = d.cat.object_count();
    for v in d.intrinsic_violations()? {
        report.fail(v.clone());
    }
    preserves_we(f, Some(&d.radiant_objects()), &mut report)?;
    Ok(report)
}

/// `ℝF = F ∘ R`, verified to preserve every weak equivalence.
pub fn derived_functor(f: &Functor, d: &RightDeformation) -> Result<Functor> {
    let report = validate_deformation(f, d)?;
    if !report.valid {
        return Err(Error::InvalidDeformation(report.violations.join("; ")));
    }
    let derived = Composite::new(vec![d.r.clone(), f.clone()])?;
    let known = d.memo.derived.lock().expect("memo lock").get(&f.name()).cloned();
    let violations = match known {
        Some(v) => v,
        None => {
            let mut check = Report::new("derived");
            preserves_we(&derived, None, &mut check)?;
            d.memo.derived.lock().expect("memo lock").insert(f.name(), check.violations.clone());
            check.violations
        }
    };
    if !violations.is_empty() {
        return Err(Error::InvalidDeformation(violations.join("; ")));
    }
    Ok(Arc::new(Derived {
        inner: derived,
        base: f.name(),
    }))
}

struct Derived {
    inner: Functor,
    base: String,
}

impl WeFunctor for Derived {
    fn name(&self) -> String {
        format!("ℝ{}", self.base)
    }
    fn source(&self) -> &Category {
        self.inner.source()
    }
    fn target(&self) -> &Category {
        self.inner.target()
    }
    fn on_obj(&self, a: usize) -> usize {
        self.inner.on_obj(a)
    }
    fn on_mor(&self, f: &Mor) -> Mor {
        self.inner.on_mor(f)
    }
}

/// Enlarges the radiant objects by `extra` when `F(η_X)` is a weak
/// equivalence for each; otherwise returns the first offending object.
pub fn expand_radiant(
    d: &RightDeformation,
    f: &Functor,
    extra: &[usize],
) -> Result<std::result::Result<RightDeformation, usize>> {
    for &x in extra {
        if x >= d.cat.object_count() {
            return Err(Error::Category(format!("no object {x}")));
        }
        if !f.target().is_we(&f.on_mor(&d.unit.at(x)?)) {
            return Ok(Err(x));
        }
    }
    let mut radiant = d.radiant.to_vec();
    for &x in extra {
        radiant[x] = true;
    }
    let expanded = RightDeformation::new(format!("{}+", d.name), d.cat.clone(), radiant, d.r.clone(), d.unit.clone())?;
    // Two-out-of-three in the target: F(η_Y) ∘ F(w) = F(Rw) ∘ F(η_X) with
    // three of the four known to be weak equivalences.
    let objects = expanded.radiant_objects();
    let (c, t) = (d.cat.clone(), f.target().clone());
    let mut bad = None;
    for_each_mor(c.as_ref(), Some(&objects), &mut |w| {
        if !c.is_we(&w) {
            return true;
        }
        if !t.is_we(&f.on_mor(&w)) {
            bad = Some(w.src);
            return false;
        }
        true
    })?;
    Ok(match bad {
        Some(x) => Err(x),
        None => Ok(expanded),
    })
}

/// `η̃ : ℝF ⇒ ℝG` with component `η_{RX}`; both deformations must share `R`.
pub fn derived_nat(eta: &NatTrans, df: &RightDeformation, dg: &RightDeformation) -> Result<NatTrans> {
    if df.r.name() != dg.r.name() || !same(&df.cat, &dg.cat) {
        return Err(Error::Category("derived transformations need a common replacement".into()));
    }
    if let Some(w) = check_natural(eta)? {
        return Err(Error::Category(w));
    }
    let rf = derived_functor(&eta.source, df)?;
    let rg = derived_functor(&eta.target, dg)?;
    let (e, r) = (eta.clone(), df.r.clone());
    let out = NatTrans::new(format!("{}~", eta.name), rf, rg, move |a| e.at(r.on_obj(a)))?;
    if let Some(w) = check_natural(&out)? {
        return Err(Error::Category(w));
    }
    Ok(out)
}

/// Vertical compatibility: `(υ ∘ η)~ = υ~ ∘ η~` at every object.
pub fn check_vertical(eta: &NatTrans, upsilon: &NatTrans, d: &RightDeformation) -> Result<Option<String>> {
    let composite = derived_nat(&NatTrans::vertical(upsilon, eta)?, d, d)?;
    let separate = NatTrans::vertical(&derived_nat(upsilon, d, d)?, &derived_nat(eta, d, d)?)?;
    for a in 0..d.cat.object_count() {
        if composite.at(a)? != separate.at(a)? {
            return Ok(Some(format!("vertical square fails at {}", d.cat.describe(a))));
        }
    }
    Ok(None)
}

/// One entry of a coherent list: a functor with a deformation of its source.
#[derive(Clone)]
pub struct Stage {
    pub functor: Functor,
    pub deformation: RightDeformation,
}

/// Verifies coherence: each functor preserves weak equivalences between
/// radiant objects and carries radiant objects to radiant objects.
pub fn validate_list(list: &[Stage]) -> Result<Report> {
    let names: Vec<String> = list.iter().map(|s| s.functor.name()).collect();
    let mut report = Report::new(names.join(","));
    for (i, stage) in list.iter().enumerate() {
        let sub = validate_deformation(&stage.functor, &stage.deformation)?;
        report.objects += sub.objects;
        report.morphisms += sub.morphisms;
        for v in sub.violations {
            report.fail(v);
        }
        if let Some(next) = list.get(i + 1) {
            if !same(stage.functor.target(), &next.deformation.cat) {
                return Err(Error::Category(format!("{} and {} do not compose", stage.functor.name(), next.functor.name())));
            }
            for a in stage.deformation.radiant_objects() {
                let fa = stage.functor.on_obj(a);
                if !next.deformation.radiant[fa] {
                    report.fail(format!(
                        "{} sends radiant {} to non-radiant {}",
                        stage.functor.name(),
                        stage.deformation.cat.describe(a),
                        next.deformation.cat.describe(fa)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// `ℝ(F_n ∘ .. ∘ F_1) ⇒ ℝF_n ∘ .. ∘ ℝF_1`, built by inserting the
/// replacements one stage at a time; every component is checked to be a
/// weak equivalence.
pub fn compare_composites(list: &[Stage]) -> Result<NatTrans> {
    let report = validate_list(list)?;
    if !report.valid {
        return Err(Error::InvalidDeformation(report.violations.join("; ")));
    }
    let functors: Vec<Functor> = list.iter().map(|s| s.functor.clone()).collect();
    let point = Composite::new(functors.clone())?;
    let source = derived_functor(&point, &list[0].deformation)?;
    let mut parts = Vec::new();
    for s in list {
        parts.push(s.deformation.r.clone());
        parts.push(s.functor.clone());
    }
    let target = Composite::new(parts)?;
    let stages = list.to_vec();
    let end = functors.last().unwrap().target().clone();
    let fin = end.clone();
    let out = NatTrans::new(format!("cmp({})", report.checked), source, target, move |x| {
        // z lives in the source of stage i; w is the image in the final category.
        let mut z = stages[0].deformation.r.on_obj(x);
        z = stages[0].functor.on_obj(z);
        let tail = |from: usize, m: &Mor| stages[from..].iter().fold(m.clone(), |acc, s| s.functor.on_mor(&acc));
        let mut acc: Option<Mor> = None;
        for i in 1..stages.len() {
            let u = stages[i].deformation.unit.at(z)?;
            let step = tail(i, &u);
            acc = Some(match acc {
                None => step,
                Some(prev) => fin.compose(&step, &prev)?,
            });
            z = stages[i].functor.on_obj(u.dst);
        }
        Ok(match acc {
            Some(m) => m,
            None => fin.identity(z),
        })
    })?;
    for a in 0..list[0].deformation.cat.object_count() {
        let m = out.at(a)?;
        if !end.is_we(&m) {
            return Err(Error::InvalidDeformation(format!(
                "comparison at {} is not a weak equivalence",
                list[0].deformation.cat.describe(a)
            )));
        }
    }
    if let Some(w) = check_natural(&out)? {
        return Err(Error::InvalidDeformation(w));
    }
    Ok(out)
}

/// Horizontal compatibility for `η: F ⇒ F'` (on `C`) and `κ: G ⇒ G'` (on
/// `D`): the derived horizontal composite agrees with the horizontal
/// composite of derived transformations, up to the composite comparisons.
pub fn check_horizontal(
    eta: &NatTrans,
    kappa: &NatTrans,
    dc: &RightDeformation,
    dd: &RightDeformation,
) -> Result<Option<String>> {
    let stage = |f: &Functor, d: &RightDeformation| Stage {
        functor: f.clone(),
        deformation: d.clone(),
    };
    let c = compare_composites(&[stage(&eta.source, dc), stage(&kappa.source, dd)])?;
    let c2 = compare_composites(&[stage(&eta.target, dc), stage(&kappa.target, dd)])?;
    let whole = derived_nat(&NatTrans::horizontal(kappa, eta)?, dc, dc)?;
    let eta_d = derived_nat(eta, dc, dc)?;
    let kappa_d = derived_nat(kappa, dd, dd)?;
    let parts = NatTrans::horizontal(&kappa_d, &eta_d)?;
    let e = kappa.source.target().clone();
    for a in 0..dc.cat.object_count() {
        let left = e.compose(&c2.at(a)?, &whole.at(a)?)?;
        let right = e.compose(&parts.at(a)?, &c.at(a)?)?;
        if left != right {
            return Ok(Some(format!("horizontal square fails at {}", dc.cat.describe(a))));
        }
    }
    Ok(None)
}

/// The zig-zag `F(R₁X) → F(R₂R₁X) ← F(R₂X)` relating two deformations of
/// the same functor; both legs must be weak equivalences.
pub fn compare_deformations(f: &Functor, d1: &RightDeformation, d2: &RightDeformation) -> Result<Option<String>> {
    let t = f.target();
    for x in 0..d1.cat.object_count() {
        let r1x = d1.r.on_obj(x);
        let left = f.on_mor(&d2.unit.at(r1x)?);
        let right = f.on_mor(&d2.r.on_mor(&d1.unit.at(x)?));
        if left.dst != right.dst {
            return Ok(Some(format!("zig-zag legs disagree at {}", d1.cat.describe(x))));
        }
        if !t.is_we(&left) || !t.is_we(&right) {
            return Ok(Some(format!("zig-zag leg is not a weak equivalence at {}", d1.cat.describe(x))));
        }
    }
    Ok(None)
}

/// The full subcategory of radiant objects, with isomorphisms as the weak
/// equivalences.
pub struct FullSub {
    name: String,
    parent: Category,
    objects: Vec<usize>,
}

impl FullSub {
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    fn lift(&self, f: &Mor) -> Mor {
        Mor {
            src: self.objects[f.src],
            dst: self.objects[f.dst],
            data: f.data.clone(),
        }
    }

    fn lower(&self, f: Mor) -> Mor {
        let pos = |a: usize| self.objects.binary_search(&a).expect("object of the subcategory");
        Mor {
            src: pos(f.src),
            dst: pos(f.dst),
            data: f.data,
        }
    }
}

impl WeCategory for FullSub {
    fn name(&self) -> &str {
        &self.name
    }
    fn object_count(&self) -> usize {
        self.objects.len()
    }
    fn describe(&self, a: usize) -> String {
        self.parent.describe(self.objects[a])
    }
    fn identity(&self, a: usize) -> Mor {
        self.lower(self.parent.identity(self.objects[a]))
    }
    fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        Ok(self.lower(self.parent.compose(&self.lift(g), &self.lift(f))?))
    }
    fn is_we(&self, f: &Mor) -> bool {
        self.parent.is_iso(&self.lift(f))
    }
    fn is_iso(&self, f: &Mor) -> bool {
        self.parent.is_iso(&self.lift(f))
    }
    fn for_each_hom(&self, a: usize, b: usize, visit: &mut dyn FnMut(Mor) -> bool) -> Result<()> {
        self.parent
            .for_each_hom(self.objects[a], self.objects[b], &mut |m| visit(self.lower(m)))
    }
}

/// `R` viewed as a functor into the radiant subcategory.
struct Localization {
    source: Category,
    ho: Arc<FullSub>,
    target: Category,
    r: Functor,
}

impl WeFunctor for Localization {
    fn name(&self) -> String {
        "γ".into()
    }
    fn source(&self) -> &Category {
        &self.source
    }
    fn target(&self) -> &Category {
        &self.target
    }
    fn on_obj(&self, a: usize) -> usize {
        self.ho.objects.binary_search(&self.r.on_obj(a)).expect("R lands in radiant objects")
    }
    fn on_mor(&self, f: &Mor) -> Mor {
        self.ho.lower(self.r.on_mor(f))
    }
}

/// The homotopy category under the idempotent-replacement hypothesis.
pub struct Homotopy {
    pub ho: Arc<FullSub>,
    pub category: Category,
    pub localization: Functor,
}

/// Builds `Ho` as the radiant subcategory, after checking that `R ∘ R = R`
/// on the nose and that weak equivalences between radiant objects are
/// isomorphisms.
pub fn homotopy_category(d: &RightDeformation) -> Result<Homotopy> {
    let c = d.cat.clone();
    for a in 0..c.object_count() {
        let ra = d.r.on_obj(a);
        if d.r.on_obj(ra) != ra {
            return Err(Error::InvalidDeformation(format!(
                "R is not idempotent at {}: R({}) = {}, R(R({})) = {}",
                c.describe(a),
                c.describe(a),
                c.describe(ra),
                c.describe(a),
                c.describe(d.r.on_obj(ra))
            )));
        }
        if !d.radiant[ra] {
            return Err(Error::InvalidDeformation(format!("R({}) is not radiant", c.describe(a))));
        }
    }
    let mut witness = None;
    for_each_mor(c.as_ref(), None, &mut |f| {
        let rf = d.r.on_mor(&f);
        if d.r.on_mor(&rf) != rf {
            witness = Some(format!("R is not idempotent on {}", c.describe_mor(&f)));
            return false;
        }
        true
    })?;
    let radiant = d.radiant_objects();
    if witness.is_none() {
        for_each_mor(c.as_ref(), Some(&radiant), &mut |f| {
            if c.is_we(&f) && !c.is_iso(&f) {
                witness = Some(format!("weak equivalence {} between radiant objects is not invertible", c.describe_mor(&f)));
                return false;
            }
            true
        })?;
    }
    if let Some(w) = witness {
        return Err(Error::InvalidDeformation(w));
    }
    let ho = Arc::new(FullSub {
        name: format!("Ho({})", c.name()),
        parent: c.clone(),
        objects: radiant,
    });
    let category: Category = ho.clone();
    let localization = Arc::new(Localization {
        source: c,
        ho: ho.clone(),
        target: category.clone(),
        r: d.r.clone(),
    });
    Ok(Homotopy {
        ho,
        category,
        localization,
    })
}

/// Universal property against a functor `Φ` that inverts weak
/// equivalences: `Φ(η_X)` is invertible for every `X`, so `Φ` factors
/// through the localization up to the natural isomorphism `Φ(η)`.
pub fn check_factorization(d: &RightDeformation, phi: &Functor) -> Result<Option<String>> {
    let c = d.cat.clone();
    let t = phi.target().clone();
    let mut witness = None;
    for_each_mor(c.as_ref(), None, &mut |f| {
        if c.is_we(&f) && !t.is_iso(&phi.on_mor(&f)) {
            witness = Some(format!("{} does not invert {}", phi.name(), c.describe_mor(&f)));
            return false;
        }
        true
    })?;
    if witness.is_some() {
        return Ok(witness);
    }
    for a in 0..c.object_count() {
        if !t.is_iso(&phi.on_mor(&d.unit.at(a)?)) {
            return Ok(Some(format!("{}(η) is not invertible at {}", phi.name(), c.describe(a))));
        }
    }
    let through = Composite::new(vec![d.r.clone(), phi.clone()])?;
    let (p, u) = (phi.clone(), d.unit.clone());
    let iso = NatTrans::new("Φη", phi.clone(), through, move |a| Ok(p.on_mor(&u.at(a)?)))?;
    check_natural(&iso)
}

/// Exhaustive category-axiom check: identities, composition endpoints,
/// associativity, and closure of weak equivalences under identities and
/// composition with isomorphisms.
pub fn check_category(cat: &dyn WeCategory) -> Result<Report> {
    let mut report = Report::new(cat.name().to_string());
    report.objects = cat.object_count();
    let n = cat.object_count();
    let homs: Vec<Vec<Vec<Mor>>> = (0..n)
        .map(|a| (0..n).map(|b| cat.hom(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    for a in 0..n {
        let id = cat.identity(a);
        if !cat.is_we(&id) {
            report.fail(format!("identity of {} is not a weak equivalence", cat.describe(a)));
        }
        if !homs[a][a].contains(&id) {
            report.fail(format!("identity of {} is missing from its hom-set", cat.describe(a)));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for f in &homs[a][b] {
                report.morphisms += 1;
                if cat.compose(&cat.identity(b), f)? != *f || cat.compose(f, &cat.identity(a))? != *f {
                    report.fail(format!("unit law fails for {}", cat.describe_mor(f)));
                }
                for c in 0..n {
                    for g in &homs[b][c] {
                        let gf = cat.compose(g, f)?;
                        if gf.src != a || gf.dst != c || !homs[a][c].contains(&gf) {
                            report.fail(format!("composite {} ∘ {} is not a morphism", cat.describe_mor(g), cat.describe_mor(f)));
                            continue;
                        }
                        if cat.is_we(f) && cat.is_iso(g) && !cat.is_we(&gf) {
                            report.fail(format!("weak equivalences not closed under composition with {}", cat.describe_mor(g)));
                        }
                        if cat.is_iso(f) && cat.is_we(g) && !cat.is_we(&gf) {
                            report.fail(format!("weak equivalences not closed under composition with {}", cat.describe_mor(f)));
                        }
                        for e in 0..n {
                            for h in &homs[c][e] {
                                if cat.compose(h, &gf)? != cat.compose(&cat.compose(h, g)?, f)? {
                                    report.fail(format!(
                                        "associativity fails at {}, {}, {}",
                                        cat.describe_mor(h),
                                        cat.describe_mor(g),
                                        cat.describe_mor(f)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Exhaustive functoriality check over all composable pairs.
pub fn check_functor(f: &Functor) -> Result<Option<String>> {
    let c = f.source().clone();
    let d = f.target().clone();
    let n = c.object_count();
    for a in 0..n {
        if f.on_mor(&c.identity(a)) != d.identity(f.on_obj(a)) {
            return Ok(Some(format!("{} does not preserve the identity of {}", f.name(), c.describe(a))));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for g1 in c.hom(a, b)? {
                let image = f.on_mor(&g1);
                if image.src != f.on_obj(a) || image.dst != f.on_obj(b) {
                    return Ok(Some(format!("{} moves the endpoints of {}", f.name(), c.describe_mor(&g1))));
                }
                for e in 0..n {
                    let mut bad = None;
                    let mut err = None;
                    c.for_each_hom(b, e, &mut |g2| {
                        let ok = c
                            .compose(&g2, &g1)
                            .and_then(|gg| Ok(f.on_mor(&gg) == d.compose(&f.on_mor(&g2), &image)?));
                        match ok {
                            Ok(true) => true,
                            Ok(false) => {
                                bad = Some(format!("{} does not preserve {} ∘ {}", f.name(), c.describe_mor(&g2), c.describe_mor(&g1)));
                                false
                            }
                            Err(x) => {
                                err = Some(x);
                                false
                            }
                        }
                    })?;
                    if let Some(x) = err {
                        return Err(x);
                    }
                    if bad.is_some() {
                        return Ok(bad);
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::graph::{Graph, GraphModel};
    use super::*;

    fn model() -> GraphModel {
        GraphModel::new(3).unwrap()
    }

    fn object(m: &GraphModel, n: usize, edges: &[(usize, usize)]) -> usize {
        m.graphs.locate(&Graph::new(n, edges).unwrap()).unwrap().0
    }

    #[test]
    fn trivial_deformation_of_a_we_preserving_functor() {
        let m = model();
        let cond = m.functor("cond").unwrap();
        let d = RightDeformation::trivial(&m.cat);
        assert!(validate_deformation(&cond, &d).unwrap().valid);
        let rf = derived_functor(&cond, &d).unwrap();
        for a in 0..m.cat.object_count() {
            assert_eq!(rf.on_obj(a), cond.on_obj(a));
        }
    }

    #[test]
    fn replacement_outside_the_radiant_objects_is_reported() {
        let m = model();
        let d = &m.condensation;
        let broken = RightDeformation::new("broken", m.cat.clone(), vec![false; m.cat.object_count()], d.r.clone(), d.unit.clone())
            .unwrap();
        let v = m.functor("V").unwrap();
        let report = validate_deformation(&v, &broken).unwrap();
        assert!(!report.valid);
        assert!(report.violations[0].contains("is not radiant"));
        assert!(matches!(derived_functor(&v, &broken), Err(Error::InvalidDeformation(_))));
    }

    #[test]
    fn derived_vertex_set_of_a_two_cycle() {
        let m = model();
        let v = m.functor("V").unwrap();
        let rv = derived_functor(&v, &m.condensation).unwrap();
        let cyc = object(&m, 2, &[(0, 1), (1, 0)]);
        assert_eq!(v.on_obj(cyc), 2);
        assert_eq!(rv.on_obj(cyc), 1);
        let iota = derived_nat(&m.inclusion(), &m.condensation, &m.condensation).unwrap();
        let c = iota.at(cyc).unwrap();
        assert_eq!((c.src, c.dst), (1, 1));
    }

    #[test]
    fn expansion_succeeds_or_names_the_offender() {
        let m = model();
        let v = m.functor("V").unwrap();
        let d = &m.condensation;
        let radiant = d.radiant_objects();
        let same = expand_radiant(d, &v, &radiant[..2]).unwrap().unwrap();
        assert_eq!(same.radiant_objects(), radiant);
        // Reversal sends the collapse of a 2-cycle to a weak equivalence.
        let cyc = object(&m, 2, &[(0, 1), (1, 0)]);
        let rev = m.functor("rev").unwrap();
        let grown = expand_radiant(d, &rev, &[cyc]).unwrap().unwrap();
        assert!(grown.radiant[cyc]);
        // The vertex set does not: 2 points onto 1.
        assert!(matches!(expand_radiant(d, &v, &[cyc]).unwrap(), Err(x) if x == cyc));
    }

    #[test]
    fn composite_comparisons() {
        let m = model();
        let stage = |name: &str| {
            let functor = m.functor(name).unwrap();
            Stage {
                deformation: m.deformation_for(&functor).clone(),
                functor,
            }
        };
        let single = compare_composites(&[stage("V")]).unwrap();
        let pair = compare_composites(&[stage("cond"), stage("V")]).unwrap();
        let twisted = compare_composites(&[stage("rev"), stage("V")]).unwrap();
        for a in 0..m.cat.object_count() {
            let s = single.at(a).unwrap();
            assert_eq!(s, m.sets.identity(s.src));
            let p = pair.at(a).unwrap();
            assert_eq!(p, m.sets.identity(p.src));
            assert!(m.sets.is_we(&twisted.at(a).unwrap()));
        }
    }

    #[test]
    fn derived_transformations_respect_composition() {
        let m = model();
        let d = &m.condensation;
        assert_eq!(check_vertical(&m.inclusion(), &m.source_map(), d).unwrap(), None);
        assert_eq!(check_horizontal(&m.unit(), &m.inclusion(), d, d).unwrap(), None);
    }

    #[test]
    fn a_deformation_agrees_with_itself() {
        let m = model();
        let v = m.functor("V").unwrap();
        assert_eq!(compare_deformations(&v, &m.condensation, &m.condensation).unwrap(), None);
    }

    #[test]
    fn homotopy_category_and_its_universal_property() {
        let m = model();
        let ho = homotopy_category(&m.condensation).unwrap();
        // Acyclic graphs on at most three vertices, up to isomorphism.
        assert_eq!(ho.ho.objects().len(), 10);
        assert_eq!(check_factorization(&m.condensation, &ho.localization).unwrap(), None);
        let v = m.functor("V").unwrap();
        assert!(check_factorization(&m.condensation, &v).unwrap().is_some());
    }
}
