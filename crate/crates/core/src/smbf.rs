//! Parametrized finite sets over a base, with external product, pullback,
//! pushforward, Beck–Chevalley comparisons, multi-span actions and rigidity.
//!
//! Everything lives relative to a [`Context`]: an ambient base set that every
//! indexing space maps to. The one-point base gives the absolute theory.

use crate::error::{Error, Result};
use crate::finset::{pullback, Elem, FinMap, FinSet};

/// The ambient base that all indexing spaces live over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    base: FinSet,
}

impl Context {
    /// Base `{*}`.
    pub fn absolute() -> Self {
        Context {
            base: FinSet::point(),
        }
    }

    pub fn over(base: FinSet) -> Self {
        Context { base }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn is_absolute(&self) -> bool {
        self.base.len() == 1
    }

    /// The base itself, as a space over itself.
    pub fn base_space(&self) -> IndexedSpace {
        IndexedSpace {
            space: self.base.clone(),
            to_base: FinMap::identity(&self.base),
        }
    }

    /// A space all of whose points lie over base point `idx`.
    pub fn constant_space(&self, space: FinSet, idx: usize) -> Result<IndexedSpace> {
        let to_base = FinMap::constant(&space, &self.base, idx)?;
        IndexedSpace::new(space, to_base)
    }

    /// Requires the absolute context; every point lies over `*`.
    pub fn space(&self, space: FinSet) -> Result<IndexedSpace> {
        if !self.is_absolute() {
            return Err(Error::ContextMismatch(format!(
                "space {} needs an explicit map to the base {}",
                space.name(),
                self.base.name()
            )));
        }
        self.constant_space(space, 0)
    }

    pub fn check(&self, space: &IndexedSpace) -> Result<()> {
        if space.to_base.target() != &self.base {
            return Err(Error::ContextMismatch(format!(
                "{} lies over {}, not {}",
                space.space.name(),
                space.to_base.target().name(),
                self.base.name()
            )));
        }
        Ok(())
    }
}

/// A finite set with its structure map to the ambient base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedSpace {
    space: FinSet,
    to_base: FinMap,
}

impl IndexedSpace {
    pub fn new(space: FinSet, to_base: FinMap) -> Result<Self> {
        if to_base.source() != &space {
            return Err(Error::EndpointMismatch(format!(
                "structure map of {} starts at {}",
                space.name(),
                to_base.source().name()
            )));
        }
        Ok(IndexedSpace { space, to_base })
    }

    pub fn space(&self) -> &FinSet {
        &self.space
    }

    pub fn to_base(&self) -> &FinMap {
        &self.to_base
    }

    pub fn len(&self) -> usize {
        self.space.len()
    }

    pub fn is_empty(&self) -> bool {
        self.space.is_empty()
    }

    pub fn context(&self) -> Context {
        Context::over(self.to_base.target().clone())
    }

    /// The subspace at the given increasing positions.
    pub fn restrict(&self, picks: Vec<usize>) -> IndexedSpace {
        let images = picks.iter().map(|&i| self.to_base.image(i)).collect();
        let space = self.space.subset(picks);
        let to_base = FinMap::new(space.clone(), self.to_base.target().clone(), images)
            .expect("restriction of a valid map");
        IndexedSpace { space, to_base }
    }
}

/// A map of indexing spaces commuting with the structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    source: IndexedSpace,
    target: IndexedSpace,
    map: FinMap,
}

impl SpaceMap {
    pub fn new(source: IndexedSpace, target: IndexedSpace, map: FinMap) -> Result<Self> {
        if map.source() != source.space() || map.target() != target.space() {
            return Err(Error::EndpointMismatch(format!(
                "map {}→{} between {} and {}",
                map.source().name(),
                map.target().name(),
                source.space().name(),
                target.space().name()
            )));
        }
        if source.to_base.target() != target.to_base.target() {
            return Err(Error::ContextMismatch("spaces over different bases".into()));
        }
        for i in 0..map.source().len() {
            if target.to_base.image(map.image(i)) != source.to_base.image(i) {
                return Err(Error::ContextMismatch(format!(
                    "{} changes base point under {}",
                    source.space.elem(i),
                    map.source().name()
                )));
            }
        }
        Ok(SpaceMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(space: &IndexedSpace) -> Self {
        SpaceMap {
            source: space.clone(),
            target: space.clone(),
            map: FinMap::identity(space.space()),
        }
    }

    pub fn source(&self) -> &IndexedSpace {
        &self.source
    }

    pub fn target(&self) -> &IndexedSpace {
        &self.target
    }

    pub fn map(&self) -> &FinMap {
        &self.map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SpaceMap) -> Result<SpaceMap> {
        Ok(SpaceMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.after(&first.map)?,
        })
    }
}

/// A finite set over an indexing space: the discrete parametrized spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSet {
    total: FinSet,
    base: IndexedSpace,
    proj: FinMap,
}

impl ParamSet {
    pub fn new(total: FinSet, base: IndexedSpace, proj: FinMap) -> Result<Self> {
        if proj.source() != &total || proj.target() != base.space() {
            return Err(Error::EndpointMismatch(format!(
                "projection {}→{} for {} over {}",
                proj.source().name(),
                proj.target().name(),
                total.name(),
                base.space().name()
            )));
        }
        Ok(ParamSet { total, base, proj })
    }

    /// A parametrized set with the given fiber sizes; element `k` of the
    /// fiber over `a` is `(a, prefix k)`.
    pub fn with_fibers(base: &IndexedSpace, fibers: &[usize], prefix: &str) -> Result<Self> {
        if fibers.len() != base.len() {
            return Err(Error::Arity {
                expected: base.len(),
                got: fibers.len(),
            });
        }
        let mut elems = Vec::new();
        let mut images = Vec::new();
        for (a, &n) in fibers.iter().enumerate() {
            for k in 0..n {
                elems.push(Elem::pair(
                    base.space().elem(a),
                    Elem::atom(&format!("{prefix}{k}")),
                ));
                images.push(a);
            }
        }
        let total = FinSet::new(prefix.to_string(), elems)?;
        let proj = FinMap::new(total.clone(), base.space().clone(), images)?;
        ParamSet::new(total, base.clone(), proj)
    }

    pub fn total(&self) -> &FinSet {
        &self.total
    }

    pub fn base(&self) -> &IndexedSpace {
        &self.base
    }

    pub fn proj(&self) -> &FinMap {
        &self.proj
    }

    pub fn len(&self) -> usize {
        self.total.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_empty()
    }

    pub fn context(&self) -> Context {
        self.base.context()
    }

    /// Fiber cardinalities, indexed by base position.
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.base.len()];
        for &a in self.proj.images() {
            sizes[a] += 1;
        }
        sizes
    }

    /// The map from the total set all the way down to the ambient base.
    pub fn to_ambient(&self) -> FinMap {
        self.base
            .to_base
            .after(&self.proj)
            .expect("projection lands in the base space")
    }

    /// The total set as an indexing space.
    pub fn total_space(&self) -> IndexedSpace {
        IndexedSpace {
            space: self.total.clone(),
            to_base: self.to_ambient(),
        }
    }
}

/// A map of parametrized sets over the same base (a 2-cell of the fiber).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamMap {
    source: ParamSet,
    target: ParamSet,
    map: FinMap,
}

impl ParamMap {
    pub fn new(source: ParamSet, target: ParamSet, map: FinMap) -> Result<Self> {
        if source.base != target.base {
            return Err(Error::EndpointMismatch(format!(
                "{} and {} have different bases",
                source.total.name(),
                target.total.name()
            )));
        }
        if map.source() != &source.total || map.target() != &target.total {
            return Err(Error::EndpointMismatch("map does not join the totals".into()));
        }
        for i in 0..source.len() {
            if target.proj.image(map.image(i)) != source.proj.image(i) {
                return Err(Error::InvalidCell2(format!(
                    "{} moves to a different base point",
                    source.total.elem(i)
                )));
            }
        }
        Ok(ParamMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(x: &ParamSet) -> Self {
        ParamMap {
            source: x.clone(),
            target: x.clone(),
            map: FinMap::identity(&x.total),
        }
    }

    pub fn source(&self) -> &ParamSet {
        &self.source
    }

    pub fn target(&self) -> &ParamSet {
        &self.target
    }

    pub fn map(&self) -> &FinMap {
        &self.map
    }
}

/// Iterated fiber product over the ambient base: elements are left-nested
/// tuples of points lying over a common base point. No factors gives the base
/// itself; one factor is returned unchanged.
pub fn fiber_product(ctx: &Context, spaces: &[IndexedSpace]) -> Result<IndexedSpace> {
    for s in spaces {
        ctx.check(s)?;
    }
    match spaces.len() {
        0 => return Ok(ctx.base_space()),
        1 => return Ok(spaces[0].clone()),
        _ => {}
    }
    let product = FinSet::product(spaces.iter().map(|s| s.space.clone()).collect());
    let mut buf = Vec::new();
    let base_of = |coords: &[usize]| spaces[0].to_base.image(coords[0]);
    let space = if ctx.base.len() <= 1 {
        product
    } else {
        product.filter(|i| {
            product.coords_into(i, &mut buf);
            let b = base_of(&buf);
            buf.iter()
                .zip(spaces)
                .all(|(&c, s)| s.to_base.image(c) == b)
        })
    };
    let mut images = Vec::with_capacity(space.len());
    for i in 0..space.len() {
        space.coords_into(i, &mut buf);
        images.push(base_of(&buf));
    }
    let to_base = FinMap::new(space.clone(), ctx.base.clone(), images)?;
    Ok(IndexedSpace { space, to_base })
}

/// The map `x ↦ (m1 x, ..., mn x)` into the fiber product of the targets.
pub fn fiber_tuple(
    ctx: &Context,
    source: &IndexedSpace,
    maps: &[SpaceMap],
) -> Result<SpaceMap> {
    let targets: Vec<_> = maps.iter().map(|m| m.target.clone()).collect();
    let target = fiber_product(ctx, &targets)?;
    for m in maps {
        if &m.source != source {
            return Err(Error::EndpointMismatch(format!(
                "component starts at {}, expected {}",
                m.source.space.name(),
                source.space.name()
            )));
        }
    }
    let map = match maps.len() {
        0 => source.to_base.clone(),
        1 => maps[0].map.clone(),
        _ => {
            let mut coords = vec![0; maps.len()];
            FinMap::from_index_fn(source.space.clone(), target.space.clone(), |i| {
                for (c, m) in coords.iter_mut().zip(maps) {
                    *c = m.map.image(i);
                }
                target.space.from_coords(&coords).expect("components share a base point")
            })?
        }
    };
    SpaceMap::new(source.clone(), target, map)
}

/// `X1 ⊠ ... ⊠ Xn` over the ambient base.
pub fn external_product(ctx: &Context, xs: &[ParamSet]) -> Result<ParamSet> {
    for x in xs {
        ctx.check(&x.base)?;
    }
    if xs.len() == 1 {
        return Ok(xs[0].clone());
    }
    let totals: Vec<_> = xs.iter().map(ParamSet::total_space).collect();
    let total = fiber_product(ctx, &totals)?;
    let bases: Vec<_> = xs.iter().map(|x| x.base.clone()).collect();
    let base = fiber_product(ctx, &bases)?;
    let proj = if xs.is_empty() {
        FinMap::identity(&ctx.base)
    } else {
        let mut buf = Vec::new();
        FinMap::from_index_fn(total.space.clone(), base.space.clone(), |i| {
            total.space.coords_into(i, &mut buf);
            for (c, x) in buf.iter_mut().zip(xs) {
                *c = x.proj.image(*c);
            }
            base.space.from_coords(&buf).expect("factors share a base point")
        })?
    };
    ParamSet::new(total.space, base, proj)
}

/// `h*X` with its cartesian comparison `(a', x) ↦ x`.
pub fn pullback_along(h: &SpaceMap, x: &ParamSet) -> Result<(ParamSet, FinMap)> {
    if h.target != x.base {
        return Err(Error::EndpointMismatch(format!(
            "pullback along a map into {} of a set over {}",
            h.target.space.name(),
            x.base.space.name()
        )));
    }
    let pb = pullback(&h.map, &x.proj)?;
    let result = ParamSet::new(pb.set, h.source.clone(), pb.left)?;
    Ok((result, pb.right))
}

/// `h_!X`: same total, projection composed with `h`.
pub fn pushforward_along(h: &SpaceMap, x: &ParamSet) -> Result<ParamSet> {
    if h.source != x.base {
        return Err(Error::EndpointMismatch(format!(
            "pushforward along a map out of {} of a set over {}",
            h.source.space.name(),
            x.base.space.name()
        )));
    }
    ParamSet::new(x.total.clone(), h.target.clone(), h.map.after(&x.proj)?)
}

/// A commutative square `f∘k = h∘j` with apex `A` (maps `k: A→B`, `j: A→C`,
/// `f: B→D`, `h: C→D`).
#[derive(Clone, Debug)]
pub struct Square {
    pub k: SpaceMap,
    pub j: SpaceMap,
    pub f: SpaceMap,
    pub h: SpaceMap,
}

impl Square {
    /// The apex is compared to `pullback(f, h)` through `a ↦ (k a, j a)`.
    pub fn check_pullback(&self) -> Result<()> {
        let Square { k, j, f, h } = self;
        if k.source != j.source || k.target != f.source || j.target != h.source || f.target != h.target
        {
            return Err(Error::NotPullbackSquare("the four maps do not form a square".into()));
        }
        let apex = k.source.space();
        for a in 0..apex.len() {
            if f.map.image(k.map.image(a)) != h.map.image(j.map.image(a)) {
                return Err(Error::NotPullbackSquare(format!(
                    "square does not commute at {}",
                    apex.elem(a)
                )));
            }
        }
        let pb = pullback(&f.map, &h.map)?;
        let mut hit: Vec<Option<usize>> = vec![None; pb.set.len()];
        for a in 0..apex.len() {
            let pair = Elem::pair(
                k.target.space().elem(k.map.image(a)),
                j.target.space().elem(j.map.image(a)),
            );
            let p = pb.set.index_of(&pair).expect("commuting square lands in the pullback");
            if let Some(prev) = hit[p] {
                return Err(Error::NotPullbackSquare(format!(
                    "{} and {} both map to {}",
                    apex.elem(prev),
                    apex.elem(a),
                    pair
                )));
            }
            hit[p] = Some(a);
        }
        if let Some(p) = hit.iter().position(Option::is_none) {
            return Err(Error::NotPullbackSquare(format!(
                "{} is not hit by the apex",
                pb.set.elem(p)
            )));
        }
        Ok(())
    }
}

/// Both sides of a Beck–Chevalley comparison and the bijection between them.
#[derive(Clone, Debug)]
pub struct BeckChevalley {
    /// `j_! k* X`
    pub left: ParamSet,
    /// `h* f_! X`
    pub right: ParamSet,
    /// `(a, x) ↦ (j a, x)`
    pub iso: ParamMap,
}

pub fn beck_chevalley(square: &Square, x: &ParamSet) -> Result<BeckChevalley> {
    square.check_pullback()?;
    let (kx, _) = pullback_along(&square.k, x)?;
    let left = pushforward_along(&square.j, &kx)?;
    let fx = pushforward_along(&square.f, x)?;
    let (right, _) = pullback_along(&square.h, &fx)?;
    let c = square.j.target.space();
    let a = square.k.source.space();
    let map = FinMap::from_fn(left.total.clone(), right.total.clone(), |e| {
        let (ae, xe) = e.as_pair().expect("pullback elements are pairs");
        let ai = a.index_of(ae).expect("apex element");
        Elem::pair(c.elem(square.j.map.image(ai)), xe.clone())
    })?;
    if !map.is_bijective() {
        return Err(Error::NotBijective("Beck–Chevalley comparison".into()));
    }
    let iso = ParamMap::new(left.clone(), right.clone(), map)?;
    Ok(BeckChevalley { left, right, iso })
}

/// A multi-span `C ← B → A1 × ... × An` over the ambient base.
#[derive(Clone, Debug)]
pub struct MultiSpan {
    ctx: Context,
    apex: IndexedSpace,
    target: IndexedSpace,
    inputs: Vec<IndexedSpace>,
    f: SpaceMap,
    g: Vec<SpaceMap>,
}

impl MultiSpan {
    pub fn new(ctx: Context, f: SpaceMap, g: Vec<SpaceMap>) -> Result<Self> {
        let apex = f.source.clone();
        ctx.check(&apex)?;
        for gi in &g {
            if gi.source != apex {
                return Err(Error::EndpointMismatch(format!(
                    "leg starts at {}, apex is {}",
                    gi.source.space.name(),
                    apex.space.name()
                )));
            }
        }
        Ok(MultiSpan {
            target: f.target.clone(),
            inputs: g.iter().map(|gi| gi.target.clone()).collect(),
            ctx,
            apex,
            f,
            g,
        })
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn apex(&self) -> &IndexedSpace {
        &self.apex
    }

    pub fn target(&self) -> &IndexedSpace {
        &self.target
    }

    pub fn inputs(&self) -> &[IndexedSpace] {
        &self.inputs
    }

    pub fn f(&self) -> &SpaceMap {
        &self.f
    }

    pub fn g(&self) -> &[SpaceMap] {
        &self.g
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    /// The tupled leg `B → A1 ×_B ... ×_B An`.
    pub fn input_leg(&self) -> Result<SpaceMap> {
        fiber_tuple(&self.ctx, &self.apex, &self.g)
    }

    fn check_inputs(&self, xs: &[ParamSet]) -> Result<()> {
        if xs.len() != self.inputs.len() {
            return Err(Error::Arity {
                expected: self.inputs.len(),
                got: xs.len(),
            });
        }
        for (x, a) in xs.iter().zip(&self.inputs) {
            if &x.base != a {
                return Err(Error::EndpointMismatch(format!(
                    "input over {} where {} is expected",
                    x.base.space.name(),
                    a.space.name()
                )));
            }
        }
        Ok(())
    }

    /// `f_! (g1..gn)* (X1 ⊠ ... ⊠ Xn)`, elements `(b, (x1..xn))`.
    pub fn act(&self, xs: &[ParamSet]) -> Result<ParamSet> {
        self.check_inputs(xs)?;
        let smash = external_product(&self.ctx, xs)?;
        let (pulled, _) = pullback_along(&self.input_leg()?, &smash)?;
        pushforward_along(&self.f, &pulled)
    }

    /// The map on actions induced by maps of inputs: `(b, x⃗) ↦ (b, φ(x⃗))`.
    pub fn act_on_maps(&self, maps: &[ParamMap]) -> Result<ParamMap> {
        let sources: Vec<_> = maps.iter().map(|m| m.source.clone()).collect();
        let targets: Vec<_> = maps.iter().map(|m| m.target.clone()).collect();
        let from = self.act(&sources)?;
        let to = self.act(&targets)?;
        let map = FinMap::from_fn(from.total.clone(), to.total.clone(), |e| {
            let (b, xs) = e.as_pair().expect("action elements are pairs");
            if maps.is_empty() {
                return e.clone();
            }
            let items = xs.untuple(maps.len()).expect("tuple of inputs");
            let moved = items.iter().zip(maps).map(|(x, m)| {
                m.map.apply(x).expect("input element")
            });
            Elem::pair(b.clone(), Elem::tuple(moved))
        })?;
        ParamMap::new(from, to, map)
    }

    /// Predicted action size `Σ_b Π_i |X_i over g_i(b)|`.
    pub fn action_size(&self, xs: &[ParamSet]) -> Result<usize> {
        self.check_inputs(xs)?;
        let fibers: Vec<_> = xs.iter().map(ParamSet::fiber_sizes).collect();
        Ok((0..self.apex.len())
            .map(|b| {
                self.g
                    .iter()
                    .zip(&fibers)
                    .map(|(g, sizes)| sizes[g.map.image(b)])
                    .product::<usize>()
            })
            .sum())
    }

    /// `Ok(())` when `B → C ×_B A1 ×_B ... ×_B An` is injective, otherwise a
    /// colliding pair of apex elements.
    pub fn rigidity(&self) -> std::result::Result<(), (Elem, Elem)> {
        let mut legs = vec![self.f.map.clone()];
        legs.extend(self.g.iter().map(|g| g.map.clone()));
        let tupled = crate::finset::tuple_map(self.apex.space(), &legs)
            .expect("legs share the apex");
        match tupled.injectivity_witness() {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    pub fn is_rigid(&self) -> bool {
        self.rigidity().is_ok()
    }
}

/// Input tuples for a multi-span together with maps between them.
#[derive(Clone, Debug, Default)]
pub struct Family {
    pub objects: Vec<Vec<ParamSet>>,
    pub arrows: Vec<FamilyArrow>,
}

/// A tuple of input maps from object `from` to object `to` of a [`Family`].
#[derive(Clone, Debug)]
pub struct FamilyArrow {
    pub from: usize,
    pub to: usize,
    pub maps: Vec<ParamMap>,
}

/// One automorphism per family object, as permutations of the action output.
pub type Automorphism = Vec<Vec<usize>>;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Enumerates all families of fiberwise bijections of the action outputs that
/// commute with every induced arrow map. A nullary span always acts on the
/// empty tuple, which is added when the family lists no objects.
pub fn search_automorphisms(
    span: &MultiSpan,
    family: &Family,
    budget: u64,
) -> Result<Vec<Automorphism>> {
    let mut objects = family.objects.clone();
    if span.arity() == 0 && objects.is_empty() {
        objects.push(Vec::new());
    }
    let outputs = objects
        .iter()
        .map(|xs| span.act(xs))
        .collect::<Result<Vec<_>>>()?;
    let mut arrows = Vec::new();
    for arrow in &family.arrows {
        if arrow.from >= objects.len() || arrow.to >= objects.len() {
            return Err(Error::Input("family arrow refers to a missing object".into()));
        }
        for (m, (s, t)) in arrow
            .maps
            .iter()
            .zip(objects[arrow.from].iter().zip(&objects[arrow.to]))
        {
            if m.source() != s || m.target() != t {
                return Err(Error::Input("family arrow does not join its objects".into()));
            }
        }
        let induced = span.act_on_maps(&arrow.maps)?;
        arrows.push((arrow.from, arrow.to, induced.map().images().to_vec()));
    }
    let mut search = AutSearch {
        outputs: &outputs,
        arrows: &arrows,
        perms: outputs.iter().map(|o| vec![usize::MAX; o.len()]).collect(),
        used: outputs.iter().map(|o| vec![false; o.len()]).collect(),
        found: Vec::new(),
        budget,
        spent: 0,
    };
    search.run(0, 0)?;
    Ok(search.found)
}

struct AutSearch<'a> {
    outputs: &'a [ParamSet],
    arrows: &'a [(usize, usize, Vec<usize>)],
    perms: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    found: Vec<Automorphism>,
    budget: u64,
    spent: u64,
}

impl AutSearch<'_> {
    fn run(&mut self, obj: usize, pos: usize) -> Result<()> {
        if obj == self.outputs.len() {
            self.found.push(self.perms.clone());
            return Ok(());
        }
        if pos == self.outputs[obj].len() {
            return self.run(obj + 1, 0);
        }
        let proj = self.outputs[obj].proj();
        for cand in 0..self.outputs[obj].len() {
            if self.used[obj][cand] || proj.image(cand) != proj.image(pos) {
                continue;
            }
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            self.perms[obj][pos] = cand;
            self.used[obj][cand] = true;
            if self.consistent() {
                self.run(obj, pos + 1)?;
            }
            self.used[obj][cand] = false;
            self.perms[obj][pos] = usize::MAX;
        }
        Ok(())
    }

    /// Checks `induced ∘ σ_from = σ_to ∘ induced` wherever both sides are
    /// already assigned.
    fn consistent(&self) -> bool {
        self.arrows.iter().all(|(from, to, map)| {
            map.iter().enumerate().all(|(x, &fx)| {
                let sx = self.perms[*from][x];
                let sfx = self.perms[*to][fx];
                sx == usize::MAX || sfx == usize::MAX || map[sx] == sfx
            })
        })
    }
}
