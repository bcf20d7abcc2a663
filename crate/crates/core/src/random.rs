//! Seeded random instances for the coherence suites.
//!
//! Every instance draws from its own ChaCha stream, keyed by the suite seed
//! and the instance index, so results do not depend on scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::bicategory::{Cell1, Cell2};
use crate::equivariant::{FinGroup, GCell1, GMap, GParamSet, GSet, GSpace, Subgroup};
use crate::finset::{Elem, FinMap, FinSet};
use crate::io;
use crate::smbf::{
    fiber_product, Context, Family, FamilyArrow, IndexedSpace, MultiSpan, ParamMap, ParamSet, SpaceMap,
};

pub fn instance_rng(seed: u64, instance: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(instance);
    rng
}

/// Size limits for generated data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest 0-cell.
    pub space: usize,
    /// Largest fiber of a span over a pair of points.
    pub fiber: usize,
    /// Largest span total.
    pub total: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            space: 4,
            fiber: 3,
            total: 6,
        }
    }
}

/// The two-point base used for fiberwise runs.
pub fn two_point_base() -> FinSet {
    FinSet::atoms("B", &["u0", "u1"]).expect("distinct atoms")
}

/// A generator for one instance. Names are numbered so that distinct
/// objects of one instance never share elements.
pub struct Gen<'r> {
    pub rng: &'r mut ChaCha8Rng,
    pub bounds: Bounds,
    pub ctx: Context,
    /// When set, every generated object is serialized here.
    pub log: Option<Vec<Value>>,
    fresh: usize,
}

impl<'r> Gen<'r> {
    pub fn new(rng: &'r mut ChaCha8Rng, bounds: Bounds, ctx: Context) -> Self {
        Gen {
            rng,
            bounds,
            ctx,
            log: None,
            fresh: 0,
        }
    }

    pub fn note(&mut self, kind: &str, value: impl FnOnce() -> Value) {
        if let Some(log) = &mut self.log {
            log.push(json!({ "kind": kind, "value": value() }));
        }
    }

    /// A size in `0..=max`: empty one time in ten, otherwise uniform, so
    /// most instances have content while empty sets still turn up.
    fn size(&mut self, max: usize) -> usize {
        if max == 0 || self.rng.gen_bool(0.1) {
            0
        } else {
            self.rng.gen_range(1..=max)
        }
    }

    fn fresh(&mut self) -> usize {
        self.fresh += 1;
        self.fresh - 1
    }

    fn base_len(&self) -> usize {
        self.ctx.base().len()
    }

    pub fn space(&mut self) -> IndexedSpace {
        let n = self.size(self.bounds.space);
        self.space_sized(n)
    }

    pub fn space_sized(&mut self, n: usize) -> IndexedSpace {
        let over: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..self.base_len())).collect();
        self.space_over(&over)
    }

    /// A space with one point over each listed base point.
    fn space_over(&mut self, over: &[usize]) -> IndexedSpace {
        let k = self.fresh();
        let set = FinSet::numbered(format!("A{k}"), &format!("a{k}."), over.len());
        let to_base = FinMap::new(set.clone(), self.ctx.base().clone(), over.to_vec()).expect("base points in range");
        let space = IndexedSpace::new(set, to_base).expect("valid structure map");
        self.note("space", || io::space_to_json(&space));
        space
    }

    /// A random space with at least one point over each base point `source` meets.
    pub fn space_covering(&mut self, source: &IndexedSpace) -> IndexedSpace {
        let n = self.size(self.bounds.space);
        let mut over: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..self.base_len())).collect();
        for &b in source.to_base().images() {
            if !over.contains(&b) {
                over.push(b);
            }
        }
        self.space_over(&over)
    }

    /// A random map over the base, if one exists.
    pub fn map_into(&mut self, source: &IndexedSpace, target: &IndexedSpace) -> Option<SpaceMap> {
        let mut images = Vec::with_capacity(source.len());
        for a in 0..source.len() {
            let b = source.to_base().image(a);
            let options: Vec<usize> = (0..target.len()).filter(|&t| target.to_base().image(t) == b).collect();
            images.push(*options.choose(self.rng)?);
        }
        let map = FinMap::new(source.space().clone(), target.space().clone(), images).ok()?;
        self.note("map", || io::map_to_json(&map));
        SpaceMap::new(source.clone(), target.clone(), map).ok()
    }

    /// A random map out of `source` into a fresh space.
    pub fn map_from(&mut self, source: &IndexedSpace) -> SpaceMap {
        let target = self.space_covering(source);
        self.map_into(source, &target).expect("the target covers the source")
    }

    /// A random endomap of a fresh space.
    pub fn endomap(&mut self) -> SpaceMap {
        let a = self.space();
        self.map_into(&a, &a).expect("every point maps to itself at least")
    }

    /// A random span from `src` to `dst`.
    pub fn cell(&mut self, src: &IndexedSpace, dst: &IndexedSpace) -> Cell1 {
        let mut pairs = Vec::new();
        for a in 0..src.len() {
            for c in 0..dst.len() {
                if src.to_base().image(a) == dst.to_base().image(c) {
                    pairs.push((a, c));
                }
            }
        }
        pairs.shuffle(self.rng);
        let (mut to_src, mut to_dst) = (Vec::new(), Vec::new());
        for (a, c) in pairs {
            let room = self.bounds.total - to_src.len();
            let k = self.rng.gen_range(0..=self.bounds.fiber).min(room);
            for _ in 0..k {
                to_src.push(a);
                to_dst.push(c);
            }
        }
        self.cell_with_legs(src, dst, to_src, to_dst)
    }

    fn cell_with_legs(&mut self, src: &IndexedSpace, dst: &IndexedSpace, to_src: Vec<usize>, to_dst: Vec<usize>) -> Cell1 {
        let k = self.fresh();
        let total = FinSet::numbered(format!("X{k}"), &format!("x{k}."), to_src.len());
        let ls = FinMap::new(total.clone(), src.space().clone(), to_src).expect("legs in range");
        let ld = FinMap::new(total, dst.space().clone(), to_dst).expect("legs in range");
        let cell = Cell1::new(self.ctx.clone(), src.clone(), dst.clone(), ls, ld).expect("legs over a common point");
        self.note("cell", || io::cell_to_json(&cell));
        cell
    }

    /// A random 2-cell into `target`, from a fresh span with the same ends.
    pub fn cell2_into(&mut self, target: &Cell1) -> Cell2 {
        let n = if target.is_empty() {
            0
        } else {
            self.rng.gen_range(0..=self.bounds.total)
        };
        let images: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..target.len())).collect();
        let to_src = images.iter().map(|&t| target.to_src().image(t)).collect();
        let to_dst = images.iter().map(|&t| target.to_dst().image(t)).collect();
        let from = self.cell_with_legs(target.src(), target.dst(), to_src, to_dst);
        let map = FinMap::new(from.total().clone(), target.total().clone(), images).expect("images in range");
        self.note("2-cell", || io::map_to_json(&map));
        Cell2::new(from, target.clone(), map).expect("legs factor through the map")
    }

    /// A random span `C ← B → ∏ A_i` whose tupled leg is injective.
    pub fn rigid_span(&mut self, arity: usize) -> MultiSpan {
        let inputs: Vec<_> = (0..arity).map(|_| self.space()).collect();
        let c = self.space();
        let mut factors = vec![c.clone()];
        factors.extend(inputs.iter().cloned());
        let ambient = fiber_product(&self.ctx, &factors).expect("spaces over the base");
        let size = self.rng.gen_range(0..=ambient.len().min(3));
        let mut picks = rand::seq::index::sample(self.rng, ambient.len(), size).into_vec();
        picks.sort_unstable();
        let apex = ambient.restrict(picks);
        let coord = |i: usize, k: usize| -> usize {
            if arity == 0 {
                apex.space().position_in(ambient.space(), i).expect("a subset")
            } else {
                apex.space().coords(i).expect("tuples")[k]
            }
        };
        let leg = |k: usize, target: &IndexedSpace| {
            let map = FinMap::from_index_fn(apex.space().clone(), target.space().clone(), |i| coord(i, k)).expect("coordinates in range");
            SpaceMap::new(apex.clone(), target.clone(), map).expect("coordinates lie over the base point")
        };
        let f = leg(0, &c);
        let g = inputs.iter().enumerate().map(|(k, a)| leg(k + 1, a)).collect();
        let span = MultiSpan::new(self.ctx.clone(), f, g).expect("legs share the apex");
        self.note("span", || io::multispan_to_json(&span));
        span
    }

    /// Inputs for `span` together with point probes and enough maps from them
    /// that every element of the action is the image of a probe element.
    /// At most three tuples and five tuples of maps.
    pub fn covering_family(&mut self, span: &MultiSpan) -> Family {
        if span.arity() == 0 {
            return Family::default();
        }
        for attempt in 0..32 {
            let cap = if attempt < 16 { 2 } else { 1 };
            let xs: Vec<ParamSet> = span
                .inputs()
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let fibers: Vec<usize> = (0..a.len()).map(|_| self.rng.gen_range(0..=cap)).collect();
                    ParamSet::with_fibers(a, &fibers, &format!("x{i}.")).expect("fiber per point")
                })
                .collect();
            if let Some(family) = probe_family(span, xs.clone()) {
                self.note("inputs", || Value::Array(xs.iter().map(io::param_set_to_json).collect()));
                return family;
            }
        }
        let empty = span
            .inputs()
            .iter()
            .map(|a| ParamSet::with_fibers(a, &vec![0; a.len()], "x").expect("fiber per point"))
            .collect();
        probe_family(span, empty).expect("empty inputs need no probes")
    }
}

fn probe_family(span: &MultiSpan, xs: Vec<ParamSet>) -> Option<Family> {
    // (base tuple, element tuple) for every element of the action.
    let mut needed: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for b in 0..span.apex().len() {
        let at: Vec<usize> = span.g().iter().map(|g| g.map().image(b)).collect();
        let fibers: Vec<Vec<usize>> = xs
            .iter()
            .zip(&at)
            .map(|(x, &a)| (0..x.len()).filter(|&e| x.proj().image(e) == a).collect())
            .collect();
        for tuple in cartesian(&fibers) {
            if !needed.contains(&(at.clone(), tuple.clone())) {
                needed.push((at.clone(), tuple));
            }
        }
    }
    let mut bases: Vec<Vec<usize>> = needed.iter().map(|(a, _)| a.clone()).collect();
    bases.dedup();
    bases.sort();
    bases.dedup();
    if bases.len() > 2 || needed.len() > 5 {
        return None;
    }
    let mut objects = vec![xs.clone()];
    let mut arrows = Vec::new();
    for at in &bases {
        let probes: Vec<ParamSet> = span
            .inputs()
            .iter()
            .zip(at)
            .map(|(a, &p)| {
                let fibers: Vec<usize> = (0..a.len()).map(|q| usize::from(q == p)).collect();
                ParamSet::with_fibers(a, &fibers, "p").expect("fiber per point")
            })
            .collect();
        let from = objects.len();
        for (_, tuple) in needed.iter().filter(|(a, _)| a == at) {
            let maps = probes
                .iter()
                .zip(&xs)
                .zip(tuple)
                .map(|((p, x), &e)| {
                    let map = FinMap::new(p.total().clone(), x.total().clone(), vec![e]).expect("one point");
                    ParamMap::new(p.clone(), x.clone(), map).expect("probe lies over the right point")
                })
                .collect();
            arrows.push(FamilyArrow { from, to: 0, maps });
        }
        objects.push(probes);
    }
    Some(Family { objects, arrows })
}

fn cartesian(lists: &[Vec<usize>]) -> Vec<Vec<usize>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

/// An orbit `G/K` together with a `K`-fixed anchor in some target G-set;
/// the coset `gK` maps to `g · anchor`.
#[derive(Clone, Debug)]
struct Orbit {
    stab: Subgroup,
    anchor: usize,
}

/// Equivariant generators for a fixed group, over a [`Gen`]'s context. The
/// group acts trivially on the base.
pub struct GGen<'g, 'r> {
    pub gen: &'g mut Gen<'r>,
    pub group: FinGroup,
    subgroups: Vec<Subgroup>,
}

impl<'g, 'r> GGen<'g, 'r> {
    pub fn new(gen: &'g mut Gen<'r>, group: FinGroup) -> Self {
        let subgroups = group.subgroups();
        GGen {
            gen,
            group,
            subgroups,
        }
    }

    fn base_action(&self) -> GSet {
        GSet::trivial(self.group.clone(), self.gen.ctx.base().clone())
    }

    /// Up to three random orbits, each anchored at an allowed fixed point of
    /// `target`, with at most `max` elements in all.
    fn random_orbits(&mut self, target: &GSet, max: usize) -> Vec<Orbit> {
        let count = self.gen.size(3);
        let mut out = Vec::new();
        let mut used = 0;
        for _ in 0..count {
            let k = self.subgroups.choose(self.gen.rng).expect("the trivial subgroup").clone();
            let index = self.group.order() / k.order();
            if used + index > max {
                continue;
            }
            let fixed = target.fixed_indices(&k);
            if let Some(&anchor) = fixed.choose(self.gen.rng) {
                used += index;
                out.push(Orbit { stab: k, anchor });
            }
        }
        out
    }

    /// The disjoint union of the orbits and its map to the anchors' G-set.
    fn build(&mut self, orbits: &[Orbit], target: &GSet, upper: &str) -> (GSet, FinMap) {
        let g = &self.group;
        let k = self.gen.fresh();
        let lower = upper.to_lowercase();
        let mut elems = Vec::new();
        let mut images = Vec::new();
        let mut cosets: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
        let mut offset = 0;
        for (o, orbit) in orbits.iter().enumerate() {
            let mut list: Vec<Vec<usize>> = Vec::new();
            for a in 0..g.order() {
                let mut coset: Vec<usize> = orbit.stab.members().iter().map(|&s| g.mul(a, s)).collect();
                coset.sort_unstable();
                if !list.contains(&coset) {
                    elems.push(Elem::atom(&format!("{lower}{k}.{o}:{}", g.elements().elem(a))));
                    images.push(target.act(a, orbit.anchor));
                    list.push(coset);
                }
            }
            cosets.push((offset, list.clone()));
            offset += list.len();
        }
        let set = FinSet::new(format!("{upper}{k}"), elems).expect("distinct labels");
        let act = (0..g.order())
            .map(|a| {
                cosets
                    .iter()
                    .flat_map(|(off, list)| {
                        list.iter().map(move |coset| {
                            let moved = g.mul(a, coset[0]);
                            off + list.iter().position(|c| c.binary_search(&moved).is_ok()).expect("cosets partition G")
                        })
                    })
                    .collect()
            })
            .collect();
        let gset = GSet::new(g.clone(), set.clone(), act).expect("left multiplication on cosets");
        self.gen.note("g-set", || io::gset_to_json(&gset));
        let map = FinMap::new(set, target.set().clone(), images).expect("anchors in range");
        (gset, map)
    }

    fn space_from(&mut self, orbits: &[Orbit]) -> GSpace {
        let base = self.base_action();
        let (action, to_base) = self.build(orbits, &base, "A");
        let space = IndexedSpace::new(action.set().clone(), to_base).expect("valid structure map");
        GSpace::new(space, action).expect("the action fixes base points")
    }

    pub fn space(&mut self) -> GSpace {
        let base = self.base_action();
        let orbits = self.random_orbits(&base, self.gen.bounds.space);
        self.space_from(&orbits)
    }

    /// A random equivariant map out of `source`; the target is enlarged where
    /// some orbit of the source has no admissible image.
    pub fn map_from(&mut self, source: &GSpace) -> GMap {
        let base = self.base_action();
        let mut orbits = self.random_orbits(&base, self.gen.bounds.space);
        let reps: Vec<usize> = source.action().orbits().iter().map(|o| o[0]).collect();
        let stabs: Vec<Subgroup> = reps
            .iter()
            .map(|&x| Subgroup::new(self.group.clone(), source.action().stabilizer(x)).expect("stabilizers are subgroups"))
            .collect();
        let mut target = self.space_from(&orbits);
        for (&x, s) in reps.iter().zip(&stabs) {
            let b = source.space().to_base().image(x);
            if !candidates(&target, s, b).is_empty() {
                continue;
            }
            orbits.push(Orbit {
                stab: s.clone(),
                anchor: b,
            });
            target = self.space_from(&orbits);
        }
        let mut images = vec![usize::MAX; source.space().len()];
        for (&x, s) in reps.iter().zip(&stabs) {
            let b = source.space().to_base().image(x);
            let y = *candidates(&target, s, b).choose(self.gen.rng).expect("ensured above");
            for a in 0..self.group.order() {
                images[source.action().act(a, x)] = target.action().act(a, y);
            }
        }
        let map = FinMap::new(source.space().space().clone(), target.space().space().clone(), images).expect("every orbit mapped");
        self.gen.note("map", || io::map_to_json(&map));
        GMap::new(source.clone(), target, map).expect("orbitwise construction is equivariant")
    }

    /// A random equivariant span from `src` to `dst`.
    pub fn cell(&mut self, src: &GSpace, dst: &GSpace) -> GCell1 {
        let ctx = self.gen.ctx.clone();
        let pairs = fiber_product(&ctx, &[src.space().clone(), dst.space().clone()]).expect("spaces over the base");
        let act = GSet::on_tuples(pairs.space(), &[src.action(), dst.action()]).expect("diagonal action");
        let orbits = self.random_orbits(&act, self.gen.bounds.total);
        let (total, to_pair) = self.build(&orbits, &act, "X");
        self.cell_through(src, dst, total, &to_pair, pairs.space())
    }

    fn cell_through(&mut self, src: &GSpace, dst: &GSpace, total: GSet, to_pair: &FinMap, pairs: &FinSet) -> GCell1 {
        let coord = |k: usize| {
            let images = to_pair.images().iter().map(|&p| pairs.coords(p).expect("pairs")[k]).collect();
            images
        };
        let to_src = FinMap::new(total.set().clone(), src.space().space().clone(), coord(0)).expect("legs in range");
        let to_dst = FinMap::new(total.set().clone(), dst.space().space().clone(), coord(1)).expect("legs in range");
        let cell = Cell1::new(self.gen.ctx.clone(), src.space().clone(), dst.space().clone(), to_src, to_dst).expect("pairs lie over the base");
        self.gen.note("cell", || io::cell_to_json(&cell));
        GCell1::new(cell, src.clone(), dst.clone(), total).expect("legs are equivariant")
    }

    /// A fresh equivariant span `x` with the ends of `target` and a random
    /// 2-cell `x → target` that is equivariant for `h` (not necessarily for G).
    pub fn cell2_into(&mut self, target: &GCell1, h: &Subgroup) -> (GCell1, Cell2) {
        let orbits = self.random_orbits(target.total(), self.gen.bounds.total);
        let (total, psi) = self.build(&orbits, target.total(), "X");
        let legs = |leg: &FinMap| -> FinMap { leg.after(&psi).expect("composable") };
        let cell = Cell1::new(
            self.gen.ctx.clone(),
            target.cell().src().clone(),
            target.cell().dst().clone(),
            legs(target.cell().to_src()),
            legs(target.cell().to_dst()),
        )
        .expect("legs factor through the target");
        self.gen.note("cell", || io::cell_to_json(&cell));
        let x = GCell1::new(cell, target.src().clone(), target.dst().clone(), total.clone()).expect("equivariant legs");
        let on_h = total.restrict(h).expect("a subgroup of G");
        let tgt_h = target.total().restrict(h).expect("a subgroup of G");
        let mut images = vec![usize::MAX; total.len()];
        for orbit in on_h.orbits() {
            let z = orbit[0];
            let stab = on_h.stabilizer(z);
            let (ls, ld) = (target.cell().to_src(), target.cell().to_dst());
            let w0 = psi.image(z);
            let options: Vec<usize> = (0..tgt_h.len())
                .filter(|&w| ls.image(w) == ls.image(w0) && ld.image(w) == ld.image(w0))
                .filter(|&w| stab.iter().all(|&s| tgt_h.act(s, w) == w))
                .collect();
            let w = *options.choose(self.gen.rng).expect("psi itself is admissible");
            for s in 0..h.order() {
                images[on_h.act(s, z)] = tgt_h.act(s, w);
            }
        }
        let map = FinMap::new(total.set().clone(), target.total().set().clone(), images).expect("every orbit mapped");
        self.gen.note("2-cell", || io::map_to_json(&map));
        let phi = Cell2::new(x.cell().clone(), target.cell().clone(), map).expect("legs preserved");
        (x, phi)
    }

    /// A random parametrized G-set over `base`.
    pub fn param(&mut self, base: &GSpace) -> GParamSet {
        let orbits = self.random_orbits(base.action(), self.gen.bounds.total);
        let (total, proj) = self.build(&orbits, base.action(), "X");
        let param = ParamSet::new(total.set().clone(), base.space().clone(), proj).expect("projection to the base");
        self.gen.note("parametrized", || io::param_set_to_json(&param));
        GParamSet::new(param, total, base.clone()).expect("equivariant projection")
    }

    /// A random G-set on at most `max` points, over no base.
    pub fn gset(&mut self, max: usize) -> GSet {
        let point = GSet::trivial(self.group.clone(), FinSet::point());
        let orbits = self.random_orbits(&point, max);
        self.build(&orbits, &point, "S").0
    }

    pub fn subgroup(&mut self) -> Subgroup {
        self.subgroups.choose(self.gen.rng).expect("the trivial subgroup").clone()
    }
}

fn candidates(target: &GSpace, s: &Subgroup, b: usize) -> Vec<usize> {
    target
        .action()
        .fixed_indices(s)
        .into_iter()
        .filter(|&y| target.space().to_base().image(y) == b)
        .collect()
}

/// Draws a context: the point, or the two-point base when `fibered`.
pub fn context(fibered: bool) -> Context {
    if fibered {
        Context::over(two_point_base())
    } else {
        Context::absolute()
    }
}
