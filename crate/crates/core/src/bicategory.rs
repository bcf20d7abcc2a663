//! The bicategory of spans of finite sets with its shadow.
//!
//! A 1-cell from `A` to `C` is a finite set with legs to `A` and `C` that
//! agree over the ambient base. Coherence isomorphisms are given by element
//! formulas and validated as 2-cells on construction.

use crate::error::{Error, Result};
use crate::finset::{pullback, Bijection, Elem, FinMap, FinSet};
use crate::smbf::{fiber_product, Context, IndexedSpace, MultiSpan, ParamSet, SpaceMap};

/// A span `A ← X → C` over the ambient base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell1 {
    ctx: Context,
    src: IndexedSpace,
    dst: IndexedSpace,
    total: FinSet,
    to_src: FinMap,
    to_dst: FinMap,
}

impl Cell1 {
    pub fn new(
        ctx: Context,
        src: IndexedSpace,
        dst: IndexedSpace,
        to_src: FinMap,
        to_dst: FinMap,
    ) -> Result<Self> {
        ctx.check(&src)?;
        ctx.check(&dst)?;
        let total = to_src.source().clone();
        if to_dst.source() != &total {
            return Err(Error::EndpointMismatch("legs start at different sets".into()));
        }
        if to_src.target() != src.space() || to_dst.target() != dst.space() {
            return Err(Error::EndpointMismatch(format!(
                "legs land in {} and {}, endpoints are {} and {}",
                to_src.target().name(),
                to_dst.target().name(),
                src.space().name(),
                dst.space().name()
            )));
        }
        for x in 0..total.len() {
            if src.to_base().image(to_src.image(x)) != dst.to_base().image(to_dst.image(x)) {
                return Err(Error::ContextMismatch(format!(
                    "legs of {} lie over different base points",
                    total.elem(x)
                )));
            }
        }
        Ok(Cell1 {
            ctx,
            src,
            dst,
            total,
            to_src,
            to_dst,
        })
    }

    /// Reads a cell from a parametrized set over `src ×_B dst`.
    pub fn from_body(ctx: Context, src: IndexedSpace, dst: IndexedSpace, body: &ParamSet) -> Result<Self> {
        let base = fiber_product(&ctx, &[src.clone(), dst.clone()])?;
        if body.base() != &base {
            return Err(Error::EndpointMismatch(format!(
                "body lies over {}, expected {}",
                body.base().space().name(),
                base.space().name()
            )));
        }
        let mut buf = Vec::new();
        let (mut s, mut d) = (Vec::new(), Vec::new());
        for x in 0..body.len() {
            base.space().coords_into(body.proj().image(x), &mut buf);
            s.push(buf[0]);
            d.push(buf[1]);
        }
        let to_src = FinMap::new(body.total().clone(), src.space().clone(), s)?;
        let to_dst = FinMap::new(body.total().clone(), dst.space().clone(), d)?;
        Cell1::new(ctx, src, dst, to_src, to_dst)
    }

    /// The total set over `src ×_B dst`.
    pub fn body(&self) -> ParamSet {
        let base = fiber_product(&self.ctx, &[self.src.clone(), self.dst.clone()])
            .expect("endpoints share the context");
        let proj = FinMap::from_index_fn(self.total.clone(), base.space().clone(), |x| {
            base.space()
                .from_coords(&[self.to_src.image(x), self.to_dst.image(x)])
                .expect("legs agree over the base")
        })
        .expect("valid legs");
        ParamSet::new(self.total.clone(), base, proj).expect("valid body")
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn src(&self) -> &IndexedSpace {
        &self.src
    }

    pub fn dst(&self) -> &IndexedSpace {
        &self.dst
    }

    pub fn total(&self) -> &FinSet {
        &self.total
    }

    pub fn to_src(&self) -> &FinMap {
        &self.to_src
    }

    pub fn to_dst(&self) -> &FinMap {
        &self.to_dst
    }

    pub fn len(&self) -> usize {
        self.total.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total.is_empty()
    }

    /// The total set over the ambient base.
    pub fn total_space(&self) -> IndexedSpace {
        let to_base = self
            .src
            .to_base()
            .after(&self.to_src)
            .expect("leg lands in the source");
        IndexedSpace::new(self.total.clone(), to_base).expect("valid structure map")
    }

    pub fn is_endo(&self) -> bool {
        self.src == self.dst
    }

    /// Same legs, different total labels (e.g. after a bijection).
    pub fn transport(&self, along: &Bijection) -> Result<Cell1> {
        if along.source() != &self.total {
            return Err(Error::EndpointMismatch("transport along a foreign bijection".into()));
        }
        let back = along.backward();
        Cell1::new(
            self.ctx.clone(),
            self.src.clone(),
            self.dst.clone(),
            self.to_src.after(back)?,
            self.to_dst.after(back)?,
        )
    }
}

/// `U_A`: the diagonal span `A ← A → A`.
pub fn unit(a: &IndexedSpace) -> Cell1 {
    let id = FinMap::identity(a.space());
    Cell1::new(a.context(), a.clone(), a.clone(), id.clone(), id).expect("diagonal span")
}

/// `X ⊙ Y` for `X: A → E` and `Y: E → C`, elements `(x, y)` agreeing over `E`.
pub fn compose(x: &Cell1, y: &Cell1) -> Result<Cell1> {
    if x.ctx != y.ctx {
        return Err(Error::ContextMismatch("cells over different bases".into()));
    }
    if x.dst != y.src {
        return Err(Error::EndpointMismatch(format!(
            "cannot compose a cell ending at {} with one starting at {}",
            x.dst.space().name(),
            y.src.space().name()
        )));
    }
    let pb = pullback(&x.to_dst, &y.to_src)?;
    Cell1::new(
        x.ctx.clone(),
        x.src.clone(),
        y.dst.clone(),
        x.to_src.after(&pb.left)?,
        y.to_dst.after(&pb.right)?,
    )
}

/// Left-nested composite `((X1 ⊙ X2) ⊙ X3) ...`.
pub fn compose_all(cells: &[Cell1]) -> Result<Cell1> {
    let (first, rest) = cells
        .split_first()
        .ok_or_else(|| Error::Arity { expected: 1, got: 0 })?;
    rest.iter().try_fold(first.clone(), |acc, c| compose(&acc, c))
}

/// The multi-span `A×C ← A×E×C → (A×E) × (E×C)` whose action is `⊙`.
pub fn composition_span(a: &IndexedSpace, e: &IndexedSpace, c: &IndexedSpace) -> Result<MultiSpan> {
    let ctx = a.context();
    let apex = fiber_product(&ctx, &[a.clone(), e.clone(), c.clone()])?;
    let ac = fiber_product(&ctx, &[a.clone(), c.clone()])?;
    let ae = fiber_product(&ctx, &[a.clone(), e.clone()])?;
    let ec = fiber_product(&ctx, &[e.clone(), c.clone()])?;
    let leg = |target: &IndexedSpace, pick: [usize; 2]| -> Result<SpaceMap> {
        let mut buf = Vec::new();
        let map = FinMap::from_index_fn(apex.space().clone(), target.space().clone(), |i| {
            apex.space().coords_into(i, &mut buf);
            target.space().from_coords(&[buf[pick[0]], buf[pick[1]]]).unwrap()
        })?;
        SpaceMap::new(apex.clone(), target.clone(), map)
    };
    MultiSpan::new(ctx.clone(), leg(&ac, [0, 2])?, vec![leg(&ae, [0, 1])?, leg(&ec, [1, 2])?])
}

/// A map of spans with the same endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell2 {
    from: Cell1,
    to: Cell1,
    map: FinMap,
}

impl Cell2 {
    pub fn new(from: Cell1, to: Cell1, map: FinMap) -> Result<Self> {
        if from.src != to.src || from.dst != to.dst {
            return Err(Error::InvalidCell2("endpoints differ".into()));
        }
        if map.source() != &from.total || map.target() != &to.total {
            return Err(Error::InvalidCell2("map does not join the totals".into()));
        }
        for x in 0..from.len() {
            let y = map.image(x);
            if to.to_src.image(y) != from.to_src.image(x) || to.to_dst.image(y) != from.to_dst.image(x) {
                return Err(Error::InvalidCell2(format!(
                    "{} ↦ {} moves between fibers",
                    from.total.elem(x),
                    to.total.elem(y)
                )));
            }
        }
        Ok(Cell2 { from, to, map })
    }

    pub fn identity(x: &Cell1) -> Self {
        Cell2 {
            from: x.clone(),
            to: x.clone(),
            map: FinMap::identity(&x.total),
        }
    }

    pub fn from(&self) -> &Cell1 {
        &self.from
    }

    pub fn to(&self) -> &Cell1 {
        &self.to
    }

    pub fn map(&self) -> &FinMap {
        &self.map
    }

    /// Vertical composite `self ∘ first`.
    pub fn after(&self, first: &Cell2) -> Result<Cell2> {
        if first.to != self.from {
            return Err(Error::InvalidCell2("vertical composite of non-matching 2-cells".into()));
        }
        Ok(Cell2 {
            from: first.from.clone(),
            to: self.to.clone(),
            map: self.map.after(&first.map)?,
        })
    }

    /// Horizontal composite `φ ⊙ ψ : X ⊙ Y → X' ⊙ Y'`, `(x,y) ↦ (φx, ψy)`.
    pub fn hcomp(phi: &Cell2, psi: &Cell2) -> Result<Cell2> {
        let from = compose(&phi.from, &psi.from)?;
        let to = compose(&phi.to, &psi.to)?;
        let map = pair_map(&from.total, &to.total, &[&phi.map, &psi.map])?;
        Ok(Cell2 { from, to, map })
    }
}

/// The map `(u1, .., un) ↦ (m1 u1, .., mn un)` between sets whose elements
/// are tuples (subsets of products).
pub(crate) fn pair_map(source: &FinSet, target: &FinSet, maps: &[&FinMap]) -> Result<FinMap> {
    if maps.len() == 1 {
        return Ok(maps[0].clone());
    }
    let mut buf = Vec::new();
    let mut missing = None;
    let images = (0..source.len())
        .map(|i| {
            if !source.coords_into(i, &mut buf) {
                let items = source.elem(i).untuple(maps.len()).unwrap_or_default();
                buf = items
                    .iter()
                    .zip(maps)
                    .map(|(e, m)| m.source().index_of(e).unwrap_or(usize::MAX))
                    .collect();
            }
            for (c, m) in buf.iter_mut().zip(maps) {
                *c = if *c < m.source().len() { m.image(*c) } else { usize::MAX };
            }
            target.from_coords(&buf).unwrap_or_else(|| {
                missing.get_or_insert(i);
                0
            })
        })
        .collect();
    if let Some(i) = missing {
        return Err(Error::NotMember {
            set: target.name().to_string(),
            elem: format!("image of {}", source.elem(i)),
        });
    }
    FinMap::new(source.clone(), target.clone(), images)
}

/// An invertible 2-cell with its stored inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso2 {
    forward: Cell2,
    backward: Cell2,
}

impl Iso2 {
    pub fn new(forward: Cell2) -> Result<Self> {
        let inv = forward.map.inverse()?;
        let backward = Cell2::new(forward.to.clone(), forward.from.clone(), inv)?;
        Ok(Iso2 { forward, backward })
    }

    /// Builds the iso from an element formula; bijectivity and compatibility
    /// with both legs are checked.
    pub fn from_fn(from: &Cell1, to: &Cell1, f: impl FnMut(&Elem) -> Elem) -> Result<Self> {
        let map = FinMap::from_fn(from.total.clone(), to.total.clone(), f)?;
        Iso2::new(Cell2::new(from.clone(), to.clone(), map)?)
    }

    pub fn identity(x: &Cell1) -> Self {
        let id = Cell2::identity(x);
        Iso2 {
            forward: id.clone(),
            backward: id,
        }
    }

    pub fn forward(&self) -> &Cell2 {
        &self.forward
    }

    pub fn backward(&self) -> &Cell2 {
        &self.backward
    }

    pub fn from(&self) -> &Cell1 {
        &self.forward.from
    }

    pub fn to(&self) -> &Cell1 {
        &self.forward.to
    }

    pub fn inverse(&self) -> Iso2 {
        Iso2 {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Vertical composite `self ∘ first`.
    pub fn after(&self, first: &Iso2) -> Result<Iso2> {
        Ok(Iso2 {
            forward: self.forward.after(&first.forward)?,
            backward: first.backward.after(&self.backward)?,
        })
    }

    pub fn hcomp(a: &Iso2, b: &Iso2) -> Result<Iso2> {
        Ok(Iso2 {
            forward: Cell2::hcomp(&a.forward, &b.forward)?,
            backward: Cell2::hcomp(&a.backward, &b.backward)?,
        })
    }

    /// `self ⊙ id_Y`.
    pub fn whisker_right(&self, y: &Cell1) -> Result<Iso2> {
        Iso2::hcomp(self, &Iso2::identity(y))
    }

    /// `id_X ⊙ self`.
    pub fn whisker_left(&self, x: &Cell1) -> Result<Iso2> {
        Iso2::hcomp(&Iso2::identity(x), self)
    }
}

fn split(e: &Elem) -> (&Elem, &Elem) {
    e.as_pair().expect("composite elements are pairs")
}

/// `α : (X ⊙ Y) ⊙ Z ≅ X ⊙ (Y ⊙ Z)`, `((x,y),z) ↦ (x,(y,z))`.
pub fn associator(x: &Cell1, y: &Cell1, z: &Cell1) -> Result<Iso2> {
    let from = compose(&compose(x, y)?, z)?;
    let to = compose(x, &compose(y, z)?)?;
    Iso2::from_fn(&from, &to, |e| {
        let (xy, z) = split(e);
        let (x, y) = split(xy);
        Elem::pair(x.clone(), Elem::pair(y.clone(), z.clone()))
    })
}

/// `ℓ : U_A ⊙ X ≅ X`, `(a, x) ↦ x`.
pub fn left_unitor(x: &Cell1) -> Result<Iso2> {
    let from = compose(&unit(&x.src), x)?;
    Iso2::from_fn(&from, x, |e| split(e).1.clone())
}

/// `r : X ⊙ U_C ≅ X`, `(x, c) ↦ x`.
pub fn right_unitor(x: &Cell1) -> Result<Iso2> {
    let from = compose(x, &unit(&x.dst))?;
    Iso2::from_fn(&from, x, |e| split(e).0.clone())
}

/// `⟨X⟩`: the elements whose two legs agree.
pub fn shadow(x: &Cell1) -> Result<FinSet> {
    if !x.is_endo() {
        return Err(Error::NotEndo {
            src: x.src.space().name().to_string(),
            dst: x.dst.space().name().to_string(),
        });
    }
    Ok(x.total.filter(|i| x.to_src.image(i) == x.to_dst.image(i)))
}

/// `⟨φ⟩`, the restriction of a 2-cell between endo-cells to shadows.
pub fn shadow_on_2cells(phi: &Cell2) -> Result<FinMap> {
    let from = shadow(&phi.from)?;
    let to = shadow(&phi.to)?;
    let mut missing = None;
    let images = (0..from.len())
        .map(|i| {
            let x = from.position_in(&phi.from.total, i).expect("shadow is a subset");
            to.locate(&phi.to.total, phi.map.image(x)).unwrap_or_else(|| {
                missing.get_or_insert(i);
                0
            })
        })
        .collect();
    if missing.is_some() {
        return Err(Error::InvalidCell2("2-cell does not preserve the shadow".into()));
    }
    FinMap::new(from, to, images)
}

pub fn shadow_of_iso(phi: &Iso2) -> Result<Bijection> {
    Bijection::new(shadow_on_2cells(&phi.forward)?)
}

/// `θ : ⟨X ⊙ Y⟩ ≅ ⟨Y ⊙ X⟩`, `(x, y) ↦ (y, x)`.
pub fn rotator(x: &Cell1, y: &Cell1) -> Result<Bijection> {
    let from = shadow(&compose(x, y)?)?;
    let to = shadow(&compose(y, x)?)?;
    Bijection::from_fn(from, to, |e| {
        let (x, y) = split(e);
        Elem::pair(y.clone(), x.clone())
    })
}

/// A binary bracketing of the cells `0..n`, used to move between different
/// parenthesizations of one composite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf,
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    /// `((0 ⊙ 1) ⊙ 2) ...`
    pub fn left(n: usize) -> Self {
        assert!(n >= 1, "a bracketing needs at least one cell");
        (1..n).fold(Bracketing::Leaf, |acc, _| {
            Bracketing::Node(Box::new(acc), Box::new(Bracketing::Leaf))
        })
    }

    /// `0 ⊙ (1 ⊙ (2 ⊙ ...))`
    pub fn right(n: usize) -> Self {
        assert!(n >= 1, "a bracketing needs at least one cell");
        (1..n).fold(Bracketing::Leaf, |acc, _| {
            Bracketing::Node(Box::new(Bracketing::Leaf), Box::new(acc))
        })
    }

    pub fn node(l: Bracketing, r: Bracketing) -> Self {
        Bracketing::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn compose(&self, cells: &[Cell1]) -> Result<Cell1> {
        if cells.len() != self.leaves() {
            return Err(Error::Arity {
                expected: self.leaves(),
                got: cells.len(),
            });
        }
        match self {
            Bracketing::Leaf => Ok(cells[0].clone()),
            Bracketing::Node(l, r) => {
                let k = l.leaves();
                compose(&l.compose(&cells[..k])?, &r.compose(&cells[k..])?)
            }
        }
    }

    fn flatten_into(&self, e: &Elem, out: &mut Vec<Elem>) {
        match self {
            Bracketing::Leaf => out.push(e.clone()),
            Bracketing::Node(l, r) => {
                let (a, b) = split(e);
                l.flatten_into(a, out);
                r.flatten_into(b, out);
            }
        }
    }

    fn assemble(&self, items: &mut std::slice::Iter<'_, Elem>) -> Elem {
        match self {
            Bracketing::Leaf => items.next().expect("enough items").clone(),
            Bracketing::Node(l, r) => {
                let a = l.assemble(items);
                Elem::pair(a, r.assemble(items))
            }
        }
    }
}

/// The canonical iso between two bracketings of one composite, given by
/// flattening and regrouping elements.
pub fn rebracket(cells: &[Cell1], from: &Bracketing, to: &Bracketing) -> Result<Iso2> {
    let source = from.compose(cells)?;
    let target = to.compose(cells)?;
    let mut flat = Vec::with_capacity(cells.len());
    Iso2::from_fn(&source, &target, |e| {
        flat.clear();
        from.flatten_into(e, &mut flat);
        to.assemble(&mut flat.iter())
    })
}

/// Where two parallel maps disagree.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Divergence {
    pub element: String,
    pub left: String,
    pub right: String,
}

/// `None` when the diagram commutes.
pub type Verdict = Option<Divergence>;

pub fn compare_maps(left: &FinMap, right: &FinMap) -> Verdict {
    if left.source() != right.source() || left.target() != right.target() {
        return Some(Divergence {
            element: "<endpoints>".into(),
            left: format!("{}→{}", left.source().name(), left.target().name()),
            right: format!("{}→{}", right.source().name(), right.target().name()),
        });
    }
    (0..left.source().len())
        .find(|&i| left.image(i) != right.image(i))
        .map(|i| Divergence {
            element: left.source().elem(i).to_string(),
            left: left.target().elem(left.image(i)).to_string(),
            right: right.target().elem(right.image(i)).to_string(),
        })
}

pub fn compare_cells(left: &Cell2, right: &Cell2) -> Verdict {
    if left.from != right.from || left.to != right.to {
        return Some(Divergence {
            element: "<endpoints>".into(),
            left: format!("{} → {}", left.from.total.name(), left.to.total.name()),
            right: format!("{} → {}", right.from.total.name(), right.to.total.name()),
        });
    }
    compare_maps(&left.map, &right.map)
}

/// Pentagon: `α ∘ α = (id ⊙ α) ∘ α ∘ (α ⊙ id)` on `((W⊙X)⊙Y)⊙Z`.
pub fn pentagon(w: &Cell1, x: &Cell1, y: &Cell1, z: &Cell1) -> Result<Verdict> {
    let wx = compose(w, x)?;
    let yz = compose(y, z)?;
    let xy = compose(x, y)?;
    let short = associator(w, x, &yz)?.after(&associator(&wx, y, z)?)?;
    let long = associator(w, x, y)?.whisker_right(z)?;
    let long = associator(w, &xy, z)?.after(&long)?;
    let long = associator(x, y, z)?.whisker_left(w)?.after(&long)?;
    Ok(compare_cells(short.forward(), long.forward()))
}

/// Triangle: `r ⊙ id = (id ⊙ ℓ) ∘ α` on `(X ⊙ U) ⊙ Y`.
pub fn triangle(x: &Cell1, y: &Cell1) -> Result<Verdict> {
    let u = unit(&x.dst);
    let left = right_unitor(x)?.whisker_right(y)?;
    let right = left_unitor(y)?.whisker_left(x)?.after(&associator(x, &u, y)?)?;
    Ok(compare_cells(left.forward(), right.forward()))
}

/// Shadow associator axiom, from `⟨(X⊙Y)⊙Z⟩` to `⟨Y⊙(Z⊙X)⟩`:
/// `θ ∘ α⁻¹ ∘ θ = α ∘ θ ∘ α`.
pub fn shadow_assoc(x: &Cell1, y: &Cell1, z: &Cell1) -> Result<Verdict> {
    let xy = compose(x, y)?;
    let yz = compose(y, z)?;
    let zx = compose(z, x)?;
    let down = rotator(&xy, z)?;
    let down = shadow_of_iso(&associator(z, x, y)?.inverse())?.after(&down)?;
    let down = rotator(&zx, y)?.after(&down)?;
    let across = shadow_of_iso(&associator(x, y, z)?)?;
    let across = rotator(x, &yz)?.after(&across)?;
    let across = shadow_of_iso(&associator(y, z, x)?)?.after(&across)?;
    Ok(compare_maps(down.forward(), across.forward()))
}

/// Shadow unitor axiom: `⟨r⟩ = ⟨ℓ⟩ ∘ θ` on `⟨X ⊙ U_A⟩` and
/// `⟨ℓ⟩ = ⟨r⟩ ∘ θ` on `⟨U_A ⊙ X⟩`.
pub fn shadow_unitor(x: &Cell1) -> Result<Verdict> {
    let u = unit(&x.src);
    let r = shadow_of_iso(&right_unitor(x)?)?;
    let l = shadow_of_iso(&left_unitor(x)?)?;
    let via_l = l.after(&rotator(x, &u)?)?;
    if let Some(d) = compare_maps(r.forward(), via_l.forward()) {
        return Ok(Some(d));
    }
    let via_r = r.after(&rotator(&u, x)?)?;
    Ok(compare_maps(l.forward(), via_r.forward()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smbf::Context;

    fn space(name: &str, prefix: &str, n: usize) -> IndexedSpace {
        Context::absolute().space(FinSet::numbered(name, prefix, n)).unwrap()
    }

    /// A span given by fiber counts `counts[a][c]`.
    fn span_with_counts(src: &IndexedSpace, dst: &IndexedSpace, counts: &[&[usize]], tag: &str) -> Cell1 {
        let mut elems = Vec::new();
        let (mut s, mut d) = (Vec::new(), Vec::new());
        for (a, row) in counts.iter().enumerate() {
            for (c, &n) in row.iter().enumerate() {
                for k in 0..n {
                    elems.push(Elem::atom(&format!("{tag}{a}{c}{k}")));
                    s.push(a);
                    d.push(c);
                }
            }
        }
        let total = FinSet::new(tag, elems).unwrap();
        Cell1::new(
            Context::absolute(),
            src.clone(),
            dst.clone(),
            FinMap::new(total.clone(), src.space().clone(), s).unwrap(),
            FinMap::new(total, dst.space().clone(), d).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn units() {
        assert_eq!(unit(&Context::absolute().base_space()).len(), 1);
        let a = space("A", "a", 3);
        let u = unit(&a);
        assert_eq!(u.len(), 3);
        assert!((0..3).all(|i| u.to_src().image(i) == u.to_dst().image(i)));
        assert!(unit(&space("E", "e", 0)).is_empty());
    }

    #[test]
    fn composite_counts_multiply_like_matrices() {
        let a = space("A", "a", 1);
        let b = space("B", "b", 2);
        let c = space("C", "c", 1);
        let x = span_with_counts(&a, &b, &[&[1, 2]], "x");
        let y = span_with_counts(&b, &c, &[&[3], &[1]], "y");
        assert_eq!(compose(&x, &y).unwrap().len(), 5);
    }

    #[test]
    fn empty_middle_gives_empty_composite() {
        let a = space("A", "a", 2);
        let e = space("E", "e", 0);
        let x = span_with_counts(&a, &e, &[&[], &[]], "x");
        let y = span_with_counts(&e, &a, &[], "y");
        assert!(compose(&x, &y).unwrap().is_empty());
    }

    #[test]
    fn composition_rejects_mismatched_endpoints() {
        let a = space("A", "a", 1);
        let b = space("B", "b", 2);
        let x = span_with_counts(&a, &b, &[&[1, 0]], "x");
        assert!(matches!(compose(&x, &x), Err(Error::EndpointMismatch(_))));
    }

    #[test]
    fn composite_agrees_with_the_action_of_the_composition_span() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 2);
        let c = space("C", "c", 2);
        let x = span_with_counts(&a, &b, &[&[1, 2], &[0, 1]], "x");
        let y = span_with_counts(&b, &c, &[&[1, 1], &[2, 0]], "y");
        let xy = compose(&x, &y).unwrap();
        let acted = composition_span(&a, &b, &c)
            .unwrap()
            .act(&[x.body(), y.body()])
            .unwrap();
        assert_eq!(acted.fiber_sizes(), xy.body().fiber_sizes());
        // (b, (x, y)) ↦ (x, y) is the canonical bijection.
        let canon = Bijection::from_fn(acted.total().clone(), xy.total().clone(), |e| {
            e.as_pair().unwrap().1.clone()
        })
        .unwrap();
        for i in 0..acted.len() {
            assert_eq!(xy.body().proj().image(canon.forward().image(i)), acted.proj().image(i));
        }
    }

    #[test]
    fn associator_rebrackets() {
        let a = space("A", "a", 1);
        let x = span_with_counts(&a, &a, &[&[1]], "x");
        let y = span_with_counts(&a, &a, &[&[1]], "y");
        let z = span_with_counts(&a, &a, &[&[1]], "z");
        let alpha = associator(&x, &y, &z).unwrap();
        let e = alpha.from().total().elem(0);
        let expected = Elem::pair(
            Elem::atom("x000"),
            Elem::pair(Elem::atom("y000"), Elem::atom("z000")),
        );
        assert_eq!(alpha.forward().map().apply(&e), Some(expected));
    }

    #[test]
    fn unitors_preserve_size() {
        let a = space("A", "a", 2);
        let c = space("C", "c", 3);
        let x = span_with_counts(&a, &c, &[&[1, 0, 2], &[0, 3, 0]], "x");
        assert_eq!(left_unitor(&x).unwrap().from().len(), x.len());
        assert_eq!(right_unitor(&x).unwrap().from().len(), x.len());
        let empty = span_with_counts(&a, &c, &[&[0, 0, 0], &[0, 0, 0]], "e");
        assert!(left_unitor(&empty).unwrap().from().is_empty());
    }

    #[test]
    fn shadows() {
        let a = space("A", "a", 3);
        assert_eq!(shadow(&unit(&a)).unwrap().len(), 3);
        // Graph of the permutation (1)(2 3).
        let graph = span_with_counts(&a, &a, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]], "g");
        assert_eq!(shadow(&graph).unwrap().len(), 1);
        let b = space("B", "b", 1);
        let off = span_with_counts(&a, &b, &[&[1], &[0], &[0]], "o");
        assert!(matches!(shadow(&off), Err(Error::NotEndo { .. })));
    }

    #[test]
    fn rotator_is_an_involution() {
        let a = space("A", "a", 2);
        let e = space("E", "e", 2);
        let x = span_with_counts(&a, &e, &[&[1, 2], &[1, 0]], "x");
        let y = span_with_counts(&e, &a, &[&[1, 1], &[2, 1]], "y");
        let th = rotator(&x, &y).unwrap();
        let back = rotator(&y, &x).unwrap();
        assert_eq!(th.source().len(), th.target().len());
        let round = back.after(&th).unwrap();
        assert_eq!(round.forward(), &FinMap::identity(th.source()));
    }

    #[test]
    fn named_diagrams_commute_on_a_small_example() {
        let a = space("A", "a", 2);
        let x = span_with_counts(&a, &a, &[&[1, 1], &[0, 2]], "x");
        let y = span_with_counts(&a, &a, &[&[0, 1], &[1, 1]], "y");
        let z = span_with_counts(&a, &a, &[&[2, 0], &[1, 0]], "z");
        assert_eq!(pentagon(&x, &y, &z, &x).unwrap(), None);
        assert_eq!(triangle(&x, &y).unwrap(), None);
        assert_eq!(shadow_assoc(&x, &y, &z).unwrap(), None);
        assert_eq!(shadow_unitor(&x).unwrap(), None);
        let u = unit(&a);
        assert_eq!(triangle(&u, &u).unwrap(), None);
    }

    #[test]
    fn a_perturbed_leg_is_caught() {
        let a = space("A", "a", 1);
        let x = span_with_counts(&a, &a, &[&[2]], "x");
        let y = span_with_counts(&a, &a, &[&[1]], "y");
        let alpha = associator(&x, &y, &y).unwrap();
        // Precompose with the swap of the two elements of (X⊙Y)⊙Y.
        let from = alpha.from().clone();
        let swap = Cell2::new(from.clone(), from, FinMap::new(alpha.from().total().clone(), alpha.from().total().clone(), vec![1, 0]).unwrap()).unwrap();
        let bent = alpha.forward().after(&swap).unwrap();
        let d = compare_cells(alpha.forward(), &bent).unwrap();
        assert_eq!(d.element, "((x000,y000),y000)");
    }

    #[test]
    fn rebracketing_matches_associator_chains() {
        let a = space("A", "a", 2);
        let x = span_with_counts(&a, &a, &[&[1, 1], &[0, 2]], "x");
        let y = span_with_counts(&a, &a, &[&[0, 1], &[1, 1]], "y");
        let z = span_with_counts(&a, &a, &[&[2, 0], &[1, 0]], "z");
        let cells = [x.clone(), y.clone(), z.clone()];
        let re = rebracket(&cells, &Bracketing::left(3), &Bracketing::right(3)).unwrap();
        assert_eq!(compare_cells(re.forward(), associator(&x, &y, &z).unwrap().forward()), None);

        // Four cells: left-nested to right-nested is α ∘ α.
        let cells = [x.clone(), y.clone(), z.clone(), x.clone()];
        let re = rebracket(&cells, &Bracketing::left(4), &Bracketing::right(4)).unwrap();
        let yz = compose(&y, &z).unwrap();
        let chain = associator(&compose(&x, &y).unwrap(), &z, &x).unwrap();
        let chain = associator(&x, &y, &compose(&z, &x).unwrap()).unwrap().after(&chain).unwrap();
        assert_eq!(compare_cells(re.forward(), chain.forward()), None);
        let other = associator(&x, &yz, &x).unwrap();
        assert_ne!(other.from(), re.from());
    }
}
