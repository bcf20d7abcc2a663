//! Finite sets with nested-pair elements, and total functions between them.
//!
//! A [`FinSet`] is immutable and cheap to clone. Products and subsets are kept
//! structured (elements are materialized on demand), so large cartesian
//! products cost nothing until their elements are inspected.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::de::{self, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element: a string atom or an ordered pair of elements.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Atom(Arc<str>),
    Pair(Arc<(Elem, Elem)>),
}

impl Elem {
    pub fn atom(name: &str) -> Self {
        Elem::Atom(Arc::from(name))
    }

    /// The element of the one-point set.
    pub fn star() -> Self {
        Elem::atom("*")
    }

    pub fn pair(left: Elem, right: Elem) -> Self {
        Elem::Pair(Arc::new((left, right)))
    }

    pub fn as_pair(&self) -> Option<(&Elem, &Elem)> {
        match self {
            Elem::Pair(p) => Some((&p.0, &p.1)),
            Elem::Atom(_) => None,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Elem::Atom(a) => Some(a),
            Elem::Pair(_) => None,
        }
    }

    /// Left-nested tuple `((x1,x2),x3)...`; one item is returned bare and the
    /// empty tuple is `*`.
    pub fn tuple<I: IntoIterator<Item = Elem>>(items: I) -> Self {
        let mut iter = items.into_iter();
        let Some(first) = iter.next() else {
            return Elem::star();
        };
        iter.fold(first, Elem::pair)
    }

    /// Inverse of [`Elem::tuple`] for a known arity.
    pub fn untuple(&self, arity: usize) -> Option<Vec<Elem>> {
        match arity {
            0 => Some(Vec::new()),
            1 => Some(vec![self.clone()]),
            n => {
                let (rest, last) = self.as_pair()?;
                let mut items = rest.untuple(n - 1)?;
                items.push(last.clone());
                Some(items)
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Atom(a) => f.write_str(a),
            Elem::Pair(p) => write!(f, "({},{})", p.0, p.1),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Elem::Atom(a) => serializer.serialize_str(a),
            Elem::Pair(p) => (&p.0, &p.1).serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ElemVisitor;
        impl<'de> Visitor<'de> for ElemVisitor {
            type Value = Elem;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a string or a two-element array")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Elem, E> {
                Ok(Elem::atom(v))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Elem, A::Error> {
                let left: Elem = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let right: Elem = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Elem::pair(left, right))
            }
        }
        deserializer.deserialize_any(ElemVisitor)
    }
}

/// A named finite set. Equality is structural on the element sequence
/// (order included); names are labels only.
#[derive(Clone)]
pub struct FinSet(Arc<SetRepr>);

struct SetRepr {
    name: String,
    len: usize,
    kind: Kind,
}

enum Kind {
    Explicit {
        elems: Vec<Elem>,
        index: HashMap<Elem, usize>,
    },
    /// Lexicographic product, first factor slowest.
    Product {
        factors: Vec<FinSet>,
        strides: Vec<usize>,
    },
    /// Strictly increasing indices into `ambient`.
    Subset { ambient: FinSet, picks: Vec<usize> },
}

impl FinSet {
    pub fn new(name: impl Into<String>, elems: Vec<Elem>) -> Result<Self> {
        let name = name.into();
        let mut index = HashMap::with_capacity(elems.len());
        for (i, e) in elems.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement {
                    set: name,
                    elem: e.to_string(),
                });
            }
        }
        Ok(FinSet(Arc::new(SetRepr {
            name,
            len: elems.len(),
            kind: Kind::Explicit { elems, index },
        })))
    }

    pub fn atoms<S: AsRef<str>>(name: impl Into<String>, atoms: &[S]) -> Result<Self> {
        FinSet::new(name, atoms.iter().map(|a| Elem::atom(a.as_ref())).collect())
    }

    /// `{prefix0, prefix1, ...}` with `n` elements.
    pub fn numbered(name: impl Into<String>, prefix: &str, n: usize) -> Self {
        let elems = (0..n).map(|i| Elem::atom(&format!("{prefix}{i}"))).collect();
        FinSet::new(name, elems).expect("numbered atoms are distinct")
    }

    /// The one-point set `{*}`.
    pub fn point() -> Self {
        FinSet::new("pt", vec![Elem::star()]).expect("one element")
    }

    pub fn empty(name: impl Into<String>) -> Self {
        FinSet::new(name, Vec::new()).expect("no elements")
    }

    /// Cartesian product with left-nested pair elements. No factors gives
    /// `{*}`; a single factor is returned unchanged.
    pub fn product(factors: Vec<FinSet>) -> Self {
        match factors.len() {
            0 => FinSet::point(),
            1 => factors.into_iter().next().unwrap(),
            _ => {
                let name = factors
                    .iter()
                    .map(|f| f.name().to_string())
                    .collect::<Vec<_>>()
                    .join("×");
                let mut strides = vec![1; factors.len()];
                for k in (0..factors.len() - 1).rev() {
                    strides[k] = strides[k + 1] * factors[k + 1].len();
                }
                let len = factors.iter().map(FinSet::len).product();
                FinSet(Arc::new(SetRepr {
                    name,
                    len,
                    kind: Kind::Product { factors, strides },
                }))
            }
        }
    }

    /// The subset at the given strictly increasing positions. Keeping every
    /// position returns `self`.
    pub fn subset(&self, picks: Vec<usize>) -> Self {
        debug_assert!(picks.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(picks.last().map_or(true, |&p| p < self.len()));
        if picks.len() == self.len() {
            return self.clone();
        }
        FinSet(Arc::new(SetRepr {
            name: self.name().to_string(),
            len: picks.len(),
            kind: Kind::Subset {
                ambient: self.clone(),
                picks,
            },
        }))
    }

    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let picks = (0..self.len()).filter(|&i| keep(i)).collect();
        self.subset(picks)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let kind = match &self.0.kind {
            Kind::Explicit { elems, index } => Kind::Explicit {
                elems: elems.clone(),
                index: index.clone(),
            },
            Kind::Product { factors, strides } => Kind::Product {
                factors: factors.clone(),
                strides: strides.clone(),
            },
            Kind::Subset { ambient, picks } => Kind::Subset {
                ambient: ambient.clone(),
                picks: picks.clone(),
            },
        };
        FinSet(Arc::new(SetRepr {
            name: name.into(),
            len: self.len(),
            kind,
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn len(&self) -> usize {
        self.0.len
    }

    pub fn is_empty(&self) -> bool {
        self.0.len == 0
    }

    pub fn elem(&self, i: usize) -> Elem {
        match &self.0.kind {
            Kind::Explicit { elems, .. } => elems[i].clone(),
            Kind::Product { factors, strides } => {
                let mut rest = i;
                let mut items = Vec::with_capacity(factors.len());
                for (f, s) in factors.iter().zip(strides) {
                    items.push(f.elem(rest / s));
                    rest %= s;
                }
                Elem::tuple(items)
            }
            Kind::Subset { ambient, picks } => ambient.elem(picks[i]),
        }
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        match &self.0.kind {
            Kind::Explicit { index, .. } => index.get(e).copied(),
            Kind::Product { factors, strides } => {
                let items = e.untuple(factors.len())?;
                let mut idx = 0;
                for ((f, s), item) in factors.iter().zip(strides).zip(&items) {
                    idx += f.index_of(item)? * s;
                }
                Some(idx)
            }
            Kind::Subset { ambient, picks } => {
                let a = ambient.index_of(e)?;
                picks.binary_search(&a).ok()
            }
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.index_of(e).is_some()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.len()).map(move |i| self.elem(i))
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    /// Factors when this set is a product (or a subset of one).
    pub fn factors(&self) -> Option<&[FinSet]> {
        match &self.0.kind {
            Kind::Product { factors, .. } => Some(factors),
            Kind::Subset { ambient, .. } => ambient.factors(),
            Kind::Explicit { .. } => None,
        }
    }

    /// Product coordinates of element `i`, for sets built as (subsets of)
    /// products.
    pub fn coords(&self, i: usize) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        self.coords_into(i, &mut out).then_some(out)
    }

    pub fn coords_into(&self, i: usize, out: &mut Vec<usize>) -> bool {
        match &self.0.kind {
            Kind::Product { strides, .. } => {
                out.clear();
                let mut rest = i;
                for s in strides {
                    out.push(rest / s);
                    rest %= s;
                }
                true
            }
            Kind::Subset { ambient, picks } => ambient.coords_into(picks[i], out),
            Kind::Explicit { .. } => false,
        }
    }

    /// Index of the element with the given product coordinates, if present.
    pub fn from_coords(&self, coords: &[usize]) -> Option<usize> {
        match &self.0.kind {
            Kind::Product { strides, factors } => {
                if coords.len() != strides.len() {
                    return None;
                }
                let mut idx = 0;
                for ((c, s), f) in coords.iter().zip(strides).zip(factors) {
                    if *c >= f.len() {
                        return None;
                    }
                    idx += c * s;
                }
                Some(idx)
            }
            Kind::Subset { ambient, picks } => {
                let a = ambient.from_coords(coords)?;
                picks.binary_search(&a).ok()
            }
            Kind::Explicit { .. } => None,
        }
    }

    /// Position in `self` of element `parent_idx` of `parent`, where `self`
    /// is expected to be `parent` or a subset of it.
    pub fn locate(&self, parent: &FinSet, parent_idx: usize) -> Option<usize> {
        if Arc::ptr_eq(&self.0, &parent.0) {
            return Some(parent_idx);
        }
        if let Kind::Subset { ambient, picks } = &self.0.kind {
            if Arc::ptr_eq(&ambient.0, &parent.0) {
                return picks.binary_search(&parent_idx).ok();
            }
        }
        self.index_of(&parent.elem(parent_idx))
    }

    /// Position in `parent` of element `i` of `self`, where `self` is
    /// expected to be `parent` or a subset of it.
    pub fn position_in(&self, parent: &FinSet, i: usize) -> Option<usize> {
        if Arc::ptr_eq(&self.0, &parent.0) {
            return Some(i);
        }
        if let Kind::Subset { ambient, picks } = &self.0.kind {
            if Arc::ptr_eq(&ambient.0, &parent.0) {
                return Some(picks[i]);
            }
        }
        parent.index_of(&self.elem(i))
    }

    pub fn ptr_eq(&self, other: &FinSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Product { factors: a, .. }, Kind::Product { factors: b, .. })
                if a.len() == b.len() =>
            {
                a == b
            }
            (
                Kind::Subset {
                    ambient: a,
                    picks: pa,
                },
                Kind::Subset {
                    ambient: b,
                    picks: pb,
                },
            ) if pa == pb && a == b => true,
            _ => (0..self.len()).all(|i| self.elem(i) == other.elem(i)),
        }
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.name())?;
        for (k, e) in self.iter().take(16).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        if self.len() > 16 {
            write!(f, ", ... ({} total)", self.len())?;
        }
        f.write_str("}")
    }
}

/// A total function between finite sets, stored as target indices.
#[derive(Clone)]
pub struct FinMap {
    source: FinSet,
    target: FinSet,
    images: Arc<[usize]>,
}

impl FinMap {
    pub fn new(source: FinSet, target: FinSet, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::NotTotal {
                elem: format!("{} images for {} elements", images.len(), source.len()),
            });
        }
        if let Some(i) = images.iter().position(|&t| t >= target.len()) {
            return Err(Error::NotMember {
                set: target.name().to_string(),
                elem: format!("image #{} of {}", images[i], source.elem(i)),
            });
        }
        Ok(FinMap {
            source,
            target,
            images: images.into(),
        })
    }

    pub fn from_fn(
        source: FinSet,
        target: FinSet,
        mut f: impl FnMut(&Elem) -> Elem,
    ) -> Result<Self> {
        let mut images = Vec::with_capacity(source.len());
        for e in source.iter() {
            let img = f(&e);
            let t = target.index_of(&img).ok_or_else(|| Error::NotMember {
                set: target.name().to_string(),
                elem: img.to_string(),
            })?;
            images.push(t);
        }
        FinMap::new(source, target, images)
    }

    pub fn from_index_fn(
        source: FinSet,
        target: FinSet,
        f: impl FnMut(usize) -> usize,
    ) -> Result<Self> {
        let images = (0..source.len()).map(f).collect();
        FinMap::new(source, target, images)
    }

    /// Builds a map from an association list, which must mention every source
    /// element exactly once.
    pub fn from_pairs(source: FinSet, target: FinSet, pairs: &[(Elem, Elem)]) -> Result<Self> {
        let mut images: Vec<Option<usize>> = vec![None; source.len()];
        for (x, y) in pairs {
            let i = source.index_of(x).ok_or_else(|| Error::NotMember {
                set: source.name().to_string(),
                elem: x.to_string(),
            })?;
            let j = target.index_of(y).ok_or_else(|| Error::NotMember {
                set: target.name().to_string(),
                elem: y.to_string(),
            })?;
            if images[i].replace(j).is_some() {
                return Err(Error::MultipleImages { elem: x.to_string() });
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::NotTotal { elem: source.elem(i).to_string() }))
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(source, target, images)
    }

    pub fn identity(set: &FinSet) -> Self {
        FinMap {
            source: set.clone(),
            target: set.clone(),
            images: (0..set.len()).collect(),
        }
    }

    /// The constant map onto element `idx` of `target`.
    pub fn constant(source: &FinSet, target: &FinSet, idx: usize) -> Result<Self> {
        FinMap::new(source.clone(), target.clone(), vec![idx; source.len()])
    }

    pub fn source(&self) -> &FinSet {
        &self.source
    }

    pub fn target(&self) -> &FinSet {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn apply(&self, e: &Elem) -> Option<Elem> {
        let i = self.source.index_of(e)?;
        Some(self.target.elem(self.images[i]))
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        (0..self.source.len())
            .map(|i| (self.source.elem(i), self.target.elem(self.images[i])))
            .collect()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinMap) -> Result<FinMap> {
        compose(self, first)
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    /// Two distinct source elements with the same image, if any.
    pub fn injectivity_witness(&self) -> Option<(Elem, Elem)> {
        let mut seen: Vec<Option<usize>> = vec![None; self.target.len()];
        for (i, &t) in self.images.iter().enumerate() {
            if let Some(prev) = seen[t] {
                return Some((self.source.elem(prev), self.source.elem(i)));
            }
            seen[t] = Some(i);
        }
        None
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }

    pub fn inverse(&self) -> Result<FinMap> {
        if let Some((a, b)) = self.injectivity_witness() {
            return Err(Error::NotBijective(format!("{a} and {b} have the same image")));
        }
        if self.source.len() != self.target.len() {
            return Err(Error::NotBijective(format!(
                "{} elements onto {}",
                self.source.len(),
                self.target.len()
            )));
        }
        let mut inv = vec![0; self.target.len()];
        for (i, &t) in self.images.iter().enumerate() {
            inv[t] = i;
        }
        FinMap::new(self.target.clone(), self.source.clone(), inv)
    }
}

impl PartialEq for FinMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.source == other.source && self.target == other.target
    }
}

impl Eq for FinMap {}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {{", self.source.name(), self.target.name())?;
        for (k, (x, y)) in self.pairs().into_iter().take(16).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}↦{y}")?;
        }
        f.write_str("}")
    }
}

/// A bijection with its stored inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bijection {
    forward: FinMap,
    backward: FinMap,
}

impl Bijection {
    pub fn new(forward: FinMap) -> Result<Self> {
        let backward = forward.inverse()?;
        Ok(Bijection { forward, backward })
    }

    pub fn from_fn(
        source: FinSet,
        target: FinSet,
        f: impl FnMut(&Elem) -> Elem,
    ) -> Result<Self> {
        Bijection::new(FinMap::from_fn(source, target, f)?)
    }

    pub fn identity(set: &FinSet) -> Self {
        let id = FinMap::identity(set);
        Bijection {
            forward: id.clone(),
            backward: id,
        }
    }

    pub fn forward(&self) -> &FinMap {
        &self.forward
    }

    pub fn backward(&self) -> &FinMap {
        &self.backward
    }

    pub fn source(&self) -> &FinSet {
        self.forward.source()
    }

    pub fn target(&self) -> &FinSet {
        self.forward.target()
    }

    pub fn inverse(&self) -> Bijection {
        Bijection {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Bijection) -> Result<Bijection> {
        Ok(Bijection {
            forward: self.forward.after(&first.forward)?,
            backward: first.backward.after(&self.backward)?,
        })
    }
}

/// `g ∘ f`, defined when `f.target` equals `g.source`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.target != g.source {
        return Err(Error::NotComposable {
            left: f.target.name().to_string(),
            right: g.source.name().to_string(),
        });
    }
    let images = f.images.iter().map(|&i| g.images[i]).collect();
    FinMap::new(f.source.clone(), g.target.clone(), images)
}

/// A product set together with its projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub set: FinSet,
    pub projections: Vec<FinMap>,
}

pub fn cartesian_product(sets: &[FinSet]) -> Product {
    let set = FinSet::product(sets.to_vec());
    let projections = match sets.len() {
        0 => Vec::new(),
        1 => vec![FinMap::identity(&set)],
        _ => {
            let mut buf = Vec::new();
            let mut coords: Vec<Vec<usize>> = vec![Vec::with_capacity(set.len()); sets.len()];
            for i in 0..set.len() {
                set.coords_into(i, &mut buf);
                for (k, c) in buf.iter().enumerate() {
                    coords[k].push(*c);
                }
            }
            coords
                .into_iter()
                .zip(sets)
                .map(|(images, s)| FinMap::new(set.clone(), s.clone(), images).unwrap())
                .collect()
        }
    };
    Product { set, projections }
}

/// The pullback of a cospan, with its two projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: FinSet,
    pub left: FinMap,
    pub right: FinMap,
}

/// `{(b,c) : f(b) = g(c)}` ordered lexicographically.
pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::IncompatibleCospan {
            left: f.target.name().to_string(),
            right: g.target.name().to_string(),
        });
    }
    let ambient = FinSet::product(vec![f.source.clone(), g.source.clone()]);
    let width = g.source.len();
    // Bucket the right-hand source by image (counting sort keeps order).
    let mut starts = vec![0usize; f.target.len() + 1];
    for &d in g.images.iter() {
        starts[d + 1] += 1;
    }
    for d in 0..f.target.len() {
        starts[d + 1] += starts[d];
    }
    let mut fill = starts.clone();
    let mut bucketed = vec![0usize; width];
    for (c, &d) in g.images.iter().enumerate() {
        bucketed[fill[d]] = c;
        fill[d] += 1;
    }
    let mut picks = Vec::new();
    let (mut lefts, mut rights) = (Vec::new(), Vec::new());
    for b in 0..f.source.len() {
        let d = f.images[b];
        for &c in &bucketed[starts[d]..starts[d + 1]] {
            picks.push(b * width + c);
            lefts.push(b);
            rights.push(c);
        }
    }
    let set = ambient.subset(picks).renamed(format!(
        "{}×_{}{}",
        f.source.name(),
        f.target.name(),
        g.source.name()
    ));
    Ok(Pullback {
        left: FinMap::new(set.clone(), f.source.clone(), lefts)?,
        right: FinMap::new(set.clone(), g.source.clone(), rights)?,
        set,
    })
}

/// The tupled map `x ↦ (f1 x, ..., fn x)` into the product of the targets.
pub fn tuple_map(source: &FinSet, maps: &[FinMap]) -> Result<FinMap> {
    for m in maps {
        if m.source() != source {
            return Err(Error::NotComposable {
                left: source.name().to_string(),
                right: m.source().name().to_string(),
            });
        }
    }
    let target = FinSet::product(maps.iter().map(|m| m.target().clone()).collect());
    if maps.is_empty() {
        return FinMap::constant(source, &target, 0);
    }
    if maps.len() == 1 {
        return Ok(maps[0].clone());
    }
    let mut coords = vec![0; maps.len()];
    FinMap::from_index_fn(source.clone(), target.clone(), |i| {
        for (c, m) in coords.iter_mut().zip(maps) {
            *c = m.image(i);
        }
        target.from_coords(&coords).unwrap()
    })
}

/// `∏ fi : ∏ Ai → ∏ Bi`.
pub fn product_map(maps: &[FinMap]) -> FinMap {
    let source = FinSet::product(maps.iter().map(|m| m.source().clone()).collect());
    let target = FinSet::product(maps.iter().map(|m| m.target().clone()).collect());
    match maps.len() {
        0 => FinMap::identity(&source),
        1 => maps[0].clone(),
        _ => {
            let mut buf = Vec::new();
            FinMap::from_index_fn(source.clone(), target.clone(), |i| {
                source.coords_into(i, &mut buf);
                for (c, m) in buf.iter_mut().zip(maps) {
                    *c = m.image(*c);
                }
                target.from_coords(&buf).unwrap()
            })
            .expect("coordinates stay in range")
        }
    }
}
