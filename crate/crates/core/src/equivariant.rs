//! Finite groups, G-sets and equivariant spans, with the geometric fixed
//! point functor `Φ^H` (H-fixed points with residual Weyl action) and the
//! restriction `ι_H*`.
//!
//! The ambient base always carries the trivial action.

use std::fmt;
use std::sync::Arc;

use crate::basechange::{base_change, m_bc};
use crate::bicategory::{
    associator, compare_cells, compare_maps, compose, left_unitor, right_unitor, rotator, shadow,
    unit, Cell1, Cell2, Divergence, Iso2, Verdict,
};
use crate::error::{Error, Result};
use crate::finset::{Bijection, Elem, FinMap, FinSet};
use crate::smbf::{
    external_product, pullback_along, pushforward_along, Context, IndexedSpace, ParamMap,
    ParamSet, SpaceMap,
};

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FinGroup(Arc<GroupData>);

struct GroupData {
    name: String,
    elements: FinSet,
    table: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Validates closure, associativity, identity and inverses exhaustively.
    pub fn new(name: impl Into<String>, elements: FinSet, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::GroupAxiom("a group has at least one element".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::GroupAxiom(format!("table must be {n}×{n}")));
        }
        if table.iter().flatten().any(|&c| c >= n) {
            return Err(Error::GroupAxiom("table entry outside the group".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupAxiom(format!(
                            "({0}{1}){2} ≠ {0}({1}{2})",
                            elements.elem(a),
                            elements.elem(b),
                            elements.elem(c)
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::GroupAxiom("no identity element".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == unit && table[b][a] == unit)
                    .ok_or_else(|| {
                        Error::GroupAxiom(format!("{} has no inverse", elements.elem(a)))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinGroup(Arc::new(GroupData {
            name: name.into(),
            elements,
            table,
            unit,
            inverse,
        })))
    }

    pub fn trivial() -> Self {
        FinGroup::cyclic(1)
    }

    /// `C_n = {e, g, g2, ..}`.
    pub fn cyclic(n: usize) -> Self {
        let labels: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let elements = FinSet::atoms(format!("C{n}"), &labels).expect("distinct labels");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(format!("C{n}"), elements, table).expect("cyclic group")
    }

    /// `C2 = {e, t}`.
    pub fn c2() -> Self {
        let elements = FinSet::atoms("C2", &["e", "t"]).unwrap();
        FinGroup::new("C2", elements, vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// `C3 = {e, r, r2}`.
    pub fn c3() -> Self {
        let elements = FinSet::atoms("C3", &["e", "r", "r2"]).unwrap();
        let table = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        FinGroup::new("C3", elements, table).unwrap()
    }

    /// Permutations of three letters: `e, r, r2` (rotations) and `t0, t1,
    /// t2` (the transposition fixing that letter).
    pub fn s3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let elements = FinSet::atoms("S3", &["e", "r", "r2", "t0", "t1", "t2"]).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let pq = [p[q[0]], p[q[1]], p[q[2]]];
                        perms.iter().position(|x| *x == pq).unwrap()
                    })
                    .collect()
            })
            .collect();
        FinGroup::new("S3", elements, table).unwrap()
    }

    /// `C2`, `C3` or `S3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "C2" => Some(FinGroup::c2()),
            "C3" => Some(FinGroup::c3()),
            "S3" => Some(FinGroup::s3()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn elements(&self) -> &FinSet {
        &self.0.elements
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    pub fn unit(&self) -> usize {
        self.0.unit
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.0.table
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.elements.index_of(&Elem::atom(label))
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut members = vec![false; self.order()];
        members[self.unit()] = true;
        let mut frontier = vec![self.unit()];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !members[b] {
                    members[b] = true;
                    frontier.push(b);
                }
            }
        }
        (0..self.order()).filter(|&i| members[i]).collect()
    }

    pub fn subgroup(&self, members: Vec<usize>) -> Result<Subgroup> {
        Subgroup::new(self.clone(), members)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::new(self.clone(), (0..self.order()).collect()).unwrap()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::new(self.clone(), vec![self.unit()]).unwrap()
    }

    /// All subgroups, ordered by size and then by members.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: Vec<Vec<usize>> = vec![vec![self.unit()]];
        let mut next = 0;
        while next < found.len() {
            let current = found[next].clone();
            next += 1;
            for g in 0..self.order() {
                if current.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = current.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if !found.contains(&k) {
                    found.push(k);
                }
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
            .into_iter()
            .map(|m| Subgroup::new(self.clone(), m).unwrap())
            .collect()
    }

    /// Resolves a subgroup by name: the group's own name, `1`/`e`/`trivial`,
    /// a conventional name such as `A3`, or a comma-separated element list.
    pub fn find_subgroup(&self, spec: &str) -> Result<Subgroup> {
        let spec = spec.trim();
        if spec == self.name() || spec == "G" {
            return Ok(self.whole());
        }
        if matches!(spec, "1" | "e" | "trivial") {
            return Ok(self.trivial_subgroup());
        }
        if let Some(k) = self.subgroups().into_iter().find(|k| k.name() == spec) {
            return Ok(k);
        }
        let mut members = spec
            .split(',')
            .map(|s| {
                self.index_of(s.trim()).ok_or_else(|| {
                    Error::NotSubgroup(format!("{s} is not an element of {}", self.name()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        members.sort_unstable();
        members.dedup();
        self.subgroup(members)
    }
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.elements == other.0.elements && self.0.table == other.0.table)
    }
}

impl Eq for FinGroup {}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name(), self.order())
    }
}

/// A subgroup, stored as sorted member indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FinGroup,
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: FinGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m >= parent.order()) {
            return Err(Error::NotSubgroup("member outside the group".into()));
        }
        if members.binary_search(&parent.unit()).is_err() {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for &a in &members {
            if members.binary_search(&parent.inv(a)).is_err() {
                return Err(Error::NotSubgroup(format!(
                    "not closed under inverses at {}",
                    parent.elements().elem(a)
                )));
            }
            for &b in &members {
                if members.binary_search(&parent.mul(a, b)).is_err() {
                    return Err(Error::NotSubgroup(format!(
                        "not closed under products at {}·{}",
                        parent.elements().elem(a),
                        parent.elements().elem(b)
                    )));
                }
            }
        }
        Ok(Subgroup { parent, members })
    }

    pub fn parent(&self) -> &FinGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// A conventional label: `1`, the group name, `A3` in `S3`, or `{..}`.
    pub fn name(&self) -> String {
        if self.is_trivial() {
            return "1".into();
        }
        if self.is_whole() {
            return self.parent.name().into();
        }
        // S3 has exactly one subgroup of order 3, whatever its labels.
        if self.parent.name() == "S3" && self.parent.order() == 6 && self.members.len() == 3 {
            return "A3".into();
        }
        let labels: Vec<String> = self
            .members
            .iter()
            .map(|&m| self.parent.elements().elem(m).to_string())
            .collect();
        format!("{{{}}}", labels.join(","))
    }

    /// The subgroup as a group in its own right (same element labels).
    pub fn as_group(&self) -> FinGroup {
        if self.is_whole() {
            return self.parent.clone();
        }
        let pos = |g: usize| self.members.binary_search(&g).unwrap();
        let table = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        let elements = self
            .parent
            .elements()
            .subset(self.members.clone())
            .renamed(self.name());
        FinGroup::new(self.name(), elements, table).expect("a subgroup is a group")
    }

    /// `N(H) = {g : gHg⁻¹ = H}`.
    pub fn normalizer(&self) -> Vec<usize> {
        let g = &self.parent;
        (0..g.order())
            .filter(|&x| {
                self.members
                    .iter()
                    .all(|&h| self.contains(g.mul(g.mul(x, h), g.inv(x))))
            })
            .collect()
    }
}

/// `WH = N(H)/H` with coset data.
#[derive(Clone, Debug)]
pub struct Weyl {
    pub group: FinGroup,
    pub normalizer: Vec<usize>,
    /// Smallest-index representative in `G` of each element of `WH`.
    pub reps: Vec<usize>,
}

pub fn weyl(h: &Subgroup) -> Weyl {
    let g = h.parent();
    let normalizer = h.normalizer();
    let mut reps: Vec<usize> = Vec::new();
    let mut coset_of = vec![usize::MAX; g.order()];
    for &n in &normalizer {
        if coset_of[n] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(n);
        for &m in h.members() {
            coset_of[g.mul(n, m)] = idx;
        }
    }
    let table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let name = if h.is_trivial() {
        g.name().to_string()
    } else {
        format!("W{}", h.name())
    };
    let elements = g.elements().subset(reps.clone()).renamed(name.clone());
    let group = FinGroup::new(name, elements, table).expect("quotient of the normalizer");
    Weyl {
        group,
        normalizer,
        reps,
    }
}

/// A finite set with a left action, stored as `act[g][x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: FinGroup,
    set: FinSet,
    act: Arc<Vec<Vec<usize>>>,
}

impl GSet {
    /// Validates the unit and compatibility laws exhaustively.
    pub fn new(group: FinGroup, set: FinSet, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = set.len();
        if act.len() != group.order() || act.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        if act.iter().flatten().any(|&y| y >= n) {
            return Err(Error::InvalidAction("action leaves the set".into()));
        }
        for x in 0..n {
            if act[group.unit()][x] != x {
                return Err(Error::InvalidAction(format!(
                    "the identity moves {}",
                    set.elem(x)
                )));
            }
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = group.mul(a, b);
                for x in 0..n {
                    if act[ab][x] != act[a][act[b][x]] {
                        return Err(Error::InvalidAction(format!(
                            "({}{})·{} differs from {}·({}·{})",
                            group.elements().elem(a),
                            group.elements().elem(b),
                            set.elem(x),
                            group.elements().elem(a),
                            group.elements().elem(b),
                            set.elem(x)
                        )));
                    }
                }
            }
        }
        Ok(GSet {
            group,
            set,
            act: Arc::new(act),
        })
    }

    /// From `(g, x, g·x)` triples; unlisted pairs with `g = e` default to `x`.
    pub fn from_triples(group: FinGroup, set: FinSet, triples: &[(Elem, Elem, Elem)]) -> Result<Self> {
        let mut act = vec![vec![usize::MAX; set.len()]; group.order()];
        for x in 0..set.len() {
            act[group.unit()][x] = x;
        }
        for (g, x, gx) in triples {
            let gi = group.elements().index_of(g).ok_or_else(|| Error::NotMember {
                set: group.name().to_string(),
                elem: g.to_string(),
            })?;
            let find = |e: &Elem| {
                set.index_of(e).ok_or_else(|| Error::NotMember {
                    set: set.name().to_string(),
                    elem: e.to_string(),
                })
            };
            act[gi][find(x)?] = find(gx)?;
        }
        if let Some((g, x)) = (0..group.order())
            .flat_map(|g| (0..set.len()).map(move |x| (g, x)))
            .find(|&(g, x)| act[g][x] == usize::MAX)
        {
            return Err(Error::InvalidAction(format!(
                "no image for {}·{}",
                group.elements().elem(g),
                set.elem(x)
            )));
        }
        GSet::new(group, set, act)
    }

    pub fn trivial(group: FinGroup, set: FinSet) -> Self {
        let act = vec![(0..set.len()).collect(); group.order()];
        GSet {
            group,
            set,
            act: Arc::new(act),
        }
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_fixed(&self, x: usize, h: &Subgroup) -> bool {
        h.members().iter().all(|&g| self.act[g][x] == x)
    }

    pub fn fixed_indices(&self, h: &Subgroup) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_fixed(x, h)).collect()
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.act[g][x] == x).collect()
    }

    /// Orbits, each listed from its least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.group.order()).map(|g| self.act[g][x]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    fn check_group(&self, h: &Subgroup) -> Result<()> {
        if h.parent() != &self.group {
            return Err(Error::NotSubgroup(format!(
                "{} is not a subgroup of {}",
                h.name(),
                self.group.name()
            )));
        }
        Ok(())
    }

    /// `X^H` with the residual action of `WH`.
    pub fn fixed_points(&self, h: &Subgroup) -> Result<GSet> {
        self.check_group(h)?;
        let w = weyl(h);
        let picks = self.fixed_indices(h);
        let set = self.set.subset(picks.clone());
        let act = w
            .reps
            .iter()
            .map(|&n| {
                picks
                    .iter()
                    .map(|&x| picks.binary_search(&self.act[n][x]).expect("normalizer preserves fixed points"))
                    .collect()
            })
            .collect();
        GSet::new(w.group, set, act)
    }

    /// The same set with the action restricted to `H`.
    pub fn restrict(&self, h: &Subgroup) -> Result<GSet> {
        self.check_group(h)?;
        let act = h.members().iter().map(|&g| self.act[g].clone()).collect();
        GSet::new(h.as_group(), self.set.clone(), act)
    }

    /// The action on a set of tuples drawn from the given G-sets (a subset
    /// of their product, e.g. a fiber product or composite).
    pub fn on_tuples(set: &FinSet, factors: &[&GSet]) -> Result<GSet> {
        if factors.len() == 1 {
            return Ok(GSet {
                group: factors[0].group.clone(),
                set: set.clone(),
                act: factors[0].act.clone(),
            });
        }
        let group = factors
            .first()
            .map(|f| f.group.clone())
            .ok_or(Error::Arity { expected: 1, got: 0 })?;
        let mut buf = Vec::new();
        let mut act = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let mut row = Vec::with_capacity(set.len());
            for i in 0..set.len() {
                if !set.coords_into(i, &mut buf) {
                    return Err(Error::InvalidAction("set is not a set of tuples".into()));
                }
                for (c, f) in buf.iter_mut().zip(factors) {
                    *c = f.act[g][*c];
                }
                row.push(set.from_coords(&buf).ok_or_else(|| {
                    Error::InvalidAction(format!("{} leaves the set under the action", set.elem(i)))
                })?);
            }
            act.push(row);
        }
        GSet::new(group, set.clone(), act)
    }

    /// The action on a subset, which must be invariant.
    pub fn on_subset(&self, subset: &FinSet) -> Result<GSet> {
        let picks: Vec<usize> = (0..subset.len())
            .map(|i| subset.position_in(&self.set, i).expect("a subset"))
            .collect();
        let act = self
            .act
            .iter()
            .map(|row| {
                picks
                    .iter()
                    .map(|&x| {
                        subset.locate(&self.set, row[x]).ok_or_else(|| {
                            Error::InvalidAction(format!("{} leaves the subset", self.set.elem(x)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GSet::new(self.group.clone(), subset.clone(), act)
    }

    /// Checks `f(g·x) = g·f(x)`.
    pub fn check_map(&self, f: &FinMap, target: &GSet) -> Result<()> {
        check_equivariant(f, self, target, None)
    }
}

/// Equivariance of `f` with respect to all of `G`, or only to `H` when given.
pub fn check_equivariant(f: &FinMap, source: &GSet, target: &GSet, only: Option<&Subgroup>) -> Result<()> {
    if source.group != target.group {
        return Err(Error::NotEquivariant("actions of different groups".into()));
    }
    let all: Vec<usize>;
    let gs: &[usize] = match only {
        Some(h) => h.members(),
        None => {
            all = (0..source.group.order()).collect();
            &all
        }
    };
    for &g in gs {
        for x in 0..source.len() {
            if f.image(source.act[g][x]) != target.act[g][f.image(x)] {
                return Err(Error::NotEquivariant(format!(
                    "{} at {}",
                    source.group.elements().elem(g),
                    source.set.elem(x)
                )));
            }
        }
    }
    Ok(())
}

/// An indexing space with an action that fixes the structure map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSpace {
    space: IndexedSpace,
    action: GSet,
}

impl GSpace {
    pub fn new(space: IndexedSpace, action: GSet) -> Result<Self> {
        if action.set() != space.space() {
            return Err(Error::InvalidAction("action on a different set".into()));
        }
        for g in 0..action.group.order() {
            for x in 0..space.len() {
                if space.to_base().image(action.act(g, x)) != space.to_base().image(x) {
                    return Err(Error::InvalidAction(format!(
                        "{} moves between base points",
                        space.space().elem(x)
                    )));
                }
            }
        }
        Ok(GSpace { space, action })
    }

    pub fn space(&self) -> &IndexedSpace {
        &self.space
    }

    pub fn action(&self) -> &GSet {
        &self.action
    }

    pub fn group(&self) -> &FinGroup {
        &self.action.group
    }

    /// `A^H` as an indexing space with its `WH`-action.
    pub fn fixed(&self, h: &Subgroup) -> Result<GSpace> {
        let action = self.action.fixed_points(h)?;
        let space = self.space.restrict(self.action.fixed_indices(h));
        GSpace::new(space, action)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<GSpace> {
        GSpace::new(self.space.clone(), self.action.restrict(h)?)
    }
}

/// An equivariant map of G-spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    source: GSpace,
    target: GSpace,
    map: SpaceMap,
}

impl GMap {
    pub fn new(source: GSpace, target: GSpace, map: FinMap) -> Result<Self> {
        let map = SpaceMap::new(source.space.clone(), target.space.clone(), map)?;
        check_equivariant(map.map(), &source.action, &target.action, None)?;
        Ok(GMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(a: &GSpace) -> Self {
        GMap {
            source: a.clone(),
            target: a.clone(),
            map: SpaceMap::identity(&a.space),
        }
    }

    pub fn source(&self) -> &GSpace {
        &self.source
    }

    pub fn target(&self) -> &GSpace {
        &self.target
    }

    pub fn map(&self) -> &SpaceMap {
        &self.map
    }

    pub fn after(&self, first: &GMap) -> Result<GMap> {
        Ok(GMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: self.map.after(&first.map)?,
        })
    }

    /// `f^H : A^H → B^H`.
    pub fn fixed(&self, h: &Subgroup) -> Result<GMap> {
        let source = self.source.fixed(h)?;
        let target = self.target.fixed(h)?;
        let map = restrict_map(self.map.map(), source.space.space(), target.space.space())?;
        GMap::new(source, target, map)
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<GMap> {
        GMap::new(self.source.restrict(h)?, self.target.restrict(h)?, self.map.map().clone())
    }
}

/// `f` restricted to subsets of its source and target.
fn restrict_map(f: &FinMap, source: &FinSet, target: &FinSet) -> Result<FinMap> {
    let images = (0..source.len())
        .map(|i| {
            let x = source.position_in(f.source(), i).expect("a subset of the source");
            target.locate(f.target(), f.image(x)).ok_or_else(|| Error::NotMember {
                set: target.name().to_string(),
                elem: f.target().elem(f.image(x)).to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FinMap::new(source.clone(), target.clone(), images)
}

/// A span of G-sets with equivariant legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCell1 {
    cell: Cell1,
    src: GSpace,
    dst: GSpace,
    total: GSet,
}

impl GCell1 {
    pub fn new(cell: Cell1, src: GSpace, dst: GSpace, total: GSet) -> Result<Self> {
        if cell.src() != src.space() || cell.dst() != dst.space() || cell.total() != total.set() {
            return Err(Error::InvalidAction("actions do not match the span".into()));
        }
        check_equivariant(cell.to_src(), &total, &src.action, None)?;
        check_equivariant(cell.to_dst(), &total, &dst.action, None)?;
        Ok(GCell1 {
            cell,
            src,
            dst,
            total,
        })
    }

    pub fn cell(&self) -> &Cell1 {
        &self.cell
    }

    pub fn src(&self) -> &GSpace {
        &self.src
    }

    pub fn dst(&self) -> &GSpace {
        &self.dst
    }

    pub fn total(&self) -> &GSet {
        &self.total
    }

    pub fn group(&self) -> &FinGroup {
        &self.total.group
    }
}

pub fn gunit(a: &GSpace) -> GCell1 {
    GCell1 {
        cell: unit(&a.space),
        src: a.clone(),
        dst: a.clone(),
        total: a.action.clone(),
    }
}

pub fn gcompose(x: &GCell1, y: &GCell1) -> Result<GCell1> {
    let cell = compose(&x.cell, &y.cell)?;
    let total = GSet::on_tuples(cell.total(), &[&x.total, &y.total])?;
    GCell1::new(cell, x.src.clone(), y.dst.clone(), total)
}

pub fn gbase_change(f: &GMap) -> GCell1 {
    GCell1 {
        cell: base_change(&f.map),
        src: f.target.clone(),
        dst: f.source.clone(),
        total: f.source.action.clone(),
    }
}

/// `⟨X⟩` with its action.
pub fn gshadow(x: &GCell1) -> Result<GSet> {
    x.total.on_subset(&shadow(&x.cell)?)
}

/// `Φ^H X`: the H-fixed sub-span, a `WH`-span from `A^H` to `C^H`.
pub fn phi(x: &GCell1, h: &Subgroup) -> Result<GCell1> {
    let src = x.src.fixed(h)?;
    let dst = x.dst.fixed(h)?;
    let total = x.total.fixed_points(h)?;
    let to_src = restrict_map(x.cell.to_src(), total.set(), src.space.space())?;
    let to_dst = restrict_map(x.cell.to_dst(), total.set(), dst.space.space())?;
    let cell = Cell1::new(x.cell.ctx().clone(), src.space.clone(), dst.space.clone(), to_src, to_dst)?;
    GCell1::new(cell, src, dst, total)
}

/// `Φ^H φ` for a 2-cell that is at least H-equivariant.
pub fn phi_2cell(phi_cell: &Cell2, from: &GCell1, to: &GCell1, h: &Subgroup) -> Result<Cell2> {
    if phi_cell.from() != from.cell() || phi_cell.to() != to.cell() {
        return Err(Error::InvalidCell2("2-cell does not join the given spans".into()));
    }
    check_equivariant(phi_cell.map(), &from.total, &to.total, Some(h))?;
    let pf = phi(from, h)?;
    let pt = phi(to, h)?;
    let map = restrict_map(phi_cell.map(), pf.cell.total(), pt.cell.total())?;
    Cell2::new(pf.cell, pt.cell, map)
}

/// `ι_H* X`: the same span with the action restricted to `H`.
pub fn restrict(x: &GCell1, h: &Subgroup) -> Result<GCell1> {
    GCell1::new(
        x.cell.clone(),
        x.src.restrict(h)?,
        x.dst.restrict(h)?,
        x.total.restrict(h)?,
    )
}

fn equivariant_iso(iso: Iso2, from: &GSet, to: &GSet) -> Result<Iso2> {
    check_equivariant(iso.forward().map(), from, to, None)?;
    Ok(iso)
}

/// `m_Φ : Φ^H X ⊙ Φ^H Y ≅ Φ^H (X ⊙ Y)`.
pub fn m_phi(x: &GCell1, y: &GCell1, h: &Subgroup) -> Result<Iso2> {
    let from = gcompose(&phi(x, h)?, &phi(y, h)?)?;
    let to = phi(&gcompose(x, y)?, h)?;
    let iso = Iso2::from_fn(&from.cell, &to.cell, Elem::clone)?;
    equivariant_iso(iso, &from.total, &to.total)
}

/// `i_Φ : U_{A^H} ≅ Φ^H U_A`.
pub fn i_phi(a: &GSpace, h: &Subgroup) -> Result<Iso2> {
    let from = gunit(&a.fixed(h)?);
    let to = phi(&gunit(a), h)?;
    let iso = Iso2::from_fn(&from.cell, &to.cell, Elem::clone)?;
    equivariant_iso(iso, &from.total, &to.total)
}

/// `s_Φ : ⟨Φ^H X⟩ ≅ Φ^H ⟨X⟩`.
pub fn s_phi(x: &GCell1, h: &Subgroup) -> Result<Bijection> {
    let from = gshadow(&phi(x, h)?)?;
    let to = gshadow(x)?.fixed_points(h)?;
    let b = Bijection::from_fn(from.set().clone(), to.set().clone(), Elem::clone)?;
    check_equivariant(b.forward(), &from, &to, None)?;
    Ok(b)
}

/// `η : Φ^H [f] ≅ [f^H]`.
pub fn icon_eta(f: &GMap, h: &Subgroup) -> Result<Iso2> {
    let from = phi(&gbase_change(f), h)?;
    let to = gbase_change(&f.fixed(h)?);
    let iso = Iso2::from_fn(&from.cell, &to.cell, Elem::clone)?;
    equivariant_iso(iso, &from.total, &to.total)
}

fn phi_iso(iso: &Iso2, from: &GCell1, to: &GCell1, h: &Subgroup) -> Result<Iso2> {
    Iso2::new(phi_2cell(iso.forward(), from, to, h)?)
}

/// Shadow functor associator axiom for `Φ^H`.
pub fn phi_assoc(x: &GCell1, y: &GCell1, z: &GCell1, h: &Subgroup) -> Result<Verdict> {
    let (px, py, pz) = (phi(x, h)?, phi(y, h)?, phi(z, h)?);
    let xy = gcompose(x, y)?;
    let yz = gcompose(y, z)?;
    let alpha = associator(x.cell(), y.cell(), z.cell())?;
    let from = gcompose(&xy, z)?;
    let to = gcompose(x, &yz)?;
    let left = m_phi(x, y, h)?.whisker_right(pz.cell())?;
    let left = m_phi(&xy, z, h)?.after(&left)?;
    let left = phi_iso(&alpha, &from, &to, h)?.after(&left)?;
    let right = associator(px.cell(), py.cell(), pz.cell())?;
    let right = m_phi(y, z, h)?.whisker_left(px.cell())?.after(&right)?;
    let right = m_phi(x, &yz, h)?.after(&right)?;
    Ok(compare_cells(left.forward(), right.forward()))
}

/// Shadow functor unitor axioms for `Φ^H`, on both sides.
pub fn phi_unit(x: &GCell1, h: &Subgroup) -> Result<Verdict> {
    let px = phi(x, h)?;
    let ua = gunit(&x.src);
    let route = i_phi(&x.src, h)?.whisker_right(px.cell())?;
    let route = m_phi(&ua, x, h)?.after(&route)?;
    let l = left_unitor(x.cell())?;
    let route = phi_iso(&l, &gcompose(&ua, x)?, x, h)?.after(&route)?;
    if let Some(d) = compare_cells(left_unitor(px.cell())?.forward(), route.forward()) {
        return Ok(Some(d));
    }
    let uc = gunit(&x.dst);
    let route = i_phi(&x.dst, h)?.whisker_left(px.cell())?;
    let route = m_phi(x, &uc, h)?.after(&route)?;
    let r = right_unitor(x.cell())?;
    let route = phi_iso(&r, &gcompose(x, &uc)?, x, h)?.after(&route)?;
    Ok(compare_cells(right_unitor(px.cell())?.forward(), route.forward()))
}

/// `⟨φ⟩` for an iso, as a bijection of shadows.
fn shadow_bij(iso: &Iso2) -> Result<Bijection> {
    crate::bicategory::shadow_of_iso(iso)
}

/// Shadow functor rotator axiom for `Φ^H`: both routes from
/// `⟨Φ^H X ⊙ Φ^H Y⟩` to `Φ^H ⟨Y ⊙ X⟩`.
pub fn phi_rotator(x: &GCell1, y: &GCell1, h: &Subgroup) -> Result<Verdict> {
    let (px, py) = (phi(x, h)?, phi(y, h)?);
    let xy = gcompose(x, y)?;
    let yx = gcompose(y, x)?;
    let across = rotator(px.cell(), py.cell())?;
    let across = shadow_bij(&m_phi(y, x, h)?)?.after(&across)?;
    let across = s_phi(&yx, h)?.after(&across)?;
    let down = shadow_bij(&m_phi(x, y, h)?)?;
    let down = s_phi(&xy, h)?.after(&down)?;
    // Φ^H θ: the rotator restricted to H-fixed points.
    let theta = rotator(x.cell(), y.cell())?;
    let (sxy, syx) = (gshadow(&xy)?, gshadow(&yx)?);
    check_equivariant(theta.forward(), &sxy, &syx, None)?;
    let (fxy, fyx) = (sxy.fixed_points(h)?, syx.fixed_points(h)?);
    let phi_theta = Bijection::new(restrict_map(theta.forward(), fxy.set(), fyx.set())?)?;
    let down = phi_theta.after(&down)?;
    Ok(compare_maps(across.forward(), down.forward()))
}

/// Icon unit axiom: `η_{id} ∘ i_Φ` is the identity of `U_{A^H}`.
pub fn icon_unit(a: &GSpace, h: &Subgroup) -> Result<Verdict> {
    let route = icon_eta(&GMap::identity(a), h)?.after(&i_phi(a, h)?)?;
    let u = unit(a.fixed(h)?.space());
    Ok(compare_cells(Iso2::identity(&u).forward(), route.forward()))
}

/// Icon composition axiom for `f: A → B`, `g: B → C`.
pub fn icon_comp(g: &GMap, f: &GMap, h: &Subgroup) -> Result<Verdict> {
    let (bg, bf) = (gbase_change(g), gbase_change(f));
    let gf = g.after(f)?;
    let (gh, fh) = (g.fixed(h)?, f.fixed(h)?);
    let across = Iso2::hcomp(&icon_eta(g, h)?, &icon_eta(f, h)?)?;
    let across = m_bc(gh.map(), fh.map())?.after(&across)?;
    let down = m_phi(&bg, &bf, h)?;
    let m = m_bc(g.map(), f.map())?;
    let down = phi_iso(&m, &gcompose(&bg, &bf)?, &gbase_change(&gf), h)?.after(&down)?;
    let down = icon_eta(&gf, h)?.after(&down)?;
    if gh.after(&fh)?.map() != gf.fixed(h)?.map() {
        return Ok(Some(Divergence {
            element: "<fixed composite>".into(),
            left: "g^H ∘ f^H".into(),
            right: "(g ∘ f)^H".into(),
        }));
    }
    Ok(compare_cells(across.forward(), down.forward()))
}

/// Naturality of `m_Φ` along 2-cells that are only H-equivariant.
pub fn m_phi_naturality(
    phi_x: &Cell2,
    x: (&GCell1, &GCell1),
    psi_y: &Cell2,
    y: (&GCell1, &GCell1),
    h: &Subgroup,
) -> Result<Verdict> {
    let px = phi_2cell(phi_x, x.0, x.1, h)?;
    let py = phi_2cell(psi_y, y.0, y.1, h)?;
    let first = m_phi(x.1, y.1, h)?.forward().after(&Cell2::hcomp(&px, &py)?)?;
    let both = Cell2::hcomp(phi_x, psi_y)?;
    let pboth = phi_2cell(&both, &gcompose(x.0, y.0)?, &gcompose(x.1, y.1)?, h)?;
    let second = pboth.after(m_phi(x.0, y.0, h)?.forward())?;
    Ok(compare_cells(&first, &second))
}

/// `ι_H*` is strict: composites, units, shadows and base change objects are
/// preserved on the nose.
pub fn restrict_strict(x: &GCell1, y: &GCell1, f: &GMap, h: &Subgroup) -> Result<Verdict> {
    let mismatch = |what: &str| {
        Ok(Some(Divergence {
            element: format!("<{what}>"),
            left: "ι*(..)".into(),
            right: "..".into(),
        }))
    };
    let (rx, ry) = (restrict(x, h)?, restrict(y, h)?);
    if rx.cell != x.cell {
        return mismatch("underlying span");
    }
    if restrict(&gcompose(x, y)?, h)? != gcompose(&rx, &ry)? {
        return mismatch("composite");
    }
    if restrict(&gunit(&x.src), h)? != gunit(&x.src.restrict(h)?) {
        return mismatch("unit");
    }
    if gshadow(&restrict(&gcompose(x, y)?, h)?)? != gshadow(&gcompose(x, y)?)?.restrict(h)? {
        return mismatch("shadow");
    }
    if restrict(&gbase_change(f), h)? != gbase_change(&f.restrict(h)?) {
        return mismatch("base change");
    }
    Ok(None)
}

/// A parametrized G-set: equivariant projection to a G-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GParamSet {
    param: ParamSet,
    total: GSet,
    base: GSpace,
}

impl GParamSet {
    pub fn new(param: ParamSet, total: GSet, base: GSpace) -> Result<Self> {
        if param.total() != total.set() || param.base() != base.space() {
            return Err(Error::InvalidAction("actions do not match the parametrized set".into()));
        }
        check_equivariant(param.proj(), &total, &base.action, None)?;
        Ok(GParamSet { param, total, base })
    }

    pub fn param(&self) -> &ParamSet {
        &self.param
    }

    pub fn total(&self) -> &GSet {
        &self.total
    }

    pub fn base(&self) -> &GSpace {
        &self.base
    }

    /// `Φ^H X` over `A^H`.
    pub fn fixed(&self, h: &Subgroup) -> Result<ParamSet> {
        let base = self.base.fixed(h)?;
        let total = self.total.fixed_points(h)?;
        let proj = restrict_map(self.param.proj(), total.set(), base.space.space())?;
        ParamSet::new(total.set().clone(), base.space, proj)
    }
}

pub fn gexternal_product(ctx: &Context, xs: &[GParamSet]) -> Result<GParamSet> {
    let params: Vec<_> = xs.iter().map(|x| x.param.clone()).collect();
    let param = external_product(ctx, &params)?;
    let totals: Vec<_> = xs.iter().map(|x| &x.total).collect();
    let bases: Vec<_> = xs.iter().map(|x| &x.base.action).collect();
    let total = GSet::on_tuples(param.total(), &totals)?;
    let base_act = GSet::on_tuples(param.base().space(), &bases)?;
    GParamSet::new(param.clone(), total, GSpace::new(param.base().clone(), base_act)?)
}

pub fn gpullback(f: &GMap, y: &GParamSet) -> Result<GParamSet> {
    let (param, _) = pullback_along(&f.map, &y.param)?;
    let total = GSet::on_tuples(param.total(), &[&f.source.action, &y.total])?;
    GParamSet::new(param, total, f.source.clone())
}

pub fn gpushforward(f: &GMap, y: &GParamSet) -> Result<GParamSet> {
    let param = pushforward_along(&f.map, &y.param)?;
    GParamSet::new(param, y.total.clone(), f.target.clone())
}

fn identity_param_iso(from: &ParamSet, to: &ParamSet) -> Verdict {
    let attempt = || -> Result<()> {
        let map = FinMap::from_fn(from.total().clone(), to.total().clone(), Elem::clone)?;
        if !map.is_bijective() {
            return Err(Error::NotBijective("fixed-point comparison".into()));
        }
        ParamMap::new(from.clone(), to.clone(), map)?;
        Ok(())
    };
    attempt().err().map(|e| Divergence {
        element: "<comparison>".into(),
        left: format!("{} elements", from.len()),
        right: e.to_string(),
    })
}

/// `Φ^H (X1 ⊠ .. ⊠ Xn) ≅ Φ^H X1 ⊠ .. ⊠ Φ^H Xn`.
pub fn phi_smash(ctx: &Context, xs: &[GParamSet], h: &Subgroup) -> Result<Verdict> {
    let left = gexternal_product(ctx, xs)?.fixed(h)?;
    let parts = xs.iter().map(|x| x.fixed(h)).collect::<Result<Vec<_>>>()?;
    let right = external_product(ctx, &parts)?;
    Ok(identity_param_iso(&left, &right))
}

/// `Φ^H (f* Y) ≅ (f^H)* Φ^H Y`.
pub fn phi_pullback(f: &GMap, y: &GParamSet, h: &Subgroup) -> Result<Verdict> {
    let left = gpullback(f, y)?.fixed(h)?;
    let (right, _) = pullback_along(f.fixed(h)?.map(), &y.fixed(h)?)?;
    Ok(identity_param_iso(&left, &right))
}

/// `Φ^H (f_! Y) ≅ (f^H)_! Φ^H Y`.
pub fn phi_pushforward(f: &GMap, y: &GParamSet, h: &Subgroup) -> Result<Verdict> {
    let left = gpushforward(f, y)?.fixed(h)?;
    let right = pushforward_along(f.fixed(h)?.map(), &y.fixed(h)?)?;
    Ok(identity_param_iso(&left, &right))
}
