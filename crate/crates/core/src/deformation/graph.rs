//! The graph model: loopless directed graphs up to isomorphism, with maps
//! that send each edge to an edge or collapse it to a vertex. A map is a
//! weak equivalence when it induces an isomorphism of condensations; the
//! radiant objects are the condensed graphs and `R` is condensation.

use std::collections::HashMap;
use std::sync::Arc;

use super::sets::FinSetCat;
use super::{Category, Functor, Mor, MorData, NatTrans, RightDeformation, WeCategory, WeFunctor};
use crate::error::{Error, Result};

/// A graph on vertices `0..n`; bit `u*n + v` of `adj` is the edge `u → v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    pub n: usize,
    pub adj: u32,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Category(format!("at most {MAX_VERTICES} vertices")));
        }
        let mut adj = 0;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Category(format!("invalid edge {u}→{v}")));
            }
            adj |= 1 << (u * n + v);
        }
        Ok(Graph { n, adj })
    }

    pub fn has(&self, u: usize, v: usize) -> bool {
        self.adj >> (u * self.n + v) & 1 == 1
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    fn relabel(&self, p: &[usize]) -> Graph {
        let mut adj = 0;
        for (u, v) in self.edges() {
            adj |= 1 << (p[u] * self.n + p[v]);
        }
        Graph { n: self.n, adj }
    }

    fn reversed(&self) -> Graph {
        let mut adj = 0;
        for (u, v) in self.edges() {
            adj |= 1 << (v * self.n + u);
        }
        Graph { n: self.n, adj }
    }

    /// Strongly connected components, numbered in order of least vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n;
        let mut reach: Vec<u32> = (0..n)
            .map(|u| (0..n).filter(|&v| self.has(u, v)).fold(1 << u, |acc, v| acc | 1 << v))
            .collect();
        for k in 0..n {
            for u in 0..n {
                if reach[u] >> k & 1 == 1 {
                    reach[u] |= reach[k];
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for u in 0..n {
            if comp[u] != usize::MAX {
                continue;
            }
            for v in u..n {
                if reach[u] >> v & 1 == 1 && reach[v] >> u & 1 == 1 {
                    comp[v] = next;
                }
            }
            next += 1;
        }
        comp
    }

    /// The condensation, with components in order of least vertex.
    pub fn condensed(&self) -> Graph {
        let comp = self.components();
        let k = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut adj = 0;
        for (u, v) in self.edges() {
            if comp[u] != comp[v] {
                adj |= 1 << (comp[u] * k + comp[v]);
            }
        }
        Graph { n: k, adj }
    }

    /// The least relabeling, with `p[v]` the new name of `v`.
    fn canonical(&self) -> (Graph, Vec<usize>) {
        let mut best: Option<(Graph, Vec<usize>)> = None;
        for p in permutations(self.n) {
            let g = self.relabel(&p);
            if best.as_ref().is_none_or(|(b, _)| g.adj < b.adj) {
                best = Some((g, p));
            }
        }
        best.expect("at least the identity permutation")
    }
}

pub const MAX_VERTICES: usize = 5;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut p, &mut out);
    out
}

fn heap_permute(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    heap_permute(k - 1, p, out);
    for i in 0..k - 1 {
        if k % 2 == 0 {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
        heap_permute(k - 1, p, out);
    }
}

/// Where a graph goes under a structural operation: a target object and a
/// vertex relabeling into it.
#[derive(Clone, Debug)]
struct Transport {
    obj: usize,
    map: MorData,
}

/// Isomorphism classes of graphs with at most `max` vertices.
pub struct GraphCat {
    name: String,
    graphs: Vec<Graph>,
    edges: Vec<Vec<(usize, usize)>>,
    index: HashMap<Graph, usize>,
    cond: Vec<Transport>,
    rev: Vec<Transport>,
}

impl GraphCat {
    pub fn new(max: usize) -> Result<Self> {
        if max > MAX_VERTICES {
            return Err(Error::Category(format!("at most {MAX_VERTICES} vertices")));
        }
        let mut graphs = Vec::new();
        for n in 0..=max {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
                .collect();
            let perms = permutations(n);
            for mask in 0u32..(1 << pairs.len()) {
                let adj = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << (u * n + v));
                let g = Graph { n, adj };
                if perms.iter().all(|p| g.relabel(p).adj >= adj) {
                    graphs.push(g);
                }
            }
        }
        graphs.sort_by_key(|g| (g.n, g.adj));
        let index: HashMap<Graph, usize> = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let transport = |comp: &[usize], target: Graph| {
            let (canon, p) = target.canonical();
            Transport {
                obj: index[&canon],
                map: comp.iter().map(|&c| p[c] as u32).collect(),
            }
        };
        let cond = graphs
            .iter()
            .map(|g| transport(&g.components(), g.condensed()))
            .collect();
        let rev = graphs
            .iter()
            .map(|g| transport(&(0..g.n).collect::<Vec<_>>(), g.reversed()))
            .collect();
        Ok(GraphCat {
            name: format!("Graph≤{max}"),
            edges: graphs.iter().map(Graph::edges).collect(),
            graphs,
            index,
            cond,
            rev,
        })
    }

    pub fn graph(&self, a: usize) -> &Graph {
        &self.graphs[a]
    }

    pub fn edges(&self, a: usize) -> &[(usize, usize)] {
        &self.edges[a]
    }

    /// The object isomorphic to `g`, with the relabeling into it.
    pub fn locate(&self, g: &Graph) -> Result<(usize, Vec<usize>)> {
        let (canon, p) = g.canonical();
        let obj = *self
            .index
            .get(&canon)
            .ok_or_else(|| Error::Category(format!("graph with {} vertices is out of range", g.n)))?;
        Ok((obj, p))
    }

    pub fn is_radiant(&self, a: usize) -> bool {
        self.cond[a].obj == a
    }

    /// The map `G → cond(G)`.
    pub fn collapse(&self, a: usize) -> Mor {
        Mor {
            src: a,
            dst: self.cond[a].obj,
            data: self.cond[a].map.clone(),
        }
    }

    pub fn condense(&self, f: &Mor) -> Mor {
        let (s, t) = (&self.cond[f.src], &self.cond[f.dst]);
        let mut data: MorData = smallvec::smallvec![0u32; self.graphs[s.obj].n];
        for (v, &c) in s.map.iter().enumerate() {
            data[c as usize] = t.map[f.data[v] as usize];
        }
        Mor {
            src: s.obj,
            dst: t.obj,
            data,
        }
    }

    fn reverse(&self, f: &Mor) -> Mor {
        let (s, t) = (&self.rev[f.src], &self.rev[f.dst]);
        let mut data: MorData = smallvec::smallvec![0u32; s.map.len()];
        for (v, &w) in s.map.iter().enumerate() {
            data[w as usize] = t.map[f.data[v] as usize];
        }
        Mor {
            src: s.obj,
            dst: t.obj,
            data,
        }
    }

    pub fn vertex_map(&self, src: usize, dst: usize, images: &[u32]) -> Result<Mor> {
        let m = Mor { src, dst, data: images.into() };
        if m.data.len() != self.graphs[src].n || !self.respects_edges(&m) {
            return Err(Error::Category(format!("not a graph map: {}", self.describe_mor(&m))));
        }
        Ok(m)
    }

    fn respects_edges(&self, f: &Mor) -> bool {
        let h = &self.graphs[f.dst];
        self.edges[f.src].iter().all(|&(u, v)| {
            let (a, b) = (f.data[u] as usize, f.data[v] as usize);
            a == b || h.has(a, b)
        })
    }
}

impl WeCategory for GraphCat {
    fn name(&self) -> &str {
        &self.name
    }

    fn object_count(&self) -> usize {
        self.graphs.len()
    }

    fn describe(&self, a: usize) -> String {
        let es: Vec<String> = self.edges[a].iter().map(|(u, v)| format!("{u}→{v}")).collect();
        format!("G{}[{}]", self.graphs[a].n, es.join(","))
    }

    fn identity(&self, a: usize) -> Mor {
        Mor {
            src: a,
            dst: a,
            data: (0..self.graphs[a].n as u32).collect(),
        }
    }

    fn compose(&self, g: &Mor, f: &Mor) -> Result<Mor> {
        if f.dst != g.src {
            return Err(Error::Category(format!("cannot compose {} after {}", self.describe_mor(g), self.describe_mor(f))));
        }
        Ok(Mor {
            src: f.src,
            dst: g.dst,
            data: f.data.iter().map(|&v| g.data[v as usize]).collect(),
        })
    }

    fn is_we(&self, f: &Mor) -> bool {
        self.is_iso(&self.condense(f))
    }

    fn is_iso(&self, f: &Mor) -> bool {
        if f.src != f.dst {
            return false;
        }
        let mut seen = 0u32;
        f.data.iter().all(|&v| {
            let fresh = seen >> v & 1 == 0;
            seen |= 1 << v;
            fresh
        })
    }

    fn for_each_hom(&self, a: usize, b: usize, visit: &mut dyn FnMut(Mor) -> bool) -> Result<()> {
        let (n, m) = (self.graphs[a].n, self.graphs[b].n);
        if n > 0 && m == 0 {
            return Ok(());
        }
        let h = &self.graphs[b];
        let edges = &self.edges[a];
        let mut images = vec![0u32; n];
        loop {
            let ok = edges.iter().all(|&(u, v)| {
                let (x, y) = (images[u] as usize, images[v] as usize);
                x == y || h.has(x, y)
            });
            if ok
                && !visit(Mor {
                    src: a,
                    dst: b,
                    data: MorData::from_slice(&images),
                })
            {
                return Ok(());
            }
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(());
                }
                images[k] += 1;
                if (images[k] as usize) < m {
                    break;
                }
                images[k] = 0;
                k += 1;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFunctorKind {
    Vertices,
    VerticesEdges,
    Reversal,
    Condensation,
}

/// The model's functors; `Vertices` and `VerticesEdges` land in finite sets.
pub struct GraphFunctor {
    kind: GraphFunctorKind,
    graphs: Arc<GraphCat>,
    source: Category,
    target: Category,
}

impl WeFunctor for GraphFunctor {
    fn name(&self) -> String {
        match self.kind {
            GraphFunctorKind::Vertices => "vertices",
            GraphFunctorKind::VerticesEdges => "vertices+edges",
            GraphFunctorKind::Reversal => "reversal",
            GraphFunctorKind::Condensation => "condensation",
        }
        .into()
    }

    fn source(&self) -> &Category {
        &self.source
    }

    fn target(&self) -> &Category {
        &self.target
    }

    fn on_obj(&self, a: usize) -> usize {
        let g = &self.graphs;
        match self.kind {
            GraphFunctorKind::Vertices => g.graphs[a].n,
            GraphFunctorKind::VerticesEdges => g.graphs[a].n + g.edges[a].len(),
            GraphFunctorKind::Reversal => g.rev[a].obj,
            GraphFunctorKind::Condensation => g.cond[a].obj,
        }
    }

    fn on_mor(&self, f: &Mor) -> Mor {
        let g = &self.graphs;
        match self.kind {
            GraphFunctorKind::Vertices => Mor {
                src: self.on_obj(f.src),
                dst: self.on_obj(f.dst),
                data: f.data.clone(),
            },
            GraphFunctorKind::VerticesEdges => {
                let n = g.graphs[f.dst].n;
                let mut data = f.data.clone();
                for &(u, v) in &g.edges[f.src] {
                    let (x, y) = (f.data[u] as usize, f.data[v] as usize);
                    data.push(if x == y {
                        x as u32
                    } else {
                        let k = g.edges[f.dst].binary_search(&(x, y)).expect("edge maps to an edge");
                        (n + k) as u32
                    });
                }
                Mor {
                    src: self.on_obj(f.src),
                    dst: self.on_obj(f.dst),
                    data,
                }
            }
            GraphFunctorKind::Reversal => g.reverse(f),
            GraphFunctorKind::Condensation => g.condense(f),
        }
    }
}

/// The graph category, finite sets, the functor suite, the condensation
/// deformation and the model's natural transformations.
pub struct GraphModel {
    pub graphs: Arc<GraphCat>,
    pub cat: Category,
    pub sets: Category,
    pub functors: Vec<Functor>,
    pub condensation: RightDeformation,
    pub sets_deformation: RightDeformation,
}

impl GraphModel {
    pub fn new(max: usize) -> Result<Self> {
        let graphs = Arc::new(GraphCat::new(max)?);
        let cat: Category = graphs.clone();
        let sets: Category = Arc::new(FinSetCat::new(max + max * max.saturating_sub(1)));
        let make = |kind| -> Functor {
            let target = match kind {
                GraphFunctorKind::Vertices | GraphFunctorKind::VerticesEdges => sets.clone(),
                _ => cat.clone(),
            };
            Arc::new(GraphFunctor {
                kind,
                graphs: graphs.clone(),
                source: cat.clone(),
                target,
            })
        };
        let functors = vec![
            make(GraphFunctorKind::Vertices),
            make(GraphFunctorKind::VerticesEdges),
            make(GraphFunctorKind::Reversal),
            make(GraphFunctorKind::Condensation),
            Arc::new(super::IdentityFunctor(cat.clone())) as Functor,
        ];
        let r = functors[3].clone();
        let id = functors[4].clone();
        let g2 = graphs.clone();
        let unit = NatTrans::new("η", id, r.clone(), move |a| Ok(g2.collapse(a)))?;
        let radiant = (0..graphs.object_count()).map(|a| graphs.is_radiant(a)).collect();
        let condensation = RightDeformation::new("condensation", cat.clone(), radiant, r, unit)?;
        let sets_deformation = RightDeformation::trivial(&sets);
        Ok(GraphModel {
            graphs,
            cat,
            sets,
            functors,
            condensation,
            sets_deformation,
        })
    }

    pub fn functor(&self, name: &str) -> Result<Functor> {
        let name = match name {
            "V" | "vertex-set" => "vertices",
            "V+E" | "vertices⊔edges" => "vertices+edges",
            "rev" => "reversal",
            "cond" => "condensation",
            other => other,
        };
        self.functors
            .iter()
            .find(|f| f.name() == name)
            .cloned()
            .ok_or_else(|| Error::Category(format!("unknown functor {name}")))
    }

    /// The deformation living on a functor's source.
    pub fn deformation_for(&self, f: &Functor) -> &RightDeformation {
        if f.source().name() == self.cat.name() {
            &self.condensation
        } else {
            &self.sets_deformation
        }
    }

    /// `ι : V ⇒ V⊔E`.
    pub fn inclusion(&self) -> NatTrans {
        let g = self.graphs.clone();
        NatTrans::new("ι", self.functors[0].clone(), self.functors[1].clone(), move |a| {
            let n = g.graph(a).n;
            Ok(Mor {
                src: n,
                dst: n + g.edges(a).len(),
                data: (0..n as u32).collect(),
            })
        })
        .expect("same shape")
    }

    /// `src : V⊔E ⇒ V`, sending an edge to its source.
    pub fn source_map(&self) -> NatTrans {
        let g = self.graphs.clone();
        NatTrans::new("src", self.functors[1].clone(), self.functors[0].clone(), move |a| {
            let n = g.graph(a).n;
            let mut data: MorData = (0..n as u32).collect();
            data.extend(g.edges(a).iter().map(|&(u, _)| u as u32));
            Ok(Mor {
                src: n + g.edges(a).len(),
                dst: n,
                data,
            })
        })
        .expect("same shape")
    }

    pub fn unit(&self) -> NatTrans {
        self.condensation.unit.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{check_category, check_functor, check_natural};

    #[test]
    fn object_counts_match_known_sequence() {
        // Unlabeled loopless digraphs on 0..=3 vertices: 1, 1, 3, 16.
        assert_eq!(GraphCat::new(3).unwrap().object_count(), 21);
    }

    #[test]
    fn condensation_examples() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        let c = g.condensed();
        assert_eq!((c.n, c.edges().len()), (2, 1));
        let dag = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(dag.condensed(), dag);
    }

    #[test]
    fn small_model_is_a_category_with_functors() {
        let r = check_category(GraphModel::new(2).unwrap().cat.as_ref()).unwrap();
        assert!(r.valid, "{:?}", r.violations);
        let m = GraphModel::new(3).unwrap();
        for f in &m.functors {
            assert_eq!(check_functor(f).unwrap(), None, "{}", f.name());
        }
        assert_eq!(check_natural(&m.unit()).unwrap(), None);
        assert_eq!(check_natural(&m.inclusion()).unwrap(), None);
        assert_eq!(check_natural(&m.source_map()).unwrap(), None);
    }

    #[test]
    fn two_cycle_collapse_is_a_weak_equivalence_not_preserved_by_vertices() {
        let m = GraphModel::new(2).unwrap();
        let (cycle, _) = m.graphs.locate(&Graph::new(2, &[(0, 1), (1, 0)]).unwrap()).unwrap();
        let collapse = m.graphs.collapse(cycle);
        assert!(m.cat.is_we(&collapse));
        assert_eq!((collapse.src, m.graphs.graph(collapse.dst).n), (cycle, 1));
        let v = m.functor("vertices").unwrap();
        assert!(!m.sets.is_we(&v.on_mor(&collapse)));
    }
}
