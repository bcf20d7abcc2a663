//! Randomized coherence suites and their reports.
//!
//! Instance `i` of a run draws from the stream `(seed, i)`, so a report
//! depends only on the configuration, never on the number of workers.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::basechange::{bc_assoc, bc_final, bc_unit, vert_comp, vert_unit};
use crate::bicategory::{
    compare_cells, compare_maps, compose, compose_all, pentagon, rotator, shadow, shadow_assoc,
    shadow_on_2cells, shadow_unitor, triangle, Cell1, Cell2, Divergence, Verdict,
};
use crate::equivariant::{
    gexternal_product, icon_comp, icon_unit, m_phi_naturality, phi_assoc, phi_pullback, phi_pushforward,
    phi_rotator, phi_smash, phi_unit, restrict_strict, s_phi, FinGroup, GCell1, GSpace, Subgroup,
};
use crate::error::{Error, Result};
use crate::finset::{pullback, FinMap, FinSet};
use crate::fuller::{
    boxprod, nat_comp, nat_unit, pseudo_assoc, pseudo_unit, tau, twist_cell, twist_compat, vartheta_naturality,
};
use crate::random::{instance_rng, two_point_base, Bounds, GGen, Gen};
use crate::smbf::{
    beck_chevalley, search_automorphisms, Context, IndexedSpace, ParamSet, SpaceMap, Square, DEFAULT_BUDGET,
};

pub const SUITES: &[&str] = &[
    "pentagon",
    "triangle",
    "shadow_assoc",
    "shadow_unitor",
    "theta",
    "interchange",
    "shadow_functor",
    "beck_chevalley",
    "rigidity",
    "fuller.assoc",
    "fuller.unit",
    "fuller.nat_comp",
    "fuller.nat_unit",
    "fuller.twist",
    "fuller.vartheta",
    "fuller.tau",
    "bc.assoc",
    "bc.unit",
    "bc.vert_comp",
    "bc.vert_unit",
    "bc.final",
    "equivariant.assoc",
    "equivariant.unit",
    "equivariant.rotator",
    "equivariant.shadow",
    "equivariant.icon_unit",
    "equivariant.icon",
    "equivariant.naturality",
    "equivariant.restrict",
    "equivariant.smash",
    "equivariant.pullback",
    "equivariant.pushforward",
];

/// Where instances live.
#[derive(Clone, Debug, Default)]
pub enum BaseChoice {
    /// Each instance picks the point or the two-point base.
    #[default]
    Mixed,
    Point,
    Over(FinSet),
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    /// Arity for the n-ary suites; drawn from 1..=3 per instance when unset.
    pub n: Option<usize>,
    pub bounds: Bounds,
    pub base: BaseChoice,
    /// Drawn from C2, C3, S3 per instance when unset.
    pub group: Option<FinGroup>,
    /// Drawn from all subgroups per instance when unset.
    pub subgroup: Option<String>,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            seed: 0,
            instances: 100,
            n: None,
            bounds: Bounds::default(),
            base: BaseChoice::Mixed,
            group: None,
            subgroup: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub instance: usize,
    /// Everything the instance generated, in order.
    pub data: Value,
    pub divergence: Divergence,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Worker count from `SPANSHADOW_WORKERS`; `None` leaves the choice to rayon.
pub fn workers_from_env() -> Option<usize> {
    std::env::var("SPANSHADOW_WORKERS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n| n > 0)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(cfg, workers_from_env())
}

pub fn run_suite_with(cfg: &SuiteConfig, workers: Option<usize>) -> Result<SuiteReport> {
    if !SUITES.contains(&cfg.suite.as_str()) {
        return Err(Error::UnknownDiagram(cfg.suite.clone()));
    }
    if cfg.n == Some(0) {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if let (Some(g), Some(h)) = (&cfg.group, &cfg.subgroup) {
        g.find_subgroup(h)?;
    }
    if cfg.subgroup.is_some() && cfg.group.is_none() {
        return Err(Error::Input("a subgroup needs a group".into()));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| Error::Input(format!("worker pool: {e}")))?;
    let outcomes: Vec<Option<Failure>> = pool.install(|| {
        (0..cfg.instances)
            .into_par_iter()
            .map(|i| {
                let verdict = match run_instance(cfg, i, false).0 {
                    Ok(None) => return None,
                    Ok(Some(d)) => d,
                    Err(e) => error_divergence(e),
                };
                let data = run_instance(cfg, i, true).1.unwrap_or(Value::Null);
                Some(Failure {
                    instance: i,
                    data,
                    divergence: verdict,
                })
            })
            .collect()
    });
    Ok(SuiteReport {
        suite: cfg.suite.clone(),
        seed: cfg.seed,
        instances: cfg.instances,
        failures: outcomes.into_iter().flatten().collect(),
    })
}

fn error_divergence(e: Error) -> Divergence {
    Divergence {
        element: "<error>".into(),
        left: e.to_string(),
        right: String::new(),
    }
}

/// Runs one instance; with `record`, also returns everything it generated.
pub fn run_instance(cfg: &SuiteConfig, i: usize, record: bool) -> (Result<Verdict>, Option<Value>) {
    let mut rng = instance_rng(cfg.seed, i as u64);
    let ctx = match &cfg.base {
        BaseChoice::Mixed => {
            if rng.gen_bool(0.5) {
                Context::over(two_point_base())
            } else {
                Context::absolute()
            }
        }
        BaseChoice::Point => Context::absolute(),
        BaseChoice::Over(b) => Context::over(b.clone()),
    };
    let n = cfg.n.unwrap_or_else(|| rng.gen_range(1..=3));
    let mut gen = Gen::new(&mut rng, cfg.bounds, ctx.clone());
    if record {
        gen.log = Some(Vec::new());
    }
    let verdict = if cfg.suite.starts_with("equivariant.") {
        let group = cfg.group.clone().unwrap_or_else(|| {
            [FinGroup::c2(), FinGroup::c3(), FinGroup::s3()]
                .choose(gen.rng)
                .expect("three groups")
                .clone()
        });
        let mut gg = GGen::new(&mut gen, group.clone());
        let h = match &cfg.subgroup {
            Some(spec) => group.find_subgroup(spec),
            None => Ok(gg.subgroup()),
        };
        let name = h.as_ref().map(Subgroup::name).unwrap_or_default();
        gg.gen.note("group", || json!({ "group": group.name(), "subgroup": name, "n": n }));
        h.and_then(|h| equivariant(&cfg.suite, &mut gg, &h, n))
    } else {
        gen.note("context", || json!({ "base": ctx.base().name(), "n": n }));
        plain(&cfg.suite, &mut gen, n)
    };
    let log = gen.log.take().map(Value::Array);
    (verdict, log)
}

fn spaces(gen: &mut Gen, n: usize) -> Vec<IndexedSpace> {
    (0..n).map(|_| gen.space()).collect()
}

fn cells(gen: &mut Gen, from: &[IndexedSpace], to: &[IndexedSpace]) -> Vec<Cell1> {
    from.iter().zip(to).map(|(a, b)| gen.cell(a, b)).collect()
}

fn chain(gen: &mut Gen, len: usize) -> Vec<Cell1> {
    let pts = spaces(gen, len + 1);
    cells(gen, &pts[..len], &pts[1..])
}

fn cycle(gen: &mut Gen, len: usize) -> Vec<Cell1> {
    let pts = spaces(gen, len);
    let next: Vec<_> = (0..len).map(|i| pts[(i + 1) % len].clone()).collect();
    cells(gen, &pts, &next)
}

/// A map out of a space covering both sources.
fn cospan(gen: &mut Gen, b: &IndexedSpace, c: &IndexedSpace) -> (SpaceMap, SpaceMap) {
    let set = FinSet::numbered("both", "p", b.len() + c.len());
    let both = IndexedSpace::new(
        set.clone(),
        FinMap::new(
            set,
            gen.ctx.base().clone(),
            b.to_base().images().iter().chain(c.to_base().images()).copied().collect(),
        )
        .expect("base points"),
    )
    .expect("valid space");
    let d = gen.space_covering(&both);
    let f = gen.map_into(b, &d).expect("covers b");
    let h = gen.map_into(c, &d).expect("covers c");
    (f, h)
}

fn plain(suite: &str, gen: &mut Gen, n: usize) -> Result<Verdict> {
    match suite {
        "pentagon" => {
            let c = chain(gen, 4);
            pentagon(&c[0], &c[1], &c[2], &c[3])
        }
        "triangle" => {
            let c = chain(gen, 2);
            triangle(&c[0], &c[1])
        }
        "shadow_assoc" => {
            let c = cycle(gen, 3);
            shadow_assoc(&c[0], &c[1], &c[2])
        }
        "shadow_unitor" => {
            let c = cycle(gen, 1);
            shadow_unitor(&c[0])
        }
        "theta" => {
            let c = cycle(gen, 2);
            let there = rotator(&c[0], &c[1])?;
            let back = rotator(&c[1], &c[0])?;
            let round = back.after(&there)?;
            Ok(compare_maps(round.forward(), &FinMap::identity(there.source())))
        }
        "interchange" => {
            let c = chain(gen, 2);
            let (x2, y2) = (&c[0], &c[1]);
            let p2 = gen.cell2_into(x2);
            let p1 = gen.cell2_into(p2.from());
            let q2 = gen.cell2_into(y2);
            let q1 = gen.cell2_into(q2.from());
            let left = Cell2::hcomp(&p2.after(&p1)?, &q2.after(&q1)?)?;
            let right = Cell2::hcomp(&p2, &q2)?.after(&Cell2::hcomp(&p1, &q1)?)?;
            Ok(compare_cells(&left, &right))
        }
        "shadow_functor" => {
            let c = cycle(gen, 1);
            let psi = gen.cell2_into(&c[0]);
            let phi = gen.cell2_into(psi.from());
            let left = shadow_on_2cells(&psi.after(&phi)?)?;
            let right = shadow_on_2cells(&psi)?.after(&shadow_on_2cells(&phi)?)?;
            Ok(compare_maps(&left, &right))
        }
        "beck_chevalley" => {
            let (b, c) = (gen.space(), gen.space());
            let (f, h) = cospan(gen, &b, &c);
            let pb = pullback(f.map(), h.map())?;
            let to_base = b.to_base().after(&pb.left)?;
            let apex = IndexedSpace::new(pb.set.clone(), to_base)?;
            let square = Square {
                k: SpaceMap::new(apex.clone(), b.clone(), pb.left)?,
                j: SpaceMap::new(apex, c, pb.right)?,
                f,
                h,
            };
            let fibers: Vec<usize> = (0..b.len()).map(|_| gen.rng.gen_range(0..=gen.bounds.fiber)).collect();
            let x = ParamSet::with_fibers(&b, &fibers, "x")?;
            let bc = beck_chevalley(&square, &x)?;
            Ok((bc.left.len() != bc.right.len()).then(|| Divergence {
                element: "<size>".into(),
                left: bc.left.len().to_string(),
                right: bc.right.len().to_string(),
            }))
        }
        "rigidity" => {
            let arity = gen.rng.gen_range(0..=n.min(2));
            let span = gen.rigid_span(arity);
            let family = gen.covering_family(&span);
            let autos = search_automorphisms(&span, &family, DEFAULT_BUDGET)?;
            let identity = |a: &Vec<Vec<usize>>| a.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j));
            Ok((autos.len() != 1 || !identity(&autos[0])).then(|| Divergence {
                element: "<automorphisms>".into(),
                left: "1".into(),
                right: autos.len().to_string(),
            }))
        }
        "fuller.assoc" => {
            let pts: Vec<_> = (0..4).map(|_| spaces(gen, n)).collect();
            let ms = cells(gen, &pts[0], &pts[1]);
            let ns = cells(gen, &pts[1], &pts[2]);
            let ps = cells(gen, &pts[2], &pts[3]);
            pseudo_assoc(&ms, &ns, &ps)
        }
        "fuller.unit" => {
            let (a, b) = (spaces(gen, n), spaces(gen, n));
            pseudo_unit(&cells(gen, &a, &b))
        }
        "fuller.nat_comp" => {
            let (a, b, c) = (spaces(gen, n), spaces(gen, n), spaces(gen, n));
            let ms = cells(gen, &a, &b);
            let ns = cells(gen, &b, &c);
            nat_comp(&ms, &ns)
        }
        "fuller.nat_unit" => nat_unit(&spaces(gen, n)),
        "fuller.twist" => {
            let (a, b) = (spaces(gen, n), spaces(gen, n));
            let next: Vec<_> = (0..n).map(|i| a[(i + 1) % n].clone()).collect();
            let rs = cells(gen, &a, &b);
            let ss = cells(gen, &b, &next);
            twist_compat(&rs, &ss)
        }
        "fuller.vartheta" => {
            let (a, b) = (spaces(gen, n), spaces(gen, n));
            let targets = cells(gen, &a, &b);
            let phis: Vec<_> = targets.iter().map(|t| gen.cell2_into(t)).collect();
            vartheta_naturality(&phis)
        }
        "fuller.tau" => {
            let qs = cycle(gen, n);
            let t = tau(&qs)?;
            let srcs: Vec<_> = qs.iter().map(|q| q.src().clone()).collect();
            let lhs = shadow(&compose(&twist_cell(&srcs)?, &boxprod(&qs)?)?)?.len();
            let rhs = shadow(&compose_all(&qs)?)?.len();
            Ok((lhs != rhs || t.source().len() != lhs).then(|| Divergence {
                element: "<size>".into(),
                left: lhs.to_string(),
                right: rhs.to_string(),
            }))
        }
        "bc.assoc" => {
            let a = gen.space();
            let f = gen.map_from(&a);
            let g = gen.map_from(f.target());
            let h = gen.map_from(g.target());
            bc_assoc(&h, &g, &f)
        }
        "bc.unit" => {
            let a = gen.space();
            bc_unit(&gen.map_from(&a))
        }
        "bc.vert_comp" => {
            let a = spaces(gen, n);
            let fs: Vec<_> = a.iter().map(|s| gen.map_from(s)).collect();
            let gs: Vec<_> = fs.iter().map(|f| gen.map_from(f.target())).collect();
            vert_comp(&gs, &fs)
        }
        "bc.vert_unit" => vert_unit(&spaces(gen, n)),
        "bc.final" => {
            let e = spaces(gen, n);
            let ps: Vec<_> = e.iter().map(|s| gen.map_from(s)).collect();
            bc_final(&ps)
        }
        other => Err(Error::UnknownDiagram(other.to_string())),
    }
}

fn gchain(gg: &mut GGen, len: usize) -> Vec<GCell1> {
    let pts: Vec<GSpace> = (0..=len).map(|_| gg.space()).collect();
    (0..len).map(|i| gg.cell(&pts[i], &pts[i + 1])).collect()
}

fn equivariant(suite: &str, gg: &mut GGen, h: &Subgroup, n: usize) -> Result<Verdict> {
    match suite {
        "equivariant.assoc" => {
            let c = gchain(gg, 3);
            phi_assoc(&c[0], &c[1], &c[2], h)
        }
        "equivariant.unit" => {
            let c = gchain(gg, 1);
            phi_unit(&c[0], h)
        }
        "equivariant.rotator" => {
            let (a, b) = (gg.space(), gg.space());
            let x = gg.cell(&a, &b);
            let y = gg.cell(&b, &a);
            phi_rotator(&x, &y, h)
        }
        "equivariant.shadow" => {
            let a = gg.space();
            let x = gg.cell(&a, &a);
            s_phi(&x, h).map(|_| None)
        }
        "equivariant.icon_unit" => icon_unit(&gg.space(), h),
        "equivariant.icon" => {
            let a = gg.space();
            let f = gg.map_from(&a);
            let g = gg.map_from(f.target());
            icon_comp(&g, &f, h)
        }
        "equivariant.naturality" => {
            let c = gchain(gg, 2);
            let (x, phi) = gg.cell2_into(&c[0], h);
            let (y, psi) = gg.cell2_into(&c[1], h);
            m_phi_naturality(&phi, (&x, &c[0]), &psi, (&y, &c[1]), h)
        }
        "equivariant.restrict" => {
            let (a, b) = (gg.space(), gg.space());
            let x = gg.cell(&a, &b);
            let y = gg.cell(&b, &a);
            let f = gg.map_from(&a);
            restrict_strict(&x, &y, &f, h)
        }
        "equivariant.smash" => {
            let xs: Vec<_> = (0..n)
                .map(|_| {
                    let a = gg.space();
                    gg.param(&a)
                })
                .collect();
            let ctx = gg.gen.ctx.clone();
            gexternal_product(&ctx, &xs)?;
            phi_smash(&ctx, &xs, h)
        }
        "equivariant.pullback" => {
            let a = gg.space();
            let f = gg.map_from(&a);
            let y = gg.param(f.target());
            phi_pullback(&f, &y, h)
        }
        "equivariant.pushforward" => {
            let a = gg.space();
            let f = gg.map_from(&a);
            let y = gg.param(&a);
            phi_pushforward(&f, &y, h)
        }
        other => Err(Error::UnknownDiagram(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: &str) -> SuiteReport {
        let mut cfg = SuiteConfig::new(suite);
        cfg.instances = 12;
        cfg.seed = 5;
        run_suite_with(&cfg, Some(1)).unwrap()
    }

    #[test]
    fn every_suite_passes_a_few_instances() {
        for suite in SUITES {
            let report = quick(suite);
            assert!(report.passed(), "{suite}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite(&SuiteConfig::new("hexagon")).is_err());
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let mut cfg = SuiteConfig::new("pentagon");
        cfg.instances = 20;
        let one = run_suite_with(&cfg, Some(1)).unwrap();
        let three = run_suite_with(&cfg, Some(3)).unwrap();
        assert_eq!(one.to_json_line(), three.to_json_line());
    }

    #[test]
    fn recording_reproduces_the_instance() {
        let cfg = SuiteConfig::new("triangle");
        let (a, log) = run_instance(&cfg, 3, true);
        let (b, none) = run_instance(&cfg, 3, false);
        assert_eq!(a.unwrap(), b.unwrap());
        assert!(none.is_none());
        assert!(log.unwrap().as_array().unwrap().len() >= 3);
    }
}
