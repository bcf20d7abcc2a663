//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use spanshadow::basechange::base_change;
use spanshadow::deformation::graph::{Graph, GraphModel};
use spanshadow::deformation::{
    check_horizontal, check_vertical, compare_composites, derived_functor, homotopy_category, validate_deformation,
    Stage,
};
use spanshadow::equivariant::{weyl, FinGroup, GSet, Subgroup};
use spanshadow::finset::{Elem, FinMap, FinSet};
use spanshadow::fuller::{cyclic_shift, twist_cell};
use spanshadow::invariants::{divisors, equivariant_fix_count, fix_count, fuller_count, least_period_count, EndoMap};
use spanshadow::random::{context, instance_rng, two_point_base, Bounds, Gen};
use spanshadow::smbf::{search_automorphisms, Context, Family, MultiSpan, SpaceMap, DEFAULT_BUDGET};
use spanshadow::suite::{run_suite_with, BaseChoice, SuiteConfig, SuiteReport};

type Outcome = Result<String, String>;

fn suite(name: &str, n: Option<usize>, instances: usize, base: &BaseChoice, seed: u64) -> Result<SuiteReport, String> {
    let mut cfg = SuiteConfig::new(name);
    cfg.n = n;
    cfg.instances = instances;
    cfg.base = base.clone();
    cfg.seed = seed;
    run_suite_with(&cfg, None).map_err(|e| format!("{name}: {e}"))
}

fn gsuite(name: &str, g: &FinGroup, h: &Subgroup, instances: usize) -> Result<SuiteReport, String> {
    let mut cfg = SuiteConfig::new(name);
    cfg.instances = instances;
    cfg.group = Some(g.clone());
    cfg.subgroup = Some(h.members().iter().map(|&m| g.elements().elem(m).to_string()).collect::<Vec<_>>().join(","));
    run_suite_with(&cfg, None).map_err(|e| format!("{name}: {e}"))
}

/// Runs every (suite, n) pair and summarizes.
fn suites(names: &[&str], ns: &[Option<usize>], instances: usize, base: &BaseChoice) -> Outcome {
    let mut total = 0;
    for name in names {
        for &n in ns {
            let r = suite(name, n, instances, base, 1)?;
            if let Some(f) = r.failures.first() {
                return Err(format!("{name} n={n:?}: instance {} diverges: {:?}", f.instance, f.divergence));
            }
            total += r.instances;
        }
    }
    Ok(format!("{} suites, {total} instances", names.len() * ns.len()))
}

fn timed(limit: Duration, what: &str, body: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = body()?;
    let spent = start.elapsed();
    if spent > limit {
        return Err(format!("{what} took {spent:.1?}, limit {limit:?}"));
    }
    Ok(format!("{out} in {spent:.1?}"))
}

fn bicategory(base: &BaseChoice) -> Outcome {
    timed(Duration::from_secs(10), "pentagon and triangle", || {
        suites(&["pentagon", "triangle"], &[None], 200, base)
    })
}

fn shadow(base: &BaseChoice) -> Outcome {
    suites(&["shadow_assoc", "shadow_unitor", "theta"], &[None], 200, base)
}

const FULLER: [&str; 7] = [
    "fuller.assoc",
    "fuller.unit",
    "fuller.nat_comp",
    "fuller.nat_unit",
    "fuller.twist",
    "fuller.vartheta",
    "fuller.tau",
];

fn fuller(base: &BaseChoice) -> Outcome {
    suites(&FULLER, &[Some(1), Some(2), Some(3)], 100, base)
}

/// The twist 1-cell is, structurally, the base change of the cyclic shift.
fn twist_is_base_change(fibered: Option<bool>) -> Outcome {
    let mut checked = 0;
    for i in 0..300u64 {
        let mut rng = instance_rng(2, i);
        let fib = fibered.unwrap_or(i % 2 == 1);
        let mut gen = Gen::new(&mut rng, Bounds::default(), context(fib));
        let n = 1 + (i % 3) as usize;
        let spaces: Vec<_> = (0..n).map(|_| gen.space()).collect();
        let t = twist_cell(&spaces).map_err(|e| e.to_string())?;
        let gamma = cyclic_shift(&spaces).map_err(|e| e.to_string())?;
        if t != base_change(&gamma) {
            return Err(format!("instance {i}: T differs from [Γ]"));
        }
        checked += 1;
    }
    Ok(format!("T = [Γ] on {checked} generated lists"))
}

fn base_change_suites(base: &BaseChoice) -> Outcome {
    let s = suites(
        &["bc.assoc", "bc.unit", "bc.vert_comp", "bc.vert_unit", "bc.final"],
        &[Some(1), Some(2), Some(3)],
        100,
        base,
    )?;
    let fibered = match base {
        BaseChoice::Mixed => None,
        BaseChoice::Point => Some(false),
        BaseChoice::Over(_) => Some(true),
    };
    let t = twist_is_base_change(fibered)?;
    Ok(format!("{s}; {t}"))
}

fn rigidity() -> Outcome {
    let s = suites(&["rigidity"], &[Some(1), Some(2), Some(3)], 100, &BaseChoice::Mixed)?;
    // Every generated span is rigid.
    for i in 0..200u64 {
        let mut rng = instance_rng(3, i);
        let mut gen = Gen::new(&mut rng, Bounds::default(), context(i % 2 == 0));
        let span = gen.rigid_span((i % 3) as usize);
        if !span.is_rigid() {
            return Err(format!("generated span {i} is not rigid"));
        }
    }
    // Two points over one: the swap is a second automorphism.
    let b = FinSet::atoms("B", &["b0", "b1"]).unwrap();
    let ctx = Context::absolute();
    let apex = ctx.space(b.clone()).unwrap();
    let pt = ctx.base_space();
    let f = SpaceMap::new(apex.clone(), pt.clone(), FinMap::new(b, pt.space().clone(), vec![0, 0]).unwrap()).unwrap();
    let witness = MultiSpan::new(ctx, f, vec![]).unwrap();
    let autos = search_automorphisms(&witness, &Family::default(), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    if autos.len() != 2 {
        return Err(format!("non-rigid witness has {} automorphisms, expected 2", autos.len()));
    }
    Ok(format!("{s}; witness has 2 automorphisms"))
}

const EQUIVARIANT: [&str; 11] = [
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

/// `N(H)` by conjugating `H` as a set.
fn normalizer_oracle(g: &FinGroup, h: &Subgroup) -> Vec<usize> {
    let hs: BTreeSet<usize> = h.members().iter().copied().collect();
    (0..g.order())
        .filter(|&x| {
            let conj: BTreeSet<usize> = hs.iter().map(|&k| g.mul(g.mul(x, k), g.inv(x))).collect();
            conj == hs
        })
        .collect()
}

fn equivariance() -> Outcome {
    let mut runs = 0;
    let mut pairs = 0;
    for name in ["C2", "C3", "S3"] {
        let g = FinGroup::builtin(name).unwrap();
        for h in g.subgroups() {
            pairs += 1;
            let w = weyl(&h);
            let n = normalizer_oracle(&g, &h);
            if w.normalizer != n || w.group.order() * h.order() != n.len() {
                return Err(format!("Weyl group of {} in {name} is wrong", h.name()));
            }
            // The table is the product of cosets.
            for (a, &ra) in w.reps.iter().enumerate() {
                for (b, &rb) in w.reps.iter().enumerate() {
                    let c = w.reps[w.group.mul(a, b)];
                    if !h.contains(g.mul(g.inv(c), g.mul(ra, rb))) {
                        return Err(format!("Weyl multiplication of {} in {name} is wrong", h.name()));
                    }
                }
            }
            for s in EQUIVARIANT {
                let r = gsuite(s, &g, &h, 50)?;
                if let Some(f) = r.failures.first() {
                    return Err(format!("{s} G={name} H={}: instance {} diverges: {:?}", h.name(), f.instance, f.divergence));
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} suite runs over {pairs} (G, H) pairs; Weyl groups match"))
}

fn fiberwise() -> Outcome {
    let base = BaseChoice::Over(two_point_base());
    let parts = [bicategory(&base)?, shadow(&base)?, fuller(&base)?, base_change_suites(&base)?];
    Ok(parts.join("; "))
}

/// Every function `{0..k} → {0..k}`.
fn all_endofunctions(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn iterate(f: &[usize], x: usize, n: usize) -> usize {
    (0..n).fold(x, |y, _| f[y])
}

fn invariants() -> Outcome {
    timed(Duration::from_secs(60), "exhaustive counts", || {
        let mut maps = 0;
        for k in 0..=5 {
            let set = FinSet::numbered("X", "x", k);
            for f in all_endofunctions(k) {
                maps += 1;
                let e = EndoMap::new(FinMap::new(set.clone(), set.clone(), f.clone()).unwrap()).unwrap();
                for n in 1..=6 {
                    let fixed: BTreeSet<Elem> = (0..k).filter(|&x| iterate(&f, x, n) == x).map(|x| set.elem(x)).collect();
                    let count = fix_count(&e, n).map_err(|e| e.to_string())?;
                    if count != fixed.len() {
                        return Err(format!("fix_count {f:?}, n={n}: {count} vs {}", fixed.len()));
                    }
                    let c = fuller_count(&e, n).map_err(|e| e.to_string())?;
                    let image: BTreeSet<Elem> = c.bijection.forward().images().iter().map(|&i| c.bijection.target().elem(i)).collect();
                    if c.count != count || image != fixed {
                        return Err(format!("fuller_count {f:?}, n={n} does not biject onto Fix(fⁿ)"));
                    }
                    let mut sum = 0;
                    for d in divisors(n) {
                        sum += least_period_count(&e, d).map_err(|e| e.to_string())?;
                    }
                    if sum != count as i64 {
                        return Err(format!("least periods of {f:?} below n={n} sum to {sum}, not {count}"));
                    }
                }
            }
        }
        let (actions, checks) = c2_counts()?;
        Ok(format!("{maps} endofunctions × n ≤ 6; {actions} C2-actions, {checks} equivariant counts"))
    })
}

/// Equivariant counts for every C2-action on ≤ 4 points and every
/// equivariant endomap, against direct enumeration.
fn c2_counts() -> Result<(usize, usize), String> {
    let g = FinGroup::c2();
    let subgroups = g.subgroups();
    let t = g.index_of("t").unwrap();
    let (mut actions, mut checks) = (0, 0);
    for k in 0..=4 {
        let set = FinSet::numbered("X", "x", k);
        for s in all_endofunctions(k) {
            if (0..k).any(|x| s[s[x]] != x) {
                continue;
            }
            actions += 1;
            let mut act = vec![vec![0; k]; 2];
            act[g.unit()] = (0..k).collect();
            act[t] = s.clone();
            let gset = GSet::new(g.clone(), set.clone(), act).map_err(|e| e.to_string())?;
            for f in all_endofunctions(k) {
                if (0..k).any(|x| f[s[x]] != s[f[x]]) {
                    continue;
                }
                let fm = FinMap::new(set.clone(), set.clone(), f.clone()).unwrap();
                for h in &subgroups {
                    for n in 1..=4 {
                        let expected = (0..k)
                            .filter(|&x| (!h.contains(t) || s[x] == x) && iterate(&f, x, n) == x)
                            .count();
                        let got = equivariant_fix_count(&gset, &fm, h, n).map_err(|e| e.to_string())?;
                        if got != expected {
                            return Err(format!("C2 on {s:?}, f={f:?}, H={}, n={n}: {got} vs {expected}", h.name()));
                        }
                        checks += 1;
                    }
                }
            }
        }
    }
    Ok((actions, checks))
}

/// Strongly connected components by forward and backward search.
fn scc_count(g: &Graph) -> usize {
    let reach = |from: usize, forward: bool| -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for v in 0..g.n {
                let edge = if forward { g.has(u, v) } else { g.has(v, u) };
                if edge && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    };
    let mut classes = BTreeSet::new();
    for u in 0..g.n {
        let f = reach(u, true);
        let b = reach(u, false);
        classes.insert(f.intersection(&b).copied().collect::<Vec<_>>());
    }
    classes.len()
}

/// Acyclic graphs on at most `max` vertices, counted up to isomorphism by
/// brute-force canonical forms.
fn acyclic_classes(max: usize) -> usize {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let mut classes = BTreeSet::new();
    for n in 0..=max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        let ps = perms(n);
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            let g = Graph::new(n, &edges).unwrap();
            if scc_count(&g) != n {
                continue;
            }
            let canon = ps
                .iter()
                .map(|p| {
                    let mut e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (p[u], p[v])).collect();
                    e.sort();
                    e
                })
                .min()
                .unwrap();
            classes.insert((n, canon));
        }
    }
    classes.len()
}

fn deformation() -> Outcome {
    let m = GraphModel::new(4).map_err(|e| e.to_string())?;
    let err = |e: spanshadow::Error| e.to_string();
    for f in &m.functors {
        let r = validate_deformation(f, m.deformation_for(f)).map_err(err)?;
        if !r.valid {
            return Err(format!("{}: {:?}", r.checked, r.violations));
        }
    }
    let v = m.functor("vertex-set").map_err(err)?;
    let rv = derived_functor(&v, &m.condensation).map_err(err)?;
    for a in 0..m.cat.object_count() {
        // Skeletal finite sets: the object index is the cardinality.
        if rv.on_obj(a) != scc_count(m.graphs.graph(a)) {
            return Err(format!("ℝV({}) is not the set of components", m.cat.describe(a)));
        }
    }
    let stage = |name: &str| -> Result<Stage, String> {
        let functor = m.functor(name).map_err(err)?;
        Ok(Stage {
            deformation: m.deformation_for(&functor).clone(),
            functor,
        })
    };
    for pair in [["condensation", "vertices"], ["reversal", "vertices"], ["reversal", "condensation"]] {
        let list = [stage(pair[0])?, stage(pair[1])?];
        let cmp = compare_composites(&list).map_err(err)?;
        let end = list[1].functor.target().clone();
        for a in 0..m.cat.object_count() {
            if !end.is_we(&cmp.at(a).map_err(err)?) {
                return Err(format!("{pair:?}: comparison at {} is not a weak equivalence", m.cat.describe(a)));
            }
        }
    }
    let d = &m.condensation;
    if let Some(w) = check_vertical(&m.inclusion(), &m.source_map(), d).map_err(err)? {
        return Err(w);
    }
    if let Some(w) = check_horizontal(&m.unit(), &m.inclusion(), d, d).map_err(err)? {
        return Err(w);
    }
    let ho = homotopy_category(d).map_err(err)?;
    let expected = acyclic_classes(4);
    let objects = ho.ho.objects();
    if objects.len() != expected || objects.iter().any(|&a| scc_count(m.graphs.graph(a)) != m.graphs.graph(a).n) {
        return Err(format!("Ho has {} objects, expected {expected} acyclic graphs", objects.len()));
    }
    Ok(format!(
        "{} graphs; ℝV = components; 3 comparisons; squares commute; Ho has {expected} objects",
        m.cat.object_count()
    ))
}

fn determinism() -> Outcome {
    let over = BaseChoice::Over(two_point_base());
    let runs: [(&str, Option<usize>, &BaseChoice); 4] = [
        ("pentagon", None, &BaseChoice::Mixed),
        ("fuller.twist", Some(3), &BaseChoice::Mixed),
        ("bc.final", Some(2), &over),
        ("rigidity", Some(2), &BaseChoice::Mixed),
    ];
    for (name, n, base) in runs {
        let mut cfg = SuiteConfig::new(name);
        cfg.n = n;
        cfg.base = base.clone();
        cfg.seed = 42;
        let a = run_suite_with(&cfg, Some(1)).map_err(|e| e.to_string())?.to_json_line();
        let b = run_suite_with(&cfg, Some(4)).map_err(|e| e.to_string())?.to_json_line();
        let c = run_suite_with(&cfg, None).map_err(|e| e.to_string())?.to_json_line();
        if a != b || a != c {
            return Err(format!("{name}: reports differ between runs"));
        }
    }
    let g = FinGroup::s3();
    let h = g.find_subgroup("A3").unwrap();
    let a = gsuite("equivariant.icon", &g, &h, 50)?.to_json_line();
    let b = gsuite("equivariant.icon", &g, &h, 50)?.to_json_line();
    if a != b {
        return Err("equivariant.icon: reports differ between runs".into());
    }
    Ok("5 suites rerun with identical bytes".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("bicategory axioms", || bicategory(&BaseChoice::Mixed)),
        ("shadow axioms", || shadow(&BaseChoice::Mixed)),
        ("n-Fuller structure", || fuller(&BaseChoice::Mixed)),
        ("base change", || base_change_suites(&BaseChoice::Mixed)),
        ("rigidity", rigidity),
        ("equivariance", equivariance),
        ("fiberwise", fiberwise),
        ("invariants oracle", invariants),
        ("deformation calculus", deformation),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
