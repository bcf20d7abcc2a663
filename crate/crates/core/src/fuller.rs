//! The shadowed n-Fuller structure: the external product `⊠` of spans, the
//! twist 1-cells `T`, the pseudonatural `ϑ` and the shadow comparison `τ`.
//!
//! Indices are cyclic: `i + 1` wraps around mod `n`.

use crate::bicategory::{
    associator, compare_cells, compare_maps, compose, compose_all, left_unitor, pair_map,
    rebracket, right_unitor, rotator, shadow, shadow_of_iso, unit, Bracketing, Cell1, Cell2,
    Iso2, Verdict,
};
use crate::error::{Error, Result};
use crate::finset::{Bijection, Elem, FinMap};
use crate::smbf::{fiber_product, Context, IndexedSpace, SpaceMap};

fn nonempty<T>(items: &[T]) -> Result<()> {
    if items.is_empty() {
        return Err(Error::Arity {
            expected: 1,
            got: 0,
        });
    }
    Ok(())
}

fn shared_ctx(cells: &[Cell1]) -> Result<Context> {
    nonempty(cells)?;
    let ctx = cells[0].ctx().clone();
    if cells.iter().any(|c| c.ctx() != &ctx) {
        return Err(Error::ContextMismatch("cells over different bases".into()));
    }
    Ok(ctx)
}

/// `(x1, .., xn) ↦ (x2, .., xn, x1)`.
pub fn rotate<T: Clone>(items: &[T]) -> Vec<T> {
    let mut out = items.to_vec();
    if !out.is_empty() {
        out.rotate_left(1);
    }
    out
}

/// `Γ : ∏ A_i → ∏ A_{i+1}`, moving the leftmost coordinate to the right.
pub fn cyclic_shift(spaces: &[IndexedSpace]) -> Result<SpaceMap> {
    nonempty(spaces)?;
    let ctx = spaces[0].context();
    let source = fiber_product(&ctx, spaces)?;
    let target = fiber_product(&ctx, &rotate(spaces))?;
    let map = if spaces.len() == 1 {
        FinMap::identity(source.space())
    } else {
        let mut buf = Vec::new();
        FinMap::from_index_fn(source.space().clone(), target.space().clone(), |i| {
            source.space().coords_into(i, &mut buf);
            buf.rotate_left(1);
            target.space().from_coords(&buf).expect("rotated tuple")
        })?
    };
    SpaceMap::new(source, target, map)
}

/// `⊠ M_i : ∏ A_i → ∏ B_i`, the fiberwise product of the spans.
pub fn boxprod(cells: &[Cell1]) -> Result<Cell1> {
    let ctx = shared_ctx(cells)?;
    if cells.len() == 1 {
        return Ok(cells[0].clone());
    }
    let srcs: Vec<_> = cells.iter().map(|c| c.src().clone()).collect();
    let dsts: Vec<_> = cells.iter().map(|c| c.dst().clone()).collect();
    let totals: Vec<_> = cells.iter().map(Cell1::total_space).collect();
    let src = fiber_product(&ctx, &srcs)?;
    let dst = fiber_product(&ctx, &dsts)?;
    let total = fiber_product(&ctx, &totals)?;
    let to_src = pair_map(
        total.space(),
        src.space(),
        &cells.iter().map(Cell1::to_src).collect::<Vec<_>>(),
    )?;
    let to_dst = pair_map(
        total.space(),
        dst.space(),
        &cells.iter().map(Cell1::to_dst).collect::<Vec<_>>(),
    )?;
    Cell1::new(ctx, src, dst, to_src, to_dst)
}

/// `⊠ φ_i`, acting coordinatewise.
pub fn box_2cell(phis: &[Cell2]) -> Result<Cell2> {
    nonempty(phis)?;
    let from = boxprod(&phis.iter().map(|p| p.from().clone()).collect::<Vec<_>>())?;
    let to = boxprod(&phis.iter().map(|p| p.to().clone()).collect::<Vec<_>>())?;
    let maps: Vec<_> = phis.iter().map(Cell2::map).collect();
    let map = pair_map(from.total(), to.total(), &maps)?;
    Cell2::new(from, to, map)
}

pub fn box_iso(isos: &[Iso2]) -> Result<Iso2> {
    let fwd: Vec<_> = isos.iter().map(|i| i.forward().clone()).collect();
    Iso2::new(box_2cell(&fwd)?)
}

fn check_chain(ms: &[Cell1], ns: &[Cell1]) -> Result<()> {
    if ms.len() != ns.len() {
        return Err(Error::Arity {
            expected: ms.len(),
            got: ns.len(),
        });
    }
    for (m, n) in ms.iter().zip(ns) {
        if m.dst() != n.src() {
            return Err(Error::EndpointMismatch(format!(
                "{} ends where {} does not start",
                m.total().name(),
                n.total().name()
            )));
        }
    }
    Ok(())
}

/// `m_⊠ : (⊠ M_i) ⊙ (⊠ N_i) ≅ ⊠ (M_i ⊙ N_i)`, `((m⃗), (n⃗)) ↦ ((m_i, n_i))_i`.
pub fn m_box(ms: &[Cell1], ns: &[Cell1]) -> Result<Iso2> {
    check_chain(ms, ns)?;
    let n = ms.len();
    let from = compose(&boxprod(ms)?, &boxprod(ns)?)?;
    let pairs = ms
        .iter()
        .zip(ns)
        .map(|(m, n)| compose(m, n))
        .collect::<Result<Vec<_>>>()?;
    let to = boxprod(&pairs)?;
    Iso2::from_fn(&from, &to, |e| {
        let (mt, nt) = e.as_pair().expect("composite element");
        let ms = mt.untuple(n).expect("tuple");
        let ns = nt.untuple(n).expect("tuple");
        Elem::tuple(ms.into_iter().zip(ns).map(|(m, n)| Elem::pair(m, n)))
    })
}

/// `i_⊠ : U_{∏ A_i} ≅ ⊠ U_{A_i}`, the identity on tuples.
pub fn i_box(spaces: &[IndexedSpace]) -> Result<Iso2> {
    nonempty(spaces)?;
    let ctx = spaces[0].context();
    let from = unit(&fiber_product(&ctx, spaces)?);
    let to = boxprod(&spaces.iter().map(unit).collect::<Vec<_>>())?;
    Iso2::from_fn(&from, &to, Elem::clone)
}

/// `T_{(A_i)} : ∏ A_{i+1} → ∏ A_i`, with total `∏ A_i`, legs `(Γ, 1)`.
pub fn twist_cell(spaces: &[IndexedSpace]) -> Result<Cell1> {
    let gamma = cyclic_shift(spaces)?;
    let total = gamma.source().clone();
    Cell1::new(
        total.context(),
        gamma.target().clone(),
        total.clone(),
        gamma.map().clone(),
        FinMap::identity(total.space()),
    )
}

/// `ϑ : T_{(A_i)} ⊙ (⊠ M_i) ≅ (⊠ M_{i+1}) ⊙ T_{(B_i)}`,
/// `(t, m⃗) ↦ (rotate(m⃗), (dst m_i)_i)`.
pub fn vartheta(ms: &[Cell1]) -> Result<Iso2> {
    shared_ctx(ms)?;
    let n = ms.len();
    let srcs: Vec<_> = ms.iter().map(|m| m.src().clone()).collect();
    let dsts: Vec<_> = ms.iter().map(|m| m.dst().clone()).collect();
    let from = compose(&twist_cell(&srcs)?, &boxprod(ms)?)?;
    let to = compose(&boxprod(&rotate(ms))?, &twist_cell(&dsts)?)?;
    Iso2::from_fn(&from, &to, |e| {
        let (_, mt) = e.as_pair().expect("composite element");
        let items = mt.untuple(n).expect("tuple");
        let ends = items
            .iter()
            .zip(ms)
            .map(|(m, cell)| cell.to_dst().apply(m).expect("element of the span"));
        Elem::pair(Elem::tuple(rotate(&items)), Elem::tuple(ends))
    })
}

fn check_cycle(qs: &[Cell1]) -> Result<()> {
    nonempty(qs)?;
    for (q, next) in qs.iter().zip(rotate(qs).iter()) {
        if q.dst() != next.src() {
            return Err(Error::EndpointMismatch(format!(
                "cyclic chain breaks between {} and {}",
                q.total().name(),
                next.total().name()
            )));
        }
    }
    Ok(())
}

/// `τ : ⟨T_{(A_{i-1})} ⊙ ⊠ Q_i⟩ ≅ ⟨Q_1 ⊙ .. ⊙ Q_n⟩` for `Q_i : A_{i-1} → A_i`,
/// `(t, q⃗) ↦ ((q_1, q_2), ..)`.
pub fn tau(qs: &[Cell1]) -> Result<Bijection> {
    check_cycle(qs)?;
    let n = qs.len();
    let srcs: Vec<_> = qs.iter().map(|q| q.src().clone()).collect();
    let from = shadow(&compose(&twist_cell(&srcs)?, &boxprod(qs)?)?)?;
    let to = shadow(&compose_all(qs)?)?;
    Bijection::from_fn(from, to, |e| {
        let (_, qt) = e.as_pair().expect("composite element");
        Elem::tuple(qt.untuple(n).expect("tuple"))
    })
}

/// Pseudofunctor associator axiom for `⊠`.
pub fn pseudo_assoc(ms: &[Cell1], ns: &[Cell1], ps: &[Cell1]) -> Result<Verdict> {
    check_chain(ms, ns)?;
    check_chain(ns, ps)?;
    let mn: Vec<_> = ms.iter().zip(ns).map(|(m, n)| compose(m, n)).collect::<Result<_>>()?;
    let np: Vec<_> = ns.iter().zip(ps).map(|(n, p)| compose(n, p)).collect::<Result<_>>()?;
    let (bm, bn, bp) = (boxprod(ms)?, boxprod(ns)?, boxprod(ps)?);
    let alphas = (0..ms.len())
        .map(|i| associator(&ms[i], &ns[i], &ps[i]))
        .collect::<Result<Vec<_>>>()?;
    let left = m_box(ms, ns)?.whisker_right(&bp)?;
    let left = m_box(&mn, ps)?.after(&left)?;
    let left = box_iso(&alphas)?.after(&left)?;
    let right = associator(&bm, &bn, &bp)?;
    let right = m_box(ns, ps)?.whisker_left(&bm)?.after(&right)?;
    let right = m_box(ms, &np)?.after(&right)?;
    Ok(compare_cells(left.forward(), right.forward()))
}

/// Pseudofunctor unitor axioms for `⊠`, on both sides.
pub fn pseudo_unit(ms: &[Cell1]) -> Result<Verdict> {
    shared_ctx(ms)?;
    let bm = boxprod(ms)?;
    let srcs: Vec<_> = ms.iter().map(|m| m.src().clone()).collect();
    let dsts: Vec<_> = ms.iter().map(|m| m.dst().clone()).collect();
    let us: Vec<_> = srcs.iter().map(unit).collect();
    let lefts = ms.iter().map(left_unitor).collect::<Result<Vec<_>>>()?;
    let route = i_box(&srcs)?.whisker_right(&bm)?;
    let route = m_box(&us, ms)?.after(&route)?;
    let route = box_iso(&lefts)?.after(&route)?;
    if let Some(d) = compare_cells(left_unitor(&bm)?.forward(), route.forward()) {
        return Ok(Some(d));
    }
    let vs: Vec<_> = dsts.iter().map(unit).collect();
    let rights = ms.iter().map(right_unitor).collect::<Result<Vec<_>>>()?;
    let route = i_box(&dsts)?.whisker_left(&bm)?;
    let route = m_box(ms, &vs)?.after(&route)?;
    let route = box_iso(&rights)?.after(&route)?;
    Ok(compare_cells(right_unitor(&bm)?.forward(), route.forward()))
}

/// Pseudonatural composition axiom for `ϑ`.
pub fn nat_comp(ms: &[Cell1], ns: &[Cell1]) -> Result<Verdict> {
    check_chain(ms, ns)?;
    let srcs: Vec<_> = ms.iter().map(|m| m.src().clone()).collect();
    let mids: Vec<_> = ns.iter().map(|n| n.src().clone()).collect();
    let ends: Vec<_> = ns.iter().map(|n| n.dst().clone()).collect();
    let (ta, tb, tc) = (twist_cell(&srcs)?, twist_cell(&mids)?, twist_cell(&ends)?);
    let (bm, bn) = (boxprod(ms)?, boxprod(ns)?);
    let (rm, rn) = (rotate(ms), rotate(ns));
    let (brm, brn) = (boxprod(&rm)?, boxprod(&rn)?);
    let mn: Vec<_> = ms.iter().zip(ns).map(|(m, n)| compose(m, n)).collect::<Result<_>>()?;

    let down = vartheta(ms)?.whisker_right(&bn)?;
    let down = associator(&brm, &tb, &bn)?.after(&down)?;
    let down = vartheta(ns)?.whisker_left(&brm)?.after(&down)?;
    let down = associator(&brm, &brn, &tc)?.inverse().after(&down)?;
    let down = m_box(&rm, &rn)?.whisker_right(&tc)?.after(&down)?;

    let across = associator(&ta, &bm, &bn)?;
    let across = m_box(ms, ns)?.whisker_left(&ta)?.after(&across)?;
    let across = vartheta(&mn)?.after(&across)?;
    Ok(compare_cells(down.forward(), across.forward()))
}

/// Pseudonatural unit axiom: `ℓ = r ∘ (id ⊙ i_⊠)⁻¹ ∘ ϑ⁻¹ ∘ (i_⊠ ⊙ id)` on
/// `U_{∏ A_{i+1}} ⊙ T_{(A_i)}`.
pub fn nat_unit(spaces: &[IndexedSpace]) -> Result<Verdict> {
    let t = twist_cell(spaces)?;
    let us: Vec<_> = spaces.iter().map(unit).collect();
    let route = i_box(&rotate(spaces))?.whisker_right(&t)?;
    let route = vartheta(&us)?.inverse().after(&route)?;
    let route = i_box(spaces)?.whisker_left(&t)?.inverse().after(&route)?;
    let route = right_unitor(&t)?.after(&route)?;
    Ok(compare_cells(left_unitor(&t)?.forward(), route.forward()))
}

/// Naturality of `ϑ` along 2-cells `φ_i : M_i → M'_i`.
pub fn vartheta_naturality(phis: &[Cell2]) -> Result<Verdict> {
    nonempty(phis)?;
    let ms: Vec<_> = phis.iter().map(|p| p.from().clone()).collect();
    let ms2: Vec<_> = phis.iter().map(|p| p.to().clone()).collect();
    let srcs: Vec<_> = ms.iter().map(|m| m.src().clone()).collect();
    let dsts: Vec<_> = ms.iter().map(|m| m.dst().clone()).collect();
    let ta = Cell2::identity(&twist_cell(&srcs)?);
    let tb = Cell2::identity(&twist_cell(&dsts)?);
    let first = Cell2::hcomp(&box_2cell(&rotate(phis))?, &tb)?.after(vartheta(&ms)?.forward())?;
    let second = vartheta(&ms2)?
        .forward()
        .after(&Cell2::hcomp(&ta, &box_2cell(phis)?)?)?;
    Ok(compare_cells(&first, &second))
}

/// `[R_1, S_1, R_2, ..]` grouped as `((R_1 ⊙ S_1) ⊙ (R_2 ⊙ S_2)) ⊙ ..`.
fn paired(n: usize) -> Bracketing {
    let pair = || Bracketing::node(Bracketing::Leaf, Bracketing::Leaf);
    (1..n).fold(pair(), |acc, _| Bracketing::node(acc, pair()))
}

/// Compatibility of `τ` with the twist, for `R_i : A_{i-1} → B_i` and
/// `S_i : B_i → A_i`; both routes run from `⟨T_{(A_{i-1})} ⊙ (⊠R_i ⊙ ⊠S_i)⟩`
/// to `⟨(S_1 ⊙ R_2) ⊙ .. ⊙ (S_n ⊙ R_1)⟩`.
pub fn twist_compat(rs: &[Cell1], ss: &[Cell1]) -> Result<Verdict> {
    check_chain(rs, ss)?;
    check_chain(ss, &rotate(rs))?;
    let n = rs.len();
    let a_prev: Vec<_> = rs.iter().map(|r| r.src().clone()).collect();
    let bs: Vec<_> = rs.iter().map(|r| r.dst().clone()).collect();
    let ta = twist_cell(&a_prev)?;
    let tb = twist_cell(&bs)?;
    let rr = rotate(rs);
    let (br, bs_box, brr) = (boxprod(rs)?, boxprod(ss)?, boxprod(&rr)?);
    let qs: Vec<_> = rs.iter().zip(ss).map(|(r, s)| compose(r, s)).collect::<Result<_>>()?;
    let qs2: Vec<_> = ss.iter().zip(&rr).map(|(s, r)| compose(s, r)).collect::<Result<_>>()?;

    // Across the top, then θ with the evident rebracketings.
    let top = shadow_of_iso(&m_box(rs, ss)?.whisker_left(&ta)?)?;
    let top = tau(&qs)?.after(&top)?;
    let flat: Vec<_> = rs.iter().zip(ss).flat_map(|(r, s)| [r.clone(), s.clone()]).collect();
    let rest = Bracketing::left(2 * n - 1);
    let split = Bracketing::node(Bracketing::Leaf, rest.clone());
    let top = shadow_of_iso(&rebracket(&flat, &paired(n), &split)?)?.after(&top)?;
    let y = rest.compose(&flat[1..])?;
    let top = rotator(&rs[0], &y)?.after(&top)?;
    let turned = rotate(&flat);
    let joined = Bracketing::node(rest, Bracketing::Leaf);
    let top = shadow_of_iso(&rebracket(&turned, &joined, &paired(n))?)?.after(&top)?;

    // Down the side.
    let side = shadow_of_iso(&associator(&ta, &br, &bs_box)?.inverse())?;
    let side = shadow_of_iso(&vartheta(rs)?.whisker_right(&bs_box)?)?.after(&side)?;
    let side = shadow_of_iso(&associator(&brr, &tb, &bs_box)?)?.after(&side)?;
    let side = rotator(&brr, &compose(&tb, &bs_box)?)?.after(&side)?;
    let side = shadow_of_iso(&associator(&tb, &bs_box, &brr)?)?.after(&side)?;
    let side = shadow_of_iso(&m_box(ss, &rr)?.whisker_left(&tb)?)?.after(&side)?;
    let side = tau(&qs2)?.after(&side)?;
    Ok(compare_maps(top.forward(), side.forward()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSet;

    fn space(name: &str, prefix: &str, n: usize) -> IndexedSpace {
        Context::absolute().space(FinSet::numbered(name, prefix, n)).unwrap()
    }

    fn counted(src: &IndexedSpace, dst: &IndexedSpace, counts: &[&[usize]], tag: &str) -> Cell1 {
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

    /// The graph of `f` as a span from `A` to `A` (`a ↦ f(a)` read as a → f a).
    fn graph(a: &IndexedSpace, f: &[usize], tag: &str) -> Cell1 {
        let rows: Vec<Vec<usize>> = f
            .iter()
            .map(|&fa| (0..f.len()).map(|c| usize::from(c == fa)).collect())
            .collect();
        let refs: Vec<&[usize]> = rows.iter().map(Vec::as_slice).collect();
        counted(a, a, &refs, tag)
    }

    #[test]
    fn box_sizes() {
        let a = space("A", "a", 1);
        let b = space("B", "b", 2);
        let x = counted(&a, &b, &[&[1, 1]], "x");
        let y = counted(&b, &a, &[&[1], &[2]], "y");
        assert_eq!(boxprod(std::slice::from_ref(&x)).unwrap(), x);
        assert_eq!(boxprod(&[x.clone(), y.clone()]).unwrap().len(), 6);
        let e = counted(&a, &a, &[&[0]], "e");
        assert!(boxprod(&[x, e]).unwrap().is_empty());
    }

    #[test]
    fn twist_sizes_and_degenerate_cases() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 3);
        let t = twist_cell(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(twist_cell(std::slice::from_ref(&a)).unwrap(), unit(&a));
        assert!(twist_cell(&[a, space("E", "e", 0)]).unwrap().is_empty());
        assert!(matches!(twist_cell(&[]), Err(Error::Arity { .. })));
    }

    #[test]
    fn twist_leg_is_the_cyclic_shift() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 2);
        let c = space("C", "c", 2);
        let t = twist_cell(&[a, b, c]).unwrap();
        for i in 0..t.len() {
            let e = t.total().elem(i);
            let parts = e.untuple(3).unwrap();
            let shifted = t.src().space().elem(t.to_src().image(i));
            assert_eq!(shifted.untuple(3).unwrap(), rotate(&parts));
        }
    }

    #[test]
    fn m_box_and_i_box_have_matching_sizes() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 2);
        let m = counted(&a, &b, &[&[1, 2], &[0, 1]], "m");
        let n = counted(&b, &a, &[&[1, 0], &[1, 1]], "n");
        let iso = m_box(&[m.clone(), n.clone()], &[n, m]).unwrap();
        assert_eq!(iso.from().len(), iso.to().len());
        let ib = i_box(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(ib.from().len(), 4);
        assert!(i_box(&[a, space("E", "e", 0)]).unwrap().from().is_empty());
    }

    #[test]
    fn tau_on_a_three_cycle() {
        let a = space("A", "a", 3);
        let g = graph(&a, &[1, 2, 0], "g");
        let t = tau(&[g.clone(), g.clone(), g]).unwrap();
        assert_eq!(t.source().len(), 3);
    }

    #[test]
    fn tau_with_one_cell_drops_the_unit() {
        let a = space("A", "a", 2);
        let q = counted(&a, &a, &[&[1, 1], &[0, 2]], "q");
        let t = tau(std::slice::from_ref(&q)).unwrap();
        assert_eq!(t.target(), &shadow(&q).unwrap());
        assert_eq!(t.source().len(), 3);
    }

    #[test]
    fn coherence_on_small_examples() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 1);
        let r1 = counted(&a, &b, &[&[1], &[2]], "r");
        let s1 = counted(&b, &a, &[&[1, 1]], "s");
        let r2 = counted(&a, &b, &[&[0], &[1]], "p");
        let s2 = counted(&b, &a, &[&[2, 1]], "q");
        for n in 1..=2 {
            let (rs, ss) = (&[r1.clone(), r2.clone()][..n], &[s1.clone(), s2.clone()][..n]);
            assert_eq!(pseudo_assoc(rs, ss, rs).unwrap(), None);
            assert_eq!(pseudo_unit(rs).unwrap(), None);
            assert_eq!(nat_comp(rs, ss).unwrap(), None);
            assert_eq!(twist_compat(rs, ss).unwrap(), None);
        }
        assert_eq!(nat_unit(&[a.clone(), b.clone(), a]).unwrap(), None);
    }

    #[test]
    fn twist_compat_with_three_factors() {
        let a = space("A", "a", 2);
        let b = space("B", "b", 2);
        let r = counted(&a, &b, &[&[1, 0], &[1, 1]], "r");
        let s = counted(&b, &a, &[&[0, 1], &[1, 1]], "s");
        let rs = [r.clone(), r.clone(), r];
        let ss = [s.clone(), s.clone(), s];
        let qs: Vec<_> = rs.iter().zip(&ss).map(|(r, s)| compose(r, s).unwrap()).collect();
        assert!(tau(&qs).unwrap().source().len() > 1);
        assert_eq!(twist_compat(&rs, &ss).unwrap(), None);
    }

    #[test]
    fn vartheta_is_natural() {
        let a = space("A", "a", 2);
        let m = counted(&a, &a, &[&[1, 0], &[1, 1]], "m");
        let m2 = counted(&a, &a, &[&[1, 0], &[1, 2]], "w");
        // Send each element to the first element of the same fiber.
        let map = FinMap::new(m.total().clone(), m2.total().clone(), vec![0, 1, 2]).unwrap();
        let phi = Cell2::new(m, m2, map).unwrap();
        assert_eq!(vartheta_naturality(&[phi.clone(), phi]).unwrap(), None);
    }
}
