//! Base-change 1-cells `[f]` and their pseudofunctor structure.
//!
//! For `f: A → B` the cell `[f]` runs from `B` to `A`: its total is `A`, with
//! legs `f` and the identity. Thus `[g] ⊙ [f] ≅ [g ∘ f]`.

use crate::bicategory::{
    associator, compare_cells, compare_maps, compose, left_unitor, right_unitor, shadow, unit,
    Cell1, Divergence, Iso2, Verdict,
};
use crate::error::{Error, Result};
use crate::fuller::{boxprod, cyclic_shift, i_box, m_box, rotate, twist_cell, vartheta};
use crate::finset::{Elem, FinMap, FinSet};
use crate::smbf::{fiber_product, fiber_tuple, IndexedSpace, MultiSpan, SpaceMap};

/// `[f]`, from the codomain of `f` to its domain.
pub fn base_change(f: &SpaceMap) -> Cell1 {
    let a = f.source();
    Cell1::new(
        a.context(),
        f.target().clone(),
        a.clone(),
        f.map().clone(),
        FinMap::identity(a.space()),
    )
    .expect("a map over the base gives a span over the base")
}

/// The nullary multi-span `B ×_B' A ← A` (via `(f, 1)`) whose action is `[f]`.
pub fn defining_span(f: &SpaceMap) -> Result<MultiSpan> {
    let a = f.source();
    let ctx = a.context();
    let leg = fiber_tuple(&ctx, a, &[f.clone(), SpaceMap::identity(a)])?;
    MultiSpan::new(ctx, leg, Vec::new())
}

/// `i_[]`: `U_A` and `[id_A]` coincide.
pub fn unit_is_identity_base_change(a: &IndexedSpace) -> bool {
    unit(a) == base_change(&SpaceMap::identity(a))
}

/// `m_[] : [g] ⊙ [f] ≅ [g ∘ f]`, `(b, a) ↦ a`.
pub fn m_bc(g: &SpaceMap, f: &SpaceMap) -> Result<Iso2> {
    let gf = g.after(f)?;
    let from = compose(&base_change(g), &base_change(f))?;
    let to = base_change(&gf);
    Iso2::from_fn(&from, &to, |e| {
        e.as_pair().expect("composite element").1.clone()
    })
}

/// `[f]^{⊙n} ≅ [f^n]` for an endomap, by iterating `m_[]`.
pub fn iterate_bc(f: &SpaceMap, n: usize) -> Result<Iso2> {
    if n == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    let cell = base_change(f);
    let mut acc = Iso2::identity(&cell);
    let mut power = f.clone();
    for _ in 1..n {
        // [f]^{⊙k} ⊙ [f] → [f^k] ⊙ [f] → [f^k ∘ f]
        let step = acc.whisker_right(&cell)?;
        acc = m_bc(&power, f)?.after(&step)?;
        power = power.after(f)?;
    }
    Ok(acc)
}

/// The product map `∏ f_i : ∏ A_i → ∏ B_i` over the base.
pub fn product_map(fs: &[SpaceMap]) -> Result<SpaceMap> {
    let (first, _) = fs
        .split_first()
        .ok_or(Error::Arity { expected: 1, got: 0 })?;
    let ctx = first.source().context();
    let srcs: Vec<_> = fs.iter().map(|f| f.source().clone()).collect();
    let dsts: Vec<_> = fs.iter().map(|f| f.target().clone()).collect();
    let source = fiber_product(&ctx, &srcs)?;
    let target = fiber_product(&ctx, &dsts)?;
    let maps: Vec<_> = fs.iter().map(SpaceMap::map).collect();
    let map = crate::bicategory::pair_map(source.space(), target.space(), &maps)?;
    SpaceMap::new(source, target, map)
}

/// `ν : ⊠ [f_i] ≅ [∏ f_i]`, the identity on tuples.
pub fn nu(fs: &[SpaceMap]) -> Result<Iso2> {
    let cells: Vec<_> = fs.iter().map(base_change).collect();
    let from = boxprod(&cells)?;
    let to = base_change(&product_map(fs)?);
    Iso2::from_fn(&from, &to, Elem::clone)
}

/// `⟨[f]⟩`, the fixed points of an endomap.
pub fn fixed_points(f: &SpaceMap) -> Result<FinSet> {
    shadow(&base_change(f))
}

/// Pseudofunctor associator axiom for `[]`, with `f: A→B`, `g: B→C`, `h: C→D`.
pub fn bc_assoc(h: &SpaceMap, g: &SpaceMap, f: &SpaceMap) -> Result<Verdict> {
    let (bh, bg, bf) = (base_change(h), base_change(g), base_change(f));
    let hg = h.after(g)?;
    let gf = g.after(f)?;
    let left = m_bc(h, g)?.whisker_right(&bf)?;
    let left = m_bc(&hg, f)?.after(&left)?;
    let right = associator(&bh, &bg, &bf)?;
    let right = m_bc(g, f)?.whisker_left(&bh)?.after(&right)?;
    let right = m_bc(h, &gf)?.after(&right)?;
    Ok(compare_cells(left.forward(), right.forward()))
}

/// Pseudofunctor unitor axioms: `ℓ = m_[] ∘ (i_[] ⊙ id)` and its mirror.
pub fn bc_unit(f: &SpaceMap) -> Result<Verdict> {
    let cell = base_change(f);
    if !unit_is_identity_base_change(f.target()) || !unit_is_identity_base_change(f.source()) {
        return Ok(Some(Divergence {
            element: "<unit>".into(),
            left: "U".into(),
            right: "[id]".into(),
        }));
    }
    let via = m_bc(&SpaceMap::identity(f.target()), f)?;
    if let Some(d) = compare_cells(left_unitor(&cell)?.forward(), via.forward()) {
        return Ok(Some(d));
    }
    let via = m_bc(f, &SpaceMap::identity(f.source()))?;
    Ok(compare_cells(right_unitor(&cell)?.forward(), via.forward()))
}

/// Vertical composition axiom: both routes from `(⊠[g_i]) ⊙ (⊠[f_i])` to
/// `[∏ (g_i ∘ f_i)]`.
pub fn vert_comp(gs: &[SpaceMap], fs: &[SpaceMap]) -> Result<Verdict> {
    let bgs: Vec<_> = gs.iter().map(base_change).collect();
    let bfs: Vec<_> = fs.iter().map(base_change).collect();
    let gfs: Vec<_> = gs.iter().zip(fs).map(|(g, f)| g.after(f)).collect::<Result<_>>()?;
    let left = Iso2::hcomp(&nu(gs)?, &nu(fs)?)?;
    let left = m_bc(&product_map(gs)?, &product_map(fs)?)?.after(&left)?;
    let ms = gs
        .iter()
        .zip(fs)
        .map(|(g, f)| m_bc(g, f))
        .collect::<Result<Vec<_>>>()?;
    let right = m_box(&bgs, &bfs)?;
    let right = crate::fuller::box_iso(&ms)?.after(&right)?;
    let right = nu(&gfs)?.after(&right)?;
    if product_map(gs)?.after(&product_map(fs)?)? != product_map(&gfs)? {
        return Ok(Some(Divergence {
            element: "<product>".into(),
            left: "∏g ∘ ∏f".into(),
            right: "∏(g∘f)".into(),
        }));
    }
    Ok(compare_cells(left.forward(), right.forward()))
}

/// Vertical unit axiom: `ν ∘ i_⊠` is the identity of `U_{∏ A_i}`.
pub fn vert_unit(spaces: &[IndexedSpace]) -> Result<Verdict> {
    let ids: Vec<_> = spaces.iter().map(SpaceMap::identity).collect();
    let route = nu(&ids)?.after(&i_box(spaces)?)?;
    let ctx = spaces[0].context();
    let u = unit(&fiber_product(&ctx, spaces)?);
    Ok(compare_cells(Iso2::identity(&u).forward(), route.forward()))
}

/// Final compatibility axiom for `p_i : E_i → B_i`: both routes from
/// `T_{(B_i)} ⊙ ⊠[p_i]` to `[Γ ∘ ∏ p_i]`, reading `T` as `[Γ]`.
pub fn bc_final(ps: &[SpaceMap]) -> Result<Verdict> {
    let bs: Vec<_> = ps.iter().map(|p| p.target().clone()).collect();
    let es: Vec<_> = ps.iter().map(|p| p.source().clone()).collect();
    let gamma_b = cyclic_shift(&bs)?;
    let gamma_e = cyclic_shift(&es)?;
    let tb = twist_cell(&bs)?;
    let te = twist_cell(&es)?;
    if tb != base_change(&gamma_b) || te != base_change(&gamma_e) {
        return Ok(Some(Divergence {
            element: "<twist>".into(),
            left: "T".into(),
            right: "[Γ]".into(),
        }));
    }
    let cells: Vec<_> = ps.iter().map(base_change).collect();
    let pp = product_map(ps)?;
    let rp = product_map(&rotate(ps))?;
    let left = vartheta(&cells)?;
    let left = nu(&rotate(ps))?.whisker_right(&te)?.after(&left)?;
    let left = m_bc(&rp, &gamma_e)?.after(&left)?;
    let right = nu(ps)?.whisker_left(&tb)?;
    let right = m_bc(&gamma_b, &pp)?.after(&right)?;
    let square = compare_maps(rp.after(&gamma_e)?.map(), gamma_b.after(&pp)?.map());
    if square.is_some() {
        return Ok(square);
    }
    Ok(compare_cells(left.forward(), right.forward()))
}
