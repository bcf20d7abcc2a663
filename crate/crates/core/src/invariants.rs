//! Fixed- and periodic-point counts computed through shadows.
//!
//! Counts are unsigned: the discrete model carries no orientation data.

use std::collections::HashMap;

use crate::basechange::{base_change, iterate_bc};
use crate::bicategory::shadow_of_iso;
use crate::equivariant::{icon_eta, GMap, GSet, GSpace, Subgroup};
use crate::error::{Error, Result};
use crate::finset::{Bijection, FinMap};
use crate::fuller::tau;
use crate::smbf::{Context, SpaceMap};

/// Largest `n` accepted by the period counters.
pub const MAX_PERIOD: usize = 1_000_000;

/// An endomap of a finite set, viewed over the one-point base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoMap {
    map: SpaceMap,
}

impl EndoMap {
    pub fn new(f: FinMap) -> Result<Self> {
        if f.source() != f.target() {
            return Err(Error::NotEndo {
                src: f.source().name().to_string(),
                dst: f.target().name().to_string(),
            });
        }
        let space = Context::absolute().space(f.source().clone())?;
        Ok(EndoMap {
            map: SpaceMap::new(space.clone(), space, f)?,
        })
    }

    pub fn from_space_map(map: SpaceMap) -> Result<Self> {
        if map.source() != map.target() {
            return Err(Error::NotEndo {
                src: map.source().space().name().to_string(),
                dst: map.target().space().name().to_string(),
            });
        }
        Ok(EndoMap { map })
    }

    pub fn map(&self) -> &SpaceMap {
        &self.map
    }

    pub fn finmap(&self) -> &FinMap {
        self.map.map()
    }
}

fn check_period(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("period must be at least 1".into()));
    }
    if n > MAX_PERIOD {
        return Err(Error::Input(format!("period {n} exceeds {MAX_PERIOD}")));
    }
    Ok(())
}

/// `|⟨[f]^{⊙n}⟩|`, certified against `⟨[fⁿ]⟩` through the iterated `m_[]`.
pub fn fix_count(f: &EndoMap, n: usize) -> Result<usize> {
    check_period(n)?;
    let iso = iterate_bc(&f.map, n)?;
    let b = shadow_of_iso(&iso)?;
    Ok(b.source().len())
}

/// The result of routing a periodic-point count through the twist cell.
#[derive(Clone, Debug)]
pub struct FullerCount {
    pub count: usize,
    /// `⟨T ⊙ ⊠[f]⟩ ≅ ⟨[fⁿ]⟩`, composed from `τ` and the iterated `m_[]`.
    pub bijection: Bijection,
}

/// `|⟨T ⊙ ⊠_i [f]⟩|` together with its bijection onto the fixed points of `fⁿ`.
pub fn fuller_count(f: &EndoMap, n: usize) -> Result<FullerCount> {
    check_period(n)?;
    let cell = base_change(&f.map);
    let qs = vec![cell; n];
    let t = tau(&qs)?;
    let m = shadow_of_iso(&iterate_bc(&f.map, n)?)?;
    let bijection = m.after(&t)?;
    Ok(FullerCount {
        count: bijection.source().len(),
        bijection,
    })
}

/// Möbius function by its recursive definition.
pub fn mobius(n: usize, memo: &mut HashMap<usize, i64>) -> i64 {
    if n == 1 {
        return 1;
    }
    if let Some(&m) = memo.get(&n) {
        return m;
    }
    let m = -divisors(n)
        .into_iter()
        .filter(|&d| d < n)
        .map(|d| mobius(d, memo))
        .sum::<i64>();
    memo.insert(n, m);
    m
}

/// Divisors of `n` in increasing order, by trial division.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Points of exact period `n`: `Σ_{d|n} μ(n/d) · fix_count(f, d)`.
pub fn least_period_count(f: &EndoMap, n: usize) -> Result<i64> {
    check_period(n)?;
    let mut memo = HashMap::new();
    let mut total = 0i64;
    for d in divisors(n) {
        total += mobius(n / d, &mut memo) * fix_count(f, d)? as i64;
    }
    Ok(total)
}

/// `|⟨Φ^H [f]^{⊙n}⟩|`, identified with `⟨[f^H]^{⊙n}⟩` through `η`.
pub fn equivariant_fix_count(action: &GSet, f: &FinMap, h: &Subgroup, n: usize) -> Result<usize> {
    check_period(n)?;
    EndoMap::new(f.clone())?;
    let space = GSpace::new(Context::absolute().space(action.set().clone())?, action.clone())?;
    let g = GMap::new(space.clone(), space, f.clone())?;
    icon_eta(&g, h)?;
    let fixed = g.fixed(h)?;
    fix_count(&EndoMap::from_space_map(fixed.map().clone())?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::FinGroup;
    use crate::finset::FinSet;

    fn endo(images: &[usize]) -> EndoMap {
        let a = FinSet::numbered("A", "a", images.len());
        EndoMap::new(FinMap::new(a.clone(), a, images.to_vec()).unwrap()).unwrap()
    }

    fn iterate_oracle(images: &[usize], n: usize) -> usize {
        (0..images.len())
            .filter(|&a| (0..n).fold(a, |x, _| images[x]) == a)
            .count()
    }

    #[test]
    fn identity_and_cycles() {
        assert_eq!(fix_count(&endo(&[0, 1, 2, 3]), 5).unwrap(), 4);
        let c3 = endo(&[1, 2, 0]);
        assert_eq!(fix_count(&c3, 3).unwrap(), 3);
        assert_eq!(fix_count(&c3, 1).unwrap(), 0);
        let swap = endo(&[1, 0, 2]);
        assert_eq!(fix_count(&swap, 2).unwrap(), 3);
    }

    #[test]
    fn fuller_route_agrees() {
        let id = endo(&[0, 1, 2]);
        assert_eq!(fuller_count(&id, 2).unwrap().count, 3);
        let c4 = endo(&[1, 2, 3, 0]);
        assert_eq!(fuller_count(&c4, 2).unwrap().count, 0);
        assert_eq!(fuller_count(&c4, 4).unwrap().count, 4);
    }

    #[test]
    fn least_periods() {
        let c3 = endo(&[1, 2, 0]);
        assert_eq!(least_period_count(&c3, 3).unwrap(), 3);
        assert_eq!(least_period_count(&c3, 1).unwrap(), 0);
        let swap = endo(&[1, 0, 2]);
        assert_eq!(least_period_count(&swap, 2).unwrap(), 2);
        assert_eq!(least_period_count(&endo(&[0, 1, 2, 3]), 2).unwrap(), 0);
    }

    #[test]
    fn mobius_small_values() {
        let mut memo = HashMap::new();
        let mu: Vec<i64> = (1..=12).map(|n| mobius(n, &mut memo)).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }

    #[test]
    fn zero_period_is_rejected() {
        assert!(fix_count(&endo(&[0]), 0).is_err());
    }

    #[test]
    fn non_endo_is_rejected() {
        let f = FinMap::new(FinSet::numbered("A", "a", 2), FinSet::numbered("B", "b", 2), vec![0, 1]).unwrap();
        assert!(matches!(EndoMap::new(f), Err(Error::NotEndo { .. })));
    }

    #[test]
    fn exhaustive_on_three_points() {
        for code in 0..27 {
            let images = [code % 3, (code / 3) % 3, code / 9];
            let f = endo(&images);
            for n in 1..=4 {
                let expected = iterate_oracle(&images, n);
                assert_eq!(fix_count(&f, n).unwrap(), expected);
                assert_eq!(fuller_count(&f, n).unwrap().count, expected);
            }
        }
    }

    #[test]
    fn equivariant_counts() {
        let g = FinGroup::c2();
        let set = FinSet::atoms("X", &["x", "y", "z"]).unwrap();
        let swap = GSet::new(g.clone(), set.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let id = FinMap::identity(&set);
        assert_eq!(equivariant_fix_count(&swap, &id, &g.whole(), 1).unwrap(), 1);
        assert_eq!(equivariant_fix_count(&swap, &id, &g.trivial_subgroup(), 1).unwrap(), 3);
        let collapse = FinMap::new(set.clone(), set, vec![0, 0, 2]).unwrap();
        assert!(equivariant_fix_count(&swap, &collapse, &g.whole(), 1).is_err());
    }
}
