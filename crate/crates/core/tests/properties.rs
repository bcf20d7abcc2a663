use proptest::prelude::*;

use spanshadow::bicategory::{compose, shadow, Cell1};
use spanshadow::finset::{pullback, FinMap, FinSet};
use spanshadow::invariants::{fix_count, fuller_count, least_period_count, EndoMap};
use spanshadow::smbf::{Context, IndexedSpace};

fn set(name: &str, n: usize) -> FinSet {
    FinSet::numbered(name, &format!("{}", name.to_lowercase()), n)
}

fn map(src: &FinSet, dst: &FinSet, images: &[usize]) -> FinMap {
    FinMap::new(src.clone(), dst.clone(), images.iter().map(|i| i % dst.len()).collect()).unwrap()
}

fn space(s: &FinSet) -> IndexedSpace {
    Context::absolute().space(s.clone()).unwrap()
}

/// A span `A ← X → B` on raw image lists.
fn cell(a: &FinSet, b: &FinSet, total: &str, legs: &[(usize, usize)]) -> Cell1 {
    let x = set(total, legs.len());
    let to_a = map(&x, a, &legs.iter().map(|l| l.0).collect::<Vec<_>>());
    let to_b = map(&x, b, &legs.iter().map(|l| l.1).collect::<Vec<_>>());
    Cell1::new(Context::absolute(), space(a), space(b), to_a, to_b).unwrap()
}

fn images(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..64usize, 0..=max)
}

proptest! {
    #[test]
    fn composition_of_maps_is_associative(n in 1..5usize, f in images(4), g in images(4), h in images(4)) {
        let a = set("A", n);
        let b = set("B", 3);
        let c = set("C", 2);
        let d = set("D", 4);
        let f = map(&a, &b, &(0..n).map(|i| f.get(i).copied().unwrap_or(i)).collect::<Vec<_>>());
        let g = map(&b, &c, &(0..3).map(|i| g.get(i).copied().unwrap_or(i)).collect::<Vec<_>>());
        let h = map(&c, &d, &(0..2).map(|i| h.get(i).copied().unwrap_or(i)).collect::<Vec<_>>());
        let left = h.after(&g.after(&f).unwrap()).unwrap();
        let right = h.after(&g).unwrap().after(&f).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn pullback_size_and_symmetry(f in images(5), g in images(5), c in 1..4usize) {
        let cs = set("C", c);
        let a = set("A", f.len());
        let b = set("B", g.len());
        let fm = map(&a, &cs, &f);
        let gm = map(&b, &cs, &g);
        let expected: usize = (0..c)
            .map(|k| f.iter().filter(|&&x| x % c == k).count() * g.iter().filter(|&&y| y % c == k).count())
            .sum();
        let p = pullback(&fm, &gm).unwrap();
        let q = pullback(&gm, &fm).unwrap();
        prop_assert_eq!(p.set.len(), expected);
        prop_assert_eq!(q.set.len(), expected);
        // Each leg commutes with the cospan.
        prop_assert_eq!(fm.after(&p.left).unwrap(), gm.after(&p.right).unwrap());
    }

    #[test]
    fn span_composite_size(
        x in prop::collection::vec((0..8usize, 0..8usize), 0..6),
        y in prop::collection::vec((0..8usize, 0..8usize), 0..6),
    ) {
        let (a, b, c) = (set("A", 2), set("B", 3), set("C", 2));
        let xs = cell(&a, &b, "X", &x);
        let ys = cell(&b, &c, "Y", &y);
        let expected: usize = (0..3)
            .map(|k| x.iter().filter(|l| l.1 % 3 == k).count() * y.iter().filter(|l| l.0 % 3 == k).count())
            .sum();
        prop_assert_eq!(compose(&xs, &ys).unwrap().len(), expected);
    }

    #[test]
    fn shadow_counts_diagonal_points(x in prop::collection::vec((0..8usize, 0..8usize), 0..8)) {
        let a = set("A", 3);
        let xs = cell(&a, &a, "X", &x);
        let diagonal = x.iter().filter(|l| l.0 % 3 == l.1 % 3).count();
        prop_assert_eq!(shadow(&xs).unwrap().len(), diagonal);
    }

    #[test]
    fn fixed_point_counts_match_iteration(f in prop::collection::vec(0..5usize, 1..=5), n in 1..=6usize) {
        let a = set("A", f.len());
        let m = map(&a, &a, &f);
        let k = f.len();
        let iterate = |x: usize| (0..n).fold(x, |y, _| f[y] % k);
        let expected = (0..k).filter(|&x| iterate(x) == x).count();
        let e = EndoMap::new(m).unwrap();
        prop_assert_eq!(fix_count(&e, n).unwrap(), expected);
        prop_assert_eq!(fuller_count(&e, n).unwrap().count, expected);
        let least = (0..k)
            .filter(|&x| iterate(x) == x && (1..n).all(|d| (0..d).fold(x, |y, _| f[y] % k) != x))
            .count() as i64;
        prop_assert_eq!(least_period_count(&e, n).unwrap(), least);
    }
}
