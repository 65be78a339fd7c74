//! Brute-force search for small transitive permutation pairs of a given
//! type, returning the regular closures they generate.

use super::perm::{lcm, Perm};
use super::regular::{orbit_count, regular_closure, RegularHypermap};
use crate::error::{Error, Result};
use crate::fpgroup::TriangleType;
use crate::par::{self, Exec};

/// Partitions of `d` into divisors of `l` whose lcm is exactly `l`,
/// largest parts first.
fn cycle_types(d: usize, l: u64) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, l: u64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            if cur.iter().fold(1u64, |a, &k| lcm(a, k as u64)) == l {
                out.push(cur.clone());
            }
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            if l % k as u64 == 0 {
                cur.push(k);
                rec(rest - k, k, l, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, d, l, &mut Vec::new(), &mut out);
    out
}

/// The permutation with consecutive cycles of the given lengths.
fn canonical_perm(d: usize, parts: &[usize]) -> Perm {
    let mut cycles = Vec::new();
    let mut start = 0u32;
    for &k in parts {
        cycles.push((start..start + k as u32).collect());
        start += k as u32;
    }
    Perm::from_cycles(d, &cycles).expect("parts sum to the degree")
}

/// Every permutation of `0..d` of order exactly `m`, ordered by cycle type
/// and then by image list.
fn perms_of_order(d: usize, m: u64) -> Vec<Perm> {
    fn rec(images: &mut Vec<u32>, free: &mut Vec<bool>, m: u64, ord: u64, out: &mut Vec<Vec<u32>>) {
        let Some(s) = free.iter().position(|&f| f) else {
            if ord == m {
                out.push(images.clone());
            }
            return;
        };
        free[s] = false;
        let avail = free.iter().filter(|&&f| f).count();
        for k in 1..=avail + 1 {
            if m % k as u64 != 0 {
                continue;
            }
            let mut cycle = vec![s as u32];
            extend(images, free, m, lcm(ord, k as u64), k, &mut cycle, out);
        }
        free[s] = true;
    }
    fn extend(
        images: &mut Vec<u32>,
        free: &mut Vec<bool>,
        m: u64,
        ord: u64,
        k: usize,
        cycle: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cycle.len() == k {
            for i in 0..k {
                images[cycle[i] as usize] = cycle[(i + 1) % k];
            }
            rec(images, free, m, ord, out);
            return;
        }
        for j in 0..free.len() {
            if free[j] {
                free[j] = false;
                cycle.push(j as u32);
                extend(images, free, m, ord, k, cycle, out);
                cycle.pop();
                free[j] = true;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..d as u32).collect(), &mut vec![true; d], m, 1, &mut out);
    let mut perms: Vec<Perm> = out.into_iter().map(|v| Perm::from_images(v).unwrap()).collect();
    perms.sort_by_cached_key(|p| (p.cycle_type(), p.images().to_vec()));
    perms
}

/// Transitive pairs of degree `d` with orders `(l, m, n)`, in search order.
fn candidates(t: TriangleType, d: usize) -> Vec<(Perm, Perm)> {
    let ys = perms_of_order(d, t.m as u64);
    let mut out = Vec::new();
    for parts in cycle_types(d, t.l as u64) {
        let px = canonical_perm(d, &parts);
        for py in &ys {
            if px.then(py).order() == t.n as u64 && orbit_count(&px, py) == 1 {
                out.push((px.clone(), py.clone()));
            }
        }
    }
    out
}

/// Smallest regular hypermap of exact type `(l, m, n)` generated by a
/// transitive pair of degree at most `max_degree`. Ties go to the first
/// pair in search order.
pub fn monodromy_search(l: u32, m: u32, n: u32, max_degree: usize) -> Result<RegularHypermap> {
    monodromy_search_with(l, m, n, max_degree, Exec::default())
}

pub fn monodromy_search_with(l: u32, m: u32, n: u32, max_degree: usize, exec: Exec) -> Result<RegularHypermap> {
    const CLOSURE_CAP: usize = 1 << 20;
    let t = TriangleType::new(l, m, n);
    let mut best: Option<RegularHypermap> = None;
    for d in 1..=max_degree {
        if best.as_ref().is_some_and(|b| b.darts() <= d) {
            break;
        }
        let cands = candidates(t, d);
        let cap = best.as_ref().map_or(CLOSURE_CAP, |b| b.darts() - 1);
        let closures = par::map_slice(exec, &cands, |(px, py)| regular_closure(px, py, cap).ok());
        for h in closures.into_iter().flatten() {
            if best.as_ref().is_none_or(|b| h.darts() < b.darts()) {
                best = Some(h);
            }
        }
    }
    best.map(|h| h.with_declared(t)).ok_or(Error::NotFound((l, m, n), max_degree))
}

/// All isomorphism classes with at most `max_darts` darts reachable from
/// pairs of degree at most `max_degree`, ordered by dart count and then by
/// discovery.
pub fn search_all(l: u32, m: u32, n: u32, max_degree: usize, max_darts: usize, exec: Exec) -> Vec<RegularHypermap> {
    let t = TriangleType::new(l, m, n);
    let mut classes: Vec<RegularHypermap> = Vec::new();
    for d in 1..=max_degree.min(max_darts) {
        let cands = candidates(t, d);
        let closures = par::map_slice(exec, &cands, |(px, py)| regular_closure(px, py, max_darts).ok());
        for h in closures.into_iter().flatten() {
            if !classes.iter().any(|c| c.iso_with(&h, Exec::Sequential)) {
                classes.push(h.with_declared(t));
            }
        }
    }
    classes.sort_by_key(RegularHypermap::darts);
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        // involutions of S4 (9, order exactly 2) and elements of order 3 in S5 (20)
        assert_eq!(perms_of_order(4, 2).len(), 9);
        assert_eq!(perms_of_order(5, 3).len(), 20);
        assert_eq!(perms_of_order(6, 6).len(), 120 + 120);
        assert_eq!(cycle_types(8, 8), vec![vec![8]]);
        assert_eq!(cycle_types(5, 2), vec![vec![2, 2, 1], vec![2, 1, 1, 1]]);
    }

    #[test]
    fn torus_type_at_degree_four() {
        let h = monodromy_search(4, 2, 4, 5).unwrap();
        assert_eq!(h.darts(), 4);
        assert_eq!(h.hypermap_type(), TriangleType::new(4, 2, 4));
        assert_eq!(h.genus(), 1);
    }

    #[test]
    fn genus_two_search() {
        let h = monodromy_search(8, 2, 8, 8).unwrap();
        assert_eq!(h.darts(), 8);
        assert_eq!(h.euler_counts(), (1, 4, 1));
        assert_eq!(h.genus(), 2);
        let small = search_all(8, 2, 8, 8, 8, Exec::default());
        assert_eq!(small.len(), 1);
        // degree-8 actions also generate the modular group of order 16
        let wider = search_all(8, 2, 8, 8, 16, Exec::default());
        assert!(wider.iter().any(|c| c.darts() == 16 && c.genus() == 3));
    }

    #[test]
    fn hurwitz_search() {
        let h = monodromy_search(2, 3, 7, 8).unwrap();
        assert_eq!(h.darts(), 168);
        assert_eq!(h.genus(), 3);
        assert!(!h.is_chiral());
    }

    #[test]
    fn search_exhausted() {
        assert!(matches!(monodromy_search(2, 3, 7, 5), Err(Error::NotFound((2, 3, 7), 5))));
    }

    #[test]
    fn modes_agree() {
        let a = monodromy_search_with(4, 2, 4, 5, Exec::Sequential).unwrap();
        let b = monodromy_search_with(4, 2, 4, 5, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
