//! Invariant subspaces of homology modules: spinning, primary
//! decomposition, the full submodule lattice for small modules, a
//! Meataxe-style splitter, chiral splits against the mirror involution, and
//! nilpotent filtrations.

mod meataxe;
mod submodule;

use std::collections::{HashSet, VecDeque};

pub use meataxe::{meataxe_decompose, meataxe_decompose_with, Certificate, Decomposition, DecompositionStatus, Strategy};
pub use submodule::Submodule;

use crate::error::{Error, Result};
use crate::fpalg::{poly_factor, Echelon, FpMatrix, FpPoly, PrimeField};
use crate::fpgroup::{parse_word, Word};
use crate::homrep::HomologyModule;
use crate::par::{self, Exec};

/// Largest number of projective points the exhaustive lattice search spins.
pub const LATTICE_COST_LIMIT: u128 = 200_000;
/// Largest lattice the exhaustive search will build.
pub const LATTICE_SIZE_LIMIT: usize = 100_000;

/// Words tried when choosing the element whose primary components seed the
/// exhaustive lattice search.
pub const SEED_WORDS: [&str; 7] = ["x", "y", "x*y", "x*y^-1", "x^2*y", "x*y^2", "x^2*y^2"];

/// The generator matrices `rho(x)`, `rho(y)`.
pub fn generators(m: &HomologyModule) -> [FpMatrix; 2] {
    [m.rho_x().clone(), m.rho_y().clone()]
}

/// Smallest subspace containing `vectors` and closed under `gens`.
pub fn spin_with(field: PrimeField, dim: usize, gens: &[FpMatrix], vectors: &[Vec<u64>]) -> Submodule {
    let mut basis = Vec::new();
    let mut ech = Echelon::new(field);
    let mut queue: VecDeque<Vec<u64>> = VecDeque::new();
    for v in vectors {
        if ech.insert(v.clone()) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        basis.push(v.clone());
        for g in gens {
            let w = g.apply(&v);
            if ech.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    Submodule::span(field, dim, &basis).expect("vectors have ambient length")
}

pub fn spin(m: &HomologyModule, vectors: &[Vec<u64>]) -> Submodule {
    spin_with(m.field(), m.dim(), &generators(m), vectors)
}

/// One primary component `ker f(A)^e` of an element `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimaryComponent {
    pub factor: FpPoly,
    pub multiplicity: u32,
    pub space: Submodule,
}

pub fn primary_components(a: &FpMatrix) -> Result<Vec<PrimaryComponent>> {
    let cp = a.charpoly()?;
    let fac = poly_factor(&cp)?;
    Ok(fac
        .factors
        .into_iter()
        .map(|(f, e)| {
            let k = a.eval_poly(&f.pow(e)).left_kernel();
            PrimaryComponent { factor: f, multiplicity: e, space: Submodule::from_matrix(&k) }
        })
        .collect())
}

/// Primary components of `rho(w)`. Their direct sum is the whole module.
pub fn primary_decomposition(m: &HomologyModule, w: &Word) -> Result<Vec<PrimaryComponent>> {
    primary_components(&m.rho(w))
}

/// Images of `(rho(w) - 1)^k` for `k = 0, 1, ...`, stopping at zero or at
/// the first repeated term.
pub fn nilpotent_filtration(m: &HomologyModule, w: &Word) -> Vec<Submodule> {
    let f = m.field();
    let n = m.dim();
    let a = m.rho(w).sub(&FpMatrix::identity(f, n));
    let mut out = vec![Submodule::full(f, n)];
    loop {
        let last = out.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = last.image(&a).expect("square action");
        let repeated = next == *last;
        out.push(next);
        if repeated {
            break;
        }
    }
    out
}

/// Number of projective points in the primary components of `a`.
fn spin_cost(a: &FpMatrix) -> Result<(u128, Vec<PrimaryComponent>)> {
    let p = a.field().modulus() as u128;
    let comps = primary_components(a)?;
    let cost = comps.iter().fold(0u128, |acc, c| {
        let pts = (0..c.space.dim()).fold(0u128, |s, _| s.saturating_mul(p).saturating_add(1));
        acc.saturating_add(pts)
    });
    Ok((cost, comps))
}

/// Every nonzero vector of a subspace up to scalars, first nonzero coordinate 1.
fn projective_points(space: &Submodule) -> Vec<Vec<u64>> {
    let f = space.field();
    let p = f.modulus();
    let k = space.dim();
    let b = space.basis();
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        let count = p.pow(free as u32);
        for idx in 0..count {
            let mut coeffs = vec![0u64; k];
            coeffs[lead] = 1;
            let mut r = idx;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = r % p;
                r /= p;
            }
            let mut v = vec![0u64; space.ambient_dim()];
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (t, &e) in b.row(i).iter().enumerate() {
                        v[t] = f.add(v[t], f.mul(c, e));
                    }
                }
            }
            out.push(v);
        }
    }
    out
}

/// The complete lattice of subspaces invariant under `gens`, sorted
/// canonically.
///
/// Pick the element `A` among a few short words whose primary components
/// have the fewest projective points. Every invariant subspace is the
/// direct sum of its intersections with those components, hence a sum of
/// cyclic submodules spun from vectors inside single components. Spinning
/// every such vector and closing under sums therefore finds them all.
pub fn lattice_with(field: PrimeField, dim: usize, gens: &[FpMatrix], exec: Exec) -> Result<Vec<Submodule>> {
    let words: Vec<Word> = SEED_WORDS.iter().map(|w| parse_word(w, &['x', 'y']).unwrap()).collect();
    let mut best: Option<(u128, Vec<PrimaryComponent>)> = None;
    for w in &words {
        let mut a = FpMatrix::identity(field, dim);
        for &(g, e) in w.letters() {
            let base = if e > 0 { gens[g].clone() } else { gens[g].inverse().ok_or(Error::Precondition("singular generator".into()))? };
            a = a.mul(&base.pow(e.unsigned_abs() as u64));
        }
        let cand = spin_cost(&a)?;
        if best.as_ref().is_none_or(|b| cand.0 < b.0) {
            best = Some(cand);
        }
    }
    let (cost, comps) = best.expect("seed word list is nonempty");
    if cost > LATTICE_COST_LIMIT {
        return Err(Error::TooLarge("projective points to spin".into(), LATTICE_COST_LIMIT));
    }
    let points: Vec<Vec<u64>> = comps.iter().flat_map(|c| projective_points(&c.space)).collect();
    let spun = par::map_slice(exec, &points, |v| spin_with(field, dim, gens, std::slice::from_ref(v)));
    let mut cyclic: Vec<Submodule> = Vec::new();
    let mut seen = HashSet::new();
    for s in spun {
        if seen.insert(s.clone()) {
            cyclic.push(s);
        }
    }
    cyclic.sort();
    let zero = Submodule::zero(field, dim);
    let mut all: HashSet<Submodule> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(a) = queue.pop_front() {
        for c in &cyclic {
            let s = a.sum(c);
            if !all.contains(&s) {
                if all.len() >= LATTICE_SIZE_LIMIT {
                    return Err(Error::TooLarge("submodule lattice".into(), LATTICE_SIZE_LIMIT as u128));
                }
                all.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    let mut out: Vec<Submodule> = all.into_iter().collect();
    out.sort();
    Ok(out)
}

/// The complete lattice of `G`-invariant subspaces of a module of
/// dimension at most 8.
pub fn all_submodules(m: &HomologyModule) -> Result<Vec<Submodule>> {
    if m.dim() > 8 {
        return Err(Error::TooLarge("module dimension for exhaustive lattice".into(), 8));
    }
    lattice_with(m.field(), m.dim(), &generators(m), Exec::default())
}

/// A mirror pair of complementary invariant subspaces of dimension `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiralSplit {
    pub plus: Submodule,
    pub minus: Submodule,
}

/// Every decomposition `M = W ⊕ SW` into invariant subspaces of dimension
/// `g`, one entry per unordered pair with `plus` canonically first.
pub fn chiral_splits(m: &HomologyModule) -> Result<Vec<ChiralSplit>> {
    let s = m.mirror_matrix()?.matrix;
    let g = m.dim() / 2;
    let mut out = Vec::new();
    for w in all_submodules(m)?.into_iter().filter(|w| w.dim() == g && g > 0) {
        let sw = w.image(&s)?;
        if w < sw && w.intersection(&sw).is_zero() {
            out.push(ChiralSplit { plus: w, minus: sw });
        }
    }
    Ok(out)
}

/// The first chiral split in canonical order, if any exists.
pub fn chiral_split(m: &HomologyModule) -> Result<Option<ChiralSplit>> {
    Ok(chiral_splits(m)?.into_iter().next())
}

/// Invariant subspaces of the given dimension fixed by the mirror.
pub fn mirror_invariant_submodules(m: &HomologyModule, dim: usize) -> Result<Vec<Submodule>> {
    let s = m.mirror_matrix()?.matrix;
    let mut out = Vec::new();
    for w in all_submodules(m)?.into_iter().filter(|w| w.dim() == dim) {
        if w.image(&s)? == w {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
