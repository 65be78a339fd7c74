//! Splitting modules into direct summands.
//!
//! Small modules are decomposed exactly from their full submodule lattice.
//! Otherwise a randomized Meataxe runs: random algebra elements are
//! factored, kernel vectors of their irreducible factors are spun, and
//! Norton's dual spinning certifies irreducibility. When `p` does not divide
//! `|G|`, complements come from averaging a projection over the group.
//! The random stream is seeded from a hash of the input, so results do not
//! depend on call order or scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{lattice_with, spin_with, Submodule};
use crate::fpalg::{poly_factor, FpMatrix, PrimeField};
use crate::homrep::HomologyModule;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// The exact lattice when it is small enough, the random splitter otherwise.
    Auto,
    Lattice,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionStatus {
    /// Every summand is certified irreducible.
    Complete,
    /// Some summand has a proper submodule but no complement was found; it
    /// may be indecomposable.
    IndecomposableCandidate,
    /// The random splitter gave up on some summand.
    Partial,
}

impl DecompositionStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionStatus::Complete => "complete",
            DecompositionStatus::IndecomposableCandidate => "indecomposable-candidate",
            DecompositionStatus::Partial => "partial",
        }
    }
}

/// How the irreducibility claims were established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Read off the complete submodule lattice.
    Lattice,
    /// Kernel-vector spinning plus Norton's dual test.
    Norton,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Summands in canonical order; their direct sum is the module.
    pub summands: Vec<Submodule>,
    pub status: DecompositionStatus,
    pub certificate: Certificate,
    /// Proper nonzero submodules found inside summands that did not split.
    pub proper_submodules: Vec<Submodule>,
}

pub fn meataxe_decompose(m: &HomologyModule) -> Decomposition {
    meataxe_decompose_with(m, Strategy::Auto)
}

pub fn meataxe_decompose_with(m: &HomologyModule, strategy: Strategy) -> Decomposition {
    let gens = super::generators(m);
    let order = m.base().darts() as u64;
    let group = if order % m.prime() != 0 { Some(m.element_matrices()) } else { None };
    decompose(m.field(), m.dim(), &gens, group, strategy)
}

/// Decompose the module given by `gens`. `group` lists every group element's
/// matrix and enables averaged complements; pass it only when `p` does not
/// divide the group order.
pub fn decompose(
    field: PrimeField,
    dim: usize,
    gens: &[FpMatrix],
    group: Option<&[FpMatrix]>,
    strategy: Strategy,
) -> Decomposition {
    if strategy != Strategy::Random {
        match lattice_with(field, dim, gens, Exec::default()) {
            Ok(lattice) => return from_lattice(field, dim, &lattice),
            Err(_) if strategy == Strategy::Auto => {}
            Err(_) => {
                return Decomposition {
                    summands: vec![Submodule::full(field, dim)],
                    status: DecompositionStatus::Partial,
                    certificate: Certificate::Lattice,
                    proper_submodules: Vec::new(),
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(input_hash(field, dim, gens));
    let mut out = Decomposition {
        summands: Vec::new(),
        status: DecompositionStatus::Complete,
        certificate: Certificate::Norton,
        proper_submodules: Vec::new(),
    };
    random_rec(Submodule::full(field, dim), gens, group, &mut rng, &mut out);
    out.summands.sort();
    out.proper_submodules.sort();
    out
}

fn from_lattice(field: PrimeField, dim: usize, lattice: &[Submodule]) -> Decomposition {
    let mut summands = Vec::new();
    split_in_lattice(&Submodule::full(field, dim), lattice, &mut summands);
    summands.sort();
    let mut proper = Vec::new();
    for s in &summands {
        proper.extend(lattice.iter().filter(|u| !u.is_zero() && u != &s && s.contains(u)).cloned());
    }
    proper.sort();
    proper.dedup();
    let status = if proper.is_empty() { DecompositionStatus::Complete } else { DecompositionStatus::IndecomposableCandidate };
    Decomposition { summands, status, certificate: Certificate::Lattice, proper_submodules: proper }
}

fn split_in_lattice(v: &Submodule, lattice: &[Submodule], out: &mut Vec<Submodule>) {
    let inside: Vec<&Submodule> = lattice.iter().filter(|u| !u.is_zero() && *u != v && v.contains(u)).collect();
    for u in &inside {
        let comp = inside.iter().find(|w| w.dim() + u.dim() == v.dim() && u.intersection(w).is_zero());
        if let Some(w) = comp {
            split_in_lattice(u, lattice, out);
            split_in_lattice(w, lattice, out);
            return;
        }
    }
    out.push(v.clone());
}

/// FNV-1a over the modulus, dimension and matrix entries.
fn input_hash(field: PrimeField, dim: usize, gens: &[FpMatrix]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    };
    eat(field.modulus());
    eat(dim as u64);
    for g in gens {
        for r in g.row_vecs() {
            r.into_iter().for_each(&mut eat);
        }
    }
    h
}

/// Pivot column of each row of a reduced echelon basis.
fn pivots(b: &FpMatrix) -> Vec<usize> {
    (0..b.rows()).map(|i| b.row(i).iter().position(|&a| a != 0).unwrap()).collect()
}

/// Action on `v` in the coordinates of its echelon basis.
fn restrict(v: &Submodule, gens: &[FpMatrix]) -> Vec<FpMatrix> {
    let b = v.basis();
    let piv = pivots(b);
    gens.iter()
        .map(|g| {
            let img = b.mul(g);
            let rows: Vec<Vec<u64>> = (0..img.rows()).map(|i| piv.iter().map(|&c| img.get(i, c)).collect()).collect();
            FpMatrix::from_rows(v.field(), v.dim(), &rows).unwrap()
        })
        .collect()
}

fn lift(v: &Submodule, coords: &Submodule) -> Submodule {
    Submodule::from_matrix(&coords.basis().mul(v.basis()))
}

enum Split {
    Proper(Submodule),
    Irreducible,
    Unknown,
}

const ATTEMPTS: usize = 48;

fn random_split(field: PrimeField, d: usize, gens: &[FpMatrix], rng: &mut ChaCha8Rng) -> Split {
    if d <= 1 {
        return Split::Irreducible;
    }
    let p = field.modulus();
    let transposed: Vec<FpMatrix> = gens.iter().map(FpMatrix::transpose).collect();
    for _ in 0..ATTEMPTS {
        let mut a = FpMatrix::zeros(field, d, d);
        let mut walk = gens[0].clone();
        for _ in 0..4 {
            let g = &gens[rng.random_range(0..gens.len())];
            walk = walk.mul(g).add(&g.scale(rng.random_range(0..p)));
            a = a.add(&walk.scale(rng.random_range(1..p.max(2))));
        }
        let Ok(fac) = a.charpoly().and_then(|c| poly_factor(&c)) else { continue };
        for (f, _) in fac.factors {
            let n = a.eval_poly(&f);
            let k = n.left_kernel();
            if k.rows() == 0 {
                continue;
            }
            let u = spin_with(field, d, gens, &[k.row(0).to_vec()]);
            if !u.is_full() {
                return Split::Proper(u);
            }
            let kt = n.kernel();
            let ut = spin_with(field, d, &transposed, &[kt.row(0).to_vec()]);
            if !ut.is_full() {
                return Split::Proper(Submodule::from_matrix(&ut.basis().kernel()));
            }
            if k.rows() == f.degree().unwrap_or(0) {
                return Split::Irreducible;
            }
        }
    }
    Split::Unknown
}

/// An invariant complement of `u` inside the space acted on by `group`
/// (all coordinates local), by averaging a projection over the group.
fn averaged_complement(u: &Submodule, group: &[FpMatrix]) -> Submodule {
    let f = u.field();
    let d = u.ambient_dim();
    let b = u.basis();
    let mut pi0 = FpMatrix::zeros(f, d, d);
    for (i, &c) in pivots(b).iter().enumerate() {
        for j in 0..d {
            pi0.set(c, j, b.get(i, j));
        }
    }
    let mut sum = FpMatrix::zeros(f, d, d);
    for g in group {
        let gi = g.inverse().expect("group elements are invertible");
        sum = sum.add(&gi.mul(&pi0).mul(g));
    }
    let pi = sum.scale(f.inv(f.reduce(group.len() as u64)));
    Submodule::from_matrix(&pi.left_kernel())
}

fn random_rec(v: Submodule, gens: &[FpMatrix], group: Option<&[FpMatrix]>, rng: &mut ChaCha8Rng, out: &mut Decomposition) {
    let local = restrict(&v, gens);
    match random_split(v.field(), v.dim(), &local, rng) {
        Split::Irreducible => out.summands.push(v),
        Split::Unknown => {
            out.status = DecompositionStatus::Partial;
            out.summands.push(v);
        }
        Split::Proper(u) => match group {
            Some(elems) => {
                let local_group = restrict(&v, elems);
                let w = averaged_complement(&u, &local_group);
                random_rec(lift(&v, &u), gens, group, rng, out);
                random_rec(lift(&v, &w), gens, group, rng, out);
            }
            None => {
                if out.status == DecompositionStatus::Complete {
                    out.status = DecompositionStatus::IndecomposableCandidate;
                }
                out.proper_submodules.push(lift(&v, &u));
                out.summands.push(v);
            }
        },
    }
}
