//! Exact arithmetic in `Δ / N_W`, an extension of `M_p / W` by `G`.
//!
//! Every element of `Δ` is `t_g n` for a transversal word `t_g` and some
//! `n` in `N`; it is stored as `(g, [n])` with `[n]` the class of `n` in
//! `M_p / W`. Multiplying `t_a n1 t_b n2 = t_ab (t_ab^-1 t_a t_b) n1^{t_b} n2`
//! gives
//!
//! ```text
//! (a, v1)(b, v2) = (ab, c(a, b) + v1 rho(b) + v2),   c(a, b) = [t_ab^-1 t_a t_b].
//! ```

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::fpalg::{FpMatrix, PrimeField};
use crate::fpgroup::Word;
use crate::homrep::HomologyModule;
use crate::hypermap::{Perm, RegularHypermap};
use crate::modec::Submodule;
use crate::par::{self, Exec};

/// An element `(g, v)`: a dart of the base and a vector in `M_p / W`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionElement {
    pub g: u32,
    pub v: Vec<u64>,
}

/// Everything needed to multiply in `Δ / N_W`. Immutable apart from the
/// cocycle memo, whose entries are filled idempotently.
pub struct ExtensionContext {
    module: Arc<HomologyModule>,
    w: Submodule,
    /// Coordinates of `M_p` kept in `M_p / W`: the non-pivot columns of W.
    free: Vec<usize>,
    /// `G` multiplication table, `mul[a * n + b] = ab`.
    mul: Vec<u32>,
    inverse: Vec<u32>,
    /// Action of each element on `M_p / W`.
    rho: Vec<FpMatrix>,
    cocycle: Vec<OnceLock<Vec<u64>>>,
    gens: [ExtensionElement; 2],
}

impl std::fmt::Debug for ExtensionContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExtensionContext(|G| = {}, p = {}, dim M/W = {})", self.group_order(), self.prime(), self.free.len())
    }
}

impl ExtensionContext {
    pub fn new(module: Arc<HomologyModule>, w: Submodule) -> Result<Self> {
        let f = module.field();
        if w.ambient_dim() != module.dim() || w.field() != f {
            return Err(Error::Dimension("submodule does not live in this module".into()));
        }
        if !w.is_invariant(&[module.rho_x().clone(), module.rho_y().clone()]) {
            return Err(Error::NotInvariant);
        }
        let pivots: Vec<usize> = (0..w.dim()).map(|i| w.basis().row(i).iter().position(|&a| a != 0).unwrap()).collect();
        let free: Vec<usize> = (0..module.dim()).filter(|c| !pivots.contains(c)).collect();
        let n = module.base().darts();
        let mul: Vec<u32> = {
            let (table, sch) = (module.table(), module.schreier());
            (0..n * n).map(|ab| table.act_columns(ab / n, sch.transversal_columns(ab % n)) as u32).collect()
        };
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n).find(|&b| mul[a * n + b] == 0).expect("finite group");
            inverse[a] = b as u32;
        }
        let mut ctx = ExtensionContext {
            module,
            w,
            free,
            mul,
            inverse,
            rho: Vec::new(),
            cocycle: (0..n * n).map(|_| OnceLock::new()).collect(),
            gens: [ExtensionElement { g: 0, v: Vec::new() }, ExtensionElement { g: 0, v: Vec::new() }],
        };
        let q = ctx.free.len();
        ctx.rho = ctx
            .module
            .element_matrices()
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u64>> = ctx.free.iter().map(|&j| ctx.reduce(m.row(j))).collect();
                FpMatrix::from_rows(f, q, &rows).unwrap()
            })
            .collect();
        for gen in 0..2 {
            let letter = Word::generator(gen);
            let g = ctx.module.table().action(0, 2 * gen);
            let n_word = ctx.module.schreier().transversal()[g].inverse().mul(&letter);
            let v = ctx.reduce(&ctx.module.class_of(&n_word)?);
            ctx.gens[gen] = ExtensionElement { g: g as u32, v };
        }
        Ok(ctx)
    }

    pub fn module(&self) -> &HomologyModule {
        &self.module
    }

    pub fn submodule(&self) -> &Submodule {
        &self.w
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    pub fn prime(&self) -> u64 {
        self.module.prime()
    }

    pub fn group_order(&self) -> usize {
        self.inverse.len()
    }

    /// Dimension of `M_p / W`.
    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    /// Number of elements, `|G| p^(dim M - dim W)`.
    pub fn order(&self) -> u128 {
        (self.group_order() as u128).saturating_mul((self.prime() as u128).saturating_pow(self.quotient_dim() as u32))
    }

    /// Class in `M_p / W` of a vector of `M_p`.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field();
        let mut v = v.to_vec();
        let b = self.w.basis();
        for i in 0..b.rows() {
            let row = b.row(i);
            let pc = row.iter().position(|&a| a != 0).unwrap();
            let c = v[pc];
            if c != 0 {
                for (a, &r) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, r));
                }
            }
        }
        self.free.iter().map(|&j| v[j]).collect()
    }

    pub fn identity(&self) -> ExtensionElement {
        ExtensionElement { g: 0, v: vec![0; self.quotient_dim()] }
    }

    /// Images of `x` and `y`.
    pub fn generators(&self) -> &[ExtensionElement; 2] {
        &self.gens
    }

    pub fn group_mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.group_order() + b] as usize
    }

    /// `c(a, b) = [t_ab^-1 t_a t_b]`, memoized.
    pub fn cocycle(&self, a: usize, b: usize) -> &[u64] {
        let n = self.group_order();
        self.cocycle[a * n + b].get_or_init(|| {
            let sch = self.module.schreier();
            let t = sch.transversal();
            let ab = self.group_mul(a, b);
            let word = t[ab].inverse().mul(&t[a]).mul(&t[b]);
            let cls = self.module.class_of(&word).expect("t_ab^-1 t_a t_b lies in N");
            self.reduce(&cls)
        })
    }

    /// Fill the whole cocycle table, in parallel when enabled.
    pub fn fill_cocycles(&self, exec: Exec) {
        let n = self.group_order();
        par::map_range(exec, n * n, |ab| {
            self.cocycle(ab / n, ab % n);
        });
    }

    fn check(&self, e: &ExtensionElement) -> Result<()> {
        if e.g as usize >= self.group_order() || e.v.len() != self.quotient_dim() {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn ext_mul(&self, a: &ExtensionElement, b: &ExtensionElement) -> Result<ExtensionElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    fn mul_unchecked(&self, a: &ExtensionElement, b: &ExtensionElement) -> ExtensionElement {
        let f = self.field();
        let (ga, gb) = (a.g as usize, b.g as usize);
        let mut v = self.rho[gb].apply(&a.v);
        for ((x, &c), &y) in v.iter_mut().zip(self.cocycle(ga, gb)).zip(&b.v) {
            *x = f.add(*x, f.add(c, y));
        }
        ExtensionElement { g: self.group_mul(ga, gb) as u32, v }
    }

    pub fn ext_inverse(&self, a: &ExtensionElement) -> Result<ExtensionElement> {
        self.check(a)?;
        let f = self.field();
        let gi = self.inverse[a.g as usize] as usize;
        let c = self.cocycle(a.g as usize, gi);
        let va = self.rho[gi].apply(&a.v);
        let v = c.iter().zip(&va).map(|(&c, &x)| f.neg(f.add(c, x))).collect();
        Ok(ExtensionElement { g: gi as u32, v })
    }

    pub fn element_order(&self, a: &ExtensionElement) -> Result<u64> {
        self.check(a)?;
        let id = self.identity();
        let mut cur = a.clone();
        let mut k = 1;
        while cur != id {
            cur = self.mul_unchecked(&cur, a);
            k += 1;
        }
        Ok(k)
    }

    /// Orders of the images of `x`, `y` and `xy`.
    pub fn generator_orders(&self) -> (u64, u64, u64) {
        let [x, y] = &self.gens;
        let xy = self.mul_unchecked(x, y);
        (self.element_order(x).unwrap(), self.element_order(y).unwrap(), self.element_order(&xy).unwrap())
    }

    /// Image of a word of `Δ`.
    pub fn eval(&self, w: &Word) -> ExtensionElement {
        let mut cur = self.identity();
        for &(g, e) in w.letters() {
            let base = if e > 0 { self.gens[g].clone() } else { self.ext_inverse(&self.gens[g]).unwrap() };
            for _ in 0..e.unsigned_abs() {
                cur = self.mul_unchecked(&cur, &base);
            }
        }
        cur
    }

    fn index_of(&self, e: &ExtensionElement) -> usize {
        let p = self.prime() as usize;
        let vi = e.v.iter().rev().fold(0usize, |acc, &c| acc * p + c as usize);
        e.g as usize * p.pow(self.quotient_dim() as u32) + vi
    }

    fn element_at(&self, idx: usize) -> ExtensionElement {
        let p = self.prime() as usize;
        let span = p.pow(self.quotient_dim() as u32);
        let (g, mut r) = (idx / span, idx % span);
        let v = (0..self.quotient_dim())
            .map(|_| {
                let c = (r % p) as u64;
                r /= p;
                c
            })
            .collect();
        ExtensionElement { g: g as u32, v }
    }

    /// The regular action of the extension on itself by right
    /// multiplication with the images of `x` and `y`, standardized.
    pub fn regular_action(&self, max_darts: usize, exec: Exec) -> Result<RegularHypermap> {
        let size = self.order();
        if size > max_darts as u128 {
            return Err(Error::TooLarge("explicit cover dart count".into(), max_darts as u128));
        }
        let size = size as usize;
        let images = |gen: usize| -> Vec<u32> {
            par::map_range(exec, size, |i| self.index_of(&self.mul_unchecked(&self.element_at(i), &self.gens[gen])) as u32)
        };
        let px = Perm::from_images(images(0))?;
        let py = Perm::from_images(images(1))?;
        let h = RegularHypermap::assemble(px, py).with_declared(self.module.base().declared_type());
        Ok(h.standardize())
    }
}
