//! Coset tables and HLT coset enumeration.

use std::collections::VecDeque;

use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};

const UNDEF: u32 = u32::MAX;

/// A complete coset table. Column `2g` is generator `g`, column `2g + 1` its
/// inverse. Coset 0 is the subgroup itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetTable {
    generators: usize,
    size: usize,
    table: Vec<u32>,
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl CosetTable {
    /// Build from the permutations of the generators on `0..n`, base point 0.
    pub fn from_generator_perms(perms: &[Vec<u32>]) -> Result<Self> {
        let size = perms.first().map_or(1, |p| p.len());
        let cols = 2 * perms.len();
        let mut table = vec![UNDEF; size * cols];
        for (g, p) in perms.iter().enumerate() {
            if p.len() != size {
                return Err(Error::Dimension("generator permutations differ in degree".into()));
            }
            for (i, &j) in p.iter().enumerate() {
                table[i * cols + 2 * g] = j;
                if table[j as usize * cols + 2 * g + 1] != UNDEF {
                    return Err(Error::Precondition(format!("generator {g} is not a permutation")));
                }
                table[j as usize * cols + 2 * g + 1] = i as u32;
            }
        }
        Ok(CosetTable { generators: perms.len(), size, table })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Number of cosets, i.e. the index of the subgroup.
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn action(&self, coset: usize, col: usize) -> usize {
        self.table[coset * 2 * self.generators + col] as usize
    }

    pub fn act_columns(&self, mut coset: usize, cols: &[usize]) -> usize {
        for &c in cols {
            coset = self.action(coset, c);
        }
        coset
    }

    /// The coset reached from `coset` by reading `w` left to right.
    pub fn act(&self, coset: usize, w: &Word) -> usize {
        let mut c = coset;
        for &(g, e) in w.letters() {
            let col = if e > 0 { 2 * g } else { 2 * g + 1 };
            for _ in 0..e.unsigned_abs() {
                c = self.action(c, col);
            }
        }
        c
    }

    /// Permutation of generator `g` on cosets.
    pub fn generator_perm(&self, g: usize) -> Vec<u32> {
        (0..self.size).map(|c| self.action(c, 2 * g) as u32).collect()
    }

    pub fn relators_hold(&self, relators: &[Word]) -> bool {
        relators.iter().all(|r| (0..self.size).all(|c| self.act(c, r) == c))
    }

    /// Renumber cosets in breadth-first order from coset 0, scanning columns
    /// in order `x, x^-1, y, y^-1, ...`.
    pub fn standardize(&self) -> CosetTable {
        let cols = 2 * self.generators;
        let mut order = Vec::with_capacity(self.size);
        let mut label = vec![UNDEF; self.size];
        label[0] = 0;
        order.push(0usize);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in 0..cols {
                let d = self.action(c, col);
                if label[d] == UNDEF {
                    label[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut table = vec![UNDEF; self.size * cols];
        for (new, &old) in order.iter().enumerate() {
            for col in 0..cols {
                table[new * cols + col] = label[self.action(old, col)];
            }
        }
        CosetTable { generators: self.generators, size: order.len(), table }
    }

    pub fn is_transitive(&self) -> bool {
        self.standardize().size == self.size
    }
}

impl std::fmt::Debug for CosetTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CosetTable ({} cosets)", self.size)?;
        let cols = 2 * self.generators;
        for c in 0..self.size.min(32) {
            writeln!(f, "  {c}: {:?}", &self.table[c * cols..(c + 1) * cols])?;
        }
        Ok(())
    }
}

/// Working state for HLT enumeration with coincidence processing.
struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    /// Forwarding pointers; `parent[c] == c` for live cosets.
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: VecDeque<usize>,
}

impl Enumerator {
    fn new(cols: usize, max_cosets: usize) -> Self {
        Enumerator { cols, table: vec![UNDEF; cols], parent: vec![0], live: 1, max_cosets, queue: VecDeque::new() }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    #[inline]
    fn put(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.cols + col] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::Capacity(self.max_cosets));
        }
        let d = self.parent.len();
        self.parent.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.live += 1;
        self.put(c, col, d as u32);
        self.put(d, inv_col(col), c as u32);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != r {
            let next = self.parent[k] as usize;
            self.parent[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra == rb {
            return;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == UNDEF {
                    continue;
                }
                let d = d as usize;
                self.put(d, inv_col(col), UNDEF);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, col);
                if mu_x != UNDEF {
                    self.merge(nu, mu_x as usize);
                } else {
                    let nu_xi = self.get(nu, inv_col(col));
                    if nu_xi != UNDEF {
                        self.merge(mu, nu_xi as usize);
                    } else {
                        self.put(mu, col, nu as u32);
                        self.put(nu, inv_col(col), mu as u32);
                    }
                }
            }
        }
    }

    /// Trace `w` at coset `c` from both ends; returns false when a gap of
    /// two or more letters remains and `fill` is off.
    fn scan(&mut self, c: usize, w: &[usize], fill: bool) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.get(f, w[i as usize]) != UNDEF {
                f = self.get(f, w[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(true);
            }
            while j >= i && self.get(b, inv_col(w[j as usize])) != UNDEF {
                b = self.get(b, inv_col(w[j as usize])) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(true);
            }
            if i == j {
                // deduction closes the cycle
                let col = w[i as usize];
                self.put(f, col, b as u32);
                self.put(b, inv_col(col), f as u32);
                return Ok(true);
            }
            if !fill {
                return Ok(false);
            }
            self.define(f, w[i as usize])?;
        }
    }

    /// Scan every relator at every live coset without defining new cosets.
    fn lookahead(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut c = 0;
        while c < self.parent.len() {
            for r in relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r, false)?;
            }
            c += 1;
        }
        Ok(())
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup_gens` in the
/// group presented by `pres`, failing with [`Error::Capacity`] once more than
/// `max_cosets` cosets would be live at once. The result is standardized.
pub fn coset_enumerate(pres: &Presentation, subgroup_gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let gens = pres.generator_count();
    let cols = 2 * gens;
    let max_cosets = max_cosets.max(1);
    let relators: Vec<Vec<usize>> = pres.relators().iter().map(Word::columns).collect();
    let subgens: Vec<Vec<usize>> = subgroup_gens.iter().map(Word::columns).collect();
    let mut e = Enumerator::new(cols, max_cosets);
    for w in &subgens {
        fill_with_lookahead(&mut e, 0, w, &relators)?;
    }
    let mut c = 0;
    while c < e.parent.len() {
        for r in &relators {
            if !e.is_live(c) {
                break;
            }
            fill_with_lookahead(&mut e, c, r, &relators)?;
        }
        if e.is_live(c) {
            for col in 0..cols {
                if !e.is_live(c) {
                    break;
                }
                if e.get(c, col) == UNDEF {
                    if e.live >= e.max_cosets {
                        e.lookahead(&relators)?;
                        if !e.is_live(c) || e.get(c, col) != UNDEF {
                            continue;
                        }
                    }
                    e.define(c, col)?;
                }
            }
        }
        c += 1;
    }
    // compact the live cosets
    let live: Vec<usize> = (0..e.parent.len()).filter(|&c| e.is_live(c)).collect();
    let mut label = vec![UNDEF; e.parent.len()];
    for (i, &c) in live.iter().enumerate() {
        label[c] = i as u32;
    }
    let mut table = vec![UNDEF; live.len() * cols];
    for (i, &c) in live.iter().enumerate() {
        for col in 0..cols {
            let d = e.get(c, col);
            debug_assert_ne!(d, UNDEF);
            table[i * cols + col] = label[e.rep(d as usize)];
        }
    }
    let t = CosetTable { generators: gens, size: live.len(), table };
    Ok(t.standardize())
}

fn fill_with_lookahead(e: &mut Enumerator, c: usize, w: &[usize], relators: &[Vec<usize>]) -> Result<()> {
    match e.scan(c, w, true) {
        Err(Error::Capacity(_)) => {
            e.lookahead(relators)?;
            if e.is_live(c) {
                e.scan(c, w, true)?;
            }
            Ok(())
        }
        other => other.map(|_| ()),
    }
}
