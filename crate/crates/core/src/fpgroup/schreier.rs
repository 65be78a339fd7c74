//! Schreier transversals and Reidemeister-Schreier rewriting.
//!
//! For a complete coset table of a subgroup `H`, the breadth-first spanning
//! tree gives transversal words `t_c` with `H t_c = c`. Every pair
//! `(coset c, generator g)` whose edge `c --g--> c.g` is not a tree edge
//! yields a Schreier generator `s = t_c g t_{c.g}^-1` of `H`; tree edges
//! give the trivial word. A word in `H` is rewritten by tracing it from
//! coset 0 and recording the Schreier generator of every edge it crosses.

use super::coset::CosetTable;
use super::presentation::Presentation;
use super::word::Word;
use crate::error::{Error, Result};

/// Transversal, Schreier generators and rewritten relators of the
/// subgroup described by a coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierData {
    transversal: Vec<Word>,
    /// Column-letter form of each transversal word.
    transversal_cols: Vec<Vec<usize>>,
    /// `(coset, generator)` of each Schreier generator.
    generators: Vec<(usize, usize)>,
    /// Schreier generator index of each `(coset, generator)` edge, if any.
    edge_index: Vec<Option<usize>>,
    group_generators: usize,
    relators: Vec<Word>,
}

impl SchreierData {
    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn transversal_columns(&self, coset: usize) -> &[usize] {
        &self.transversal_cols[coset]
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// `(coset, generator)` pairs of the Schreier generators.
    pub fn generator_edges(&self) -> &[(usize, usize)] {
        &self.generators
    }

    /// Rewritten relators over the Schreier generators. Empty until
    /// [`subgroup_presentation`] fills them in.
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn edge(&self, coset: usize, generator: usize) -> Option<usize> {
        self.edge_index[coset * self.group_generators + generator]
    }

    /// Schreier generator `i` as a word in the group generators.
    pub fn generator_word(&self, i: usize, table: &CosetTable) -> Word {
        let (c, g) = self.generators[i];
        let d = table.action(c, 2 * g);
        self.transversal[c].mul(&Word::generator(g)).mul(&self.transversal[d].inverse())
    }

    /// Trace column letters from `start`, calling `visit(schreier_index, +1/-1)`
    /// for each non-tree edge crossed. Returns the end coset.
    pub fn trace<F: FnMut(usize, i64)>(&self, table: &CosetTable, start: usize, cols: &[usize], mut visit: F) -> usize {
        let mut c = start;
        for &col in cols {
            let g = col / 2;
            if col % 2 == 0 {
                if let Some(s) = self.edge(c, g) {
                    visit(s, 1);
                }
                c = table.action(c, col);
            } else {
                let d = table.action(c, col);
                if let Some(s) = self.edge(d, g) {
                    visit(s, -1);
                }
                c = d;
            }
        }
        c
    }

    /// Exponent-sum vector (over the Schreier generators) of the rewritten
    /// word, for a word that starts and ends at coset 0.
    pub fn rewrite_abelian(&self, table: &CosetTable, w: &Word) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.generators.len()];
        let end = self.trace(table, 0, &w.columns(), |s, e| v[s] += e);
        if end != 0 {
            return Err(Error::NotInSubgroup(end));
        }
        Ok(v)
    }
}

/// Breadth-first transversal with generator order `x, x^-1, y, y^-1, ...`.
/// Relators are left empty.
pub fn schreier_transversal(table: &CosetTable) -> SchreierData {
    let n = table.size();
    let gens = table.generators();
    let cols = 2 * gens;
    let mut transversal: Vec<Option<Word>> = vec![None; n];
    let mut transversal_cols: Vec<Vec<usize>> = vec![Vec::new(); n];
    // tree[c * gens + g] marks the edge c --g--> c.g as a tree edge
    let mut tree = vec![false; n * gens];
    transversal[0] = Some(Word::identity());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..cols {
            let d = table.action(c, col);
            if transversal[d].is_some() {
                continue;
            }
            let g = col / 2;
            let letter = if col % 2 == 0 { Word::generator(g) } else { Word::power_of(g, -1) };
            transversal[d] = Some(transversal[c].as_ref().unwrap().mul(&letter));
            let mut tc = transversal_cols[c].clone();
            tc.push(col);
            transversal_cols[d] = tc;
            if col % 2 == 0 {
                tree[c * gens + g] = true;
            } else {
                tree[d * gens + g] = true;
            }
            queue.push_back(d);
        }
    }
    let transversal: Vec<Word> = transversal.into_iter().map(|t| t.expect("coset table is not transitive")).collect();
    let mut generators = Vec::new();
    let mut edge_index = vec![None; n * gens];
    for c in 0..n {
        for g in 0..gens {
            if !tree[c * gens + g] {
                edge_index[c * gens + g] = Some(generators.len());
                generators.push((c, g));
            }
        }
    }
    SchreierData { transversal, transversal_cols, generators, edge_index, group_generators: gens, relators: Vec::new() }
}

/// Reidemeister-Schreier presentation of the subgroup: Schreier generators
/// and the rewrites of `t_c r t_c^-1` for every coset `c` and relator `r`.
pub fn subgroup_presentation(pres: &Presentation, table: &CosetTable) -> SchreierData {
    let mut data = schreier_transversal(table);
    let mut relators = Vec::new();
    for c in 0..table.size() {
        for r in pres.relators() {
            let mut letters = Vec::new();
            data.trace(table, c, &r.columns(), |s, e| letters.push((s, e as i32)));
            let w = Word::from_letters(letters);
            if !w.is_identity() {
                relators.push(w);
            }
        }
    }
    data.relators = relators;
    data
}

/// The Reidemeister rewriting map: `w` (which must fix coset 0) as a word
/// over the Schreier generators.
pub fn rewrite_in_subgroup(w: &Word, data: &SchreierData, table: &CosetTable) -> Result<Word> {
    let mut letters = Vec::new();
    let end = data.trace(table, 0, &w.columns(), |s, e| letters.push((s, e as i32)));
    if end != 0 {
        return Err(Error::NotInSubgroup(end));
    }
    Ok(Word::from_letters(letters))
}

/// Images of the Schreier generators under `n -> g n g^-1`, rewritten.
/// Fails unless every conjugate lies in the subgroup.
pub fn conjugation_action(data: &SchreierData, table: &CosetTable, g: &Word) -> Result<Vec<Word>> {
    let gi = g.inverse();
    (0..data.generator_count())
        .map(|i| {
            let conj = g.mul(&data.generator_word(i, table)).mul(&gi);
            rewrite_in_subgroup(&conj, data, table)
                .map_err(|_| Error::NotNormal(format!("conjugate of Schreier generator {i} by {g} leaves the subgroup")))
        })
        .collect()
}

/// Torsion-free rank of the abelianized subgroup, computed from the
/// relation matrix modulo the prime 2^31 - 1.
pub fn abelianized_rank(data: &SchreierData) -> usize {
    use crate::fpalg::{FpMatrix, PrimeField};
    let field = PrimeField::new(2_147_483_647).unwrap();
    let k = data.generator_count();
    if k == 0 {
        return 0;
    }
    let rows: Vec<Vec<i64>> = data.relators().iter().map(|r| r.exponent_sums(k)).collect();
    let rank = if rows.is_empty() { 0 } else { FpMatrix::from_i64_rows(field, &rows).unwrap().rank() };
    k - rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::coset::coset_enumerate;
    use crate::fpgroup::presentation::triangle_presentation;

    fn c8() -> (Presentation, CosetTable) {
        let pres = triangle_presentation(8, 2, 8).with_relator_text("y*x^-4").unwrap();
        let t = coset_enumerate(&pres, &[], 1000).unwrap();
        (pres, t)
    }

    #[test]
    fn one_coset() {
        let t = coset_enumerate(&triangle_presentation(1, 1, 1), &[], 10).unwrap();
        let s = subgroup_presentation(&triangle_presentation(1, 1, 1), &t);
        assert_eq!(s.transversal(), &[Word::identity()]);
        // both generators are Schreier generators of the (trivial) whole group
        assert_eq!(s.generator_count(), 2);
        assert_eq!(abelianized_rank(&s), 0);
    }

    #[test]
    fn klein_four_transversal() {
        let pres = triangle_presentation(2, 2, 2);
        let t = coset_enumerate(&pres, &[], 100).unwrap();
        let s = schreier_transversal(&t);
        // x^-1 = x reaches nothing new, so the breadth-first words are 1, x, y, xy
        let names = ["x", "y"];
        let got: Vec<String> = s.transversal().iter().map(|w| w.render(&names)).collect();
        assert_eq!(got, vec!["1", "x", "y", "x*y"]);
    }

    #[test]
    fn cyclic_transversal() {
        let (_, t) = c8();
        let s = schreier_transversal(&t);
        // hand walk: 1, x, x^-1, y = x^4, x^2, x^-2 = x^6, then x^3, x^5 via x^4's neighbours
        let mut exps: Vec<i64> = s
            .transversal()
            .iter()
            .map(|w| {
                let e = w.exponent_sums(2);
                (e[0] + 4 * e[1]).rem_euclid(8)
            })
            .collect();
        exps.sort();
        assert_eq!(exps, (0..8).collect::<Vec<_>>());
        for (c, w) in s.transversal().iter().enumerate() {
            assert_eq!(t.act(0, w), c);
        }
    }

    #[test]
    fn genus_two_kernel_rank() {
        let (_, t) = c8();
        // kernel of the C8 quotient inside Δ(8,2,8)
        let s = subgroup_presentation(&triangle_presentation(8, 2, 8), &t);
        assert_eq!(abelianized_rank(&s), 4);
    }

    #[test]
    fn rewriting() {
        let (_, t) = c8();
        let s = subgroup_presentation(&triangle_presentation(8, 2, 8), &t);
        assert!(rewrite_in_subgroup(&Word::identity(), &s, &t).unwrap().is_identity());
        for i in 0..s.generator_count() {
            let w = s.generator_word(i, &t);
            assert_eq!(rewrite_in_subgroup(&w, &s, &t).unwrap(), Word::generator(i));
        }
        let x8 = Word::power_of(0, 8);
        let r = rewrite_in_subgroup(&x8, &s, &t).unwrap();
        assert!(!r.is_identity());
        assert!(rewrite_in_subgroup(&Word::generator(0), &s, &t).is_err());
    }

    #[test]
    fn conjugation_identity_and_normality() {
        let (_, t) = c8();
        let s = subgroup_presentation(&triangle_presentation(8, 2, 8), &t);
        let images = conjugation_action(&s, &t, &Word::identity()).unwrap();
        for (i, w) in images.iter().enumerate() {
            assert_eq!(*w, Word::generator(i));
        }
        // <x> is not normal in S3 = Δ(2,3,2)
        let pres = triangle_presentation(2, 3, 2);
        let t3 = coset_enumerate(&pres, &[Word::generator(0)], 100).unwrap();
        let s3 = subgroup_presentation(&pres, &t3);
        assert!(matches!(conjugation_action(&s3, &t3, &Word::generator(1)), Err(Error::NotNormal(_))));
    }
}
