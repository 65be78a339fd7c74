//! The mod-p homology module `M_p = N / N'N^p` of a torsion-free kernel
//! `N` of a triangle group, with the conjugation action of `G = Δ/N` and,
//! for reflexible bases, the mirror involution.
//!
//! Coordinates: the Schreier generators of `N` span `F_p^k`; the rewritten
//! relators span the relation space `R`; `M_p = F_p^k / R` gets the
//! coordinates of the first unit vectors (in generator order) that stay
//! independent modulo `R`. Matrices act on row vectors from the right, so
//! `rho(uv) = rho(u) * rho(v)` with `v * rho(w) = [w^-1 n w]`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::fpalg::{Echelon, FpMatrix, PrimeField};
use crate::fpgroup::{sigma, subgroup_presentation, triangle_presentation, CosetTable, SchreierData, Word};
use crate::hypermap::RegularHypermap;

/// A matrix of the action together with what produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    pub matrix: FpMatrix,
    /// The acting word, or `mirror`.
    pub label: String,
}

#[derive(Debug)]
pub struct HomologyModule {
    field: PrimeField,
    base: RegularHypermap,
    table: CosetTable,
    schreier: SchreierData,
    relations: FpMatrix,
    quotient_coords: Vec<usize>,
    project: FpMatrix,
    rho_x: FpMatrix,
    rho_y: FpMatrix,
    elements: OnceLock<Vec<FpMatrix>>,
    mirror: OnceLock<Result<FpMatrix>>,
}

impl HomologyModule {
    /// Builds `M_p` for a base of exact type. Any prime is accepted.
    pub fn new(base: &RegularHypermap, p: u64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if !base.is_exact() {
            return Err(Error::Torsion {
                expected: base.declared_type().as_tuple(),
                found: base.hypermap_type().as_tuple(),
            });
        }
        let t = base.hypermap_type();
        let pres = triangle_presentation(t.l, t.m, t.n);
        let table = base.coset_table();
        let schreier = subgroup_presentation(&pres, &table);
        let k = schreier.generator_count();
        let rows: Vec<Vec<u64>> = schreier
            .relators()
            .iter()
            .map(|r| r.exponent_sums(k).into_iter().map(|e| field.from_i64(e)).collect())
            .collect();
        let relations = FpMatrix::from_rows(field, k, &rows)?.rref().basis;
        let rank = relations.rows();
        let dim = k - rank;
        if dim as u64 != 2 * base.genus() {
            return Err(Error::Dimension(format!(
                "homology has dimension {dim} but the base has genus {}",
                base.genus()
            )));
        }

        // greedy unit vectors independent of the relations and of each other
        let mut echelon = Echelon::new(field);
        for i in 0..rank {
            echelon.insert(relations.row(i).to_vec());
        }
        let mut quotient_coords = Vec::with_capacity(dim);
        for j in 0..k {
            if quotient_coords.len() == dim {
                break;
            }
            let mut e = vec![0u64; k];
            e[j] = 1;
            if echelon.insert(e) {
                quotient_coords.push(j);
            }
        }
        let mut b = relations.clone();
        for &j in &quotient_coords {
            let mut e = vec![0u64; k];
            e[j] = 1;
            b.push_row(&e);
        }
        let binv = b.inverse().expect("relations plus complement coordinates form a basis");
        let project = binv.select_cols(&(rank..k).collect::<Vec<_>>());

        let mut m = HomologyModule {
            field,
            base: base.clone(),
            table,
            schreier,
            relations,
            quotient_coords,
            project,
            rho_x: FpMatrix::zeros(field, 0, 0),
            rho_y: FpMatrix::zeros(field, 0, 0),
            elements: OnceLock::new(),
            mirror: OnceLock::new(),
        };
        m.rho_x = m.conjugation_matrix(&Word::generator(0))?;
        m.rho_y = m.conjugation_matrix(&Word::generator(1))?;
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.quotient_coords.len()
    }

    pub fn base(&self) -> &RegularHypermap {
        &self.base
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn schreier(&self) -> &SchreierData {
        &self.schreier
    }

    /// Reduced basis of the relation space in Schreier-generator coordinates.
    pub fn relation_space(&self) -> &FpMatrix {
        &self.relations
    }

    /// Schreier generators whose classes form the quotient basis.
    pub fn quotient_coordinates(&self) -> &[usize] {
        &self.quotient_coords
    }

    /// Projection from Schreier-generator coordinates onto `M_p`.
    pub fn projection(&self) -> &FpMatrix {
        &self.project
    }

    /// Class in `M_p` of a word lying in `N`.
    pub fn class_of(&self, w: &Word) -> Result<Vec<u64>> {
        let ab = self.schreier.rewrite_abelian(&self.table, w)?;
        Ok(self.project_ints(&ab))
    }

    pub fn project_ints(&self, v: &[i64]) -> Vec<u64> {
        let f = self.field;
        let row: Vec<u64> = v.iter().map(|&e| f.from_i64(e)).collect();
        self.project.apply(&row)
    }

    fn conjugation_matrix(&self, w: &Word) -> Result<FpMatrix> {
        let wi = w.inverse();
        let rows = self
            .quotient_coords
            .iter()
            .map(|&j| {
                let s = self.schreier.generator_word(j, &self.table);
                self.class_of(&wi.mul(&s).mul(w))
            })
            .collect::<Result<Vec<_>>>()?;
        FpMatrix::from_rows(self.field, self.dim(), &rows)
    }

    pub fn rho_x(&self) -> &FpMatrix {
        &self.rho_x
    }

    pub fn rho_y(&self) -> &FpMatrix {
        &self.rho_y
    }

    /// `rho(w)`, a product of the generator matrices and their inverses.
    pub fn rho(&self, w: &Word) -> FpMatrix {
        let mut m = FpMatrix::identity(self.field, self.dim());
        let inv_x = OnceLock::new();
        let inv_y = OnceLock::new();
        for &(g, e) in w.letters() {
            let base = match (g, e > 0) {
                (0, true) => &self.rho_x,
                (1, true) => &self.rho_y,
                (0, false) => inv_x.get_or_init(|| self.rho_x.inverse().unwrap()),
                _ => inv_y.get_or_init(|| self.rho_y.inverse().unwrap()),
            };
            m = m.mul(&base.pow(e.unsigned_abs() as u64));
        }
        m
    }

    pub fn action_matrix(&self, w: &Word) -> ActionMatrix {
        ActionMatrix { matrix: self.rho(w), label: w.to_string() }
    }

    /// `rho` of the group element at each dart (the transversal word's image).
    pub fn element_matrices(&self) -> &[FpMatrix] {
        self.elements.get_or_init(|| {
            let n = self.table.size();
            let inv = [self.rho_x.inverse().unwrap(), self.rho_y.inverse().unwrap()];
            let mut out: Vec<Option<FpMatrix>> = vec![None; n];
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&d| self.schreier.transversal_columns(d).len());
            for d in order {
                let cols = self.schreier.transversal_columns(d);
                // the transversal is prefix-closed: the parent's word is one letter shorter
                let m = match cols.split_last() {
                    None => FpMatrix::identity(self.field, self.dim()),
                    Some((&last, prefix)) => {
                        let parent = self.table.act_columns(0, prefix);
                        let step = match last {
                            0 => &self.rho_x,
                            1 => &inv[0],
                            2 => &self.rho_y,
                            _ => &inv[1],
                        };
                        out[parent].as_ref().expect("parents come first").mul(step)
                    }
                };
                out[d] = Some(m);
            }
            out.into_iter().map(Option::unwrap).collect()
        })
    }

    /// Order in `G` of the element at `dart`.
    pub fn element_order(&self, dart: usize) -> u64 {
        let cols = self.schreier.transversal_columns(dart);
        let mut c = self.table.act_columns(0, cols);
        let mut k = 1;
        while c != 0 {
            c = self.table.act_columns(c, cols);
            k += 1;
        }
        k
    }

    /// The mirror involution `S`: the class of `sigma(n)` for each basis
    /// class `n`. Requires `sigma(N) = N`.
    pub fn mirror_matrix(&self) -> Result<ActionMatrix> {
        let m = self.mirror.get_or_init(|| self.compute_mirror()).clone()?;
        Ok(ActionMatrix { matrix: m, label: "mirror".into() })
    }

    pub fn is_reflexible(&self) -> bool {
        self.mirror_matrix().is_ok()
    }

    fn compute_mirror(&self) -> Result<FpMatrix> {
        let k = self.schreier.generator_count();
        let f = self.field;
        // sigma on the Schreier-generator space, row j = ab(tau(sigma(s_j)))
        let mut sig = Vec::with_capacity(k);
        for j in 0..k {
            let s = sigma(&self.schreier.generator_word(j, &self.table));
            let ab = self.schreier.rewrite_abelian(&self.table, &s).map_err(|_| Error::NotReflexible)?;
            sig.push(ab.into_iter().map(|e| f.from_i64(e)).collect::<Vec<u64>>());
        }
        let sig = FpMatrix::from_rows(f, k, &sig)?;
        if !self.relations.mul(&sig).mul(&self.project).is_zero() {
            return Err(Error::NotInvariant);
        }
        let picked = FpMatrix::from_rows(f, k, &self.quotient_coords.iter().map(|&j| sig.row(j).to_vec()).collect::<Vec<_>>())?;
        Ok(picked.mul(&self.project))
    }
}

#[cfg(test)]
mod tests;
