use super::field::PrimeField;

/// Incremental row echelon form: insert vectors one at a time and learn
/// whether each was independent of those before it.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon { field, rows: Vec::new() }
    }

    /// Adds `v` if it is independent of the rows so far; returns whether it was.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = self.field;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        let Some(pc) = v.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = f.inv(v[pc]);
        for a in &mut v {
            *a = f.mul(*a, inv);
        }
        for (_, row) in &mut self.rows {
            let c = row[pc];
            if c != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = f.sub(*a, f.mul(c, b));
                }
            }
        }
        self.rows.push((pc, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}
