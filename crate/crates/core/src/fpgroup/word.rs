use std::fmt;

/// A freely reduced word: `(generator, exponent)` letters with nonzero
/// exponents and no two adjacent letters on the same generator.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<(usize, i32)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: usize) -> Self {
        Word { letters: vec![(g, 1)] }
    }

    pub fn power_of(g: usize, e: i32) -> Self {
        Self::from_letters([(g, e)])
    }

    /// Build from arbitrary letters, freely reducing.
    pub fn from_letters<I: IntoIterator<Item = (usize, i32)>>(letters: I) -> Self {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    fn push(&mut self, g: usize, e: i32) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn letters(&self) -> &[(usize, i32)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of unit letters.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn pow(&self, n: i32) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `self^-1 * other^-1 * self * other`
    pub fn commutator(&self, other: &Word) -> Word {
        self.inverse().mul(&other.inverse()).mul(self).mul(other)
    }

    /// Letters expanded into table columns: generator `g` is column `2g`,
    /// its inverse column `2g + 1`.
    pub fn columns(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        for &(g, e) in &self.letters {
            let col = if e > 0 { 2 * g } else { 2 * g + 1 };
            out.extend(std::iter::repeat_n(col, e.unsigned_abs() as usize));
        }
        out
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0i64; generators];
        for &(g, e) in &self.letters {
            v[g] += e as i64;
        }
        v
    }

    /// Render with the given generator names, e.g. `x^-1*y^2`.
    pub fn render(&self, names: &[&str]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&(g, e)| {
                let name = names.get(g).map_or_else(|| format!("g{g}"), |s| s.to_string());
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The mirror automorphism `x -> x^-1, y -> y^-1` of a triangle group:
/// every exponent is negated and letter order is kept.
pub fn sigma(w: &Word) -> Word {
    Word { letters: w.letters.iter().map(|&(g, e)| (g, -e)).collect() }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["x", "y"]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&["x", "y"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;

    #[test]
    fn free_reduction() {
        let w = Word::from_letters([(X, 2), (X, -2), (Y, 1)]);
        assert_eq!(w, Word::generator(Y));
        let u = Word::from_letters([(X, 1), (Y, 1)]);
        assert!(u.mul(&u.inverse()).is_identity());
        assert_eq!(u.pow(-2).length(), 4);
    }

    #[test]
    fn sigma_examples() {
        assert!(sigma(&Word::identity()).is_identity());
        assert_eq!(sigma(&Word::generator(X)), Word::power_of(X, -1));
        let xy = Word::from_letters([(X, 1), (Y, 1)]);
        assert_eq!(sigma(&xy), Word::from_letters([(X, -1), (Y, -1)]));
        let w = Word::from_letters([(X, 3), (Y, -1), (X, 2)]);
        assert_eq!(sigma(&sigma(&w)), w);
    }

    #[test]
    fn columns_expand() {
        let w = Word::from_letters([(X, 2), (Y, -1)]);
        assert_eq!(w.columns(), vec![0, 0, 3]);
        assert_eq!(w.exponent_sums(2), vec![2, -1]);
        assert_eq!(w.render(&["x", "y"]), "x^2*y^-1");
    }
}
