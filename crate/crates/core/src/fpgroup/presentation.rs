use std::fmt;

use super::parse::parse_word;
use super::word::Word;
use crate::error::{Error, Result};

/// A triangle-group type `(l, m, n)`: the orders of `x`, `y` and
/// `z = (xy)^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriangleType {
    pub l: u32,
    pub m: u32,
    pub n: u32,
}

impl TriangleType {
    pub fn new(l: u32, m: u32, n: u32) -> Self {
        TriangleType { l, m, n }
    }

    pub fn as_tuple(self) -> (u32, u32, u32) {
        (self.l, self.m, self.n)
    }

    /// `lmn * (1/l + 1/m + 1/n - 1)`; positive for spherical types.
    pub fn curvature_numerator(self) -> i128 {
        let (l, m, n) = (self.l as i128, self.m as i128, self.n as i128);
        m * n + l * n + l * m - l * m * n
    }

    pub fn is_spherical(self) -> bool {
        self.curvature_numerator() > 0
    }

    /// The type of the dual hypermap (vertices and faces exchanged).
    pub fn dual(self) -> TriangleType {
        TriangleType::new(self.n, self.m, self.l)
    }

    /// Equal as map types up to the vertex/face relabeling of duality.
    pub fn same_up_to_duality(self, other: TriangleType) -> bool {
        self == other || self.dual() == other
    }
}

impl fmt::Display for TriangleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.l, self.m, self.n)
    }
}

/// A finite presentation on named single-character generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<char>,
    relators: Vec<Word>,
    triangle: Option<TriangleType>,
}

impl Presentation {
    pub fn new(names: Vec<char>, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= names.len() {
                    return Err(Error::Precondition(format!("relator {r} uses generator {g} of {}", names.len())));
                }
            }
        }
        Ok(Presentation { names, relators, triangle: None })
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// The triangle type this presentation was built from, if any. Extra
    /// relators appended later keep it.
    pub fn triangle(&self) -> Option<TriangleType> {
        self.triangle
    }

    pub fn with_relator(mut self, r: Word) -> Result<Self> {
        if r.max_generator().is_some_and(|g| g >= self.names.len()) {
            return Err(Error::Precondition(format!("relator {r} uses an unknown generator")));
        }
        self.relators.push(r);
        Ok(self)
    }

    /// Append a relator given in the text grammar.
    pub fn with_relator_text(self, text: &str) -> Result<Self> {
        let w = parse_word(text, &self.names)?;
        self.with_relator(w)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.names)
    }

    pub fn render(&self, w: &Word) -> String {
        let names: Vec<String> = self.names.iter().map(|c| c.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        w.render(&refs)
    }
}

pub const X: usize = 0;
pub const Y: usize = 1;

/// `<x, y | x^l, y^m, (xy)^n>`.
pub fn triangle_presentation(l: u32, m: u32, n: u32) -> Presentation {
    assert!(l >= 1 && m >= 1 && n >= 1, "triangle exponents must be positive");
    let xy = Word::from_letters([(X, 1), (Y, 1)]);
    Presentation {
        names: vec!['x', 'y'],
        relators: vec![Word::power_of(X, l as i32), Word::power_of(Y, m as i32), xy.pow(n as i32)],
        triangle: Some(TriangleType::new(l, m, n)),
    }
}

/// The word `z = (xy)^-1`.
pub fn z_word() -> Word {
    Word::from_letters([(Y, -1), (X, -1)])
}
