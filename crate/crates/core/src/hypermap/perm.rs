use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..n`, stored as its image list.
///
/// Products compose left to right: `a.then(b)` applies `a` first, matching
/// the right action of words on darts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Precondition(format!("image list is not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// Build from 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a = a as usize;
                if a >= n || touched[a] {
                    return Err(Error::Precondition(format!("cycles do not describe a permutation of {n} points")));
                }
                touched[a] = true;
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut out = Perm::identity(self.degree());
        for c in self.cycles_with_fixed() {
            let len = c.len();
            let s = (e % len as u64) as usize;
            for k in 0..len {
                out.images[c[k] as usize] = c[(k + s) % len];
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    fn cycles_with_fixed(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push(i as u32);
                i = self.images[i] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        self.cycles_with_fixed().into_iter().filter(|c| c.len() > 1).collect()
    }

    /// Number of cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles_with_fixed().len()
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles_with_fixed().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles_with_fixed().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// One-line cycle notation with 1-based points, e.g. `(1,2,3)(4,5)`;
    /// the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".to_string();
        }
        cs.iter()
            .map(|c| format!("({})", c.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect()
    }

    /// Inverse of [`Perm::to_cycle_string`] on `n` points.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Perm> {
        let bad = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let s: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let mut cycles = Vec::new();
        let mut k = 0;
        while k < s.len() {
            if s[k].1 != '(' {
                return Err(bad(s[k].0, "expected '('"));
            }
            k += 1;
            let mut cycle = Vec::new();
            let mut num = String::new();
            loop {
                let Some(&(pos, c)) = s.get(k) else {
                    return Err(bad(text.len(), "unterminated cycle"));
                };
                k += 1;
                match c {
                    '0'..='9' => num.push(c),
                    ',' | ')' => {
                        if !num.is_empty() {
                            let v: usize = num.parse().map_err(|_| bad(pos, "point out of range"))?;
                            if v == 0 || v > n {
                                return Err(bad(pos, "point out of range"));
                            }
                            cycle.push((v - 1) as u32);
                            num.clear();
                        } else if c == ',' || !cycle.is_empty() {
                            return Err(bad(pos, "empty point"));
                        }
                        if c == ')' {
                            break;
                        }
                    }
                    _ => return Err(bad(pos, "unexpected character in cycle")),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Perm::from_cycles(n, &cycles).map_err(|e| bad(0, &e.to_string()))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_left_to_right() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&b).order(), 3);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = Perm::from_images(vec![1, 2, 0, 4, 3, 5]).unwrap();
        assert_eq!(p.to_cycle_string(), "(1,2,3)(4,5)");
        assert_eq!(Perm::parse_cycles(6, "(1,2,3)(4,5)").unwrap(), p);
        assert_eq!(Perm::parse_cycles(6, " (1, 2,3) (4,5) ").unwrap(), p);
        assert_eq!(Perm::parse_cycles(4, "()").unwrap(), Perm::identity(4));
        assert!(Perm::parse_cycles(3, "(1,4)").is_err());
        assert!(Perm::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Perm::parse_cycles(3, "(1,2").is_err());
    }

    #[test]
    fn powers_and_order() {
        let r = Perm::from_cycles(8, &[(0..8).collect()]).unwrap();
        assert_eq!(r.order(), 8);
        assert_eq!(r.pow(4).order(), 2);
        assert_eq!(r.pow(4), r.then(&r).then(&r).then(&r));
        assert_eq!(r.pow(8), Perm::identity(8));
        assert_eq!(r.pow(4).cycle_count(), 4);
        assert_eq!(r.pow(2).cycle_type(), vec![4, 4]);
    }
}
