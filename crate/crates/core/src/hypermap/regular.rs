use std::collections::{HashMap, VecDeque};

use super::perm::Perm;
use crate::error::{Error, Result};
use crate::fpgroup::{CosetTable, Presentation, TriangleType, Word};
use crate::par::{self, Exec};

const UNSET: u32 = u32::MAX;

/// An orientably regular hypermap: the right regular action of
/// `G = <px, py>` on its own elements (the darts). Dart 0 is the identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RegularHypermap {
    px: Perm,
    py: Perm,
    pz: Perm,
    declared: TriangleType,
}

impl std::fmt::Debug for RegularHypermap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RegularHypermap({} darts, type {}, genus {})", self.darts(), self.hypermap_type(), self.genus())
    }
}

impl RegularHypermap {
    /// Build from a presentation and generator images on any set of points.
    /// The relators must hold and the action must be transitive; the result
    /// is the regular action of the generated group (at most `cap` elements).
    pub fn from_images(pres: &Presentation, images: &[Perm], cap: usize) -> Result<Self> {
        if images.len() != 2 || pres.generator_count() != 2 {
            return Err(Error::Precondition("a hypermap needs exactly two generator images".into()));
        }
        if images[0].degree() != images[1].degree() {
            return Err(Error::Dimension("generator images act on different point sets".into()));
        }
        for r in pres.relators() {
            if !eval_word(images, r).is_identity() {
                return Err(Error::RelatorViolated(pres.render(r)));
            }
        }
        let orbits = orbit_count(&images[0], &images[1]);
        if orbits != 1 {
            return Err(Error::Intransitive(orbits));
        }
        let mut h = regular_closure(&images[0], &images[1], cap)?;
        if let Some(t) = pres.triangle() {
            h.declared = t;
        }
        Ok(h)
    }

    /// Take the permutations as the darts' regular action directly.
    pub fn from_perms(px: Perm, py: Perm) -> Result<Self> {
        Self::from_perms_with(px, py, Exec::default())
    }

    pub fn from_perms_with(px: Perm, py: Perm, exec: Exec) -> Result<Self> {
        if px.degree() != py.degree() || px.degree() == 0 {
            return Err(Error::Dimension("px and py must act on the same nonempty dart set".into()));
        }
        let orbits = orbit_count(&px, &py);
        if orbits != 1 {
            return Err(Error::Intransitive(orbits));
        }
        let h = Self::assemble(px, py);
        let n = h.darts();
        if !par::all(exec, n, |d| labeling(&h, &h, d).is_some()) {
            return Err(Error::Precondition("the generated group does not act regularly on the darts".into()));
        }
        Ok(h)
    }

    /// The regular action on the cosets of the trivial subgroup.
    pub fn from_coset_table(pres: &Presentation, table: &CosetTable) -> Result<Self> {
        if table.generators() != 2 {
            return Err(Error::Precondition("a hypermap needs a two-generator coset table".into()));
        }
        let px = Perm::from_images(table.generator_perm(0))?;
        let py = Perm::from_images(table.generator_perm(1))?;
        let mut h = Self::from_perms(px, py)?;
        if let Some(t) = pres.triangle() {
            h.declared = t;
        }
        Ok(h)
    }

    /// Trusted constructor for actions that are regular by construction.
    pub(crate) fn assemble(px: Perm, py: Perm) -> Self {
        let pz = px.then(&py).inverse();
        let declared = TriangleType::new(px.order() as u32, py.order() as u32, pz.order() as u32);
        RegularHypermap { px, py, pz, declared }
    }

    pub(crate) fn with_declared(mut self, t: TriangleType) -> Self {
        self.declared = t;
        self
    }

    pub fn darts(&self) -> usize {
        self.px.degree()
    }

    pub fn px(&self) -> &Perm {
        &self.px
    }

    pub fn py(&self) -> &Perm {
        &self.py
    }

    pub fn pz(&self) -> &Perm {
        &self.pz
    }

    /// Orders of `px`, `py`, `pz`.
    pub fn hypermap_type(&self) -> TriangleType {
        TriangleType::new(self.px.order() as u32, self.py.order() as u32, self.pz.order() as u32)
    }

    /// The type the construction asked for.
    pub fn declared_type(&self) -> TriangleType {
        self.declared
    }

    /// True when the element orders equal the declared type, i.e. the kernel
    /// in the triangle group is torsion-free.
    pub fn is_exact(&self) -> bool {
        self.hypermap_type() == self.declared
    }

    pub fn is_spherical(&self) -> bool {
        self.hypermap_type().is_spherical()
    }

    /// Hypervertices, hyperedges and hyperfaces: cycle counts of px, py, pz.
    pub fn euler_counts(&self) -> (usize, usize, usize) {
        (self.px.cycle_count(), self.py.cycle_count(), self.pz.cycle_count())
    }

    /// Genus from `2 - 2g = V + E + F - darts`.
    pub fn genus(&self) -> u64 {
        let (v, e, f) = self.euler_counts();
        let chi = (v + e + f) as i64 - self.darts() as i64;
        ((2 - chi) / 2) as u64
    }

    /// `(px^-1, py^-1)`.
    pub fn mirror(&self) -> RegularHypermap {
        let mut h = Self::assemble(self.px.inverse(), self.py.inverse());
        h.declared = self.declared;
        h
    }

    /// Vertex/face interchange: `(px, py, pz) -> (pz, pz^-1 py pz, px)`,
    /// of type `(n, m, l)`.
    pub fn dual(&self) -> RegularHypermap {
        let py = self.pz.inverse().then(&self.py).then(&self.pz);
        let mut h = Self::assemble(self.pz.clone(), py);
        h.declared = self.declared.dual();
        h
    }

    pub fn iso(&self, other: &RegularHypermap) -> bool {
        self.iso_with(other, Exec::default())
    }

    /// A dart bijection conjugating `(px, py)` onto the other pair exists.
    /// Tries each image of dart 0 and extends breadth-first.
    pub fn iso_with(&self, other: &RegularHypermap, exec: Exec) -> bool {
        if self.darts() != other.darts() || self.hypermap_type() != other.hypermap_type() {
            return false;
        }
        par::find_first(exec, other.darts(), |d| labeling(self, other, d).is_some()).is_some()
    }

    pub fn is_chiral(&self) -> bool {
        !self.iso(&self.mirror())
    }

    pub fn is_self_dual(&self) -> bool {
        self.iso(&self.dual())
    }

    /// Dart reached from `dart` by the word.
    pub fn act(&self, dart: usize, w: &Word) -> usize {
        let mut d = dart;
        for &(g, e) in w.letters() {
            let p = if g == 0 { &self.px } else { &self.py };
            if e > 0 {
                for _ in 0..e {
                    d = p.apply(d);
                }
            } else {
                let inv = p.inverse();
                for _ in 0..-e {
                    d = inv.apply(d);
                }
            }
        }
        d
    }

    /// Breadth-first relabeling from dart 0 in letter order x, x^-1, y, y^-1.
    pub fn standardize(&self) -> RegularHypermap {
        let t = self.coset_table().standardize();
        let px = Perm::from_images(t.generator_perm(0)).expect("standardized table");
        let py = Perm::from_images(t.generator_perm(1)).expect("standardized table");
        let mut h = Self::assemble(px, py);
        h.declared = self.declared;
        h
    }

    /// The action as a coset table of the trivial subgroup of `G`.
    pub fn coset_table(&self) -> CosetTable {
        CosetTable::from_generator_perms(&[self.px.images().to_vec(), self.py.images().to_vec()])
            .expect("hypermap permutations form a coset table")
    }
}

/// The bijection sending dart 0 of `a` to dart `d` of `b`, if it conjugates
/// the generator pairs.
fn labeling(a: &RegularHypermap, b: &RegularHypermap, d: usize) -> Option<Vec<u32>> {
    let n = a.darts();
    let mut f = vec![UNSET; n];
    let mut used = vec![false; n];
    f[0] = d as u32;
    used[d] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let v = f[u] as usize;
        for (pa, pb) in [(&a.px, &b.px), (&a.py, &b.py)] {
            let (u2, v2) = (pa.apply(u), pb.apply(v));
            if f[u2] == UNSET {
                if used[v2] {
                    return None;
                }
                f[u2] = v2 as u32;
                used[v2] = true;
                queue.push_back(u2);
            } else if f[u2] as usize != v2 {
                return None;
            }
        }
    }
    Some(f)
}

pub(crate) fn eval_word(images: &[Perm], w: &Word) -> Perm {
    let n = images[0].degree();
    let mut out = Perm::identity(n);
    for &(g, e) in w.letters() {
        let p = if e > 0 { images[g].clone() } else { images[g].inverse() };
        out = out.then(&p.pow(e.unsigned_abs() as u64));
    }
    out
}

pub(crate) fn orbit_count(a: &Perm, b: &Perm) -> usize {
    let n = a.degree();
    let mut seen = vec![false; n];
    let mut orbits = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        orbits += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in [a.apply(u), b.apply(u)] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    orbits
}

/// Regular action of `<a, b>` on its elements, standardized. Fails with
/// `TooLarge` once more than `cap` elements appear.
pub fn regular_closure(a: &Perm, b: &Perm, cap: usize) -> Result<RegularHypermap> {
    let n = a.degree();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut elems: Vec<Perm> = vec![Perm::identity(n)];
    index.insert(elems[0].images().to_vec(), 0);
    let mut ax: Vec<u32> = Vec::new();
    let mut ay: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        for (g, act) in [(a, &mut ax), (b, &mut ay)] {
            let e = elems[i].then(g);
            let next = elems.len() as u32;
            let j = *index.entry(e.images().to_vec()).or_insert_with(|| {
                elems.push(e);
                next
            });
            act.push(j);
        }
        if elems.len() > cap {
            return Err(Error::TooLarge("regular closure".into(), cap as u128));
        }
        i += 1;
    }
    let h = RegularHypermap::assemble(Perm::from_images(ax)?, Perm::from_images(ay)?);
    Ok(h.standardize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{coset_enumerate, triangle_presentation};

    fn r8() -> Perm {
        Perm::from_cycles(8, &[(0..8).collect()]).unwrap()
    }

    fn genus2() -> RegularHypermap {
        let r = r8();
        RegularHypermap::from_images(&triangle_presentation(8, 2, 8), &[r.clone(), r.pow(4)], 1000).unwrap()
    }

    /// t -> 2t and t -> 1 - t on Z/5, as permutations of the residues.
    fn affine_torus() -> RegularHypermap {
        let a = Perm::from_images((0..5).map(|t| (2 * t % 5) as u32).collect()).unwrap();
        let b = Perm::from_images((0..5).map(|t| ((6 - t) % 5) as u32).collect()).unwrap();
        RegularHypermap::from_images(&triangle_presentation(4, 2, 4), &[a, b], 1000).unwrap()
    }

    #[test]
    fn genus_two_map() {
        let h = genus2();
        assert_eq!(h.darts(), 8);
        assert_eq!(h.hypermap_type(), TriangleType::new(8, 2, 8));
        assert!(h.is_exact());
        assert_eq!(h.euler_counts(), (1, 4, 1));
        assert_eq!(h.genus(), 2);
        assert!(!h.is_chiral());
        assert!(h.is_self_dual());
    }

    #[test]
    fn torus_is_chiral() {
        let h = affine_torus();
        assert_eq!(h.darts(), 20);
        assert_eq!(h.hypermap_type(), TriangleType::new(4, 2, 4));
        assert_eq!(h.genus(), 1);
        assert!(h.is_chiral());
        assert!(h.mirror().is_chiral());
        // affine-map oracle: the group is {t -> at + b : a in <2>, b in Z5}
        let mut maps = std::collections::HashSet::new();
        for a in [1u32, 2, 4, 3] {
            for b in 0..5u32 {
                maps.insert((a, b));
            }
        }
        assert_eq!(maps.len(), h.darts());
    }

    #[test]
    fn mirror_and_dual_involutions() {
        for h in [genus2(), affine_torus()] {
            assert_eq!(h.mirror().mirror(), h);
            assert!(h.dual().dual().iso(&h));
            assert_eq!(h.dual().genus(), h.genus());
            assert_eq!(h.mirror().genus(), h.genus());
            assert_eq!(h.dual().hypermap_type(), h.hypermap_type().dual());
        }
    }

    #[test]
    fn epimorphism_choice_is_irrelevant() {
        let r = r8();
        let r3 = r.pow(3);
        let h3 = RegularHypermap::from_images(&triangle_presentation(8, 2, 8), &[r3.clone(), r3.pow(4)], 100).unwrap();
        assert!(h3.iso(&genus2()));
    }

    #[test]
    fn klein_four_sphere() {
        let pres = triangle_presentation(2, 2, 2);
        let t = coset_enumerate(&pres, &[], 100).unwrap();
        let h = RegularHypermap::from_coset_table(&pres, &t).unwrap();
        assert_eq!(h.genus(), 0);
        assert!(h.is_spherical());
        assert!(!h.is_chiral());
    }

    #[test]
    fn klein_quartic_closure() {
        let pres = triangle_presentation(2, 3, 7).with_relator_text("[x,y]^4").unwrap();
        let t = coset_enumerate(&pres, &[], 2000).unwrap();
        let h = RegularHypermap::from_coset_table(&pres, &t).unwrap();
        assert_eq!(h.darts(), 168);
        assert_eq!(h.genus(), 3);
    }

    #[test]
    fn rejects_bad_images() {
        let r = r8();
        let pres = triangle_presentation(8, 2, 8);
        assert!(matches!(
            RegularHypermap::from_images(&pres, &[r.clone(), r.clone()], 100),
            Err(Error::RelatorViolated(_))
        ));
        let a = Perm::from_cycles(4, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            RegularHypermap::from_images(&triangle_presentation(2, 2, 2), &[a.clone(), a], 100),
            Err(Error::Intransitive(3))
        ));
    }

    #[test]
    fn regularity_check() {
        // S3 acting on 3 points is transitive but not regular
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        assert!(RegularHypermap::from_perms(a, b).is_err());
        let h = genus2();
        assert!(RegularHypermap::from_perms(h.px().clone(), h.py().clone()).is_ok());
    }
}
