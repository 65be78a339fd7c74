//! Census entries cited for the covers built here. Matching is by map type
//! (up to the vertex/face relabeling of duality), genus, orientation class
//! and duality relation only; nothing is claimed about the census numbering
//! beyond those four attributes.

use std::fmt;

use crate::fpgroup::TriangleType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrientationClass {
    Chiral,
    Reflexible,
}

impl OrientationClass {
    pub fn from_chiral(chiral: bool) -> Self {
        if chiral {
            OrientationClass::Chiral
        } else {
            OrientationClass::Reflexible
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            OrientationClass::Chiral => "chiral",
            OrientationClass::Reflexible => "reflexible",
        }
    }
}

/// How a cover relates to its dual, as far as the citation states it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualityRelation {
    /// Not stated; never checked.
    None,
    SelfDual,
    /// The dual is another member of the same family.
    DualPaired,
}

impl DualityRelation {
    pub fn as_str(self) -> &'static str {
        match self {
            DualityRelation::None => "none",
            DualityRelation::SelfDual => "self-dual",
            DualityRelation::DualPaired => "dual-paired",
        }
    }
}

/// A map type `{q, r}`: the canonical generators of the corresponding
/// triangle group have orders `q`, `2` and `r` in some order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MapType {
    pub q: u32,
    pub r: u32,
}

impl MapType {
    /// The map type of a hypermap type having an entry equal to 2.
    pub fn of(t: TriangleType) -> Option<MapType> {
        let mut v = [t.l, t.m, t.n];
        v.sort_unstable();
        let i = v.iter().position(|&e| e == 2)?;
        let rest: Vec<u32> = (0..3).filter(|&j| j != i).map(|j| v[j]).collect();
        Some(MapType { q: rest[0], r: rest[1] })
    }

    fn canonical(self) -> (u32, u32) {
        (self.q.min(self.r), self.q.max(self.r))
    }
}

impl fmt::Display for MapType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.canonical();
        write!(f, "{{{a},{b}}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusFixture {
    pub label: String,
    pub map_type: MapType,
    pub genus: u128,
    pub orientation: OrientationClass,
    pub relation: DualityRelation,
}

impl CensusFixture {
    fn new(label: &str, q: u32, r: u32, genus: u128, orientation: OrientationClass, relation: DualityRelation) -> Self {
        CensusFixture { label: label.to_string(), map_type: MapType { q, r }, genus, orientation, relation }
    }

    /// The attributes in the form compared by the verification pipeline.
    pub fn describe(&self) -> String {
        describe(&self.label, self.map_type, self.genus, self.orientation, self.relation)
    }

    /// Whether a computed cover matches every stated attribute.
    pub fn matches(&self, t: TriangleType, genus: u128, orientation: OrientationClass, relation: DualityRelation) -> bool {
        MapType::of(t).is_some_and(|mt| mt.canonical() == self.map_type.canonical())
            && genus == self.genus
            && orientation == self.orientation
            && (self.relation == DualityRelation::None || relation == self.relation)
    }
}

/// `label {q,r} genus g class[ relation]`; the relation is omitted when
/// it is [`DualityRelation::None`].
pub fn describe(label: &str, t: MapType, genus: u128, orientation: OrientationClass, relation: DualityRelation) -> String {
    let mut s = format!("{label} {t} genus {genus} {}", orientation.as_str());
    if relation != DualityRelation::None {
        s.push(' ');
        s.push_str(relation.as_str());
    }
    s
}

/// The nine compiled-in census entries.
pub fn fixtures() -> Vec<CensusFixture> {
    use DualityRelation as D;
    use OrientationClass::{Chiral, Reflexible};
    vec![
        CensusFixture::new("R2.6", 8, 8, 2, Reflexible, D::SelfDual),
        CensusFixture::new("C290.4", 8, 8, 290, Chiral, D::None),
        CensusFixture::new("C18.1", 8, 8, 18, Chiral, D::DualPaired),
        CensusFixture::new("C10.3", 8, 8, 10, Chiral, D::SelfDual),
        CensusFixture::new("C122.7", 8, 8, 122, Chiral, D::SelfDual),
        CensusFixture::new("C26.1", 8, 8, 26, Chiral, D::DualPaired),
        CensusFixture::new("C170.7", 8, 8, 170, Chiral, D::DualPaired),
        CensusFixture::new("R50.7", 8, 8, 50, Reflexible, D::DualPaired),
        CensusFixture::new("C17.1", 3, 7, 17, Chiral, D::None),
    ]
}

pub fn lookup<'a>(table: &'a [CensusFixture], label: &str) -> Option<&'a CensusFixture> {
    table.iter().find(|f| f.label == label)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_lookups() {
        let t = fixtures();
        let mut labels: Vec<&str> = t.iter().map(|f| f.label.as_str()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 9);
        let c10 = lookup(&t, "C10.3").unwrap();
        assert_eq!(c10.describe(), "C10.3 {8,8} genus 10 chiral self-dual");
        let r50 = lookup(&t, "R50.7").unwrap();
        assert_eq!((r50.genus, r50.orientation, r50.relation), (50, OrientationClass::Reflexible, DualityRelation::DualPaired));
        let c17 = lookup(&t, "C17.1").unwrap();
        assert_eq!(c17.describe(), "C17.1 {3,7} genus 17 chiral");
    }

    #[test]
    fn matching_up_to_duality() {
        let t = fixtures();
        let c17 = lookup(&t, "C17.1").unwrap();
        for ty in [(2, 3, 7), (3, 2, 7), (7, 2, 3)] {
            let ty = TriangleType::new(ty.0, ty.1, ty.2);
            assert!(c17.matches(ty, 17, OrientationClass::Chiral, DualityRelation::SelfDual));
        }
        assert!(!c17.matches(TriangleType::new(3, 3, 7), 17, OrientationClass::Chiral, DualityRelation::None));
        let c26 = lookup(&t, "C26.1").unwrap();
        assert!(!c26.matches(TriangleType::new(8, 2, 8), 26, OrientationClass::Chiral, DualityRelation::SelfDual));
        assert_eq!(MapType::of(TriangleType::new(8, 2, 8)), Some(MapType { q: 8, r: 8 }));
        assert_eq!(MapType::of(TriangleType::new(3, 3, 7)), None);
    }
}
