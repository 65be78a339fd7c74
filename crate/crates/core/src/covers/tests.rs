use super::*;
use crate::hypermap::{klein, r2_6, torus424};
use crate::modec::{all_submodules, chiral_splits, mirror_invariant_submodules, nilpotent_filtration};
use crate::fpgroup::Word;

fn tt(l: u32, m: u32, n: u32) -> TriangleType {
    TriangleType::new(l, m, n)
}

#[test]
fn riemann_hurwitz() {
    assert_eq!(genus_rh(tt(8, 2, 8), 8).unwrap(), 2);
    assert_eq!(genus_rh(tt(8, 2, 8), 8 * 17 * 17).unwrap(), 290);
    assert_eq!(genus_rh(tt(2, 3, 7), 168 * 7u128.pow(6)).unwrap(), 235_299);
    assert_eq!(genus_rh(tt(2, 2, 2), 4).unwrap(), 0);
    assert!(genus_rh(tt(8, 2, 8), 3).is_err());
    assert!(genus_rh(tt(2, 3, 7), 100).is_err());
}

#[test]
fn macbeath_covers() {
    let t = torus424();
    let d = macbeath_cover(&t, "torus424", 3).unwrap();
    assert_eq!((d.index, d.genus, d.chirality), (180, 1, Chirality::InheritedChiral));
    let h = explicit_form(&d, 1000).unwrap();
    assert_eq!(h.darts(), 180);
    assert_eq!(h.genus(), 1);
    assert_eq!(h.hypermap_type(), tt(4, 2, 4));
    assert!(h.is_chiral());

    let r = macbeath_cover(&r2_6(), "r2_6", 3).unwrap();
    assert_eq!((r.genus, r.chirality), (82, Chirality::InheritedRegular));
    let k = macbeath_cover(&klein(), "klein", 5).unwrap();
    assert_eq!(k.genus, 31_251);
    assert!(matches!(macbeath_cover(&r2_6(), "r2_6", 2), Err(Error::Precondition(_))));
    assert!(mirror_cover(&k).is_err());
}

#[test]
fn p17_covers() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let splits = chiral_splits(&m).unwrap();
    for sp in &splits {
        let d = module_cover(&m, "r2_6", &sp.plus).unwrap();
        assert_eq!((d.index, d.genus, d.chirality), (8 * 289, 290, Chirality::ChiralCertified));
        let mirror = mirror_cover(&d).unwrap();
        assert_eq!(mirror.w, sp.minus);
        assert_eq!(mirror_cover(&mirror).unwrap().w, d.w);
    }
    let lat = all_submodules(&m).unwrap();
    let maximal: Vec<_> = lat.iter().filter(|w| w.dim() == 3).collect();
    assert_eq!(maximal.len(), 4);
    let mut explicit = Vec::new();
    for w in maximal {
        let d = module_cover(&m, "r2_6", w).unwrap();
        assert_eq!((d.index, d.genus), (136, 18));
        assert_eq!(d.chirality, Chirality::ChiralCertified);
        let h = explicit_form(&d, 200).unwrap();
        assert_eq!(h.genus(), 18);
        assert!(h.is_chiral());
        explicit.push((d, h));
    }
    // mirror pairs are mirror-isomorphic
    for (d, h) in &explicit {
        let md = mirror_cover(d).unwrap();
        let (_, mh) = explicit.iter().find(|(e, _)| e.w == md.w).unwrap();
        assert!(h.mirror().iso(mh));
    }
}

#[test]
fn p2_filtration_covers() {
    let m = HomologyModule::new(&r2_6(), 2).unwrap();
    let filt = nilpotent_filtration(&m, &Word::generator(0));
    let genera: Vec<u128> = filt.iter().map(|w| module_cover(&m, "r2_6", w).unwrap().genus).collect();
    assert_eq!(genera, vec![2, 3, 5, 9, 17]);
    for w in &filt {
        let d = module_cover(&m, "r2_6", w).unwrap();
        assert_eq!(d.chirality, Chirality::RegularCertified);
        let h = explicit_form(&d, 128).unwrap();
        assert_eq!(h.genus() as u128, d.genus);
        assert!(!h.is_chiral());
    }
}

#[test]
fn p7_regular_pair() {
    let m = HomologyModule::new(&r2_6(), 7).unwrap();
    let inv = mirror_invariant_submodules(&m, 2).unwrap();
    assert_eq!(inv.len(), 2);
    for w in &inv {
        let d = module_cover(&m, "r2_6", w).unwrap();
        assert_eq!((d.genus, d.chirality), (50, Chirality::RegularCertified));
        let h = explicit_form(&d, 400).unwrap();
        assert!(!h.is_chiral());
    }
}

#[test]
fn klein_p7_covers() {
    let m = HomologyModule::new(&klein(), 7).unwrap();
    let lat = all_submodules(&m).unwrap();
    let u3 = lat.iter().find(|w| w.dim() == 3).unwrap();
    let d = module_cover(&m, "klein", u3).unwrap();
    assert_eq!((d.genus, d.chirality), (687, Chirality::RegularCertified));
    let z = module_cover(&m, "klein", &lat[0]).unwrap();
    assert_eq!((z.genus, z.chirality), (235_299, Chirality::RegularCertified));
}

#[test]
fn rejects_non_invariant_and_chiral_base() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let f = m.field();
    let w = Submodule::span(f, 4, &[vec![1, 0, 0, 0]]).unwrap();
    // a single coordinate line is not one of the four eigenlines
    assert!(!w.is_invariant(&[m.rho_x().clone(), m.rho_y().clone()]));
    assert!(matches!(module_cover(&m, "r2_6", &w), Err(Error::NotInvariant)));
    let t = HomologyModule::new(&torus424(), 3).unwrap();
    let zero = Submodule::zero(t.field(), 2);
    assert!(matches!(module_cover(&t, "torus424", &zero), Err(Error::NotReflexible)));
}
