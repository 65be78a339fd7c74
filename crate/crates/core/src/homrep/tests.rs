use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fpalg::{FpPoly, PrimeField};
use crate::fpgroup::triangle_presentation;
use crate::hypermap::{klein, r2_6, torus424, Perm};

fn poly(p: u64, coeffs: &[i64]) -> FpPoly {
    let f = PrimeField::new(p).unwrap();
    FpPoly::from_coeffs(f, coeffs.iter().map(|&c| f.from_i64(c)).collect())
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::from_letters((0..len).map(|_| (rng.random_range(0..2usize), if rng.random_bool(0.5) { 1 } else { -1 })))
}

/// A random word of `N`: a random word followed by the inverse of its coset representative.
fn random_kernel_word(m: &HomologyModule, rng: &mut ChaCha8Rng) -> Word {
    let w = random_word(rng, 12);
    let end = m.table().act(0, &w);
    w.mul(&m.schreier().transversal()[end].inverse())
}

#[test]
fn genus_two_dimensions_and_charpolys() {
    let base = r2_6();
    for p in [2u64, 3, 5, 7, 11, 13, 17] {
        let m = HomologyModule::new(&base, p).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.rho_x().charpoly().unwrap(), poly(p, &[1, 0, 0, 0, 1]), "p = {p}");
        let s = m.mirror_matrix().unwrap().matrix;
        assert_eq!(s.charpoly().unwrap(), poly(p, &[1, 0, -2, 0, 1]), "p = {p}");
    }
}

#[test]
fn representation_property() {
    for (base, p) in [(r2_6(), 17u64), (r2_6(), 2), (klein(), 7), (torus424(), 3)] {
        let m = HomologyModule::new(&base, p).unwrap();
        let t = base.hypermap_type();
        let id = FpMatrix::identity(m.field(), m.dim());
        assert!(m.rho_x().pow(t.l as u64).is_identity());
        assert!(m.rho_y().pow(t.m as u64).is_identity());
        assert!(m.rho_x().mul(m.rho_y()).pow(t.n as u64).is_identity());
        assert!(m.rho_x().det().unwrap() != 0 && m.rho_y().det().unwrap() != 0);
        assert_eq!(m.rho(&Word::identity()), id);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = random_kernel_word(&m, &mut rng);
            assert!(m.rho(&n).is_identity());
        }
        // rho(uv) = rho(u) rho(v), and the direct conjugation matrix agrees
        for _ in 0..10 {
            let u = random_word(&mut rng, 6);
            let v = random_word(&mut rng, 6);
            assert_eq!(m.rho(&u.mul(&v)), m.rho(&u).mul(&m.rho(&v)));
            assert_eq!(m.conjugation_matrix(&u).unwrap(), m.rho(&u));
        }
    }
}

#[test]
fn tau_is_additive() {
    let m = HomologyModule::new(&klein(), 5).unwrap();
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let u = random_kernel_word(&m, &mut rng);
        let v = random_kernel_word(&m, &mut rng);
        let sum: Vec<u64> = m.class_of(&u).unwrap().iter().zip(m.class_of(&v).unwrap()).map(|(&a, b)| f.add(a, b)).collect();
        assert_eq!(m.class_of(&u.mul(&v)).unwrap(), sum);
    }
    assert!(m.class_of(&Word::generator(0)).is_err());
}

#[test]
fn mirror_inverts_generators() {
    for (base, p) in [(r2_6(), 17u64), (r2_6(), 3), (klein(), 2), (klein(), 11)] {
        let m = HomologyModule::new(&base, p).unwrap();
        let s = m.mirror_matrix().unwrap().matrix;
        assert!(s.mul(&s).is_identity());
        assert_eq!(s.mul(m.rho_x()).mul(&s), m.rho_x().inverse().unwrap());
        assert_eq!(s.mul(m.rho_y()).mul(&s), m.rho_y().inverse().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let w = random_word(&mut rng, 8);
            assert_eq!(s.mul(&m.rho(&w)).mul(&s), m.rho(&sigma(&w)));
        }
    }
}

#[test]
fn chiral_base_has_no_mirror() {
    let m = HomologyModule::new(&torus424(), 3).unwrap();
    assert_eq!(m.dim(), 2);
    assert!(matches!(m.mirror_matrix(), Err(Error::NotReflexible)));
}

#[test]
fn klein_character_values() {
    let base = klein();
    for p in [2u64, 3, 5, 11, 13] {
        let m = HomologyModule::new(&base, p).unwrap();
        assert_eq!(m.dim(), 6);
        let f = m.field();
        let expected = |ord: u64| -> i64 {
            match ord {
                1 => 6,
                2 => -2,
                3 => 0,
                4 => 2,
                7 => -1,
                _ => panic!("unexpected element order {ord}"),
            }
        };
        for (d, mat) in m.element_matrices().iter().enumerate() {
            let ord = m.element_order(d);
            assert_eq!(mat.trace(), f.from_i64(expected(ord)), "p = {p}, order {ord}");
        }
    }
    let m11 = HomologyModule::new(&base, 11).unwrap();
    assert_eq!(m11.rho(&Word::from_letters([(0, 1), (1, 1)])).trace(), 10);
}

#[test]
fn element_matrices_match_words() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    for (d, mat) in m.element_matrices().iter().enumerate() {
        assert_eq!(*mat, m.rho(&m.schreier().transversal()[d]));
    }
    let orders: Vec<u64> = (0..8).map(|d| m.element_order(d)).collect();
    assert_eq!(orders.iter().filter(|&&o| o == 8).count(), 4);
}

#[test]
fn torsion_is_refused() {
    // x -> a 4-cycle c, y -> c^2 satisfies the (8,2,8) relators with x of order 4
    let c = Perm::from_cycles(4, &[(0..4).collect()]).unwrap();
    let h = RegularHypermap::from_images(&triangle_presentation(8, 2, 8), &[c.clone(), c.pow(2)], 100).unwrap();
    assert!(!h.is_exact());
    assert!(matches!(HomologyModule::new(&h, 5), Err(Error::Torsion { .. })));
}
