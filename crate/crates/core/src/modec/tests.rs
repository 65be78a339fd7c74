use super::*;
use crate::fpalg::PrimeField;
use crate::hypermap::{klein, r2_6};

fn x() -> Word {
    Word::generator(0)
}

/// Eigenspace of rho(x) for eigenvalue `lambda`, straight from the kernel.
fn eigenspace(m: &HomologyModule, lambda: u64) -> Submodule {
    let f = m.field();
    let a = m.rho_x().sub(&FpMatrix::identity(f, m.dim()).scale(lambda));
    Submodule::from_matrix(&a.left_kernel())
}

#[test]
fn spin_basics() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let f = m.field();
    assert!(spin(&m, &[]).is_zero());
    let all: Vec<Vec<u64>> = FpMatrix::identity(f, 4).row_vecs();
    assert!(spin(&m, &all).is_full());
    let k3 = HomologyModule::new(&klein(), 3).unwrap();
    for i in 0..6 {
        let mut v = vec![0u64; 6];
        v[i] = 1;
        assert!(spin(&k3, &[v]).is_full());
    }
    let mut v = vec![1u64; 6];
    v[2] = 2;
    assert!(spin(&k3, &[v]).is_full());
}

#[test]
fn primary_components_of_x() {
    let base = r2_6();
    let m17 = HomologyModule::new(&base, 17).unwrap();
    let comps = primary_decomposition(&m17, &x()).unwrap();
    assert_eq!(comps.len(), 4);
    let mut roots: Vec<u64> = comps.iter().map(|c| m17.field().neg(c.factor.coeffs()[0])).collect();
    roots.sort();
    assert_eq!(roots, vec![2, 8, 9, 15]);
    for c in &comps {
        assert_eq!(c.space.dim(), 1);
        assert!(c.space.is_invariant(&generators(&m17)));
    }
    let dims = |p: u64| -> Vec<usize> {
        let m = HomologyModule::new(&base, p).unwrap();
        primary_decomposition(&m, &x()).unwrap().iter().map(|c| c.space.dim()).collect()
    };
    assert_eq!(dims(7), vec![2, 2]);
    assert_eq!(dims(2), vec![4]);
}

#[test]
fn lattice_p17_is_boolean() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let lat = all_submodules(&m).unwrap();
    assert_eq!(lat.len(), 16);
    let counts: Vec<usize> = (0..=4).map(|d| lat.iter().filter(|s| s.dim() == d).count()).collect();
    assert_eq!(counts, vec![1, 4, 6, 4, 1]);
    let gens = generators(&m);
    for a in &lat {
        assert!(a.is_invariant(&gens));
        for b in &lat {
            assert!(lat.contains(&a.sum(b)));
            assert!(lat.contains(&a.intersection(b)));
        }
    }
}

#[test]
fn lattice_p2_is_the_filtration_chain() {
    let m = HomologyModule::new(&r2_6(), 2).unwrap();
    let lat = all_submodules(&m).unwrap();
    let filt = nilpotent_filtration(&m, &x());
    assert_eq!(filt.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![4, 3, 2, 1, 0]);
    let mut chain = filt.clone();
    chain.sort();
    assert_eq!(lat, chain);
    let s = m.mirror_matrix().unwrap().matrix;
    for w in &filt {
        assert_eq!(w.image(&s).unwrap(), *w);
    }
}

#[test]
fn filtration_edge_cases() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let f = nilpotent_filtration(&m, &x());
    assert_eq!(f.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![4, 4]);
    let id = nilpotent_filtration(&m, &Word::identity());
    assert_eq!(id.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![4, 0]);
}

#[test]
fn chiral_split_p17() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let e = |l| eigenspace(&m, l);
    let splits = chiral_splits(&m).unwrap();
    assert_eq!(splits.len(), 2);
    let target = (e(2).sum(&e(8)), e(9).sum(&e(15)));
    assert!(splits.iter().any(|s| (s.plus.clone(), s.minus.clone()) == target || (s.minus.clone(), s.plus.clone()) == target));
    let other = (e(2).sum(&e(15)), e(8).sum(&e(9)));
    assert!(splits.iter().any(|s| (s.plus.clone(), s.minus.clone()) == other || (s.minus.clone(), s.plus.clone()) == other));
    let s = m.mirror_matrix().unwrap().matrix;
    for sp in &splits {
        assert_eq!(sp.plus.image(&s).unwrap(), sp.minus);
        assert!(sp.plus.intersection(&sp.minus).is_zero());
        assert_eq!(sp.plus.dim(), 2);
        assert!(sp.plus.is_invariant(&generators(&m)));
    }
}

#[test]
fn no_chiral_split_cases() {
    let r = r2_6();
    let m7 = HomologyModule::new(&r, 7).unwrap();
    assert!(chiral_split(&m7).unwrap().is_none());
    assert_eq!(mirror_invariant_submodules(&m7, 2).unwrap().len(), 2);
    let k3 = HomologyModule::new(&klein(), 3).unwrap();
    assert!(chiral_split(&k3).unwrap().is_none());
}

#[test]
fn klein_lattices() {
    let k = klein();
    let m7 = HomologyModule::new(&k, 7).unwrap();
    let lat = all_submodules(&m7).unwrap();
    assert_eq!(lat.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![0, 3, 6]);
    let d = meataxe_decompose(&m7);
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.status, DecompositionStatus::IndecomposableCandidate);
    assert_eq!(d.proper_submodules.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![3]);

    let m2 = HomologyModule::new(&k, 2).unwrap();
    let d2 = meataxe_decompose(&m2);
    assert_eq!(d2.summands.iter().map(Submodule::dim).collect::<Vec<_>>(), vec![3, 3]);
    assert_eq!(d2.status, DecompositionStatus::Complete);
    let s = m2.mirror_matrix().unwrap().matrix;
    assert_eq!(d2.summands[0].image(&s).unwrap(), d2.summands[1]);
    assert_eq!(chiral_splits(&m2).unwrap().len(), 1);
}

#[test]
fn meataxe_strategies_agree_when_semisimple() {
    let m = HomologyModule::new(&r2_6(), 17).unwrap();
    let lat = meataxe_decompose_with(&m, Strategy::Lattice);
    assert_eq!(lat.summands.len(), 4);
    assert_eq!(lat.status, DecompositionStatus::Complete);
    let rnd = meataxe_decompose_with(&m, Strategy::Random);
    assert_eq!(rnd.status, DecompositionStatus::Complete);
    assert_eq!(rnd.certificate, Certificate::Norton);
    let mut a = lat.summands.clone();
    let mut b = rnd.summands.clone();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    // deterministic
    assert_eq!(meataxe_decompose_with(&m, Strategy::Random), rnd);

    let k5 = HomologyModule::new(&klein(), 5).unwrap();
    let r = meataxe_decompose_with(&k5, Strategy::Random);
    let dims: usize = r.summands.iter().map(Submodule::dim).sum();
    assert_eq!(dims, 6);
    for (i, a) in r.summands.iter().enumerate() {
        assert!(a.is_invariant(&generators(&k5)));
        for b in &r.summands[i + 1..] {
            assert!(a.intersection(b).is_zero());
        }
    }
}

#[test]
fn random_splitter_flags_modular_case() {
    let m = HomologyModule::new(&klein(), 7).unwrap();
    let d = meataxe_decompose_with(&m, Strategy::Random);
    assert_ne!(d.status, DecompositionStatus::Complete);
    assert_eq!(d.summands.len(), 1);
}

#[test]
fn projective_point_count() {
    let f = PrimeField::new(3).unwrap();
    assert_eq!(projective_points(&Submodule::full(f, 3)).len(), 13);
}
