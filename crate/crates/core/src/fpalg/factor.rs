//! Factorization of univariate polynomials over F_p.
//!
//! Squarefree decomposition, then distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting (trace map in characteristic 2).
//! The equal-degree stage draws from a ChaCha8 stream seeded with
//! [`FACTOR_SEED`], so the output for a given input never varies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::PrimeField;
use super::poly::FpPoly;
use crate::error::{Error, Result};

/// Seed of the equal-degree splitting stream.
pub const FACTOR_SEED: u64 = 0x6879_7065_7263_6f76;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: PrimeField) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::constant(field, self.unit), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }
}

pub fn poly_factor(f: &FpPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lead();
    let monic = f.monic();
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut out: Vec<(FpPoly, u32)> = Vec::new();
    for (sq, mult) in squarefree(&monic) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    // identical factors can arise from different squarefree parts only in
    // characteristic p via p-th roots; merge them
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut merged: Vec<(FpPoly, u32)> = Vec::new();
    for (g, e) in out {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(Factorization { unit, factors: merged })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
/// each `g_i` squarefree and `f = prod g_i^i`.
pub fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let field = f.field();
    let p = field.modulus() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root();
        for (g, e) in squarefree(&root) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field();
    let p = field.modulus() as u128;
    let x = FpPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest, deg));
        }
    }
    out
}

/// Split a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let p = field.modulus();
    loop {
        let a = FpPoly::from_coeffs(field, (0..n).map(|_| rng.random_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace of a from F_{2^d} down to F_2
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.powmod(p as u128, f);
                norm = norm.mul(&frob).rem(f);
            }
            norm.powmod(((p - 1) / 2) as u128, f).sub(&FpPoly::one(field))
        };
        let g = f.gcd(&b);
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut parts = equal_degree(&g, d, rng);
            parts.extend(equal_degree(&f.div_exact(&g), d, rng));
            parts.sort_by(|a, b| a.canonical_cmp(b));
            return parts;
        }
    }
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = f.monic();
    let field = f.field();
    let p = field.modulus() as u128;
    let x = FpPoly::x(field);
    let frob_power = |k: usize| -> FpPoly {
        let mut h = x.rem(&f);
        for _ in 0..k {
            h = h.powmod(p, &f);
        }
        h
    };
    if !frob_power(n).sub(&x).rem(&f).is_zero() {
        return false;
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            primes.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    primes.iter().all(|&q| f.gcd(&frob_power(n / q).sub(&x)).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn x4p1(p: u64) -> FpPoly {
        FpPoly::from_coeffs(field(p), vec![1, 0, 0, 0, 1])
    }

    #[test]
    fn x4_plus_1_mod_17_by_root_scan() {
        let f = x4p1(17);
        let roots: Vec<u64> = (0..17).filter(|&r| f.eval(r) == 0).collect();
        assert_eq!(roots, vec![2, 8, 9, 15]);
        let fac = poly_factor(&f).unwrap();
        let mut got: Vec<FpPoly> = fac.factors.iter().map(|(g, e)| {
            assert_eq!(*e, 1);
            g.clone()
        }).collect();
        got.sort_by(|a, b| a.canonical_cmp(b));
        let mut want: Vec<FpPoly> = roots.iter().map(|&r| FpPoly::from_coeffs(field(17), vec![17 - r, 1])).collect();
        want.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(got, want);
    }

    #[test]
    fn x4_plus_1_mod_7_two_quadratics() {
        let a = FpPoly::from_coeffs(field(7), vec![1, 3, 1]);
        let b = FpPoly::from_coeffs(field(7), vec![1, 4, 1]);
        // oracle: the product expands to x^4 + 1 mod 7
        assert_eq!(a.mul(&b), x4p1(7));
        let fac = poly_factor(&x4p1(7)).unwrap();
        assert_eq!(fac.factors, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn x4_plus_1_mod_2_collapses() {
        let fac = poly_factor(&x4p1(2)).unwrap();
        assert_eq!(fac.factors, vec![(FpPoly::from_coeffs(field(2), vec![1, 1]), 4)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(poly_factor(&FpPoly::zero(field(3))), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn non_monic_input_keeps_unit() {
        let f = x4p1(5).scale(3);
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.unit, 3);
        assert_eq!(fac.expand(field(5)), f);
    }

    #[test]
    fn repeated_factors_in_characteristic_p() {
        // (x^3 + x + 1)^2 * (x + 1)^3 over F_2, and x^9 - 1 = (x - 1)^9 over F_3
        let f2 = field(2);
        let a = FpPoly::from_coeffs(f2, vec![1, 1, 0, 1]);
        let b = FpPoly::from_coeffs(f2, vec![1, 1]);
        let f = a.pow(2).mul(&b.pow(3));
        let fac = poly_factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(b, 3), (a, 2)]);
        let f3 = field(3);
        let g = FpPoly::from_coeffs(f3, vec![2, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        let fac = poly_factor(&g).unwrap();
        assert_eq!(fac.factors, vec![(FpPoly::from_coeffs(f3, vec![2, 1]), 9)]);
    }

    #[test]
    fn rabin_test() {
        assert!(is_irreducible(&FpPoly::from_coeffs(field(7), vec![1, 3, 1])));
        assert!(!is_irreducible(&x4p1(7)));
        assert!(is_irreducible(&FpPoly::from_coeffs(field(2), vec![1, 1, 0, 1])));
        assert!(!is_irreducible(&FpPoly::one(field(2))));
    }
}
