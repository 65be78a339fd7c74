//! Named base hypermaps used throughout the examples and the CLI.

use super::perm::Perm;
use super::regular::RegularHypermap;
use crate::error::{Error, Result};
use crate::fpgroup::{coset_enumerate, triangle_presentation};

pub const BUILTIN_NAMES: [&str; 3] = ["r2_6", "klein", "torus424"];

/// The genus-2 map of type (8,2,8): `x` an 8-cycle `r`, `y = r^4`.
pub fn r2_6() -> RegularHypermap {
    let r = Perm::from_cycles(8, &[(0..8).collect()]).unwrap();
    RegularHypermap::from_images(&triangle_presentation(8, 2, 8), &[r.clone(), r.pow(4)], 8).unwrap()
}

/// Klein's quartic: the order-168 quotient of Δ(2,3,7) by `[x,y]^4`.
pub fn klein() -> RegularHypermap {
    let pres = triangle_presentation(2, 3, 7).with_relator_text("[x,y]^4").unwrap();
    let t = coset_enumerate(&pres, &[], 4096).unwrap();
    RegularHypermap::from_coset_table(&pres, &t).unwrap()
}

/// The chiral torus map of type (4,2,4) on 20 darts: the regular closure
/// of `t -> 2t` and `t -> 1 - t` on the residues mod 5.
pub fn torus424() -> RegularHypermap {
    let a = Perm::from_images((0..5).map(|t| (2 * t % 5) as u32).collect()).unwrap();
    let b = Perm::from_images((0..5).map(|t| ((6 - t) % 5) as u32).collect()).unwrap();
    RegularHypermap::from_images(&triangle_presentation(4, 2, 4), &[a, b], 20).unwrap()
}

pub fn builtin(name: &str) -> Result<RegularHypermap> {
    match name {
        "r2_6" => Ok(r2_6()),
        "klein" => Ok(klein()),
        "torus424" => Ok(torus424()),
        _ => Err(Error::Precondition(format!("unknown builtin base '{name}'"))),
    }
}
