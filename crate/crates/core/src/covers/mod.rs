//! Covers of regular hypermaps from subgroups of the kernel `N`:
//! the characteristic subgroup `N'N^p` (case 1) and the preimages of
//! invariant submodules `W` of `M_p` (case 2).

mod extension;

use std::sync::Arc;

pub use extension::{ExtensionContext, ExtensionElement};

use crate::error::{Error, Result};
use crate::fpgroup::TriangleType;
use crate::homrep::HomologyModule;
use crate::hypermap::RegularHypermap;
use crate::modec::Submodule;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverCase {
    /// `N'N^p`, the whole homology module.
    Macbeath,
    /// The preimage of an invariant submodule.
    Module,
}

impl CoverCase {
    pub fn number(self) -> u8 {
        match self {
            CoverCase::Macbeath => 1,
            CoverCase::Module => 2,
        }
    }
}

/// How the chirality of a cover was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    /// `S W != W`.
    ChiralCertified,
    /// `S W = W`.
    RegularCertified,
    /// `N'N^p` is characteristic in `N`, so it inherits the base's chirality.
    InheritedChiral,
    InheritedRegular,
}

impl Chirality {
    pub fn is_chiral(self) -> bool {
        matches!(self, Chirality::ChiralCertified | Chirality::InheritedChiral)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Chirality::ChiralCertified => "chiral-certified",
            Chirality::RegularCertified => "regular-certified",
            Chirality::InheritedChiral => "inherited-chiral",
            Chirality::InheritedRegular => "inherited-regular",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Chirality::ChiralCertified, Chirality::RegularCertified, Chirality::InheritedChiral, Chirality::InheritedRegular]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

/// A constructed cover of a base hypermap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDescriptor {
    pub base_label: String,
    pub base: RegularHypermap,
    pub p: u64,
    pub case: CoverCase,
    /// The submodule `W`; zero for case 1.
    pub w: Submodule,
    /// Index of the cover's subgroup in the triangle group.
    pub index: u128,
    pub hypermap_type: TriangleType,
    pub genus: u128,
    pub chirality: Chirality,
    pub explicit: Option<RegularHypermap>,
}

/// Genus `g'` with `2 - 2g' = index (1/l + 1/m + 1/n - 1)`.
pub fn genus_rh(t: TriangleType, index: u128) -> Result<u128> {
    let bad = || Error::Inconsistent { kind: t.as_tuple(), index };
    let (l, m, n) = (t.l as i128, t.m as i128, t.n as i128);
    let lmn = l * m * n;
    let deficit = lmn - m * n - l * n - l * m;
    let idx = i128::try_from(index).map_err(|_| bad())?;
    let num = idx.checked_mul(deficit).ok_or_else(bad)?;
    if num % lmn != 0 {
        return Err(bad());
    }
    let two_g_minus_two = num / lmn;
    if two_g_minus_two < -2 || two_g_minus_two % 2 != 0 {
        return Err(bad());
    }
    Ok(((two_g_minus_two + 2) / 2) as u128)
}

fn pow_u128(p: u64, e: u64) -> Result<u128> {
    (p as u128).checked_pow(e as u32).ok_or_else(|| Error::TooLarge(format!("{p}^{e}"), u128::MAX))
}

fn check_type(ctx: &ExtensionContext, t: TriangleType) -> Result<()> {
    let (a, b, c) = ctx.generator_orders();
    let found = (a as u32, b as u32, c as u32);
    if found != t.as_tuple() {
        return Err(Error::Torsion { expected: t.as_tuple(), found });
    }
    Ok(())
}

/// Case 1: the cover given by `N'N^p` for a prime `p` not dividing `|G|`.
pub fn macbeath_cover(base: &RegularHypermap, label: &str, p: u64) -> Result<CoverDescriptor> {
    crate::fpalg::PrimeField::new(p)?;
    let order = base.darts() as u64;
    if order % p == 0 {
        return Err(Error::Precondition(format!("p = {p} divides |G| = {order}")));
    }
    let g = base.genus();
    if g == 0 {
        return Err(Error::Unsupported("the base is spherical (genus 0)".into()));
    }
    let m = Arc::new(HomologyModule::new(base, p)?);
    let t = base.hypermap_type();
    let w = Submodule::zero(m.field(), m.dim());
    let ctx = ExtensionContext::new(m, w.clone())?;
    check_type(&ctx, t)?;
    let index = ctx.order();
    let genus = genus_rh(t, index)?;
    let closed = pow_u128(p, 2 * g)? * (g as u128 - 1) + 1;
    if genus != closed {
        return Err(Error::Inconsistent { kind: t.as_tuple(), index });
    }
    let chirality = if base.is_chiral() { Chirality::InheritedChiral } else { Chirality::InheritedRegular };
    Ok(CoverDescriptor {
        base_label: label.to_string(),
        base: base.clone(),
        p,
        case: CoverCase::Macbeath,
        w,
        index,
        hypermap_type: t,
        genus,
        chirality,
        explicit: None,
    })
}

/// Case 2: the cover given by the preimage of an invariant submodule `W`
/// of `M_p`, for a reflexible base.
pub fn module_cover(m: &HomologyModule, label: &str, w: &Submodule) -> Result<CoverDescriptor> {
    let s = m.mirror_matrix()?.matrix;
    let base = m.base();
    let t = base.hypermap_type();
    let module = Arc::new(HomologyModule::new(base, m.prime())?);
    let ctx = ExtensionContext::new(module, w.clone())?;
    check_type(&ctx, t)?;
    let index = ctx.order();
    let genus = genus_rh(t, index)?;
    let g = base.genus();
    if w.dim() as u64 == g {
        let closed = (g as u128 - 1) * pow_u128(m.prime(), g)? + 1;
        if genus != closed {
            return Err(Error::Inconsistent { kind: t.as_tuple(), index });
        }
    }
    let chirality = if w.image(&s)? != *w { Chirality::ChiralCertified } else { Chirality::RegularCertified };
    Ok(CoverDescriptor {
        base_label: label.to_string(),
        base: base.clone(),
        p: m.prime(),
        case: CoverCase::Module,
        w: w.clone(),
        index,
        hypermap_type: t,
        genus,
        chirality,
        explicit: None,
    })
}

/// The mirror image of a case-2 cover: `W` replaced by `S W`.
pub fn mirror_cover(d: &CoverDescriptor) -> Result<CoverDescriptor> {
    if d.case != CoverCase::Module {
        return Err(Error::Unsupported("case-1 covers have no module description of their mirror".into()));
    }
    let m = HomologyModule::new(&d.base, d.p)?;
    let s = m.mirror_matrix()?.matrix;
    let mut out = module_cover(&m, &d.base_label, &d.w.image(&s)?)?;
    out.explicit = d.explicit.as_ref().map(RegularHypermap::mirror);
    Ok(out)
}

/// The extension context describing a descriptor's cover group.
pub fn extension_context(d: &CoverDescriptor) -> Result<ExtensionContext> {
    let m = Arc::new(HomologyModule::new(&d.base, d.p)?);
    ExtensionContext::new(m, d.w.clone())
}

/// The cover as explicit permutations on `index` darts.
pub fn explicit_form(d: &CoverDescriptor, max_darts: usize) -> Result<RegularHypermap> {
    explicit_form_with(d, max_darts, Exec::default())
}

pub fn explicit_form_with(d: &CoverDescriptor, max_darts: usize, exec: Exec) -> Result<RegularHypermap> {
    if d.index > max_darts as u128 {
        return Err(Error::TooLarge("explicit cover dart count".into(), max_darts as u128));
    }
    let ctx = extension_context(d)?;
    ctx.fill_cocycles(exec);
    ctx.regular_action(max_darts, exec)
}

#[cfg(test)]
mod tests;
