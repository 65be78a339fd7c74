//! The end-to-end verification pipeline: every acceptance check recomputed
//! from scratch, compared as an expected/computed text pair.
//!
//! Expected texts are built only from the census fixtures and closed-form
//! constants; computed texts only from the library. A check passes when
//! the two texts are identical and its runtime is within its limit. Errors
//! and panics inside one check are recorded as that check's failure and
//! never stop the sweep.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fixtures::{describe, fixtures, lookup, CensusFixture, DualityRelation, MapType, OrientationClass};
use super::record::{parse_record, Record};
use crate::covers::{
    explicit_form_with, extension_context, genus_rh, macbeath_cover, mirror_cover, module_cover, Chirality, CoverCase,
    CoverDescriptor, ExtensionContext, ExtensionElement,
};
use crate::error::{Error, Result};
use crate::fpalg::{FpPoly, PrimeField};
use crate::fpgroup::{TriangleType, Word};
use crate::homrep::HomologyModule;
use crate::hypermap::{klein, r2_6, search_all, torus424, RegularHypermap};
use crate::modec::{
    all_submodules, chiral_split, chiral_splits, meataxe_decompose, mirror_invariant_submodules, nilpotent_filtration,
    Submodule,
};
use crate::par::Exec;

/// Descriptors with at most this many darts get a brute-force chirality
/// check against their certificate.
pub const ORACLE_INDEX_LIMIT: u128 = 5000;

/// One row of the report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub title: String,
    pub expected: String,
    pub computed: String,
    /// Informational detail that is not compared.
    pub note: String,
    pub pass: bool,
    pub runtime_ms: u128,
    pub limit_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_record(&self) -> Record {
        let mut r = Record::new("report");
        r.field("checks", self.checks.len()).field("passed", self.passed()).field("failed", self.failed());
        for c in &self.checks {
            let mut cr = Record::new("check").with_role(Some(&c.id));
            cr.field("title", &c.title)
                .field("status", if c.pass { "pass" } else { "fail" })
                .field("limit_ms", c.limit_ms.map_or_else(|| "none".to_string(), |l| l.to_string()))
                .field("runtime_ms", c.runtime_ms)
                .field("expected", &c.expected)
                .field("computed", &c.computed)
                .field("note", &c.note);
            r.child(cr);
        }
        r
    }

    pub fn from_record(r: &Record) -> Result<Self> {
        r.expect_kind("report")?;
        let mut checks = Vec::new();
        for c in r.children() {
            c.expect_kind("check")?;
            let pass = match c.get("status")? {
                "pass" => true,
                "fail" => false,
                s => return Err(Error::Record(format!("unknown check status '{s}'"))),
            };
            let limit_ms = match c.get("limit_ms")? {
                "none" => None,
                _ => Some(c.parse_field("limit_ms")?),
            };
            checks.push(CheckRecord {
                id: c.role.clone().ok_or_else(|| Error::Record("check record without an id".into()))?,
                title: c.get("title")?.to_string(),
                expected: c.get("expected")?.to_string(),
                computed: c.get("computed")?.to_string(),
                note: c.get("note")?.to_string(),
                pass,
                runtime_ms: c.parse_field("runtime_ms")?,
                limit_ms,
            });
        }
        let report = VerificationReport { checks };
        let stated: (usize, usize, usize) = (r.parse_field("checks")?, r.parse_field("passed")?, r.parse_field("failed")?);
        if stated != (report.checks.len(), report.passed(), report.failed()) {
            return Err(Error::Record("report totals disagree with its check records".into()));
        }
        Ok(report)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_record(&parse_record(text)?)
    }

    /// Plain-text table for humans.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let w_title = self.checks.iter().map(|c| c.title.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:<5} {:<6} {:>10}  {:<w_title$}\n", "id", "status", "runtime", "check"));
        out.push_str(&format!("{}\n", "-".repeat(25 + w_title)));
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let rt = format!("{} ms", c.runtime_ms);
            out.push_str(&format!("{:<5} {:<6} {:>10}  {:<w_title$}\n", c.id, status, rt, c.title));
            if !c.pass {
                out.push_str(&format!("      expected: {}\n      computed: {}\n", c.expected, c.computed));
                if let Some(l) = c.limit_ms.filter(|&l| c.runtime_ms > l) {
                    out.push_str(&format!("      runtime limit {l} ms exceeded\n"));
                }
            }
        }
        out.push_str(&format!("{} of {} checks passed\n", self.passed(), self.checks.len()));
        out
    }
}

/// Run the acceptance matrix against the compiled-in fixtures.
pub fn verify_paper() -> VerificationReport {
    verify_paper_with(&fixtures())
}

/// Run the acceptance matrix against the given fixture table.
pub fn verify_paper_with(table: &[CensusFixture]) -> VerificationReport {
    Verifier::new(table.to_vec(), Exec::default()).run()
}

type CheckFn = fn(&mut Verifier) -> Result<Outcome>;

struct Outcome {
    expected: String,
    computed: String,
    note: String,
}

impl Outcome {
    fn new(expected: impl Into<String>, computed: impl Into<String>) -> Self {
        Outcome { expected: expected.into(), computed: computed.into(), note: String::new() }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

/// State shared between checks: the fixture table and every descriptor
/// built so far, which the property check revisits.
pub struct Verifier {
    table: Vec<CensusFixture>,
    exec: Exec,
    collected: Vec<CoverDescriptor>,
}

const CHECKS: [(&str, &str, Option<u128>, CheckFn); 12] = [
    ("AC01", "base reconstruction by search", Some(1_000), Verifier::ac01),
    ("AC02", "homology matrix invariants", Some(1_000), Verifier::ac02),
    ("AC03", "p = 17 chiral pair and codim-1 covers", Some(10_000), Verifier::ac03),
    ("AC04", "p = 3, 11 self-dual chiral pairs", Some(5_000), Verifier::ac04),
    ("AC05", "p = 5, 13 mutually dual chiral pairs", Some(5_000), Verifier::ac05),
    ("AC06", "p = 7 regular dual pair", Some(5_000), Verifier::ac06),
    ("AC07", "p = 2 filtration covers", Some(5_000), Verifier::ac07),
    ("AC08", "Klein base and character values", None, Verifier::ac08),
    ("AC09", "Klein p = 2 chiral pair", None, Verifier::ac09),
    ("AC10", "Klein lattices at p = 3, 5, 7, 11, 13", None, Verifier::ac10),
    ("AC11", "case 1 torus cover", None, Verifier::ac11),
    ("AC12", "property suite", None, Verifier::ac12),
];

/// Check ids in report order.
pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The single distinct value of a list, or all distinct values joined.
fn uniform(items: &[String]) -> String {
    let set: BTreeSet<&String> = items.iter().collect();
    match set.len() {
        0 => "none".to_string(),
        _ => set.into_iter().cloned().collect::<Vec<_>>().join(" | "),
    }
}

fn map_type(t: TriangleType) -> MapType {
    MapType::of(t).unwrap_or(MapType { q: t.l, r: t.n })
}

/// `Self-dual` if the map is isomorphic to its dual, `DualPaired` if its
/// dual is another member of the family, `None` otherwise.
fn duality_relation(i: usize, family: &[RegularHypermap]) -> DualityRelation {
    let d = family[i].dual();
    if family[i].iso(&d) {
        DualityRelation::SelfDual
    } else if family.iter().enumerate().any(|(j, h)| j != i && h.iso(&d)) {
        DualityRelation::DualPaired
    } else {
        DualityRelation::None
    }
}

fn closed_form_genus(d: &CoverDescriptor) -> Option<u128> {
    let g = d.base.genus() as u128;
    let p = d.p as u128;
    match d.case {
        CoverCase::Macbeath => Some(p.checked_pow(2 * g as u32)? * (g - 1) + 1),
        CoverCase::Module if d.w.dim() as u128 == g => Some((g - 1) * p.checked_pow(g as u32)? + 1),
        CoverCase::Module => None,
    }
}

impl Verifier {
    pub fn new(table: Vec<CensusFixture>, exec: Exec) -> Self {
        Verifier { table, exec, collected: Vec::new() }
    }

    pub fn run(mut self) -> VerificationReport {
        let mut checks = Vec::new();
        for (id, title, limit_ms, f) in CHECKS {
            let start = Instant::now();
            let outcome = catch_unwind(AssertUnwindSafe(|| f(&mut self)));
            let runtime_ms = start.elapsed().as_millis();
            let (expected, computed, note, ok) = match outcome {
                Ok(Ok(o)) => {
                    let ok = o.expected == o.computed;
                    (o.expected, o.computed, o.note, ok)
                }
                Ok(Err(e)) => ("success".to_string(), format!("error ({}): {e}", e.kind()), String::new(), false),
                Err(_) => ("success".to_string(), "panic".to_string(), String::new(), false),
            };
            let in_time = limit_ms.is_none_or(|l| runtime_ms <= l);
            checks.push(CheckRecord {
                id: id.to_string(),
                title: title.to_string(),
                expected,
                computed,
                note,
                pass: ok && in_time,
                runtime_ms,
                limit_ms,
            });
        }
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        VerificationReport { checks }
    }

    fn fixture(&self, label: &str) -> Result<&CensusFixture> {
        lookup(&self.table, label).ok_or_else(|| Error::Precondition(format!("fixture {label} is missing")))
    }

    /// Computed census description of a cover, checking the duality
    /// relation only where the fixture states one.
    fn census(&self, label: &str, d: &CoverDescriptor, relation: impl FnOnce() -> DualityRelation) -> Result<String> {
        let fx = self.fixture(label)?;
        let rel = if fx.relation == DualityRelation::None { DualityRelation::None } else { relation() };
        Ok(describe(label, map_type(d.hypermap_type), d.genus, OrientationClass::from_chiral(d.chirality.is_chiral()), rel))
    }

    fn explicit(&self, d: &mut CoverDescriptor) -> Result<RegularHypermap> {
        if d.explicit.is_none() {
            d.explicit = Some(explicit_form_with(d, d.index as usize, self.exec)?);
        }
        Ok(d.explicit.clone().unwrap())
    }

    fn keep(&mut self, ds: &[CoverDescriptor]) {
        self.collected.extend(ds.iter().cloned());
    }

    fn ac01(&mut self) -> Result<Outcome> {
        let fx = self.fixture("R2.6")?.clone();
        let expected = format!("1 class at degree <= 8; 8 darts; counts 1,4,1; {}", fx.describe());
        let classes = search_all(8, 2, 8, 8, 8, self.exec);
        let Some(h) = classes.first() else {
            return Ok(Outcome::new(expected, "0 classes at degree <= 8"));
        };
        let (v, e, f) = h.euler_counts();
        let rel = if fx.relation == DualityRelation::None {
            DualityRelation::None
        } else if h.is_self_dual() {
            DualityRelation::SelfDual
        } else {
            DualityRelation::None
        };
        let census =
            describe("R2.6", map_type(h.hypermap_type()), h.genus() as u128, OrientationClass::from_chiral(h.is_chiral()), rel);
        let computed = format!("{} class at degree <= 8; {} darts; counts {v},{e},{f}; {census}", classes.len(), h.darts());
        Ok(Outcome::new(expected, computed).note(format!("isomorphic to the builtin r2_6: {}", yes(h.iso(&r2_6())))))
    }

    fn ac02(&mut self) -> Result<Outcome> {
        let base = r2_6();
        let mut expected = Vec::new();
        let mut computed = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17] {
            let f = PrimeField::new(p)?;
            let poly = |c: &[i64]| FpPoly::from_coeffs(f, c.iter().map(|&a| f.from_i64(a)).collect());
            expected.push(format!("p={p}: x {}, S {}", poly(&[1, 0, 0, 0, 1]), poly(&[1, 0, -2, 0, 1])));
            let m = HomologyModule::new(&base, p)?;
            let cs = m.mirror_matrix()?.matrix.charpoly()?;
            computed.push(format!("p={p}: x {}, S {}", m.rho_x().charpoly()?, cs));
        }
        Ok(Outcome::new(expected.join("; "), computed.join("; ")))
    }

    fn ac03(&mut self) -> Result<Outcome> {
        let c290 = self.fixture("C290.4")?.describe();
        let c18 = self.fixture("C18.1")?.describe();
        let expected = format!(
            "split covers: {c290}, chiral-certified, mirror-paired yes; 4 codim-1 covers: {c18}, chiral-certified, \
             oracle agrees yes; 2 mirror pairs; duals lie in the other pair yes"
        );
        let m = HomologyModule::new(&r2_6(), 17)?;
        let splits = chiral_splits(&m)?;
        let mut split_lines = Vec::new();
        for sp in &splits {
            let d = module_cover(&m, "r2_6", &sp.plus)?;
            let md = mirror_cover(&d)?;
            let paired = md.w == sp.minus;
            let line = format!("{}, {}, mirror-paired {}", self.census("C290.4", &d, || DualityRelation::None)?, d.chirality.as_str(), yes(paired));
            split_lines.push(line);
            self.keep(&[d, md]);
        }
        let lattice = all_submodules(&m)?;
        let mut ds: Vec<CoverDescriptor> =
            lattice.iter().filter(|w| w.codim() == 1).map(|w| module_cover(&m, "r2_6", w)).collect::<Result<_>>()?;
        let hs: Vec<RegularHypermap> = ds.iter_mut().map(|d| self.explicit(d)).collect::<Result<_>>()?;
        let partner: Vec<Option<usize>> = ds
            .iter()
            .map(|d| {
                let mw = mirror_cover(d).ok()?.w;
                ds.iter().position(|e| e.w == mw)
            })
            .collect();
        let mut cover_lines = Vec::new();
        for (i, d) in ds.iter().enumerate() {
            let census = self.census("C18.1", d, || duality_relation(i, &hs))?;
            let oracle = hs[i].is_chiral() == d.chirality.is_chiral();
            cover_lines.push(format!("{census}, {}, oracle agrees {}", d.chirality.as_str(), yes(oracle)));
        }
        let pairs = (0..ds.len())
            .filter(|&i| partner[i].is_some_and(|j| j > i && hs[i].mirror().iso(&hs[j])))
            .count();
        let duals_across = !ds.is_empty()
            && (0..ds.len()).all(|i| {
                let d = hs[i].dual();
                let j = hs.iter().position(|h| h.iso(&d));
                j.is_some_and(|j| j != i && Some(j) != partner[i])
            });
        let computed = format!(
            "split covers: {}; {} codim-1 covers: {}; {pairs} mirror pairs; duals lie in the other pair {}",
            uniform(&split_lines),
            ds.len(),
            uniform(&cover_lines),
            yes(duals_across)
        );
        let note = format!("{} chiral splits; explicit codim-1 forms with {} darts", splits.len(), hs.first().map_or(0, |h| h.darts()));
        self.keep(&ds);
        Ok(Outcome::new(expected, computed).note(note))
    }

    /// One prime of a `{8,8}` chiral pair check: the split's two covers,
    /// their explicit forms, oracle and duality relation.
    fn chiral_pair(&mut self, p: u64, label: &str, lattice: bool) -> Result<(String, String)> {
        let fx = self.fixture(label)?.describe();
        let m = HomologyModule::new(&r2_6(), p)?;
        let mut expected = format!("p={p}: ");
        let mut computed = format!("p={p}: ");
        if lattice {
            expected.push_str("lattice dims [0, 2, 2, 4]; ");
            let dims: Vec<usize> = all_submodules(&m)?.iter().map(Submodule::dim).collect();
            computed.push_str(&format!("lattice dims {dims:?}; "));
        }
        expected.push_str(&format!("{fx}, chiral-certified, oracle agrees yes"));
        let Some(sp) = chiral_split(&m)? else {
            computed.push_str("no chiral split");
            return Ok((expected, computed));
        };
        let plus = module_cover(&m, "r2_6", &sp.plus)?;
        let mut pair = vec![plus.clone(), mirror_cover(&plus)?];
        let hs: Vec<RegularHypermap> = pair.iter_mut().map(|d| self.explicit(d)).collect::<Result<_>>()?;
        let mut lines = Vec::new();
        for (i, d) in pair.iter().enumerate() {
            let census = self.census(label, d, || duality_relation(i, &hs))?;
            let oracle = hs[i].is_chiral() == d.chirality.is_chiral();
            lines.push(format!("{census}, {}, oracle agrees {}", d.chirality.as_str(), yes(oracle)));
        }
        computed.push_str(&uniform(&lines));
        self.keep(&pair);
        Ok((expected, computed))
    }

    fn pair_check(&mut self, cases: &[(u64, &str)], lattice: bool) -> Result<Outcome> {
        let mut e = Vec::new();
        let mut c = Vec::new();
        for &(p, label) in cases {
            let (x, y) = self.chiral_pair(p, label, lattice)?;
            e.push(x);
            c.push(y);
        }
        Ok(Outcome::new(e.join("; "), c.join("; ")))
    }

    fn ac04(&mut self) -> Result<Outcome> {
        self.pair_check(&[(3, "C10.3"), (11, "C122.7")], true)
    }

    fn ac05(&mut self) -> Result<Outcome> {
        self.pair_check(&[(5, "C26.1"), (13, "C170.7")], false)
    }

    fn ac06(&mut self) -> Result<Outcome> {
        let fx = self.fixture("R50.7")?.describe();
        let expected = format!("no chiral split; 2 mirror-invariant dim-2 covers: {fx}, regular-certified, oracle agrees yes");
        let m = HomologyModule::new(&r2_6(), 7)?;
        let splits = chiral_splits(&m)?;
        let split_text = if splits.is_empty() { "no chiral split".to_string() } else { format!("{} chiral splits", splits.len()) };
        let mut ds: Vec<CoverDescriptor> =
            mirror_invariant_submodules(&m, 2)?.iter().map(|w| module_cover(&m, "r2_6", w)).collect::<Result<_>>()?;
        let hs: Vec<RegularHypermap> = ds.iter_mut().map(|d| self.explicit(d)).collect::<Result<_>>()?;
        let mut lines = Vec::new();
        for (i, d) in ds.iter().enumerate() {
            let census = self.census("R50.7", d, || duality_relation(i, &hs))?;
            let oracle = hs[i].is_chiral() == d.chirality.is_chiral();
            lines.push(format!("{census}, {}, oracle agrees {}", d.chirality.as_str(), yes(oracle)));
        }
        let computed = format!("{split_text}; {} mirror-invariant dim-2 covers: {}", ds.len(), uniform(&lines));
        self.keep(&ds);
        Ok(Outcome::new(expected, computed))
    }

    fn ac07(&mut self) -> Result<Outcome> {
        let expected = "chain dims [4, 3, 2, 1, 0]; lattice equals chain yes; genera [2, 3, 5, 9, 17]; \
                        S-invariant 5/5; reflexible by oracle 5/5";
        let m = HomologyModule::new(&r2_6(), 2)?;
        let filt = nilpotent_filtration(&m, &Word::generator(0));
        let dims: Vec<usize> = filt.iter().map(Submodule::dim).collect();
        let lattice: BTreeSet<Submodule> = all_submodules(&m)?.into_iter().collect();
        let chain: BTreeSet<Submodule> = filt.iter().cloned().collect();
        let mut ds: Vec<CoverDescriptor> = filt.iter().map(|w| module_cover(&m, "r2_6", w)).collect::<Result<_>>()?;
        let genera: Vec<u128> = ds.iter().map(|d| d.genus).collect();
        let invariant = ds.iter().filter(|d| d.chirality == Chirality::RegularCertified).count();
        let mut reflexible = 0;
        for d in ds.iter_mut().filter(|d| d.index <= 128) {
            if !self.explicit(d)?.is_chiral() {
                reflexible += 1;
            }
        }
        let n = ds.len();
        let computed = format!(
            "chain dims {dims:?}; lattice equals chain {}; genera {genera:?}; S-invariant {invariant}/{n}; \
             reflexible by oracle {reflexible}/{n}",
            yes(lattice == chain)
        );
        self.keep(&ds);
        Ok(Outcome::new(expected, computed))
    }

    fn ac08(&mut self) -> Result<Outcome> {
        const ORDERS: [u64; 5] = [1, 2, 3, 4, 7];
        const CHI: [i64; 5] = [6, -2, 0, 2, -1];
        let base = klein();
        let mut expected = vec!["order 168, genus 3".to_string()];
        let mut computed = vec![format!("order {}, genus {}", base.darts(), base.genus())];
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = PrimeField::new(p)?;
            let values: Vec<String> = ORDERS.iter().zip(CHI).map(|(o, c)| format!("{o}:{}", f.from_i64(c))).collect();
            expected.push(format!("p={p}: dim 6, traces {}", values.join(" ")));
            let m = HomologyModule::new(&base, p)?;
            let mats = m.element_matrices();
            let traces: Vec<String> = ORDERS
                .iter()
                .map(|&o| {
                    let set: BTreeSet<u64> = (0..mats.len()).filter(|&d| m.element_order(d) == o).map(|d| mats[d].trace()).collect();
                    let vals: Vec<String> = set.iter().map(u64::to_string).collect();
                    format!("{o}:{}", if vals.is_empty() { "-".to_string() } else { vals.join("|") })
                })
                .collect();
            computed.push(format!("p={p}: dim {}, traces {}", m.dim(), traces.join(" ")));
        }
        Ok(Outcome::new(expected.join("; "), computed.join("; ")))
    }

    fn ac09(&mut self) -> Result<Outcome> {
        let c17 = self.fixture("C17.1")?.describe();
        let (p, g) = (2u128, 3u32);
        let formula = p.pow(2 * g) * (g as u128 - 1) + 1;
        let expected = format!(
            "summand dims [3, 3], swapped by S yes; {c17}, chiral-certified, mirror-paired yes; \
             zero cover index 10752, genus {formula} by formula"
        );
        let m = HomologyModule::new(&klein(), 2)?;
        let dec = meataxe_decompose(&m);
        let dims: Vec<usize> = dec.summands.iter().map(Submodule::dim).collect();
        let s = m.mirror_matrix()?.matrix;
        let swapped = dec.summands.len() == 2 && dec.summands[0].image(&s)? == dec.summands[1];
        let mut computed = format!("summand dims {dims:?}, swapped by S {}; ", yes(swapped));
        let splits = chiral_splits(&m)?;
        let mut lines = Vec::new();
        for sp in &splits {
            let d = module_cover(&m, "klein", &sp.plus)?;
            let md = mirror_cover(&d)?;
            lines.push(format!("{}, {}, mirror-paired {}", self.census("C17.1", &d, || DualityRelation::None)?, d.chirality.as_str(), yes(md.w == sp.minus)));
            self.keep(&[d, md]);
        }
        computed.push_str(&if lines.is_empty() { "no chiral split".to_string() } else { uniform(&lines) });
        let zero = module_cover(&m, "klein", &Submodule::zero(m.field(), m.dim()))?;
        let rh = genus_rh(zero.hypermap_type, zero.index)?;
        computed.push_str(&format!("; zero cover index {}, genus {rh} by formula", zero.index));
        let note = format!("{} chiral split(s); decomposition status {}", splits.len(), dec.status.as_str());
        self.keep(&[zero]);
        Ok(Outcome::new(expected, computed).note(note))
    }

    fn ac10(&mut self) -> Result<Outcome> {
        let base = klein();
        let mut expected = Vec::new();
        let mut computed = Vec::new();

        expected.push("p=7: lattice dims [0, 3, 6]; dim-3 cover genus 687 regular-certified; zero cover genus 235299 regular-certified".to_string());
        let m7 = HomologyModule::new(&base, 7)?;
        let lat = all_submodules(&m7)?;
        let dims: Vec<usize> = lat.iter().map(Submodule::dim).collect();
        let mut line = format!("p=7: lattice dims {dims:?}");
        for w in lat.iter().filter(|w| !w.is_full()).rev() {
            let d = module_cover(&m7, "klein", w)?;
            let what = if w.is_zero() { "zero cover".to_string() } else { format!("dim-{} cover", w.dim()) };
            line.push_str(&format!("; {what} genus {} {}", d.genus, d.chirality.as_str()));
            self.keep(&[d]);
        }
        computed.push(line);

        expected.push("p=3: lattice dims [0, 6]; zero cover genus 1459".to_string());
        let m3 = HomologyModule::new(&base, 3)?;
        let dims: Vec<usize> = all_submodules(&m3)?.iter().map(Submodule::dim).collect();
        let zero = module_cover(&m3, "klein", &Submodule::zero(m3.field(), m3.dim()))?;
        computed.push(format!("p=3: lattice dims {dims:?}; zero cover genus {}", zero.genus));
        self.keep(&[zero]);

        for p in [5u64, 13] {
            expected.push(format!("p={p}: no chiral split"));
            let m = HomologyModule::new(&base, p)?;
            let n = chiral_splits(&m)?.len();
            computed.push(if n == 0 { format!("p={p}: no chiral split") } else { format!("p={p}: {n} chiral splits") });
        }

        let g = 3u32;
        expected.push(format!("p=11: chiral split genus {} chiral-certified", (g as u128 - 1) * 11u128.pow(g) + 1));
        let m11 = HomologyModule::new(&base, 11)?;
        match chiral_split(&m11)? {
            Some(sp) => {
                let d = module_cover(&m11, "klein", &sp.plus)?;
                computed.push(format!("p=11: chiral split genus {} {}", d.genus, d.chirality.as_str()));
                self.keep(&[d]);
            }
            None => computed.push("p=11: no chiral split".to_string()),
        }
        Ok(Outcome::new(expected.join("; "), computed.join("; ")))
    }

    fn ac11(&mut self) -> Result<Outcome> {
        let (p, g) = (3u128, 1u32);
        let formula = p.pow(2 * g) * (g as u128 - 1) + 1;
        let expected = format!("|G| = 20, base chiral yes; cover 180 darts, genus 1, formula {formula}, oracle chiral yes");
        let base = torus424();
        let mut d = macbeath_cover(&base, "torus424", 3)?;
        let h = self.explicit(&mut d)?;
        let computed = format!(
            "|G| = {}, base chiral {}; cover {} darts, genus {}, formula {}, oracle chiral {}",
            base.darts(),
            yes(base.is_chiral()),
            h.darts(),
            h.genus(),
            d.genus,
            yes(h.is_chiral())
        );
        self.keep(&[d]);
        Ok(Outcome::new(expected, computed))
    }

    fn ac12(&mut self) -> Result<Outcome> {
        let mut collected = std::mem::take(&mut self.collected);
        collected.sort_by(|a, b| (a.index, &a.base_label, a.p).cmp(&(b.index, &b.base_label, b.p)));
        let n = collected.len();

        // type preservation and the genus double entry
        let mut type_bad = 0;
        let mut genus_bad = 0;
        let mut oracle_bad = 0;
        let mut oracle_checked = 0;
        for d in collected.iter_mut() {
            if d.index <= ORACLE_INDEX_LIMIT {
                let h = self.explicit(d)?;
                oracle_checked += 1;
                if h.is_chiral() != d.chirality.is_chiral() {
                    oracle_bad += 1;
                }
            }
            let t_ok = d.hypermap_type == d.base.hypermap_type()
                && d.explicit.as_ref().is_none_or(|h| h.hypermap_type() == d.hypermap_type);
            if !t_ok {
                type_bad += 1;
            }
            let rh = genus_rh(d.hypermap_type, d.index)?;
            let closed_ok = closed_form_genus(d).is_none_or(|c| c == rh);
            let euler_ok = d.explicit.as_ref().is_none_or(|h| h.genus() as u128 == rh);
            if !(closed_ok && euler_ok && rh == d.genus) {
                genus_bad += 1;
            }
        }
        let status = |bad: usize, of: usize| if bad == 0 { "ok".to_string() } else { format!("FAILED ({bad} of {of})") };

        // extension associativity on random triples
        let mut rng = ChaCha8Rng::seed_from_u64(0x7072_6f70);
        let mut assoc_bad = 0;
        let mut assoc_checked = 0;
        // one context per distinct nonzero W among the collected chiral covers
        let mut sample: Vec<ExtensionContext> = Vec::new();
        let mut seen = BTreeSet::new();
        for d in collected.iter().filter(|d| d.chirality == Chirality::ChiralCertified) {
            if seen.insert((d.base_label.clone(), d.p)) {
                sample.push(extension_context(d)?);
            }
        }
        for (base, p) in [(r2_6(), 17u64), (torus424(), 3), (klein(), 2)] {
            let m = Arc::new(HomologyModule::new(&base, p)?);
            let w = Submodule::zero(m.field(), m.dim());
            sample.push(ExtensionContext::new(m, w)?);
        }
        for ctx in &sample {
            let rand_elt = |rng: &mut ChaCha8Rng| ExtensionElement {
                g: rng.random_range(0..ctx.group_order() as u32),
                v: (0..ctx.quotient_dim()).map(|_| rng.random_range(0..ctx.prime())).collect(),
            };
            for _ in 0..300 {
                let (a, b, c) = (rand_elt(&mut rng), rand_elt(&mut rng), rand_elt(&mut rng));
                let l = ctx.ext_mul(&ctx.ext_mul(&a, &b)?, &c)?;
                let r = ctx.ext_mul(&a, &ctx.ext_mul(&b, &c)?)?;
                assoc_checked += 1;
                if l != r {
                    assoc_bad += 1;
                }
            }
        }

        // tau is a homomorphism on N
        let mut tau_bad = 0;
        let mut tau_checked = 0;
        for (base, p) in [(r2_6(), 5u64), (klein(), 3)] {
            let m = HomologyModule::new(&base, p)?;
            let f = m.field();
            let k = m.schreier().generator_count();
            let random_n = |rng: &mut ChaCha8Rng| {
                (0..rng.random_range(1..4)).fold(Word::identity(), |acc, _| {
                    let s = m.schreier().generator_word(rng.random_range(0..k), m.table());
                    acc.mul(&if rng.random_bool(0.5) { s } else { s.inverse() })
                })
            };
            for _ in 0..100 {
                let (u, v) = (random_n(&mut rng), random_n(&mut rng));
                let (cu, cv, cuv) = (m.class_of(&u)?, m.class_of(&v)?, m.class_of(&u.mul(&v))?);
                let sum: Vec<u64> = cu.iter().zip(&cv).map(|(&a, &b)| f.add(a, b)).collect();
                tau_checked += 1;
                if sum != cuv {
                    tau_bad += 1;
                }
            }
        }

        // the splitting guarantee at primes p = 1 mod exponent(A)
        let mut split_parts = Vec::new();
        for (label, base, p) in [("r2_6", r2_6(), 17u64), ("r2_6", r2_6(), 41), ("klein", klein(), 337)] {
            let m = HomologyModule::new(&base, p)?;
            match chiral_split(&m)? {
                Some(sp) => {
                    let d = module_cover(&m, label, &sp.plus)?;
                    split_parts.push(format!("{label} p={p} genus {}", d.genus));
                }
                None => split_parts.push(format!("{label} p={p} none")),
            }
        }
        let split_expected = {
            let g2 = |p: u128| p * p + 1;
            let g3 = |p: u128| 2 * p.pow(3) + 1;
            format!("r2_6 p=17 genus {}, r2_6 p=41 genus {}, klein p=337 genus {}", g2(17), g2(41), g3(337))
        };

        let expected = format!(
            "type preservation ok; genus double entry ok; certificate/oracle agreement ok; associativity ok; \
             tau additivity ok; splitting guarantee {split_expected}"
        );
        let computed = format!(
            "type preservation {}; genus double entry {}; certificate/oracle agreement {}; associativity {}; \
             tau additivity {}; splitting guarantee {}",
            status(type_bad, n),
            status(genus_bad, n),
            status(oracle_bad, oracle_checked),
            status(assoc_bad, assoc_checked),
            status(tau_bad, tau_checked),
            split_parts.join(", ")
        );
        let note = format!(
            "{n} descriptors, {oracle_checked} with explicit forms of at most {ORACLE_INDEX_LIMIT} darts; \
             {assoc_checked} associativity triples; {tau_checked} tau pairs"
        );
        self.collected = collected;
        Ok(Outcome::new(expected, computed).note(note))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_record_round_trip() {
        let report = VerificationReport {
            checks: vec![
                CheckRecord {
                    id: "AC01".into(),
                    title: "demo".into(),
                    expected: "a".into(),
                    computed: "a".into(),
                    note: String::new(),
                    pass: true,
                    runtime_ms: 3,
                    limit_ms: Some(1000),
                },
                CheckRecord {
                    id: "AC02".into(),
                    title: "other".into(),
                    expected: "a".into(),
                    computed: "b".into(),
                    note: "n".into(),
                    pass: false,
                    runtime_ms: 4,
                    limit_ms: None,
                },
            ],
        };
        let text = report.to_record().emit();
        let back = VerificationReport::parse(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_record().emit(), text);
        let table = report.render_table();
        assert!(table.contains("AC02  FAIL"));
        assert!(table.contains("1 of 2 checks passed"));
    }

    #[test]
    fn uniform_values() {
        assert_eq!(uniform(&["a".into(), "a".into()]), "a");
        assert_eq!(uniform(&["b".into(), "a".into()]), "a | b");
    }
}
