//! The `cencli` command set. [`run`] does all the work and returns the text
//! for standard output with the exit status, so the binary is a thin shell
//! and the commands are testable in-process.
//!
//! Exit status: 0 success, 1 verification failures, 2 usage or input
//! errors (reported as an `error` record on standard output).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::record::{
    cover_record, error_record, hypermap_record, module_record, parse_cover, parse_error_record, parse_hypermap,
    parse_module, parse_record, parse_submodule, parse_type, submodule_record, Entry, Record,
};
use super::verify::{verify_paper, VerificationReport};
use crate::covers::{explicit_form, macbeath_cover, mirror_cover, module_cover, CoverDescriptor};
use crate::error::{Error, Result};
use crate::fpgroup::{parse_word, triangle_presentation};
use crate::homrep::HomologyModule;
use crate::hypermap::{builtin, monodromy_search, Perm, RegularHypermap, BUILTIN_NAMES};
use crate::modec::{all_submodules, chiral_splits, meataxe_decompose, mirror_invariant_submodules, nilpotent_filtration};
use crate::par::{self, Exec};

/// Default bound on the darts of a hypermap built from generator images.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

#[derive(Parser, Debug)]
#[command(name = "cencli", version, about = "Regular hypermaps, their mod-p homology modules and the covers they define")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a base hypermap from generator images or by search.
    BuildBase(BuildBase),
    /// Emit the homology module of a base at one or more primes.
    Homology(Homology),
    /// Decompose a module, list its submodule lattice or a filtration.
    Decompose(Decompose),
    /// Construct cover descriptors.
    Cover(CoverArgs),
    /// Materialize a descriptor as explicit permutations.
    Explicit(Explicit),
    /// Run the acceptance matrix.
    VerifyPaper(VerifyPaper),
}

#[derive(Args, Debug)]
struct BuildBase {
    /// The type L,M,N.
    #[arg(long = "type", value_name = "L,M,N")]
    ty: String,
    /// File with `degree N`, `x CYCLES`, `y CYCLES` and optional `relator WORD` lines.
    #[arg(long, value_name = "FILE", conflicts_with = "search", required_unless_present = "search")]
    images: Option<PathBuf>,
    /// Search transitive pairs of small degree for the smallest quotient.
    #[arg(long)]
    search: bool,
    #[arg(long, value_name = "D", default_value_t = 8, requires = "search")]
    max_degree: usize,
    /// Upper bound on the darts of the result.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CLOSURE_CAP)]
    max_darts: usize,
}

#[derive(Args, Debug)]
#[group(id = "primes_group", required = true, multiple = false, args = ["prime", "primes"])]
struct PrimeArgs {
    #[arg(long, value_name = "P")]
    prime: Option<u64>,
    /// Comma-separated prime list; one job per prime.
    #[arg(long, value_name = "P,Q,...")]
    primes: Option<String>,
}

impl PrimeArgs {
    fn list(&self) -> Result<(Vec<u64>, bool)> {
        match (&self.prime, &self.primes) {
            (Some(p), _) => Ok((vec![*p], false)),
            (None, Some(list)) => {
                let ps: Result<Vec<u64>> = list
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::Usage(format!("'{s}' is not a prime"))))
                    .collect();
                let ps = ps?;
                if ps.is_empty() {
                    return Err(Error::Usage("empty prime list".into()));
                }
                Ok((ps, true))
            }
            (None, None) => Err(Error::Usage("one of --prime or --primes is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct Homology {
    /// A builtin name (r2_6, klein, torus424) or a hypermap record file.
    #[arg(long, value_name = "FILE")]
    base: String,
    #[command(flatten)]
    primes: PrimeArgs,
}

#[derive(Args, Debug)]
struct Decompose {
    /// A module record file (`-` for standard input).
    #[arg(long, value_name = "FILE")]
    module: PathBuf,
    /// The complete submodule lattice.
    #[arg(long, conflicts_with = "filtration")]
    all_submodules: bool,
    /// The images of (rho(WORD) - 1)^k.
    #[arg(long, value_name = "WORD")]
    filtration: Option<String>,
}

#[derive(Args, Debug)]
struct CoverArgs {
    #[arg(long, value_name = "FILE")]
    base: String,
    #[command(flatten)]
    primes: PrimeArgs,
    /// The characteristic subgroup N'N^p.
    #[arg(long, conflicts_with = "case2", required_unless_present = "case2")]
    case1: bool,
    /// The preimage of an invariant submodule.
    #[arg(long)]
    case2: bool,
    /// A file holding a submodule record (or records containing them).
    #[arg(long, value_name = "FILE", requires = "case2", conflicts_with = "auto_split")]
    submodule: Option<PathBuf>,
    /// Which submodule of the file to use, counting from 0.
    #[arg(long, value_name = "K", default_value_t = 0, requires = "submodule")]
    pick: usize,
    /// Every chiral split; the mirror-invariant genus-dimensional submodules if none exists.
    #[arg(long, requires = "case2")]
    auto_split: bool,
}

#[derive(Args, Debug)]
struct Explicit {
    /// A cover record, or a covers record together with --pick.
    #[arg(long, value_name = "FILE")]
    descriptor: PathBuf,
    #[arg(long, value_name = "K")]
    max_darts: usize,
    #[arg(long, value_name = "K", default_value_t = 0)]
    pick: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Record,
    Table,
}

#[derive(Args, Debug)]
struct VerifyPaper {
    /// `record` for the round-trippable report, `table` for humans.
    #[arg(long, value_enum, default_value_t = Format::Record)]
    format: Format,
}

/// Standard output text and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Output { stdout: e.to_string(), code: 0 };
            }
            let text = e.to_string();
            let msg: Vec<&str> =
                text.lines().map(str::trim).take_while(|l| !l.starts_with("Usage:")).filter(|l| !l.is_empty()).collect();
            let msg = msg.join(" ").trim_start_matches("error: ").to_string();
            return fail(&Error::Usage(msg));
        }
    };
    let result = match cli.command {
        Command::BuildBase(a) => build_base(&a).map(ok),
        Command::Homology(a) => homology(&a).map(ok),
        Command::Decompose(a) => decompose(&a).map(ok),
        Command::Cover(a) => cover(&a).map(ok),
        Command::Explicit(a) => explicit(&a).map(ok),
        Command::VerifyPaper(a) => Ok(verify(&a)),
    };
    result.unwrap_or_else(|e| fail(&e))
}

fn ok(r: Record) -> Output {
    Output { stdout: r.emit(), code: 0 }
}

fn fail(e: &Error) -> Output {
    Output { stdout: error_record(e).emit(), code: 2 }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Io(format!("standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A builtin name, or a hypermap record file labelled by its file stem.
pub fn resolve_base(spec: &str) -> Result<(String, RegularHypermap)> {
    if BUILTIN_NAMES.contains(&spec) {
        return Ok((spec.to_string(), builtin(spec)?));
    }
    let path = Path::new(spec);
    if spec != "-" && !path.exists() {
        return Err(Error::Usage(format!("base '{spec}' is neither a builtin ({}) nor an existing file", BUILTIN_NAMES.join(", "))));
    }
    let h = parse_hypermap(&parse_record(&read_input(path)?)?)?;
    let label = path.file_stem().map_or_else(|| "stdin".to_string(), |s| s.to_string_lossy().into_owned());
    Ok((label, h))
}

/// Parse a generator-images file.
///
/// ```text
/// # comment
/// degree 5
/// x (1,2,4,3)
/// y (1,5)(2,4)
/// relator [x,y]^2
/// ```
pub fn parse_images(text: &str) -> Result<(Perm, Perm, Vec<String>)> {
    let mut degree = None;
    let (mut x, mut y, mut relators) = (None, None, Vec::new());
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let value = value.trim();
        let at = |e: Error| Error::Record(format!("images line {}: {e}", i + 1));
        match key {
            "degree" => degree = Some(value.parse::<usize>().map_err(|_| Error::Record(format!("images line {}: bad degree", i + 1)))?),
            "x" | "y" => {
                let n = degree.ok_or_else(|| Error::Record("images: 'degree' must come before the permutations".into()))?;
                let p = Perm::parse_cycles(n, value).map_err(at)?;
                if key == "x" {
                    x = Some(p);
                } else {
                    y = Some(p);
                }
            }
            "relator" => relators.push(value.to_string()),
            _ => return Err(Error::Record(format!("images line {}: unknown key '{key}'", i + 1))),
        }
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok((x, y, relators)),
        _ => Err(Error::Record("images file needs both 'x' and 'y'".into())),
    }
}

fn build_base(a: &BuildBase) -> Result<Record> {
    let t = parse_type(&a.ty).map_err(|e| Error::Usage(e.to_string()))?;
    let h = match &a.images {
        Some(path) => {
            let (x, y, relators) = parse_images(&read_input(path)?)?;
            let mut pres = triangle_presentation(t.l, t.m, t.n);
            for r in &relators {
                pres = pres.with_relator_text(r)?;
            }
            RegularHypermap::from_images(&pres, &[x, y], a.max_darts)?
        }
        None => {
            let h = monodromy_search(t.l, t.m, t.n, a.max_degree)?;
            if h.darts() > a.max_darts {
                return Err(Error::TooLarge("hypermap dart count".into(), a.max_darts as u128));
            }
            h
        }
    };
    Ok(hypermap_record(&h, None))
}

/// Run one job per prime (in parallel); a single `--prime` emits the job's
/// record directly, a `--primes` list wraps them in a sweep record.
fn sweep<F>(primes: &PrimeArgs, job: F) -> Result<Record>
where
    F: Fn(u64) -> Result<Record> + Sync,
{
    let (ps, wrap) = primes.list()?;
    let mut results = par::map_slice(Exec::default(), &ps, |&p| job(p));
    if !wrap {
        return results.pop().unwrap();
    }
    let mut r = Record::new("sweep");
    r.field("primes", ps.iter().map(u64::to_string).collect::<Vec<_>>().join(",")).field("count", ps.len());
    for res in results {
        r.child(res?);
    }
    Ok(r)
}

fn homology(a: &Homology) -> Result<Record> {
    let (label, base) = resolve_base(&a.base)?;
    sweep(&a.primes, |p| Ok(module_record(&label, &HomologyModule::new(&base, p)?)))
}

fn decompose(a: &Decompose) -> Result<Record> {
    let (label, m) = parse_module(&parse_record(&read_input(&a.module)?)?)?;
    let (kind, role, subs, extra): (&str, &str, Vec<_>, Vec<(&str, String)>) = if a.all_submodules {
        ("lattice", "member", all_submodules(&m)?, vec![])
    } else if let Some(word) = &a.filtration {
        let w = parse_word(word, &['x', 'y'])?;
        ("filtration", "step", nilpotent_filtration(&m, &w), vec![("word", w.to_string())])
    } else {
        let d = meataxe_decompose(&m);
        let cert = match d.certificate {
            crate::modec::Certificate::Lattice => "lattice",
            crate::modec::Certificate::Norton => "norton",
        };
        let mut subs = d.summands.clone();
        let n_summands = subs.len();
        subs.extend(d.proper_submodules.iter().cloned());
        let mut r = Record::new("decomposition");
        r.field("base_label", &label)
            .field("prime", m.prime())
            .field("dim", m.dim())
            .field("status", d.status.as_str())
            .field("certificate", cert)
            .field("count", subs.len());
        for (i, w) in subs.iter().enumerate() {
            r.child(submodule_record(w, Some(if i < n_summands { "summand" } else { "proper" })));
        }
        return Ok(r);
    };
    let mut r = Record::new(kind);
    r.field("base_label", &label).field("prime", m.prime()).field("dim", m.dim());
    for (k, v) in extra {
        r.field(k, v);
    }
    r.field("count", subs.len());
    for w in &subs {
        r.child(submodule_record(w, Some(role)));
    }
    Ok(r)
}

/// Every submodule record in a file, depth first.
fn submodules_in(r: &Record, out: &mut Vec<Record>) {
    if r.kind == "submodule" {
        out.push(r.clone());
    } else {
        for c in r.children() {
            submodules_in(c, out);
        }
    }
}

fn covers_record(label: &str, p: u64, mode: &str, outcome: &str, ds: &[(CoverDescriptor, &str)]) -> Record {
    let mut r = Record::new("covers");
    r.field("base_label", label).field("prime", p).field("mode", mode).field("outcome", outcome).field("count", ds.len());
    for (d, role) in ds {
        r.child(cover_record(d, Some(role)));
    }
    r
}

fn cover(a: &CoverArgs) -> Result<Record> {
    let (label, base) = resolve_base(&a.base)?;
    let chosen = match &a.submodule {
        Some(path) => {
            let mut subs = Vec::new();
            for r in super::record::parse_records(&read_input(path)?)? {
                submodules_in(&r, &mut subs);
            }
            let r = subs.get(a.pick).ok_or_else(|| Error::Usage(format!("no submodule number {} in the file", a.pick)))?;
            Some(parse_submodule(r)?)
        }
        None => None,
    };
    if a.case2 && chosen.is_none() && !a.auto_split {
        return Err(Error::Usage("--case2 needs --submodule FILE or --auto-split".into()));
    }
    sweep(&a.primes, |p| {
        if a.case1 {
            let d = macbeath_cover(&base, &label, p)?;
            return Ok(covers_record(&label, p, "case1", "constructed", &[(d, "case1")]));
        }
        let m = HomologyModule::new(&base, p)?;
        if let Some(w) = &chosen {
            if w.field() != m.field() {
                return Err(Error::Precondition(format!("the submodule is over F_{}, not F_{p}", w.field().modulus())));
            }
            let d = module_cover(&m, &label, w)?;
            return Ok(covers_record(&label, p, "submodule", "constructed", &[(d, "given")]));
        }
        let splits = chiral_splits(&m)?;
        if !splits.is_empty() {
            let mut ds = Vec::new();
            for sp in &splits {
                let d = module_cover(&m, &label, &sp.plus)?;
                let md = mirror_cover(&d)?;
                ds.push((d, "plus"));
                ds.push((md, "minus"));
            }
            return Ok(covers_record(&label, p, "auto-split", "chiral-split", &ds));
        }
        let ws = mirror_invariant_submodules(&m, base.genus() as usize)?;
        let ds: Vec<(CoverDescriptor, &str)> =
            ws.iter().map(|w| module_cover(&m, &label, w).map(|d| (d, "invariant"))).collect::<Result<_>>()?;
        let outcome = if ds.is_empty() { "none" } else { "mirror-invariant-fallback" };
        Ok(covers_record(&label, p, "auto-split", outcome, &ds))
    })
}

fn explicit(a: &Explicit) -> Result<Record> {
    let top = parse_record(&read_input(&a.descriptor)?)?;
    let rec = if top.kind == "cover" {
        top
    } else {
        fn covers_in(r: &Record, out: &mut Vec<Record>) {
            if r.kind == "cover" {
                out.push(r.clone());
            } else {
                r.children().for_each(|c| covers_in(c, out));
            }
        }
        let mut all = Vec::new();
        covers_in(&top, &mut all);
        all.into_iter().nth(a.pick).ok_or_else(|| Error::Usage(format!("no cover number {} in the file", a.pick)))?
    };
    let mut d = parse_cover(&rec)?;
    d.explicit = Some(explicit_form(&d, a.max_darts)?);
    Ok(cover_record(&d, rec.role.as_deref()))
}

fn verify(a: &VerifyPaper) -> Output {
    let report = verify_paper();
    let code = if report.all_pass() { 0 } else { 1 };
    let stdout = match a.format {
        Format::Record => report.to_record().emit(),
        Format::Table => report.render_table(),
    };
    Output { stdout, code }
}

const CONTAINERS: [&str; 6] = ["sweep", "covers", "lattice", "filtration", "decomposition", "report"];

/// Parse any CLI output and emit it again. Leaf records go through their
/// typed parsers, so this both validates and canonicalizes.
pub fn reemit(text: &str) -> Result<String> {
    Ok(reemit_record(&parse_record(text)?)?.emit())
}

fn reemit_record(r: &Record) -> Result<Record> {
    let role = r.role.as_deref();
    match r.kind.as_str() {
        "hypermap" => Ok(hypermap_record(&parse_hypermap(r)?, role)),
        "module" => {
            let (label, m) = parse_module(r)?;
            Ok(module_record(&label, &m))
        }
        "submodule" => Ok(submodule_record(&parse_submodule(r)?, role)),
        "cover" => Ok(cover_record(&parse_cover(r)?, role)),
        "error" => {
            let (kind, message) = parse_error_record(r)?;
            let mut out = Record::new("error");
            out.field("kind", kind).field("message", message);
            Ok(out)
        }
        "report" => Ok(VerificationReport::from_record(r)?.to_record()),
        k if CONTAINERS.contains(&k) => {
            let mut out = Record::new(k).with_role(role);
            for e in &r.entries {
                out.entries.push(match e {
                    Entry::Child(c) => Entry::Child(reemit_record(c)?),
                    other => other.clone(),
                });
            }
            if let Some(n) = r.get_opt("count") {
                let stated: usize = n.parse().map_err(|_| Error::Record(format!("bad count '{n}'")))?;
                if stated != r.children().count() {
                    return Err(Error::Record(format!("{k} record states {stated} children but has {}", r.children().count())));
                }
            }
            Ok(out)
        }
        k => Err(Error::Record(format!("unknown record kind '{k}'"))),
    }
}
