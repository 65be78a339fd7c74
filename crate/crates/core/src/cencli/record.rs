//! The self-describing text serialization shared by every CLI output.
//!
//! ```text
//! record <kind>[ <role>]
//! <key> <value>
//! matrix <name> <rows> <cols>
//! <row of space-separated residues>
//! record <child kind>[ <role>]
//! ...
//! end
//! end
//! ```
//!
//! Values run to the end of the line. Blank lines and lines starting with
//! `#` are ignored by the parser and never emitted. The typed helpers below
//! recompute every derived field while parsing, so a parsed record is
//! checked against the library rather than trusted.

use std::fmt::Write as _;

use crate::covers::{macbeath_cover, module_cover, Chirality, CoverCase, CoverDescriptor};
use crate::error::{Error, Result};
use crate::fpalg::{FpMatrix, PrimeField};
use crate::fpgroup::TriangleType;
use crate::homrep::HomologyModule;
use crate::hypermap::{Perm, RegularHypermap};
use crate::modec::Submodule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Field(String, String),
    Matrix { name: String, cols: usize, rows: Vec<Vec<u64>> },
    Child(Record),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub role: Option<String>,
    pub entries: Vec<Entry>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Record(msg.into())
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record { kind: kind.to_string(), role: None, entries: Vec::new() }
    }

    pub fn with_role(mut self, role: Option<&str>) -> Self {
        self.role = role.map(str::to_string);
        self
    }

    /// Append a field; newlines in the value are flattened to spaces.
    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let v = value.to_string().replace(['\n', '\r'], " ");
        self.entries.push(Entry::Field(key.to_string(), v));
        self
    }

    pub fn matrix(&mut self, name: &str, m: &FpMatrix) -> &mut Self {
        self.entries.push(Entry::Matrix { name: name.to_string(), cols: m.cols(), rows: m.row_vecs() });
        self
    }

    pub fn child(&mut self, r: Record) -> &mut Self {
        self.entries.push(Entry::Child(r));
        self
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.entries
            .iter()
            .find_map(|e| match e {
                Entry::Field(k, v) if k == key => Some(v.as_str()),
                _ => None,
            })
            .ok_or_else(|| bad(format!("{} record is missing field '{key}'", self.kind)))
    }

    pub fn get_opt(&self, key: &str) -> Option<&str> {
        self.get(key).ok()
    }

    pub fn parse_field<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| bad(format!("field '{key}' has malformed value '{v}'")))
    }

    pub fn get_matrix(&self, name: &str, field: PrimeField) -> Result<FpMatrix> {
        self.entries
            .iter()
            .find_map(|e| match e {
                Entry::Matrix { name: n, cols, rows } if n == name => Some((cols, rows)),
                _ => None,
            })
            .ok_or_else(|| bad(format!("{} record is missing matrix '{name}'", self.kind)))
            .and_then(|(cols, rows)| {
                if rows.iter().flatten().any(|&x| x >= field.modulus()) {
                    return Err(bad(format!("matrix '{name}' has entries outside 0..{}", field.modulus())));
                }
                FpMatrix::from_rows(field, *cols, rows)
            })
    }

    pub fn children(&self) -> impl Iterator<Item = &Record> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Child(r) => Some(r),
            _ => None,
        })
    }

    pub fn child_with_role(&self, kind: &str, role: &str) -> Option<&Record> {
        self.children().find(|r| r.kind == kind && r.role.as_deref() == Some(role))
    }

    pub fn expect_kind(&self, kind: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(bad(format!("expected a {kind} record, found {}", self.kind)))
        }
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        self.emit_into(&mut out);
        out
    }

    fn emit_into(&self, out: &mut String) {
        match &self.role {
            Some(role) => writeln!(out, "record {} {role}", self.kind).unwrap(),
            None => writeln!(out, "record {}", self.kind).unwrap(),
        }
        for e in &self.entries {
            match e {
                Entry::Field(k, v) => writeln!(out, "{k} {v}").unwrap(),
                Entry::Matrix { name, cols, rows } => {
                    writeln!(out, "matrix {name} {} {cols}", rows.len()).unwrap();
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                        writeln!(out, "{}", cells.join(" ")).unwrap();
                    }
                }
                Entry::Child(r) => r.emit_into(out),
            }
        }
        out.push_str("end\n");
    }
}

/// Parse a text holding exactly one top-level record.
pub fn parse_record(text: &str) -> Result<Record> {
    let mut all = parse_records(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(bad(format!("expected one top-level record, found {n}"))),
    }
}

/// Parse every top-level record of a text.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .collect();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < lines.len() {
        out.push(parse_one(&lines, &mut pos)?);
    }
    Ok(out)
}

fn parse_one(lines: &[(usize, &str)], pos: &mut usize) -> Result<Record> {
    let (ln, header) = lines[*pos];
    let rest = header.strip_prefix("record ").ok_or_else(|| bad(format!("line {ln}: expected 'record <kind>'")))?;
    let mut parts = rest.splitn(2, ' ');
    let kind = parts.next().filter(|k| !k.is_empty()).ok_or_else(|| bad(format!("line {ln}: empty record kind")))?;
    let mut rec = Record::new(kind).with_role(parts.next());
    *pos += 1;
    loop {
        let Some(&(ln, line)) = lines.get(*pos) else {
            return Err(bad(format!("record {kind} is not closed by 'end'")));
        };
        if line == "end" {
            *pos += 1;
            return Ok(rec);
        }
        if line.starts_with("record ") {
            let child = parse_one(lines, pos)?;
            rec.entries.push(Entry::Child(child));
            continue;
        }
        if let Some(spec) = line.strip_prefix("matrix ") {
            let f: Vec<&str> = spec.split(' ').collect();
            let dims = (f.len() == 3).then(|| (f[1].parse::<usize>(), f[2].parse::<usize>()));
            let Some((Ok(nrows), Ok(cols))) = dims else {
                return Err(bad(format!("line {ln}: expected 'matrix <name> <rows> <cols>'")));
            };
            *pos += 1;
            let mut rows = Vec::with_capacity(nrows);
            for _ in 0..nrows {
                let Some(&(rl, row)) = lines.get(*pos) else {
                    return Err(bad(format!("matrix {} ends early", f[0])));
                };
                let cells: std::result::Result<Vec<u64>, _> = row.split(' ').map(str::parse).collect();
                match cells {
                    Ok(c) if c.len() == cols => rows.push(c),
                    _ => return Err(bad(format!("line {rl}: expected {cols} residues"))),
                }
                *pos += 1;
            }
            rec.entries.push(Entry::Matrix { name: f[0].to_string(), cols, rows });
            continue;
        }
        let (k, v) = line.split_once(' ').unwrap_or((line, ""));
        if k.is_empty() {
            return Err(bad(format!("line {ln}: empty field name")));
        }
        rec.entries.push(Entry::Field(k.to_string(), v.to_string()));
        *pos += 1;
    }
}

pub fn format_type(t: TriangleType) -> String {
    format!("{},{},{}", t.l, t.m, t.n)
}

pub fn parse_type(s: &str) -> Result<TriangleType> {
    let v: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Option<Vec<u32>> = v.iter().map(|x| x.parse().ok().filter(|&n: &u32| n >= 1)).collect();
    match nums.as_deref() {
        Some(&[l, m, n]) if v.len() == 3 => Ok(TriangleType::new(l, m, n)),
        _ => Err(bad(format!("'{s}' is not a type L,M,N of positive integers"))),
    }
}

fn parse_bool(r: &Record, key: &str) -> Result<bool> {
    match r.get(key)? {
        "true" => Ok(true),
        "false" => Ok(false),
        v => Err(bad(format!("field '{key}' must be true or false, got '{v}'"))),
    }
}

fn check_eq<T: PartialEq + std::fmt::Display>(kind: &str, key: &str, stated: T, computed: T) -> Result<()> {
    if stated == computed {
        Ok(())
    } else {
        Err(bad(format!("{kind} field '{key}' states {stated} but recomputation gives {computed}")))
    }
}

// ---------------------------------------------------------------- hypermap

pub fn hypermap_record(h: &RegularHypermap, role: Option<&str>) -> Record {
    let mut r = Record::new("hypermap").with_role(role);
    let (v, e, f) = h.euler_counts();
    r.field("darts", h.darts())
        .field("declared", format_type(h.declared_type()))
        .field("type", format_type(h.hypermap_type()))
        .field("counts", format!("{v},{e},{f}"))
        .field("genus", h.genus())
        .field("chiral", h.is_chiral())
        .field("self_dual", h.is_self_dual())
        .field("px", h.px().to_cycle_string())
        .field("py", h.py().to_cycle_string());
    r
}

pub fn parse_hypermap(r: &Record) -> Result<RegularHypermap> {
    r.expect_kind("hypermap")?;
    let n: usize = r.parse_field("darts")?;
    if n == 0 {
        return Err(bad("a hypermap needs at least one dart"));
    }
    let px = Perm::parse_cycles(n, r.get("px")?)?;
    let py = Perm::parse_cycles(n, r.get("py")?)?;
    let h = RegularHypermap::from_perms(px, py)?;
    let declared = parse_type(r.get("declared")?)?;
    let t = h.hypermap_type();
    if declared.l % t.l != 0 || declared.m % t.m != 0 || declared.n % t.n != 0 {
        return Err(bad(format!("declared type {} is not a multiple of the orders {}", format_type(declared), format_type(t))));
    }
    let h = h.with_declared(declared);
    let (v, e, f) = h.euler_counts();
    check_eq("hypermap", "type", r.get("type")?, &format_type(t))?;
    check_eq("hypermap", "counts", r.get("counts")?, &format!("{v},{e},{f}"))?;
    check_eq("hypermap", "genus", r.parse_field::<u64>("genus")?, h.genus())?;
    check_eq("hypermap", "chiral", parse_bool(r, "chiral")?, h.is_chiral())?;
    check_eq("hypermap", "self_dual", parse_bool(r, "self_dual")?, h.is_self_dual())?;
    Ok(h)
}

// ---------------------------------------------------------------- module

pub fn module_record(label: &str, m: &HomologyModule) -> Record {
    let mut r = Record::new("module");
    r.field("base_label", label)
        .field("prime", m.prime())
        .field("dim", m.dim())
        .field("genus", m.base().genus())
        .field("reflexible", m.is_reflexible())
        .matrix("rho_x", m.rho_x())
        .matrix("rho_y", m.rho_y());
    if let Ok(s) = m.mirror_matrix() {
        r.matrix("mirror", &s.matrix);
    }
    r.child(hypermap_record(m.base(), Some("base")));
    r
}

/// The base label and the recomputed module; the stated matrices must
/// agree with the recomputation.
pub fn parse_module(r: &Record) -> Result<(String, HomologyModule)> {
    r.expect_kind("module")?;
    let label = r.get("base_label")?.to_string();
    let p: u64 = r.parse_field("prime")?;
    let base_rec = r.child_with_role("hypermap", "base").ok_or_else(|| bad("module record has no base hypermap"))?;
    let base = parse_hypermap(base_rec)?;
    let m = HomologyModule::new(&base, p)?;
    check_eq("module", "dim", r.parse_field::<usize>("dim")?, m.dim())?;
    check_eq("module", "genus", r.parse_field::<u64>("genus")?, base.genus())?;
    check_eq("module", "reflexible", parse_bool(r, "reflexible")?, m.is_reflexible())?;
    let f = m.field();
    if r.get_matrix("rho_x", f)? != *m.rho_x() || r.get_matrix("rho_y", f)? != *m.rho_y() {
        return Err(bad("module matrices differ from the recomputed action"));
    }
    match m.mirror_matrix() {
        Ok(s) if r.get_matrix("mirror", f)? != s.matrix => return Err(bad("mirror matrix differs from the recomputation")),
        Err(_) if r.get_matrix("mirror", f).is_ok() => return Err(bad("record has a mirror matrix but the base is chiral")),
        _ => {}
    }
    Ok((label, m))
}

// ---------------------------------------------------------------- submodule

pub fn submodule_record(w: &Submodule, role: Option<&str>) -> Record {
    let mut r = Record::new("submodule").with_role(role);
    r.field("prime", w.field().modulus()).field("ambient", w.ambient_dim()).field("dim", w.dim()).matrix("basis", w.basis());
    r
}

pub fn parse_submodule(r: &Record) -> Result<Submodule> {
    r.expect_kind("submodule")?;
    let field = PrimeField::new(r.parse_field("prime")?)?;
    let ambient: usize = r.parse_field("ambient")?;
    let basis = r.get_matrix("basis", field)?;
    if basis.cols() != ambient {
        return Err(bad(format!("basis has {} columns but the ambient dimension is {ambient}", basis.cols())));
    }
    let w = Submodule::span(field, ambient, &basis.row_vecs())?;
    check_eq("submodule", "dim", r.parse_field::<usize>("dim")?, w.dim())?;
    Ok(w)
}

// ---------------------------------------------------------------- cover

pub fn cover_record(d: &CoverDescriptor, role: Option<&str>) -> Record {
    let mut r = Record::new("cover").with_role(role);
    r.field("base_label", &d.base_label)
        .field("prime", d.p)
        .field("case", d.case.number())
        .field("index", d.index)
        .field("type", format_type(d.hypermap_type))
        .field("genus", d.genus)
        .field("chirality", d.chirality.as_str())
        .child(hypermap_record(&d.base, Some("base")))
        .child(submodule_record(&d.w, Some("w")));
    if let Some(h) = &d.explicit {
        r.child(hypermap_record(h, Some("explicit")));
    }
    r
}

/// Rebuild a descriptor from its base and submodule, checking every
/// stated field against the reconstruction.
pub fn parse_cover(r: &Record) -> Result<CoverDescriptor> {
    r.expect_kind("cover")?;
    let label = r.get("base_label")?;
    let p: u64 = r.parse_field("prime")?;
    let base = parse_hypermap(r.child_with_role("hypermap", "base").ok_or_else(|| bad("cover record has no base hypermap"))?)?;
    let w = parse_submodule(r.child_with_role("submodule", "w").ok_or_else(|| bad("cover record has no submodule w"))?)?;
    let mut d = match r.get("case")? {
        "1" => macbeath_cover(&base, label, p)?,
        "2" => module_cover(&HomologyModule::new(&base, p)?, label, &w)?,
        c => return Err(bad(format!("unknown cover case '{c}'"))),
    };
    if d.case == CoverCase::Macbeath && !w.is_zero() {
        return Err(bad("case-1 covers have the zero submodule"));
    }
    check_eq("cover", "index", r.parse_field::<u128>("index")?, d.index)?;
    check_eq("cover", "type", r.get("type")?, &format_type(d.hypermap_type))?;
    check_eq("cover", "genus", r.parse_field::<u128>("genus")?, d.genus)?;
    let stated = Chirality::parse(r.get("chirality")?).ok_or_else(|| bad("unknown chirality"))?;
    check_eq("cover", "chirality", stated.as_str(), d.chirality.as_str())?;
    if let Some(e) = r.child_with_role("hypermap", "explicit") {
        let h = parse_hypermap(e)?;
        if h.darts() as u128 != d.index || h.hypermap_type() != d.hypermap_type {
            return Err(bad("explicit hypermap does not match the descriptor's index and type"));
        }
        d.explicit = Some(h);
    }
    Ok(d)
}

// ---------------------------------------------------------------- error

pub fn error_record(e: &Error) -> Record {
    let mut r = Record::new("error");
    r.field("kind", e.kind()).field("message", e);
    r
}

/// `(kind, message)` of an error record.
pub fn parse_error_record(r: &Record) -> Result<(String, String)> {
    r.expect_kind("error")?;
    Ok((r.get("kind")?.to_string(), r.get("message")?.to_string()))
}
