//! Command-line behaviour: outputs, exit codes, error records and the
//! emit -> parse -> emit round trip of every output kind.

use std::path::PathBuf;

use hypercover::cencli::cli::{reemit, run, Output};
use hypercover::cencli::{parse_record, Record};

fn cli(args: &[&str]) -> Output {
    run(std::iter::once("cencli").chain(args.iter().copied()))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cencli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

/// Successful output that survives emit -> parse -> emit unchanged.
fn ok_round_trip(args: &[&str]) -> Record {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?} failed:\n{}", out.stdout);
    assert_eq!(reemit(&out.stdout).unwrap(), out.stdout, "{args:?} does not round-trip");
    parse_record(&out.stdout).unwrap()
}

fn error_kind(out: &Output) -> String {
    assert_eq!(out.code, 2, "expected an input error, got:\n{}", out.stdout);
    let r = parse_record(&out.stdout).unwrap();
    assert_eq!(reemit(&out.stdout).unwrap(), out.stdout);
    assert_eq!(r.kind, "error");
    r.get("kind").unwrap().to_string()
}

fn covers(r: &Record) -> Vec<&Record> {
    r.children().filter(|c| c.kind == "cover").collect()
}

#[test]
fn build_base_by_search() {
    let r = ok_round_trip(&["build-base", "--type", "8,2,8", "--search", "--max-degree", "8"]);
    assert_eq!(r.kind, "hypermap");
    for (k, v) in [("darts", "8"), ("counts", "1,4,1"), ("genus", "2"), ("chiral", "false"), ("self_dual", "true")] {
        assert_eq!(r.get(k).unwrap(), v, "field {k}");
    }
}

#[test]
fn build_base_from_images() {
    // the affine maps t -> 2t and t -> 1 - t of Z5 on the points 1..5
    let images = scratch("torus.txt", "# chiral torus map\ndegree 5\nx (2,3,5,4)\ny (1,2)(3,5)\n");
    let r = ok_round_trip(&["build-base", "--type", "4,2,4", "--images", images.to_str().unwrap()]);
    assert_eq!((r.get("darts").unwrap(), r.get("genus").unwrap(), r.get("chiral").unwrap()), ("20", "1", "true"));

    let klein = scratch("klein.txt", "degree 7\nx (1,2)(3,4)\ny (2,5,3)(4,6,7)\nrelator [x,y]^4\n");
    let r = ok_round_trip(&["build-base", "--type", "2,3,7", "--images", klein.to_str().unwrap()]);
    for (k, v) in [("darts", "168"), ("counts", "84,56,24"), ("genus", "3"), ("chiral", "false")] {
        assert_eq!(r.get(k).unwrap(), v, "field {k}");
    }

    let bad = scratch("bad.txt", "degree 4\nx (1,2,3,4)\ny (1,2)\n");
    assert_eq!(error_kind(&cli(&["build-base", "--type", "4,2,4", "--images", bad.to_str().unwrap()])), "relator-violated");
    let split = scratch("split.txt", "degree 4\nx (1,2)\ny (3,4)\n");
    assert_eq!(error_kind(&cli(&["build-base", "--type", "2,2,2", "--images", split.to_str().unwrap()])), "intransitive");
    let garbled = scratch("garbled.txt", "degree 4\nx (1,2\n");
    assert_eq!(error_kind(&cli(&["build-base", "--type", "2,2,2", "--images", garbled.to_str().unwrap()])), "record");
}

#[test]
fn homology_records_and_sweeps() {
    let r = ok_round_trip(&["homology", "--base", "r2_6", "--prime", "17"]);
    assert_eq!((r.get("dim").unwrap(), r.get("reflexible").unwrap()), ("4", "true"));
    let s = ok_round_trip(&["homology", "--base", "klein", "--primes", "2,3,7"]);
    assert_eq!(s.kind, "sweep");
    let primes: Vec<&str> = s.children().map(|c| c.get("prime").unwrap()).collect();
    assert_eq!(primes, ["2", "3", "7"]);
    assert!(s.children().all(|c| c.get("dim").unwrap() == "6"));
    let t = ok_round_trip(&["homology", "--base", "torus424", "--prime", "3"]);
    assert_eq!(t.get("reflexible").unwrap(), "false");
}

#[test]
fn base_from_a_record_file() {
    let out = cli(&["build-base", "--type", "8,2,8", "--search"]);
    let base = scratch("genus2.txt", &out.stdout);
    let r = ok_round_trip(&["homology", "--base", base.to_str().unwrap(), "--prime", "5"]);
    assert_eq!(r.get("base_label").unwrap(), "genus2");
    let c = ok_round_trip(&["cover", "--base", base.to_str().unwrap(), "--prime", "5", "--case2", "--auto-split"]);
    assert!(covers(&c).iter().all(|d| d.get("genus").unwrap() == "26"));
}

#[test]
fn decompose_outputs() {
    let module = cli(&["homology", "--base", "r2_6", "--prime", "17"]).stdout;
    let path = scratch("m17.txt", &module);
    let p = path.to_str().unwrap();
    let d = ok_round_trip(&["decompose", "--module", p]);
    assert_eq!((d.kind.as_str(), d.get("status").unwrap(), d.get("count").unwrap()), ("decomposition", "complete", "4"));
    let l = ok_round_trip(&["decompose", "--module", p, "--all-submodules"]);
    assert_eq!(l.get("count").unwrap(), "16");

    let m2 = scratch("m2.txt", &cli(&["homology", "--base", "r2_6", "--prime", "2"]).stdout);
    let f = ok_round_trip(&["decompose", "--module", m2.to_str().unwrap(), "--filtration", "x"]);
    let dims: Vec<&str> = f.children().map(|c| c.get("dim").unwrap()).collect();
    assert_eq!(dims, ["4", "3", "2", "1", "0"]);
    assert_eq!(error_kind(&cli(&["decompose", "--module", m2.to_str().unwrap(), "--filtration", "x*q"])), "parse");

    let tampered = scratch("tampered.txt", &module.replacen("prime 17", "prime 13", 1));
    assert_eq!(error_kind(&cli(&["decompose", "--module", tampered.to_str().unwrap()])), "record");
}

#[test]
fn cover_examples() {
    // Klein at p = 2: one chiral pair of genus 17
    let k = ok_round_trip(&["cover", "--base", "klein", "--prime", "2", "--case2", "--auto-split"]);
    assert_eq!(k.get("outcome").unwrap(), "chiral-split");
    let ds = covers(&k);
    assert_eq!(ds.len(), 2);
    for d in &ds {
        assert_eq!((d.get("genus").unwrap(), d.get("chirality").unwrap()), ("17", "chiral-certified"));
    }

    // genus-two base at p = 7: no chiral split, two regular covers of genus 50
    let r = ok_round_trip(&["cover", "--base", "r2_6", "--prime", "7", "--case2", "--auto-split"]);
    assert_eq!(r.get("outcome").unwrap(), "mirror-invariant-fallback");
    let ds = covers(&r);
    assert_eq!(ds.len(), 2);
    for d in &ds {
        assert_eq!((d.get("genus").unwrap(), d.get("chirality").unwrap()), ("50", "regular-certified"));
    }

    let c1 = ok_round_trip(&["cover", "--base", "torus424", "--prime", "3", "--case1"]);
    let d = covers(&c1)[0];
    assert_eq!((d.get("index").unwrap(), d.get("genus").unwrap(), d.get("chirality").unwrap()), ("180", "1", "inherited-chiral"));

    let sweep = ok_round_trip(&["cover", "--base", "r2_6", "--primes", "3,5,11,13", "--case2", "--auto-split"]);
    let genera: Vec<&str> = sweep.children().map(|c| covers(c)[0].get("genus").unwrap()).collect();
    assert_eq!(genera, ["10", "26", "122", "170"]);
}

#[test]
fn cover_from_a_submodule_file() {
    let m = scratch("m17b.txt", &cli(&["homology", "--base", "r2_6", "--prime", "17"]).stdout);
    let lattice = scratch("lat17.txt", &cli(&["decompose", "--module", m.to_str().unwrap(), "--all-submodules"]).stdout);
    let l = lattice.to_str().unwrap();
    // members are sorted by dimension: 0, four lines, six planes, four hyperplanes, M
    let r = ok_round_trip(&["cover", "--base", "r2_6", "--prime", "17", "--case2", "--submodule", l, "--pick", "11"]);
    let d = covers(&r)[0];
    assert_eq!((d.get("index").unwrap(), d.get("genus").unwrap()), ("136", "18"));
    // the wrong field and a non-invariant subspace are both refused
    assert_eq!(error_kind(&cli(&["cover", "--base", "r2_6", "--prime", "5", "--case2", "--submodule", l])), "precondition");
    let line = scratch("line.txt", "record submodule\nprime 17\nambient 4\ndim 1\nmatrix basis 1 4\n1 1 0 0\nend\n");
    let out = cli(&["cover", "--base", "r2_6", "--prime", "17", "--case2", "--submodule", line.to_str().unwrap()]);
    assert_eq!(error_kind(&out), "not-invariant");
}

#[test]
fn explicit_forms() {
    let c = scratch("c3.txt", &cli(&["cover", "--base", "r2_6", "--prime", "3", "--case2", "--auto-split"]).stdout);
    let r = ok_round_trip(&["explicit", "--descriptor", c.to_str().unwrap(), "--max-darts", "100", "--pick", "1"]);
    assert_eq!(r.role.as_deref(), Some("minus"));
    let h = r.child_with_role("hypermap", "explicit").unwrap();
    for (k, v) in [("darts", "72"), ("genus", "10"), ("chiral", "true"), ("self_dual", "true")] {
        assert_eq!(h.get(k).unwrap(), v, "field {k}");
    }
    // the explicit record is itself a valid descriptor file
    let e = scratch("e3.txt", &reemit(&r.emit()).unwrap());
    ok_round_trip(&["explicit", "--descriptor", e.to_str().unwrap(), "--max-darts", "100"]);
    assert_eq!(error_kind(&cli(&["explicit", "--descriptor", c.to_str().unwrap(), "--max-darts", "50"])), "too-large");
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(error_kind(&cli(&["cover", "--base", "r2_6", "--case1"])), "usage");
    assert_eq!(error_kind(&cli(&["cover", "--base", "r2_6", "--prime", "3", "--case2"])), "usage");
    assert_eq!(error_kind(&cli(&["build-base", "--type", "8,2", "--search"])), "usage");
    assert_eq!(error_kind(&cli(&["frobnicate"])), "usage");
    assert_eq!(error_kind(&cli(&["homology", "--base", "nosuch", "--prime", "3"])), "usage");
    assert_eq!(error_kind(&cli(&["homology", "--base", "r2_6", "--prime", "9"])), "not-prime");
    assert_eq!(error_kind(&cli(&["homology", "--base", "r2_6", "--primes", "3,x"])), "usage");
    assert_eq!(error_kind(&cli(&["cover", "--base", "r2_6", "--prime", "2", "--case1"])), "precondition");
    assert_eq!(error_kind(&cli(&["cover", "--base", "torus424", "--prime", "3", "--case2", "--auto-split"])), "not-reflexible");
    assert_eq!(error_kind(&cli(&["build-base", "--type", "2,3,7", "--search", "--max-degree", "5"])), "not-found");
    let help = cli(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify-paper"));
}

#[test]
fn verify_paper_command() {
    let out = cli(&["verify-paper"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(reemit(&out.stdout).unwrap(), out.stdout);
    let table = cli(&["verify-paper", "--format", "table"]);
    assert_eq!(table.code, 0);
    assert!(table.stdout.contains("12 of 12 checks passed"));
}
