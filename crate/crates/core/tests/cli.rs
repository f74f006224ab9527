use std::process::Command;

use semistab::cli;
use semistab::monodromy::DegreeReport;
use semistab::padic_cover::CoverReport;
use semistab::sweep::SweepRecord;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("semistab").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    Outcome { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

#[test]
fn minkowski_table() {
    let o = run(&["minkowski", "--g", "4", "--plain"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let rows: Vec<Vec<&str>> = o.out.lines().skip(1).map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][1..3], ["24", "4608"]);
    assert_eq!(rows[3][1], "1393459200");
    assert_eq!(rows[1][3], "3.2e16");
    assert_eq!(rows[2][3], "1.2e38");
    assert_eq!(rows[3][3], "1.9e68");

    let o = run(&["minkowski", "--g", "1", "--gl-mod", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["rows"][0]["bound"], "24");
    assert_eq!(v["rows"][0]["gl_card"], "4608");

    let o = run(&["minkowski", "--n", "4", "--plain"]);
    assert!(o.out.contains("3.93"), "{}", o.out);
    assert_eq!(run(&["minkowski", "--g", "0"]).code, 2);
    assert_eq!(run(&["minkowski"]).code, 2);
    assert_eq!(run(&["minkowski", "--g", "x"]).code, 2);
}

#[test]
fn header_is_suppressible() {
    let with = run(&["minkowski", "--g", "2"]).out;
    let without = run(&["minkowski", "--g", "2", "--plain"]).out;
    assert!(with.starts_with("# semistab "));
    assert_eq!(with.lines().skip(1).collect::<Vec<_>>(), without.lines().collect::<Vec<_>>());
    assert_eq!(run(&["minkowski", "--g", "2"]).out, with);
}

#[test]
fn curve_reports() {
    let o = run(&["curve", "--s", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("SL2(F3)") && o.out.contains("Dic3") && o.out.contains("d(E) = 24"));

    let o = run(&["curve", "--s", "1", "--json"]);
    assert_eq!(o.code, 0);
    let report: DegreeReport = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report.degree, 12);
    assert_eq!(report.bad_primes, vec![2, 3]);
    let again = serde_json::to_string(&report).unwrap();
    assert_eq!(again, o.out.trim_end());

    let o = run(&["curve", "--s", "-7/125", "--json"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: DegreeReport = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report.bad_primes, vec![2, 3, 5, 7]);

    assert_eq!(run(&["curve", "--s", "0"]).code, 2);
    assert_eq!(run(&["curve", "--s", "1.5"]).code, 2);
    assert_eq!(run(&["curve", "--s", "1/0"]).code, 2);
    assert_eq!(run(&["curve"]).code, 2);
}

#[test]
fn untabulated_curve_still_reports() {
    let o = run(&["curve", "--s", "8", "--json"]);
    assert_eq!(o.code, 3);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["degree"], serde_json::Value::Null);
    assert_eq!(v["monodromy"][0]["status"], "not-tabulated");
    assert_eq!(v["monodromy"][1]["group"], "C4");

    let o = run(&["curve", "--a", "0,0,0,-1,0"]);
    assert_eq!(o.code, 3);
    assert!(o.out.contains("not tabulated"));

    let o = run(&["curve", "--a", "0,-1,1,-10,-20", "--json"]);
    assert_eq!(o.code, 0);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["bad_primes"], serde_json::json!([11]));
    assert_eq!(v["degree"], 1);
    assert_eq!(run(&["curve", "--a", "0,0,0"]).code, 2);
}

#[test]
fn cover_reports() {
    let o = run(&["cover", "--p", "3", "--min-val", "0", "--max-val", "4", "--format", "json"]);
    assert_eq!(o.code, 0);
    let r: CoverReport = serde_json::from_str(&o.out).unwrap();
    for (c, k) in [(1u64, 2u32), (8, 2), (27, 5), (216, 5)] {
        assert!(r.find(c, k).is_some());
    }
    let o = run(&["cover", "--p", "2", "--min-val", "0", "--max-val", "2", "--plain"]);
    assert_eq!(o.out.lines().count(), 6);
    assert!(o.out.contains("4\t2^4\tSL2(F3)\t24"));
    assert_eq!(run(&["cover", "--p", "5", "--max-val", "1"]).code, 3);
    assert_eq!(run(&["cover", "--p", "2", "--max-val", "3"]).code, 3);
    assert_eq!(run(&["cover", "--p", "4"]).code, 2);
    let text = run(&["cover", "--p", "3", "--max-val", "4", "--format", "text"]);
    assert!(text.out.contains("27+243Z_3"));
}

#[test]
fn sweep_writes_sorted_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let o = run(&["sweep", "--from", "1", "--to", "100", "--threads", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    assert!(o.out.contains("records=100") && o.out.contains("all_divide_24=true"));
    let text = std::fs::read_to_string(&path).unwrap();
    let recs: Vec<SweepRecord> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 100);
    assert!(recs.windows(2).all(|w| w[0].s < w[1].s));
    assert_eq!(serde_json::to_value(&recs[3]).unwrap()["degree"], 24);
    assert_eq!(serde_json::to_value(&recs[7]).unwrap()["degree"], "not-tabulated");

    let empty = dir.path().join("e.jsonl");
    let o = run(&["sweep", "--from", "10", "--to", "1", "--out", empty.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    assert_eq!(std::fs::read_to_string(&empty).unwrap(), "");

    let bad = dir.path().join("missing").join("x.jsonl");
    assert_eq!(run(&["sweep", "--from", "1", "--to", "3", "--out", bad.to_str().unwrap()]).code, 2);
    assert_eq!(run(&["sweep", "--from", "1", "--to", "3", "--step", "0"]).code, 2);
}

#[test]
fn galois_summary() {
    let o = run(&["galois", "--degree", "4", "--gens", "(1 2 3 4);(1 2)", "--check-all", "--json"]);
    assert_eq!(o.code, 0, "{}", o.err);
    let v: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["orbit_size"], 24);
    assert_eq!(v["deck_group_order"], 24);
    assert_eq!(v["checks"]["fixed_point_disagreements"], 0);
    assert_eq!(v["checks"]["classified_points"], 30);
    let classes = v["subgroup_classes"].as_array().unwrap();
    assert_eq!(classes.iter().map(|c| c["subgroups"].as_u64().unwrap()).sum::<u64>(), 30);

    let o = run(&["galois", "--degree", "3", "--gens", "(1 2 3)"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("deck group order:  3 (abelian)"));
    assert_eq!(run(&["galois", "--degree", "4", "--gens", "(1 2)"]).code, 2);
    assert_eq!(run(&["galois", "--degree", "3", "--gens", "(1 5)"]).code, 2);
    assert_eq!(run(&["galois", "--degree", "12", "--gens", "(1 2 3 4 5 6 7 8 9 10 11 12)"]).code, 2);
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--plain"]);
    assert_eq!(o.code, 0);
    assert!(o.out.lines().filter(|l| l.starts_with("PASS")).count() >= 40);
    assert!(!o.out.contains("FAIL"));
    assert!(o.out.contains("M(2g) for g = 2") && o.out.contains("5760"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_semistab");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify"]), Some(0));
    assert_eq!(status(&["curve", "--s", "8"]), Some(3));
    assert_eq!(status(&["curve", "--s", "0"]), Some(2));
    assert_eq!(status(&["bogus"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}
