use fqgalois::cli::{run, SCHEMA_VERSION};
use fqgalois::identify::EvidenceReport;
use serde_json::Value;

fn cli(args: &[&str]) -> fqgalois::cli::Outcome {
    run(std::iter::once("fqgalois").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let o = cli(args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
    v
}

#[test]
fn identify_m24_as_json() {
    let v = json(&["identify", "--field", "2", "--poly", "x^24+x+t", "--sweep-degree", "3", "--json"]);
    let survivors: Vec<&str> = v["survivors"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert_eq!(survivors, vec!["M24"]);
    assert_eq!(v["survivors"][0]["hardness"], "hard");
    assert_eq!(v["identified"], "M24");
}

#[test]
fn identify_report_round_trips() {
    let o = cli(&["identify", "--field", "2", "--poly", "x^7+x+t", "--json"]);
    let mut v: Value = serde_json::from_str(&o.stdout).unwrap();
    v.as_object_mut().unwrap().remove("schema_version");
    let r: EvidenceReport = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), v);
}

#[test]
fn usage_errors_exit_2() {
    let o = cli(&["identify", "--poly", "x^^"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("position 2"), "{}", o.stderr);
    assert!(o.stderr.contains("x^^\n"));
    assert_eq!(cli(&["identify"]).code, 2);
    assert_eq!(cli(&["nonsense"]).code, 2);
    assert_eq!(cli(&["identify", "--field", "4x", "--poly", "x+t"]).code, 2);
    assert_eq!(cli(&["identify", "--field", "6", "--poly", "x+t"]).code, 2);
    assert_eq!(cli(&["fano"]).code, 2);
}

#[test]
fn help_exits_0() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("Usage"));
    for sub in ["identify", "series", "additive", "resolvent", "steiner", "fano", "m11", "paper"] {
        assert!(o.stdout.contains(sub), "{sub}");
    }
}

#[test]
fn series_text_and_json() {
    let o = cli(&["series", "--kind", "fano", "--index", "1", "--precision", "9"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.starts_with("e + e^2*t + e^4*t^3 + e*t^7 + e^2*t^8 + O(t^9)"));
    let v = json(&["series", "--kind", "m11", "--precision", "10", "--json"]);
    assert_eq!(v["text"], "1 + t + t^3 + t^4 + 2*t^9 + O(t^10)");
    let v = json(&["series", "--kind", "lift", "--poly", "x^3+x+t", "--x0", "0", "--precision", "10", "--json"]);
    assert_eq!(v["text"], "t + t^3 + t^5 + t^9 + O(t^10)");
    let v = json(&["series", "--kind", "puiseux", "--poly", "x^4+x^2+t*x", "--at", "infinity", "--precision", "8", "--json"]);
    assert_eq!(v["branches"].as_array().unwrap().len(), 4);
}

#[test]
fn additive_relations() {
    let o = cli(&["additive", "--field", "2", "--poly", "x^7+t*x+1"]);
    assert!(o.stdout.starts_with("L = x^8 + t*x^2 + x\n"), "{}", o.stdout);
    let v = json(&["additive", "--field", "2", "--poly", "x^24+x+t", "--affine", "--json"]);
    assert_eq!(v["c"], "t + t^24");
    assert_eq!(v["pdeg"], 11);
}

#[test]
fn resolvent_factors() {
    let v = json(&["resolvent", "--field", "2", "--poly", "x^4+x+t", "--k", "2", "--json"]);
    let degrees: Vec<u64> = v["proper_factors"].as_array().unwrap().iter().map(|f| f["degree"].as_u64().unwrap()).collect();
    assert_eq!(degrees, vec![2, 4]);
    assert_eq!(v["proper_factors"][0]["factor"], "x^2 + x + t");
    let v = json(&["resolvent", "--field", "3", "--poly", "x^11+t*x^2-1", "--k", "5", "--blocks", "steiner11", "--json"]);
    assert_eq!(v["products"], 66);
    assert!(v["polynomial"].as_str().unwrap().starts_with("x^66 + t*x^62 + 2*t^5*x^57"));
    assert!(v["blocks"].as_array().unwrap().iter().all(|b| b["vanishes"] == true));
}

#[test]
fn resolvent_block_file() {
    let dir = std::env::temp_dir().join(format!("fqgalois-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pairs.json");
    std::fs::write(&path, "[[0,1],[2,3]]").unwrap();
    let o = cli(&["resolvent", "--field", "2", "--poly", "x^4+x+t", "--k", "2", "--blocks", path.to_str().unwrap()]);
    assert!(o.code == 0 || o.code == 1, "{}", o.stderr);
    assert!(o.stdout.contains("2 products"));
    std::fs::write(&path, "{\"blocks\": [[0,1]], \"field\": \"GF(4)\"}").unwrap();
    assert_eq!(
        cli(&["resolvent", "--field", "2", "--poly", "x^4+x+t", "--k", "2", "--blocks", path.to_str().unwrap()]).code,
        2
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn steiner_defaults_to_m11() {
    let v = json(&["steiner", "--json"]);
    assert_eq!(v["group_order"], 7920);
    assert_eq!(v["orbit_size"], 66);
    assert_eq!(v["steiner"]["ok"], true);
    let o = cli(&["steiner", "--seed", "01234"]);
    assert_eq!(o.code, 1);
}

#[test]
fn verification_exit_codes() {
    let o = cli(&["fano", "--verify", "--precision", "64"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    let o = cli(&["fano", "--verify", "--precision", "16"]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&cli(&["m11", "--verify", "--precision", "100", "--json"]).stdout).unwrap();
    let t4 = v["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == "f66_nonblocks_t4").unwrap();
    assert_eq!(t4["status"], "deviation");
    assert_eq!(t4["first_divergence_exponent"], 6);
}

#[test]
fn paper_subset_runs() {
    let o = cli(&["paper", "--only", "1,4,9"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert_eq!(o.stdout.lines().filter(|l| l.starts_with("criterion")).count(), 3);
    assert_eq!(cli(&["paper", "--only", "12"]).code, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fqgalois");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["--help"]), Some(0));
    assert_eq!(status(&["identify", "--poly", "x^^"]), Some(2));
    assert_eq!(status(&["steiner"]), Some(0));
}
