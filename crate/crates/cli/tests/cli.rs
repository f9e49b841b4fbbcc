use std::path::PathBuf;
use std::process::{Command, Output};

use k3lat::rootsys::named_elements;
use k3lat::{RootDatum, RootType};

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("k3lat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn table_path() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/hm.psv").to_string()
}

#[test]
fn symbol_of_a2() {
    let gram = scratch("a2.json");
    std::fs::write(&gram, "[[2,-1],[-1,2]]").unwrap();
    let o = k3lat(&["symbol", gram.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3^-1\n");
    let o = k3lat(&["--json", "disc", gram.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cyclic_orders"], serde_json::json!(["3"]));
    assert_eq!(v["quadratic"], serde_json::json!(["2/3"]));
}

#[test]
fn symbol_rejects_bad_input() {
    let odd = scratch("odd.json");
    std::fs::write(&odd, "[[1]]").unwrap();
    assert_eq!(k3lat(&["symbol", odd.to_str().unwrap()]).status.code(), Some(2));
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"gram\": 3}").unwrap();
    assert_eq!(k3lat(&["symbol", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(k3lat(&["symbol", "/nonexistent/gram.json"]).status.code(), Some(2));
}

#[test]
fn worked_example_embeddings() {
    let args = ["embeds", "--qs", "4_3^-1 3^-1 7^-1", "--rank", "21", "--p", "7", "--sigma", "1"];
    let o = k3lat(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("embeds into N_{7,1}"), "{text}");
    assert!(text.contains("complement form = 4_5^-1 3^+1 7^-1"), "{text}");
    let o = k3lat(&["embeds", "--qs", "4_3^-1 3^-1 7^-1", "--rank", "21", "--p", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("does not embed"));
    let json_args: Vec<&str> = std::iter::once("--json").chain(args).collect();
    let (a, b) = (k3lat(&json_args), k3lat(&json_args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["embeds"], serde_json::json!(true));
    assert_eq!(v["witness"]["h_order"], serde_json::json!(7));
}

#[test]
fn usage_errors() {
    assert_eq!(k3lat(&["embeds", "--qs", "3^x1", "--rank", "2", "--p", "3"]).status.code(), Some(2));
    assert_eq!(k3lat(&["embeds", "--qs", "3^+1", "--rank", "2", "--p", "4"]).status.code(), Some(2));
    assert_eq!(k3lat(&["embeds", "--qs", "3^+1", "--rank", "22", "--p", "3"]).status.code(), Some(2));
    assert_eq!(k3lat(&["embeds", "--rank", "2", "--p", "3"]).status.code(), Some(2));
    assert_eq!(k3lat(&["nonsense"]).status.code(), Some(2));
    assert_eq!(k3lat(&["--threads", "0", "wildbound", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn wild_bounds() {
    let data = table_path();
    let o = k3lat(&["wildbound", "--p", "3", "--data", &data]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("14"));
    assert!(text.contains("witness R = A2^10"));
    for (p, want) in [("11", "1"), ("7", "3"), ("5", "6")] {
        let o = k3lat(&["wildbound", "--p", p]);
        assert_eq!(stdout(&o).lines().next(), Some(want), "p = {p}");
    }
    let o = k3lat(&["--json", "wildbound", "--p", "13"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tame_only"], serde_json::json!(true));
}

#[test]
fn table_report_is_stable_across_threads() {
    let data = table_path();
    let (r1, r2) = (scratch("t1.json"), scratch("t2.json"));
    let o1 = k3lat(&["--json", "table", "--data", &data, "--primes-below", "40", "--report", r1.to_str().unwrap()]);
    let o2 = k3lat(&[
        "--json",
        "--threads",
        "2",
        "table",
        "--data",
        &data,
        "--primes-below",
        "40",
        "--report",
        r2.to_str().unwrap(),
    ]);
    assert_eq!(o1.status.code(), Some(0));
    assert_eq!(o1.stdout, o2.stdout);
    let (a, b) = (std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["passed"], serde_json::json!(67));
    assert_eq!(v["rows"][0]["no"], serde_json::json!(1));
}

#[test]
fn table_flags_bad_rows() {
    let bad = scratch("bad.psv");
    let mut text = std::fs::read_to_string(table_path()).unwrap();
    text.push_str("999|4|x|1|\"3^+9\"|\"any\"\n");
    std::fs::write(&bad, text).unwrap();
    let o = k3lat(&["table", "--data", bad.to_str().unwrap(), "--primes-below", "12"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rank 4 is inconsistent with 3^+9"), "{}", stdout(&o));
}

#[test]
fn proot_check_and_classify() {
    let d4 = RootDatum::new(RootType::D(4)).unwrap();
    let m = named_elements(&d4).unwrap();
    let write = |name: &str, g: &str| {
        let path = scratch(name);
        let body = serde_json::json!({"root_lattice": "D4", "generators": [m[g].rows()]});
        std::fs::write(&path, body.to_string()).unwrap();
        path
    };
    let gx = write("gx.json", "gx");
    let o = k3lat(&["proot-check", "--root-lattice", "D4", "--p", "3", "--generators", gx.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("p-root pair"));
    let x = write("x.json", "x");
    let o = k3lat(&["--json", "proot-check", "--root-lattice", "D4", "--p", "3", "--generators", x.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["full"], serde_json::json!(false));
    assert_eq!(
        k3lat(&["proot-check", "--root-lattice", "A4", "--p", "3", "--generators", x.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let o = k3lat(&["--json", "proot-classify", "--root-lattice", "D4", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let full = v["classes"].as_array().unwrap().iter().filter(|c| c["verdict"]["full"] == serde_json::json!(true)).count();
    assert_eq!(full, 1);
    let o2 = k3lat(&["--json", "--threads", "2", "proot-classify", "--root-lattice", "D4", "--p", "3"]);
    assert_eq!(o.stdout, o2.stdout);
    let o = k3lat(&["proot-classify", "--root-lattice", "D5", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(k3lat(&["proot-classify", "--root-lattice", "E8", "--p", "5"]).status.code(), Some(3));
    assert_eq!(k3lat(&["proot-classify", "--root-lattice", "B3", "--p", "3"]).status.code(), Some(2));
}

#[test]
fn verify_subset() {
    let o = k3lat(&["verify", "--only", "2,6,7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("[PASS]")).count(), 3);
    let o = k3lat(&["--json", "verify", "--only", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["pass"], serde_json::json!(false));
    assert_eq!(k3lat(&["verify", "--only", "12"]).status.code(), Some(2));
}
