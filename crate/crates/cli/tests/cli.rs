use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn endoreg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endoreg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Scratch {
        let dir = std::env::temp_dir().join(format!("endoreg-cli-{name}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, body: &str) -> String {
        let p = self.0.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> String {
        self.0.join(name).to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn read(p: &str) -> String {
    std::fs::read_to_string(Path::new(p)).unwrap()
}

#[test]
fn check_rigid_cubic_graph() {
    let s = Scratch::new("check");
    let f = s.file("g.g6", "MCHY@e??KOCBOC?g_\n");
    let o = endoreg(&[
        "check",
        &f,
        "--rigid",
        "--asymmetric",
        "--degree",
        "3",
        "--connected",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS rigid"));
    let petersen = s.file("p.g6", "IheA@GUAo\n");
    let o = endoreg(&["check", &petersen, "--rigid"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL rigid"));
}

#[test]
fn hom_count_and_list() {
    let s = Scratch::new("hom");
    let c5 = s.file("c5.g6", "Dhc\n");
    let k3 = s.file("k3.g6", "Bw\n");
    let o = endoreg(&["hom", "count", &c5, &c5]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "10"));
    let o = endoreg(&["hom", "count", &c5, &k3]);
    assert_eq!(stdout(&o).trim(), "30");
    let o = endoreg(&["hom", "list", &k3, &k3]);
    let all: Vec<Vec<usize>> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(all.len(), 6);
    let o = endoreg(&["hom", "list", &k3, &k3, "--limit", "2"]);
    let some: Vec<Vec<usize>> = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(some.len(), 2);
    assert!(some.iter().all(|m| all.contains(m)));
    let o = endoreg(&["hom", "list", &k3, &k3, "--limit", "2", "--jobs", "1"]);
    assert_eq!(
        serde_json::from_str::<Vec<Vec<usize>>>(stdout(&o).trim()).unwrap(),
        some
    );
    let o = endoreg(&["hom", "count", &k3, &c5, "--injective"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn sip_product_of_indicator_is_cubic() {
    let s = Scratch::new("sip");
    let ind = s.path("s37.json");
    assert_eq!(
        code(&endoreg(&[
            "construct",
            "indicator",
            "--d",
            "3",
            "--g",
            "7",
            "--out",
            &ind
        ])),
        0
    );
    // One vertex with a loop and an arc to a second vertex with a loop: total degree 3 everywhere.
    let sys = s.file(
        "sys.json",
        r#"{"n":2,"colours":["a"],"arcs":{"a":[[0,0],[0,1],[1,1]]}}"#,
    );
    let out = s.path("g.g6");
    assert_eq!(
        code(&endoreg(&["product", "sip", &sys, &ind, "--out", &out])),
        0
    );
    let o = endoreg(&[
        "check",
        &out,
        "--degree",
        "3",
        "--odd-girth",
        "7",
        "--connected",
        "--no-engine",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn gadget_and_sausage_outputs() {
    let s = Scratch::new("gadget");
    let o = endoreg(&["construct", "gadget", "--d", "3", "--ell", "2"]);
    let js: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(js["digraph6"].as_str().unwrap().starts_with('&'));
    let names = s.path("names.json");
    let d6 = s.path("s.d6");
    let o = endoreg(&[
        "construct",
        "sausage",
        "--d",
        "3",
        "--ell",
        "1",
        "--f",
        "+",
        "--out",
        &d6,
        "--names",
        &names,
    ]);
    assert_eq!(code(&o), 0);
    let table: serde_json::Value = serde_json::from_str(&read(&names)).unwrap();
    assert_eq!(table["names"].as_array().unwrap().len(), 14);
    let o = endoreg(&["hom", "count", &d6, &d6]);
    assert_eq!(stdout(&o).trim(), "1");
    assert_eq!(
        code(&endoreg(&[
            "construct",
            "sausage",
            "--d",
            "3",
            "--ell",
            "1",
            "--f",
            "+-"
        ])),
        2
    );
}

#[test]
fn tiling_factor_files() {
    let s = Scratch::new("tiling");
    let (out, side) = (s.path("f.g6"), s.path("f.json"));
    let o = endoreg(&[
        "construct",
        "tiling",
        "--g",
        "7",
        "--factor",
        "--out",
        &out,
        "--sidecar",
        &side,
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(read(&out).lines().count(), 3);
    let js: serde_json::Value = serde_json::from_str(&read(&side)).unwrap();
    assert_eq!(
        js["u"].as_array().unwrap().len(),
        2 * js["h"].as_u64().unwrap() as usize
    );
    let o = endoreg(&[
        "check",
        &out,
        "--odd-girth",
        "7",
        "--connected",
        "--no-engine",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn homogenize_and_plan() {
    let s = Scratch::new("homog");
    let out = s.path("d4.json");
    let o = endoreg(&[
        "homogenize",
        "--monoid",
        "semilattice",
        "--verify",
        "--trace",
        "--out",
        &out,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = endoreg(&["check", &out, "--no-engine"]);
    assert!(
        stdout(&o).contains("constant degree Some(21)"),
        "{}",
        stdout(&o)
    );
    let m = s.file("m.json", r#"{"n":2,"identity":0,"table":[[0,1],[1,0]]}"#);
    assert_eq!(code(&endoreg(&["represent", "--monoid", &m, "--plan"])), 0);
    assert_eq!(
        code(&endoreg(&[
            "represent",
            "--monoid",
            "semilattice",
            "--plan"
        ])),
        1
    );
    let bad = s.file("bad.json", r#"{"n":2,"identity":0,"table":[[0,1],[0,1]]}"#);
    assert_eq!(code(&endoreg(&["homogenize", "--monoid", &bad])), 2);
}

#[test]
fn search_generated_and_from_file() {
    let o = endoreg(&["search", "nu", "--d", "3", "--n-max", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("smallest order: not determined"));
    let o = endoreg(&["search", "mu", "--d", "4", "--n-max", "10"]);
    assert!(stdout(&o).contains("smallest order: 10"));
    let s = Scratch::new("search");
    let f = s.file("in.g6", "C~\nIheA@GUAo\nMCHY@e??KOCBOC?g_\n");
    let o = endoreg(&[
        "search",
        "nu",
        "--d",
        "3",
        "--n-max",
        "14",
        "--from-file",
        &f,
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(
        out.contains("n=14 connected=     1 witnesses=    1"),
        "{out}"
    );
    assert!(
        out.contains("n=10 connected=     1 witnesses=    0"),
        "{out}"
    );
}

#[test]
fn verify_suites_exit_codes() {
    let o = endoreg(&["verify", "hom-formula", "--d", "3", "--ell", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("1 passed, 0 failed, 0 unknown"));
    let o = endoreg(&["verify", "gadgets", "--d", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = endoreg(&["verify", "pipeline", "--max-order", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = endoreg(&[
        "verify",
        "pipeline",
        "--max-order",
        "1",
        "--represent",
        "semilattice",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL represent(semilattice, 7): builds"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(code(&endoreg(&["check", "/nonexistent/file.g6"])), 2);
    assert_eq!(code(&endoreg(&["frobnicate"])), 2);
}
