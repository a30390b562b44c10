use std::path::PathBuf;
use std::sync::Arc;

use serde_json::Value;
use steinberg_lab::cli::run;
use steinberg_lab::functor::{make_standard_functor, StandardKind};
use steinberg_lab::subspace::{Poset, Subspace};

fn call(args: &str) -> (i32, String, String) {
    let out = run(std::iter::once("steinberg-lab").chain(args.split_whitespace()));
    (out.code, out.stdout, out.stderr)
}

fn json(args: &str) -> Value {
    let (code, stdout, stderr) = call(args);
    assert_eq!(code, 0, "{args}: {stderr}");
    serde_json::from_str(&stdout).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steinberg-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn functor_file(name: &str, nonzero: bool, kind: StandardKind) -> PathBuf {
    let poset = Arc::new(if nonzero { Poset::nonzero(2) } else { Poset::lattice(2) }.unwrap());
    let f = make_standard_functor(&poset, &kind).unwrap();
    let path = scratch(name);
    std::fs::write(&path, f.to_json().to_string()).unwrap();
    path
}

#[test]
fn steinberg_dimensions() {
    for (n, d) in [(0, 1), (1, 1), (2, 2), (3, 8)] {
        assert_eq!(json(&format!("steinberg --n {n}"))["st_dim"], d);
    }
    assert_eq!(json("steinberg --n 4 --unsafe-caps")["st_dim"], 64);
}

#[test]
fn output_is_deterministic() {
    for args in ["verify --n 2", "mvh --n 3 --h 2 --maxdeg 6", "radical-check --n 2", "resolve --n 2"] {
        assert_eq!(call(args).1, call(args).1, "{args}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(call("no-such-verb").0, 2);
    assert_eq!(call("steinberg --n 4").0, 2);
    assert_eq!(call("mvh --n 2 --maxdeg 13").0, 2);
    assert_eq!(call("steinberg --n 2 --format csv").0, 2);
    assert_eq!(call("ext --n 2").0, 2);
    assert_eq!(call("lusztig-check --n 3 --variant 7").0, 2);
    assert_eq!(call("lusztig-check --n 3 --variant 2").0, 0);
    assert_eq!(call("verify --n 2").0, 0);
}

#[test]
fn mutations_are_reported() {
    for seed in 0..10 {
        let (code, _, _) = call(&format!("verify --n 2 --mutate {seed}"));
        assert_eq!(code, 1, "seed {seed}");
        assert_eq!(call(&format!("lusztig-check --n 2 --variant 1 --mutate {seed}")).0, 1);
    }
}

#[test]
fn mvh_formats() {
    let v = json("mvh --n 2 --h 1 --maxdeg 4");
    assert_eq!(v["dims"], serde_json::json!([2, 1, 0, 0, 0]));
    let (code, csv, _) = call("mvh --n 2 --h 1 --maxdeg 4 --format csv");
    assert_eq!(code, 0);
    assert_eq!(csv, "degree,dim\n0,2\n1,1\n2,0\n3,0\n4,0\n");
    let checks = json("verify-mv --n 2 --h 1 --maxdeg 6");
    assert!(checks["checks"].as_object().unwrap().values().all(|b| b == true));
}

#[test]
fn functor_file_commands() {
    let simple = functor_file("s0.json", false, StandardKind::Simple(Subspace::zero(2)));
    let ext = json(&format!("ext --n 2 --functor {}", simple.display()));
    assert_eq!(ext["dims"], serde_json::json!([1, 0, 0]));
    let bi = json(&format!("bicomplex-check --n 2 --functor {}", simple.display()));
    assert_eq!(bi["agree"], true);
    assert_eq!(bi["bicomplex"], true);
    let _ = json(&format!("resolve --n 2 --functor {}", simple.display()));

    let constant = functor_file("const.json", true, StandardKind::Constant { dim: 1 });
    let lim = json(&format!("limk --functor {} --k 1", constant.display()));
    assert_eq!(lim["dim"], 0);

    let broken = scratch("broken.json");
    std::fs::write(&broken, r#"{"poset":"W","n":2,"dims":{"[]":1},"maps":{"[]<[1]":[[1]]}}"#).unwrap();
    assert_eq!(call(&format!("limk --functor {}", broken.display())).0, 2);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("st.json");
    let (code, stdout, _) = call(&format!("steinberg --n 3 --out {}", path.display()));
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["st_dim"], 8);
}
