use std::path::PathBuf;
use std::process::{Command, Output};

use loopflag::affine::{classify_parabolic, Crossing};
use loopflag::autgrp::automorphism_group;
use loopflag::degcalc::{
    charges, formal_degree, hecke_degree_action, instanton_dimension, MultiDegree,
};
use loopflag::fmt_q;
use loopflag::linalg::QMatrix;
use loopflag::monad::{hecke_monad, random_monad};
use loopflag::rootsys::{root_label, Family, RootSystem};
use loopflag::sheafseq::{hecke_index_shift, SheafFamily, SheafIndex};
use loopflag::weyl::AffineWeyl;
use serde_json::{json, Value};

const CASES: &[(&str, &[&str])] = &[
    ("roots_b2", &["roots", "--family", "B", "--rank", "2"]),
    ("strange_a3", &["strange", "--family", "A", "--rank", "3"]),
    (
        "classify_a1_1",
        &["classify", "--family", "A", "--rank", "1", "--cross", "1"],
    ),
    (
        "classify_c2_0_2",
        &["classify", "--family", "C", "--rank", "2", "--cross", "0,2"],
    ),
    ("autos_a3", &["autos", "--family", "A", "--rank", "3"]),
    (
        "standardize_d5_5",
        &[
            "standardize",
            "--family",
            "D",
            "--rank",
            "5",
            "--cross",
            "5",
        ],
    ),
    (
        "weyl_count_c2",
        &[
            "weyl-count",
            "--family",
            "C",
            "--rank",
            "2",
            "--max-length",
            "6",
        ],
    ),
    (
        "hasse_a2_1",
        &[
            "hasse",
            "--family",
            "A",
            "--rank",
            "2",
            "--cross",
            "1",
            "--max-length",
            "4",
        ],
    ),
    (
        "degree_a2_0_1",
        &[
            "degree", "--family", "A", "--rank", "2", "--cross", "0,1", "--k", "2,1",
        ],
    ),
    (
        "instanton_dim_d4",
        &["instanton-dim", "--family", "D", "--rank", "4", "--k", "3"],
    ),
    ("charges", &["charges", "--k", "2", "--j", "1,-1,3"]),
    (
        "sheafseq_gl4",
        &["sheafseq", "--family", "gl", "--n", "4", "--cross", "0,1,3"],
    ),
    (
        "hecke_shift_so5",
        &[
            "hecke-shift",
            "--family",
            "so-odd",
            "--n",
            "2",
            "--i",
            "0",
            "--label",
            "5",
            "--steps",
            "2",
        ],
    ),
    (
        "hecke_degrees",
        &["hecke-degrees", "--n", "2", "--k", "4,3"],
    ),
    ("flip_demo", &["flip-demo"]),
    (
        "window_shift",
        &[
            "window",
            "--size",
            "3",
            "--entry",
            "0,1,0,1",
            "--entry",
            "2,0,1,-1/2",
            "--lo",
            "0",
            "--hi",
            "2",
        ],
    ),
    (
        "monad_k2_n3",
        &[
            "monad",
            "--k",
            "2",
            "--n",
            "3",
            "--seed",
            "5",
            "--check-order",
        ],
    ),
];

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopflag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_payload(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let doc: Value = serde_json::from_str(&stdout(&full)).unwrap();
    assert_eq!(doc["status"]["state"], "ok", "{args:?}");
    doc["payload"].clone()
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("LOOPFLAG_BLESS").is_some();
    for (name, args) in CASES {
        let mut json_args = vec!["--json"];
        json_args.extend_from_slice(args);
        for (ext, argv) in [("txt", args.to_vec()), ("json", json_args)] {
            let path = golden_dir().join(format!("{name}.{ext}"));
            let got = stdout(&argv);
            if bless {
                std::fs::create_dir_all(golden_dir()).unwrap();
                std::fs::write(&path, &got).unwrap();
            } else {
                let want = std::fs::read_to_string(&path)
                    .unwrap_or_else(|_| panic!("missing {}", path.display()));
                assert_eq!(got, want, "{name}.{ext}");
            }
        }
    }
}

#[test]
fn output_is_deterministic() {
    for (_, args) in CASES {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["strange", "--family", "A", "--rank", "3"]), "1\n");
    assert_eq!(
        json_payload(&["strange", "--family", "A", "--rank", "3"])["value"],
        "1"
    );
    let p = json_payload(&["classify", "--family", "A", "--rank", "1", "--cross", "1"]);
    assert_eq!(p["klass"], "exotic");
    assert_eq!(p["q_chi"], json!(["alpha_1"]));
    let text = stdout(&["classify", "--family", "A", "--rank", "1", "--cross", "1"]);
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["q_chi", "[alpha_1]"]));
    assert_eq!(
        stdout(&["hecke-degrees", "--n", "2", "--k", "4,3"]),
        "3,4\n"
    );
}

#[test]
fn payloads_match_library() {
    let a2 = RootSystem::build(Family::A, 2).unwrap();
    for c in Crossing::all(2) {
        let nodes: Vec<String> = c.crossed_nodes().iter().map(ToString::to_string).collect();
        let cross = nodes.join(",");
        let mut args = vec!["classify", "--family", "A", "--rank", "2"];
        if !cross.is_empty() {
            args.extend(["--cross", &cross]);
        }
        let p = json_payload(&args);
        let lib = classify_parabolic(&c, &a2).unwrap();
        assert_eq!(p["klass"], lib.klass.as_str());
        let q_chi: Vec<String> = lib
            .q_chi_roots
            .iter()
            .map(|&i| root_label(&a2.roots()[i]))
            .collect();
        assert_eq!(p["q_chi"], json!(q_chi));
    }

    for (f, r) in [("A", 4), ("B", 3), ("C", 5), ("D", 4), ("D", 6)] {
        let rs = RootSystem::build(f.parse().unwrap(), r).unwrap();
        let rank = r.to_string();
        let sys = ["--family", f, "--rank", &rank];
        let strange = json_payload(&[&["strange"], &sys[..]].concat());
        assert_eq!(strange["value"], fmt_q(&rs.strange_identity()));
        let autos = json_payload(&[&["autos"], &sys[..]].concat());
        assert_eq!(autos["order"], automorphism_group(&rs).len());
        let dim = json_payload(&[&["instanton-dim"], &sys[..], &["--k", "3"]].concat());
        assert_eq!(dim["dimension"], instanton_dimension(&rs, 3));
        let c = Crossing::from_nodes(r, &[0, 1]).unwrap();
        let deg =
            json_payload(&[&["degree"], &sys[..], &["--cross", "0,1", "--k", "2,-1"]].concat());
        let k = MultiDegree::new(&c, vec![2, -1]).unwrap();
        assert_eq!(deg["degree"], formal_degree(&rs, &c, &k).unwrap());
    }

    let c2 = RootSystem::build(Family::C, 2).unwrap();
    let profile: Vec<usize> = AffineWeyl::new(&c2)
        .enumerate_by_length(7)
        .unwrap()
        .iter()
        .map(Vec::len)
        .collect();
    let p = json_payload(&[
        "weyl-count",
        "--family",
        "C",
        "--rank",
        "2",
        "--max-length",
        "7",
    ]);
    assert_eq!(p["profile"], json!(profile));

    assert_eq!(
        json_payload(&["charges", "--k", "-2", "--j", "3,0,-4"])["value"],
        json!(charges(-2, &[3, 0, -4]))
    );
    assert_eq!(
        json_payload(&["hecke-degrees", "--n", "4", "--k", "1,2,3,4"])["value"],
        json!(hecke_degree_action(4, &[1, 2, 3, 4]).unwrap())
    );

    let shifted = hecke_index_shift(SheafFamily::Sp, 3, SheafIndex::plain(1, 2)).unwrap();
    let p = json_payload(&[
        "hecke-shift",
        "--family",
        "sp",
        "--n",
        "3",
        "--i",
        "1",
        "--label",
        "2",
    ]);
    assert_eq!(p["result"], shifted.to_string());

    let m = random_monad(3, 2, 11).unwrap();
    let h = hecke_monad(&m).unwrap();
    let p = json_payload(&["monad", "--k", "3", "--n", "2", "--seed", "11"]);
    let as_json = |x: &QMatrix| {
        json!((0..x.rows())
            .map(|i| x.row(i).iter().map(fmt_q).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    };
    assert_eq!(p["monad"]["b"], as_json(m.b()));
    assert_eq!(p["transformed"]["c"], as_json(h.c()));
    assert_eq!(p["transformed"]["d"], as_json(h.d()));
}

#[test]
fn flip_demo_reports_inclusions() {
    let p = json_payload(&["flip-demo", "--lo", "-1", "--hi", "3"]);
    assert_eq!(p["borel_fixed"], true);
    assert_eq!(p["p1_into_p2"], true);
    assert_eq!(p["p2"], "exotic");
    assert!(p["basis"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["in_target"] == true));
}

#[test]
fn window_translates_under_reciprocal_shift() {
    let base = [
        "window",
        "--size",
        "3",
        "--entry",
        "0,1,0,2",
        "--entry",
        "2,1,1,1/3",
    ];
    let plain = json_payload(&[&base[..], &["--lo", "0", "--hi", "3"]].concat());
    let shifted = json_payload(
        &[
            &base[..],
            &[
                "--conjugate",
                "shift-sln-reciprocal",
                "--lo",
                "0",
                "--hi",
                "3",
            ],
        ]
        .concat(),
    );
    assert_eq!(plain["periodic"], true);
    assert_eq!(shifted["periodic"], true);
    assert_ne!(plain["blocks"], shifted["blocks"]);
}

#[test]
fn rationals_never_print_as_decimals() {
    for (_, args) in CASES {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        let doc: Value = serde_json::from_str(&stdout(&full)).unwrap();
        fn check(v: &Value) {
            match v {
                Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "{n}"),
                Value::String(s) => assert!(!s.chars().any(|c| c == '.'), "{s}"),
                Value::Array(xs) => xs.iter().for_each(check),
                Value::Object(m) => m.values().for_each(check),
                _ => {}
            }
        }
        check(&doc);
    }
}

#[test]
fn exit_codes_and_usage() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(run(&["strange", "--family", "A"]).status.code(), Some(2));
    assert_eq!(
        run(&["strange", "--family", "Q", "--rank", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["strange", "--family", "D", "--rank", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["strange", "--family", "A", "--rank", "9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "--max-rank",
            "12",
            "strange",
            "--family",
            "A",
            "--rank",
            "9"
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "--max-rank",
            "99",
            "strange",
            "--family",
            "A",
            "--rank",
            "2"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "--max-length",
            "41",
            "weyl-count",
            "--family",
            "A",
            "--rank",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["standardize", "--family", "D", "--rank", "5"])
            .status
            .code(),
        Some(1)
    );

    let out = run(&["--json", "hecke-degrees", "--n", "3", "--k", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["status"]["state"], "error");
    assert!(doc["payload"].is_null());
}
