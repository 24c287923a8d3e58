//! Acceptance: the full generate -> color -> export -> verify pipeline
//! exits 0 for every family, and a corrupted coloring is rejected with
//! exit 1 (fail-closed round trip).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uvd"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn exit(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn acceptance_8_cli_round_trip_all_families() {
    let start = Instant::now();
    let dir: PathBuf =
        std::env::temp_dir().join(format!("uvd-acceptance-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("temp dir");

    let families: &[(&str, &[&str])] = &[
        ("path", &["path", "9"]),
        ("cycle9", &["cycle", "9"]),
        ("cycle15", &["cycle", "15"]),
        ("cbt", &["cbt", "3"]),
        ("star", &["star", "2", "2", "1"]),
        ("complete", &["complete", "6"]),
        ("random", &["random", "20", "0.3", "--seed", "7"]),
    ];

    for (tag, params) in families {
        let g = dir.join(format!("{tag}.g")).to_str().unwrap().to_string();
        let c = dir.join(format!("{tag}.c")).to_str().unwrap().to_string();
        let dot = dir.join(format!("{tag}.dot")).to_str().unwrap().to_string();
        let json = dir.join(format!("{tag}.json")).to_str().unwrap().to_string();

        let mut gen_args = vec!["generate"];
        gen_args.extend_from_slice(params);
        gen_args.extend_from_slice(&["--out", &g]);
        let out = run(&gen_args);
        assert_eq!(exit(&out), 0, "generate {tag}: {}", stderr(&out));

        let out = run(&["color", &g, "--out", &c]);
        assert_eq!(exit(&out), 0, "color {tag}: {}", stderr(&out));

        let out = run(&["export", &g, &c, "--format", "dot", "--out", &dot]);
        assert_eq!(exit(&out), 0, "export dot {tag}: {}", stderr(&out));

        let out = run(&["export", &g, &c, "--format", "json", "--out", &json]);
        assert_eq!(exit(&out), 0, "export json {tag}: {}", stderr(&out));

        let out = run(&["verify", &g, &c]);
        assert_eq!(exit(&out), 0, "verify {tag}: {}", stderr(&out));

        // The exported JSON carries the same graph and coloring.
        let (jg, jc) = uvd_core::io::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
        let host = uvd_core::io::parse_graph(&fs::read_to_string(&g).unwrap()).unwrap();
        let coloring =
            uvd_core::io::parse_coloring(&host, &fs::read_to_string(&c).unwrap()).unwrap();
        assert_eq!(jg, host, "JSON round trip {tag}");
        assert_eq!(jc, coloring, "JSON round trip {tag}");
        assert!(uvd_core::coloring::verify(&jg, &jc).unwrap().valid);

        // Fail closed: flattening every edge set to {1} must be rejected.
        let corrupted: String = fs::read_to_string(&c)
            .unwrap()
            .lines()
            .map(|line| {
                let head = line.split(':').next().unwrap().trim();
                format!("{head} : 1\n")
            })
            .collect();
        let bad = dir.join(format!("{tag}.bad.c")).to_str().unwrap().to_string();
        fs::write(&bad, corrupted).unwrap();
        let out = run(&["verify", &g, &bad]);
        assert_eq!(exit(&out), 1, "corrupted coloring {tag} must exit 1");
    }

    let _ = fs::remove_dir_all(&dir);
    println!(
        "ACCEPTANCE 8: PASS - generate/color/export/verify round trip exits 0 for \
         path, cycle, cbt, star, complete and random; corrupted colorings exit 1 ({:.2?})",
        start.elapsed()
    );
}
