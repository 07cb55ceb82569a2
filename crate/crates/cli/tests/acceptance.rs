//! Acceptance criterion 12 (command line), exact. Prints one `PASS`/`FAIL`
//! line; run with `-- --nocapture` to see it.

use std::process::Command;

use trilie::expr;

const CORPUS: &str = include_str!("data/expressions.txt");

fn trilie(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_trilie"))
        .args(args)
        .env_remove("TRILIE_SEED")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn roundtrip_corpus() -> Result<String, String> {
    let lines: Vec<&str> = CORPUS.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.len() != 50 {
        return Err(format!("corpus has {} expressions", lines.len()));
    }
    for src in &lines {
        let tree = expr::parse(src).map_err(|e| format!("{src}: {e}"))?;
        let printed = tree.to_string();
        let again = expr::parse(&printed).map_err(|e| format!("{printed}: {e}"))?;
        if again != tree || again.to_string() != printed {
            return Err(format!("{src} -> {printed} does not round-trip"));
        }
        let (a, b) = (tree.eval(), again.eval());
        if a.is_err() || a != b {
            return Err(format!("{src}: evaluation {a:?} vs {b:?}"));
        }
    }
    Ok(format!("{} expressions round-trip", lines.len()))
}

fn deterministic_verify() -> Result<String, String> {
    let mut runs = 0;
    for kind in ["fi", "leibniz", "skew", "nambu", "poisson-all"] {
        let base = [
            "verify",
            kind,
            "--seed",
            "7",
            "--samples",
            "300",
            "--window",
            "4",
        ];
        let mut outputs = Vec::new();
        for workers in [None, Some("1"), Some("2"), Some("4")] {
            let mut args = base.to_vec();
            if let Some(w) = workers {
                args.extend(["--workers", w]);
            }
            let (code, stdout) = trilie(&args);
            if code != 0 {
                return Err(format!("verify {kind} exited {code}"));
            }
            let v: serde_json::Value =
                serde_json::from_slice(&stdout).map_err(|e| e.to_string())?;
            if v["passed"] != serde_json::Value::Bool(true) {
                return Err(format!("verify {kind} report not passing"));
            }
            outputs.push(stdout);
            runs += 1;
        }
        if outputs.windows(2).any(|w| w[0] != w[1]) {
            return Err(format!("verify {kind} output depends on the worker count"));
        }
    }
    let (code, _) = trilie(&["model-scan", "w3", "--z", "0", "--window", "2"]);
    if code != 1 {
        return Err(format!("model-scan with z = 0 exited {code}, expected 1"));
    }
    let (code, _) = trilie(&["verify", "fi", "--window", "x"]);
    if code != 2 {
        return Err(format!("bad window exited {code}, expected 2"));
    }
    Ok(format!("{runs} verify runs exit 0 with byte-identical reports across 1/2/4/default workers; violation exit 1; usage exit 2"))
}

#[test]
fn acceptance() {
    let mut failed = false;
    for (name, run) in [
        (
            "parse/print round-trip",
            roundtrip_corpus as fn() -> Result<String, String>,
        ),
        ("deterministic verify", deterministic_verify),
    ] {
        match run() {
            Ok(msg) => println!("criterion 12 PASS  CLI {name}: {msg}"),
            Err(msg) => {
                println!("criterion 12 FAIL  CLI {name}: {msg}");
                failed = true;
            }
        }
    }
    assert!(!failed);
}
