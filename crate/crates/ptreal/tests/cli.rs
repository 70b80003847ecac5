use std::process::{Command, Output};

use ptreal_core::eval::SpecId;
use ptreal_core::{Dyadic, OpMeter};

fn ptreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptreal")).args(args).output().expect("run ptreal")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = ptreal(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn encode_and_decode() {
    assert_eq!(ok(&["encode", "1.1"]), "111011\n");
    assert_eq!(ok(&["decode", "111011"]), "1.1\n");
    for lit in ["0", "-0.0101", "1101", "10.001", "-1"] {
        let bits = ok(&["encode", lit]);
        assert_eq!(ok(&["decode", bits.trim()]).trim(), lit);
    }
}

#[test]
fn exit_codes() {
    for args in [
        &["encode", "1.10"][..],
        &["encode", "2"],
        &["decode", "101"],
        &["eval", "--witness", "nope", "--at", "1"],
        &["eval-real", "--spec", "identity", "--x", "1", "--n", "3", "--oracle", "jitter:x"],
        &["modulus-check", "--witness", "sawtooth", "--k", "1", "--n", "1", "--claim", "cubic"],
        &["cost-scan", "--target", "sawtooth", "--param", "r=5..2", "--csv", "/dev/null"],
        &["eval", "--witness", "sawtooth"],
    ] {
        let o = ptreal(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = ptreal(&["eval", "--witness", "sawtooth", "--at", "-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--at"));
    let o = ptreal(&["modulus-check", "--witness", "slow-decay", "--k", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "--witness", "sawtooth", "--at", "11.010101"]), "1000\n");
    assert_eq!(ok(&["eval-real", "--spec", "precision-gated", "--x", "10.1", "--n", "20"]), "0.1001\n");
    assert_eq!(
        ok(&["eval", "--witness", "precision-gated", "--at", "10.1", "--decimal"]),
        "0.1001\n≈ 0.5625\n"
    );
    let out = ok(&["eval-real", "--spec", "square", "--x", "1.1", "--n", "4", "--oracle", "jitter:7"]);
    let v: Dyadic = out.trim().parse().unwrap();
    assert!((v - "10.01".parse::<Dyadic>().unwrap()).abs() <= Dyadic::pow2(-4));
    let o = ptreal(&["eval-real", "--spec", "square", "--x", "-1.1", "--n", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn transcripts_replay() {
    for (spec, x) in [("identity", "101.011"), ("square", "11.01"), ("precision-gated", "10.1"), ("affine", "1")] {
        for oracle in ["canonical", "jitter:3"] {
            let out = ok(&["eval-real", "--spec", spec, "--x", x, "--n", "9", "--oracle", oracle, "--transcript"]);
            let printed = out.lines().next().unwrap();
            let d: Dyadic = field(&out, "d").parse().unwrap();
            let n: u64 = field(&out, "n").parse().unwrap();
            let spec = spec.parse::<SpecId>().unwrap().spec();
            let again = spec.psi(&d, n + 1, &mut OpMeter::new()).unwrap();
            assert_eq!(again.to_string(), printed);
            assert_eq!(field(&out, "output"), printed);
        }
    }
}

#[test]
fn modulus_check_reports() {
    let out = ok(&["modulus-check", "--witness", "sawtooth", "--k", "2", "--n", "3"]);
    assert_eq!(field(&out, "verdict"), "verified-on-grid");
    assert_eq!(field(&out, "m"), "15");
    let out = ok(&["modulus-check", "--witness", "sawtooth", "--k", "2", "--n", "4", "--claim", "poly:1"]);
    assert_eq!(field(&out, "verdict"), "refuted");
    let (x, y): (Dyadic, Dyadic) = (field(&out, "x").parse().unwrap(), field(&out, "y").parse().unwrap());
    assert!(&y - &x <= Dyadic::pow2(-6));
    let out = ok(&["modulus-check", "--witness", "combined", "--k", "1", "--n", "4", "--claim", "poly:3"]);
    assert_eq!(field(&out, "verdict"), "refuted");
    let out = ok(&["modulus-check", "--witness", "precision-gated", "--k", "3", "--n", "5", "--grid", "9"]);
    assert_eq!(field(&out, "verdict"), "verified-on-grid");
}

#[test]
fn cost_scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let p = path.to_str().unwrap();
    let out = ok(&["cost-scan", "--target", "sawtooth", "--param", "r=2..31", "--csv", p]);
    assert!(out.contains("rows = 30"));
    assert!(out.contains("output_len vs len(r): super-poly"), "{out}");
    assert!(out.contains("digit_ops vs input_len: poly"), "{out}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 31);
    assert!(text.starts_with("target,param_name,param_value,input_len,k,n,output_len,digit_ops,oracle_depth,oracle_count\n"));

    let out = ok(&["cost-scan", "--target", "real:precision-gated", "--param", "k=0..20", "--param", "n=0..32", "--csv", p]);
    assert!(out.contains("digit_ops vs k+n+1: poly"), "{out}");
    let again = std::fs::read_to_string(&path).unwrap();
    let out2 = ok(&["cost-scan", "--target", "real:precision-gated", "--param", "k=0..20", "--param", "n=0..32", "--csv", p]);
    assert_eq!(out, out2);
    assert_eq!(again, std::fs::read_to_string(&path).unwrap());
}

#[test]
fn lists_everything() {
    let out = ok(&["list-witnesses"]);
    for id in ["sawtooth", "slow-decay", "precision-gated", "combined", "exp-demo", "real:square"] {
        assert!(out.contains(id), "{id}");
    }
}
