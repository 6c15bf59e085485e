//! End-to-end behavior of the command-line front end.

use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitfield_cli::{run, EXIT_OK, EXIT_REFUTED, EXIT_USAGE};

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Outcome {
    let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&args, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("splitfield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn factor_example() {
    let r = cli(&["factor", "x^2-1"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.trim_end(), "(x - 1)(x + 1)");
}

#[test]
fn qsolv_refutes_the_quintic() {
    let r = cli(&["qsolv", "x^5-4*x+2"]);
    assert_eq!(r.code, EXIT_REFUTED);
    assert!(
        r.out
            .contains("not a member (non-solvable Galois group S5)"),
        "{}",
        r.out
    );
    assert_eq!(cli(&["qsolv", "x^5-2"]).code, EXIT_OK);
}

#[test]
fn witness_example_prints_degree_prime_and_checks() {
    let r = cli(&["witness", "finite: x^2-2; x^3-3"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("t = 12"), "{}", r.out);
    assert!(r.out.contains("p = 13"), "{}", r.out);
    assert!(r.out.contains("1 + 13^(1/13)"), "{}", r.out);
    assert!(r.out.contains("checks:"), "{}", r.out);
    assert!(r.out.contains("verified:"), "{}", r.out);
}

#[test]
fn usage_errors_print_the_grammar() {
    for args in [
        vec!["factor", "x^^2"],
        vec!["factor"],
        vec!["bogus"],
        vec!["factor", "x", "--nope"],
        vec!["cyclotomic", "-3"],
        vec!["member", "x^2-2"],
        vec!["specialize", "y^2-x"],
        vec!["specialize", "y^2-x", "--range", "5..1"],
        vec!["specialize", "y^2-x", "--range", "1..3", "--jobs", "0"],
        vec!["witness", "degree = 0"],
        vec!["galois", "x^7-2"],
        vec!["radical-tower", "5"],
    ] {
        let r = cli(&args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}", r.out);
    }
    let r = cli(&["factor", "x^^2"]);
    assert!(r.err.contains("polynomials:"), "{}", r.err);
}

#[test]
fn degree_cap_is_a_limit_error() {
    let r = cli(&["splitting-degree", "x^5-4*x+2", "--cap", "100"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("120"), "{}", r.err);
    let r = cli(&["splitting-degree", "x^5-4*x+2", "--cap", "5000"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("120"), "{}", r.out);
}

#[test]
fn emit_parse_verify_round_trip() {
    let path = scratch("round_trip.json");
    let p = path.to_str().unwrap();
    let first = cli(&["witness", "finite: x^2-2; x^3-3", "--emit", p]);
    assert_eq!(first.code, EXIT_OK);
    let bytes = std::fs::read(&path).unwrap();
    let again = cli(&["witness", "finite: x^2-2; x^3-3", "--emit", p]);
    assert_eq!(again.code, EXIT_OK);
    assert_eq!(std::fs::read(&path).unwrap(), bytes);
    let r = cli(&["verify", p]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    assert!(r.out.trim_end().ends_with("verified"));
}

#[test]
fn corrupted_prime_fails_verification() {
    let path = scratch("corrupt.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        cli(&["witness", "finite: x^2-2; x^3-3", "--emit", p]).code,
        EXIT_OK
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let at = text.rfind("\"prime\":13,\"witness\"").unwrap() + "\"prime\":1".len();
    let mut bytes = text.into_bytes();
    bytes[at] = b'7';
    std::fs::write(&path, &bytes).unwrap();
    let r = cli(&["verify", p]);
    assert_eq!(r.code, EXIT_REFUTED, "{}", r.out);
    assert!(r.out.contains("verification failed"));
}

#[test]
fn malformed_certificates_are_refuted() {
    let path = scratch("garbage.json");
    let p = path.to_str().unwrap();
    for bytes in [&b"{}"[..], b"not json", b"\xff\xfe", b""] {
        std::fs::write(&path, bytes).unwrap();
        assert_eq!(cli(&["verify", p]).code, EXIT_REFUTED);
    }
    let missing = scratch("missing.json");
    assert_eq!(cli(&["verify", missing.to_str().unwrap()]).code, EXIT_USAGE);
}

#[test]
fn emit_to_unwritable_sink_is_a_limit_error() {
    let dir = scratch("sink_dir");
    std::fs::create_dir_all(&dir).unwrap();
    let r = cli(&["witness", "finite: x^2-2", "--emit", dir.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("cannot write"), "{}", r.err);
}

#[test]
fn jobs_do_not_change_output() {
    let base = ["specialize", "y^3-x*y+x", "--range", "-40..40"];
    let one = cli(&[&base[..], &["--jobs", "1"]].concat());
    let four = cli(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.code, EXIT_OK);
    assert_eq!(one.out, four.out);
    let json1 = cli(&[&base[..], &["--jobs", "1", "--format", "json"]].concat());
    let json4 = cli(&[&base[..], &["--jobs", "4", "--json"]].concat());
    assert_eq!(json1.out, json4.out);
}

#[test]
fn json_output_is_one_document() {
    let r = cli(&["galois", "x^5-4*x+2", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(r.out.trim_end()).unwrap();
    assert!(v.to_string().contains("S5"), "{v}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_splitfield");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["factor", "x^2-1"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(
        String::from_utf8_lossy(&o.stdout).trim_end(),
        "(x - 1)(x + 1)"
    );
    assert_eq!(status(&["qab", "x^3-2"]).status.code(), Some(EXIT_REFUTED));
    assert_eq!(status(&["factor", "x^^2"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&[]).status.code(), Some(EXIT_USAGE));
    #[cfg(unix)]
    {
        use std::os::unix::ffi::OsStrExt;
        let o = Command::new(bin)
            .arg("factor")
            .arg(std::ffi::OsStr::from_bytes(b"x\xff"))
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(EXIT_USAGE));
    }
}

const COMMANDS: [&str; 13] = [
    "factor",
    "galois",
    "splitting-degree",
    "sturm",
    "cyclotomic",
    "member",
    "witness",
    "verify",
    "specialize",
    "qab",
    "qsolv",
    "radical-tower",
    "",
];

/// Half the strings are raw bytes, half are drawn from the polynomial
/// alphabet so that the parsers get past their first character.
fn random_arg(rng: &mut ChaCha8Rng) -> String {
    let len = rng.gen_range(0..24);
    let bytes: Vec<u8> = if rng.gen_bool(0.5) {
        (0..len).map(|_| rng.gen()).collect()
    } else {
        const ALPHABET: &[u8] = b"xy0123456789^*+-/ ;.=<:";
        (0..len)
            .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())])
            .collect()
    };
    String::from_utf8_lossy(&bytes).into_owned()
}

#[test]
fn fuzzed_arguments_never_crash() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let flags = ["--cap", "--in", "--range", "--jobs", "--emit", "--format"];
    for i in 0..10_000 {
        let mut args = vec![COMMANDS[i % COMMANDS.len()].to_string()];
        for _ in 0..rng.gen_range(0..3) {
            if rng.gen_bool(0.3) {
                args.push(flags[rng.gen_range(0..flags.len())].to_string());
            }
            args.push(random_arg(&mut rng));
        }
        // a random --emit target must not clobber anything real
        if let Some(k) = args.iter().position(|a| a == "--emit") {
            args.truncate(k);
        }
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = cli(&argv);
        assert!(
            [EXIT_OK, EXIT_REFUTED, EXIT_USAGE].contains(&r.code),
            "{args:?}"
        );
        assert!(!r.err.contains("internal failure"), "{args:?}: {}", r.err);
        let has_foreign_byte = args[1..]
            .iter()
            .any(|a| a.chars().any(|c| !c.is_ascii_graphic() && c != ' '));
        if has_foreign_byte && args[0] != "verify" {
            assert_eq!(r.code, EXIT_USAGE, "{args:?}: {}", r.out);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factor_output_reparses_to_the_same_factorization(
        cs in proptest::collection::vec(-1_000_000i64..=1_000_000, 2..=11)
    ) {
        prop_assume!(*cs.last().unwrap() != 0);
        let poly = splitfield::Poly::from_ints(&cs).to_string();
        let first = cli(&["factor", &poly]);
        prop_assert_eq!(first.code, EXIT_OK);
        let printed = splitfield::parse_poly(&poly).unwrap().to_string();
        prop_assert_eq!(&printed, &poly);
        let again = cli(&["factor", &printed]);
        prop_assert_eq!(first.out, again.out);
    }
}
