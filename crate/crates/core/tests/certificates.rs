//! Certificate generation, canonical emission and replay.

use proptest::prelude::*;
use serde_json::Value;
use splitfield::arith::{int, rat_int};
use splitfield::numfield::{element_degree, minimal_polynomial, NumberField};
use splitfield::polyq::{cyclotomic, BivariatePoly};
use splitfield::witness::{
    member_qab, member_qsolv, radical_power_membership, specialize_and_classify,
    verify_certificate, witness_for_family, DegreeData, FamilySpec, Obstruction, Outcome,
    WitnessCertificate,
};
use splitfield::{parse_poly, Poly};

const SPECS: [&str; 10] = [
    "finite: x^2-2; x^3-3",
    "finite: x-1",
    "finite: x^2+1",
    "degree = 1",
    "degree = 5",
    "degree <= 4 p=5 prefix: x^2-2; x^3-3",
    "degree <= 4 prefix: x^4-2",
    "radical-tower base=2 n=3..8",
    "qab",
    "qsolv",
];

fn cert(spec: &str) -> WitnessCertificate {
    witness_for_family(&spec.parse().unwrap(), 5000).unwrap()
}

#[test]
fn every_family_kind_verifies_and_round_trips() {
    for spec in SPECS {
        let c = cert(spec);
        verify_certificate(&c).unwrap_or_else(|e| panic!("{spec}: {e}"));
        let text = c.to_canonical_string();
        assert_eq!(
            text,
            cert(spec).to_canonical_string(),
            "{spec}: not reproducible"
        );
        let back = WitnessCertificate::parse(&text).unwrap();
        assert_eq!(back, c, "{spec}");
        assert_eq!(back.to_canonical_string(), text);
        verify_certificate(&back).unwrap();
    }
}

#[test]
fn canonical_envelope() {
    let text = cert("finite: x^2-2; x^3-3").to_canonical_string();
    let v: Value = serde_json::from_str(&text).unwrap();
    // compact and with sorted keys, so reparsing and printing is the identity
    assert_eq!(serde_json::to_string(&v).unwrap(), text);
    assert!(!text.contains('\n'));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "checks",
            "degree_data",
            "family",
            "obstruction",
            "prime",
            "witness"
        ]
    );
    assert_eq!(v["prime"], 13);
    assert_eq!(v["degree_data"]["total_degree"], 12);
    for c in v["checks"].as_array().unwrap() {
        let keys: Vec<&String> = c.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["expected", "inputs", "op"]);
    }
}

fn failing_check(c: &WitnessCertificate) -> String {
    verify_certificate(c).unwrap_err().check
}

#[test]
fn corrupted_fields_fail_replay() {
    let good = cert("finite: x^2-2; x^3-3");
    let mut c = good.clone();
    c.prime = int(12);
    assert_eq!(failing_check(&c), "primality");
    let mut c = good.clone();
    c.witness_min_poly = parse_poly("x^2-2").unwrap();
    assert_eq!(failing_check(&c), "degree");
    let mut c = good.clone();
    c.description = "1 + 11^(1/11)".into();
    assert_eq!(failing_check(&c), "description");
    let mut c = good.clone();
    c.obstruction = Obstruction::NonSolvable;
    assert_eq!(failing_check(&c), "obstruction");
    let mut c = good.clone();
    c.family = "finite: x^2-2".parse().unwrap();
    assert_eq!(failing_check(&c), "splitting_degree");
    let mut c = good.clone();
    c.degree_data = DegreeData::ProductBound(3);
    assert_eq!(failing_check(&c), "degree_data");
    let mut c = good.clone();
    c.checks[5].expected = Value::Bool(true);
    assert_eq!(failing_check(&c), "check_records");
    let mut c = good.clone();
    c.checks.pop();
    assert_eq!(failing_check(&c), "check_records");
    // a witness of the right degree that is not 1 + 13^(1/13)
    let mut c = good;
    c.witness_min_poly = parse_poly("x^13-2").unwrap();
    assert_eq!(failing_check(&c), "witness_derivation");
}

#[test]
fn corrupted_bytes_fail() {
    let text = cert("finite: x^2-2; x^3-3").to_canonical_string();
    // the top-level key sorts after the check records, which also hold primes
    let at = text.rfind("\"prime\":13,\"witness\"").unwrap() + "\"prime\":1".len();
    let bytes = text.as_bytes();
    for b in b"0124567890x " {
        if *b == bytes[at] {
            continue;
        }
        let mut v = bytes.to_vec();
        v[at] = *b;
        let corrupted = String::from_utf8(v).unwrap();
        let ok = WitnessCertificate::parse(&corrupted)
            .map(|c| verify_certificate(&c).is_ok())
            .unwrap_or(false);
        assert!(!ok, "{corrupted}");
    }
}

#[test]
fn radical_powers_never_rational() {
    for p in [2u64, 3, 5, 7] {
        for m in 2..=5 {
            for n in 1..=50 {
                assert!(!radical_power_membership(p, m, n).in_q, "p={p} m={m} n={n}");
            }
        }
    }
}

#[test]
fn radical_basis_powers_have_prime_degree() {
    for spec in ["finite: x^2+1", "degree = 5"] {
        let c = cert(spec);
        let p: usize = c.prime.to_string().parse().unwrap();
        let theta = Poly::monomial(rat_int(1), p);
        let k = NumberField::new(&(&theta - &Poly::constant(rat_int(p as i64)))).unwrap();
        let w = &k.one() + &k.generator();
        assert_eq!(minimal_polynomial(&w), c.witness_min_poly);
        let mut pw = k.one();
        for n in 1..=25 {
            pw = &pw * &w;
            assert_eq!(element_degree(&pw), p, "{spec}: power {n}");
        }
    }
}

#[test]
fn nonsolvable_powers_have_prime_degree() {
    let c = cert("qsolv");
    assert!(!member_qsolv(&c.witness_min_poly).unwrap());
    let k = NumberField::new(&c.witness_min_poly).unwrap();
    let mut pw = k.one();
    for n in 1..=10 {
        pw = &pw * &k.generator();
        assert_eq!(minimal_polynomial(&pw).deg(), 5, "power {n}");
    }
}

#[test]
fn qab_membership() {
    for n in 1..=30 {
        assert!(member_qab(&cyclotomic(n)).unwrap());
    }
    for n in 3..=5 {
        let f = &Poly::monomial(rat_int(1), n) - &Poly::constant(rat_int(2));
        assert!(!member_qab(&f).unwrap());
    }
}

#[test]
fn square_root_specializations() {
    let f = BivariatePoly::parse("y^2-x").unwrap();
    let r = specialize_and_classify(&f, 1, 400).unwrap();
    for (b, o) in &r.outcomes {
        let root = (*b as f64).sqrt().round() as i64;
        let square = root * root == *b;
        assert_eq!(*o == Outcome::Reducible, square, "b = {b}");
    }
    assert_eq!(r.count(|o| *o == Outcome::Reducible), 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn finite_families_round_trip(cs in proptest::collection::vec(-3i64..=3, 2..=3)) {
        let mut cs = cs;
        cs.push(1);
        let f = Poly::from_ints(&cs);
        let spec = FamilySpec::Finite(vec![f]);
        let c = witness_for_family(&spec, 5000).unwrap();
        prop_assert!(verify_certificate(&c).is_ok());
        let back = WitnessCertificate::parse(&c.to_canonical_string()).unwrap();
        prop_assert_eq!(back, c);
    }
}
