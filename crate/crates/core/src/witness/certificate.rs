//! Certificates, their canonical JSON form and independent replay.
//!
//! A certificate's check list is a function of its other fields, so the
//! verifier rebuilds it, replays every entry with the primitives of
//! `polyq`, `numfield` and `galois`, and finally compares it with the
//! recorded list.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;

use super::construct::{nonsolvable_poly, radical_power_membership};
use super::membership::member_qab;
use super::{FamilySpec, WitnessError};
use crate::arith::{is_prime, parse_integer, Integer};
use crate::galois::is_solvable_by_radicals;
use crate::numfield::{
    element_degree, minimal_polynomial, splitting_degree, NumberField, TowerSummary,
};
use crate::polyq::{eisenstein_witness, is_irreducible, parse_poly, sturm_real_roots, Poly};

/// Why no power of the witness lies in the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// `1 + p^(1/p)` has degree `p` and no rational power, and `p` does not
    /// divide the field degree.
    RadicalBasis,
    /// The witness and all its powers are not expressible by radicals.
    NonSolvable,
    /// The witness and all its powers generate a non-abelian field.
    AbelianObstruction,
}

impl Obstruction {
    pub fn name(self) -> &'static str {
        match self {
            Obstruction::RadicalBasis => "RADICAL_BASIS",
            Obstruction::NonSolvable => "NON_SOLVABLE",
            Obstruction::AbelianObstruction => "ABELIAN_OBSTRUCTION",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            Obstruction::RadicalBasis,
            Obstruction::NonSolvable,
            Obstruction::AbelianObstruction,
        ]
        .into_iter()
        .find(|o| o.name() == s)
    }

    /// The obstruction a certificate for `family` must use.
    pub fn for_family(family: &FamilySpec) -> Self {
        match family {
            FamilySpec::Finite(_) | FamilySpec::FixedDegree(_) => Obstruction::RadicalBasis,
            FamilySpec::Cyclotomic => Obstruction::AbelianObstruction,
            _ => Obstruction::NonSolvable,
        }
    }

    /// Text describing the witness for prime `p`.
    pub fn describe(self, p: &Integer) -> String {
        match self {
            Obstruction::NonSolvable => format!("root of x^{p} - 4*x + 2"),
            _ => format!("1 + {p}^(1/{p})"),
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the degree of the family's field is controlled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeData {
    /// The field is finite and its degree was computed.
    ExactSplitting(TowerSummary),
    /// Every finite subextension has degree a product of factors at most `k`.
    ProductBound(u64),
    /// Only the first `s` family members were checked, with the tower of
    /// their product when `s > 0` and it was computed.
    PrefixOnly {
        s: usize,
        tower: Option<TowerSummary>,
    },
}

/// One replayable check: an operation, its inputs and the value the
/// argument needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub op: String,
    pub inputs: Value,
    pub expected: Value,
}

fn check(op: &str, inputs: Value, expected: Value) -> Check {
    Check {
        op: op.to_string(),
        inputs,
        expected,
    }
}

/// How many powers the verifier samples. The claims cover every power
/// structurally, the samples are a second line of defence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReplayPolicy {
    /// Powers of `1 + p^(1/p)` expanded in the radical basis.
    pub radical_powers: u32,
    /// Powers of `1 + p^(1/p)` whose degree is recomputed.
    pub power_degrees: u32,
    /// Powers of a non-solvable witness whose degree is recomputed.
    pub nonsolvable_powers: u32,
}

impl Default for ReplayPolicy {
    fn default() -> Self {
        ReplayPolicy {
            radical_powers: 50,
            power_degrees: 25,
            nonsolvable_powers: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("replay failed at {check}: {detail}")]
pub struct ReplayFailure {
    pub check: String,
    pub detail: String,
}

fn failure(check: &str, detail: impl Into<String>) -> ReplayFailure {
    ReplayFailure {
        check: check.to_string(),
        detail: detail.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub family: FamilySpec,
    pub witness_min_poly: Poly,
    pub description: String,
    pub prime: Integer,
    pub obstruction: Obstruction,
    pub degree_data: DegreeData,
    pub checks: Vec<Check>,
}

fn int_json(n: &Integer) -> Value {
    n.to_u64()
        .map_or_else(|| Value::String(n.to_string()), Value::from)
}

fn tower_json(t: &TowerSummary) -> Value {
    json!({"steps": t.steps, "total_degree": t.total_degree})
}

fn polys_json(ps: &[Poly]) -> Value {
    Value::from(ps.iter().map(Poly::to_string).collect::<Vec<_>>())
}

impl WitnessCertificate {
    /// Assembles a certificate and records the checks its fields call for.
    pub(crate) fn assemble(
        family: FamilySpec,
        witness_min_poly: Poly,
        prime: Integer,
        obstruction: Obstruction,
        degree_data: DegreeData,
    ) -> Self {
        let mut c = WitnessCertificate {
            family,
            witness_min_poly,
            description: obstruction.describe(&prime),
            prime,
            obstruction,
            degree_data,
            checks: Vec::new(),
        };
        c.checks = c
            .required_checks(&ReplayPolicy::default())
            .expect("constructed certificates are consistent");
        c
    }

    /// The checks the other fields call for, in replay order.
    pub fn required_checks(&self, policy: &ReplayPolicy) -> Result<Vec<Check>, ReplayFailure> {
        let pj = int_json(&self.prime);
        let w = self.witness_min_poly.to_string();
        let want = Obstruction::for_family(&self.family);
        if want != self.obstruction {
            return Err(failure(
                "obstruction",
                format!(
                    "family {} needs {want}, found {}",
                    self.family, self.obstruction
                ),
            ));
        }
        let mut out = vec![
            check("primality", json!({"n": pj}), json!(true)),
            check("degree", json!({"poly": w}), pj.clone()),
            check("irreducibility", json!({"poly": w}), json!(true)),
            check(
                "description",
                json!({"obstruction": self.obstruction.name(), "prime": pj}),
                json!(self.description),
            ),
        ];
        match self.obstruction {
            Obstruction::RadicalBasis | Obstruction::AbelianObstruction => {
                let field = Value::from(format!("x^{} - {}", self.prime, self.prime));
                out.push(check(
                    "witness_derivation",
                    json!({"field": field, "element": "x + 1"}),
                    json!(w),
                ));
                out.push(check(
                    "radical_basis",
                    json!({"prime": pj, "root_degree": pj, "powers": policy.radical_powers}),
                    json!(false),
                ));
                out.push(check(
                    "power_degrees",
                    json!({"field": field, "element": "x + 1", "powers": policy.power_degrees}),
                    pj.clone(),
                ));
                if self.obstruction == Obstruction::AbelianObstruction {
                    out.push(check("abelian", json!({"poly": w}), json!(false)));
                }
            }
            Obstruction::NonSolvable => {
                out.push(check("witness_form", json!({"prime": pj}), json!(w)));
                out.push(check("eisenstein", json!({"poly": w}), json!(2)));
                let real = self
                    .prime
                    .to_u64()
                    .map_or(Value::Null, |p| json!(p.saturating_sub(2)));
                out.push(check("real_roots", json!({"poly": w}), real));
                out.push(check("solvability", json!({"poly": w}), json!(false)));
                out.push(check(
                    "power_degrees",
                    json!({"field": w, "element": "x", "powers": policy.nonsolvable_powers}),
                    pj.clone(),
                ));
            }
        }
        self.degree_checks(&pj, &mut out)?;
        Ok(out)
    }

    fn degree_checks(&self, pj: &Value, out: &mut Vec<Check>) -> Result<(), ReplayFailure> {
        let mismatch = || {
            failure(
                "degree_data",
                format!("family {} does not admit this degree data", self.family),
            )
        };
        let exceeds = |bound: Value| {
            check(
                "prime_exceeds",
                json!({"prime": pj, "bound": bound}),
                json!(true),
            )
        };
        let split = |ps: &[Poly], t: &TowerSummary| {
            [
                check(
                    "splitting_degree",
                    json!({"polys": polys_json(ps)}),
                    tower_json(t),
                ),
                check(
                    "coprime",
                    json!({"prime": pj, "degree": t.total_degree}),
                    json!(true),
                ),
            ]
        };
        match (&self.family, &self.degree_data) {
            (FamilySpec::Finite(ps), DegreeData::ExactSplitting(t)) => {
                let [s, c] = split(ps, t);
                out.push(s);
                out.push(exceeds(json!(t.total_degree)));
                out.push(c);
            }
            (FamilySpec::FixedDegree(k), DegreeData::ProductBound(b)) if k == b => {
                out.push(exceeds(json!(k)));
            }
            (
                FamilySpec::BoundedDegree { k, prefix, prime },
                DegreeData::PrefixOnly { s, tower },
            ) if *s == prefix.len() && tower.is_some() == !prefix.is_empty() => {
                out.push(exceeds(json!(k.max(&3))));
                if let Some(given) = prime {
                    out.push(exceeds(json!(given - 1)));
                }
                out.push(check(
                    "prefix_degrees",
                    json!({"polys": polys_json(prefix), "bound": k}),
                    json!(true),
                ));
                if let Some(t) = tower {
                    out.extend(split(prefix, t));
                }
            }
            (
                FamilySpec::RadicalTower { base, from, to },
                DegreeData::PrefixOnly { s, tower: None },
            ) if *s == (to - from + 1) as usize => {
                out.push(check(
                    "radical_members",
                    json!({"base": base, "from": from, "to": to}),
                    json!(true),
                ));
            }
            (
                FamilySpec::Cyclotomic | FamilySpec::Solvable,
                DegreeData::PrefixOnly { s: 0, tower: None },
            ) => {}
            _ => return Err(mismatch()),
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let degree_data = match &self.degree_data {
            DegreeData::ExactSplitting(t) => {
                json!({"kind": "EXACT_SPLITTING", "steps": t.steps, "total_degree": t.total_degree})
            }
            DegreeData::ProductBound(k) => json!({"kind": "PRODUCT_BOUND", "k": k}),
            DegreeData::PrefixOnly { s, tower } => {
                let mut m = json!({"kind": "PREFIX_ONLY", "s": s});
                if let Some(t) = tower {
                    m["steps"] = json!(t.steps);
                    m["total_degree"] = json!(t.total_degree);
                }
                m
            }
        };
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"op": c.op, "inputs": c.inputs, "expected": c.expected}))
            .collect();
        json!({
            "family": self.family.to_string(),
            "witness": {
                "min_poly": self.witness_min_poly.to_string(),
                "description": self.description,
            },
            "prime": int_json(&self.prime),
            "obstruction": self.obstruction.name(),
            "degree_data": degree_data,
            "checks": checks,
        })
    }

    /// Sorted keys, no insignificant whitespace.
    pub fn to_canonical_string(&self) -> String {
        // serde_json maps keep their keys sorted
        serde_json::to_string(&self.to_json()).expect("JSON values serialize")
    }

    pub fn from_json(v: &Value) -> Result<Self, WitnessError> {
        let top = fields(
            v,
            &[
                "checks",
                "degree_data",
                "family",
                "obstruction",
                "prime",
                "witness",
            ],
        )?;
        let family: FamilySpec = str_field(top, "family")?.parse()?;
        let witness = fields(&top["witness"], &["description", "min_poly"])?;
        let witness_min_poly = parse_poly(str_field(witness, "min_poly")?)
            .map_err(|e| malformed(format!("witness polynomial: {e}")))?;
        let description = str_field(witness, "description")?.to_string();
        let prime = int_value(&top["prime"]).ok_or_else(|| malformed("prime is not an integer"))?;
        let obstruction = Obstruction::from_name(str_field(top, "obstruction")?)
            .ok_or_else(|| malformed("unknown obstruction"))?;
        let degree_data = degree_data_from_json(&top["degree_data"])?;
        let checks = top["checks"]
            .as_array()
            .ok_or_else(|| malformed("checks is not an array"))?
            .iter()
            .map(|c| {
                let m = fields(c, &["expected", "inputs", "op"])?;
                Ok(Check {
                    op: str_field(m, "op")?.to_string(),
                    inputs: m["inputs"].clone(),
                    expected: m["expected"].clone(),
                })
            })
            .collect::<Result<Vec<_>, WitnessError>>()?;
        Ok(WitnessCertificate {
            family,
            witness_min_poly,
            description,
            prime,
            obstruction,
            degree_data,
            checks,
        })
    }

    pub fn parse(text: &str) -> Result<Self, WitnessError> {
        let v: Value = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        Self::from_json(&v)
    }
}

fn malformed(msg: impl Into<String>) -> WitnessError {
    WitnessError::Certificate(msg.into())
}

/// The object behind `v`, which must have exactly the keys `keys`.
fn fields<'a>(v: &'a Value, keys: &[&str]) -> Result<&'a Map<String, Value>, WitnessError> {
    let m = v
        .as_object()
        .ok_or_else(|| malformed("expected an object"))?;
    if m.len() != keys.len() || keys.iter().any(|k| !m.contains_key(*k)) {
        let found: Vec<&String> = m.keys().collect();
        return Err(malformed(format!(
            "expected keys {keys:?}, found {found:?}"
        )));
    }
    Ok(m)
}

fn str_field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a str, WitnessError> {
    m[key]
        .as_str()
        .ok_or_else(|| malformed(format!("{key} is not a string")))
}

fn int_value(v: &Value) -> Option<Integer> {
    match v {
        Value::Number(n) => n.as_u64().map(Integer::from),
        Value::String(s) => parse_integer(s)
            .ok()
            .filter(|n| n.sign() != num_bigint::Sign::Minus),
        _ => None,
    }
}

fn tower_from(m: &Map<String, Value>) -> Result<TowerSummary, WitnessError> {
    let steps = m["steps"]
        .as_array()
        .ok_or_else(|| malformed("steps is not an array"))?
        .iter()
        .map(|s| {
            s.as_u64()
                .ok_or_else(|| malformed("step is not an integer"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let total_degree = m["total_degree"]
        .as_u64()
        .ok_or_else(|| malformed("total_degree is not an integer"))?;
    Ok(TowerSummary {
        steps,
        total_degree,
    })
}

fn degree_data_from_json(v: &Value) -> Result<DegreeData, WitnessError> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("degree_data has no kind"))?;
    match kind {
        "EXACT_SPLITTING" => {
            let m = fields(v, &["kind", "steps", "total_degree"])?;
            Ok(DegreeData::ExactSplitting(tower_from(m)?))
        }
        "PRODUCT_BOUND" => {
            let m = fields(v, &["k", "kind"])?;
            let k = m["k"]
                .as_u64()
                .ok_or_else(|| malformed("k is not an integer"))?;
            Ok(DegreeData::ProductBound(k))
        }
        "PREFIX_ONLY" => {
            let with_tower = v.get("steps").is_some();
            let m = if with_tower {
                fields(v, &["kind", "s", "steps", "total_degree"])?
            } else {
                fields(v, &["kind", "s"])?
            };
            let s = m["s"]
                .as_u64()
                .ok_or_else(|| malformed("s is not an integer"))? as usize;
            let tower = if with_tower {
                Some(tower_from(m)?)
            } else {
                None
            };
            Ok(DegreeData::PrefixOnly { s, tower })
        }
        other => Err(malformed(format!("unknown degree_data kind {other:?}"))),
    }
}

/// Replays a certificate under the default sampling policy and returns a
/// log line per check.
pub fn verify_certificate(c: &WitnessCertificate) -> Result<Vec<String>, ReplayFailure> {
    verify_with_policy(c, &ReplayPolicy::default())
}

/// As [`verify_certificate`]. The recorded checks must match the ones
/// `policy` calls for.
pub fn verify_with_policy(
    c: &WitnessCertificate,
    policy: &ReplayPolicy,
) -> Result<Vec<String>, ReplayFailure> {
    let required = c.required_checks(policy)?;
    let mut log = Vec::new();
    for chk in &required {
        replay(chk).map_err(|d| failure(&chk.op, d))?;
        log.push(format!("{}: ok", chk.op));
    }
    if let Some(i) =
        (0..required.len().max(c.checks.len())).find(|&i| required.get(i) != c.checks.get(i))
    {
        let op = c.checks.get(i).map_or("missing", |k| k.op.as_str());
        return Err(failure(
            "check_records",
            format!("record {i} ({op}) differs from the check the certificate calls for"),
        ));
    }
    log.push("check_records: ok".to_string());
    Ok(log)
}

type Replay = Result<(), String>;

fn input<'a>(chk: &'a Check, key: &str) -> Result<&'a Value, String> {
    chk.inputs
        .get(key)
        .ok_or_else(|| format!("input {key} missing"))
}

fn poly_input(chk: &Check, key: &str) -> Result<Poly, String> {
    let s = input(chk, key)?
        .as_str()
        .ok_or(format!("input {key} is not a string"))?;
    parse_poly(s).map_err(|e| format!("input {key}: {e}"))
}

fn polys_input(chk: &Check, key: &str) -> Result<Vec<Poly>, String> {
    input(chk, key)?
        .as_array()
        .ok_or(format!("input {key} is not an array"))?
        .iter()
        .map(|v| {
            let s = v.as_str().ok_or("polynomial is not a string")?;
            parse_poly(s).map_err(|e| e.to_string())
        })
        .collect()
}

fn int_input(chk: &Check, key: &str) -> Result<Integer, String> {
    int_value(input(chk, key)?).ok_or(format!("input {key} is not a nonnegative integer"))
}

fn small_input(chk: &Check, key: &str) -> Result<u64, String> {
    int_input(chk, key)?
        .to_u64()
        .ok_or(format!("input {key} is too large"))
}

fn expect_eq(chk: &Check, actual: Value) -> Replay {
    if actual == chk.expected {
        Ok(())
    } else {
        Err(format!("expected {}, got {actual}", chk.expected))
    }
}

fn expect_poly(chk: &Check, actual: &Poly) -> Replay {
    let want = chk
        .expected
        .as_str()
        .and_then(|s| parse_poly(s).ok())
        .ok_or("expected value is not a polynomial")?;
    if &want == actual {
        Ok(())
    } else {
        Err(format!("expected {want}, got {actual}"))
    }
}

fn field_input(chk: &Check) -> Result<NumberField, String> {
    let m = poly_input(chk, "field")?;
    if m.deg() > 0 && !is_irreducible(&m) {
        return Err(format!("{m} is not irreducible"));
    }
    NumberField::new(&m).map_err(|e| e.to_string())
}

fn replay(chk: &Check) -> Replay {
    match chk.op.as_str() {
        "primality" => {
            let n = int_input(chk, "n")?;
            expect_eq(chk, json!(is_prime(&n).map_err(|e| e.to_string())?))
        }
        "degree" => expect_eq(chk, json!(poly_input(chk, "poly")?.deg())),
        "irreducibility" => expect_eq(chk, json!(is_irreducible(&poly_input(chk, "poly")?))),
        "description" => {
            let o = input(chk, "obstruction")?
                .as_str()
                .and_then(Obstruction::from_name)
                .ok_or("unknown obstruction")?;
            expect_eq(chk, json!(o.describe(&int_input(chk, "prime")?)))
        }
        "witness_derivation" => {
            let k = field_input(chk)?;
            let e = k.from_poly(&poly_input(chk, "element")?);
            expect_poly(chk, &minimal_polynomial(&e))
        }
        "radical_basis" => {
            let p = small_input(chk, "prime")?;
            let m = small_input(chk, "root_degree")? as usize;
            let powers = small_input(chk, "powers")? as u32;
            if m == 0 {
                return Err("root degree must be positive".into());
            }
            let hit = (1..=powers).find(|&n| radical_power_membership(p, m, n).in_q);
            if let Some(n) = hit {
                return Err(format!("(1 + {p}^(1/{m}))^{n} is rational"));
            }
            expect_eq(chk, json!(false))
        }
        "power_degrees" => {
            let k = field_input(chk)?;
            let e = k.from_poly(&poly_input(chk, "element")?);
            let powers = small_input(chk, "powers")? as u32;
            let mut pw = k.one();
            for n in 1..=powers {
                pw = &pw * &e;
                let d = json!(element_degree(&pw));
                if d != chk.expected {
                    return Err(format!(
                        "power {n} has degree {d}, expected {}",
                        chk.expected
                    ));
                }
            }
            Ok(())
        }
        "abelian" => {
            let m = poly_input(chk, "poly")?;
            expect_eq(chk, json!(member_qab(&m).map_err(|e| e.to_string())?))
        }
        "witness_form" => {
            let p = small_input(chk, "prime")?;
            if p > crate::polyq::MAX_EXPONENT as u64 {
                return Err(format!("prime {p} is too large for a polynomial exponent"));
            }
            expect_poly(chk, &nonsolvable_poly(p as usize))
        }
        "eisenstein" => {
            let q = eisenstein_witness(&poly_input(chk, "poly")?).map_err(|e| e.to_string())?;
            expect_eq(chk, q.map_or(Value::Null, |q| int_json(&q)))
        }
        "real_roots" => {
            let n = sturm_real_roots(&poly_input(chk, "poly")?).map_err(|e| e.to_string())?;
            expect_eq(chk, json!(n))
        }
        "solvability" => {
            let s =
                is_solvable_by_radicals(&poly_input(chk, "poly")?).map_err(|e| e.to_string())?;
            expect_eq(chk, json!(s.solvable))
        }
        "splitting_degree" => {
            let product = polys_input(chk, "polys")?
                .iter()
                .fold(Poly::one(), |acc, f| &acc * f);
            if product.is_zero() {
                return Err("product of the family is zero".into());
            }
            // the recorded degree is exactly enough room for the tower
            let cap = chk
                .expected
                .get("total_degree")
                .and_then(Value::as_u64)
                .ok_or("expected value has no total_degree")?;
            let t = splitting_degree(&product, cap).map_err(|e| e.to_string())?;
            expect_eq(chk, tower_json(&t))
        }
        "prime_exceeds" => {
            let ok = int_input(chk, "prime")? > int_input(chk, "bound")?;
            expect_eq(chk, json!(ok))
        }
        "coprime" => {
            let p = int_input(chk, "prime")?;
            if p.is_zero() {
                return Err("prime is zero".into());
            }
            let ok = !(int_input(chk, "degree")? % &p).is_zero();
            expect_eq(chk, json!(ok))
        }
        "prefix_degrees" => {
            let k = small_input(chk, "bound")?;
            let ok = polys_input(chk, "polys")?
                .iter()
                .all(|f| !f.is_zero() && f.deg() as u64 <= k);
            expect_eq(chk, json!(ok))
        }
        "radical_members" => {
            // x^n - b has the roots ζ_n^i b^(1/n), all radicals
            let base = input(chk, "base")?
                .as_i64()
                .ok_or("base is not an integer")?;
            let from = small_input(chk, "from")?;
            let to = small_input(chk, "to")?;
            expect_eq(chk, json!(base != 0 && 2 <= from && from <= to))
        }
        other => Err(format!("unknown operation {other:?}")),
    }
}
