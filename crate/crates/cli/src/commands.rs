//! One handler per subcommand.

use std::fmt::Write as _;

use serde_json::{json, Value};
use splitfield::galois::{galois_group_with_cap, is_solvable_by_radicals, GaloisError};
use splitfield::numfield::{
    automorphism_group, is_member, splitting_degree, NfError, NumberField, DEFAULT_DEGREE_CAP,
};
use splitfield::polyq::{cyclotomic, factor_q, is_irreducible, sturm_real_roots, BivariatePoly};
use splitfield::witness::{
    radical_tower_analysis, specialize_and_classify, verify_certificate, witness_for_family,
    DegreeData, FamilySpec, Outcome, WitnessCertificate, WitnessError,
};
use splitfield::{parse_poly, Poly};

use crate::{CliError, CommandRequest, Report, EXIT_OK, EXIT_REFUTED};

/// Inputs above this degree are refused as a computational limit.
pub const MAX_INPUT_DEGREE: usize = 200;
/// Largest `n` accepted by `cyclotomic`.
pub const MAX_CYCLOTOMIC_INDEX: u64 = 10_000;
/// Largest number of specializations in one scan.
pub const MAX_SPECIALIZATIONS: i64 = 1_000_000;

type CmdResult = Result<Report, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn limit(msg: impl Into<String>) -> CliError {
    CliError::Limit(msg.into())
}

fn answer(code: i32, text: String, json: Value) -> CmdResult {
    Ok(Report { code, text, json })
}

fn one_positional<'a>(req: &'a CommandRequest, what: &str) -> Result<&'a str, CliError> {
    match req.positional.as_slice() {
        [a] => Ok(a),
        [] => Err(usage(format!("{} needs {what}", req.subcommand))),
        _ => Err(usage(format!(
            "{} takes exactly one {what}",
            req.subcommand
        ))),
    }
}

fn poly_arg(text: &str) -> Result<Poly, CliError> {
    let f = parse_poly(text).map_err(|e| usage(format!("{text:?}: {e}")))?;
    if f.deg() > MAX_INPUT_DEGREE {
        return Err(limit(format!(
            "degree {} is above the input limit {MAX_INPUT_DEGREE}",
            f.deg()
        )));
    }
    Ok(f)
}

fn nonconstant(f: &Poly) -> Result<(), CliError> {
    if f.deg() == 0 {
        return Err(usage(format!("{f} is constant")));
    }
    Ok(())
}

fn irreducible_arg(text: &str) -> Result<Poly, CliError> {
    let f = poly_arg(text)?;
    nonconstant(&f)?;
    if !is_irreducible(&f) {
        return Err(usage(format!("{f} is not irreducible over Q")));
    }
    Ok(f)
}

fn cap(req: &CommandRequest) -> u64 {
    req.cap.unwrap_or(DEFAULT_DEGREE_CAP)
}

fn galois_failure(e: GaloisError) -> CliError {
    match e {
        GaloisError::DegreeCapExceeded { cap, needed } => limit(format!(
            "splitting field degree reached {needed}, above the cap {cap}"
        )),
        GaloisError::Undecidable(_) => limit(e.to_string()),
        other => usage(other.to_string()),
    }
}

fn field_failure(e: NfError) -> CliError {
    match e {
        NfError::DegreeCapExceeded { cap, needed } => limit(format!(
            "splitting field degree reached {needed}, above the cap {cap}"
        )),
        other => usage(other.to_string()),
    }
}

fn witness_failure(e: WitnessError) -> CliError {
    match e {
        WitnessError::DegreeCapExceeded { cap, needed } => limit(format!(
            "splitting field degree reached {needed}, above the cap {cap}"
        )),
        WitnessError::Family(_) | WitnessError::InvalidPrime(_) | WitnessError::EmptyFamily => {
            usage(e.to_string())
        }
        other => limit(other.to_string()),
    }
}

pub fn dispatch(req: &CommandRequest) -> CmdResult {
    match req.subcommand.as_str() {
        "factor" => factor(req),
        "galois" => galois(req),
        "splitting-degree" => splitting(req),
        "sturm" => sturm(req),
        "cyclotomic" => cyclotomic_cmd(req),
        "member" => member(req),
        "witness" => witness(req),
        "verify" => verify(req),
        "specialize" => specialize(req),
        "qab" => qab(req),
        "qsolv" => qsolv(req),
        "radical-tower" => radical_tower(req),
        other => Err(usage(format!("unknown command {other:?}"))),
    }
}

fn factor(req: &CommandRequest) -> CmdResult {
    let f = poly_arg(one_positional(req, "a polynomial")?)?;
    if f.is_zero() {
        return answer(EXIT_OK, "0".into(), json!({"unit": "0", "factors": []}));
    }
    let fac = factor_q(&f);
    // show integer primitive factors and move their leading coefficients
    // into the unit
    let mut unit = fac.unit.clone();
    let mut prims = Vec::with_capacity(fac.factors.len());
    for (g, m) in &fac.factors {
        let prim = g.primitive_rational();
        for _ in 0..*m {
            unit = &unit / &prim.lc();
        }
        prims.push((prim, *m));
    }
    let mut text = String::new();
    let one = unit == splitfield::arith::rat_int(1);
    if !one || prims.is_empty() {
        if unit == splitfield::arith::rat_int(-1) && !prims.is_empty() {
            text.push('-');
        } else {
            text.push_str(&unit.to_string());
            if !prims.is_empty() {
                text.push('*');
            }
        }
    }
    for (g, m) in &prims {
        let _ = write!(text, "({g})");
        if *m > 1 {
            let _ = write!(text, "^{m}");
        }
    }
    let factors: Vec<Value> = prims
        .iter()
        .map(|(g, m)| json!({"factor": g.to_string(), "multiplicity": m}))
        .collect();
    answer(
        EXIT_OK,
        text,
        json!({"unit": unit.to_string(), "factors": factors}),
    )
}

fn galois(req: &CommandRequest) -> CmdResult {
    let f = irreducible_arg(one_positional(req, "a polynomial")?)?;
    let class = galois_group_with_cap(&f, cap(req)).map_err(galois_failure)?;
    let mut text = format!(
        "group {} (order {}), {}",
        class.tag,
        class.tag.order(),
        if class.solvable {
            "solvable"
        } else {
            "not solvable"
        }
    );
    for ev in &class.evidence {
        let _ = write!(text, "\n  {ev}");
    }
    answer(EXIT_OK, text, class.to_json())
}

fn splitting(req: &CommandRequest) -> CmdResult {
    let f = poly_arg(one_positional(req, "a polynomial")?)?;
    if f.is_zero() {
        return Err(usage("the zero polynomial has no splitting field"));
    }
    let t = splitting_degree(&f, cap(req)).map_err(field_failure)?;
    answer(
        EXIT_OK,
        format!("degree {} (steps {t})", t.total_degree),
        json!({"total_degree": t.total_degree, "steps": t.steps}),
    )
}

fn sturm(req: &CommandRequest) -> CmdResult {
    let f = poly_arg(one_positional(req, "a polynomial")?)?;
    if f.is_zero() {
        return Err(usage("the zero polynomial has infinitely many roots"));
    }
    let n = sturm_real_roots(&f).map_err(|e| usage(e.to_string()))?;
    let s = if n == 1 { "" } else { "s" };
    answer(
        EXIT_OK,
        format!("{n} distinct real root{s}"),
        json!({"real_roots": n}),
    )
}

fn cyclotomic_cmd(req: &CommandRequest) -> CmdResult {
    let arg = one_positional(req, "an index n")?;
    let n: u64 = arg
        .parse()
        .map_err(|_| usage(format!("expected a positive integer, got {arg:?}")))?;
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    if n > MAX_CYCLOTOMIC_INDEX {
        return Err(limit(format!(
            "n = {n} is above the limit {MAX_CYCLOTOMIC_INDEX}"
        )));
    }
    let phi = cyclotomic(n as usize);
    answer(
        EXIT_OK,
        phi.to_string(),
        json!({"n": n, "degree": phi.deg(), "poly": phi.to_string()}),
    )
}

fn member(req: &CommandRequest) -> CmdResult {
    let target = poly_arg(one_positional(req, "a polynomial")?)?;
    nonconstant(&target)?;
    let m = irreducible_arg(
        req.field
            .as_deref()
            .ok_or_else(|| usage("member needs --in <poly>"))?,
    )?;
    let k = NumberField::new(&m.monic()).map_err(field_failure)?;
    let res = is_member(&target, &k);
    let (code, text) = match &res.witness {
        Some(w) => (
            EXIT_OK,
            format!(
                "member: {w} is a root of {target}, where a is a root of {}",
                k.min_poly()
            ),
        ),
        None => (
            EXIT_REFUTED,
            format!(
                "not a member: {target} has no root in Q(a), a a root of {}",
                k.min_poly()
            ),
        ),
    };
    let json = json!({
        "member": res.member,
        "root": res.witness.as_ref().map(|w| w.to_string()),
        "field": k.min_poly().to_string(),
    });
    answer(code, text, json)
}

fn describe_degree(d: &DegreeData) -> String {
    match d {
        DegreeData::ExactSplitting(t) => format!("t = {} (splitting tower {t})", t.total_degree),
        DegreeData::ProductBound(k) => {
            format!("every finite subextension has degree a product of factors <= {k}")
        }
        DegreeData::PrefixOnly { s, tower } => match tower {
            Some(t) => format!(
                "prefix of {s} checked: t_{s} = {} (tower {t})",
                t.total_degree
            ),
            None => format!("prefix of {s} checked"),
        },
    }
}

fn witness(req: &CommandRequest) -> CmdResult {
    let spec: FamilySpec = one_positional(req, "a family")?
        .parse()
        .map_err(|e: WitnessError| usage(e.to_string()))?;
    let c = witness_for_family(&spec, cap(req)).map_err(witness_failure)?;
    let canonical = c.to_canonical_string();
    if let Some(path) = &req.emit {
        std::fs::write(path, format!("{canonical}\n"))
            .map_err(|e| limit(format!("cannot write {path}: {e}")))?;
    }
    let replay = verify_certificate(&c);
    let mut text = format!(
        "family: {}\n{}\n",
        c.family,
        describe_degree(&c.degree_data)
    );
    let _ = writeln!(text, "p = {}", c.prime);
    let _ = writeln!(
        text,
        "witness: {}, minimal polynomial {}",
        c.description, c.witness_min_poly
    );
    let _ = writeln!(text, "obstruction: {}", c.obstruction);
    let _ = writeln!(text, "checks:");
    for chk in &c.checks {
        let _ = writeln!(text, "  {} {} -> {}", chk.op, chk.inputs, chk.expected);
    }
    let code = match &replay {
        Ok(log) => {
            let _ = write!(text, "verified: {} checks replayed", log.len() - 1);
            EXIT_OK
        }
        Err(f) => {
            let _ = write!(text, "verification failed: {f}");
            EXIT_REFUTED
        }
    };
    answer(code, text, c.to_json())
}

fn verify(req: &CommandRequest) -> CmdResult {
    let path = one_positional(req, "a certificate file")?;
    let bytes = std::fs::read(path).map_err(|e| limit(format!("cannot read {path}: {e}")))?;
    let refuted = |msg: String| {
        answer(
            EXIT_REFUTED,
            format!("verification failed: {msg}"),
            json!({"verified": false, "failure": msg}),
        )
    };
    let Ok(text) = String::from_utf8(bytes) else {
        return refuted("certificate is not UTF-8".into());
    };
    let c = match WitnessCertificate::parse(&text) {
        Ok(c) => c,
        Err(e) => return refuted(e.to_string()),
    };
    match verify_certificate(&c) {
        Ok(log) => answer(
            EXIT_OK,
            format!("{}\nverified", log.join("\n")),
            json!({"verified": true, "log": log}),
        ),
        Err(f) => refuted(f.to_string()),
    }
}

fn specialize(req: &CommandRequest) -> CmdResult {
    let text = one_positional(req, "a polynomial in x and y")?;
    let f = BivariatePoly::parse(text).map_err(|e| usage(format!("{text:?}: {e}")))?;
    let (lo, hi) = req
        .range
        .ok_or_else(|| usage("specialize needs --range a..b"))?;
    if hi.abs_diff(lo) >= MAX_SPECIALIZATIONS as u64 {
        return Err(limit(format!(
            "ranges are limited to {MAX_SPECIALIZATIONS} values"
        )));
    }
    if f.degree_y() > MAX_INPUT_DEGREE
        || (0..=f.degree_y()).any(|j| f.coeff_y(j).deg() > MAX_INPUT_DEGREE)
    {
        return Err(limit(format!("degrees are limited to {MAX_INPUT_DEGREE}")));
    }
    let scan = || specialize_and_classify(&f, lo, hi);
    let report = match req.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| limit(e.to_string()))?
            .install(scan),
        None => scan(),
    }
    .map_err(|e| usage(e.to_string()))?;
    let outcomes: Vec<Value> = report
        .outcomes
        .iter()
        .map(|(b, o)| {
            let (kind, group) = match o {
                Outcome::Degenerate => ("degenerate", None),
                Outcome::Reducible => ("reducible", None),
                Outcome::Irreducible => ("irreducible", None),
                Outcome::IrreducibleWithGroup(g) => ("irreducible", Some(g.to_string())),
            };
            json!({"b": b, "outcome": kind, "group": group})
        })
        .collect();
    let json = json!({
        "input": report.input.to_string(),
        "range": [lo, hi],
        "outcomes": outcomes,
        "irreducible": report.irreducible_count(),
    });
    answer(EXIT_OK, report.to_string(), json)
}

fn qab(req: &CommandRequest) -> CmdResult {
    let m = irreducible_arg(one_positional(req, "a polynomial")?)?;
    let (normal, abelian, order) = if m.deg() == 1 {
        (true, true, 1)
    } else {
        let k = NumberField::new(&m.monic()).map_err(field_failure)?;
        let auts = automorphism_group(&k);
        (auts.is_normal, auts.is_abelian, auts.images.len())
    };
    let member = normal && abelian;
    let text = if member {
        format!("member of Q_ab (abelian Galois group of order {order})")
    } else if !normal {
        let s = if order == 1 { "" } else { "s" };
        format!(
            "not a member (Q[x]/({m}) is not normal: {order} automorphism{s}, degree {})",
            m.deg()
        )
    } else {
        format!("not a member (non-abelian Galois group of order {order})")
    };
    let code = if member { EXIT_OK } else { EXIT_REFUTED };
    answer(
        code,
        text,
        json!({"member": member, "normal": normal, "abelian": abelian, "automorphisms": order}),
    )
}

fn qsolv(req: &CommandRequest) -> CmdResult {
    let m = irreducible_arg(one_positional(req, "a polynomial")?)?;
    let s = is_solvable_by_radicals(&m).map_err(galois_failure)?;
    let reason = match s.group {
        Some(g) => format!(
            "{} Galois group {g}",
            if s.solvable {
                "solvable"
            } else {
                "non-solvable"
            }
        ),
        None => format!("Galois group S_{} by the real-root criterion", m.deg()),
    };
    let (code, text) = if s.solvable {
        (EXIT_OK, format!("member ({reason})"))
    } else {
        (EXIT_REFUTED, format!("not a member ({reason})"))
    };
    answer(
        code,
        text,
        json!({"member": s.solvable, "group": s.group.map(|g| g.to_string())}),
    )
}

fn radical_tower(req: &CommandRequest) -> CmdResult {
    let arg = one_positional(req, "n_max")?;
    let n: u32 = arg
        .parse()
        .map_err(|_| usage(format!("expected an integer in 3..=8, got {arg:?}")))?;
    let r = radical_tower_analysis(n, cap(req)).map_err(|e| match e {
        WitnessError::OutOfRange(m) => usage(m),
        other => witness_failure(other),
    })?;
    let json = json!({
        "n_max": r.n_max,
        "total_degree": r.tower.total_degree,
        "steps": r.tower.steps,
        "sqrt2_in_field": r.sqrt2_in_field,
        "sqrt2": r.sqrt2,
        "relative_degree": r.relative_degree,
        "contradicts_claim": r.contradicts_claim,
    });
    answer(EXIT_OK, r.to_string(), json)
}
