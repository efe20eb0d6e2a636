//! Subcommand runners. Each produces text or JSON plus an exit code:
//! 0 when every check passes, 1 when a mathematical predicate fails, 2 on bad input.

use crate::expr::{parse_fe, parse_modulus, parse_poly};
use crate::specfile::SpecFile;
use crate::{Cli, Command, FamilyKind, FieldArgs};
use serde::Serialize;
use std::io::Read;
use wildcover::additive::{minimal_splitting_degree, palindromic, split_shape, TwistedPoly};
use wildcover::asw::{dp_order, reduce_with_witness, sigma_level};
use wildcover::cover::{
    adapt_basis, max_jump_check, trivial_rep_check, verify_cover, Check, CoverSpec, RamificationReport,
};
use wildcover::families::{
    base_change, gamma_family, iso_criterion_n2, special_equations, special_family, universal_p5, GammaFamilyParams,
    UniversalParams,
};
use wildcover::grp::{max_jumps, GroupEngine};
use wildcover::{Error, Fe, Field, FieldCtx, Poly, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    passed: bool,
    text: String,
    json: String,
}

fn report<T: Serialize>(passed: bool, text: String, value: &T) -> Result<Report> {
    let json = serde_json::to_string_pretty(value).expect("report serializes");
    Ok(Report { passed, text, json })
}

/// Failures of a mathematical predicate, as opposed to malformed input.
fn is_math_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NotStable(_)
            | Error::RepresentationLawViolated(_)
            | Error::CheckFailed { .. }
            | Error::NotMaxJumps
            | Error::NotProportional
            | Error::WrongShape
    )
}

fn failure_tag(e: &Error) -> &'static str {
    match e {
        Error::NotStable(_) => "translation-stability",
        Error::RepresentationLawViolated(_) => "rep-law",
        Error::NotMaxJumps => "max-jumps",
        Error::WrongShape => "f1-shape",
        Error::NotProportional => "proportional-forms",
        _ => "check",
    }
}

#[derive(Serialize)]
struct ErrorJson {
    error: String,
    kind: &'static str,
    line: Option<usize>,
    col: Option<usize>,
}

fn error_output(e: &Error, json: bool) -> Output {
    let math = is_math_failure(e);
    let code = if math { 1 } else { 2 };
    let message = if math { format!("{}: {e} (violated)", failure_tag(e)) } else { e.to_string() };
    let (line, col) = match e {
        Error::Parse { line, col, .. } => (Some(*line), Some(*col)),
        _ => (None, None),
    };
    if json {
        let body = ErrorJson { error: message, kind: if math { "failed" } else { "invalid" }, line, col };
        Output { code, stdout: serde_json::to_string_pretty(&body).unwrap() + "\n", stderr: String::new() }
    } else {
        Output { code, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Runs a parsed command line; `stdin` is consulted only for the input `-`.
pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Output {
    match dispatch(cli, stdin) {
        Ok(r) => {
            let body = if cli.json { r.json } else { r.text };
            let stdout = if body.ends_with('\n') { body } else { body + "\n" };
            Output { code: if r.passed { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => error_output(&e, cli.json),
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String> {
    let io_err = |e: std::io::Error| Error::Parse { line: 0, col: 0, msg: format!("cannot read {path}: {e}") };
    if path == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn field_from(args: &FieldArgs) -> Result<Field> {
    match &args.modulus {
        Some(m) => {
            let k = FieldCtx::new(args.p, parse_modulus(m, args.p, 1, 1)?)?;
            if args.m != 1 && args.m != k.degree() {
                return Err(Error::Parse { line: 1, col: 1, msg: "m does not match the modulus degree".into() });
            }
            Ok(k)
        }
        None => FieldCtx::default_field(args.p, args.m),
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<Report> {
    match &cli.command {
        Command::Reduce { poly, field } => cmd_reduce(poly, &field_from(field)?),
        Command::Sigma { poly, field } => cmd_sigma(poly, &field_from(field)?),
        Command::Palindromic { poly, field } => cmd_palindromic(poly, &field_from(field)?, cli.ambient_bound),
        Command::Adapt { input } => cmd_adapt(&load(input, stdin)?, cli.ambient_bound),
        Command::Verify { input } => cmd_verify(&load(input, stdin)?, cli.ambient_bound),
        Command::Invariants { input } => cmd_invariants(&load(input, stdin)?, cli.ambient_bound),
        Command::Family { kind, base_change } => cmd_family(kind, base_change.as_deref(), cli.ambient_bound),
        Command::Group { input, element_order } => {
            cmd_group(&load(input, stdin)?, *element_order, cli.ambient_bound, cli.closure_bound)
        }
        Command::Iso { b0, b5, b0_prime, b5_prime, field } => {
            let k = field_from(field)?;
            let a = UniversalParams::N2 { b0: parse_fe(b0, &k)?, b5: parse_fe(b5, &k)? };
            let b = UniversalParams::N2 { b0: parse_fe(b0_prime, &k)?, b5: parse_fe(b5_prime, &k)? };
            let iso = iso_criterion_n2(&a, &b)?;
            #[derive(Serialize)]
            struct IsoJson {
                isomorphic: bool,
            }
            let text = if iso { "isomorphic" } else { "not isomorphic" };
            report(iso, text.into(), &IsoJson { isomorphic: iso })
        }
    }
}

fn load(input: &str, stdin: &mut dyn Read) -> Result<SpecFile> {
    SpecFile::parse(&read_input(input, stdin)?)
}

fn cmd_reduce(src: &str, k: &Field) -> Result<Report> {
    let f = parse_poly(src, k)?;
    let r = reduce_with_witness(&f);
    #[derive(Serialize)]
    struct ReduceJson {
        input: String,
        reduced: String,
        witness: String,
        constant: String,
        const_class: u32,
    }
    let j = ReduceJson {
        input: f.to_string(),
        reduced: r.reduced.to_string(),
        witness: r.witness.to_string(),
        constant: r.constant.to_string(),
        const_class: r.constant.trace(),
    };
    let text = format!("{}\nconstant class {}", j.reduced, j.const_class);
    report(true, text, &j)
}

fn cmd_sigma(src: &str, k: &Field) -> Result<Report> {
    let f = parse_poly(src, k)?;
    let level = sigma_level(&f)?;
    #[derive(Serialize)]
    struct SigmaJson {
        input: String,
        level: u32,
        dp_order: Option<u32>,
    }
    report(true, format!("level {level}"), &SigmaJson { input: f.to_string(), level, dp_order: dp_order(&f) })
}

fn cmd_palindromic(src: &str, k: &Field, bound: usize) -> Result<Report> {
    let f = parse_poly(src, k)?;
    let (s, c) = split_shape(&f)?;
    let ad = palindromic(&f)?;
    let split = minimal_splitting_degree(&ad, bound)?;
    #[derive(Serialize)]
    struct PalJson {
        input: String,
        s1: usize,
        c: String,
        ad: String,
        ad_twisted: String,
        splitting_degree: usize,
        zero_set_dim: usize,
    }
    let j = PalJson {
        input: f.to_string(),
        s1: s.degree().unwrap(),
        c: c.to_string(),
        ad: ad.render_x("Y"),
        ad_twisted: ad.render_f(),
        splitting_degree: split,
        zero_set_dim: ad.degree().unwrap(),
    };
    let text = format!("Ad_f = {}\nsplits over F_{}^{}, zero set of dimension {}", j.ad, k.p(), split, j.zero_set_dim);
    report(true, text, &j)
}

#[derive(Serialize)]
struct AdaptJson {
    functions: Vec<String>,
    degrees: Vec<usize>,
    jumps: Vec<usize>,
    dims: Vec<usize>,
}

fn cmd_adapt(sf: &SpecFile, _bound: usize) -> Result<Report> {
    let classes: Vec<_> = sf.functions.iter().map(wildcover::asw::reduce).collect();
    let a = adapt_basis(&classes)?;
    let j = AdaptJson {
        functions: a.functions.iter().map(|c| c.reduced.to_string()).collect(),
        degrees: a.degrees.clone(),
        jumps: a.jumps.clone(),
        dims: a.dims.clone(),
    };
    let mut text: String = j.functions.iter().enumerate().map(|(i, f)| format!("f{} = {f}\n", i + 1)).collect();
    text += &format!("degrees {:?}, jumps {:?}", j.degrees, j.jumps);
    report(true, text, &j)
}

/// The cover rebuilt over an adapted basis of its classes.
fn adapted_cover(sf: &SpecFile, bound: usize) -> Result<CoverSpec> {
    let spec = sf.to_cover(bound)?;
    let a = adapt_basis(&spec.functions)?;
    CoverSpec::from_classes(&spec.ambient, a.functions, spec.v_basis)
}

#[derive(Serialize)]
struct RamJson {
    p: u32,
    n: usize,
    v: usize,
    degrees: Vec<usize>,
    different: u128,
    genus: u128,
    order: u128,
    ratio: Option<String>,
    ratio_reduced: Option<String>,
    is_big_action: bool,
    hurwitz_ok: bool,
}

impl From<&RamificationReport> for RamJson {
    fn from(r: &RamificationReport) -> Self {
        RamJson {
            p: r.p,
            n: r.n,
            v: r.v,
            degrees: r.degrees.clone(),
            different: r.different,
            genus: r.genus,
            order: r.order,
            ratio: r.ratio.map(|x| x.to_string()),
            ratio_reduced: r.ratio.map(|x| x.reduced().to_string()),
            is_big_action: r.is_big_action,
            hurwitz_ok: r.hurwitz_ok,
        }
    }
}

fn ram_text(r: &RamJson) -> String {
    format!(
        "degrees {:?}, v = {}\ndifferent {}, genus {}, |G| = {}, |G|/g = {}{}\nbig action: {}",
        r.degrees,
        r.v,
        r.different,
        r.genus,
        r.order,
        r.ratio.as_deref().unwrap_or("undefined"),
        r.ratio_reduced.as_ref().map_or(String::new(), |x| format!(" ({x})")),
        r.is_big_action
    )
}

fn cmd_invariants(sf: &SpecFile, bound: usize) -> Result<Report> {
    let spec = adapted_cover(sf, bound)?;
    let r = wildcover::cover::ramification(spec.p, &spec.degrees(), spec.v());
    let j = RamJson::from(&r);
    report(true, ram_text(&j), &j)
}

#[derive(Serialize)]
struct CheckJson {
    tag: String,
    passed: bool,
    detail: String,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson { tag: c.tag.clone(), passed: c.passed, detail: c.detail.clone() }
    }
}

#[derive(Serialize)]
struct MatrixJson {
    y: String,
    l: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct VerifyJson {
    field: String,
    functions: Vec<String>,
    s1: Option<usize>,
    invariants: RamJson,
    matrices: Vec<MatrixJson>,
    levels_exact: bool,
    subdiagonal_nonzero: bool,
    checks: Vec<CheckJson>,
    passed: bool,
}

fn check_lines(checks: &[CheckJson]) -> String {
    checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("[pass] {}: {}", c.tag, c.detail)
            } else {
                format!("[FAIL] {}: {} violated", c.tag, c.detail)
            }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_verify(sf: &SpecFile, bound: usize) -> Result<Report> {
    let spec = adapted_cover(sf, bound)?;
    let r = verify_cover(&spec)?;
    let mj = max_jump_check(&spec)?;
    let mut checks: Vec<CheckJson> = r.checks.iter().map(CheckJson::from).collect();
    checks.extend(trivial_rep_check(&spec, &r.matrices).iter().map(CheckJson::from));
    checks.extend(mj.checks.iter().map(CheckJson::from));
    let passed = checks.iter().all(|c| c.passed);
    let j = VerifyJson {
        field: spec.ambient.header(),
        functions: spec.reduced().iter().map(ToString::to_string).collect(),
        s1: r.s1,
        invariants: RamJson::from(&r.ramification),
        matrices: r.matrices.iter().map(|m| MatrixJson { y: m.y.to_string(), l: m.entries.clone() }).collect(),
        levels_exact: mj.levels_exact,
        subdiagonal_nonzero: mj.subdiagonal_nonzero,
        checks,
        passed,
    };
    let text = format!(
        "field {}\n{}\n{}\nresult: {}",
        j.field,
        ram_text(&j.invariants),
        check_lines(&j.checks),
        if passed { "PASS" } else { "FAIL" }
    );
    report(passed, text, &j)
}

fn split_list(src: &str, k: &Field) -> Result<Vec<Fe>> {
    src.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_fe(s.trim(), k)).collect()
}

fn opt_fe(v: &Option<String>, name: &str, k: &Field) -> Result<Fe> {
    match v {
        Some(s) => parse_fe(s, k),
        None => Err(Error::ParameterConstraintViolated(format!("--{name} is required"))),
    }
}

fn additive_arg(src: &str, k: &Field) -> Result<TwistedPoly> {
    TwistedPoly::from_poly(&parse_poly(src, k)?)
}

fn cmd_family(kind: &FamilyKind, bc: Option<&str>, bound: usize) -> Result<Report> {
    let (spec, directive, param_field) = match kind {
        FamilyKind::Special { p, n } => (special_family(*p, *n)?, format!("special p={p} n={n}"), FieldCtx::prime(*p)?),
        FamilyKind::Universal { n, m, modulus, b0, b5, c7, c9, d8, d11, d13 } => {
            let k = field_from(&FieldArgs { p: 5, m: *m, modulus: modulus.clone() })?;
            let b0v = parse_fe(b0, &k)?;
            let params = match n {
                2 => UniversalParams::N2 { b0: b0v, b5: opt_fe(b5, "b5", &k)? },
                3 => UniversalParams::N3 { b0: b0v, c7: opt_fe(c7, "c7", &k)?, c9: opt_fe(c9, "c9", &k)? },
                4 => UniversalParams::N4 {
                    b0: b0v,
                    c7: opt_fe(c7, "c7", &k)?,
                    d8: opt_fe(d8, "d8", &k)?,
                    d11: opt_fe(d11, "d11", &k)?,
                    d13: opt_fe(d13, "d13", &k)?,
                },
                other => return Err(Error::OutOfRange(*other as usize)),
            };
            (universal_p5(&params, bound)?, format!("universal n={n}"), k)
        }
        FamilyKind::Gamma { field, s, d, gammas, s1, constants } => {
            let k = field_from(field)?;
            let gammas = split_list(gammas, &k)?;
            let constants = match constants {
                Some(c) => split_list(c, &k)?,
                None => vec![Fe::zero(&k); gammas.len()],
            };
            let params = GammaFamilyParams { s: *s, d: *d, gammas, s1: additive_arg(s1, &k)?, constants };
            (gamma_family(&params, bound)?, format!("gamma s={s} d={d}"), k)
        }
    };
    let (spec, directive) = match bc {
        Some(src) => {
            let s0 = additive_arg(src, &param_field)?;
            let out = base_change(&spec, &s0, bound)?;
            (out, format!("{directive} base-change {}", s0.render_x("X")))
        }
        None => (spec, directive),
    };
    let sf = SpecFile::from_cover(&spec, Some(directive));
    #[derive(Serialize)]
    struct FamilyJson {
        spec: String,
        degrees: Vec<usize>,
        v: usize,
    }
    let text = sf.to_string();
    report(true, text.clone(), &FamilyJson { spec: text, degrees: spec.degrees(), v: spec.v() })
}

/// The unreduced special-family equations when the directive names one exactly.
fn directive_equations(sf: &SpecFile) -> Result<Option<Vec<Poly>>> {
    let Some(dir) = &sf.family else {
        return Ok(None);
    };
    let words: Vec<&str> = dir.split_whitespace().collect();
    if words.len() != 3 || words[0] != "special" {
        return Ok(None);
    }
    let num = |w: &str, key: &str| w.strip_prefix(key).and_then(|v| v.parse::<usize>().ok());
    match (num(words[1], "p="), num(words[2], "n=")) {
        (Some(p), Some(n)) if p as u32 == sf.p => Ok(Some(special_equations(p as u32, n)?)),
        _ => Ok(None),
    }
}

#[derive(Serialize)]
struct GroupJson {
    order: u128,
    exponent: u64,
    center_order: u128,
    center_generators: Vec<String>,
    derived_order: u128,
    lambda_dims: Vec<usize>,
    max_jumps: bool,
    element_order: Option<u64>,
    checks: Vec<CheckJson>,
}

fn cmd_group(sf: &SpecFile, element: Option<usize>, bound: usize, closure_bound: usize) -> Result<Report> {
    let spec = adapted_cover(sf, bound)?;
    let engine = match directive_equations(sf)? {
        Some(eqs)
            if eqs.iter().zip(&spec.functions).all(|(g, f)| {
                let lifted = wildcover::ff::Embedding::new(g.field(), &spec.ambient).map(|e| g.map_field(&e));
                lifted.is_ok_and(|g| reduce_with_witness(&g).reduced == f.reduced)
            }) =>
        {
            GroupEngine::with_equations(&spec, &eqs)?
        }
        _ => GroupEngine::new(&spec)?,
    };
    let r = engine.report(closure_bound)?;
    let element_order = match element {
        Some(i) => {
            let gens = engine.generators();
            let g = gens.get(i).ok_or(Error::OutOfRange(i))?;
            Some(engine.order(g)?)
        }
        None => None,
    };
    let p = spec.p as u128;
    let is_p_power = |mut x: u128| {
        while x.is_multiple_of(p) {
            x /= p;
        }
        x == 1
    };
    let mj = max_jumps(engine.phi_family());
    let group = engine.closure(&engine.generators(), closure_bound)?;
    let center = engine.center(&group);
    let derived: std::collections::HashSet<_> = engine.derived(closure_bound)?.into_iter().collect();
    let mut checks = vec![
        CheckJson { tag: "order-p-power".into(), passed: is_p_power(r.order), detail: format!("|G| = {}", r.order) },
        CheckJson {
            tag: "order-formula".into(),
            passed: r.order == p.pow((spec.n() + spec.v()) as u32),
            detail: format!("|G| = p^(n+v) = {}^{}", p, spec.n() + spec.v()),
        },
        CheckJson {
            tag: "center-nontrivial".into(),
            passed: r.center_order >= p,
            detail: format!("|Z(G)| = {}", r.center_order),
        },
    ];
    if mj {
        checks.push(CheckJson {
            tag: "center-cyclic".into(),
            passed: r.center_order == p && center.iter().all(|z| derived.contains(z)),
            detail: "Z(G) has order p and lies in D(G)".into(),
        });
        checks.push(CheckJson {
            tag: "center-shape".into(),
            passed: engine.center_characterization_check(&group),
            detail: "central elements are exactly W_n -> W_n + c".into(),
        });
    }
    let render = |e: &wildcover::grp::Elem| {
        let a = engine.to_aut(e);
        let z: Vec<String> = a.z.iter().map(ToString::to_string).collect();
        format!("y = {}; Z = ({})", a.y, z.join(", "))
    };
    let passed = checks.iter().all(|c| c.passed);
    let j = GroupJson {
        order: r.order,
        exponent: r.exponent,
        center_order: r.center_order,
        center_generators: r.center_generators.iter().map(render).collect(),
        derived_order: r.derived_order,
        lambda_dims: r.lambda_dims.clone(),
        max_jumps: mj,
        element_order,
        checks,
    };
    let mut text = format!(
        "|G| = {}, exponent {}, |Z(G)| = {}, |D(G)| = {}\nLambda dims {:?}, maximal jumps: {}\n",
        j.order, j.exponent, j.center_order, j.derived_order, j.lambda_dims, j.max_jumps
    );
    if let Some(o) = element_order {
        text += &format!("element order {o}\n");
    }
    for g in &j.center_generators {
        text += &format!("center generator: {g}\n");
    }
    text += &check_lines(&j.checks);
    report(passed, text, &j)
}
