use std::fmt::{Display, Write as _};

use serde_json::{json, Value};
use woundlab::expr::{
    parse, parse_binary_form_of_degree, parse_bivar, parse_element, parse_field, parse_laurent, parse_ratfunc,
    parse_uv_bivar, parse_uv_ratfunc,
};
use woundlab::field::{ppow, BivarRatFunc, Field, Fq, FunctionField, LaurentSeries, RatFunc};
use woundlab::grouplaw::{ParamPoint, QrGroup};
use woundlab::hassewitt::{cohomology_report, BinaryForm};
use woundlab::ppoly::{classify, compactify, genus, splitting_degree, Classification, RussellEquation};
use woundlab::torsor::{is_trivial, reduce, LocalRussell, TorsorClass, TrivialSearch, DEFAULT_PRECISION};

use crate::cli::{Cli, Command, EquationArgs, TorsorAction, TorsorArgs};
use crate::CliError;

/// What a command produced: the JSON payload and its text rendering.
pub struct Output {
    pub json: Value,
    pub text: String,
}

fn usage(e: woundlab::Error) -> CliError {
    CliError::Usage(e.to_string())
}

/// Field elements as integers over prime fields and as digit arrays (low first) otherwise.
pub fn elem_json(x: &Fq) -> Value {
    if x.field().degree() == 1 {
        json!(x.raw())
    } else {
        json!(x.digits())
    }
}

fn field_for(cli_field: Option<&str>, p: Option<u32>) -> Result<Field, CliError> {
    match (cli_field, p) {
        (Some(text), p) => {
            let f = parse_field(text).map_err(usage)?;
            if p.is_some_and(|p| p != f.characteristic()) {
                return Err(CliError::Usage(format!("--p disagrees with --field {text}")));
            }
            Ok(f)
        }
        (None, Some(p)) => Field::prime(p).map_err(usage),
        (None, None) => Err(CliError::Usage("give the characteristic with --p or --field".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let field = cli.field.as_deref();
    match &cli.command {
        Command::Classify(args) => equation_command(field, args, false),
        Command::Compactify(args) => equation_command(field, args, true),
        Command::Genus { p, n, m } => {
            if !matches!(p, 2 | 3 | 5 | 7) {
                return Err(usage(woundlab::Error::UnsupportedCharacteristic(*p)));
            }
            let g = genus(*p, *n, *m);
            Ok(Output { json: json!({"p": p, "n": n, "m": m, "genus": g}), text: format!("genus({p},{n},{m}) = {g}\n") })
        }
        Command::GroupLaw { a, points } => group_law(field, a, points),
        Command::Torsor { action, args } => torsor(field, cli.prec, cli.trace, *action, args),
        Command::HasseWitt { p, n, m, k, a, kernel } => hasse_witt(field, *p, *n, *m, *k, a, *kernel),
        Command::VerifyPaper { .. } => unreachable!("handled by main"),
    }
}

enum Equation {
    Uni(RussellEquation<RatFunc>),
    Bi(RussellEquation<BivarRatFunc>),
}

/// `p=3 n=1 a=[t]` or a polynomial in `u, v`.
fn parse_equation(cli_field: Option<&str>, args: &EquationArgs) -> Result<Equation, CliError> {
    let text = args.equation.trim();
    if text.contains("a=[") {
        let (head, rest) = text.split_once("a=[").unwrap();
        let (list, tail) = rest
            .split_once(']')
            .ok_or_else(|| CliError::Usage("unclosed coefficient list `a=[...`".into()))?;
        let mut p = args.p;
        let mut n = None;
        for tok in head.split_whitespace().chain(tail.split_whitespace()) {
            let (key, val) = tok.split_once('=').ok_or_else(|| CliError::Usage(format!("expected key=value, got `{tok}`")))?;
            let val: u32 = val.parse().map_err(|_| CliError::Usage(format!("`{key}` must be an integer")))?;
            match key {
                "p" => p = Some(val),
                "n" => n = Some(val),
                _ => return Err(CliError::Usage(format!("unknown key `{key}`"))),
            }
        }
        let n = n.ok_or_else(|| CliError::Usage("missing n=".into()))?;
        let field = field_for(cli_field, p)?;
        let items: Vec<&str> = list.split(',').map(str::trim).collect();
        let bivariate = items.iter().any(|s| parse(s).map(|e| e.variables().contains(&"s".to_string())).unwrap_or(false));
        return Ok(if bivariate {
            let a = items.iter().map(|s| parse_bivar(&field, s)).collect::<Result<_, _>>().map_err(usage)?;
            Equation::Bi(RussellEquation::new(n, a).map_err(usage)?)
        } else {
            let a = items.iter().map(|s| parse_ratfunc(&field, s)).collect::<Result<_, _>>().map_err(usage)?;
            Equation::Uni(RussellEquation::new(n, a).map_err(usage)?)
        });
    }
    let field = field_for(cli_field, args.p.or_else(|| infer_p(text)))?;
    let vars = parse(text).map_err(usage)?.variables();
    Ok(if vars.iter().any(|v| v == "s") {
        Equation::Bi(RussellEquation::from_uv(&parse_uv_bivar(&field, text).map_err(usage)?).map_err(usage)?)
    } else {
        Equation::Uni(RussellEquation::from_uv(&parse_uv_ratfunc(&field, text).map_err(usage)?).map_err(usage)?)
    })
}

/// The exponent on `u` is p^n, so its smallest prime factor is p.
fn infer_p(text: &str) -> Option<u32> {
    let e: u32 = text.split("u^").nth(1)?.chars().take_while(char::is_ascii_digit).collect::<String>().parse().ok()?;
    (2..=e).find(|d| e.is_multiple_of(*d))
}

fn equation_command(cli_field: Option<&str>, args: &EquationArgs, closure: bool) -> Result<Output, CliError> {
    match parse_equation(cli_field, args)? {
        Equation::Uni(r) => russell_report(&r, closure),
        Equation::Bi(r) => russell_report(&r, closure),
    }
}

fn russell_report<X: FunctionField + Display>(r: &RussellEquation<X>, closure: bool) -> Result<Output, CliError> {
    let coeffs: Vec<String> = r.coeffs().iter().map(|c| c.to_string()).collect();
    let mut json = json!({
        "p": r.p(),
        "n": r.n(),
        "m": r.m(),
        "coeffs": coeffs,
        "genus": r.genus(),
    });
    let mut text = String::new();
    writeln!(text, "equation: {r}").unwrap();
    if closure {
        let c = compactify(r);
        let monomials: Vec<Value> = c
            .monomials
            .iter()
            .map(|mono| json!({"coeff": mono.coeff.to_string(), "exps": mono.exps}))
            .collect();
        let obj = json.as_object_mut().unwrap();
        obj.insert("weights".into(), json!(c.weights));
        obj.insert("degree".into(), json!(c.degree));
        obj.insert("monomials".into(), Value::Array(monomials));
        obj.insert("regular".into(), json!(c.regular));
        obj.insert("boundary_degree".into(), json!(c.boundary_degree));
        obj.insert("canonical_degree".into(), json!(c.canonical_degree));
        writeln!(text, "weights (t0, t1, t2): {:?}", c.weights).unwrap();
        writeln!(text, "degree: {}", c.degree).unwrap();
        let terms: Vec<String> = c
            .monomials
            .iter()
            .map(|mono| format!("({})*t0^{}*t1^{}*t2^{}", mono.coeff, mono.exps[0], mono.exps[1], mono.exps[2]))
            .collect();
        writeln!(text, "closure: {}", terms.join(" + ")).unwrap();
        writeln!(text, "regular: {}", c.regular).unwrap();
        writeln!(text, "boundary residue degree: {}", c.boundary_degree).unwrap();
        writeln!(text, "genus: {}", c.genus).unwrap();
    } else {
        let class = classify(r)?;
        let obj = json.as_object_mut().unwrap();
        obj.insert("classification".into(), json!(class.tag()));
        obj.insert("splitting_degree".into(), json!(splitting_degree(r)));
        obj.insert("regular".into(), json!(r.leading().pth_root().is_none()));
        if let Classification::Undetermined { reason } = &class {
            obj.insert("reason".into(), json!(reason));
        }
        writeln!(text, "classification: {}", class.tag()).unwrap();
        if let Classification::Undetermined { reason } = &class {
            writeln!(text, "reason: {reason}").unwrap();
        }
        writeln!(text, "genus: {}", r.genus()).unwrap();
        writeln!(text, "splitting degree: {}", splitting_degree(r)).unwrap();
    }
    Ok(Output { json, text })
}

fn point_text(p: &ParamPoint<RatFunc>) -> String {
    match p {
        ParamPoint::Finite(s) => s.to_string(),
        ParamPoint::Infinity => "inf".into(),
    }
}

fn group_law(cli_field: Option<&str>, a: &str, points: &[String]) -> Result<Output, CliError> {
    let field = field_for(cli_field.or(Some("F2")), None)?;
    let a = parse_ratfunc(&field, a).map_err(usage)?;
    let g = QrGroup::new(a)?;
    let mut parsed = Vec::new();
    for s in points {
        parsed.push(if s.trim() == "inf" {
            ParamPoint::Infinity
        } else {
            g.point(parse_ratfunc(&field, s).map_err(usage)?)
        });
    }
    let mut sum = g.identity();
    for p in &parsed {
        sum = g.add(&sum, p)?;
    }
    let (u, v) = g.embed(&sum)?;
    let inputs: Vec<String> = parsed.iter().map(point_text).collect();
    let json = json!({
        "a": g.a().to_string(),
        "points": inputs,
        "sum": point_text(&sum),
        "embed": {"u": u.to_string(), "v": v.to_string()},
    });
    let text = format!("{} = {}\n(u, v) = ({u}, {v})\n", inputs.join(" + "), point_text(&sum));
    Ok(Output { json, text })
}

fn local_russell(field: &Field, args: &TorsorArgs) -> Result<LocalRussell, CliError> {
    if let Some(list) = &args.a {
        let a: Vec<LaurentSeries> = list.split(',').map(|s| parse_laurent(field, s.trim())).collect::<Result<_, _>>().map_err(usage)?;
        if args.m.is_some_and(|m| m as usize != a.len()) {
            return Err(CliError::Usage("--m disagrees with the number of coefficients in --a".into()));
        }
        return LocalRussell::new(args.n, a).map_err(usage);
    }
    let k = args.k.ok_or_else(|| CliError::Usage("give either --k or --a".into()))?;
    let m = args.m.ok_or_else(|| CliError::Usage("--k needs --m".into()))?;
    let unit = args.unit.as_deref().map(|u| parse_element(field, u)).transpose().map_err(usage)?;
    LocalRussell::monomial(field, args.n, m, k, unit).map_err(usage)
}

fn series_json(s: &LaurentSeries) -> Value {
    Value::Array(s.terms().iter().map(|(e, c)| json!([e, elem_json(c)])).collect())
}

fn torsor(cli_field: Option<&str>, prec: Option<i64>, show_trace: bool, action: TorsorAction, args: &TorsorArgs) -> Result<Output, CliError> {
    let field = field_for(cli_field, args.p)?;
    let r = local_russell(&field, args)?;
    let f = parse_laurent(&field, &args.f).map_err(usage)?;
    let prec = prec.unwrap_or(DEFAULT_PRECISION);
    let class = TorsorClass::new(r.clone(), f, prec)?;
    let header = json!({"p": r.p(), "n": r.n(), "m": r.m(), "shape": r.shape().name(), "precision": class.precision});
    match action {
        TorsorAction::Trivial => {
            let search = TrivialSearch { depth: args.depth, ..TrivialSearch::default() };
            let t = is_trivial(&class, search)?;
            let mut json = header;
            json.as_object_mut().unwrap().insert("trivial".into(), json!(t.label()));
            Ok(Output { json, text: format!("trivial: {}\n", t.label()) })
        }
        TorsorAction::Reduce => {
            let nf = reduce(&class)?;
            let trace: Vec<Value> = nf
                .trace
                .iter()
                .map(|m| {
                    json!({
                        "kind": m.kind.label(),
                        "exponent": m.exponent,
                        "u": m.u.to_string(),
                        "v": m.v.to_string(),
                        "equation": m.equation,
                        "measure": [m.measure.0, m.measure.1],
                    })
                })
                .collect();
            let mut json = header;
            let obj = json.as_object_mut().unwrap();
            obj.insert("normal_form".into(), json!(nf.representative.to_string()));
            obj.insert("terms".into(), series_json(&nf.representative));
            obj.insert("trivial".into(), json!(nf.trivial));
            obj.insert("lang_k".into(), json!(nf.lang_k));
            obj.insert("lang_n".into(), json!(nf.lang_n));
            obj.insert("extension_degree".into(), json!(nf.extension_degree));
            obj.insert("trace".into(), Value::Array(trace));
            let mut text = String::new();
            if show_trace {
                for m in &nf.trace {
                    writeln!(text, "  {m}").unwrap();
                }
            }
            writeln!(text, "normal form: {}", nf.representative).unwrap();
            writeln!(text, "trivial: {}", nf.trivial).unwrap();
            if let (Some(k), Some(n)) = (nf.lang_k, nf.lang_n) {
                writeln!(text, "shape: t^-{k} * q(t^-step), deg q = {n}").unwrap();
            }
            Ok(Output { json, text })
        }
    }
}

fn hasse_witt(cli_field: Option<&str>, p: u32, n: u32, m: u32, k: u32, a: &str, kernel: bool) -> Result<Output, CliError> {
    let field = field_for(cli_field, Some(p))?;
    let degree = (ppow(p, n) * k as u64 * (ppow(p, m) - 1)) as usize;
    let coeffs = parse_binary_form_of_degree(&field, a, degree).map_err(usage)?;
    let form = BinaryForm::new(&field, coeffs).map_err(usage)?;
    let rep = cohomology_report(p, n, m, k, &form, kernel)?;
    let matrix: Vec<Vec<Value>> = rep.matrix.rows().iter().map(|r| r.iter().map(elem_json).collect()).collect();
    let mut json = json!({
        "d": rep.d,
        "r": rep.r,
        "h1G": {"torsion": rep.h1g_torsion, "rank": rep.r},
        "h2": rep.h2,
        "h1L_dim": rep.h1l_dim,
        "experimental": rep.experimental,
        "matrix": matrix,
    });
    let mut text = String::new();
    writeln!(text, "Hasse-Witt matrix (columns are images of e_1..e_{}):", rep.d).unwrap();
    for row in rep.matrix.rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        writeln!(text, "  [{}]", cells.join(" ")).unwrap();
    }
    writeln!(text, "stable rank: {}", rep.r).unwrap();
    writeln!(text, "H^1(C, G) = {}", rep.h1g()).unwrap();
    writeln!(text, "H^2(C, U) = 0").unwrap();
    writeln!(text, "dim H^1(C, L) = {}", rep.h1l_dim).unwrap();
    if rep.experimental {
        writeln!(text, "note: (p, n, m) = ({p}, {n}, {m}) has no published reference values").unwrap();
    }
    if kernel {
        let value = match &rep.fixed_points {
            Some((f, basis)) => {
                writeln!(text, "fixed points over {}: F_p-dimension {}", f.describe(), basis.len()).unwrap();
                let basis: Vec<Vec<Value>> = basis.iter().map(|v| v.iter().map(elem_json).collect()).collect();
                json!({"field": f.describe(), "basis": basis})
            }
            None => {
                writeln!(text, "fixed points: not all found within the tested extensions").unwrap();
                Value::Null
            }
        };
        json.as_object_mut().unwrap().insert("kernel".into(), value);
    }
    Ok(Output { json, text })
}
