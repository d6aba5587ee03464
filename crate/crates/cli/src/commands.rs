use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use secant_core::catalog::{self, ClassificationReport};
use secant_core::congruence::{
    self, focal_check, order_check, pfaffian_polynomial, random_determinantal_congruence, random_linear_congruence,
    skew_determinant, Congruence, DeterminantalCongruence,
};
use secant_core::exact::{format_rational, JsonRational, Rational};
use secant_core::formulas::{self, SectionInvariants, SurfaceInvariants, ThreefoldInvariants};
use secant_core::schubert::{self, Multidegree};

use crate::{Cli, Command, ConstructArgs, FormulaCmd, Format, KindArg, Outcome, Preset, SchubertCmd, VerifyCmd};

type Res = Result<(String, Outcome), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn jr(r: &Rational) -> Value {
    serde_json::to_value(JsonRational::from(r)).expect("plain struct")
}

fn jint(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}

fn jpoint(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(format_rational(x))).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn pass_if(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn show_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(format_rational).collect::<Vec<_>>().join(":"))
}

/// Named values: a lone value prints bare in text mode.
fn values(format: Format, quantities: &[(&str, Rational)], inputs: Value) -> String {
    match format {
        Format::Text if quantities.len() == 1 => format!("{}\n", format_rational(&quantities[0].1)),
        Format::Text => quantities
            .iter()
            .map(|(k, v)| format!("{k} {}\n", format_rational(v)))
            .collect(),
        Format::Tsv => {
            let mut s = String::from("quantity\tvalue\n");
            for (k, v) in quantities {
                let _ = writeln!(s, "{k}\t{}", format_rational(v));
            }
            s
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = quantities.iter().map(|(k, v)| (k.to_string(), jr(v))).collect();
            pretty(&json!({ "inputs": inputs, "values": map }))
        }
    }
}

pub fn run(cli: &Cli) -> Res {
    let f = cli.format;
    match &cli.command {
        Command::Schubert(cmd) => run_schubert(f, cmd),
        Command::Formulas(cmd) => run_formulas(f, cmd),
        Command::Construct(args) => run_construct(f, args),
        Command::Verify(cmd) => run_verify(f, cmd),
        Command::Pfaffian { input } => run_pfaffian(f, input),
        Command::Classify {
            catalog,
            dim,
            multiplicity,
        } => run_classify(f, catalog.as_deref(), *dim, *multiplicity),
        Command::Scan { d, pi_max, chi_max } => run_scan(f, *d, *pi_max, *chi_max),
    }
}

fn run_schubert(f: Format, cmd: &SchubertCmd) -> Res {
    match cmd {
        SchubertCmd::Pow {
            n,
            l,
            closed,
            iterative,
        } => {
            let use_closed = *closed || (!*iterative && *l >= 1 && *l < *n);
            let class = if use_closed {
                schubert::sigma1_power_closed(*n, *l)
            } else {
                schubert::sigma1_power_iterative(*n, *l)
            }
            .map_err(err)?;
            let method = if use_closed { "closed" } else { "iterative" };
            let out = match f {
                Format::Text => format!("{class}\n"),
                Format::Tsv => {
                    let mut s = String::from("a\tb\tcoefficient\n");
                    for ((a, b), c) in class.terms() {
                        let _ = writeln!(s, "{a}\t{b}\t{c}");
                    }
                    s
                }
                Format::Json => {
                    let terms: Vec<Value> = class
                        .terms()
                        .map(|((a, b), c)| json!({"a": a, "b": b, "coefficient": jint(c)}))
                        .collect();
                    pretty(&json!({"n": n, "l": l, "method": method, "terms": terms}))
                }
            };
            Ok((out, Outcome::Pass))
        }
        SchubertCmd::Lincong { n } => {
            let m = schubert::linear_congruence_multidegree(*n).map_err(err)?;
            multidegree_report(f, &m)
        }
        SchubertCmd::Degree { n, multidegree } => {
            let m = Multidegree::from_i64(*n, multidegree).map_err(err)?;
            multidegree_report(f, &m)
        }
    }
}

fn multidegree_report(f: Format, m: &Multidegree) -> Res {
    let deg = schubert::plucker_degree(m);
    let oracle = schubert::plucker_degree_by_pieri(m);
    let alt = schubert::alternative_weighted_degree(m);
    let grass = schubert::grassmannian_degree(m.n()).map_err(err)?;
    let out = match f {
        Format::Text => format!("{m}, degree {deg}\n"),
        Format::Tsv => format!(
            "multidegree\tplucker_degree\tgrassmannian_degree\talternative_weighted_degree\n{m}\t{deg}\t{grass}\t{}\n",
            format_rational(&alt)
        ),
        Format::Json => pretty(&json!({
            "n": m.n(),
            "multidegree": m.degrees().iter().map(jint).collect::<Vec<_>>(),
            "plucker_degree": jint(&deg),
            "grassmannian_degree": jint(&grass),
            "alternative_weighted_degree": jr(&alt),
            "note": "alternative_weighted_degree uses C(n,i) weights and does not match the Grassmannian degree",
        })),
    };
    Ok((out, pass_if(deg == oracle)))
}

fn threefold(a: &crate::ThreefoldArgs) -> Result<ThreefoldInvariants, String> {
    ThreefoldInvariants::new(a.d, a.pi, a.chi_s, a.chi_x).map_err(err)
}

fn section(a: &crate::SectionArgs) -> Result<SectionInvariants, String> {
    if a.d < 1 {
        return Err(format!("degree must be positive, got {}", a.d));
    }
    Ok(SectionInvariants {
        d: a.d,
        pi: a.pi,
        chi: a.chi,
    })
}

fn int_value(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

fn run_formulas(f: Format, cmd: &FormulaCmd) -> Res {
    let out = match cmd {
        FormulaCmd::Q(a) => {
            let t = threefold(a)?;
            values(f, &[("q", formulas::quadruple_points(&t))], json!(t))
        }
        FormulaCmd::Double(a) => {
            let t = threefold(a)?;
            values(
                f,
                &[("K3", formulas::k_cubed(&t)), ("HK2", formulas::h_k_squared(&t))],
                json!(t),
            )
        }
        FormulaCmd::H(a) => {
            let s = section(a)?;
            values(f, &[("h", formulas::four_secants_through_point(&s))], json!(s))
        }
        FormulaCmd::A1(a) => {
            let s = section(a)?;
            values(f, &[("a1", formulas::foursecant_scroll_degree_a1(&s))], json!(s))
        }
        FormulaCmd::Residual(a) => {
            let s = section(a)?;
            values(f, &[("residual", formulas::residual_4k(&s))], json!(s))
        }
        FormulaCmd::A2 { d, pi } => values(
            f,
            &[("a2", formulas::curve_foursecants_a2(*d, *pi))],
            json!({"d": d, "pi": pi}),
        ),
        FormulaCmd::Triple(a) => {
            let s = SurfaceInvariants::new(a.d, a.pi, a.chi, a.k2, a.scroll).map_err(err)?;
            let (name, v) = if a.blowup {
                ("blowup_triple_points", formulas::blowup_triple_points(&s))
            } else {
                ("triple_points", formulas::apparent_triple_points(&s))
            };
            values(f, &[(name, v.map_err(err)?)], json!(s))
        }
        FormulaCmd::FocalDegree { kind, n } => {
            let mut q: Vec<(&str, Rational)> = Vec::new();
            match kind {
                KindArg::Linear => {
                    q.push(("degree", int_value(&formulas::linear_focal_degree(*n).map_err(err)?)));
                    if let Ok(k) = formulas::pfaffian_hypersurface_degree(*n) {
                        q.push(("pfaffian_degree", Rational::from_integer(k.into())));
                    }
                }
                KindArg::Determinantal => {
                    let (deg, genus) = formulas::determinantal_invariants(*n).map_err(err)?;
                    q.push(("degree", int_value(&deg)));
                    q.push(("sectional_genus", int_value(&genus)));
                    if let Ok(c) = formulas::blowup_center_invariants(*n) {
                        q.push(("center_degree", int_value(&c.degree)));
                        q.push(("center_sectional_genus", int_value(&c.sectional_genus)));
                        q.push(("center_dimension", Rational::from_integer(c.dimension.into())));
                    }
                }
            }
            let kind = if *kind == KindArg::Linear { "linear" } else { "determinantal" };
            values(f, &q, json!({"kind": kind, "n": n}))
        }
    };
    Ok((out, Outcome::Pass))
}

fn congruence_json(c: &Congruence) -> Value {
    let entries = |m: &secant_core::RationalMatrix| -> Value {
        Value::Array((0..m.rows()).map(|r| jpoint(m.row(r))).collect())
    };
    match c {
        Congruence::Linear(l) => json!({
            "n": l.n(),
            "kind": "linear",
            "certificate": jpoint(l.certificate()),
            "matrices": l.matrices().iter().map(entries).collect::<Vec<_>>(),
        }),
        Congruence::Determinantal(d) => json!({
            "n": d.n(),
            "kind": "determinantal",
            "certificate": jpoint(d.certificate()),
            "forms": d.forms().iter().map(|row| row.iter().map(|f| jpoint(f)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
    }
}

fn run_construct(f: Format, a: &ConstructArgs) -> Res {
    let c: Congruence = match (a.preset, a.kind, a.n, a.seed) {
        (Some(Preset::TwistedCubic), ..) => DeterminantalCongruence::twisted_cubic().into(),
        (None, Some(KindArg::Linear), Some(n), Some(seed)) => random_linear_congruence(n, seed, a.bound).map_err(err)?.into(),
        (None, Some(KindArg::Determinantal), Some(n), Some(seed)) => {
            random_determinantal_congruence(n, seed, a.bound).map_err(err)?.into()
        }
        _ => return Err("construct needs --kind, --n and --seed, or --preset".into()),
    };
    if let Some(path) = &a.out {
        congruence::save(&c, path).map_err(err)?;
    }
    let out = match (f, &a.out) {
        (Format::Text, None) => congruence::to_text(&c),
        (Format::Text, Some(path)) => format!(
            "wrote {} congruence, n = {}, to {}\n",
            c.kind().as_str(),
            c.n(),
            path.display()
        ),
        (Format::Tsv, _) => format!(
            "n\tkind\tcertificate\n{}\t{}\t{}\n",
            c.n(),
            c.kind().as_str(),
            show_point(certificate(&c))
        ),
        (Format::Json, _) => pretty(&congruence_json(&c)),
    };
    Ok((out, Outcome::Pass))
}

fn certificate(c: &Congruence) -> &[Rational] {
    match c {
        Congruence::Linear(l) => l.certificate(),
        Congruence::Determinantal(d) => d.certificate(),
    }
}

fn load(path: &Path) -> Result<Congruence, String> {
    congruence::load(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_verify(f: Format, cmd: &VerifyCmd) -> Res {
    match cmd {
        VerifyCmd::Order(a) => {
            let c = load(&a.input)?;
            let r = order_check(&c, a.trials, a.seed).map_err(err)?;
            let verdict = if r.pass() { "PASS" } else { "FAIL" };
            let out = match f {
                Format::Text => {
                    let mut s = format!(
                        "trials {}\nlines {}\nfocal_probes {}\nrequery_agreements {}\n",
                        r.trials, r.lines, r.focal_probes, r.requery_agreements
                    );
                    for fl in &r.failures {
                        let _ = writeln!(s, "probe {} {}: {}", fl.index, show_point(&fl.point), fl.reason);
                    }
                    s + verdict + "\n"
                }
                Format::Tsv => format!(
                    "trials\tlines\tfocal_probes\trequery_agreements\tfailures\tpass\n{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.trials,
                    r.lines,
                    r.focal_probes,
                    r.requery_agreements,
                    r.failures.len(),
                    r.pass()
                ),
                Format::Json => pretty(&json!({
                    "n": c.n(),
                    "kind": c.kind().as_str(),
                    "trials": r.trials,
                    "lines": r.lines,
                    "focal_probes": r.focal_probes,
                    "requery_agreements": r.requery_agreements,
                    "failures": r.failures.iter().map(|fl| json!({
                        "index": fl.index, "point": jpoint(&fl.point), "reason": fl.reason,
                    })).collect::<Vec<_>>(),
                    "pass": r.pass(),
                })),
            };
            Ok((out, pass_if(r.pass())))
        }
        VerifyCmd::Foci(a) => {
            let c = load(&a.input)?;
            let r = focal_check(&c, a.trials, a.seed).map_err(err)?;
            let expected = c.n() - 1;
            let out = match f {
                Format::Text => {
                    let mut s = String::new();
                    for p in &r.probes {
                        let _ = writeln!(
                            s,
                            "probe {} line {} gcd_degree {}{} rational_foci {}",
                            p.index,
                            p.line,
                            p.gcd_degree,
                            if p.focal_line { " focal_line" } else { "" },
                            p.rational_foci.len()
                        );
                    }
                    for fl in &r.failures {
                        let _ = writeln!(s, "probe {} {}: {}", fl.index, show_point(&fl.point), fl.reason);
                    }
                    let _ = writeln!(
                        s,
                        "expected gcd degree {expected}: {}",
                        if r.pass() { "PASS" } else { "FAIL" }
                    );
                    s
                }
                Format::Tsv => {
                    let mut s = String::from("probe\tgcd_degree\tfocal_line\trational_foci\tfoci_confirmed\n");
                    for p in &r.probes {
                        let _ = writeln!(
                            s,
                            "{}\t{}\t{}\t{}\t{}",
                            p.index,
                            p.gcd_degree,
                            p.focal_line,
                            p.rational_foci.len(),
                            p.foci_confirmed
                        );
                    }
                    s
                }
                Format::Json => pretty(&json!({
                    "n": c.n(),
                    "kind": c.kind().as_str(),
                    "expected_degree": expected,
                    "probes": r.probes.iter().map(|p| json!({
                        "index": p.index,
                        "p0": jpoint(p.line.p0()),
                        "p1": jpoint(p.line.p1()),
                        "gcd_degree": p.gcd_degree,
                        "focal_line": p.focal_line,
                        "rational_foci": p.rational_foci.iter().map(|q| jpoint(q)).collect::<Vec<_>>(),
                        "foci_confirmed": p.foci_confirmed,
                    })).collect::<Vec<_>>(),
                    "failures": r.failures.iter().map(|fl| json!({
                        "index": fl.index, "point": jpoint(&fl.point), "reason": fl.reason,
                    })).collect::<Vec<_>>(),
                    "pass": r.pass(),
                })),
            };
            Ok((out, pass_if(r.pass())))
        }
    }
}

fn run_pfaffian(f: Format, input: &Path) -> Res {
    let Congruence::Linear(c) = load(input)? else {
        return Err("pfaffian needs a linear congruence".into());
    };
    let n = c.n();
    if n % 2 == 0 {
        let zero = skew_determinant(&c).map_err(err)?.is_zero();
        let out = match f {
            Format::Text => format!(
                "n = {n} is even: det(sum l_i A_i) {} identically zero\n",
                if zero { "is" } else { "is NOT" }
            ),
            Format::Tsv => format!("n\tparity\tdeterminant_identically_zero\n{n}\teven\t{zero}\n"),
            Format::Json => pretty(&json!({"n": n, "parity": "even", "determinant_identically_zero": zero})),
        };
        return Ok((out, pass_if(zero)));
    }
    let pf = pfaffian_polynomial(&c).map_err(err)?;
    let degree = pf.homogeneous_degree();
    let expected = formulas::pfaffian_hypersurface_degree(n as u32).map_err(err)?;
    let ok = degree == Some(expected);
    let shown = degree.map_or_else(|| "none".to_string(), |d| d.to_string());
    let out = match f {
        Format::Text => format!("{pf}\ndegree {shown}\n"),
        Format::Tsv => format!("n\tparity\tdegree\tterms\n{n}\todd\t{shown}\t{}\n", pf.num_terms()),
        Format::Json => pretty(&json!({
            "n": n,
            "parity": "odd",
            "pfaffian": pf.to_string(),
            "degree": degree,
            "expected_degree": expected,
            "terms": pf.num_terms(),
        })),
    };
    Ok((out, pass_if(ok)))
}

fn classification_text(rep: &ClassificationReport) -> String {
    let mut s = String::new();
    for r in &rep.records {
        if r.pass {
            let extra = r
                .computed
                .multidegree()
                .map(|m| format!(", multidegree {}", catalog::format_multidegree(&m)))
                .unwrap_or_default();
            let _ = writeln!(s, "{}: pass{extra}", r.name);
        } else {
            let reasons: Vec<String> = r
                .reasons()
                .iter()
                .map(|k| format!("{k} ({})", r.verdicts[k].detail))
                .collect();
            let _ = writeln!(s, "{}: fail: {}", r.name, reasons.join("; "));
        }
    }
    s
}

fn opt_rational(r: &Option<Rational>) -> String {
    r.as_ref().map(format_rational).unwrap_or_default()
}

fn run_classify(f: Format, path: Option<&Path>, dim: Option<u32>, multiplicity: i64) -> Res {
    let records = match path {
        Some(p) => catalog::load_catalog(p).map_err(err)?,
        None => catalog::builtin_catalog(),
    };
    let rep = catalog::classify(&records, dim, multiplicity).map_err(err)?;
    let out = match f {
        Format::Text => classification_text(&rep),
        Format::Json => pretty(&serde_json::to_value(&rep).map_err(err)?),
        Format::Tsv => {
            let mut s = String::from("name\tdim\tpass\tq\ta1\ta2\tresidual\ttriple_points\tdouble_points\treasons\n");
            for r in &rep.records {
                let c = &r.computed;
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    r.name,
                    r.dim,
                    u8::from(r.pass),
                    opt_rational(&c.q),
                    opt_rational(&c.a1),
                    opt_rational(&c.a2),
                    opt_rational(&c.residual),
                    opt_rational(&c.triple_points),
                    opt_rational(&c.double_points),
                    r.reasons().join(",")
                );
            }
            s
        }
    };
    Ok((out, pass_if(rep.all_pass())))
}

fn run_scan(f: Format, d: i64, pi_max: i64, chi_max: i64) -> Res {
    let survivors = catalog::scan_exclusion(d, 0..=pi_max, -chi_max..=chi_max).map_err(err)?;
    let out = match f {
        Format::Text if survivors.is_empty() => "no survivors\n".to_string(),
        Format::Text => survivors.iter().map(|s| format!("{s}\n")).collect(),
        Format::Tsv => {
            let mut s = String::from("pi\tchi_S\tchi_X\n");
            for v in &survivors {
                let _ = writeln!(s, "{}\t{}\t{}", v.pi, v.chi_s, v.chi_x);
            }
            s
        }
        Format::Json => pretty(&json!({
            "d": d,
            "pi_range": [0, pi_max],
            "chi_range": [-chi_max, chi_max],
            "survivors": survivors,
        })),
    };
    Ok((out, Outcome::Pass))
}
