//! `orbitquant` subcommands. [`run`] returns the exit code: 0 when every
//! check passes, 1 on a failed check, 2 on bad input.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use orbitquant_core::character::VirtualRep;
use orbitquant_core::dseries::{dirac_induction_reduce, ds_times_spinor_dual, make_param, verify_character_identity};
use orbitquant_core::elliptic::{
    check_gxi_cap_p, compact_chamber_rep, on_noncompact_wall, strongly_elliptic, ChamberPoint,
};
use orbitquant_core::hamind::{
    build_induced, closedness_residual, cross_section_check, kks_pairing_check, momentum_residual,
    smallest_singular_value, NKind,
};
use orbitquant_core::multiplicity::{tensor_decompose, weyl_character, weyl_dimension};
use orbitquant_core::pipeline::{verify_gss_induced, verify_qr_compact};
use orbitquant_core::weyl::WeylGroup;
use orbitquant_core::{RealRootSystem, Subsystem, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catalog::CatalogDoc;
use crate::json::{
    character_to_json, int_value, load_root_system, parse_rationals, parse_rep_term, parse_weight, rep_to_json,
    CheckJson, GssJson, IdentityJson, QrJson, RootSystemDoc,
};
use crate::spec::{Outcome, SpecDoc};
use crate::{AppError, AppResult};

pub const IDENTITY_DSERIES: &str = "dirac-induction-character";
pub const IDENTITY_QR: &str = "quantization-commutes-with-reduction";
pub const IDENTITY_GSS: &str = "quantization-commutes-with-induction";
pub const GSS_REALIZATION: &str = "dirac-induction-of-k-quantization";

pub const NONDEGENERACY_TOL: f64 = 1e-6;
pub const MOMENTUM_H: f64 = 1e-5;
pub const MOMENTUM_TOL: f64 = 1e-6;
pub const CLOSEDNESS_H: f64 = 1e-4;
pub const CLOSEDNESS_TOL: f64 = 1e-3;
pub const KKS_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(
    name = "orbitquant",
    version,
    about = "Root systems, characters and quantisation checks for equal-rank real forms"
)]
pub struct Cli {
    /// Emit JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the roots of a catalog group or a root-system JSON file.
    Roots { model: String },
    /// Enumerate the Weyl group.
    Weyl {
        model: String,
        #[arg(long)]
        compact: bool,
    },
    /// Character of the irreducible with highest weight λ (doubled coordinates).
    Char {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        compact: bool,
    },
    /// Decompose V_{l1} ⊗ V_{l2}.
    Tensor {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        l1: String,
        #[arg(long, allow_hyphen_values = true)]
        l2: String,
        #[arg(long)]
        compact: bool,
    },
    /// Reduce a virtual K-representation at a discrete series parameter.
    DseriesReduce {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// `a,b=c`: multiplicity c at compact-dominant weight (a,b). Repeatable.
        #[arg(long = "rep", allow_hyphen_values = true)]
        rep: Vec<String>,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Strong ellipticity and 𝔤_ξ ∩ 𝔭 at a torus point (rational doubled coordinates).
    Elliptic {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Numerical checks of the induced symplectic form and momentum map.
    Hamind {
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Take N = K·ξ instead of the point {ξ}.
        #[arg(long)]
        orbit: bool,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Compare quantisation with the reduced multiplicity oracle.
    QrVerify { spec: String },
    /// Check the induced identity for one or more spec files.
    GssVerify {
        #[arg(required = true)]
        specs: Vec<String>,
    },
}

struct Output {
    value: Value,
    text: String,
    failures: Vec<String>,
}

impl Output {
    fn ok(value: Value, text: String) -> Self {
        Output { value, text, failures: Vec::new() }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let claim = claim_name(&cli.command);
    match execute(&cli) {
        Ok(o) => {
            let body =
                if cli.json { serde_json::to_string_pretty(&o.value).expect("serializable") + "\n" } else { o.text };
            let _ = out.write_all(body.as_bytes());
            for f in &o.failures {
                let _ = writeln!(err, "FAIL {claim}: {f}");
            }
            if o.failures.is_empty() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {claim}: {e}");
            2
        }
    }
}

fn claim_name(c: &Command) -> &'static str {
    match c {
        Command::Roots { .. } => "roots",
        Command::Weyl { .. } => "weyl",
        Command::Char { .. } => "char",
        Command::Tensor { .. } => "tensor",
        Command::DseriesReduce { .. } => IDENTITY_DSERIES,
        Command::Elliptic { .. } => "strong-ellipticity",
        Command::Hamind { .. } => "hamiltonian-induction",
        Command::QrVerify { .. } => IDENTITY_QR,
        Command::GssVerify { .. } => IDENTITY_GSS,
    }
}

fn subsystem(compact: bool) -> Subsystem {
    if compact {
        Subsystem::Compact
    } else {
        Subsystem::Full
    }
}

fn sub_name(s: Subsystem) -> &'static str {
    match s {
        Subsystem::Full => "full",
        Subsystem::Compact => "compact",
    }
}

fn checked_weight(rs: &RealRootSystem, s: &str) -> AppResult<Weight> {
    let w = parse_weight(s)?;
    if w.rank() != rs.rank {
        return Err(orbitquant_core::Error::DimensionMismatch { expected: rs.rank, got: w.rank() }.into());
    }
    Ok(w)
}

/// Left-aligned text table.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(w - c.chars().count()));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "FAIL" }.to_string()
}

fn execute(cli: &Cli) -> AppResult<Output> {
    match &cli.command {
        Command::Roots { model } => roots(model),
        Command::Weyl { model, compact } => weyl(model, subsystem(*compact)),
        Command::Char { model, lambda, compact } => character(model, lambda, subsystem(*compact)),
        Command::Tensor { model, l1, l2, compact } => tensor(model, l1, l2, subsystem(*compact)),
        Command::DseriesReduce { model, lambda, rep, points } => dseries_reduce(model, lambda, rep, *points, cli.seed),
        Command::Elliptic { model, xi } => elliptic(model, xi),
        Command::Hamind { model, xi, orbit, samples } => hamind(model, xi, *orbit, *samples, cli.seed),
        Command::QrVerify { spec } => qr_verify(spec),
        Command::GssVerify { specs } => gss_verify(specs),
    }
}

fn roots(model: &str) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let rows: Vec<Vec<String>> = rs
        .roots
        .iter()
        .map(|r| {
            vec![
                r.weight.to_string(),
                format!("{:?}", r.simple),
                if r.noncompact { "noncompact" } else { "compact" }.to_string(),
                if r.positive { "+" } else { "-" }.to_string(),
            ]
        })
        .collect();
    let text = format!(
        "{model} ({}): rank {}, q = {}, rho = {}, rho_c = {}, rho_n = {}\n{}",
        rs.label,
        rs.rank,
        rs.q,
        rs.rho,
        rs.rho_c,
        rs.rho_n,
        table(&["weight", "simple", "grading", "sign"], &rows)
    );
    let value = json!({
        "model": model,
        "root_system": RootSystemDoc::from_root_system(&rs),
        "rank": rs.rank,
        "q": rs.q,
        "rho": rs.rho.coords(),
        "rho_c": rs.rho_c.coords(),
        "rho_n": rs.rho_n.coords(),
        "roots": rs.roots.iter().map(|r| json!({
            "weight": r.weight.coords(),
            "simple": r.simple,
            "noncompact": r.noncompact,
            "positive": r.positive,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(value, text))
}

fn weyl(model: &str, sub: Subsystem) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let w = WeylGroup::generate(&rs, sub);
    let rows: Vec<Vec<String>> =
        w.iter().enumerate().map(|(i, (m, s))| vec![i.to_string(), format!("{s:+}"), format!("{m:?}")]).collect();
    let text = format!(
        "{} Weyl group of {model}: order {}\n{}",
        sub_name(sub),
        w.order(),
        table(&["#", "sign", "matrix"], &rows)
    );
    let value = json!({
        "model": model,
        "subsystem": sub_name(sub),
        "order": w.order(),
        "elements": w.iter().map(|(m, s)| json!({"matrix": m, "sign": s})).collect::<Vec<_>>(),
    });
    Ok(Output::ok(value, text))
}

fn character(model: &str, lambda: &str, sub: Subsystem) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let l = checked_weight(&rs, lambda)?;
    let ch = weyl_character(&rs, &l, sub)?;
    let dim = weyl_dimension(&rs, &l, sub);
    let rows: Vec<Vec<String>> = ch.terms().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
    let text = format!("character of V{l} ({}): dimension {dim}\n{}", sub_name(sub), table(&["weight", "mult"], &rows));
    let value = json!({
        "model": model,
        "subsystem": sub_name(sub),
        "lambda": l.coords(),
        "dimension": int_value(&dim),
        "terms": character_to_json(&ch),
    });
    Ok(Output::ok(value, text))
}

fn tensor(model: &str, l1: &str, l2: &str, sub: Subsystem) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let (a, b) = (checked_weight(&rs, l1)?, checked_weight(&rs, l2)?);
    let rep = tensor_decompose(&rs, &a, &b, sub)?;
    let rows: Vec<Vec<String>> = rep.iter().map(|(w, c)| vec![w.to_string(), c.to_string()]).collect();
    let text = format!("V{a} ⊗ V{b} ({})\n{}", sub_name(sub), table(&["highest weight", "mult"], &rows));
    let value = json!({
        "model": model,
        "subsystem": sub_name(sub),
        "l1": a.coords(),
        "l2": b.coords(),
        "terms": rep_to_json(&rep),
    });
    Ok(Output::ok(value, text))
}

fn dseries_reduce(model: &str, lambda: &str, rep: &[String], points: usize, seed: u64) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let l = checked_weight(&rs, lambda)?;
    let p = make_param(&rs, &l)?;
    let mut v = VirtualRep::new(Subsystem::Compact);
    for term in rep {
        let (w, c) = parse_rep_term(term)?;
        if w.rank() != rs.rank {
            return Err(orbitquant_core::Error::DimensionMismatch { expected: rs.rank, got: w.rank() }.into());
        }
        v.insert(&rs, w, c)?;
    }
    let reduced = dirac_induction_reduce(&p, &v);

    let exact = ds_times_spinor_dual(&rs, &p)?;
    let expected = VirtualRep::single(&rs, Subsystem::Compact, p.lowest_k_type.clone(), p.sign())?;
    let exact_pass = exact == expected;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let numeric = verify_character_identity(&rs, &p, points, IDENTITY_TOL, &mut rng)?;

    let mut failures = Vec::new();
    if !exact_pass {
        failures.push(format!(
            "exact product at {l} is {:?}, expected {{{} ↦ {}}}",
            rep_to_json(&exact),
            p.lowest_k_type,
            p.sign()
        ));
    }
    if !numeric.pass {
        failures.push(format!("torus residual {:.3e} at {l} exceeds {IDENTITY_TOL:e}", numeric.max_residual));
    }
    let text = format!(
        "{model}: lambda = {l}, q = {}, sign = {:+}, lowest K-type = {}\nreduction of the given representation: {reduced}\n{}",
        p.q,
        p.sign(),
        p.lowest_k_type,
        table(
            &["check", "residual", "result"],
            &[
                vec!["exact product".into(), if exact_pass { "0" } else { "nonzero" }.into(), verdict(exact_pass)],
                vec![format!("torus ({points} points)"), format!("{:.3e}", numeric.max_residual), verdict(numeric.pass)],
            ]
        )
    );
    let value = json!({
        "group": model,
        "lambda": l.coords(),
        "q": p.q,
        "sign": p.sign(),
        "lowest_k_type": p.lowest_k_type.coords(),
        "reduced": int_value(&reduced),
        "exact_pass": exact_pass,
        "report": IdentityJson {
            identity: IDENTITY_DSERIES,
            group: model.to_string(),
            lambda: l.coords().to_vec(),
            max_residual: numeric.max_residual,
            pass: numeric.pass && exact_pass,
        },
    });
    Ok(Output { value, text, failures })
}

fn elliptic(model: &str, xi: &str) -> AppResult<Output> {
    let rs = load_root_system(model)?;
    let coords = parse_rationals(xi)?;
    if coords.len() != rs.rank {
        return Err(orbitquant_core::Error::DimensionMismatch { expected: rs.rank, got: coords.len() }.into());
    }
    let point = ChamberPoint::new(coords);
    let wall = on_noncompact_wall(&rs, &point);
    let se = strongly_elliptic(&rs, &point);
    let rep = compact_chamber_rep(&rs, &point);
    let fmt_point = |p: &ChamberPoint| p.xi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");

    let catalog = CatalogDoc::load()?;
    let mut failures = Vec::new();
    let mut stab = Value::Null;
    let mut stab_line = String::from("no matrix model; stabilizer check skipped\n");
    if catalog.contains(model) {
        let lie = catalog.model(model)?;
        let dim = check_gxi_cap_p(&lie, &lie.xi_dual(&point))?;
        let consistent = (dim == 0) == se;
        if !consistent {
            failures.push(format!("dim(g_xi ∩ p) = {dim} disagrees with the chamber test at ({})", fmt_point(&point)));
        }
        stab = json!({"dim_gxi_cap_p": dim, "consistent": consistent});
        stab_line = format!("dim(g_xi ∩ p) = {dim} ({})\n", if consistent { "consistent" } else { "INCONSISTENT" });
    }
    let text = format!(
        "{model}: xi = ({}), compact chamber rep ({})\non a noncompact wall: {wall}\nstrongly elliptic: {se}\n{stab_line}",
        fmt_point(&point),
        fmt_point(&rep)
    );
    let value = json!({
        "model": model,
        "xi": fmt_point(&point),
        "compact_chamber_rep": fmt_point(&rep),
        "on_noncompact_wall": wall,
        "strongly_elliptic": se,
        "stabilizer": stab,
    });
    Ok(Output { value, text, failures })
}

fn hamind(model: &str, xi: &str, orbit: bool, samples: usize, seed: u64) -> AppResult<Output> {
    let catalog = CatalogDoc::load()?;
    let lie = catalog.model(model)?;
    let coords = parse_rationals(xi)?;
    if coords.len() != lie.root_system.rank {
        return Err(
            orbitquant_core::Error::DimensionMismatch { expected: lie.root_system.rank, got: coords.len() }.into()
        );
    }
    let point = ChamberPoint::new(coords);
    let kind = if orbit { NKind::KOrbit } else { NKind::Point };
    let m = build_induced(&lie, &point, kind)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let sigma = smallest_singular_value(&m);
    let mom = momentum_residual(&m, samples, MOMENTUM_H, &mut rng);
    let closed = closedness_residual(&m, CLOSEDNESS_H);
    let kks = kks_pairing_check(&lie, &point, samples, &mut rng)?;
    let cs = cross_section_check(&lie, &point, samples, 1e-6, &mut rng)?;
    let checks = vec![
        CheckJson { check: "nondegeneracy", model: model.into(), residual: sigma, pass: sigma > NONDEGENERACY_TOL },
        CheckJson { check: "momentum", model: model.into(), residual: mom, pass: mom < MOMENTUM_TOL },
        CheckJson { check: "closedness", model: model.into(), residual: closed, pass: closed < CLOSEDNESS_TOL },
        CheckJson { check: "kks", model: model.into(), residual: kks, pass: kks < KKS_TOL },
        CheckJson {
            check: "cross-section",
            model: model.into(),
            residual: cs.misclassified() as f64,
            pass: cs.misclassified() == 0,
        },
    ];
    let failures =
        checks.iter().filter(|c| !c.pass).map(|c| format!("{} residual {:.3e}", c.check, c.residual)).collect();
    let rows: Vec<Vec<String>> =
        checks.iter().map(|c| vec![c.check.to_string(), format!("{:.3e}", c.residual), verdict(c.pass)]).collect();
    let text = format!(
        "{model}: N = {}, dim M = {}\n{}",
        if orbit { "K-orbit" } else { "point" },
        m.omega_matrix.nrows(),
        table(&["check", "residual", "result"], &rows)
    );
    Ok(Output { value: serde_json::to_value(&checks).expect("serializable"), text, failures })
}

fn qr_verify(path: &str) -> AppResult<Output> {
    let loaded = SpecDoc::load(path)?;
    let reports = verify_qr_compact(&loaded.root_system, &loaded.spec)?;
    let group = loaded.doc.group.clone();
    let json_reports: Vec<QrJson> = reports
        .iter()
        .map(|r| QrJson {
            identity: IDENTITY_QR,
            group: group.clone(),
            mu: r.mu.coords().to_vec(),
            quantized: int_value(&r.quantized),
            oracle: r.oracle,
            in_support: r.in_support,
            pass: r.pass,
        })
        .collect();
    let failures = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("mu = {}: quantized {} != oracle {}", r.mu, r.quantized, r.oracle))
        .collect();
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.mu.to_string(),
                r.quantized.to_string(),
                r.oracle.to_string(),
                r.in_support.to_string(),
                verdict(r.pass),
            ]
        })
        .collect();
    let text = format!("{path} ({group})\n{}", table(&["mu", "quantized", "oracle", "in support", "result"], &rows));
    Ok(Output { value: serde_json::to_value(&json_reports).expect("serializable"), text, failures })
}

fn gss_verify(paths: &[String]) -> AppResult<Output> {
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for path in paths {
        let loaded = SpecDoc::load(path)?;
        let hc = loaded.doc.hc_weight().ok_or_else(|| AppError::Input(format!("{path}: missing hc_lambda")))?;
        let r = verify_gss_induced(&loaded.root_system, &loaded.spec, &hc)?;
        let outcome = Outcome::of(&r);
        let expected_ok = loaded.doc.expect.is_none_or(|e| e == outcome);
        let pass = r.pass && expected_ok;
        if !r.pass {
            failures.push(format!("{path}: lhs {} != rhs {}", r.lhs, r.rhs));
        }
        if !expected_ok {
            failures.push(format!("{path}: expected {:?}, got {outcome:?}", loaded.doc.expect.unwrap()));
        }
        rows.push(vec![
            path.clone(),
            r.lambda.to_string(),
            r.lowest_k_type.to_string(),
            format!("{:+}", r.sign),
            r.lhs.to_string(),
            r.rhs.to_string(),
            format!("{outcome:?}"),
            verdict(pass),
        ]);
        reports.push(GssJson {
            identity: IDENTITY_GSS,
            realization: GSS_REALIZATION,
            group: loaded.doc.group.clone(),
            lambda: r.lambda.coords().to_vec(),
            lowest_k_type: r.lowest_k_type.coords().to_vec(),
            lhs: int_value(&r.lhs),
            rhs: int_value(&r.rhs),
            sign: r.sign,
            in_support: r.in_support,
            orbits_strongly_elliptic: r.orbits_strongly_elliptic,
            pass,
        });
    }
    let text = format!(
        "left side realized by Dirac induction of the K-quantisation\n{}",
        table(&["spec", "lambda", "lowest K-type", "sign", "lhs", "rhs", "outcome", "result"], &rows)
    );
    Ok(Output { value: serde_json::to_value(&reports).expect("serializable"), text, failures })
}
