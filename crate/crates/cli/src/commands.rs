use std::fmt::Write as _;
use std::process::ExitCode;

use regge_core::confocal::{self, ConfocalFamily};
use regge_core::parse::{parse_edges, parse_reals};
use regge_core::regge::{self, Tolerances, Verdict};
use regge_core::tetra::{self, DihedralAngles, EdgeLengths, Tetrahedron};
use regge_core::volume;
use regge_core::{Error, Geometry};
use serde_json::json;

use crate::TetraArgs;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

/// Existence and input problems exit with 2, numerical and invariant
/// failures with 1.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PartnerNonexistent(_)
            | Error::QuadratureFailure { .. }
            | Error::ConstructionFailure(_)
            | Error::NearDegenerate => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn positive(name: &str, v: Option<f64>) -> Result<Option<f64>, Failure> {
    match v {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(Failure::input(format!("{name} must be positive, got {t}"))),
        _ => Ok(v),
    }
}

fn tetrahedron(args: &TetraArgs) -> Result<Tetrahedron, Failure> {
    let e = parse_edges(&args.edges)?;
    Ok(tetra::validate(args.geometry, &e)?)
}

fn edge_line(e: &EdgeLengths) -> String {
    format!("x={} y={} a={} b={} c={} d={}", e.x, e.y, e.a, e.b, e.c, e.d)
}

fn angle_line(d: &DihedralAngles) -> String {
    format!(
        "phi={} psi={} alpha={} beta={} gamma={} delta={}",
        d.phi, d.psi, d.alpha, d.beta, d.gamma, d.delta
    )
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure { code: 1, message: e.to_string() })?;
    println!("{s}");
    Ok(())
}

pub fn verify(args: &TetraArgs, tol: Option<f64>, vol_tol: Option<f64>) -> Outcome {
    let defaults = Tolerances::default_for(args.geometry);
    let tol = Tolerances {
        angle: positive("--tol", tol)?.unwrap_or(defaults.angle),
        volume: positive("--vol-tol", vol_tol)?.unwrap_or(defaults.volume),
    };
    let t = tetrahedron(args)?;
    let report = regge::verify_regge(&t, tol)?;
    if args.json {
        print_json(&report)?;
    } else {
        let r = &report.residuals;
        let mut out = String::new();
        let _ = writeln!(out, "geometry        {}", report.geometry);
        let _ = writeln!(out, "edges           {}", edge_line(&report.edges));
        let _ = writeln!(out, "partner edges   {}", edge_line(&report.partner_edges));
        let _ = writeln!(out, "dihedrals       {}", angle_line(&report.dihedrals));
        let _ = writeln!(out, "partner         {}", angle_line(&report.partner_dihedrals));
        let _ = writeln!(
            out,
            "angle residuals phi={:.3e} psi={:.3e} alpha={:.3e} beta={:.3e} gamma={:.3e} delta={:.3e}",
            r.phi, r.psi, r.alpha, r.beta, r.gamma, r.delta
        );
        let _ = writeln!(out, "log-tangents    {:.3e}", r.logtan);
        let _ = writeln!(out, "solid angles    {:.3e}", r.solid_angles);
        let _ = writeln!(
            out,
            "volume          {} partner {} residual {:.3e} (quadrature error {:.1e})",
            report.volume, report.partner_volume, r.volume, report.volume_error_estimate
        );
        let _ = writeln!(out, "tolerances      angle {:e} volume {:e}", r.angle_tolerance, r.volume_tolerance);
        let _ = write!(out, "verdict         {}", if report.verdict == Verdict::Pass { "PASS" } else { "FAIL" });
        println!("{out}");
    }
    Ok(if report.verdict == Verdict::Pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn transform(args: &TetraArgs) -> Outcome {
    let e = parse_edges(&args.edges)?;
    let re = regge::regge_edges(&e)?;
    let t = match tetra::validate(args.geometry, &e) {
        Ok(t) => t,
        Err(err) => {
            // the edge map is pure arithmetic, so it is still reported
            if args.json {
                print_json(&json!({ "s": re.s, "partner_edges": re.partner }))?;
            } else {
                println!("s               {}", re.s);
                println!("partner edges   {}", edge_line(&re.partner));
            }
            return Err(err.into());
        }
    };
    let partner = tetra::validate(args.geometry, &re.partner).map_err(|e| Error::PartnerNonexistent(e.to_string()))?;
    let ang = t.dihedral_angles();
    let ang_bar = partner.dihedral_angles();
    let sigma = regge::angle_semisum(&ang);
    if args.json {
        print_json(&json!({
            "geometry": args.geometry,
            "edges": e,
            "s": re.s,
            "partner_edges": re.partner,
            "sigma": sigma,
            "dihedrals": ang,
            "partner_dihedrals": ang_bar,
        }))?;
    } else {
        println!("geometry        {}", args.geometry);
        println!("edges           {}", edge_line(&e));
        println!("s               {}", re.s);
        println!("partner edges   {}", edge_line(&re.partner));
        println!("sigma           {sigma}");
        println!("dihedrals       {}", angle_line(&ang));
        println!("partner         {}", angle_line(&ang_bar));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn volume(args: &TetraArgs) -> Outcome {
    let t = tetrahedron(args)?;
    let v = volume::volume(&t)?;
    if args.json {
        print_json(&json!({ "geometry": args.geometry, "edges": t.edges(), "volume": v.value, "error_estimate": v.error_estimate }))?;
    } else {
        println!("{}", v.value);
    }
    Ok(ExitCode::SUCCESS)
}

pub fn ivory(g: Geometry, axes: &str, lambdas: &str, signs: Option<&str>, tol: f64, json: bool) -> Outcome {
    positive("--tol", Some(tol))?;
    let family = ConfocalFamily::new(g, &parse_reals(axes)?)?;
    let lambdas = parse_reals(lambdas)?;
    let signs = signs.map(parse_reals).transpose()?;
    let b = confocal::Box::new(family, &lambdas, signs.as_deref())?;
    let report = confocal::ivory_check(&b)?;
    let corners: Vec<Vec<f64>> = report.vertices.iter().map(|p| p.iter().copied().collect()).collect();
    let pass = report.max_difference < tol;
    if json {
        print_json(&json!({
            "geometry": g,
            "corners": corners,
            "diagonals": report.diagonals,
            "max_difference": report.max_difference,
            "tolerance": tol,
            "verdict": if pass { "pass" } else { "fail" },
        }))?;
    } else {
        for (mask, c) in corners.iter().enumerate() {
            let coords: Vec<String> = c.iter().map(f64::to_string).collect();
            println!("corner {mask:0width$b}  {}", coords.join(","), width = b.family.dimension);
        }
        for (m, d) in report.diagonals.iter().enumerate() {
            println!("diagonal {m}  {d}");
        }
        println!("max difference  {:e}", report.max_difference);
        println!("verdict         {}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn family_edges(s: &str) -> Result<EdgeLengths, Failure> {
    let v = parse_reals(s)?;
    let v = match v.len() {
        5 => [v[0], 1.0, v[1], v[2], v[3], v[4]],
        6 => [v[0], 1.0, v[2], v[3], v[4], v[5]],
        n => return Err(Failure::input(format!("--edges needs x,a,b,c,d, got {n} values"))),
    };
    if let Some(bad) = v.iter().find(|l| **l <= 0.0) {
        return Err(Failure::input(format!("edge lengths must be positive, got {bad}")));
    }
    Ok(EdgeLengths::from_array(v))
}

fn row_volume(g: Geometry, e: &EdgeLengths) -> Result<(f64, DihedralAngles), Error> {
    let t = tetra::validate_with_tolerance(g, e, 0.0)?;
    Ok((volume::volume(&t)?.value, t.dihedral_angles()))
}

pub fn sweep(g: Geometry, edges: &str, from: Option<f64>, to: Option<f64>, steps: usize) -> Outcome {
    if steps < 2 {
        return Err(Failure::input("--steps must be at least 2"));
    }
    let base = family_edges(edges)?;
    let (y_min, y_max) = volume::flattening_interval(g, &base)?;
    let margin = 1e-6 * (y_max - y_min);
    let from = from.unwrap_or(y_min + margin);
    let to = to.unwrap_or(y_max - margin);
    for v in [from, to] {
        if !(v > y_min && v < y_max) {
            return Err(Failure::input(format!("y = {v} outside the valid range ({y_min}, {y_max})")));
        }
    }
    let partner_base = regge::regge_edges(&base)?.partner;

    let mut out = String::from("t,vol,vol_bar,phi,psi,alpha,beta,gamma,delta,alpha_bar,beta_bar,gamma_bar,delta_bar\n");
    for i in 0..steps {
        let y = from + (to - from) * i as f64 / (steps - 1) as f64;
        let e = base.with(tetra::Edge::Y, y);
        let (vol, ang) = row_volume(g, &e).map_err(|err| Failure::from(err).at(y))?;
        let (vol_bar, ang_bar) = row_volume(g, &partner_base.with(tetra::Edge::Y, y))
            .map_err(|err| Failure { code: 1, message: format!("partner at y = {y}: {err}") })?;
        let _ = writeln!(
            out,
            "{y},{vol},{vol_bar},{},{},{},{},{},{},{},{},{},{}",
            ang.phi, ang.psi, ang.alpha, ang.beta, ang.gamma, ang.delta,
            ang_bar.alpha, ang_bar.beta, ang_bar.gamma, ang_bar.delta
        );
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

impl Failure {
    fn at(mut self, y: f64) -> Self {
        self.message = format!("at y = {y}: {}", self.message);
        self
    }
}
