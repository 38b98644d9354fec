use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use super::*;
use crate::error::{invalid, Result};

/// Constants fitted once over the declared grids and frozen; the suites
/// refit and require the refit to stay within them.
pub mod frozen {
    /// sup |φ_λ(r)|(1 + λr)^{1/2}, λ ∈ [1, 100], r ∈ (0, 2]
    pub const SPHERICAL_DECAY: f64 = 3.0;
    /// bump radius used for k_ξ throughout
    pub const KXI_DELTA: f64 = 0.5;
    /// sup |k_ξ(r)|(1 + ‖ξ‖r)^{1/2}/β(ξ), ‖ξ‖ ∈ {10, 50, 200}, r ∈ [0, 2δ]
    pub const KXI_DECAY: f64 = 1.5;
    /// k_ξ(0)/β(ξ) ∈ [1/C, C] for ‖ξ‖ ∈ [5, 200]
    pub const KXI_ORIGIN_RATIO: f64 = 3.0;
    /// displacement ≥ c·sinh(r)·D(θ) on θ ∈ [0.05, π/2], r ∈ (0, 10]
    pub const DISPLACEMENT_LOWER_C: f64 = 1e-4;
    pub const FLOOR: f64 = 1.0 / 16.0;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Beta,
    Discriminant,
    Spherical,
    Kxi,
    Displacement,
    Tube,
    Volume,
    Polar,
    Radial,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Beta,
        Suite::Discriminant,
        Suite::Spherical,
        Suite::Kxi,
        Suite::Displacement,
        Suite::Tube,
        Suite::Volume,
        Suite::Polar,
        Suite::Radial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Beta => "beta",
            Suite::Discriminant => "discriminant",
            Suite::Spherical => "spherical",
            Suite::Kxi => "kxi",
            Suite::Displacement => "displacement",
            Suite::Tube => "tube",
            Suite::Volume => "volume",
            Suite::Polar => "polar",
            Suite::Radial => "radial",
            Suite::All => "all",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| crate::Error::Validation(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ArchReport {
    pub suite: String,
    pub model: Model,
    pub seed: u64,
    pub normalization: String,
    pub grid: BTreeMap<String, Value>,
    pub fitted_constants: BTreeMap<String, f64>,
    pub worst_case: BTreeMap<String, Value>,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

#[derive(Default)]
struct Acc {
    grid: BTreeMap<String, Value>,
    fitted: BTreeMap<String, f64>,
    worst: BTreeMap<String, Value>,
    checks: Vec<CheckOutcome>,
}

impl Acc {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(CheckOutcome { name: name.into(), pass, detail });
    }
}

fn run_beta(m: Model, a: &mut Acc) -> Result<()> {
    let cases: [(f64, f64); 3] = match m {
        Model::H3 => [(0.0, 1.0), (3.0, 16.0), (10.0, 121.0)],
        Model::H2 => [(0.0, 1.0), (3.0, 4.0), (10.0, 11.0)],
    };
    for (x, want) in cases {
        let b = beta(m, &SpectralParameter::rank_one(x)?).value;
        a.check(&format!("beta({x})"), b == want, format!("{b} (expected {want})"));
    }
    Ok(())
}

fn run_discriminant(m: Model, a: &mut Acc) -> Result<()> {
    let mut worst = (0.0f64, 0.0f64);
    for k in 1..200 {
        let t = PI * k as f64 / 200.0;
        let c = weyl_discriminant_elliptic(m, t)?;
        let d = discriminant_by_determinant(m, t)?;
        let e = (c - d).abs() / c.max(1.0);
        if e > worst.0 {
            worst = (e, t);
        }
    }
    a.grid.insert("discriminant_theta".into(), json!({"points": 199, "range": [PI / 200.0, PI * 199.0 / 200.0]}));
    a.worst.insert("discriminant".into(), json!({"rel_error": worst.0, "theta": worst.1}));
    a.check("discriminant_vs_determinant", worst.0 < 1e-12, format!("max rel error {:.3e}", worst.0));
    let central = elliptic_element(m, PI)?;
    a.check("central_convention", central.central && central.discriminant == 1.0, "θ = π flagged, D = 1".into());
    Ok(())
}

fn run_spherical(a: &mut Acc) -> Result<()> {
    let scan = spherical_decay_scan(1.0, 100.0, 2.0, 1000);
    a.grid.insert("spherical".into(), json!({"lambda": [1.0, 100.0], "r": [0.0, 2.0], "points": scan.points}));
    a.fitted.insert("spherical_decay_sup".into(), scan.sup);
    a.worst.insert("spherical_decay".into(), json!({"lambda": scan.argmax.0, "r": scan.argmax.1}));
    a.check(
        "spherical_decay",
        scan.sup <= frozen::SPHERICAL_DECAY,
        format!("sup {:.6} ≤ {}", scan.sup, frozen::SPHERICAL_DECAY),
    );
    let mut worst = (0.0f64, (0.0, 0.0));
    for i in 0..12 {
        for j in 1..=12 {
            let lam = 1.0 + 99.0 * i as f64 / 11.0;
            let r = 2.0 * j as f64 / 12.0;
            let e = (spherical_h3(lam, r) - spherical_h3_integral(lam, r)?).abs() / spherical_envelope(lam, r);
            if e > worst.0 {
                worst = (e, (lam, r));
            }
        }
    }
    a.worst.insert("spherical_oracle".into(), json!({"rel_error": worst.0, "lambda": worst.1 .0, "r": worst.1 .1}));
    a.check("spherical_vs_integral", worst.0 <= 1e-8, format!("max rel error {:.3e}", worst.0));
    Ok(())
}

fn run_kxi(a: &mut Acc) -> Result<()> {
    let d = frozen::KXI_DELTA;
    a.fitted.insert("kxi_floor_delta_threshold".into(), floor_delta_threshold());
    for x in [0.0, 10.0, 100.0] {
        let f = floor_check(x, d, 2001)?;
        a.check(
            &format!("kxi_floor(xi={x})"),
            f.min_h >= frozen::FLOOR && f.quadrature_deviation <= 1e-6,
            format!("min h {:.6} at λ={:.4}; quadrature deviation {:.2e}", f.min_h, f.argmin, f.quadrature_deviation),
        );
    }
    let fit = origin_ratio_fit(5.0, 200.0, 40, d)?;
    a.fitted.insert("kxi_origin_ratio".into(), fit.constant);
    a.check(
        "kxi_origin_ratio",
        fit.constant <= frozen::KXI_ORIGIN_RATIO,
        format!("k(0)/β ∈ [{:.4}, {:.4}], C = {:.4}", fit.min_ratio, fit.max_ratio, fit.constant),
    );
    let scan = decay_scan(&[10.0, 50.0, 200.0], 2.0 * d, 1000, d)?;
    a.grid.insert("kxi_decay".into(), json!({"xi": scan.xis, "r": [0.0, 2.0 * d], "points": scan.r_points}));
    a.fitted.insert("kxi_decay".into(), scan.sup);
    a.worst.insert("kxi_decay".into(), json!({"xi": scan.argmax.0, "r": scan.argmax.1}));
    a.check("kxi_decay", scan.sup <= frozen::KXI_DECAY, format!("sup {:.6} ≤ {}", scan.sup, frozen::KXI_DECAY));
    let k = build_kxi_h3_with(&SpectralParameter::rank_one(10.0)?, d, 401)?;
    let past = kxi_h3(2.0 * d + 0.1, 10.0, d)?.abs();
    let fwd = forward_transform(&k.samples, 10.0);
    a.check("kxi_support", past < 1e-8 * k.beta, format!("|k(2δ+0.1)| = {past:.2e}"));
    a.check(
        "kxi_forward_transform",
        (fwd - k.h_at_xi).abs() < 1e-4 * k.h_at_xi,
        format!("ĥ(ξ) = {fwd:.8}, h_ξ(ξ) = {:.8}", k.h_at_xi),
    );
    Ok(())
}

fn run_displacement(m: Model, a: &mut Acc) -> Result<()> {
    let o = displacement_oracle_check(m, 100, 501, 10.0);
    a.worst.insert("displacement_oracle".into(), json!({"abs_error": o.max_abs_error, "theta": o.worst.0, "r": o.worst.1}));
    a.check("displacement_vs_matrix", o.max_abs_error <= 1e-10, format!("max abs error {:.3e}", o.max_abs_error));
    let f = displacement_lower_bound_fit(m, 0.05, 10.0, 400);
    a.fitted.insert("displacement_lower_c".into(), f.c);
    a.grid.insert("displacement_lower".into(), json!({"theta": [0.05, PI / 2.0], "r": [0.0, 10.0], "points": 400 * 400}));
    a.check(
        "displacement_lower_bound",
        f.c >= frozen::DISPLACEMENT_LOWER_C,
        format!("c = {:.4e} at (θ, r) = ({:.4}, {:.4})", f.c, f.argmin.0, f.argmin.1),
    );
    Ok(())
}

fn run_tube(m: Model, a: &mut Acc) -> Result<()> {
    let fit = fit_tube_constants(m, 400, 400);
    a.fitted.insert("tube_c1".into(), fit.fitted.c1);
    a.fitted.insert("tube_c2".into(), fit.fitted.c2);
    a.check(
        "tube_constants_frozen",
        fit.within_frozen,
        format!("fitted ({:.4}, {:.4}) vs frozen ({}, {})", fit.fitted.c1, fit.fitted.c2, fit.frozen.c1, fit.frozen.c2),
    );
    let g = tube_grid_check(m, 100, 2001, 100);
    a.grid.insert("tube".into(), json!({"theta": [0.05, PI / 2.0], "r": [0.0, R_MAX], "eps": [0.01, 5.0], "samples": g.samples}));
    a.worst.insert("tube".into(), json!({"ratio": g.worst_ratio, "theta": g.worst.0, "r": g.worst.1, "eps": g.worst.2}));
    a.check("tube_radius_bound", g.violations == 0, format!("{} of {} inside samples violate", g.violations, g.inside));
    Ok(())
}

fn run_volume(m: Model, seed: u64, a: &mut Acc) -> Result<()> {
    let mut slopes = Vec::new();
    for t in [0.2, 0.5, 1.0, PI / 2.0] {
        if let Some(s) = volume_slope(m, t, 30)? {
            a.check(
                &format!("volume_slope(theta={t:.4})"),
                (1.9..=2.1).contains(&s.slope),
                format!("slope {:.4} over ε ∈ [{}, {:.4}]", s.slope, s.eps_range.0, s.eps_range.1),
            );
            slopes.push(s.slope);
        }
    }
    a.fitted.insert("volume_slope_min".into(), slopes.iter().copied().fold(f64::INFINITY, f64::min));
    a.fitted.insert("volume_slope_max".into(), slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let v = orbital_tube_volume(m, PI / 2.0, 0.1)?;
    let mc = monte_carlo_tube_volume(m, PI / 2.0, 0.1, 400_000, seed);
    a.check(
        "volume_monte_carlo",
        (mc / v.value - 1.0).abs() <= 0.02,
        format!("quadrature {:.6e}, Monte-Carlo {:.6e}", v.value, mc),
    );
    let mut worst = 0.0f64;
    for t in [0.05, 0.3, 1.0, PI / 2.0] {
        for e in [0.01, 0.1, 1.0, 5.0] {
            let v = orbital_tube_volume(m, t, e)?;
            worst = worst.max((v.value - v.closed_form).abs() / v.closed_form);
        }
    }
    a.check("volume_closed_form", worst <= 1e-9, format!("max rel error {worst:.3e}"));
    let shape = volume_shape_fit(m, 40, 40)?;
    a.fitted.insert("volume_c_small".into(), shape.c_small);
    a.fitted.insert("volume_c_large".into(), shape.c_large);
    a.fitted.insert("volume_a_large".into(), shape.a_large);
    a.grid.insert(
        "volume".into(),
        json!({"theta": [0.05, PI / 2.0], "eps": [0.01, 5.0], "small": shape.small_points,
               "large": shape.large_points, "saturated": shape.saturated_points}),
    );
    Ok(())
}

fn run_polar(m: Model, seed: u64, a: &mut Acc) -> Result<()> {
    let r = polar_metric_check(m, 2000, seed)?;
    a.fitted.insert("polar_angular_c".into(), r.angular_lower_c);
    a.worst.insert("polar".into(), json!({"rel_error": r.max_rel_error, "t": r.worst.t}));
    a.check(
        "polar_metric",
        r.pass,
        format!("max rel error {:.3e}, radial at 0 {:.9}, monotone {}", r.max_rel_error, r.radial_at_origin, r.angular_monotone),
    );
    Ok(())
}

fn run_radial(seed: u64, a: &mut Acc) -> Result<()> {
    let r = radial_projection_check(20_000, seed);
    a.worst.insert("radial_projection".into(), json!({"min_slack": r.min_slack}));
    a.check("radial_projection", r.pass, format!("min slack {:.3e} over {} pairs", r.min_slack, r.pairs));
    Ok(())
}

pub fn verify_arch(model: Model, suite: Suite, seed: u64) -> Result<ArchReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    if model == Model::H2 && matches!(suite, Suite::Spherical | Suite::Kxi) {
        return invalid(format!("suite '{}' is only defined on h3", suite.name()));
    }
    let mut a = Acc::default();
    for s in suites {
        match (s, model) {
            (Suite::Beta, m) => run_beta(m, &mut a)?,
            (Suite::Discriminant, m) => run_discriminant(m, &mut a)?,
            (Suite::Spherical, Model::H3) => run_spherical(&mut a)?,
            (Suite::Kxi, Model::H3) => run_kxi(&mut a)?,
            (Suite::Spherical | Suite::Kxi, Model::H2) => {}
            (Suite::Displacement, m) => run_displacement(m, &mut a)?,
            (Suite::Tube, m) => run_tube(m, &mut a)?,
            (Suite::Volume, m) => run_volume(m, seed, &mut a)?,
            (Suite::Polar, m) => run_polar(m, seed, &mut a)?,
            (Suite::Radial, _) => run_radial(seed, &mut a)?,
            (Suite::All, _) => unreachable!(),
        }
    }
    let pass = a.checks.iter().all(|c| c.pass);
    Ok(ArchReport {
        suite: suite.name().into(),
        model,
        seed,
        normalization: "⟨α, ξ⟩ = ‖ξ‖; curvature −1; θ is half the rotation angle".into(),
        grid: a.grid,
        fitted_constants: a.fitted,
        worst_case: a.worst,
        checks: a.checks,
        pass,
    })
}
