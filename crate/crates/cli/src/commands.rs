//! One function per verb. Reports go to stdout as JSON unless a CSV or
//! catalog format is requested.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use gencoef::channel::{basis_label, kraus_operators, probability_csv, rz_probability_grid, CorrectionPolicy, LogicalDensity, LogicalState};
use gencoef::coeffs::{gencoeffs, round12, GenCoeffTable, LogicalAngle, LogicalDiagonalOp};
use gencoef::conditions::{
    build_rm_css, positive_sign_pi2l, qfd_divisibility, rm_max_level, rz_divisibility, trig_condition, DivisibilityReport,
};
use gencoef::css::{parse_code_spec, CssCode};
use gencoef::f2codes::{set_enumeration_cap, BitVec};
use gencoef::gates::{parse_gate_spec, Angle, DiagonalGate, GateKind};
use gencoef::msd::{accepted_syndromes, steane_like_analysis, DistillationPolicy};
use gencoef::oracle::{builtin_pairs, crosscheck, distillation_monte_carlo, probe_states};
use gencoef::stabilizer::{stab_gencoeffs, StabilizerCode};

use crate::grid::parse_grid;
use crate::{CheckRoute, CodeArgs, CodeFormat, Failure, Format, Outcome, CAP_VARIABLE};

/// Reads the enumeration cap from the environment: `N` or `2^N`.
pub fn apply_cap_from_env() -> Outcome {
    let Ok(raw) = std::env::var(CAP_VARIABLE) else {
        return Ok(());
    };
    let bad = || Failure::Input(format!("{CAP_VARIABLE}={raw:?} is neither N nor 2^N"));
    let text = raw.trim();
    let cap = match text.strip_prefix("2^") {
        Some(e) => 1u64.checked_shl(e.parse().map_err(|_| bad())?).filter(|&c| c > 0).ok_or_else(bad)?,
        None => text.parse().map_err(|_| bad())?,
    };
    set_enumeration_cap(cap);
    Ok(())
}

fn load_code(args: &CodeArgs) -> Result<CssCode, Failure> {
    let code = parse_code_spec(&args.code)?;
    match &args.y {
        Some(y) => Ok(code.with_y(BitVec::parse(y)?)?),
        None => Ok(code),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn write_out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(value: &Value) {
    write_out(&format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values always serialize")));
}

fn to_json<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn verdict(preserved: bool, expect_preserved: bool) -> Outcome {
    if expect_preserved && !preserved {
        Err(Failure::Analytic("the code space is not preserved".into()))
    } else {
        Ok(())
    }
}

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [round12(c.re), round12(c.im)]).collect()
}

fn operator_json(op: &LogicalDiagonalOp) -> Value {
    let coeffs = op.coeffs();
    let diagonal = op.diagonal();
    let mut out = json!({
        "coeffs": pairs(coeffs),
        "diagonal": pairs(&diagonal),
        "unitary": op.is_unitary(),
    });
    if op.k() == 1 {
        if let Ok(angle) = LogicalAngle::from_pair(coeffs[0], coeffs[1]) {
            out["angle"] = to_json(&angle);
            out["name"] = json!(angle.gate_name());
        }
    } else if diagonal[0].norm() > 1e-9 {
        let phases: Vec<f64> = diagonal.iter().map(|d| round12((d / diagonal[0]).arg() / std::f64::consts::PI)).collect();
        out["diagonal_phases_over_pi"] = json!(phases);
    }
    out
}

pub fn table(code: &CodeArgs, gate: &str, collapse: bool, format: Format) -> Outcome {
    let css = load_code(code)?;
    let table = gencoeffs(&css, &parse_gate_spec(gate, css.n())?)?;
    match format {
        Format::Csv => write_out(&table.to_csv(collapse)),
        Format::Json => emit(&to_json(&table.report(collapse))),
    }
    Ok(())
}

fn sumsq_report(css: &CssCode, gate: &DiagonalGate) -> Result<(bool, Value), Failure> {
    let table = gencoeffs(css, gate)?;
    let preserved = table.preserves();
    let mut out = json!({
        "route": "sumsq",
        "preserved": preserved,
        "trivial_row_weight": round12(table.trivial_row_weight()),
    });
    let zero = BitVec::zeros(css.n())?;
    let key = if preserved { "logical_operator" } else { "trivial_row_operator" };
    out[key] = operator_json(&table.row_operator(&zero)?);
    Ok((preserved, out))
}

fn divisibility_json(route: &str, report: &DivisibilityReport) -> Value {
    let mut out = to_json(report);
    out["route"] = json!(route);
    out["preserved"] = json!(report.holds);
    out
}

fn trig_report(css: &CssCode, theta: f64) -> Result<(bool, Value), Failure> {
    match trig_condition(css, theta) {
        Ok(report) => {
            let mut out = to_json(&report);
            out["route"] = json!("trig");
            out["preserved"] = json!(report.holds);
            Ok((report.holds, out))
        }
        Err(gencoef::Error::Unsupported(reason)) => {
            let (preserved, mut out) = sumsq_report(css, &DiagonalGate::rz(css.n(), theta)?)?;
            out["fallback_reason"] = json!(reason);
            Ok((preserved, out))
        }
        Err(e) => Err(e.into()),
    }
}

fn signed_matrix(matrix: &[Vec<u64>]) -> Vec<Vec<i64>> {
    matrix.iter().map(|row| row.iter().map(|&x| x as i64).collect()).collect()
}

pub fn check(code: &CodeArgs, gate_spec: &str, route: CheckRoute, expect_preserved: bool) -> Outcome {
    let css = load_code(code)?;
    let gate = parse_gate_spec(gate_spec, css.n())?;
    let (preserved, mut out) = match route {
        CheckRoute::Sumsq => sumsq_report(&css, &gate)?,
        CheckRoute::Div => match gate.kind() {
            GateKind::Qfd { matrix, level } => {
                let report = qfd_divisibility(&css, &signed_matrix(matrix), *level)?;
                (report.holds, divisibility_json("div", &report))
            }
            GateKind::RotZ { .. } => {
                let rest = gate_spec.split_once(':').map(|(_, r)| r).unwrap_or("");
                let p = Angle::parse(rest)?
                    .as_pi_over()
                    .ok_or_else(|| Failure::Input(format!("the div route needs rz:pi/p, got {gate_spec:?}")))?;
                let report = rz_divisibility(&css, p)?;
                (report.holds, divisibility_json("div", &report))
            }
            GateKind::PhaseTable(_) => {
                return Err(Failure::Input("the div route needs a qfd gate or rz:pi/p".into()));
            }
        },
        CheckRoute::Trig => match gate.kind() {
            GateKind::RotZ { theta } => trig_report(&css, *theta)?,
            _ => return Err(Failure::Input("the trig route needs an rz gate".into())),
        },
    };
    out["code"] = json!(code.code);
    out["gate"] = json!(gate.describe());
    emit(&out);
    verdict(preserved, expect_preserved)
}

pub fn check_qfd(code: &CodeArgs, level: u32, matrix: &str, expect_preserved: bool) -> Outcome {
    let css = load_code(code)?;
    let gate = parse_gate_spec(&format!("qfd:l={level}:R={matrix}"), css.n())?;
    let GateKind::Qfd { matrix, level } = gate.kind() else {
        unreachable!("parsed as a quadratic-form gate");
    };
    let report = qfd_divisibility(&css, &signed_matrix(matrix), *level)?;
    emit(&divisibility_json("div", &report));
    verdict(report.holds, expect_preserved)
}

pub fn check_rz(code: &CodeArgs, p: u64, expect_preserved: bool) -> Outcome {
    let report = rz_divisibility(&load_code(code)?, p)?;
    emit(&divisibility_json("div", &report));
    verdict(report.holds, expect_preserved)
}

pub fn check_trig(code: &CodeArgs, theta: &str, expect_preserved: bool) -> Outcome {
    let (preserved, out) = trig_report(&load_code(code)?, Angle::parse(theta)?.radians)?;
    emit(&out);
    verdict(preserved, expect_preserved)
}

pub fn logical_op(code: &CodeArgs, gate: &str, mu: Option<&str>) -> Outcome {
    let css = load_code(code)?;
    let table = gencoeffs(&css, &parse_gate_spec(gate, css.n())?)?;
    let mu = match mu {
        Some(m) => BitVec::parse(m)?,
        None => BitVec::zeros(css.n())?,
    };
    let row = table
        .syndromes()
        .index_of(&mu)
        .ok_or_else(|| Failure::Input(format!("syndrome {mu} has the wrong length")))?;
    emit(&json!({
        "mu": table.syndromes().leader(row).to_string(),
        "operator": operator_json(&table.row_operator(&mu)?),
    }));
    Ok(())
}

fn parse_states(k: usize, states: Option<&str>) -> Result<Vec<(String, LogicalState)>, Failure> {
    match states {
        None => Ok((0..1usize << k).map(|a| (basis_label(a, k), LogicalState::basis(k, a))).collect()),
        Some(list) => list
            .split(',')
            .map(|s| {
                let state: LogicalState = s.trim().parse()?;
                if state.k() != k {
                    return Err(Failure::Input(format!("state {s:?} has {} qubits, the code encodes {k}", state.k())));
                }
                Ok((s.trim().to_string(), state))
            })
            .collect(),
    }
}

pub fn probs(code: &CodeArgs, theta_grid: &str, states: Option<&str>) -> Outcome {
    let css = load_code(code)?;
    let states = parse_states(css.k(), states)?;
    let records = rz_probability_grid(&css, &parse_grid(theta_grid)?, &states)?;
    write_out(&probability_csv(&records));
    Ok(())
}

fn density_json(rho: &LogicalDensity) -> Value {
    let m = rho.matrix();
    let rows: Vec<Vec<[f64; 2]>> =
        (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [round12(m[(i, j)].re), round12(m[(i, j)].im)]).collect()).collect();
    json!(rows)
}

pub fn channel(code: &CodeArgs, gate: &str, policy: &str, state: Option<&str>) -> Outcome {
    let css = load_code(code)?;
    let table = gencoeffs(&css, &parse_gate_spec(gate, css.n())?)?;
    let policy: CorrectionPolicy = policy.parse()?;
    let channel = kraus_operators(&table, &policy)?;
    let kraus: Vec<Value> = channel
        .kraus()
        .iter()
        .map(|b| json!({"mu": b.mu.to_string(), "correction": b.correction.to_string(), "operator": operator_json(&b.op)}))
        .collect();
    let mut out = json!({
        "code": code.code,
        "gate": table.gate_description(),
        "k": channel.k(),
        "completeness_deviation": channel.completeness_deviation(),
        "kraus": kraus,
    });
    if let Some(s) = state {
        let state: LogicalState = s.parse()?;
        let probabilities: Vec<f64> = channel.probabilities(&state)?.into_iter().map(round12).collect();
        let output = channel.apply(&LogicalDensity::pure(&state))?;
        out["state"] = json!(s);
        out["probabilities"] = json!(probabilities);
        out["output_density"] = density_json(&output);
        out["output_fidelity_with_input"] = json!(round12(output.overlap(&state)));
    }
    emit(&out);
    Ok(())
}

pub fn rm_level(r1: usize, r2: usize, m: usize, verify: bool) -> Outcome {
    let level = rm_max_level(r1, r2, m)?;
    let mut out = json!({"r1": r1, "r2": r2, "m": m, "max_level": level});
    if !verify {
        emit(&out);
        return Ok(());
    }
    let code = build_rm_css(r1, r2, m, false)?;
    let at = positive_sign_pi2l(&code, level)?.holds();
    let above = positive_sign_pi2l(&code, level + 1)?.holds();
    out["holds_at_level"] = json!(at);
    out["holds_above_level"] = json!(above);
    out["verified"] = json!(at && !above);
    emit(&out);
    if at && !above {
        Ok(())
    } else {
        Err(Failure::Analytic(format!("level {level} is not tight for RM({r1},{m}) / RM({r2},{m})")))
    }
}

fn code_json(code: &CssCode) -> Result<Value, Failure> {
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "x_distance": code.x_distance()?,
        "z_distance": code.z_distance()?,
        "catalog": code.to_catalog(),
    }))
}

pub fn rm_build(r1: usize, r2: usize, m: usize, punctured: bool, format: CodeFormat) -> Outcome {
    let code = build_rm_css(r1, r2, m, punctured)?;
    match format {
        CodeFormat::Catalog => write_out(&code.to_catalog()),
        CodeFormat::Json => {
            let mut out = code_json(&code)?;
            out["r1"] = json!(r1);
            out["r2"] = json!(r2);
            out["m"] = json!(m);
            out["punctured"] = json!(punctured);
            emit(&out);
        }
    }
    Ok(())
}

fn monte_carlo(
    css: &CssCode,
    gate: &DiagonalGate,
    table: &GenCoeffTable,
    policy: &DistillationPolicy,
    grid: &[f64],
    samples: u64,
    seed: u64,
) -> Result<Vec<Value>, Failure> {
    let zero = BitVec::zeros(css.n())?;
    let z = table.frame().z_string(1);
    let accepted: Vec<(BitVec, BitVec)> = accepted_syndromes(table, policy)?
        .into_iter()
        .map(|(mu, flip)| (mu, if flip { z } else { zero }))
        .collect();
    grid.iter()
        .enumerate()
        .map(|(i, &p)| {
            let est = distillation_monte_carlo(css, gate, &accepted, p, samples, seed.wrapping_add(i as u64))?;
            let mut v = to_json(&est);
            v["p"] = json!(p);
            Ok(v)
        })
        .collect()
}

pub fn msd(
    code: &CodeArgs,
    gate_spec: &str,
    policy: &str,
    p_grid: &str,
    mc_samples: u64,
    seed: u64,
    csv: Option<&Path>,
) -> Outcome {
    let css = load_code(code)?;
    let gate = parse_gate_spec(gate_spec, css.n())?;
    let table = gencoeffs(&css, &gate)?;
    let policy: DistillationPolicy = policy.parse()?;
    let grid = parse_grid(p_grid)?;
    if let Some(p) = grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Failure::Input(format!("error rate {p} is outside [0, 1]")));
    }
    let analysis = steane_like_analysis(&table, &policy)?;
    let report = analysis.report(&code.code, gate_spec, &grid)?;
    let mut out = to_json(&report);
    if mc_samples > 0 {
        out["monte_carlo"] = json!(monte_carlo(&css, &gate, &table, &policy, &grid, mc_samples, seed)?);
        out["seed"] = json!(seed);
    }
    if let Some(path) = csv {
        std::fs::write(path, report.curve_csv()).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    emit(&out);
    Ok(())
}

pub fn stab_convert(path: &Path, distance: Option<u32>, gate: Option<&str>, format: CodeFormat) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let stab = StabilizerCode::parse(&text)?;
    let d = match distance {
        Some(d) => d,
        None => stab.distance()?,
    };
    let css = stab.to_css(d)?;
    if format == CodeFormat::Catalog {
        write_out(&css.to_catalog());
        return Ok(());
    }
    let mut out = json!({
        "n": stab.n(),
        "k": stab.k(),
        "distance": d,
        "pure_x": stab.pure_x().len(),
        "pure_z": stab.pure_z().len(),
        "mixed": stab.mixed().len(),
        "css": code_json(&css)?,
    });
    let mut agree = true;
    if let Some(spec) = gate {
        let g = parse_gate_spec(spec, stab.n())?;
        let original = stab_gencoeffs(&stab, &g)?;
        let converted = gencoeffs(&css, &g)?;
        let diff = original.max_diff(&converted)?;
        agree = diff <= 1e-9;
        out["gate"] = json!(g.describe());
        out["table_max_diff"] = json!(diff);
        out["preserves"] = json!(original.preserves());
    }
    emit(&out);
    if agree {
        Ok(())
    } else {
        Err(Failure::Analytic("the converted code has a different table".into()))
    }
}

pub fn oracle_check(code: Option<&str>, gate: Option<&str>, policy: &str, tol: f64) -> Outcome {
    let policy: CorrectionPolicy = policy.parse()?;
    let pairs = match code {
        Some(spec) => {
            let css = parse_code_spec(spec)?;
            let gate_spec = gate.unwrap_or("rz:pi/4");
            let g = parse_gate_spec(gate_spec, css.n())?;
            vec![(format!("{spec} {gate_spec}"), css, g)]
        }
        None if gate.is_some() => return Err(Failure::Input("--gate needs --code".into())),
        None => builtin_pairs()?,
    };
    let mut failures = 0;
    let mut results = Vec::new();
    for (name, css, g) in pairs {
        if matches!(policy, CorrectionPolicy::ZCorrect) && css.k() != 1 {
            results.push(json!({"name": name, "skipped": "z-correct needs one logical qubit"}));
            continue;
        }
        let report = crosscheck(&css, &g, &probe_states(css.k()), &policy)?;
        let passes = report.passes(tol);
        failures += usize::from(!passes);
        let mut v = to_json(&report);
        v["name"] = json!(name);
        v["passes"] = json!(passes);
        results.push(v);
    }
    emit(&json!({"tolerance": tol, "results": results}));
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Analytic(format!("{failures} pair(s) disagree with the oracle")))
    }
}
