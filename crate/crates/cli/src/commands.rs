//! One function per subcommand. Each returns the JSON document to print.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use torus_shadow::fusion::quantum_dimension;
use torus_shadow::kernel::holonomy::{ribbon_holonomy, torus_representation};
use torus_shadow::kernel::regularize::MAX_STEP_LEVEL;
use torus_shadow::kernel::{
    det_half, det_k, det_rig_constant, det_rig_n, det_rig_quadrature, regularized_indicator,
    RegularizationMesh, SphereMetricSample, SteppedField,
};
use torus_shadow::rep::{character_eval, weight_multiplicities};
use torus_shadow::shadow::{build_link, state_sum, validate as validate_link};
use torus_shadow::{
    Error, FusionTable, LevelAlphabet, LinkDescription, RootSystem, StateSumOptions, TorusVector,
    VerlindeOracle,
};

use crate::args::{parse_json, read_file, JobConfig};
use crate::error::{CliError, EXIT_OK};

/// What a command produced: a JSON document or raw text.
pub enum Output {
    Json(Value),
    Text(String),
}

#[derive(Serialize)]
struct ComplexOut {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexOut {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn note(job: &JobConfig, msg: impl AsRef<str>) {
    if job.diagnostics {
        eprintln!("tshadow: {}", msg.as_ref());
    }
}

fn alphabet(job: &JobConfig) -> Result<Arc<LevelAlphabet>, CliError> {
    let rs = Arc::new(RootSystem::from_label(job.group()?)?);
    Ok(Arc::new(LevelAlphabet::new(rs, job.k()?)?))
}

fn torus_element(job: &JobConfig) -> Result<(RootSystem, TorusVector), CliError> {
    let rs = RootSystem::from_label(job.group()?)?;
    let b = rs.torus_from_simple_root_values(&job.alpha_b()?)?;
    Ok((rs, b))
}

/// Reads a link file, taking `group` and `k` from the job when the file omits
/// them and rejecting files that disagree with explicit values.
fn load_link(job: &JobConfig) -> Result<LinkDescription, CliError> {
    let path = job.input()?;
    let mut value: Value = parse_json(path, &read_file(path)?)?;
    if let Value::Object(map) = &mut value {
        for (key, given) in [
            ("group", job.group.clone().map(Value::from)),
            ("k", job.k.map(Value::from)),
        ] {
            match (map.get(key), given) {
                (None, Some(v)) => {
                    map.insert(key.into(), v);
                }
                (Some(found), Some(v)) if *found != v => {
                    return Err(Error::Mismatch(format!(
                        "{key} is {v} on the command line but {found} in {}",
                        path.display()
                    ))
                    .into());
                }
                _ => {}
            }
        }
    }
    serde_json::from_value(value)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())).into())
}

pub fn shadow(job: &JobConfig) -> Result<Output, CliError> {
    let desc = load_link(job)?;
    let link = build_link(&desc)?;
    let table = FusionTable::with_workers(link.alphabet.clone(), job.workers)?;
    let options = StateSumOptions {
        workers: job.workers,
        diagnostics: job.diagnostics,
    };
    let result = state_sum(&link.diagram, &link.alphabet, &table, options)?;
    note(
        job,
        format!(
            "{} of {} colorings have a nonzero fusion product",
            result.colorings, result.total
        ),
    );
    let mut out = json!({
        "group": desc.group,
        "k": desc.k,
        "value": ComplexOut::from(result.value),
        "colorings": result.colorings,
        "total_colorings": result.total.to_string(),
    });
    if let Some(terms) = result.terms {
        let elements = link.alphabet.elements();
        out["faces"] = json!(link.diagram.faces());
        out["terms"] = terms
            .iter()
            .map(|t| {
                json!({
                    "coloring": t.coloring.iter().map(|&c| &elements[c]).collect::<Vec<_>>(),
                    "value": ComplexOut::from(t.value),
                })
            })
            .collect();
    }
    Ok(Output::Json(out))
}

pub fn fusion(job: &JobConfig) -> Result<Output, CliError> {
    let al = alphabet(job)?;
    let table = FusionTable::with_workers(al.clone(), job.workers)?;
    let oracle = VerlindeOracle::new(al.clone())?;
    let n = al.len();
    for l in 0..n {
        for m in 0..n {
            for v in 0..n {
                let want = oracle.coefficient_by_index(l, m, v)?;
                if table.get(l, m, v) != want {
                    return Err(Error::Oracle(format!(
                        "N^{}_{{{},{}}} = {} but the Verlinde formula gives {want}",
                        al.elements()[l],
                        al.elements()[m],
                        al.elements()[v],
                        table.get(l, m, v)
                    ))
                    .into());
                }
            }
        }
    }
    note(job, format!("{} coefficients agree with the Verlinde formula", n * n * n));
    if job.text {
        return Ok(Output::Text(table.to_text()));
    }
    let nonzero = table.triples().filter(|t| t.3 != 0).count();
    let mut out = json!({
        "group": job.group()?,
        "k": al.k(),
        "alphabet": al.elements(),
        "nonzero": nonzero,
        "verlinde_checked": true,
    });
    if job.dump {
        out["entries"] = table
            .triples()
            .map(|(l, m, v, c)| json!({ "lambda": l, "mu": m, "nu": v, "n": c }))
            .collect();
    }
    Ok(Output::Json(out))
}

pub fn qdim(job: &JobConfig) -> Result<Output, CliError> {
    let al = alphabet(job)?;
    if let Some(w) = job.weight()? {
        al.require(&w)?;
        let d = quantum_dimension(&al, &w)?;
        return Ok(Output::Json(json!({
            "group": job.group()?, "k": al.k(), "weight": w, "qdim": d,
        })));
    }
    let mut total = 0.0;
    let dims = al
        .elements()
        .iter()
        .map(|w| {
            let d = quantum_dimension(&al, w)?;
            total += d * d;
            Ok(json!({ "weight": w, "qdim": d }))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Output::Json(json!({
        "group": job.group()?,
        "k": al.k(),
        "dimensions": dims,
        "sum_of_squares": total,
    })))
}

pub fn det(job: &JobConfig) -> Result<Output, CliError> {
    let (rs, b) = torus_element(job)?;
    let chi = job.chi.unwrap_or(2);
    let values: Vec<String> = rs.root_values(&b)?.iter().map(|v| v.to_string()).collect();
    let mut out = json!({
        "group": job.group()?,
        "alpha_b": job.alpha_b()?.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "root_values": values,
        "chi": chi,
        "det_k": det_k(&rs, &b)?,
        "det_half": det_half(&rs, &b)?,
        "det_rig": det_rig_constant(&rs, &b, chi)?,
    });
    if let Some(n) = job.quadrature {
        if chi != 2 {
            return Err(Error::Mismatch(format!(
                "the quadrature grid is a sphere (chi = 2), but chi = {chi} was requested"
            ))
            .into());
        }
        if n == 0 {
            return Err(CliError::Usage("--quadrature must be positive".into()));
        }
        let metric = SphereMetricSample::round(n, 2 * n);
        let bf = b.to_f64();
        let q = det_rig_quadrature(&rs, |_| bf.clone(), &metric)?;
        out["quadrature"] = json!({ "grid": [n, 2 * n], "value": ComplexOut::from(q) });
    }
    Ok(Output::Json(out))
}

pub fn regularize(job: &JobConfig) -> Result<Output, CliError> {
    let (rs, b) = torus_element(job)?;
    let n = job.n.unwrap_or(8);
    if n == 0 || n > MAX_STEP_LEVEL {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_STEP_LEVEL}")));
    }
    let mesh = RegularizationMesh::stepped(&rs, &SteppedField::constant(b.clone()), n)?;
    let value = det_rig_n(&mesh);
    let limit = match det_rig_constant(&rs, &b, 2) {
        Ok(x) => json!(x),
        Err(Error::Singular(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(Output::Json(json!({
        "group": job.group()?,
        "n": n,
        "cells": mesh.total_cells(),
        "indicator": regularized_indicator(&mesh),
        "det_rig_n": ComplexOut::from(value),
        "det_rig": limit,
    })))
}

pub fn holonomy(job: &JobConfig) -> Result<Output, CliError> {
    let (rs, b) = torus_element(job)?;
    let n = job.n.unwrap_or(1024);
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let weight = job
        .weight()?
        .unwrap_or_else(|| torus_shadow::Weight::zero(rs.rank()));
    if weight.rank() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            found: weight.rank(),
        }
        .into());
    }
    if !weight.is_dominant() {
        return Err(Error::NotDominant {
            weight: weight.to_string(),
        }
        .into());
    }
    let ws = weight_multiplicities(&rs, &weight)?;
    let closed = character_eval(&rs, &ws, &b)?;
    let bf = b.to_f64();
    let m = torus_representation(&rs, &ws, &bf);
    let direct = ribbon_holonomy(n, 4, |_, _| m.clone()).trace();
    Ok(Output::Json(json!({
        "group": job.group()?,
        "weight": weight,
        "n": n,
        "closed_form": ComplexOut::from(closed),
        "direct": ComplexOut::from(direct),
        "difference": (closed - direct).norm(),
    })))
}

/// The validation report and its exit status: 0 when clean, otherwise the
/// smallest status among the violations.
pub fn validate(job: &JobConfig) -> Result<(Output, i32), CliError> {
    let path = job.input()?;
    let desc: LinkDescription = parse_json(path, &read_file(path)?)?;
    let errors: Vec<CliError> = validate_link(&desc).into_iter().map(CliError::Lib).collect();
    let status = errors.iter().map(CliError::exit_code).min().unwrap_or(EXIT_OK);
    let violations: Vec<_> = errors.iter().map(CliError::record).collect();
    Ok((
        Output::Json(json!({ "valid": errors.is_empty(), "violations": violations })),
        status,
    ))
}
