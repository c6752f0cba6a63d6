//! `#puckweight-model v1` files.
//!
//! ```text
//! #puckweight-model v1
//! n_obs,<count>
//! log_likelihood,<value>
//! converged,<true|false>
//! iterations,<count>
//! coef,<name>,<value>          one per predictor, in model order
//! cov,<i>,<j>,<value>          lower triangle, i >= j, row by row
//! ```
//! Values are written with 17 significant digits.

use puckweight_core::glm::FittedModel;
use puckweight_core::linalg::Matrix;

use super::{body_reader, csv_error, file_line, strip_version};
use crate::error::{Error, Result};

pub const MAGIC: &str = "#puckweight-model v1";

fn full(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_model(model: &FittedModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut put = |fields: &[&str]| w.write_record(fields).expect("write to memory");
    put(&["n_obs", &model.n_obs.to_string()]);
    put(&["log_likelihood", &full(model.log_likelihood)]);
    put(&["converged", &model.converged.to_string()]);
    put(&["iterations", &model.iterations.to_string()]);
    for (name, c) in model.predictor_names.iter().zip(&model.coefficients) {
        put(&["coef", name, &full(*c)]);
    }
    let p = model.coefficients.len();
    for i in 0..p {
        for j in 0..=i {
            put(&["cov", &i.to_string(), &j.to_string(), &full(model.covariance[(i, j)])]);
        }
    }
    w.into_inner().expect("flush to memory")
}

pub fn parse_model(text: &str, source: &str) -> Result<FittedModel> {
    let body = strip_version(text, MAGIC, source)?;
    let mut reader = body_reader(body, true);
    let mut names = Vec::new();
    let mut coefficients = Vec::new();
    let mut cov_entries = Vec::new();
    let (mut n_obs, mut log_likelihood, mut converged, mut iterations) = (0, 0.0, true, 0);
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = file_line(&record);
        let err = |field: &str, message: String| Error::Parse {
            path: source.to_string(),
            line,
            field: field.to_string(),
            message,
        };
        let get = |i: usize, field: &str| -> Result<&str> {
            record
                .get(i)
                .map(str::trim)
                .ok_or_else(|| err(field, "missing value".to_string()))
        };
        fn num<T: std::str::FromStr>(v: &str, field: &str, err: &dyn Fn(&str, String) -> Error) -> Result<T> {
            v.parse().map_err(|_| err(field, format!("cannot parse `{v}`")))
        }
        match get(0, "key")? {
            "" => continue,
            "n_obs" => n_obs = num(get(1, "n_obs")?, "n_obs", &err)?,
            "log_likelihood" => log_likelihood = num(get(1, "log_likelihood")?, "log_likelihood", &err)?,
            "converged" => converged = num(get(1, "converged")?, "converged", &err)?,
            "iterations" => iterations = num(get(1, "iterations")?, "iterations", &err)?,
            "coef" => {
                if !cov_entries.is_empty() {
                    return Err(err("coef", "coefficients must precede covariance".to_string()));
                }
                names.push(get(1, "name")?.to_string());
                coefficients.push(num::<f64>(get(2, "coef")?, "coef", &err)?);
            }
            "cov" => {
                let i: usize = num(get(1, "cov")?, "cov", &err)?;
                let j: usize = num(get(2, "cov")?, "cov", &err)?;
                let v: f64 = num(get(3, "cov")?, "cov", &err)?;
                if j > i || i >= coefficients.len() {
                    return Err(err("cov", format!("index ({i}, {j}) outside the lower triangle")));
                }
                cov_entries.push((i, j, v));
            }
            other => return Err(err("key", format!("unknown key `{other}`"))),
        }
    }
    let p = coefficients.len();
    if p == 0 {
        return Err(Error::Parse {
            path: source.to_string(),
            line: 1,
            field: "coef".to_string(),
            message: "model has no coefficients".to_string(),
        });
    }
    let mut covariance = Matrix::zeros(p, p);
    for (i, j, v) in cov_entries {
        covariance[(i, j)] = v;
        covariance[(j, i)] = v;
    }
    Ok(FittedModel {
        predictor_names: names,
        coefficients,
        covariance,
        n_obs,
        log_likelihood,
        converged,
        iterations,
    })
}
