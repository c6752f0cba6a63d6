//! Coordinate dump of a sparse APM design.
//!
//! ```text
//! #puckweight-design v1
//! shape,<rows>,<cols>
//! col,<j>,<name>,<penalized 1|0>      one per column
//! row,<i>,<response>,<weight>         one per row
//! entry,<i>,<j>,<value>               nonzeros, row-major
//! ```
//! Indices are 0-based.

use puckweight_core::apm::SparseDesign;

use super::fmt_f64;

pub const MAGIC: &str = "#puckweight-design v1";

pub fn write_design(d: &SparseDesign) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut put = |fields: &[&str]| w.write_record(fields).expect("write to memory");
    put(&["shape", &d.n_rows().to_string(), &d.n_cols().to_string()]);
    for (j, (name, pen)) in d.column_names.iter().zip(&d.penalized).enumerate() {
        put(&["col", &j.to_string(), name, if *pen { "1" } else { "0" }]);
    }
    for i in 0..d.n_rows() {
        put(&["row", &i.to_string(), &fmt_f64(d.response[i]), &fmt_f64(d.weights[i])]);
    }
    for (i, row) in d.rows.iter().enumerate() {
        for &(j, v) in row {
            put(&["entry", &i.to_string(), &j.to_string(), &fmt_f64(v)]);
        }
    }
    w.into_inner().expect("flush to memory")
}
