//! Feature-matrix export: one row per modelled shot, [`EXPORT_COLUMNS`] order.

use puckweight_core::features::{FeatureVector, EXPORT_COLUMNS};

use super::fmt_f64;

pub fn write_feature_matrix<'a>(rows: impl IntoIterator<Item = &'a FeatureVector>) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(EXPORT_COLUMNS).expect("write to memory");
    for f in rows {
        w.write_record(f.export_row().map(fmt_f64)).expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}
