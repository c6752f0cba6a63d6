//! Shot-quality modelling for hockey play-by-play data.
//!
//! The crate turns shot events and shift charts into a logistic goal
//! probability model ("weighted shots"), aggregates the weighted shots into
//! skater, goalie and team statistic lines, measures split-half reliability
//! of those statistics, and fits ridge-regression adjusted plus-minus.
//!
//! Everything here is pure computation over in-memory values and builds
//! without `std`; parsing, file formats and the command line live in the
//! `puckweight` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod apm;
pub mod features;
pub mod glm;
pub mod ingest;
pub mod linalg;
pub mod reliability;
pub mod scoring;
pub mod stats;
pub mod synth;

pub use features::{FeatureVector, ShotSide, Strength, PREDICTOR_NAMES};
pub use glm::{FitOptions, FittedModel, Prediction};
pub use ingest::{
    EventKey, EventKind, GameId, OnIceContext, PlayerId, Position, ShiftRecord, ShotEvent,
    ShotType, TeamId, Zone,
};
