//! Adjusted plus-minus: substitution-free observations, a sparse indicator
//! design and a ridge fit per outcome and situation.

mod design;
mod observations;
mod ridge;
mod wowy;

pub use design::{
    build_design, design_rows, ApmDesign, DesignOptions, DesignRow, RowSituation, SparseDesign, INTERCEPT,
    ZONE_DEFENSIVE, ZONE_OFFENSIVE,
};
pub use observations::{build_observations, ApmObservation, OutcomeKind, Outcomes, Situation};
pub use ridge::{normal_equations, ridge_fit, weighted_sse};
pub use wowy::{wowy, Wowy};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::ingest::{GameId, IngestError, PlayerId};

/// Default ridge penalty, in row-weight units (one hour of ice time).
pub const DEFAULT_LAMBDA: f64 = 3600.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ApmError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("event {event_index} of game {game} at {clock}s lies outside every observation")]
    EventOutsideObservations {
        game: GameId,
        event_index: u32,
        clock: u32,
    },
    #[error("design is rank deficient at column {0}")]
    RankDeficient(alloc::string::String),
    #[error("lambda must be finite and non-negative, got {0}")]
    InvalidLambda(f64),
    #[error("no rows in design")]
    EmptyDesign,
    #[error("player {0} never appears on the ice")]
    UnknownPlayer(PlayerId),
    #[error("player has no {0}-ice time in scope")]
    NoTime(&'static str),
    #[error("cross-validation needs at least 2 folds and 2 games")]
    TooFewFolds,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApmOptions {
    pub lambda: f64,
    pub zone_indicators: bool,
    /// Offensive and defensive blocks in one regression, or one each.
    pub joint: bool,
}

impl Default for ApmOptions {
    fn default() -> Self {
        Self {
            lambda: DEFAULT_LAMBDA,
            zone_indicators: true,
            joint: true,
        }
    }
}

/// Coefficients in outcome units per 60 minutes, indexed
/// `[outcome][situation]` in [`OutcomeKind::ALL`] and [`RowSituation::ALL`] order.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerApm {
    pub player: PlayerId,
    pub offense: [[f64; 3]; 5],
    pub defense: [[f64; 3]; 5],
    /// Seconds on ice per situation, from the player's team's side.
    pub toi: [f64; 3],
}

impl PlayerApm {
    /// Offensive contribution over the player's ice time, in outcome units.
    pub fn offense_total(&self, outcome: usize) -> f64 {
        (0..3).map(|s| self.offense[outcome][s] * self.toi[s] / 3600.0).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApmResult {
    pub lambda: f64,
    pub players: Vec<PlayerApm>,
    pub intercepts: [[f64; 3]; 5],
    /// League goals per unit of each outcome; converts totals to goals.
    pub goal_scale: [f64; 5],
    /// `(outcome, situation, player)` combinations without any rows.
    pub dropped: Vec<(OutcomeKind, RowSituation, PlayerId)>,
}

fn roster(observations: &[ApmObservation]) -> BTreeSet<PlayerId> {
    observations
        .iter()
        .flat_map(|o| o.home_skaters.iter().chain(&o.away_skaters))
        .cloned()
        .collect()
}

/// Fits every outcome in every situation.
pub fn fit_apm(observations: &[ApmObservation], options: &ApmOptions) -> Result<ApmResult, ApmError> {
    let roster = roster(observations);
    let mut players: BTreeMap<PlayerId, PlayerApm> = roster
        .iter()
        .map(|p| {
            (
                p.clone(),
                PlayerApm {
                    player: p.clone(),
                    offense: [[0.0; 3]; 5],
                    defense: [[0.0; 3]; 5],
                    toi: [0.0; 3],
                },
            )
        })
        .collect();
    let mut intercepts = [[0.0; 3]; 5];
    let mut dropped = Vec::new();

    for r in design_rows(observations, OutcomeKind::Goals) {
        let s = situation_index(r.situation);
        for p in r.offense {
            players.get_mut(p).unwrap().toi[s] += r.duration as f64;
        }
    }

    for (oi, outcome) in OutcomeKind::ALL.into_iter().enumerate() {
        let rows = design_rows(observations, outcome);
        for (si, situation) in RowSituation::ALL.into_iter().enumerate() {
            if !rows.iter().any(|r| r.situation == situation && r.duration > 0) {
                continue;
            }
            let blocks: &[(bool, bool)] = if options.joint {
                &[(true, true)]
            } else {
                &[(true, false), (false, true)]
            };
            for &(offense, defense) in blocks {
                let d = build_design(
                    &rows,
                    &roster,
                    &DesignOptions {
                        zone_indicators: options.zone_indicators,
                        offense,
                        defense,
                        situation: Some(situation),
                    },
                );
                let beta = ridge_fit(&d.design, options.lambda)?;
                if offense {
                    intercepts[oi][si] = beta[0];
                    dropped.extend(d.dropped.iter().map(|p| (outcome, situation, p.clone())));
                }
                for (p, &c) in &d.offense_col {
                    players.get_mut(p).unwrap().offense[oi][si] = beta[c];
                }
                for (p, &c) in &d.defense_col {
                    players.get_mut(p).unwrap().defense[oi][si] = beta[c];
                }
            }
        }
    }

    let mut totals = [0.0; 5];
    for o in observations {
        for (i, k) in OutcomeKind::ALL.into_iter().enumerate() {
            totals[i] += k.value(&o.home) + k.value(&o.away);
        }
    }
    let mut goal_scale = [1.0; 5];
    for i in 2..5 {
        goal_scale[i] = if totals[i] > 0.0 { totals[0] / totals[i] } else { 0.0 };
    }

    Ok(ApmResult {
        lambda: options.lambda,
        players: players.into_values().collect(),
        intercepts,
        goal_scale,
        dropped,
    })
}

pub fn situation_index(s: RowSituation) -> usize {
    match s {
        RowSituation::EvenStrength => 0,
        RowSituation::PowerPlay => 1,
        RowSituation::ShortHanded => 2,
    }
}

/// Held-out weighted squared error of each lambda in `grid`, with folds
/// formed from whole games, and the lambda with the smallest error.
pub fn cross_validate_lambda(
    observations: &[ApmObservation],
    outcome: OutcomeKind,
    situation: RowSituation,
    options: &ApmOptions,
    grid: &[f64],
    folds: usize,
) -> Result<(f64, Vec<(f64, f64)>), ApmError> {
    let games: BTreeSet<&GameId> = observations.iter().map(|o| &o.game_id).collect();
    if folds < 2 || games.len() < folds {
        return Err(ApmError::TooFewFolds);
    }
    let fold_of: BTreeMap<&GameId, usize> = games.into_iter().enumerate().map(|(i, g)| (g, i % folds)).collect();
    let rows = design_rows(observations, outcome);
    let roster = roster(observations);
    let design_options = DesignOptions {
        zone_indicators: options.zone_indicators,
        situation: Some(situation),
        ..DesignOptions::default()
    };
    let mut scores = Vec::with_capacity(grid.len());
    for &lambda in grid {
        let mut sse = 0.0;
        for k in 0..folds {
            let (train, test): (Vec<DesignRow>, Vec<DesignRow>) =
                rows.iter().cloned().partition(|r| fold_of[r.game_id] != k);
            let fit = build_design(&train, &roster, &design_options);
            if fit.design.n_rows() == 0 {
                continue;
            }
            let beta = ridge_fit(&fit.design, lambda)?;
            let mut held = build_design(&test, &roster, &design_options);
            // map held-out columns onto the training columns; unseen players score 0
            let index: BTreeMap<&str, usize> = fit
                .design
                .column_names
                .iter()
                .enumerate()
                .map(|(j, n)| (n.as_str(), j))
                .collect();
            let col_map: Vec<Option<usize>> =
                held.design.column_names.iter().map(|n| index.get(n.as_str()).copied()).collect();
            for row in held.design.rows.iter_mut() {
                *row = row
                    .iter()
                    .filter_map(|&(j, v)| col_map[j].map(|c| (c, v)))
                    .collect();
            }
            sse += weighted_sse(&held.design, &beta);
        }
        scores.push((lambda, sse));
    }
    let best = scores
        .iter()
        .fold(None, |best: Option<(f64, f64)>, &(l, e)| match best {
            Some((_, be)) if be <= e => best,
            _ => Some((l, e)),
        })
        .map(|b| b.0)
        .unwrap_or(options.lambda);
    Ok((best, scores))
}
