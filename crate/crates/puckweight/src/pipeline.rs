//! Loading inputs and running analyses, shared by the commands.

use std::collections::HashMap;
use std::path::Path;

use puckweight_core::apm::{build_observations, ApmObservation};
use puckweight_core::glm::{baseline_model, roc_auc, FitOptions, FittedModel};
use puckweight_core::ingest::{on_ice_segments, EventKey, ShiftRecord, ShotEvent};
use puckweight_core::reliability::{self, CorrelationReport, Measure, ReliabilityError, SplitSpec};
use puckweight_core::scoring::{fit_shot_model, prepare, score_shots, Prepared};
use puckweight_core::stats::{
    goalie_games, skater_games, team_games, EntityGames, IceTime, League, Scope, ScoredShot, Side, Statistic, Tally,
};

use crate::error::Result;
use crate::formats::{events, model, read_file, shifts};

/// Model argument naming the built-in baseline coefficients.
pub const BASELINE: &str = "baseline";

pub fn load_events(path: &Path) -> Result<Vec<ShotEvent>> {
    events::parse_events(&read_file(path)?, &path.display().to_string())
}

pub fn load_shifts(path: &Path) -> Result<Vec<ShiftRecord>> {
    shifts::parse_shifts(&read_file(path)?, &path.display().to_string())
}

/// Reads a model file, or returns the baseline model for `baseline`.
pub fn load_model(spec: &str) -> Result<FittedModel> {
    if spec == BASELINE {
        return Ok(baseline_model());
    }
    let path = Path::new(spec);
    model::parse_model(&read_file(path)?, spec)
}

#[derive(Debug, Clone)]
pub struct Fit {
    pub prepared: Prepared,
    pub model: FittedModel,
    /// In-sample area under the ROC curve.
    pub auc: f64,
}

pub fn fit(events: &[ShotEvent], shifts: &[ShiftRecord], options: FitOptions) -> Result<Fit> {
    let prepared = prepare(events, shifts)?;
    let model = fit_shot_model(&prepared, options)?;
    let scores: Vec<f64> = prepared
        .modelled()
        .map(|f| puckweight_core::glm::predict(&model, f).map(|p| p.probability))
        .collect::<Result<_, _>>()?;
    let labels: Vec<bool> = prepared.modelled().map(|f| f.label).collect();
    let auc = roc_auc(&scores, &labels)?.auc;
    Ok(Fit { prepared, model, auc })
}

/// Shot attempts joined, featurised and scored under one model.
#[derive(Debug, Clone)]
pub struct Scored {
    pub prepared: Prepared,
    pub shots: Vec<ScoredShot>,
}

pub fn score(events: &[ShotEvent], shifts: &[ShiftRecord], model: &FittedModel) -> Result<Scored> {
    let prepared = prepare(events, shifts)?;
    let shots = score_shots(&prepared, model)?;
    Ok(Scored { prepared, shots })
}

impl Scored {
    pub fn ice_time(&self, shifts: &[ShiftRecord], scope: &Scope) -> Result<IceTime> {
        let segments = on_ice_segments(shifts, &self.prepared.teams)?;
        Ok(IceTime::from_segments(&segments, &self.prepared.teams, scope))
    }

    /// Goal probability of each scored shot by event.
    pub fn weights(&self) -> HashMap<EventKey, f64> {
        self.shots
            .iter()
            .filter_map(|s| s.prediction.map(|p| (s.key.clone(), p.probability)))
            .collect()
    }
}

/// Whose games a reliability analysis splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entity {
    Skaters,
    Goalies,
    Teams(Side),
}

impl Entity {
    pub fn from_token(t: &str, side: Side) -> Option<Self> {
        match t {
            "skaters" => Some(Entity::Skaters),
            "goalies" => Some(Entity::Goalies),
            "teams" => Some(Entity::Teams(side)),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Entity::Skaters => "skaters",
            Entity::Goalies => "goalies",
            Entity::Teams(_) => "teams",
        }
    }

    /// Statistics examined when none is named.
    pub fn default_stats(self) -> Vec<Statistic> {
        use Statistic::*;
        match self {
            Entity::Skaters => vec![ShPct, ExpShPct, AdjShPct, Goals60, Shots60, Fenwick60, Corsi60, WShots60],
            Entity::Goalies => vec![SvPct, ExpSvPct, AdjSvPct],
            Entity::Teams(Side::For) => vec![ShPct, ExpShPct, AdjShPct, Goals60, Shots60, Fenwick60, Corsi60, WShots60],
            Entity::Teams(Side::Against) => vec![SvPct, ExpSvPct, AdjSvPct, Goals60, Shots60, Fenwick60, Corsi60, WShots60],
        }
    }
}

pub fn entity_games(scored: &Scored, ice: &IceTime, scope: &Scope, entity: Entity) -> Vec<EntityGames> {
    let order = &scored.prepared.game_order;
    match entity {
        Entity::Skaters => skater_games(&scored.shots, ice, order, scope),
        Entity::Goalies => goalie_games(&scored.shots, order, scope),
        Entity::Teams(side) => team_games(&scored.shots, ice, order, &scored.prepared.teams, scope, side),
    }
}

/// Exposure used by the minimum-shots threshold.
pub fn shot_exposure(t: &Tally) -> f64 {
    t.model_shots
}

/// Split-half correlation of each statistic with `target` (itself when `None`).
pub fn correlations(
    entities: &[EntityGames],
    stats: &[Statistic],
    target: Option<Statistic>,
    league: &League,
    spec: &SplitSpec,
) -> Vec<(Statistic, Result<CorrelationReport, ReliabilityError>)> {
    stats
        .iter()
        .map(|&stat| {
            let target = target.unwrap_or(stat);
            let f = move |t: &Tally| stat.evaluate(t, league);
            let g = move |t: &Tally| target.evaluate(t, league);
            let m_stat = Measure {
                name: stat.token(),
                eval: &f,
            };
            let m_target = Measure {
                name: target.token(),
                eval: &g,
            };
            (
                stat,
                reliability::predictive(entities, &m_stat, &m_target, spec, &shot_exposure),
            )
        })
        .collect()
}

/// APM observations with weighted shots taken from `scored`.
pub fn observations(events: &[ShotEvent], shifts: &[ShiftRecord], scored: &Scored) -> Result<Vec<ApmObservation>> {
    let weights = scored.weights();
    let w = |e: &ShotEvent| weights.get(&e.key()).copied();
    Ok(build_observations(events, shifts, &w)?)
}
