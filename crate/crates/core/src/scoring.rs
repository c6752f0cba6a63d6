//! From raw events and shifts to features, a fitted model and scored shots.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::features::{build_features, detailed_strength, is_eligible, FeatureError, FeatureVector, Strength, PREDICTOR_NAMES};
use crate::glm::{fit_irls, predict, FitOptions, FittedModel, GlmError, Prediction};
use crate::ingest::{game_teams, join_on_ice, validate_shifts, GameId, GameTeams, TeamId, IngestError, OnIceContext, PlayerId, Position, ShiftRecord, ShotEvent};
use crate::linalg::Matrix;
use crate::stats::ScoredShot;

/// A shot attempt joined with its on-ice context.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedShot {
    pub event: ShotEvent,
    pub defending_team: TeamId,
    pub context: OnIceContext,
    /// Attacking team's strength; `None` outside the nine situations.
    pub strength: Option<Strength>,
    pub shooter_position: Option<Position>,
    /// Present for model-eligible shots whose features could be built.
    pub features: Option<FeatureVector>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Prepared {
    pub shots: Vec<PreparedShot>,
    pub teams: BTreeMap<GameId, GameTeams>,
    /// Game order by first appearance in the event list.
    pub game_order: BTreeMap<GameId, usize>,
    pub warnings: Vec<String>,
}

impl Prepared {
    pub fn modelled(&self) -> impl Iterator<Item = &FeatureVector> {
        self.shots.iter().filter_map(|s| s.features.as_ref())
    }
}

/// Validates shifts, joins them onto every shot attempt and builds features
/// for the eligible ones. Eligible shots that cannot be featurised (strength
/// outside the nine situations, missing fields) are skipped with a warning.
pub fn prepare(events: &[ShotEvent], shifts: &[ShiftRecord]) -> Result<Prepared, IngestError> {
    validate_shifts(shifts)?;
    let contexts = join_on_ice(events, shifts)?;
    let teams = game_teams(events, shifts)?;
    let game_order = crate::stats::game_order(events.iter().map(|e| &e.game_id));

    let mut positions: BTreeMap<&PlayerId, Position> = BTreeMap::new();
    for s in shifts {
        positions.entry(&s.player_id).or_insert(s.position);
    }

    // events of each game contiguous and in index order, so a shot's
    // predecessors form a slice
    let mut sorted: Vec<ShotEvent> = events.to_vec();
    sorted.sort_by_key(|e| (game_order[&e.game_id], e.event_index));

    let mut out = Prepared {
        game_order,
        teams,
        ..Prepared::default()
    };
    let mut game_start = 0;
    for i in 0..sorted.len() {
        if i > 0 && sorted[i].game_id != sorted[i - 1].game_id {
            game_start = i;
        }
        let e = &sorted[i];
        if !e.event_kind.is_shot_attempt() {
            continue;
        }
        let context = contexts[&e.key()].clone();
        let strength = detailed_strength(context.strength_for, context.strength_against).ok();
        let features = if is_eligible(e) {
            match build_features(e, &context, &sorted[game_start..i]) {
                Ok(f) => Some(f),
                Err(err) => {
                    let why = match err {
                        FeatureError::Strength { .. } => "strength outside the modelled situations".to_string(),
                        other => other.to_string(),
                    };
                    out.warnings
                        .push(format!("game {} event {}: skipped, {why}", e.game_id, e.event_index));
                    None
                }
            }
        } else {
            None
        };
        out.shots.push(PreparedShot {
            shooter_position: e.shooter_id.as_ref().and_then(|p| positions.get(p).copied()),
            defending_team: out.teams[&e.game_id].opponent(&e.shooter_team).clone(),
            event: e.clone(),
            context,
            strength,
            features,
        });
    }
    Ok(out)
}

/// Fits the shot model on every featurised shot.
pub fn fit_shot_model(prepared: &Prepared, options: FitOptions) -> Result<FittedModel, GlmError> {
    let rows: Vec<[f64; 25]> = prepared.modelled().map(|f| f.model_row()).collect();
    let labels: Vec<bool> = prepared.modelled().map(|f| f.label).collect();
    let design = Matrix::from_rows(&rows);
    let names: Vec<String> = PREDICTOR_NAMES.iter().map(|s| s.to_string()).collect();
    fit_irls(&design, &names, &labels, options)
}

/// Scores every featurised shot and returns all attempts for aggregation.
/// Attempts without a shooter are left out.
pub fn score_shots(prepared: &Prepared, model: &FittedModel) -> Result<Vec<ScoredShot>, GlmError> {
    let mut out = Vec::with_capacity(prepared.shots.len());
    for s in &prepared.shots {
        let Some(shooter) = s.event.shooter_id.clone() else {
            continue;
        };
        let prediction: Option<Prediction> = match &s.features {
            Some(f) => Some(predict(model, f)?),
            None => None,
        };
        out.push(ScoredShot {
            key: s.event.key(),
            kind: s.event.event_kind,
            shooter,
            shooter_position: s.shooter_position.unwrap_or(Position::Forward),
            shooting_team: s.event.shooter_team.clone(),
            defending_team: s.defending_team.clone(),
            shooter_is_home: s.event.is_home(),
            goalie: s.event.goalie_id.clone(),
            strength: s.strength,
            prediction,
        });
    }
    Ok(out)
}
