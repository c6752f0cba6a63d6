//! Shot feature derivation.
//!
//! Rink frame: origin at centre ice, `x` toward the attacked goal, whose mouth
//! sits on the long axis at `x = 89` ft. Angle is folded to `[0, 90]` degrees
//! and the side of the axis is kept separately, as seen by the goalie facing
//! out (`+y` is the goalie's right).

use alloc::vec::Vec;

use thiserror::Error;

use crate::ingest::{EventKind, OnIceContext, PlayerId, ShotEvent, ShotType, Zone};

/// Goal-mouth centre on the long axis, feet from centre ice.
pub const GOAL_X_FT: f64 = 89.0;
/// `|y|` below this is on the axis.
pub const CENTER_TOLERANCE_FT: f64 = 1e-9;
pub const REBOUND_WINDOW_SECONDS: u32 = 2;
pub const REBOUND_MAX_DISTANCE_FT: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShotSide {
    Left,
    Center,
    Right,
}

impl ShotSide {
    pub fn mirror(self) -> Self {
        match self {
            ShotSide::Left => ShotSide::Right,
            ShotSide::Center => ShotSide::Center,
            ShotSide::Right => ShotSide::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub distance: f64,
    pub angle: f64,
    pub side: ShotSide,
}

impl Geometry {
    /// Angle with the goalie's right positive and left negative.
    pub fn signed_angle(&self) -> f64 {
        match self.side {
            ShotSide::Left => -self.angle,
            ShotSide::Center => 0.0,
            ShotSide::Right => self.angle,
        }
    }
}

/// Distance (ft) and folded angle (degrees) from the goal-mouth centre.
///
/// Shots from on or behind the goal line get angle 90.
pub fn geometry(x: f64, y: f64) -> Geometry {
    let along = GOAL_X_FT - x;
    let lateral = y.abs();
    let distance = libm::hypot(along, lateral);
    let angle = if along <= 0.0 {
        90.0
    } else {
        libm::atan2(lateral, along).to_degrees()
    };
    let side = if lateral < CENTER_TOLERANCE_FT {
        ShotSide::Center
    } else if y > 0.0 {
        ShotSide::Right
    } else {
        ShotSide::Left
    };
    Geometry {
        distance,
        angle,
        side,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rebound {
    pub rebound: bool,
    pub own_rebound: bool,
    /// Goalie sweep from the goalie's right toward the left, degrees.
    pub angle_change_left: f64,
    /// Goalie sweep from the goalie's left toward the right, degrees.
    pub angle_change_right: f64,
}

impl Rebound {
    pub fn angle_change(&self) -> f64 {
        self.angle_change_left + self.angle_change_right
    }
}

/// Rebound flags for `shot` given the events that precede it in its game.
///
/// Only the immediately preceding row matters: it must be a saved shot on
/// goal by the same team in the same period, at most two seconds earlier,
/// and the rebound itself must come from under 25 ft.
pub fn classify_rebound(shot: &ShotEvent, prev_events: &[ShotEvent]) -> Rebound {
    let Some(prev) = prev_events.last() else {
        return Rebound::default();
    };
    let (Some((x, y)), Some((px, py))) = (shot.coordinates(), prev.coordinates()) else {
        return Rebound::default();
    };
    let current = geometry(x, y);
    let is_rebound = prev.game_id == shot.game_id
        && prev.period == shot.period
        && prev.event_kind == EventKind::ShotOnGoal
        && prev.shooter_team == shot.shooter_team
        && shot.game_clock_seconds >= prev.game_clock_seconds
        && shot.game_clock_seconds - prev.game_clock_seconds <= REBOUND_WINDOW_SECONDS
        && current.distance < REBOUND_MAX_DISTANCE_FT;
    if !is_rebound {
        return Rebound::default();
    }
    let initial = geometry(px, py);
    let sweep = current.signed_angle() - initial.signed_angle();
    Rebound {
        rebound: true,
        own_rebound: shot.shooter_id.is_some() && prev.shooter_id == shot.shooter_id,
        angle_change_left: if sweep < 0.0 { -sweep } else { 0.0 },
        angle_change_right: if sweep > 0.0 { sweep } else { 0.0 },
    }
}

/// Skater-count situation classes after grouping rare situations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Strength {
    EV55,
    EV44,
    PP54,
    PP53,
    SH45,
    SH35,
}

impl Strength {
    pub const ALL: [Strength; 6] = [
        Strength::EV55,
        Strength::EV44,
        Strength::PP54,
        Strength::PP53,
        Strength::SH45,
        Strength::SH35,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Strength::EV55 => "EV55",
            Strength::EV44 => "EV44",
            Strength::PP54 => "PP54",
            Strength::PP53 => "PP53",
            Strength::SH45 => "SH45",
            Strength::SH35 => "SH35",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.token() == token)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FeatureError {
    #[error("no detailed strength for {skaters_for} skaters against {skaters_against}")]
    Strength { skaters_for: u8, skaters_against: u8 },
    #[error("shooter {0} is not on the ice in the shot context")]
    ShooterNotOnIce(PlayerId),
    #[error("event {event_index} lacks {field}")]
    MissingField {
        event_index: u32,
        field: &'static str,
    },
}

pub fn detailed_strength(strength_for: u8, strength_against: u8) -> Result<Strength, FeatureError> {
    match (strength_for, strength_against) {
        (5, 5) => Ok(Strength::EV55),
        (4, 4) | (3, 3) => Ok(Strength::EV44),
        (5, 4) | (4, 3) => Ok(Strength::PP54),
        (5, 3) => Ok(Strength::PP53),
        (4, 5) | (3, 4) => Ok(Strength::SH45),
        (3, 5) => Ok(Strength::SH35),
        (f, a) => Err(FeatureError::Strength {
            skaters_for: f,
            skaters_against: a,
        }),
    }
}

/// Model inputs for one eligible shot.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub distance: f64,
    pub angle: f64,
    pub rebound: bool,
    pub own_rebound: bool,
    pub angle_change_left: f64,
    pub angle_change_right: f64,
    pub shot_type: ShotType,
    pub strength: Strength,
    pub shooter_fatigue: f64,
    pub off_toi: f64,
    pub def_toi: f64,
    pub score_diff: f64,
    pub by_home: bool,
    pub reb_x_angle: f64,
    pub own_x_angle: f64,
    pub tip_x_angle: f64,
    pub label: bool,
}

/// Model predictors in coefficient-table order. Reference levels
/// (wrap-around, EV55) have no column.
pub const PREDICTOR_NAMES: [&str; 25] = [
    "(Intercept)",
    "Own rebound",
    "Rebound",
    "Distance",
    "Angle",
    "Back",
    "Slap",
    "Snap",
    "Tip",
    "Wrist",
    "EV44",
    "PP54",
    "PP53",
    "SH45",
    "SH35",
    "Angle Change Left",
    "Angle Change Right",
    "Shooter fatigue",
    "Off Time on ice",
    "Def Time on ice",
    "Scorediff",
    "Byhome",
    "Reb:Angle",
    "Own:Angle",
    "Tip:Angle",
];

/// Feature-matrix export columns, in field order with categories expanded.
pub const EXPORT_COLUMNS: [&str; 25] = [
    "distance",
    "angle",
    "rebound",
    "own_rebound",
    "angle_change_left",
    "angle_change_right",
    "backhand",
    "slap",
    "snap",
    "tip_in",
    "wrist",
    "EV44",
    "PP54",
    "PP53",
    "SH45",
    "SH35",
    "shooter_fatigue",
    "off_toi",
    "def_toi",
    "score_diff",
    "by_home",
    "reb_x_angle",
    "own_x_angle",
    "tip_x_angle",
    "label",
];

fn indicator(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

impl FeatureVector {
    /// Value of a named model predictor, or `None` for an unknown name.
    pub fn predictor_value(&self, name: &str) -> Option<f64> {
        let v = match name {
            "(Intercept)" => 1.0,
            "Own rebound" => indicator(self.own_rebound),
            "Rebound" => indicator(self.rebound),
            "Distance" => self.distance,
            "Angle" => self.angle,
            "Back" => indicator(self.shot_type == ShotType::Backhand),
            "Slap" => indicator(self.shot_type == ShotType::Slap),
            "Snap" => indicator(self.shot_type == ShotType::Snap),
            "Tip" => indicator(self.shot_type == ShotType::TipIn),
            "Wrist" => indicator(self.shot_type == ShotType::Wrist),
            "EV44" => indicator(self.strength == Strength::EV44),
            "PP54" => indicator(self.strength == Strength::PP54),
            "PP53" => indicator(self.strength == Strength::PP53),
            "SH45" => indicator(self.strength == Strength::SH45),
            "SH35" => indicator(self.strength == Strength::SH35),
            "Angle Change Left" => self.angle_change_left,
            "Angle Change Right" => self.angle_change_right,
            "Shooter fatigue" => self.shooter_fatigue,
            "Off Time on ice" => self.off_toi,
            "Def Time on ice" => self.def_toi,
            "Scorediff" => self.score_diff,
            "Byhome" => indicator(self.by_home),
            "Reb:Angle" => self.reb_x_angle,
            "Own:Angle" => self.own_x_angle,
            "Tip:Angle" => self.tip_x_angle,
            _ => return None,
        };
        Some(v)
    }

    /// Full design row in [`PREDICTOR_NAMES`] order, intercept included.
    pub fn model_row(&self) -> [f64; 25] {
        PREDICTOR_NAMES.map(|n| self.predictor_value(n).unwrap())
    }

    /// Row in [`EXPORT_COLUMNS`] order.
    pub fn export_row(&self) -> [f64; 25] {
        [
            self.distance,
            self.angle,
            indicator(self.rebound),
            indicator(self.own_rebound),
            self.angle_change_left,
            self.angle_change_right,
            indicator(self.shot_type == ShotType::Backhand),
            indicator(self.shot_type == ShotType::Slap),
            indicator(self.shot_type == ShotType::Snap),
            indicator(self.shot_type == ShotType::TipIn),
            indicator(self.shot_type == ShotType::Wrist),
            indicator(self.strength == Strength::EV44),
            indicator(self.strength == Strength::PP54),
            indicator(self.strength == Strength::PP53),
            indicator(self.strength == Strength::SH45),
            indicator(self.strength == Strength::SH35),
            self.shooter_fatigue,
            self.off_toi,
            self.def_toi,
            self.score_diff,
            indicator(self.by_home),
            self.reb_x_angle,
            self.own_x_angle,
            self.tip_x_angle,
            indicator(self.label),
        ]
    }
}

fn mean_seconds(list: &[(PlayerId, u32)]) -> f64 {
    if list.is_empty() {
        return 0.0;
    }
    list.iter().map(|&(_, s)| s as f64).sum::<f64>() / list.len() as f64
}

/// Derives the feature vector of an eligible shot.
///
/// `prev_events` are the rows preceding the shot in its game, in stream order.
pub fn build_features(
    shot: &ShotEvent,
    ctx: &OnIceContext,
    prev_events: &[ShotEvent],
) -> Result<FeatureVector, FeatureError> {
    let missing = |field| FeatureError::MissingField {
        event_index: shot.event_index,
        field,
    };
    let (x, y) = shot.coordinates().ok_or_else(|| missing("coordinates"))?;
    let shot_type = shot.shot_type.ok_or_else(|| missing("shot_type"))?;
    let shooter = shot.shooter_id.as_ref().ok_or_else(|| missing("shooter"))?;
    let fatigue = ctx
        .skaters_for
        .iter()
        .find(|(p, _)| p == shooter)
        .map(|&(_, s)| s)
        .ok_or_else(|| FeatureError::ShooterNotOnIce(shooter.clone()))?;
    let strength = detailed_strength(ctx.strength_for, ctx.strength_against)?;
    let geo = geometry(x, y);
    let reb = classify_rebound(shot, prev_events);
    let tip = shot_type == ShotType::TipIn;
    Ok(FeatureVector {
        distance: geo.distance,
        angle: geo.angle,
        rebound: reb.rebound,
        own_rebound: reb.own_rebound,
        angle_change_left: reb.angle_change_left,
        angle_change_right: reb.angle_change_right,
        shot_type,
        strength,
        shooter_fatigue: fatigue as f64,
        off_toi: mean_seconds(&ctx.skaters_for),
        def_toi: mean_seconds(&ctx.skaters_against),
        score_diff: shot.shooting_team_score as f64 - shot.defending_team_score as f64,
        by_home: shot.is_home(),
        reb_x_angle: indicator(reb.rebound) * geo.angle,
        own_x_angle: indicator(reb.own_rebound) * geo.angle,
        tip_x_angle: indicator(tip) * geo.angle,
        label: shot.event_kind == EventKind::Goal,
    })
}

/// Whether a row enters the shot model: a shot on goal or goal from the
/// offensive zone with the goalie on the ice.
pub fn is_eligible(event: &ShotEvent) -> bool {
    event.event_kind.is_on_goal() && event.zone == Some(Zone::Offensive) && event.goalie_on_ice
}

pub fn filter_eligible(events: &[ShotEvent]) -> Vec<&ShotEvent> {
    events.iter().filter(|e| is_eligible(e)).collect()
}
