//! Event and shift domain types, shift validation, and the on-ice join.
//!
//! The game clock is the number of seconds elapsed since the opening
//! face-off with periods flattened, so period 2 starts at 1200. Shift
//! intervals are half-open `[start, end)`: a player whose shift ends at the
//! exact second of an event is already off the ice.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Length of a regulation period in seconds.
pub const PERIOD_SECONDS: u32 = 1200;

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(String::from(s))
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

string_id!(
    /// Opaque game identifier.
    GameId
);
string_id!(
    /// Opaque player identifier.
    PlayerId
);
string_id!(
    /// Opaque team identifier.
    TeamId
);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EventKind {
    ShotOnGoal,
    Goal,
    MissedShot,
    BlockedShot,
    /// Face-off row. Carries the zone (relative to the event's team) used
    /// for zone starts; never scored.
    Faceoff,
    /// Any other play-by-play row. Kept only because it breaks rebound chains.
    Other,
}

impl EventKind {
    pub const ALL: [EventKind; 6] = [
        EventKind::ShotOnGoal,
        EventKind::Goal,
        EventKind::MissedShot,
        EventKind::BlockedShot,
        EventKind::Faceoff,
        EventKind::Other,
    ];

    pub fn token(self) -> &'static str {
        match self {
            EventKind::ShotOnGoal => "shot-on-goal",
            EventKind::Goal => "goal",
            EventKind::MissedShot => "missed-shot",
            EventKind::BlockedShot => "blocked-shot",
            EventKind::Faceoff => "faceoff",
            EventKind::Other => "other",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.token() == token)
    }

    /// Shot on goal, goal, missed or blocked shot.
    pub fn is_shot_attempt(self) -> bool {
        matches!(
            self,
            EventKind::ShotOnGoal | EventKind::Goal | EventKind::MissedShot | EventKind::BlockedShot
        )
    }

    /// A goal also counts as a shot on goal.
    pub fn is_on_goal(self) -> bool {
        matches!(self, EventKind::ShotOnGoal | EventKind::Goal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShotType {
    WrapAround,
    Wrist,
    Slap,
    Backhand,
    Snap,
    TipIn,
}

impl ShotType {
    pub const ALL: [ShotType; 6] = [
        ShotType::WrapAround,
        ShotType::Wrist,
        ShotType::Slap,
        ShotType::Backhand,
        ShotType::Snap,
        ShotType::TipIn,
    ];

    pub fn token(self) -> &'static str {
        match self {
            ShotType::WrapAround => "wrap-around",
            ShotType::Wrist => "wrist",
            ShotType::Slap => "slap",
            ShotType::Backhand => "backhand",
            ShotType::Snap => "snap",
            ShotType::TipIn => "tip-in",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.token() == token)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    Offensive,
    Neutral,
    Defensive,
}

impl Zone {
    pub fn token(self) -> &'static str {
        match self {
            Zone::Offensive => "offensive",
            Zone::Neutral => "neutral",
            Zone::Defensive => "defensive",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        [Zone::Offensive, Zone::Neutral, Zone::Defensive]
            .into_iter()
            .find(|z| z.token() == token)
    }

    /// The same zone seen from the other team.
    pub fn flip(self) -> Self {
        match self {
            Zone::Offensive => Zone::Defensive,
            Zone::Neutral => Zone::Neutral,
            Zone::Defensive => Zone::Offensive,
        }
    }
}

/// One row of the play-by-play stream.
///
/// Shot attempts carry the shooter and, for shots on goal, location and shot
/// type. Coordinates are feet in the attacking frame: origin at centre ice,
/// `x` toward the goal being attacked.
#[derive(Debug, Clone, PartialEq)]
pub struct ShotEvent {
    pub game_id: GameId,
    pub season: String,
    pub event_index: u32,
    pub period: u8,
    pub game_clock_seconds: u32,
    pub event_kind: EventKind,
    pub shooter_id: Option<PlayerId>,
    pub shooter_team: TeamId,
    pub home_team: TeamId,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub shot_type: Option<ShotType>,
    pub shooting_team_score: u32,
    pub defending_team_score: u32,
    pub zone: Option<Zone>,
    pub goalie_on_ice: bool,
    pub goalie_id: Option<PlayerId>,
}

impl ShotEvent {
    pub fn key(&self) -> EventKey {
        EventKey {
            game_id: self.game_id.clone(),
            event_index: self.event_index,
        }
    }

    pub fn is_home(&self) -> bool {
        self.shooter_team == self.home_team
    }

    pub fn coordinates(&self) -> Option<(f64, f64)> {
        Some((self.x?, self.y?))
    }
}

/// Identifies an event across games.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventKey {
    pub game_id: GameId,
    pub event_index: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Forward,
    Defense,
    Goalie,
}

impl Position {
    pub fn token(self) -> &'static str {
        match self {
            Position::Forward => "F",
            Position::Defense => "D",
            Position::Goalie => "G",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        match token {
            "F" => Some(Position::Forward),
            "D" => Some(Position::Defense),
            "G" => Some(Position::Goalie),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftRecord {
    pub game_id: GameId,
    pub player_id: PlayerId,
    pub team: TeamId,
    pub position: Position,
    pub start_seconds: u32,
    pub end_seconds: u32,
}

impl ShiftRecord {
    pub fn covers(&self, t: u32) -> bool {
        self.start_seconds <= t && t < self.end_seconds
    }

    pub fn is_skater(&self) -> bool {
        self.position != Position::Goalie
    }
}

/// Skaters on the ice at one shot attempt, with how long each had been on.
#[derive(Debug, Clone, PartialEq)]
pub struct OnIceContext {
    pub shot_event_index: u32,
    /// `(player, seconds on ice at the shot)`, sorted by player id.
    pub skaters_for: Vec<(PlayerId, u32)>,
    pub skaters_against: Vec<(PlayerId, u32)>,
    pub strength_for: u8,
    pub strength_against: u8,
}

impl OnIceContext {
    pub fn new(
        shot_event_index: u32,
        mut skaters_for: Vec<(PlayerId, u32)>,
        mut skaters_against: Vec<(PlayerId, u32)>,
    ) -> Self {
        skaters_for.sort();
        skaters_against.sort();
        Self {
            shot_event_index,
            strength_for: skaters_for.len() as u8,
            strength_against: skaters_against.len() as u8,
            skaters_for,
            skaters_against,
        }
    }

    pub fn seconds_on_ice(&self, player: &PlayerId) -> Option<u32> {
        self.skaters_for
            .iter()
            .chain(self.skaters_against.iter())
            .find(|(p, _)| p == player)
            .map(|&(_, s)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("zero-length shift for player {player} in game {game} at {start}s")]
    ZeroLengthShift {
        game: GameId,
        player: PlayerId,
        start: u32,
    },
    #[error("overlapping shifts for player {player} in game {game}: [{first_start}, {first_end}) and [{second_start}, {second_end})")]
    OverlappingShifts {
        game: GameId,
        player: PlayerId,
        first_start: u32,
        first_end: u32,
        second_start: u32,
        second_end: u32,
    },
    #[error("no {side} skaters on ice for event {event_index} of game {game} at {clock}s")]
    NoSkaters {
        game: GameId,
        event_index: u32,
        clock: u32,
        side: &'static str,
    },
    #[error("game {game} has {found} teams, expected 2")]
    TeamCount { game: GameId, found: usize },
}

/// Checks per-player shift sanity: positive length and no overlap within a game.
pub fn validate_shifts(shifts: &[ShiftRecord]) -> Result<(), IngestError> {
    let mut by_player: BTreeMap<(&GameId, &PlayerId), Vec<&ShiftRecord>> = BTreeMap::new();
    for s in shifts {
        if s.start_seconds >= s.end_seconds {
            return Err(IngestError::ZeroLengthShift {
                game: s.game_id.clone(),
                player: s.player_id.clone(),
                start: s.start_seconds,
            });
        }
        by_player
            .entry((&s.game_id, &s.player_id))
            .or_default()
            .push(s);
    }
    for ((game, player), mut list) in by_player {
        list.sort_by_key(|s| (s.start_seconds, s.end_seconds));
        for pair in list.windows(2) {
            if pair[1].start_seconds < pair[0].end_seconds {
                return Err(IngestError::OverlappingShifts {
                    game: game.clone(),
                    player: player.clone(),
                    first_start: pair[0].start_seconds,
                    first_end: pair[0].end_seconds,
                    second_start: pair[1].start_seconds,
                    second_end: pair[1].end_seconds,
                });
            }
        }
    }
    Ok(())
}

/// Sweep over one game's shifts for non-decreasing query times.
pub(crate) struct ActiveShifts<'a> {
    pending: Vec<&'a ShiftRecord>,
    next: usize,
    active: Vec<&'a ShiftRecord>,
    last_t: u32,
}

impl<'a> ActiveShifts<'a> {
    pub(crate) fn new(mut shifts: Vec<&'a ShiftRecord>) -> Self {
        shifts.sort_by(|a, b| {
            (a.start_seconds, &a.player_id, a.end_seconds).cmp(&(
                b.start_seconds,
                &b.player_id,
                b.end_seconds,
            ))
        });
        Self {
            pending: shifts,
            next: 0,
            active: Vec::new(),
            last_t: 0,
        }
    }

    /// Shifts covering `t`. Query times must not decrease.
    pub(crate) fn at(&mut self, t: u32) -> &[&'a ShiftRecord] {
        debug_assert!(t >= self.last_t, "query times must not decrease");
        self.last_t = t;
        while self.next < self.pending.len() && self.pending[self.next].start_seconds <= t {
            self.active.push(self.pending[self.next]);
            self.next += 1;
        }
        self.active.retain(|s| s.end_seconds > t);
        &self.active
    }
}

fn shifts_by_game(shifts: &[ShiftRecord]) -> BTreeMap<&GameId, Vec<&ShiftRecord>> {
    let mut map: BTreeMap<&GameId, Vec<&ShiftRecord>> = BTreeMap::new();
    for s in shifts {
        map.entry(&s.game_id).or_default().push(s);
    }
    map
}

/// Joins shift data onto every shot attempt.
///
/// Lists each non-goalie on the ice at the shot (shift covering the shot time
/// under `[start, end)`) together with `shot time - shift start`.
pub fn join_on_ice(
    events: &[ShotEvent],
    shifts: &[ShiftRecord],
) -> Result<BTreeMap<EventKey, OnIceContext>, IngestError> {
    let mut shots_by_game: BTreeMap<&GameId, Vec<&ShotEvent>> = BTreeMap::new();
    for e in events.iter().filter(|e| e.event_kind.is_shot_attempt()) {
        shots_by_game.entry(&e.game_id).or_default().push(e);
    }
    let mut game_shifts = shifts_by_game(shifts);
    let mut out = BTreeMap::new();
    for (game, mut shots) in shots_by_game {
        shots.sort_by_key(|e| (e.game_clock_seconds, e.event_index));
        let mut sweep = ActiveShifts::new(game_shifts.remove(game).unwrap_or_default());
        for shot in shots {
            let t = shot.game_clock_seconds;
            let mut skaters_for = Vec::new();
            let mut skaters_against = Vec::new();
            for s in sweep.at(t).iter().filter(|s| s.is_skater()) {
                let entry = (s.player_id.clone(), t - s.start_seconds);
                if s.team == shot.shooter_team {
                    skaters_for.push(entry);
                } else {
                    skaters_against.push(entry);
                }
            }
            for (list, side) in [(&skaters_for, "shooting"), (&skaters_against, "defending")] {
                if list.is_empty() {
                    return Err(IngestError::NoSkaters {
                        game: game.clone(),
                        event_index: shot.event_index,
                        clock: t,
                        side,
                    });
                }
            }
            out.insert(
                shot.key(),
                OnIceContext::new(shot.event_index, skaters_for, skaters_against),
            );
        }
    }
    Ok(out)
}

/// The two teams in a game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTeams {
    pub home: TeamId,
    pub away: TeamId,
}

impl GameTeams {
    pub fn opponent(&self, team: &TeamId) -> &TeamId {
        if *team == self.home {
            &self.away
        } else {
            &self.home
        }
    }
}

/// Resolves home and away team per game from events and shifts.
pub fn game_teams(
    events: &[ShotEvent],
    shifts: &[ShiftRecord],
) -> Result<BTreeMap<GameId, GameTeams>, IngestError> {
    let mut teams: BTreeMap<&GameId, (Option<&TeamId>, BTreeSet<&TeamId>)> = BTreeMap::new();
    for e in events {
        let entry = teams.entry(&e.game_id).or_default();
        entry.0 = Some(&e.home_team);
        entry.1.insert(&e.home_team);
        entry.1.insert(&e.shooter_team);
    }
    for s in shifts {
        teams.entry(&s.game_id).or_default().1.insert(&s.team);
    }
    let mut out = BTreeMap::new();
    for (game, (home, set)) in teams {
        let found = set.len();
        let home = match home {
            Some(h) if found == 2 => h,
            _ => {
                return Err(IngestError::TeamCount {
                    game: game.clone(),
                    found,
                })
            }
        };
        let away = set.into_iter().find(|t| *t != home).cloned().unwrap();
        out.insert(
            game.clone(),
            GameTeams {
                home: home.clone(),
                away,
            },
        );
    }
    Ok(out)
}

/// A maximal stretch of clock with no substitution and no period boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub game_id: GameId,
    pub start: u32,
    pub end: u32,
    /// Home skaters on the ice, sorted.
    pub home: Vec<PlayerId>,
    pub away: Vec<PlayerId>,
}

impl Segment {
    pub fn duration(&self) -> u32 {
        self.end - self.start
    }
}

/// Last second of play in a game, taken as the latest shift end.
pub fn game_end(shifts: &[&ShiftRecord]) -> u32 {
    shifts.iter().map(|s| s.end_seconds).max().unwrap_or(0)
}

/// Partitions each game's clock `[0, end)` at every shift start and end and
/// every period boundary.
pub fn on_ice_segments(
    shifts: &[ShiftRecord],
    teams: &BTreeMap<GameId, GameTeams>,
) -> Result<Vec<Segment>, IngestError> {
    let mut out = Vec::new();
    for (game, game_shifts) in shifts_by_game(shifts) {
        let Some(gt) = teams.get(game) else {
            return Err(IngestError::TeamCount {
                game: game.clone(),
                found: 1,
            });
        };
        let end = game_end(&game_shifts);
        let mut bounds: BTreeSet<u32> = BTreeSet::new();
        bounds.insert(0);
        bounds.insert(end);
        for s in &game_shifts {
            bounds.insert(s.start_seconds);
            bounds.insert(s.end_seconds);
        }
        let mut p = PERIOD_SECONDS;
        while p < end {
            bounds.insert(p);
            p += PERIOD_SECONDS;
        }
        let bounds: Vec<u32> = bounds.into_iter().collect();
        let mut sweep = ActiveShifts::new(game_shifts);
        for w in bounds.windows(2) {
            let (start, stop) = (w[0], w[1]);
            let mut home = Vec::new();
            let mut away = Vec::new();
            for s in sweep.at(start).iter().filter(|s| s.is_skater()) {
                if s.team == gt.home {
                    home.push(s.player_id.clone());
                } else {
                    away.push(s.player_id.clone());
                }
            }
            home.sort();
            away.sort();
            out.push(Segment {
                game_id: game.clone(),
                start,
                end: stop,
                home,
                away,
            });
        }
    }
    Ok(out)
}
