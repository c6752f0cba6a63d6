use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ApmError;
use crate::ingest::{
    game_teams, on_ice_segments, EventKind, GameId, PlayerId, ShiftRecord, ShotEvent, TeamId, Zone,
    PERIOD_SECONDS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Situation {
    EvenStrength,
    PowerPlayHome,
    PowerPlayAway,
}

impl Situation {
    pub fn from_counts(home: usize, away: usize) -> Self {
        match home.cmp(&away) {
            core::cmp::Ordering::Equal => Situation::EvenStrength,
            core::cmp::Ordering::Greater => Situation::PowerPlayHome,
            core::cmp::Ordering::Less => Situation::PowerPlayAway,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Situation::EvenStrength => "EV",
            Situation::PowerPlayHome => "PP_home",
            Situation::PowerPlayAway => "PP_away",
        }
    }
}

/// Event counts and weighted shots for one team over an interval.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Outcomes {
    pub goals: u32,
    pub shots: u32,
    pub fenwick: u32,
    pub corsi: u32,
    pub wshots: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OutcomeKind {
    Goals,
    WeightedShots,
    Shots,
    Fenwick,
    Corsi,
}

impl OutcomeKind {
    /// Table order: G, W, S, F, C.
    pub const ALL: [OutcomeKind; 5] = [
        OutcomeKind::Goals,
        OutcomeKind::WeightedShots,
        OutcomeKind::Shots,
        OutcomeKind::Fenwick,
        OutcomeKind::Corsi,
    ];

    pub fn token(self) -> &'static str {
        match self {
            OutcomeKind::Goals => "goals",
            OutcomeKind::WeightedShots => "wshots",
            OutcomeKind::Shots => "shots",
            OutcomeKind::Fenwick => "fenwick",
            OutcomeKind::Corsi => "corsi",
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            OutcomeKind::Goals => "G",
            OutcomeKind::WeightedShots => "W",
            OutcomeKind::Shots => "S",
            OutcomeKind::Fenwick => "F",
            OutcomeKind::Corsi => "C",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|o| o.token() == token)
    }

    pub fn value(self, o: &Outcomes) -> f64 {
        match self {
            OutcomeKind::Goals => o.goals as f64,
            OutcomeKind::WeightedShots => o.wshots,
            OutcomeKind::Shots => o.shots as f64,
            OutcomeKind::Fenwick => o.fenwick as f64,
            OutcomeKind::Corsi => o.corsi as f64,
        }
    }
}

impl Outcomes {
    fn add(&mut self, kind: EventKind, weight: f64) {
        match kind {
            EventKind::Goal | EventKind::ShotOnGoal => {
                if kind == EventKind::Goal {
                    self.goals += 1;
                }
                self.shots += 1;
                self.fenwick += 1;
                self.corsi += 1;
                self.wshots += weight;
            }
            EventKind::MissedShot => {
                self.fenwick += 1;
                self.corsi += 1;
            }
            EventKind::BlockedShot => self.corsi += 1,
            EventKind::Faceoff | EventKind::Other => {}
        }
    }
}

/// A stretch of play with no substitution.
#[derive(Debug, Clone, PartialEq)]
pub struct ApmObservation {
    pub game_id: GameId,
    pub start_seconds: u32,
    pub end_seconds: u32,
    pub home_team: TeamId,
    pub away_team: TeamId,
    pub home_skaters: Vec<PlayerId>,
    pub away_skaters: Vec<PlayerId>,
    /// Zone of the most recent faceoff, from the home team's side.
    pub zone_start: Zone,
    pub situation: Situation,
    pub home: Outcomes,
    pub away: Outcomes,
}

impl ApmObservation {
    pub fn duration(&self) -> u32 {
        self.end_seconds - self.start_seconds
    }
}

/// Cuts every game into substitution-free observations and tallies the shot
/// attempts inside each. `shot_weight` gives the weighted-shot value of an
/// on-goal event (its model probability); unscored shots count zero.
pub fn build_observations(
    events: &[ShotEvent],
    shifts: &[ShiftRecord],
    shot_weight: &dyn Fn(&ShotEvent) -> Option<f64>,
) -> Result<Vec<ApmObservation>, ApmError> {
    let teams = game_teams(events, shifts)?;
    let segments = on_ice_segments(shifts, &teams)?;

    let mut faceoffs: BTreeMap<&GameId, Vec<&ShotEvent>> = BTreeMap::new();
    for e in events.iter().filter(|e| e.event_kind == EventKind::Faceoff) {
        faceoffs.entry(&e.game_id).or_default().push(e);
    }
    for evs in faceoffs.values_mut() {
        evs.sort_by_key(|e| (e.game_clock_seconds, e.event_index));
    }

    let mut out: Vec<ApmObservation> = Vec::with_capacity(segments.len());
    for seg in segments {
        let gt = &teams[&seg.game_id];
        let period_start = seg.start - seg.start % PERIOD_SECONDS;
        let zone_start = faceoffs
            .get(&seg.game_id)
            .and_then(|f| {
                let i = f.partition_point(|e| e.game_clock_seconds <= seg.start);
                i.checked_sub(1).map(|i| f[i])
            })
            .filter(|e| e.game_clock_seconds >= period_start)
            .and_then(|e| {
                let z = e.zone?;
                Some(if e.shooter_team == gt.home { z } else { z.flip() })
            })
            .unwrap_or(Zone::Neutral);
        let situation = Situation::from_counts(seg.home.len(), seg.away.len());
        out.push(ApmObservation {
            game_id: seg.game_id,
            start_seconds: seg.start,
            end_seconds: seg.end,
            home_team: gt.home.clone(),
            away_team: gt.away.clone(),
            home_skaters: seg.home,
            away_skaters: seg.away,
            zone_start,
            situation,
            home: Outcomes::default(),
            away: Outcomes::default(),
        });
    }

    // observations are grouped by game and sorted by start within a game
    let mut ranges: BTreeMap<GameId, (usize, usize)> = BTreeMap::new();
    for (i, o) in out.iter().enumerate() {
        ranges
            .entry(o.game_id.clone())
            .and_modify(|r| r.1 = i + 1)
            .or_insert((i, i + 1));
    }
    for e in events.iter().filter(|e| e.event_kind.is_shot_attempt()) {
        let t = e.game_clock_seconds;
        let found = ranges.get(&e.game_id).and_then(|&(lo, hi)| {
            let obs = &out[lo..hi];
            let i = obs.partition_point(|o| o.end_seconds <= t);
            (i < obs.len() && obs[i].start_seconds <= t).then_some(lo + i)
        });
        let Some(i) = found else {
            return Err(ApmError::EventOutsideObservations {
                game: e.game_id.clone(),
                event_index: e.event_index,
                clock: t,
            });
        };
        let weight = if e.event_kind.is_on_goal() {
            shot_weight(e).unwrap_or(0.0)
        } else {
            0.0
        };
        let o = &mut out[i];
        let side = if e.shooter_team == o.home_team {
            &mut o.home
        } else {
            &mut o.away
        };
        side.add(e.event_kind, weight);
    }
    Ok(out)
}
