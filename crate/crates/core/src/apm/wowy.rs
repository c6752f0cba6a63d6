use alloc::collections::BTreeMap;

use super::design::RowSituation;
use super::observations::{ApmObservation, OutcomeKind};
use super::ApmError;
use crate::ingest::{GameId, PlayerId};

/// Team rates with and without one player on the ice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wowy {
    pub on_rate: f64,
    pub off_rate: f64,
    pub diff: f64,
    pub on_seconds: f64,
    pub off_seconds: f64,
}

impl Wowy {
    pub fn from_totals(on: (f64, f64), off: (f64, f64)) -> Result<Self, ApmError> {
        let (on_count, on_seconds) = on;
        let (off_count, off_seconds) = off;
        if on_seconds <= 0.0 {
            return Err(ApmError::NoTime("on"));
        }
        if off_seconds <= 0.0 {
            return Err(ApmError::NoTime("off"));
        }
        let on_rate = on_count * 3600.0 / on_seconds;
        let off_rate = off_count * 3600.0 / off_seconds;
        Ok(Self {
            on_rate,
            off_rate,
            diff: on_rate - off_rate,
            on_seconds,
            off_seconds,
        })
    }
}

/// Team outcome per 60 with the player on the ice versus off it, over the
/// games the player dressed in. `situation` is seen from the player's team.
pub fn wowy(
    observations: &[ApmObservation],
    player: &PlayerId,
    outcome: OutcomeKind,
    situation: Option<RowSituation>,
) -> Result<Wowy, ApmError> {
    // side of the player in each game they appear in (true = home)
    let mut sides: BTreeMap<&GameId, bool> = BTreeMap::new();
    for o in observations {
        if o.home_skaters.contains(player) {
            sides.insert(&o.game_id, true);
        } else if o.away_skaters.contains(player) {
            sides.insert(&o.game_id, false);
        }
    }
    if sides.is_empty() {
        return Err(ApmError::UnknownPlayer(player.clone()));
    }
    let (mut on, mut off) = ((0.0, 0.0), (0.0, 0.0));
    for o in observations {
        let Some(&home) = sides.get(&o.game_id) else {
            continue;
        };
        let (own, opp, result) = if home {
            (&o.home_skaters, &o.away_skaters, &o.home)
        } else {
            (&o.away_skaters, &o.home_skaters, &o.away)
        };
        if situation.is_some_and(|s| s != RowSituation::from_counts(own.len(), opp.len())) {
            continue;
        }
        let slot = if own.contains(player) { &mut on } else { &mut off };
        slot.0 += outcome.value(result);
        slot.1 += o.duration() as f64;
    }
    Wowy::from_totals(on, off)
}
