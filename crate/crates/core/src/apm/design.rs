use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::observations::{ApmObservation, OutcomeKind};
use crate::ingest::{GameId, PlayerId, Zone};

/// Manpower from the attacking team's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowSituation {
    EvenStrength,
    PowerPlay,
    ShortHanded,
}

impl RowSituation {
    pub const ALL: [RowSituation; 3] = [
        RowSituation::EvenStrength,
        RowSituation::PowerPlay,
        RowSituation::ShortHanded,
    ];

    pub fn from_counts(offense: usize, defense: usize) -> Self {
        match offense.cmp(&defense) {
            core::cmp::Ordering::Equal => RowSituation::EvenStrength,
            core::cmp::Ordering::Greater => RowSituation::PowerPlay,
            core::cmp::Ordering::Less => RowSituation::ShortHanded,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            RowSituation::EvenStrength => "EV",
            RowSituation::PowerPlay => "PP",
            RowSituation::ShortHanded => "SH",
        }
    }

    pub fn from_token(t: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.token().eq_ignore_ascii_case(t))
    }
}

/// Weighted least-squares problem with sparse rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseDesign {
    pub column_names: Vec<String>,
    /// Whether the ridge penalty applies to each column.
    pub penalized: Vec<bool>,
    /// `(column, value)` pairs per row, columns ascending.
    pub rows: Vec<Vec<(usize, f64)>>,
    pub response: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SparseDesign {
    pub fn n_cols(&self) -> usize {
        self.column_names.len()
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Builds a design from dense rows, keeping the nonzero entries.
    pub fn from_dense(
        rows: &[Vec<f64>],
        response: Vec<f64>,
        weights: Vec<f64>,
        penalized: Vec<bool>,
    ) -> Self {
        let p = penalized.len();
        Self {
            column_names: (0..p).map(|j| format!("x{j}")).collect(),
            penalized,
            rows: rows
                .iter()
                .map(|r| {
                    assert_eq!(r.len(), p);
                    r.iter()
                        .enumerate()
                        .filter(|(_, v)| **v != 0.0)
                        .map(|(j, &v)| (j, v))
                        .collect()
                })
                .collect(),
            response,
            weights,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignOptions {
    pub zone_indicators: bool,
    pub offense: bool,
    pub defense: bool,
    /// Keep only rows in this situation.
    pub situation: Option<RowSituation>,
}

impl Default for DesignOptions {
    fn default() -> Self {
        Self {
            zone_indicators: true,
            offense: true,
            defense: true,
            situation: None,
        }
    }
}

/// One row of the APM design before column assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignRow<'a> {
    pub game_id: &'a GameId,
    pub offense: &'a [PlayerId],
    pub defense: &'a [PlayerId],
    /// Zone start from the attacking team's point of view.
    pub zone: Zone,
    pub situation: RowSituation,
    pub duration: u32,
    pub outcome: f64,
}

/// Home-offense and away-offense rows of every observation, in order.
pub fn design_rows<'a>(observations: &'a [ApmObservation], outcome: OutcomeKind) -> Vec<DesignRow<'a>> {
    let mut rows = Vec::with_capacity(2 * observations.len());
    for o in observations {
        rows.push(DesignRow {
            game_id: &o.game_id,
            offense: &o.home_skaters,
            defense: &o.away_skaters,
            zone: o.zone_start,
            situation: RowSituation::from_counts(o.home_skaters.len(), o.away_skaters.len()),
            duration: o.duration(),
            outcome: outcome.value(&o.home),
        });
        rows.push(DesignRow {
            game_id: &o.game_id,
            offense: &o.away_skaters,
            defense: &o.home_skaters,
            zone: o.zone_start.flip(),
            situation: RowSituation::from_counts(o.away_skaters.len(), o.home_skaters.len()),
            duration: o.duration(),
            outcome: outcome.value(&o.away),
        });
    }
    rows
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApmDesign {
    pub design: SparseDesign,
    /// Players with columns, sorted.
    pub players: Vec<PlayerId>,
    /// Column of each player's offensive indicator.
    pub offense_col: BTreeMap<PlayerId, usize>,
    pub defense_col: BTreeMap<PlayerId, usize>,
    /// Players in `roster` that appear in no row.
    pub dropped: Vec<PlayerId>,
}

pub const INTERCEPT: &str = "(Intercept)";
pub const ZONE_OFFENSIVE: &str = "zone:offensive";
pub const ZONE_DEFENSIVE: &str = "zone:defensive";

/// Assembles the sparse design: an intercept, optional zone-start indicators
/// (neutral is the reference), and offensive and defensive player blocks.
/// The response is outcome per 60 minutes and the weight is the duration.
pub fn build_design(rows: &[DesignRow], roster: &BTreeSet<PlayerId>, options: &DesignOptions) -> ApmDesign {
    let rows: Vec<&DesignRow> = rows
        .iter()
        .filter(|r| r.duration > 0 && options.situation.is_none_or(|s| s == r.situation))
        .collect();

    let mut present: BTreeSet<&PlayerId> = BTreeSet::new();
    for r in &rows {
        if options.offense {
            present.extend(r.offense.iter());
        }
        if options.defense {
            present.extend(r.defense.iter());
        }
    }
    let players: Vec<PlayerId> = present.iter().map(|p| (*p).clone()).collect();
    let dropped = roster.iter().filter(|p| !present.contains(p)).cloned().collect();

    let mut column_names = alloc::vec![String::from(INTERCEPT)];
    let mut penalized = alloc::vec![false];
    // zone columns only for zones that occur, so the design keeps full rank
    let mut zone_col = [None, None];
    if options.zone_indicators {
        for (slot, zone, name) in [(0, Zone::Offensive, ZONE_OFFENSIVE), (1, Zone::Defensive, ZONE_DEFENSIVE)] {
            if rows.iter().any(|r| r.zone == zone) {
                zone_col[slot] = Some(column_names.len());
                column_names.push(String::from(name));
                penalized.push(false);
            }
        }
    }
    let mut offense_col = BTreeMap::new();
    let mut defense_col = BTreeMap::new();
    if options.offense {
        for p in &players {
            offense_col.insert(p.clone(), column_names.len());
            column_names.push(format!("off:{p}"));
            penalized.push(true);
        }
    }
    if options.defense {
        for p in &players {
            defense_col.insert(p.clone(), column_names.len());
            column_names.push(format!("def:{p}"));
            penalized.push(true);
        }
    }

    let mut sparse_rows = Vec::with_capacity(rows.len());
    let mut response = Vec::with_capacity(rows.len());
    let mut weights = Vec::with_capacity(rows.len());
    for r in rows {
        let mut entries = alloc::vec![(0, 1.0)];
        let zc = match r.zone {
            Zone::Offensive => zone_col[0],
            Zone::Defensive => zone_col[1],
            Zone::Neutral => None,
        };
        entries.extend(zc.map(|c| (c, 1.0)));
        if options.offense {
            entries.extend(r.offense.iter().map(|p| (offense_col[p], 1.0)));
        }
        if options.defense {
            entries.extend(r.defense.iter().map(|p| (defense_col[p], 1.0)));
        }
        entries.sort_by_key(|e| e.0);
        sparse_rows.push(entries);
        let d = r.duration as f64;
        response.push(r.outcome * 3600.0 / d);
        weights.push(d);
    }

    ApmDesign {
        design: SparseDesign {
            column_names,
            penalized,
            rows: sparse_rows,
            response,
            weights,
        },
        players,
        offense_col,
        defense_col,
        dropped,
    }
}
