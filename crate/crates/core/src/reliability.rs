//! Split-half reliability and cross-statistic predictive correlations.

use alloc::string::String;
use alloc::vec::Vec;

use crate::stats::{EntityGames, GameTally, Tally, Venue};

/// Minimum number of entities for a correlation to be reported.
pub const MIN_ENTITIES: usize = 3;
/// Leave-one-out change in `r` above which an entity is flagged.
pub const INFLUENCE_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReliabilityError {
    #[error("only {0} qualifying entities, need at least 3")]
    TooFewEntities(usize),
    #[error("zero variance in {0}")]
    ZeroVariance(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitRule {
    /// Odd appearances versus even appearances.
    #[default]
    OddEvenByGame,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SplitSpec {
    pub split_rule: SplitRule,
    pub venue: Venue,
    /// Qualifying entities need at least this exposure over both halves.
    pub min_exposure: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub stat_name: String,
    pub target_name: String,
    pub r: f64,
    pub n: usize,
    pub flagged_outliers: Vec<String>,
}

/// Something with an appearance number and a venue.
pub trait SplitGame {
    /// 1-based position in the entity's own appearance sequence.
    fn ordinal(&self) -> usize;
    fn is_away(&self) -> bool;
}

/// A game with its position in the entity's appearance sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Appearance<'a> {
    pub ordinal: usize,
    pub game: &'a GameTally,
}

impl SplitGame for Appearance<'_> {
    fn ordinal(&self) -> usize {
        self.ordinal
    }

    fn is_away(&self) -> bool {
        self.game.team_is_away
    }
}

/// Numbers an entity's games 1, 2, ... in game order. The numbering is fixed
/// before any venue filter, so filtering and splitting commute.
pub fn appearances(entity: &EntityGames) -> Vec<Appearance<'_>> {
    let mut games: Vec<&GameTally> = entity.games.iter().collect();
    games.sort_by_key(|g| g.game_order);
    games
        .into_iter()
        .enumerate()
        .map(|(i, game)| Appearance {
            ordinal: i + 1,
            game,
        })
        .collect()
}

/// Odd ordinals to half A, even ordinals to half B, after the venue filter.
pub fn split_halves<G: SplitGame + Clone>(games: &[G], spec: &SplitSpec) -> (Vec<G>, Vec<G>) {
    let SplitRule::OddEvenByGame = spec.split_rule;
    games
        .iter()
        .filter(|g| spec.venue.admits(g.is_away()))
        .cloned()
        .partition(|g| g.ordinal() % 2 == 1)
}

/// Pearson correlation, `None` when either side has zero variance or there
/// are fewer than two points.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len();
    if n < 2 {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return None;
    }
    Some((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}

/// A named statistic of a tally.
pub struct Measure<'a> {
    pub name: &'a str,
    pub eval: &'a dyn Fn(&Tally) -> Option<f64>,
}

/// Per-entity half tallies of qualifying entities.
pub fn half_tallies(entities: &[EntityGames], spec: &SplitSpec, exposure: &dyn Fn(&Tally) -> f64) -> Vec<(String, Tally, Tally)> {
    let mut out = Vec::new();
    for e in entities {
        let apps = appearances(e);
        let (a, b) = split_halves(&apps, spec);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let ta: Tally = a.iter().map(|x| &x.game.tally).sum();
        let tb: Tally = b.iter().map(|x| &x.game.tally).sum();
        if exposure(&ta) + exposure(&tb) < spec.min_exposure {
            continue;
        }
        out.push((e.entity.clone(), ta, tb));
    }
    out
}

/// Correlation of `stat` on half A against `target` on half B.
pub fn predictive(
    entities: &[EntityGames],
    stat: &Measure,
    target: &Measure,
    spec: &SplitSpec,
    exposure: &dyn Fn(&Tally) -> f64,
) -> Result<CorrelationReport, ReliabilityError> {
    let mut ids = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (id, ta, tb) in half_tallies(entities, spec, exposure) {
        if let (Some(x), Some(y)) = ((stat.eval)(&ta), (target.eval)(&tb)) {
            ids.push(id);
            xs.push(x);
            ys.push(y);
        }
    }
    correlate(stat.name, target.name, &ids, &xs, &ys)
}

/// Split-half reliability: [`predictive`] with the statistic as its own target.
pub fn reliability(
    entities: &[EntityGames],
    stat: &Measure,
    spec: &SplitSpec,
    exposure: &dyn Fn(&Tally) -> f64,
) -> Result<CorrelationReport, ReliabilityError> {
    predictive(entities, stat, stat, spec, exposure)
}

/// Pearson `r` over paired values with leave-one-out influence flags.
pub fn correlate(
    stat_name: &str,
    target_name: &str,
    ids: &[String],
    x: &[f64],
    y: &[f64],
) -> Result<CorrelationReport, ReliabilityError> {
    let n = x.len();
    if n < MIN_ENTITIES {
        return Err(ReliabilityError::TooFewEntities(n));
    }
    let r = match pearson(x, y) {
        Some(r) => r,
        None => {
            let which = if pearson(x, x).is_none() { "statistic" } else { "target" };
            return Err(ReliabilityError::ZeroVariance(which));
        }
    };
    let mut flagged_outliers = Vec::new();
    if n > MIN_ENTITIES {
        let mut xs = Vec::with_capacity(n - 1);
        let mut ys = Vec::with_capacity(n - 1);
        for i in 0..n {
            xs.clear();
            ys.clear();
            for j in (0..n).filter(|&j| j != i) {
                xs.push(x[j]);
                ys.push(y[j]);
            }
            if let Some(r_i) = pearson(&xs, &ys) {
                if (r_i - r).abs() > INFLUENCE_THRESHOLD {
                    flagged_outliers.push(ids[i].clone());
                }
            }
        }
    }
    Ok(CorrelationReport {
        stat_name: String::from(stat_name),
        target_name: String::from(target_name),
        r,
        n,
        flagged_outliers,
    })
}
