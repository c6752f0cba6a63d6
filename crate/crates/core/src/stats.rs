//! Weighted-shot statistic lines for skaters, goalies and teams.
//!
//! Everything is built from additive [`Tally`] values kept per entity and
//! game, so the same sums serve full-season tables and split-half analysis.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::features::{detailed_strength, Strength};
use crate::glm::Prediction;
use crate::ingest::{EventKey, EventKind, GameId, GameTeams, PlayerId, Position, Segment, TeamId};

/// Goals per win used by [`goals_to_wins`].
pub const GOALS_PER_WIN: f64 = 6.0;

pub fn goals_to_wins(goal_delta: f64) -> f64 {
    goal_delta / GOALS_PER_WIN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Venue {
    #[default]
    All,
    /// Only games in which the entity's team is the visitor.
    Away,
}

impl Venue {
    pub fn admits(self, entity_team_is_away: bool) -> bool {
        match self {
            Venue::All => true,
            Venue::Away => entity_team_is_away,
        }
    }
}

/// Which situations and venues count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    /// Detailed strengths, seen from the attacking team.
    pub strengths: BTreeSet<Strength>,
    pub venue: Venue,
}

impl Default for Scope {
    fn default() -> Self {
        Self {
            strengths: [Strength::EV55].into_iter().collect(),
            venue: Venue::All,
        }
    }
}

impl Scope {
    pub fn all_strengths(venue: Venue) -> Self {
        Self {
            strengths: Strength::ALL.into_iter().collect(),
            venue,
        }
    }

    pub fn admits_strength(&self, strength: Option<Strength>) -> bool {
        strength.is_some_and(|s| self.strengths.contains(&s))
    }
}

/// A shot attempt joined with context and, for model shots, its prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredShot {
    pub key: EventKey,
    pub kind: EventKind,
    pub shooter: PlayerId,
    pub shooter_position: Position,
    pub shooting_team: TeamId,
    pub defending_team: TeamId,
    pub shooter_is_home: bool,
    pub goalie: Option<PlayerId>,
    /// Attacking team's detailed strength; `None` outside the nine situations.
    pub strength: Option<Strength>,
    /// Present for shots that entered the model.
    pub prediction: Option<Prediction>,
}

/// Additive counts behind every statistic.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tally {
    /// All shots on goal, goals included.
    pub shots: f64,
    pub goals: f64,
    pub missed: f64,
    pub blocked: f64,
    /// Shots on goal that were scored by the model.
    pub model_shots: f64,
    pub model_goals: f64,
    /// Sum of predicted goal probabilities (weighted shots).
    pub expected: f64,
    /// Sum of `p(1−p)`.
    pub binomial_var: f64,
    /// Sum of squared prediction standard errors.
    pub model_var: f64,
    pub toi_seconds: f64,
}

impl core::ops::AddAssign<&Tally> for Tally {
    fn add_assign(&mut self, o: &Tally) {
        self.shots += o.shots;
        self.goals += o.goals;
        self.missed += o.missed;
        self.blocked += o.blocked;
        self.model_shots += o.model_shots;
        self.model_goals += o.model_goals;
        self.expected += o.expected;
        self.binomial_var += o.binomial_var;
        self.model_var += o.model_var;
        self.toi_seconds += o.toi_seconds;
    }
}

impl<'a> core::iter::Sum<&'a Tally> for Tally {
    fn sum<I: Iterator<Item = &'a Tally>>(iter: I) -> Tally {
        let mut t = Tally::default();
        for x in iter {
            t += x;
        }
        t
    }
}

impl Tally {
    pub fn add_shot(&mut self, shot: &ScoredShot) {
        match shot.kind {
            EventKind::ShotOnGoal | EventKind::Goal => {
                self.shots += 1.0;
                if shot.kind == EventKind::Goal {
                    self.goals += 1.0;
                }
                if let Some(p) = shot.prediction {
                    self.model_shots += 1.0;
                    if shot.kind == EventKind::Goal {
                        self.model_goals += 1.0;
                    }
                    self.expected += p.probability;
                    self.binomial_var += p.probability * (1.0 - p.probability);
                    self.model_var += p.std_error * p.std_error;
                }
            }
            EventKind::MissedShot => self.missed += 1.0,
            EventKind::BlockedShot => self.blocked += 1.0,
            EventKind::Faceoff | EventKind::Other => {}
        }
    }

    pub fn fenwick(&self) -> f64 {
        self.shots + self.missed
    }

    pub fn corsi(&self) -> f64 {
        self.fenwick() + self.blocked
    }

    /// Standard error of the expected-goal sum.
    pub fn goal_error(&self) -> f64 {
        libm::sqrt(self.binomial_var + self.model_var)
    }

    pub fn per60(&self, count: f64) -> f64 {
        if self.toi_seconds > 0.0 {
            count * 3600.0 / self.toi_seconds
        } else {
            0.0
        }
    }

    fn ratio(num: f64, den: f64) -> Option<f64> {
        (den > 0.0).then(|| num / den)
    }

    pub fn sh_pct(&self) -> Option<f64> {
        Self::ratio(self.model_goals, self.model_shots)
    }

    pub fn exp_sh_pct(&self) -> Option<f64> {
        Self::ratio(self.expected, self.model_shots)
    }

    pub fn adj_sh_pct(&self, league: &League) -> Option<f64> {
        Some(league.sh_pct + self.sh_pct()? - self.exp_sh_pct()?)
    }

    pub fn sv_pct(&self) -> Option<f64> {
        Some(1.0 - self.sh_pct()?)
    }

    pub fn exp_sv_pct(&self) -> Option<f64> {
        Some(1.0 - self.exp_sh_pct()?)
    }

    pub fn adj_sv_pct(&self, league: &League) -> Option<f64> {
        Some(league.sv_pct() + self.sv_pct()? - self.exp_sv_pct()?)
    }
}

/// League-average rates over the in-scope model shots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct League {
    pub sh_pct: f64,
}

impl League {
    pub fn from_sv_pct(sv_pct: f64) -> Self {
        Self { sh_pct: 1.0 - sv_pct }
    }

    pub fn sv_pct(&self) -> f64 {
        1.0 - self.sh_pct
    }

    /// Pools every in-scope model shot.
    pub fn from_shots(shots: &[ScoredShot], scope: &Scope) -> Self {
        let mut t = Tally::default();
        for s in shots.iter().filter(|s| scope.admits_strength(s.strength)) {
            t.add_shot(s);
        }
        Self {
            sh_pct: t.sh_pct().unwrap_or(0.0),
        }
    }
}

/// Which way an entity's tallies point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    For,
    Against,
}

/// Per-game tallies of one entity.
#[derive(Debug, Clone, PartialEq)]
pub struct GameTally {
    pub game_id: GameId,
    /// Game order in the input (first appearance in the event stream).
    pub game_order: usize,
    pub team: TeamId,
    pub team_is_away: bool,
    pub tally: Tally,
}

/// Every game of one skater, goalie or team, sorted by game order.
#[derive(Debug, Clone, PartialEq)]
pub struct EntityGames {
    pub entity: String,
    pub position: Option<Position>,
    pub games: Vec<GameTally>,
}

impl EntityGames {
    pub fn total(&self) -> Tally {
        self.games.iter().map(|g| &g.tally).sum()
    }

    /// Team of the latest game.
    pub fn team(&self) -> &TeamId {
        &self.games.last().expect("entity without games").team
    }
}

/// Game order by first appearance in an event stream.
pub fn game_order<'a, I: IntoIterator<Item = &'a GameId>>(games: I) -> BTreeMap<GameId, usize> {
    let mut out = BTreeMap::new();
    for g in games {
        let next = out.len();
        out.entry(g.clone()).or_insert(next);
    }
    out
}

/// Seconds of in-scope ice time per `(player, game)` and per `(team, game, side)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IceTime {
    pub players: BTreeMap<(PlayerId, GameId), f64>,
    pub teams: BTreeMap<(TeamId, GameId, Side), f64>,
}

impl IceTime {
    pub fn from_segments(segments: &[Segment], teams: &BTreeMap<GameId, GameTeams>, scope: &Scope) -> Self {
        let mut out = IceTime::default();
        for seg in segments {
            let Some(gt) = teams.get(&seg.game_id) else {
                continue;
            };
            let d = seg.duration() as f64;
            let (nh, na) = (seg.home.len() as u8, seg.away.len() as u8);
            for (team, own, opp, skaters, away) in [
                (&gt.home, nh, na, &seg.home, false),
                (&gt.away, na, nh, &seg.away, true),
            ] {
                if !scope.venue.admits(away) {
                    continue;
                }
                if scope.admits_strength(detailed_strength(own, opp).ok()) {
                    *out
                        .teams
                        .entry((team.clone(), seg.game_id.clone(), Side::For))
                        .or_default() += d;
                    for p in skaters {
                        *out.players.entry((p.clone(), seg.game_id.clone())).or_default() += d;
                    }
                }
                if scope.admits_strength(detailed_strength(opp, own).ok()) {
                    *out
                        .teams
                        .entry((team.clone(), seg.game_id.clone(), Side::Against))
                        .or_default() += d;
                }
            }
        }
        out
    }
}

struct Accumulator {
    map: BTreeMap<(String, usize), GameTally>,
    positions: BTreeMap<String, Position>,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            map: BTreeMap::new(),
            positions: BTreeMap::new(),
        }
    }

    fn slot(
        &mut self,
        entity: &str,
        game: &GameId,
        order: &BTreeMap<GameId, usize>,
        team: &TeamId,
        away: bool,
    ) -> &mut GameTally {
        let ord = order.get(game).copied().unwrap_or(usize::MAX);
        self.map
            .entry((String::from(entity), ord))
            .or_insert_with(|| GameTally {
                game_id: game.clone(),
                game_order: ord,
                team: team.clone(),
                team_is_away: away,
                tally: Tally::default(),
            })
    }

    fn finish(self) -> Vec<EntityGames> {
        let mut out: Vec<EntityGames> = Vec::new();
        for ((entity, _), g) in self.map {
            match out.last_mut() {
                Some(e) if e.entity == entity => e.games.push(g),
                _ => out.push(EntityGames {
                    position: self.positions.get(&entity).copied(),
                    entity,
                    games: alloc::vec![g],
                }),
            }
        }
        out
    }
}

/// Per-game tallies of every shooter; toi is the shooter's in-scope ice time.
pub fn skater_games(
    shots: &[ScoredShot],
    ice: &IceTime,
    order: &BTreeMap<GameId, usize>,
    scope: &Scope,
) -> Vec<EntityGames> {
    let mut acc = Accumulator::new();
    for s in shots {
        if !scope.admits_strength(s.strength) || !scope.venue.admits(!s.shooter_is_home) {
            continue;
        }
        acc.positions
            .insert(String::from(s.shooter.as_str()), s.shooter_position);
        acc.slot(
            s.shooter.as_str(),
            &s.key.game_id,
            order,
            &s.shooting_team,
            !s.shooter_is_home,
        )
        .tally
        .add_shot(s);
    }
    for g in acc.map.iter_mut() {
        let key = (PlayerId::from(g.0 .0.as_str()), g.1.game_id.clone());
        g.1.tally.toi_seconds = ice.players.get(&key).copied().unwrap_or(0.0);
    }
    acc.finish()
}

/// Per-game tallies of shots faced by each goalie (model shots carry the
/// expected goals against).
pub fn goalie_games(
    shots: &[ScoredShot],
    order: &BTreeMap<GameId, usize>,
    scope: &Scope,
) -> Vec<EntityGames> {
    let mut acc = Accumulator::new();
    for s in shots {
        let Some(goalie) = &s.goalie else { continue };
        // the goalie's team is the defending team, away when the shooter is home
        if !scope.admits_strength(s.strength) || !scope.venue.admits(s.shooter_is_home) {
            continue;
        }
        acc.positions
            .insert(String::from(goalie.as_str()), Position::Goalie);
        acc.slot(
            goalie.as_str(),
            &s.key.game_id,
            order,
            &s.defending_team,
            s.shooter_is_home,
        )
        .tally
        .add_shot(s);
    }
    acc.finish()
}

/// Per-game team tallies on one side, with team situation time as toi.
pub fn team_games(
    shots: &[ScoredShot],
    ice: &IceTime,
    order: &BTreeMap<GameId, usize>,
    teams: &BTreeMap<GameId, GameTeams>,
    scope: &Scope,
    side: Side,
) -> Vec<EntityGames> {
    let mut acc = Accumulator::new();
    for ((team, game, s), &secs) in &ice.teams {
        if *s != side {
            continue;
        }
        let away = teams.get(game).is_some_and(|gt| gt.away == *team);
        acc.slot(team.as_str(), game, order, team, away).tally.toi_seconds = secs;
    }
    for s in shots {
        if !scope.admits_strength(s.strength) {
            continue;
        }
        let (team, away) = match side {
            Side::For => (&s.shooting_team, !s.shooter_is_home),
            Side::Against => (&s.defending_team, s.shooter_is_home),
        };
        if !scope.venue.admits(away) {
            continue;
        }
        acc.slot(team.as_str(), &s.key.game_id, order, team, away)
            .tally
            .add_shot(s);
    }
    acc.finish()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkaterStatLine {
    pub player_id: String,
    pub position: Option<Position>,
    pub team: TeamId,
    pub eg: f64,
    pub g: f64,
    pub diff_g: f64,
    pub g_err: f64,
    pub shots: f64,
    pub sh_pct: f64,
    pub exp_sh_pct: f64,
    pub adj_sh_pct: f64,
    pub s_err: f64,
    pub toi_seconds: f64,
    pub g60: f64,
    pub shots60: f64,
    pub fenwick60: f64,
    pub corsi60: f64,
    pub wshots60: f64,
}

impl SkaterStatLine {
    pub fn from_tally(entity: &EntityGames, t: &Tally, league: &League) -> Option<Self> {
        if t.model_shots <= 0.0 {
            return None;
        }
        let g_err = t.goal_error();
        Some(Self {
            player_id: entity.entity.clone(),
            position: entity.position,
            team: entity.team().clone(),
            eg: t.expected,
            g: t.model_goals,
            diff_g: t.model_goals - t.expected,
            g_err,
            shots: t.model_shots,
            sh_pct: t.sh_pct()?,
            exp_sh_pct: t.exp_sh_pct()?,
            adj_sh_pct: t.adj_sh_pct(league)?,
            s_err: g_err / t.model_shots,
            toi_seconds: t.toi_seconds,
            g60: t.per60(t.goals),
            shots60: t.per60(t.shots),
            fenwick60: t.per60(t.fenwick()),
            corsi60: t.per60(t.corsi()),
            wshots60: t.per60(t.expected),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoalieStatLine {
    pub goalie_id: String,
    pub team: TeamId,
    pub exp_ga: f64,
    pub ga: f64,
    /// Goals prevented, `exp_ga − ga`.
    pub diff_ga: f64,
    pub g_err: f64,
    pub shot_a: f64,
    pub sv_pct: f64,
    pub exp_sv_pct: f64,
    pub adj_sv_pct: f64,
    pub err: f64,
    /// `adj_sv_pct − sv_pct`.
    pub change: f64,
}

impl GoalieStatLine {
    pub fn from_tally(entity: &EntityGames, t: &Tally, league: &League) -> Option<Self> {
        if t.model_shots <= 0.0 {
            return None;
        }
        let g_err = t.goal_error();
        let sv_pct = t.sv_pct()?;
        let adj_sv_pct = t.adj_sv_pct(league)?;
        Some(Self {
            goalie_id: entity.entity.clone(),
            team: entity.team().clone(),
            exp_ga: t.expected,
            ga: t.model_goals,
            diff_ga: t.expected - t.model_goals,
            g_err,
            shot_a: t.model_shots,
            sv_pct,
            exp_sv_pct: t.exp_sv_pct()?,
            adj_sv_pct,
            err: g_err / t.model_shots,
            change: adj_sv_pct - sv_pct,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeamStatLine {
    pub team: String,
    pub side: Side,
    pub toi_seconds: f64,
    pub goals60: f64,
    pub shots60: f64,
    pub fenwick60: f64,
    pub corsi60: f64,
    pub wshots60: f64,
    pub expected: f64,
    pub goals: f64,
    pub model_shots: f64,
    /// Shooting percentage for `For`, save percentage for `Against`.
    pub pct: Option<f64>,
    pub exp_pct: Option<f64>,
    pub adj_pct: Option<f64>,
}

impl TeamStatLine {
    pub fn from_tally(entity: &EntityGames, side: Side, t: &Tally, league: &League) -> Option<Self> {
        if t.toi_seconds <= 0.0 {
            return None;
        }
        let (pct, exp_pct, adj_pct) = match side {
            Side::For => (t.sh_pct(), t.exp_sh_pct(), t.adj_sh_pct(league)),
            Side::Against => (t.sv_pct(), t.exp_sv_pct(), t.adj_sv_pct(league)),
        };
        Some(Self {
            team: entity.entity.clone(),
            side,
            toi_seconds: t.toi_seconds,
            goals60: t.per60(t.goals),
            shots60: t.per60(t.shots),
            fenwick60: t.per60(t.fenwick()),
            corsi60: t.per60(t.corsi()),
            wshots60: t.per60(t.expected),
            expected: t.expected,
            goals: t.goals,
            model_shots: t.model_shots,
            pct,
            exp_pct,
            adj_pct,
        })
    }
}

fn by_desc_then_id<T>(v: &mut [T], key: impl Fn(&T) -> f64, id: impl Fn(&T) -> &str) {
    v.sort_by(|a, b| key(b).total_cmp(&key(a)).then_with(|| id(a).cmp(id(b))));
}

/// Skater lines sorted by `DiffG` descending, ties by id.
pub fn skater_stats(
    shots: &[ScoredShot],
    ice: &IceTime,
    order: &BTreeMap<GameId, usize>,
    scope: &Scope,
    league: &League,
) -> Vec<SkaterStatLine> {
    let mut lines: Vec<SkaterStatLine> = skater_games(shots, ice, order, scope)
        .iter()
        .filter_map(|e| SkaterStatLine::from_tally(e, &e.total(), league))
        .collect();
    by_desc_then_id(&mut lines, |l| l.diff_g, |l| &l.player_id);
    lines
}

/// Goalie lines sorted by goals prevented descending, ties by id.
pub fn goalie_stats(
    shots: &[ScoredShot],
    order: &BTreeMap<GameId, usize>,
    scope: &Scope,
    league: &League,
) -> Vec<GoalieStatLine> {
    let mut lines: Vec<GoalieStatLine> = goalie_games(shots, order, scope)
        .iter()
        .filter_map(|e| GoalieStatLine::from_tally(e, &e.total(), league))
        .collect();
    by_desc_then_id(&mut lines, |l| l.diff_ga, |l| &l.goalie_id);
    lines
}

/// Team lines for one side, sorted by weighted shots per 60 descending.
pub fn team_stats(
    shots: &[ScoredShot],
    ice: &IceTime,
    order: &BTreeMap<GameId, usize>,
    teams: &BTreeMap<GameId, GameTeams>,
    scope: &Scope,
    side: Side,
    league: &League,
) -> Vec<TeamStatLine> {
    let mut lines: Vec<TeamStatLine> = team_games(shots, ice, order, teams, scope, side)
        .iter()
        .filter_map(|e| TeamStatLine::from_tally(e, side, &e.total(), league))
        .collect();
    by_desc_then_id(&mut lines, |l| l.wshots60, |l| &l.team);
    lines
}

/// A statistic that can be computed from a [`Tally`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Statistic {
    Goals,
    Shots,
    Expected,
    DiffG,
    DiffGA,
    ShPct,
    ExpShPct,
    AdjShPct,
    SvPct,
    ExpSvPct,
    AdjSvPct,
    Goals60,
    Shots60,
    Fenwick60,
    Corsi60,
    WShots60,
}

impl Statistic {
    pub const ALL: [Statistic; 16] = [
        Statistic::Goals,
        Statistic::Shots,
        Statistic::Expected,
        Statistic::DiffG,
        Statistic::DiffGA,
        Statistic::ShPct,
        Statistic::ExpShPct,
        Statistic::AdjShPct,
        Statistic::SvPct,
        Statistic::ExpSvPct,
        Statistic::AdjSvPct,
        Statistic::Goals60,
        Statistic::Shots60,
        Statistic::Fenwick60,
        Statistic::Corsi60,
        Statistic::WShots60,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Statistic::Goals => "goals",
            Statistic::Shots => "shots",
            Statistic::Expected => "eg",
            Statistic::DiffG => "diff_g",
            Statistic::DiffGA => "diff_ga",
            Statistic::ShPct => "sh_pct",
            Statistic::ExpShPct => "exp_sh_pct",
            Statistic::AdjShPct => "adj_sh_pct",
            Statistic::SvPct => "sv_pct",
            Statistic::ExpSvPct => "exp_sv_pct",
            Statistic::AdjSvPct => "adj_sv_pct",
            Statistic::Goals60 => "goals60",
            Statistic::Shots60 => "shots60",
            Statistic::Fenwick60 => "fenwick60",
            Statistic::Corsi60 => "corsi60",
            Statistic::WShots60 => "wshots60",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.token() == token)
    }

    pub fn evaluate(self, t: &Tally, league: &League) -> Option<f64> {
        match self {
            Statistic::Goals => Some(t.goals),
            Statistic::Shots => Some(t.shots),
            Statistic::Expected => Some(t.expected),
            Statistic::DiffG => Some(t.model_goals - t.expected),
            Statistic::DiffGA => Some(t.expected - t.model_goals),
            Statistic::ShPct => t.sh_pct(),
            Statistic::ExpShPct => t.exp_sh_pct(),
            Statistic::AdjShPct => t.adj_sh_pct(league),
            Statistic::SvPct => t.sv_pct(),
            Statistic::ExpSvPct => t.exp_sv_pct(),
            Statistic::AdjSvPct => t.adj_sv_pct(league),
            Statistic::Goals60 => (t.toi_seconds > 0.0).then(|| t.per60(t.goals)),
            Statistic::Shots60 => (t.toi_seconds > 0.0).then(|| t.per60(t.shots)),
            Statistic::Fenwick60 => (t.toi_seconds > 0.0).then(|| t.per60(t.fenwick())),
            Statistic::Corsi60 => (t.toi_seconds > 0.0).then(|| t.per60(t.corsi())),
            Statistic::WShots60 => (t.toi_seconds > 0.0).then(|| t.per60(t.expected)),
        }
    }
}
