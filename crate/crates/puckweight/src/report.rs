//! Tables for each command.

use std::collections::BTreeMap;

use puckweight_core::apm::{ApmResult, OutcomeKind, RowSituation, Wowy};
use puckweight_core::glm::{predict, summarize, FittedModel, GlmError};
use puckweight_core::ingest::{EventKind, PlayerId, Position, ShiftRecord, TeamId};
use puckweight_core::reliability::CorrelationReport;
use puckweight_core::scoring::Prepared;
use puckweight_core::stats::{GoalieStatLine, Side, SkaterStatLine, TeamStatLine};

use crate::table::{Cell, Table};

const PCT: usize = 3;
const ODDS: usize = 2;
const COEF: usize = 3;
const RATE: usize = 2;

pub const SUMMARY_HEADERS: [&str; 7] = ["", "Coeff", "Error", "Odds", "Z-val", "P-value", "Signif."];

fn p_value(p: f64) -> Cell {
    if p < 1e-4 {
        Cell::text("<0.0001")
    } else {
        Cell::Num(p, 4)
    }
}

/// Coefficient table in model order.
pub fn summary_table(model: &FittedModel) -> Table {
    let mut t = Table::new(&SUMMARY_HEADERS);
    for r in summarize(model) {
        t.push(vec![
            Cell::text(r.name),
            Cell::Num(r.coefficient, COEF),
            Cell::Num(r.std_error, COEF),
            Cell::Num(r.odds, ODDS),
            Cell::Num(r.z, 2),
            p_value(r.p_value),
            Cell::text(r.stars),
        ]);
    }
    t
}

pub const SCORE_HEADERS: [&str; 14] = [
    "Rank", "Dist", "Angle", "Reb", "Change", "Left", "Right", "Strength", "Type", "P(Goal)", "Err", "Event", "Game",
    "Index",
];

/// The `top` modelled shots by goal probability, ties by game order and index.
pub fn score_table(prepared: &Prepared, model: &FittedModel, top: usize) -> Result<Table, GlmError> {
    let mut scored = Vec::new();
    for s in &prepared.shots {
        if let Some(f) = &s.features {
            scored.push((s, f, predict(model, f)?));
        }
    }
    scored.sort_by(|a, b| {
        b.2.probability
            .total_cmp(&a.2.probability)
            .then_with(|| {
                let ga = prepared.game_order[&a.0.event.game_id];
                let gb = prepared.game_order[&b.0.event.game_id];
                ga.cmp(&gb)
            })
            .then_with(|| a.0.event.event_index.cmp(&b.0.event.event_index))
    });
    let mut t = Table::new(&SCORE_HEADERS);
    for (rank, (s, f, p)) in scored.into_iter().take(top).enumerate() {
        t.push(vec![
            Cell::Int(rank as i64 + 1),
            Cell::Num(f.distance, 0),
            Cell::Num(f.angle, 0),
            Cell::Int(f.rebound as i64),
            Cell::Num(f.angle_change_left + f.angle_change_right, 0),
            Cell::Num(f.angle_change_left, 0),
            Cell::Num(f.angle_change_right, 0),
            Cell::text(f.strength.token()),
            Cell::text(f.shot_type.token()),
            Cell::Num(p.probability, 2),
            Cell::Num(p.std_error, 2),
            Cell::text(if s.event.event_kind == EventKind::Goal { "GOAL" } else { "SHOT" }),
            Cell::text(s.event.game_id.as_str()),
            Cell::Int(s.event.event_index as i64),
        ]);
    }
    Ok(t)
}

fn position(p: Option<Position>) -> Cell {
    p.map_or(Cell::Missing, |p| Cell::text(p.token()))
}

pub const SKATER_HEADERS: [&str; 18] = [
    "Player", "Pos", "Team", "EG", "G", "DiffG", "GErr", "Shots", "Sh%", "ExpSh%", "AdjSh%", "SErr", "TOI", "G/60",
    "S/60", "F/60", "C/60", "W/60",
];

pub fn skater_table(lines: &[SkaterStatLine]) -> Table {
    let mut t = Table::new(&SKATER_HEADERS);
    for l in lines {
        t.push(vec![
            Cell::text(&l.player_id),
            position(l.position),
            Cell::text(l.team.as_str()),
            Cell::Num(l.eg, RATE),
            Cell::Num(l.g, 0),
            Cell::Num(l.diff_g, RATE),
            Cell::Num(l.g_err, RATE),
            Cell::Num(l.shots, 0),
            Cell::Num(l.sh_pct, PCT),
            Cell::Num(l.exp_sh_pct, PCT),
            Cell::Num(l.adj_sh_pct, PCT),
            Cell::Num(l.s_err, 4),
            Cell::Num(l.toi_seconds / 60.0, 1),
            Cell::Num(l.g60, RATE),
            Cell::Num(l.shots60, RATE),
            Cell::Num(l.fenwick60, RATE),
            Cell::Num(l.corsi60, RATE),
            Cell::Num(l.wshots60, RATE),
        ]);
    }
    t
}

pub const GOALIE_HEADERS: [&str; 12] = [
    "Goalie", "Team", "ExpGA", "GA", "DiffGA", "GErr", "ShotA", "Sv%", "ExpSv%", "AdjSv%", "Err", "Change",
];

pub fn goalie_table(lines: &[GoalieStatLine]) -> Table {
    let mut t = Table::new(&GOALIE_HEADERS);
    for l in lines {
        t.push(vec![
            Cell::text(&l.goalie_id),
            Cell::text(l.team.as_str()),
            Cell::Num(l.exp_ga, RATE),
            Cell::Num(l.ga, 0),
            Cell::Num(l.diff_ga, RATE),
            Cell::Num(l.g_err, RATE),
            Cell::Num(l.shot_a, 0),
            Cell::Num(l.sv_pct, PCT),
            Cell::Num(l.exp_sv_pct, PCT),
            Cell::Num(l.adj_sv_pct, PCT),
            Cell::Num(l.err, 4),
            Cell::Num(l.change, PCT),
        ]);
    }
    t
}

pub fn team_headers(side: Side) -> [&'static str; 13] {
    let (pct, exp, adj) = match side {
        Side::For => ("Sh%", "ExpSh%", "AdjSh%"),
        Side::Against => ("Sv%", "ExpSv%", "AdjSv%"),
    };
    [
        "Team", "Side", "TOI", "G/60", "S/60", "F/60", "C/60", "W/60", "EG", "G", pct, exp, adj,
    ]
}

fn side_token(side: Side) -> &'static str {
    match side {
        Side::For => "for",
        Side::Against => "against",
    }
}

pub fn team_table(lines: &[TeamStatLine], side: Side) -> Table {
    let mut t = Table::new(&team_headers(side));
    for l in lines {
        t.push(vec![
            Cell::text(&l.team),
            Cell::text(side_token(l.side)),
            Cell::Num(l.toi_seconds / 60.0, 1),
            Cell::Num(l.goals60, RATE),
            Cell::Num(l.shots60, RATE),
            Cell::Num(l.fenwick60, RATE),
            Cell::Num(l.corsi60, RATE),
            Cell::Num(l.wshots60, RATE),
            Cell::Num(l.expected, RATE),
            Cell::Num(l.goals, 0),
            Cell::opt(l.pct, PCT),
            Cell::opt(l.exp_pct, PCT),
            Cell::opt(l.adj_pct, PCT),
        ]);
    }
    t
}

pub const RELIABILITY_HEADERS: [&str; 5] = ["Stat", "Target", "r", "n", "Flagged"];

pub fn reliability_table(reports: &[CorrelationReport]) -> Table {
    let mut t = Table::new(&RELIABILITY_HEADERS);
    for r in reports {
        t.push(vec![
            Cell::text(&r.stat_name),
            Cell::text(&r.target_name),
            Cell::Num(r.r, PCT),
            Cell::Int(r.n as i64),
            Cell::text(r.flagged_outliers.join(" ")),
        ]);
    }
    t
}

/// Bar-chart data: one `(stat_name, r)` row per statistic, full precision.
pub fn plot_data(reports: &[CorrelationReport]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["stat_name", "r"]).expect("write to memory");
    for r in reports {
        w.write_record([r.stat_name.clone(), format!("{}", r.r)]).expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}

/// Position and team of each player, from the first shift in file order.
pub fn rosters(shifts: &[ShiftRecord]) -> BTreeMap<PlayerId, (Position, TeamId)> {
    let mut out = BTreeMap::new();
    for s in shifts {
        out.entry(s.player_id.clone()).or_insert((s.position, s.team.clone()));
    }
    out
}

pub const APM_HEADERS: [&str; 13] = [
    "Rank", "Player", "Pos", "Team", "G", "W", "S", "F", "C", "G_EV60", "W_EV60", "G_PP60", "W_PP60",
];

/// Offensive totals in goals, ranked by `G`. Players with equal `G` share a rank.
pub fn apm_table(result: &ApmResult, roster: &BTreeMap<PlayerId, (Position, TeamId)>) -> Table {
    let mut rows: Vec<(&PlayerId, [f64; 5], &puckweight_core::apm::PlayerApm)> = result
        .players
        .iter()
        .map(|p| {
            let totals = std::array::from_fn(|i| p.offense_total(i) * result.goal_scale[i]);
            (&p.player, totals, p)
        })
        .collect();
    rows.sort_by(|a, b| b.1[0].total_cmp(&a.1[0]).then_with(|| a.0.cmp(b.0)));
    let ev = 0;
    let pp = 1;
    let (g, w) = (0, 1);
    let mut t = Table::new(&APM_HEADERS);
    let mut rank = 0;
    for (i, (id, totals, p)) in rows.iter().enumerate() {
        if i == 0 || totals[0] != rows[i - 1].1[0] {
            rank = i + 1;
        }
        let (pos, team) = match roster.get(*id) {
            Some((pos, team)) => (Cell::text(pos.token()), Cell::text(team.as_str())),
            None => (Cell::Missing, Cell::Missing),
        };
        let mut row = vec![Cell::Int(rank as i64), Cell::text(id.as_str()), pos, team];
        row.extend(totals.iter().map(|&v| Cell::Num(v, RATE)));
        row.extend([
            Cell::Num(p.offense[g][ev], RATE),
            Cell::Num(p.offense[w][ev], RATE),
            Cell::Num(p.offense[g][pp], RATE),
            Cell::Num(p.offense[w][pp], RATE),
        ]);
        t.push(row);
    }
    t
}

pub const WOWY_HEADERS: [&str; 8] = ["Player", "Outcome", "Situation", "On60", "Off60", "Diff", "OnTOI", "OffTOI"];

pub fn wowy_table(player: &PlayerId, outcome: OutcomeKind, situation: Option<RowSituation>, w: &Wowy) -> Table {
    let mut t = Table::new(&WOWY_HEADERS);
    t.push(vec![
        Cell::text(player.as_str()),
        Cell::text(outcome.token()),
        Cell::text(situation.map_or("all", |s| s.token())),
        Cell::Num(w.on_rate, RATE),
        Cell::Num(w.off_rate, RATE),
        Cell::Num(w.diff, RATE),
        Cell::Num(w.on_seconds / 60.0, 1),
        Cell::Num(w.off_seconds / 60.0, 1),
    ]);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use puckweight_core::glm::baseline_model;

    #[test]
    fn summary_odds_column() {
        let text = String::from_utf8(summary_table(&baseline_model()).to_delimited()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(",Coeff,Error,Odds,Z-val,P-value,Signif."));
        assert!(text.contains("\nDistance,-0.054,0.001,0.95,"), "{text}");
        assert!(text.contains("\nPP53,0.929,0.061,2.53,"), "{text}");
    }
}
