//! `#puckweight-events v1` files.

use std::collections::BTreeMap;

use puckweight_core::ingest::{EventKind, GameId, PlayerId, ShotEvent, ShotType, TeamId, Zone};

use super::{body_reader, csv_error, expect_header, fmt_f64, strip_version, Row};
use crate::error::{Error, Result};

pub const MAGIC: &str = "#puckweight-events v1";

pub const COLUMNS: [&str; 17] = [
    "game_id",
    "season",
    "event_index",
    "period",
    "clock",
    "kind",
    "shooter",
    "team",
    "home_team",
    "x",
    "y",
    "shot_type",
    "score_for",
    "score_against",
    "zone",
    "goalie_on_ice",
    "goalie_id",
];

fn kind_list() -> String {
    EventKind::ALL.map(|k| k.token()).join(", ")
}

fn shot_type_list() -> String {
    ShotType::ALL.map(|t| t.token()).join(", ")
}

fn parse_row(row: &Row) -> Result<ShotEvent> {
    row.check_width()?;
    let kind_raw = row.raw("kind");
    let event_kind = EventKind::from_token(kind_raw).ok_or_else(|| {
        row.error("kind", format!("unknown kind `{kind_raw}`, allowed: {}", kind_list()))
    })?;
    let shot_type = match row.raw("shot_type") {
        "" => None,
        t => Some(ShotType::from_token(t).ok_or_else(|| {
            row.error(
                "shot_type",
                format!("unknown shot_type `{t}`, allowed: {}", shot_type_list()),
            )
        })?),
    };
    let zone = match row.raw("zone") {
        "" => None,
        z => Some(Zone::from_token(z).ok_or_else(|| {
            row.error("zone", format!("unknown zone `{z}`, allowed: offensive, neutral, defensive"))
        })?),
    };
    let goalie_on_ice = match row.raw("goalie_on_ice") {
        "1" | "true" => true,
        "0" | "false" => false,
        v => return Err(row.error("goalie_on_ice", format!("expected 1 or 0, found `{v}`"))),
    };
    let period: u8 = row.parse("period")?;
    if period == 0 {
        return Err(row.error("period", "periods start at 1"));
    }
    Ok(ShotEvent {
        game_id: GameId(row.text("game_id")?),
        season: row.raw("season").to_string(),
        event_index: row.parse("event_index")?,
        period,
        game_clock_seconds: row.parse("clock")?,
        event_kind,
        shooter_id: row.optional_text("shooter").map(PlayerId),
        shooter_team: TeamId(row.text("team")?),
        home_team: TeamId(row.text("home_team")?),
        x: row.optional_f64("x")?,
        y: row.optional_f64("y")?,
        shot_type,
        shooting_team_score: row.parse("score_for")?,
        defending_team_score: row.parse("score_against")?,
        zone,
        goalie_on_ice,
        goalie_id: row.optional_text("goalie_id").map(PlayerId),
    })
}

/// Parses an events file. `source` names it in error messages.
///
/// Event indices must be unique within a game and the clock must not run
/// backwards in index order.
pub fn parse_events(text: &str, source: &str) -> Result<Vec<ShotEvent>> {
    let body = strip_version(text, MAGIC, source)?;
    let mut reader = body_reader(body, true);
    let mut rows = reader.records();
    expect_header(&mut rows, &COLUMNS, source)?;
    let mut out = Vec::new();
    let mut lines = Vec::new();
    for record in rows {
        let record = record.map_err(|e| csv_error(source, e))?;
        if record.len() == 1 && record.get(0).is_some_and(|f| f.trim().is_empty()) {
            continue;
        }
        let row = Row {
            record: &record,
            columns: &COLUMNS,
            source,
        };
        out.push(parse_row(&row)?);
        lines.push(super::file_line(&record));
    }
    check_sequence(&out, &lines, source)?;
    Ok(out)
}

fn check_sequence(events: &[ShotEvent], lines: &[u64], source: &str) -> Result<()> {
    let mut by_game: BTreeMap<&GameId, Vec<usize>> = BTreeMap::new();
    for (i, e) in events.iter().enumerate() {
        by_game.entry(&e.game_id).or_default().push(i);
    }
    for idx in by_game.values_mut() {
        idx.sort_by_key(|&i| (events[i].event_index, lines[i]));
        for w in idx.windows(2) {
            let (a, b) = (&events[w[0]], &events[w[1]]);
            let err = |field: &str, message: String| Error::Parse {
                path: source.to_string(),
                line: lines[w[1]],
                field: field.to_string(),
                message,
            };
            if a.event_index == b.event_index {
                return Err(err(
                    "event_index",
                    format!("duplicate event_index {} in game {}", b.event_index, b.game_id),
                ));
            }
            if b.game_clock_seconds < a.game_clock_seconds {
                return Err(err(
                    "clock",
                    format!(
                        "clock {} is earlier than {} at event_index {}",
                        b.game_clock_seconds, a.game_clock_seconds, a.event_index
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// Serialises events in the given order.
pub fn write_events(events: &[ShotEvent]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(COLUMNS).expect("write to memory");
    for e in events {
        w.write_record([
            e.game_id.as_str().to_string(),
            e.season.clone(),
            e.event_index.to_string(),
            e.period.to_string(),
            e.game_clock_seconds.to_string(),
            e.event_kind.token().to_string(),
            e.shooter_id.as_ref().map(|p| p.as_str().to_string()).unwrap_or_default(),
            e.shooter_team.as_str().to_string(),
            e.home_team.as_str().to_string(),
            opt_f64(e.x),
            opt_f64(e.y),
            e.shot_type.map(|t| t.token().to_string()).unwrap_or_default(),
            e.shooting_team_score.to_string(),
            e.defending_team_score.to_string(),
            e.zone.map(|z| z.token().to_string()).unwrap_or_default(),
            if e.goalie_on_ice { "1" } else { "0" }.to_string(),
            e.goalie_id.as_ref().map(|p| p.as_str().to_string()).unwrap_or_default(),
        ])
        .expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}
