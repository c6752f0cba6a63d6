//! `#puckweight-shifts v1` files.

use puckweight_core::ingest::{validate_shifts, GameId, PlayerId, Position, ShiftRecord, TeamId};

use super::{body_reader, csv_error, expect_header, strip_version, Row};
use crate::error::Result;

pub const MAGIC: &str = "#puckweight-shifts v1";

pub const COLUMNS: [&str; 6] = ["game_id", "player", "team", "position", "start", "end"];

/// Parses and validates a shifts file.
pub fn parse_shifts(text: &str, source: &str) -> Result<Vec<ShiftRecord>> {
    let body = strip_version(text, MAGIC, source)?;
    let mut reader = body_reader(body, true);
    let mut rows = reader.records();
    expect_header(&mut rows, &COLUMNS, source)?;
    let mut out = Vec::new();
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
        row.check_width()?;
        let pos = row.raw("position");
        let position = Position::from_token(pos)
            .ok_or_else(|| row.error("position", format!("unknown position `{pos}`, allowed: F, D, G")))?;
        out.push(ShiftRecord {
            game_id: GameId(row.text("game_id")?),
            player_id: PlayerId(row.text("player")?),
            team: TeamId(row.text("team")?),
            position,
            start_seconds: row.parse("start")?,
            end_seconds: row.parse("end")?,
        });
    }
    validate_shifts(&out)?;
    Ok(out)
}

pub fn write_shifts(shifts: &[ShiftRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(COLUMNS).expect("write to memory");
    for s in shifts {
        w.write_record([
            s.game_id.as_str(),
            s.player_id.as_str(),
            s.team.as_str(),
            s.position.token(),
            &s.start_seconds.to_string(),
            &s.end_seconds.to_string(),
        ])
        .expect("write to memory");
    }
    w.into_inner().expect("flush to memory")
}
