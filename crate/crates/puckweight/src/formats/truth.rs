//! `#puckweight-truth v1` files: every latent parameter of a synthetic season.
//!
//! Rows are `seed,<u64>`, `coef,<name>,<value>`, `goalie_skill,<id>,<value>`,
//! `player_offense,<id>,<value>`, `slot_share,<team>,<value>` and
//! `shot_probability,<game>,<event_index>,<value>`.

use puckweight_core::ingest::{GameId, PlayerId, TeamId};
use puckweight_core::synth::SynthTruth;

use super::{body_reader, csv_error, file_line, fmt_f64, strip_version};
use crate::error::{Error, Result};

pub const MAGIC: &str = "#puckweight-truth v1";

pub fn write_truth(truth: &SynthTruth) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC.as_bytes());
    out.push(b'\n');
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut put = |fields: &[&str]| w.write_record(fields).expect("write to memory");
    put(&["seed", &truth.seed.to_string()]);
    for (n, v) in &truth.coefficients {
        put(&["coef", n, &fmt_f64(*v)]);
    }
    for (p, v) in &truth.goalie_skill {
        put(&["goalie_skill", p.as_str(), &fmt_f64(*v)]);
    }
    for (p, v) in &truth.player_offense {
        put(&["player_offense", p.as_str(), &fmt_f64(*v)]);
    }
    for (t, v) in &truth.team_slot_share {
        put(&["slot_share", t.as_str(), &fmt_f64(*v)]);
    }
    for (g, i, v) in &truth.shot_probability {
        put(&["shot_probability", g.as_str(), &i.to_string(), &fmt_f64(*v)]);
    }
    w.into_inner().expect("flush to memory")
}

pub fn parse_truth(text: &str, source: &str) -> Result<SynthTruth> {
    let body = strip_version(text, MAGIC, source)?;
    let mut reader = body_reader(body, true);
    let mut t = SynthTruth {
        seed: 0,
        coefficients: Vec::new(),
        goalie_skill: Vec::new(),
        player_offense: Vec::new(),
        team_slot_share: Vec::new(),
        shot_probability: Vec::new(),
    };
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = file_line(&record);
        let key = record.get(0).unwrap_or("");
        let err = |message: String| Error::Parse {
            path: source.to_string(),
            line,
            field: key.to_string(),
            message,
        };
        let field = |i: usize| record.get(i).ok_or_else(|| err(format!("missing field {}", i + 1)));
        let float = |i: usize| -> Result<f64> {
            let v = field(i)?;
            v.parse().map_err(|_| err(format!("cannot parse `{v}`")))
        };
        match key {
            "" => {}
            "seed" => t.seed = field(1)?.parse().map_err(|_| err("bad seed".to_string()))?,
            "coef" => t.coefficients.push((field(1)?.to_string(), float(2)?)),
            "goalie_skill" => t.goalie_skill.push((PlayerId::from(field(1)?), float(2)?)),
            "player_offense" => t.player_offense.push((PlayerId::from(field(1)?), float(2)?)),
            "slot_share" => t.team_slot_share.push((TeamId::from(field(1)?), float(2)?)),
            "shot_probability" => {
                let idx = field(2)?.parse().map_err(|_| err("bad event index".to_string()))?;
                t.shot_probability.push((GameId::from(field(1)?), idx, float(3)?));
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    Ok(t)
}
