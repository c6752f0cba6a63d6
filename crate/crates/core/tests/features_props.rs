use proptest::prelude::*;

use puckweight_core::features::{
    build_features, classify_rebound, detailed_strength, geometry, ShotSide, Strength,
};
use puckweight_core::ingest::{
    join_on_ice, EventKind, GameId, OnIceContext, PlayerId, Position, ShiftRecord, ShotEvent, ShotType, TeamId, Zone,
};

fn event(index: u32, period: u8, clock: u32, kind: EventKind, shooter: &str, team: &str, xy: (f64, f64)) -> ShotEvent {
    ShotEvent {
        game_id: GameId::from("g"),
        season: "s".into(),
        event_index: index,
        period,
        game_clock_seconds: clock,
        event_kind: kind,
        shooter_id: Some(PlayerId::from(shooter)),
        shooter_team: TeamId::from(team),
        home_team: TeamId::from("H"),
        x: Some(xy.0),
        y: Some(xy.1),
        shot_type: Some(ShotType::Wrist),
        shooting_team_score: 0,
        defending_team_score: 0,
        zone: Some(Zone::Offensive),
        goalie_on_ice: true,
        goalie_id: None,
    }
}

// Distance and signed angle computed from scratch, goal mouth at x = 89.
fn oracle_geometry(x: f64, y: f64) -> (f64, f64) {
    let dx = 89.0 - x;
    let d = (dx * dx + y * y).sqrt();
    let a = if dx <= 0.0 { 90.0 } else { (y.abs() / dx).atan() * 180.0 / std::f64::consts::PI };
    let signed = if y > 0.0 { a } else if y < 0.0 { -a } else { 0.0 };
    (d, signed)
}

/// Independent pairwise scan: (rebound, own, left, right) for every event.
fn oracle_rebounds(stream: &[ShotEvent]) -> Vec<(bool, bool, f64, f64)> {
    let mut out = vec![(false, false, 0.0, 0.0)];
    for pair in stream.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let (db, sb) = oracle_geometry(b.x.unwrap(), b.y.unwrap());
        let (_, sa) = oracle_geometry(a.x.unwrap(), a.y.unwrap());
        let hit = a.event_kind == EventKind::ShotOnGoal
            && a.period == b.period
            && a.shooter_team == b.shooter_team
            && b.game_clock_seconds - a.game_clock_seconds <= 2
            && db < 25.0;
        if hit {
            let sweep = sb - sa;
            out.push((true, a.shooter_id == b.shooter_id, (-sweep).max(0.0), sweep.max(0.0)));
        } else {
            out.push((false, false, 0.0, 0.0));
        }
    }
    out
}

fn kind() -> impl Strategy<Value = EventKind> {
    prop_oneof![
        4 => Just(EventKind::ShotOnGoal),
        1 => Just(EventKind::Goal),
        1 => Just(EventKind::MissedShot),
        1 => Just(EventKind::BlockedShot),
        1 => Just(EventKind::Other),
    ]
}

fn stream() -> impl Strategy<Value = Vec<ShotEvent>> {
    prop::collection::vec(
        (0u32..4, 0u8..2, kind(), 0usize..3, any::<bool>(), 40.0f64..100.0, -40.0f64..40.0),
        1..300,
    )
    .prop_map(|steps| {
        let mut clock = 0;
        let mut period = 1;
        steps
            .into_iter()
            .enumerate()
            .map(|(i, (dt, dp, k, shooter, home, x, y))| {
                clock += dt;
                period += dp.min(1) * u8::from(i % 50 == 49);
                let team = if home { "H" } else { "A" };
                let name = format!("{team}{shooter}");
                event(i as u32 + 1, period, clock, k, &name, team, (x, y))
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn mirroring_y_keeps_distance_and_angle(x in -100.0f64..100.0, y in -42.0f64..42.0) {
        let a = geometry(x, y);
        let b = geometry(x, -y);
        prop_assert_eq!(a.distance, b.distance);
        prop_assert_eq!(a.angle, b.angle);
        prop_assert_eq!(a.side.mirror(), b.side);
        if y != 0.0 {
            prop_assert_ne!(a.side, ShotSide::Center);
        }
    }

    #[test]
    fn geometry_matches_oracle(x in -100.0f64..100.0, y in -42.0f64..42.0) {
        let g = geometry(x, y);
        let (d, s) = oracle_geometry(x, y);
        prop_assert!((g.distance - d).abs() < 1e-9);
        prop_assert!((g.signed_angle() - s).abs() < 1e-9);
        prop_assert!((0.0..=90.0).contains(&g.angle));
    }

    #[test]
    fn rebound_flags_match_pairwise_scan(events in stream()) {
        let expected = oracle_rebounds(&events);
        for (i, e) in events.iter().enumerate() {
            let r = classify_rebound(e, &events[..i]);
            let (reb, own, left, right) = expected[i];
            prop_assert_eq!(r.rebound, reb, "event {}", i);
            prop_assert_eq!(r.own_rebound, own, "event {}", i);
            prop_assert!((r.angle_change_left - left).abs() < 1e-9);
            prop_assert!((r.angle_change_right - right).abs() < 1e-9);
        }
    }

    #[test]
    fn delaying_a_shot_adds_exactly_to_fatigue(
        on in 1u32..60,
        delay in 0u32..30,
        x in 30.0f64..88.0,
        y in -30.0f64..30.0,
    ) {
        let ctx_at = |secs: u32| OnIceContext::new(
            1,
            (0..5).map(|i| (PlayerId::from(format!("H{i}").as_str()), if i == 0 { secs } else { 20 })).collect(),
            (0..5).map(|i| (PlayerId::from(format!("A{i}").as_str()), 20)).collect(),
        );
        let early = event(1, 1, 100, EventKind::ShotOnGoal, "H0", "H", (x, y));
        let mut late = early.clone();
        late.game_clock_seconds += delay;
        let f0 = build_features(&early, &ctx_at(on), &[]).unwrap();
        let f1 = build_features(&late, &ctx_at(on + delay), &[]).unwrap();
        prop_assert_eq!(f1.shooter_fatigue - f0.shooter_fatigue, delay as f64);
        prop_assert_eq!(f0.distance, f1.distance);
        prop_assert_eq!(f0.angle, f1.angle);
    }
}

#[test]
fn strength_mapping_is_total_on_admissible_counts() {
    let mut seen = std::collections::BTreeSet::new();
    for f in 3..=5u8 {
        for a in 3..=5u8 {
            let s = detailed_strength(f, a).unwrap();
            assert_eq!(detailed_strength(f, a).unwrap(), s);
            seen.insert(s);
        }
    }
    assert_eq!(seen.len(), Strength::ALL.len());
    assert!(detailed_strength(6, 5).is_err());
    assert!(detailed_strength(2, 5).is_err());
}

fn shift(player: &str, team: &str, pos: Position, start: u32, end: u32) -> ShiftRecord {
    ShiftRecord {
        game_id: GameId::from("g"),
        player_id: PlayerId::from(player),
        team: TeamId::from(team),
        position: pos,
        start_seconds: start,
        end_seconds: end,
    }
}

fn shift_chart() -> impl Strategy<Value = Vec<ShiftRecord>> {
    // each of 6 skaters per team cycles through back-to-back shifts of random length
    prop::collection::vec(prop::collection::vec(5u32..60, 1..40), 12).prop_map(|per_player| {
        let mut out = Vec::new();
        for (i, lengths) in per_player.into_iter().enumerate() {
            let team = if i < 6 { "H" } else { "A" };
            let name = format!("{team}{}", i % 6);
            let mut t = (i as u32 % 3) * 7;
            for (k, len) in lengths.into_iter().enumerate() {
                if k % 2 == 0 {
                    out.push(shift(&name, team, Position::Forward, t, t + len));
                }
                t += len;
            }
        }
        out.push(shift("H9", "H", Position::Defense, 0, 4000));
        out.push(shift("A9", "A", Position::Defense, 0, 4000));
        out.push(shift("HG", "H", Position::Goalie, 0, 4000));
        out.push(shift("AG", "A", Position::Goalie, 0, 4000));
        out
    })
}

proptest! {
    #[test]
    fn join_ignores_shift_order_and_times_are_consistent(
        shifts in shift_chart(),
        seed in any::<u64>(),
        times in prop::collection::vec(0u32..600, 1..20),
    ) {
        let events: Vec<ShotEvent> = times
            .iter()
            .enumerate()
            .map(|(i, &t)| event(i as u32 + 1, 1, t, EventKind::MissedShot, "H0", "H", (60.0, 0.0)))
            .collect();
        let mut shuffled = shifts.clone();
        // deterministic permutation from the seed
        let n = shuffled.len();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let a = join_on_ice(&events, &shifts);
        let b = join_on_ice(&events, &shuffled);
        prop_assert_eq!(&a, &b);
        let map = a.unwrap();
        {
            for e in &events {
                let ctx = &map[&e.key()];
                for (p, secs) in ctx.skaters_for.iter().chain(&ctx.skaters_against) {
                    let s = shifts
                        .iter()
                        .find(|s| &s.player_id == p && s.start_seconds <= e.game_clock_seconds && e.game_clock_seconds < s.end_seconds)
                        .unwrap();
                    prop_assert_eq!(*secs, e.game_clock_seconds - s.start_seconds);
                    prop_assert!(*secs < s.end_seconds - s.start_seconds);
                }
                prop_assert_eq!(ctx.strength_for as usize, ctx.skaters_for.len());
                prop_assert!(!ctx.skaters_for.iter().any(|(p, _)| p.as_str().ends_with('G')));
            }
        }
    }
}
