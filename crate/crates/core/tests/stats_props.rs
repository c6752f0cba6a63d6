use proptest::prelude::*;

use puckweight_core::glm::{baseline_model, FitOptions, Prediction};
use puckweight_core::ingest::{on_ice_segments, EventKey, EventKind, GameId, PlayerId, Position, TeamId};
use puckweight_core::scoring::{fit_shot_model, prepare, score_shots, Prepared};
use puckweight_core::stats::{
    goalie_games, goalie_stats, skater_games, skater_stats, team_games, team_stats, EntityGames, IceTime, League,
    Scope, ScoredShot, Side, Tally, Venue,
};
use puckweight_core::synth::{generate, SynthConfig};
use puckweight_core::FittedModel;

struct Season {
    prepared: Prepared,
    shots: Vec<ScoredShot>,
    segments: Vec<puckweight_core::ingest::Segment>,
}

fn season(seed: u64, model: Option<&FittedModel>) -> (Season, FittedModel) {
    let s = generate(&SynthConfig {
        seed,
        n_games: 12,
        teams: 4,
        ..SynthConfig::default()
    })
    .unwrap();
    let prepared = prepare(&s.events, &s.shifts).unwrap();
    let model = match model {
        Some(m) => m.clone(),
        None => fit_shot_model(&prepared, FitOptions::default()).unwrap_or_else(|_| baseline_model()),
    };
    let shots = score_shots(&prepared, &model).unwrap();
    let segments = on_ice_segments(&s.shifts, &prepared.teams).unwrap();
    (
        Season {
            prepared,
            shots,
            segments,
        },
        model,
    )
}

fn ice(s: &Season, scope: &Scope) -> IceTime {
    IceTime::from_segments(&s.segments, &s.prepared.teams, scope)
}

fn away_part(entities: &[EntityGames]) -> Vec<(String, Tally)> {
    entities
        .iter()
        .filter_map(|e| {
            let games: Vec<_> = e.games.iter().filter(|g| g.team_is_away).collect();
            (!games.is_empty()).then(|| (e.entity.clone(), games.iter().map(|g| &g.tally).sum()))
        })
        .collect()
}

fn totals(entities: &[EntityGames]) -> Vec<(String, Tally)> {
    entities.iter().map(|e| (e.entity.clone(), e.total())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn venue_filter_equals_restriction(seed in 1u64..10_000) {
        let (s, _) = season(seed, Some(&baseline_model()));
        let order = &s.prepared.game_order;
        let all = Scope::all_strengths(Venue::All);
        let away = Scope::all_strengths(Venue::Away);
        let (ice_all, ice_away) = (ice(&s, &all), ice(&s, &away));
        prop_assert_eq!(
            away_part(&skater_games(&s.shots, &ice_all, order, &all)),
            totals(&skater_games(&s.shots, &ice_away, order, &away))
        );
        prop_assert_eq!(
            away_part(&goalie_games(&s.shots, order, &all)),
            totals(&goalie_games(&s.shots, order, &away))
        );
        for side in [Side::For, Side::Against] {
            prop_assert_eq!(
                away_part(&team_games(&s.shots, &ice_all, order, &s.prepared.teams, &all, side)),
                totals(&team_games(&s.shots, &ice_away, order, &s.prepared.teams, &away, side))
            );
        }
    }

    #[test]
    fn rate_containment_on_every_line(seed in 1u64..10_000) {
        let (s, _) = season(seed, Some(&baseline_model()));
        let scope = Scope::all_strengths(Venue::All);
        let ice = ice(&s, &scope);
        let league = League::from_shots(&s.shots, &scope);
        for l in skater_stats(&s.shots, &ice, &s.prepared.game_order, &scope, &league) {
            prop_assert!(l.corsi60 >= l.fenwick60 && l.fenwick60 >= l.shots60, "{:?}", l);
        }
        for side in [Side::For, Side::Against] {
            for l in team_stats(&s.shots, &ice, &s.prepared.game_order, &s.prepared.teams, &scope, side, &league) {
                prop_assert!(l.corsi60 >= l.fenwick60 && l.fenwick60 >= l.shots60);
            }
        }
    }

    #[test]
    fn fitted_model_is_calibrated_on_its_training_scope(seed in 1u64..10_000) {
        let (s, model) = season(seed, None);
        prop_assume!(model.converged && model.n_obs > 0);
        let modelled: Vec<&ScoredShot> = s.shots.iter().filter(|x| x.prediction.is_some()).collect();
        let expected: f64 = modelled.iter().map(|x| x.prediction.unwrap().probability).sum();
        let goals = modelled.iter().filter(|x| x.kind == EventKind::Goal).count() as f64;
        prop_assert!((expected - goals).abs() <= 1e-6 * goals, "{} vs {}", expected, goals);
    }
}

fn shot(i: u32, goalie: &str, p: f64, goal: bool) -> ScoredShot {
    ScoredShot {
        key: EventKey {
            game_id: GameId::from("g"),
            event_index: i,
        },
        kind: if goal { EventKind::Goal } else { EventKind::ShotOnGoal },
        shooter: PlayerId::from("s"),
        shooter_position: Position::Forward,
        shooting_team: TeamId::from("A"),
        defending_team: TeamId::from("H"),
        shooter_is_home: false,
        goalie: Some(PlayerId::from(goalie)),
        strength: Some(puckweight_core::Strength::EV55),
        prediction: Some(Prediction {
            probability: p,
            std_error: 0.01,
            linear_predictor: 0.0,
        }),
    }
}

proptest! {
    #[test]
    fn identical_shot_sets_give_identical_adjusted_pct(
        faced in prop::collection::vec((0.01f64..0.9, any::<bool>()), 1..60),
        league_sv in 0.85f64..0.95,
    ) {
        let mut shots = Vec::new();
        for (i, (p, g)) in faced.iter().enumerate() {
            shots.push(shot(2 * i as u32, "ga", *p, *g));
            shots.push(shot(2 * i as u32 + 1, "gb", *p, *g));
        }
        let order = [(GameId::from("g"), 0)].into_iter().collect();
        let lines = goalie_stats(&shots, &order, &Scope::default(), &League::from_sv_pct(league_sv));
        prop_assert_eq!(lines.len(), 2);
        prop_assert_eq!(lines[0].adj_sv_pct, lines[1].adj_sv_pct);
        prop_assert_eq!(&lines[0].goalie_id, "ga");
    }
}
