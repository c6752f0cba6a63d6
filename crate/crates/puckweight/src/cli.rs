//! Command-line interface.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use puckweight_core::apm::{
    build_design, cross_validate_lambda, design_rows, fit_apm, wowy, ApmOptions, DesignOptions, OutcomeKind,
    RowSituation, DEFAULT_LAMBDA,
};
use puckweight_core::features::Strength;
use puckweight_core::glm::FitOptions;
use puckweight_core::ingest::PlayerId;
use puckweight_core::reliability::SplitSpec;
use puckweight_core::stats::{goalie_stats, skater_stats, team_stats, League, Scope, Side, Statistic, Venue};
use puckweight_core::synth::{generate, SynthConfig};

use crate::config::{ConfigFile, Resolver};
use crate::error::{Error, Result};
use crate::formats::{design, events, features, model, shifts, truth, write_file};
use crate::pipeline::{self, Entity, BASELINE};
use crate::report;
use crate::table::{Format, Table};

#[derive(Debug, Parser)]
#[command(name = "puckweight", version, about = "Shot-quality models and weighted-shot statistics for hockey play-by-play")]
pub struct Cli {
    /// Flat `key = value` settings file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format for tables: `table` (delimited) or `json`.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Write the main table here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct Inputs {
    #[arg(long)]
    pub events: Option<String>,
    #[arg(long)]
    pub shifts: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct ModelArg {
    /// Model file, or `baseline` for the built-in coefficients.
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct ScopeArgs {
    /// Comma-separated strengths (EV55, EV44, PP54, PP53, SH45, SH35) or `all`.
    #[arg(long)]
    pub strengths: Option<String>,
    /// `all` or `away`.
    #[arg(long)]
    pub venue: Option<String>,
    #[arg(long)]
    pub min_shots: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and cross-check events and shifts.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Fit the shot model and write a model file.
    Fit {
        #[command(flatten)]
        inputs: Inputs,
        /// Model file to write.
        #[arg(long)]
        out: Option<String>,
        /// Also export the feature matrix here.
        #[arg(long)]
        features: Option<String>,
    },
    /// Rank shots by goal probability.
    Score {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        top: Option<usize>,
    },
    /// Skater statistic lines.
    Skaters {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        scope: ScopeArgs,
        /// Pin the league save percentage instead of pooling the data.
        #[arg(long)]
        league_sv_pct: Option<f64>,
    },
    /// Goalie statistic lines.
    Goalies {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        scope: ScopeArgs,
        #[arg(long)]
        league_sv_pct: Option<f64>,
    },
    /// Team statistic lines.
    Teams {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        scope: ScopeArgs,
        #[arg(long)]
        league_sv_pct: Option<f64>,
        /// `for` or `against`.
        #[arg(long)]
        side: Option<String>,
    },
    /// Split-half reliability and predictive correlations.
    Reliability {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        scope: ScopeArgs,
        /// `skaters`, `goalies` or `teams`.
        #[arg(long)]
        entity: Option<String>,
        /// `for` or `against`, for teams.
        #[arg(long)]
        side: Option<String>,
        /// Comma-separated statistics; defaults depend on the entity.
        #[arg(long)]
        stat: Option<String>,
        /// Statistic predicted in the other half; the statistic itself if unset.
        #[arg(long)]
        target: Option<String>,
        /// Write `stat_name,r` rows here.
        #[arg(long)]
        plot_data: Option<String>,
    },
    /// Adjusted plus-minus.
    Apm {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        lambda: Option<f64>,
        /// Choose lambda by cross-validation over games with this many folds.
        #[arg(long)]
        folds: Option<usize>,
        /// Comma-separated lambdas for cross-validation.
        #[arg(long)]
        lambda_grid: Option<String>,
        /// Fit offense and defense in separate regressions.
        #[arg(long)]
        separate: bool,
        /// Leave out zone-start indicators.
        #[arg(long)]
        no_zones: bool,
        /// Dump one sparse design here.
        #[arg(long)]
        design: Option<String>,
        /// Outcome of the dumped design and of cross-validation.
        #[arg(long)]
        design_outcome: Option<String>,
        /// Situation (EV, PP, SH) of the dumped design and of cross-validation.
        #[arg(long)]
        design_situation: Option<String>,
    },
    /// Team rates with and without a player.
    Wowy {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        player: Option<String>,
        /// goals, wshots, shots, fenwick or corsi.
        #[arg(long)]
        outcome: Option<String>,
        /// EV, PP, SH or all.
        #[arg(long)]
        situation: Option<String>,
    },
    /// Generate a synthetic season.
    Synth {
        #[arg(long)]
        out_dir: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        games: Option<usize>,
        #[arg(long)]
        teams: Option<usize>,
        #[arg(long)]
        players_per_team: Option<usize>,
        #[arg(long)]
        goalie_skill_sd: Option<f64>,
        #[arg(long)]
        player_offense_sd: Option<f64>,
        #[arg(long)]
        shot_rate: Option<f64>,
        #[arg(long)]
        penalty_rate: Option<f64>,
        #[arg(long)]
        rebound_probability: Option<f64>,
        #[arg(long)]
        max_slot_share: Option<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Fit { .. } => "fit",
            Command::Score { .. } => "score",
            Command::Skaters { .. } => "skaters",
            Command::Goalies { .. } => "goalies",
            Command::Teams { .. } => "teams",
            Command::Reliability { .. } => "reliability",
            Command::Apm { .. } => "apm",
            Command::Wowy { .. } => "wowy",
            Command::Synth { .. } => "synth",
        }
    }
}

fn parse_strengths(s: &str) -> Result<BTreeSet<Strength>> {
    if s.trim() == "all" {
        return Ok(Strength::ALL.into_iter().collect());
    }
    s.split(',')
        .map(|t| {
            Strength::from_token(t.trim()).ok_or_else(|| {
                Error::Config(format!(
                    "unknown strength `{}`, allowed: {}",
                    t.trim(),
                    Strength::ALL.map(|s| s.token()).join(", ")
                ))
            })
        })
        .collect::<Result<BTreeSet<_>>>()
        .and_then(|set| {
            if set.is_empty() {
                Err(Error::Config("no strengths given".into()))
            } else {
                Ok(set)
            }
        })
}

fn parse_venue(s: &str) -> Result<Venue> {
    match s {
        "all" => Ok(Venue::All),
        "away" => Ok(Venue::Away),
        _ => Err(Error::Config(format!("unknown venue `{s}`, allowed: all, away"))),
    }
}

fn parse_side(s: &str) -> Result<Side> {
    match s {
        "for" => Ok(Side::For),
        "against" => Ok(Side::Against),
        _ => Err(Error::Config(format!("unknown side `{s}`, allowed: for, against"))),
    }
}

fn parse_stat(s: &str) -> Result<Statistic> {
    Statistic::from_token(s.trim()).ok_or_else(|| {
        Error::Config(format!(
            "unknown statistic `{}`, allowed: {}",
            s.trim(),
            Statistic::ALL.map(|s| s.token()).join(", ")
        ))
    })
}

fn parse_outcome(s: &str) -> Result<OutcomeKind> {
    OutcomeKind::from_token(s).ok_or_else(|| {
        Error::Config(format!(
            "unknown outcome `{s}`, allowed: {}",
            OutcomeKind::ALL.map(|o| o.token()).join(", ")
        ))
    })
}

fn parse_situation(s: &str) -> Result<Option<RowSituation>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(None);
    }
    RowSituation::from_token(s)
        .map(Some)
        .ok_or_else(|| Error::Config(format!("unknown situation `{s}`, allowed: EV, PP, SH, all")))
}

fn parse_grid(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Config(format!("bad lambda `{}` in grid", t.trim())))
        })
        .collect()
}

/// Everything a command produced, written by [`run`].
struct Session {
    resolver: Resolver,
    format: Format,
    output: Option<String>,
    log: Vec<String>,
}

impl Session {
    fn inputs(&mut self, i: &Inputs) -> Result<(Vec<puckweight_core::ShotEvent>, Vec<puckweight_core::ShiftRecord>)> {
        let ev: String = self.resolver.required("events", i.events.clone())?;
        let sh: String = self.resolver.required("shifts", i.shifts.clone())?;
        Ok((pipeline::load_events(Path::new(&ev))?, pipeline::load_shifts(Path::new(&sh))?))
    }

    fn scope(&mut self, s: &ScopeArgs) -> Result<(Scope, f64)> {
        let strengths = parse_strengths(&self.resolver.or("strengths", s.strengths.clone(), "EV55".to_string())?)?;
        let venue = parse_venue(&self.resolver.or("venue", s.venue.clone(), "all".to_string())?)?;
        let min_shots = self.resolver.or("min_shots", s.min_shots, 0.0)?;
        Ok((Scope { strengths, venue }, min_shots))
    }

    fn warn_all(&mut self, warnings: &[String]) {
        self.log.extend(warnings.iter().map(|w| format!("warning: {w}")));
    }
}

/// Parses arguments, runs the command and returns the exit status.
/// Errors are reported on one line of standard error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return if e.kind() == K::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("{}", Error::Usage(first.to_string()).one_line());
            return crate::error::ErrorKind::Usage.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.one_line());
            e.kind().exit_code()
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let mut resolver = Resolver::new(file);
    let format_token = resolver.or("format", cli.format.clone(), "table".to_string())?;
    let format = Format::from_token(&format_token)
        .ok_or_else(|| Error::Config(format!("unknown format `{format_token}`, allowed: table, json")))?;
    let output = resolver.opt("output", cli.output.clone())?;
    let mut session = Session {
        resolver,
        format,
        output,
        log: Vec::new(),
    };
    let name = cli.command.name();
    let result = execute(&mut session, cli.command);
    let mut err = std::io::stderr().lock();
    for line in session.resolver.log_lines(name) {
        let _ = writeln!(err, "{line}");
    }
    for line in &session.log {
        let _ = writeln!(err, "{line}");
    }
    let table = result?;
    if let Some(t) = table {
        let bytes = t.render(session.format);
        match &session.output {
            Some(p) => write_file(Path::new(p), &bytes)?,
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)
                    .and_then(|_| out.flush())
                    .map_err(|e| Error::io("<stdout>", e))?;
            }
        }
    }
    Ok(())
}

fn execute(s: &mut Session, command: Command) -> Result<Option<Table>> {
    match command {
        Command::Validate { inputs } => {
            let (ev, sh) = s.inputs(&inputs)?;
            let prepared = puckweight_core::scoring::prepare(&ev, &sh)?;
            s.warn_all(&prepared.warnings);
            let mut t = Table::new(&["Check", "Count"]);
            let players: BTreeSet<_> = sh.iter().map(|x| &x.player_id).collect();
            for (k, v) in [
                ("games", prepared.teams.len()),
                ("events", ev.len()),
                ("shifts", sh.len()),
                ("players", players.len()),
                ("shot_attempts", prepared.shots.len()),
                ("modelled_shots", prepared.modelled().count()),
                ("warnings", prepared.warnings.len()),
            ] {
                t.push(vec![crate::table::Cell::text(k), crate::table::Cell::Int(v as i64)]);
            }
            Ok(Some(t))
        }
        Command::Fit {
            inputs,
            out,
            features: features_path,
        } => {
            let out: String = s.resolver.required("out", out)?;
            let features_path: Option<String> = s.resolver.opt("features", features_path)?;
            let (ev, sh) = s.inputs(&inputs)?;
            let fit = pipeline::fit(&ev, &sh, FitOptions::default())?;
            s.warn_all(&fit.prepared.warnings);
            s.log.push(format!(
                "fit n_obs={} iterations={} converged={} log_likelihood={} auc={}",
                fit.model.n_obs, fit.model.iterations, fit.model.converged, fit.model.log_likelihood, fit.auc
            ));
            if !fit.model.converged {
                s.log.push("warning: fit did not converge; check for categories without goals".to_string());
            }
            write_file(Path::new(&out), &model::write_model(&fit.model))?;
            if let Some(p) = features_path {
                write_file(Path::new(&p), &features::write_feature_matrix(fit.prepared.modelled()))?;
            }
            Ok(Some(report::summary_table(&fit.model)))
        }
        Command::Score { inputs, model, top } => {
            let m = pipeline::load_model(&s.resolver.required("model", model.model)?)?;
            let top = s.resolver.or("top", top, 5)?;
            let (ev, sh) = s.inputs(&inputs)?;
            let prepared = puckweight_core::scoring::prepare(&ev, &sh)?;
            s.warn_all(&prepared.warnings);
            Ok(Some(report::score_table(&prepared, &m, top)?))
        }
        Command::Skaters {
            inputs,
            model,
            scope,
            league_sv_pct,
        } => {
            let ctx = stats_context(s, &inputs, model, &scope, league_sv_pct)?;
            let lines = skater_stats(&ctx.scored.shots, &ctx.ice, &ctx.scored.prepared.game_order, &ctx.scope, &ctx.league);
            let lines: Vec<_> = lines.into_iter().filter(|l| l.shots >= ctx.min_shots).collect();
            Ok(Some(report::skater_table(&lines)))
        }
        Command::Goalies {
            inputs,
            model,
            scope,
            league_sv_pct,
        } => {
            let ctx = stats_context(s, &inputs, model, &scope, league_sv_pct)?;
            let lines = goalie_stats(&ctx.scored.shots, &ctx.scored.prepared.game_order, &ctx.scope, &ctx.league);
            let lines: Vec<_> = lines.into_iter().filter(|l| l.shot_a >= ctx.min_shots).collect();
            Ok(Some(report::goalie_table(&lines)))
        }
        Command::Teams {
            inputs,
            model,
            scope,
            league_sv_pct,
            side,
        } => {
            let side = parse_side(&s.resolver.or("side", side, "for".to_string())?)?;
            let ctx = stats_context(s, &inputs, model, &scope, league_sv_pct)?;
            let lines = team_stats(
                &ctx.scored.shots,
                &ctx.ice,
                &ctx.scored.prepared.game_order,
                &ctx.scored.prepared.teams,
                &ctx.scope,
                side,
                &ctx.league,
            );
            let lines: Vec<_> = lines.into_iter().filter(|l| l.model_shots >= ctx.min_shots).collect();
            Ok(Some(report::team_table(&lines, side)))
        }
        Command::Reliability {
            inputs,
            model,
            scope,
            entity,
            side,
            stat,
            target,
            plot_data,
        } => {
            let stat: Option<String> = s.resolver.opt("stat", stat)?;
            let stats: Option<Vec<Statistic>> = stat
                .as_deref()
                .map(|v| v.split(',').map(parse_stat).collect())
                .transpose()?;
            let target = s.resolver.opt("target", target)?.map(|t: String| parse_stat(&t)).transpose()?;
            let side = parse_side(&s.resolver.or("side", side, "for".to_string())?)?;
            let default_entity = match &stats {
                Some(v) if v.iter().all(|x| is_goalie_stat(*x)) => "goalies",
                Some(_) => "skaters",
                None => "goalies",
            };
            let entity_token = s.resolver.or("entity", entity, default_entity.to_string())?;
            let entity = Entity::from_token(&entity_token, side).ok_or_else(|| {
                Error::Config(format!("unknown entity `{entity_token}`, allowed: skaters, goalies, teams"))
            })?;
            let plot_path: Option<String> = s.resolver.opt("plot_data", plot_data)?;
            let ctx = stats_context(s, &inputs, model, &scope, None)?;
            let games = pipeline::entity_games(&ctx.scored, &ctx.ice, &ctx.scope, entity);
            let spec = SplitSpec {
                venue: ctx.scope.venue,
                min_exposure: ctx.min_shots,
                ..SplitSpec::default()
            };
            let explicit = stats.is_some();
            let stats = stats.unwrap_or_else(|| entity.default_stats());
            let mut reports = Vec::new();
            for (stat, r) in pipeline::correlations(&games, &stats, target, &ctx.league, &spec) {
                match r {
                    Ok(r) => reports.push(r),
                    Err(e) if !explicit => s.log.push(format!("warning: {}: {e}", stat.token())),
                    Err(e) => return Err(e.into()),
                }
            }
            if reports.is_empty() {
                return Err(Error::Config(format!("no statistic could be correlated for {}", entity.token())));
            }
            if let Some(p) = plot_path {
                write_file(Path::new(&p), &report::plot_data(&reports))?;
            }
            Ok(Some(report::reliability_table(&reports)))
        }
        Command::Apm {
            inputs,
            model,
            lambda,
            folds,
            lambda_grid,
            separate,
            no_zones,
            design: design_path,
            design_outcome,
            design_situation,
        } => {
            let m = pipeline::load_model(&s.resolver.or("model", model.model, BASELINE.to_string())?)?;
            let folds: Option<usize> = s.resolver.opt("folds", folds)?;
            let lambda: Option<f64> = match folds {
                Some(_) => {
                    if s.resolver.opt::<f64>("lambda", lambda)?.is_some() {
                        return Err(Error::Usage("give either --lambda or --folds, not both".into()));
                    }
                    None
                }
                None => Some(s.resolver.or("lambda", lambda, DEFAULT_LAMBDA)?),
            };
            let separate = s.resolver.switch("separate", separate)?;
            let no_zones = s.resolver.switch("no_zones", no_zones)?;
            let design_path: Option<String> = s.resolver.opt("design", design_path)?;
            let outcome = parse_outcome(&s.resolver.or("design_outcome", design_outcome, "goals".to_string())?)?;
            let situation = parse_situation(&s.resolver.or("design_situation", design_situation, "EV".to_string())?)?
                .ok_or_else(|| Error::Config("design_situation must be EV, PP or SH".into()))?;
            let (ev, sh) = s.inputs(&inputs)?;
            let scored = pipeline::score(&ev, &sh, &m)?;
            s.warn_all(&scored.prepared.warnings);
            let obs = pipeline::observations(&ev, &sh, &scored)?;
            let mut options = ApmOptions {
                lambda: lambda.unwrap_or(DEFAULT_LAMBDA),
                zone_indicators: !no_zones,
                joint: !separate,
            };
            if let Some(k) = folds {
                let grid = parse_grid(&s.resolver.or(
                    "lambda_grid",
                    lambda_grid,
                    "100,300,1000,3000,10000,30000".to_string(),
                )?)?;
                let (best, scores) = cross_validate_lambda(&obs, outcome, situation, &options, &grid, k)?;
                for (l, sse) in scores {
                    s.log.push(format!("cv lambda={l} sse={sse}"));
                }
                s.log.push(format!("cv best lambda={best}"));
                options.lambda = best;
            }
            if let Some(p) = design_path {
                let rows = design_rows(&obs, outcome);
                let roster = rows.iter().flat_map(|r| r.offense.iter().chain(r.defense)).cloned().collect();
                let d = build_design(
                    &rows,
                    &roster,
                    &DesignOptions {
                        zone_indicators: options.zone_indicators,
                        situation: Some(situation),
                        ..DesignOptions::default()
                    },
                );
                write_file(Path::new(&p), &design::write_design(&d.design))?;
            }
            let result = fit_apm(&obs, &options)?;
            s.log.push(format!(
                "apm observations={} players={} lambda={}",
                obs.len(),
                result.players.len(),
                result.lambda
            ));
            Ok(Some(report::apm_table(&result, &report::rosters(&sh))))
        }
        Command::Wowy {
            inputs,
            model,
            player,
            outcome,
            situation,
        } => {
            let m = pipeline::load_model(&s.resolver.or("model", model.model, BASELINE.to_string())?)?;
            let player = PlayerId(s.resolver.required("player", player)?);
            let outcome = parse_outcome(&s.resolver.or("outcome", outcome, "goals".to_string())?)?;
            let situation = parse_situation(&s.resolver.or("situation", situation, "EV".to_string())?)?;
            let (ev, sh) = s.inputs(&inputs)?;
            let scored = pipeline::score(&ev, &sh, &m)?;
            let obs = pipeline::observations(&ev, &sh, &scored)?;
            let w = wowy(&obs, &player, outcome, situation)?;
            Ok(Some(report::wowy_table(&player, outcome, situation, &w)))
        }
        Command::Synth {
            out_dir,
            seed,
            games,
            teams,
            players_per_team,
            goalie_skill_sd,
            player_offense_sd,
            shot_rate,
            penalty_rate,
            rebound_probability,
            max_slot_share,
        } => {
            let d = SynthConfig::default();
            let r = &mut s.resolver;
            let out_dir: String = r.required("out_dir", out_dir)?;
            let config = SynthConfig {
                seed: r.or("seed", seed, d.seed)?,
                n_games: r.or("games", games, d.n_games)?,
                teams: r.or("teams", teams, d.teams)?,
                players_per_team: r.or("players_per_team", players_per_team, d.players_per_team)?,
                goalie_skill_sd: r.or("goalie_skill_sd", goalie_skill_sd, d.goalie_skill_sd)?,
                player_offense_sd: r.or("player_offense_sd", player_offense_sd, d.player_offense_sd)?,
                shot_rate: r.or("shot_rate", shot_rate, d.shot_rate)?,
                penalty_rate: r.or("penalty_rate", penalty_rate, d.penalty_rate)?,
                rebound_probability: r.or("rebound_probability", rebound_probability, d.rebound_probability)?,
                max_slot_share: r.or("max_slot_share", max_slot_share, d.max_slot_share)?,
                ..d
            };
            let season = generate(&config)?;
            let dir = Path::new(&out_dir);
            std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            write_file(&dir.join("events.csv"), &events::write_events(&season.events))?;
            write_file(&dir.join("shifts.csv"), &shifts::write_shifts(&season.shifts))?;
            write_file(&dir.join("truth.csv"), &truth::write_truth(&season.truth))?;
            s.log.push(format!(
                "synth games={} events={} shifts={}",
                config.n_games,
                season.events.len(),
                season.shifts.len()
            ));
            Ok(None)
        }
    }
}

fn is_goalie_stat(s: Statistic) -> bool {
    matches!(
        s,
        Statistic::SvPct | Statistic::ExpSvPct | Statistic::AdjSvPct | Statistic::DiffGA
    )
}

struct StatsContext {
    scored: pipeline::Scored,
    ice: puckweight_core::stats::IceTime,
    scope: Scope,
    league: League,
    min_shots: f64,
}

fn stats_context(
    s: &mut Session,
    inputs: &Inputs,
    model: ModelArg,
    scope: &ScopeArgs,
    league_sv_pct: Option<f64>,
) -> Result<StatsContext> {
    let m = pipeline::load_model(&s.resolver.required("model", model.model)?)?;
    let (scope, min_shots) = s.scope(scope)?;
    let pinned: Option<f64> = s.resolver.opt("league_sv_pct", league_sv_pct)?;
    let (ev, sh) = s.inputs(inputs)?;
    let scored = pipeline::score(&ev, &sh, &m)?;
    s.warn_all(&scored.prepared.warnings);
    let ice = scored.ice_time(&sh, &scope)?;
    let league = match pinned {
        Some(v) => League::from_sv_pct(v),
        None => League::from_shots(&scored.shots, &scope),
    };
    s.log.push(format!("league sv_pct={}", league.sv_pct()));
    Ok(StatsContext {
        scored,
        ice,
        scope,
        league,
        min_shots,
    })
}
