use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gmdh_logic::classic::{ClassicConfig, Freedom};
use gmdh_logic::cli::{self, DataArgs, RulesArgs, TrainArgs};
use gmdh_logic::collective::Chi0;
use gmdh_logic::dataset::SplitStrategy;
use gmdh_logic::model::Criterion;
use gmdh_logic::synthesis::{SynthesisConfig, DEFAULT_CANDIDATE_BUDGET};

#[derive(Parser)]
#[command(name = "gmdh-logic", version, about = "Synthesize minimal logical gate networks from small labeled datasets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Exterior,
    Classic,
}

#[derive(Clone, Copy, ValueEnum)]
enum SplitArg {
    Interleave,
    Random,
}

#[derive(Args)]
struct Data {
    /// CSV with a header row and a `class` label column
    csv: PathBuf,
    /// Sidecar with `name: quantitative|boolean` lines
    #[arg(long)]
    schema: Option<PathBuf>,
}

#[derive(Args)]
struct Tuning {
    #[arg(long, default_value_t = 32)]
    max_layers: usize,
    #[arg(long)]
    width_cap: Option<usize>,
    /// Refuse to generate a layer with more raw candidates than this; 0 disables
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
    candidate_budget: u64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Candidates carried per layer: a count like `12` or a fraction of L1 like `0.4`
    #[arg(long, default_value = "0.4")]
    freedom: String,
    #[arg(long, value_enum, default_value_t = SplitArg::Interleave)]
    split: SplitArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    verbose: bool,
}

impl Tuning {
    fn synthesis(&self) -> SynthesisConfig {
        SynthesisConfig {
            max_layers: self.max_layers,
            width_cap: self.width_cap,
            dedup: true,
            candidate_budget: (self.candidate_budget > 0).then_some(self.candidate_budget),
        }
    }

    fn classic(&self) -> Result<ClassicConfig, String> {
        let freedom = if self.freedom.contains('.') {
            Freedom::Fraction(self.freedom.parse().map_err(|_| format!("bad --freedom `{}`", self.freedom))?)
        } else {
            Freedom::Count(self.freedom.parse().map_err(|_| format!("bad --freedom `{}`", self.freedom))?)
        };
        let split = match self.split {
            SplitArg::Interleave => SplitStrategy::Interleave,
            SplitArg::Random => SplitStrategy::Random { seed: self.seed },
        };
        Ok(ClassicConfig {
            alpha: self.alpha,
            beta: self.beta,
            delta: self.delta,
            freedom,
            split,
            max_layers: self.max_layers,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a model and write it to --out
    Train {
        #[command(flatten)]
        data: Data,
        #[arg(long, short)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = CriterionArg::Exterior)]
        criterion: CriterionArg,
        /// Plausibility threshold, decimal or fraction
        #[arg(long, default_value = "0.8")]
        chi0: Chi0,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Classify rows of a CSV
    Predict {
        model: PathBuf,
        csv: PathBuf,
        #[arg(long)]
        chi0: Option<Chi0>,
    },
    /// Print if-then rules
    Rules {
        model: PathBuf,
        /// Comma-separated bits for the relevant sensors
        #[arg(long, value_delimiter = ',')]
        bits: Option<Vec<u8>>,
        /// 1-based row of --csv to explain
        #[arg(long, requires = "csv")]
        row: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        min_chi: Option<Chi0>,
        #[arg(long, default_value_t = 256)]
        cap: usize,
        #[arg(long)]
        chi0: Option<Chi0>,
    },
    /// Render the trained matrix
    Matrix { model: PathBuf },
    /// Vote on every combination of relevant sensors, as CSV
    CoherenceMap {
        model: PathBuf,
        /// Enumerate all sensors, not only the ones members use
        #[arg(long)]
        all_features: bool,
        #[arg(long)]
        chi0: Option<Chi0>,
    },
    /// Candidate counts per layer against the number of Boolean functions
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        r_star: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run both criteria on the same data across a grid of classic settings
    Compare {
        #[command(flatten)]
        data: Data,
        #[arg(long, default_value_t = 32)]
        max_layers: usize,
    },
}

fn main() -> ExitCode {
    // argument errors are input errors; 2 is reserved for exhausted synthesis
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Train { data, out: path, criterion, chi0, tuning } => match tuning.classic() {
            Ok(classic) => cli::cmd_train(
                &TrainArgs {
                    data: DataArgs { csv: data.csv, schema: data.schema },
                    out: path,
                    criterion: match criterion {
                        CriterionArg::Exterior => Criterion::Exterior,
                        CriterionArg::Classic => Criterion::Classic,
                    },
                    synthesis: tuning.synthesis(),
                    classic,
                    chi0,
                    verbose: tuning.verbose,
                },
                &mut out,
                &mut err,
            ),
            Err(msg) => {
                eprintln!("error: {msg}");
                cli::EXIT_INPUT
            }
        },
        Command::Predict { model, csv, chi0 } => cli::cmd_predict(&model, &csv, chi0, &mut out, &mut err),
        Command::Rules { model, bits, row, csv, min_chi, cap, chi0 } => cli::cmd_rules(
            &RulesArgs { model, bits: bits.map(|b| b.into_iter().map(|v| v != 0).collect()), row, csv, min_chi, cap, chi0 },
            &mut out,
            &mut err,
        ),
        Command::Matrix { model } => cli::cmd_matrix(&model, &mut out, &mut err),
        Command::CoherenceMap { model, all_features, chi0 } => {
            cli::cmd_coherence_map(&model, all_features, chi0, &mut out, &mut err)
        }
        Command::Count { m, r_star, json } => cli::cmd_count(m, r_star, json, &mut out, &mut err),
        Command::Compare { data, max_layers } => cli::cmd_compare(
            &DataArgs { csv: data.csv, schema: data.schema },
            &SynthesisConfig { max_layers, ..Default::default() },
            None,
            &mut out,
            &mut err,
        ),
    };
    ExitCode::from(code as u8)
}
