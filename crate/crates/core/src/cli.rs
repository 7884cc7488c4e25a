//! Command implementations behind the `gmdh-logic` binary. Each returns the
//! process exit code: 0 success, 1 input error, 2 synthesis exhausted.

use std::io::Write;
use std::path::PathBuf;

use crate::analysis::check_inequality;
use crate::classic::{synthesize_classic, ClassicConfig};
use crate::collective::{Chi0, Collective};
use crate::compare::{compare, default_grid};
use crate::dataset::{binarize, load_csv, read_unlabeled, BooleanLearningSet, Schema};
use crate::error::{Error, Result};
use crate::model::{Criterion, ModelFile};
use crate::render::{check_rule_cube, render_matrix, select_rules, RuleSelector};
use crate::synthesis::{synthesize, SynthesisConfig, EXPAND_FEATURES_HINT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_EXHAUSTED: i32 = 2;

#[derive(Clone, Debug)]
pub struct DataArgs {
    pub csv: PathBuf,
    pub schema: Option<PathBuf>,
}

impl DataArgs {
    pub fn load(&self) -> Result<BooleanLearningSet> {
        let schema = self.schema.as_ref().map(Schema::load).transpose()?;
        let set = load_csv(&self.csv, schema.as_ref())?;
        binarize(&set, None)
    }
}

#[derive(Clone, Debug)]
pub struct TrainArgs {
    pub data: DataArgs,
    pub out: PathBuf,
    pub criterion: Criterion,
    pub synthesis: SynthesisConfig,
    pub classic: ClassicConfig,
    pub chi0: Chi0,
    pub verbose: bool,
}

fn report(err: &mut dyn Write, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_INPUT
}

pub fn cmd_train(args: &TrainArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match train(args, out, err) {
        Ok(code) => code,
        Err(e) => report(err, &e),
    }
}

fn train(args: &TrainArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let bset = args.data.load()?;
    let model = match args.criterion {
        Criterion::Exterior => {
            let res = synthesize(&bset, &args.synthesis)?;
            if args.verbose {
                let _ = writeln!(err, "feature losses: {:?}", res.feature_mus);
                for t in &res.trace {
                    let _ = writeln!(
                        err,
                        "layer {}: generated {} passed {} deduped {} capped {} kept {} min mu {}",
                        t.r,
                        t.generated,
                        t.passed,
                        t.deduped,
                        t.capped,
                        t.kept,
                        t.min_mu.map_or("-".to_string(), |m| m.to_string())
                    );
                }
            }
            ModelFile::from_exterior(&bset, &res, args.synthesis, args.chi0)
        }
        Criterion::Classic => {
            let res = synthesize_classic(&bset, &args.classic)?;
            if args.verbose {
                let _ = writeln!(err, "freedom F = {}", res.freedom);
                for (r, cr) in res.cr_trace.iter().enumerate() {
                    let _ = writeln!(err, "layer {}: CR_min {}", r + 1, cr);
                }
            }
            ModelFile::from_classic(&bset, &res, args.classic, args.chi0)
        }
    };
    model.save(&args.out)?;
    let o = &model.body.outcome;
    let _ = writeln!(
        out,
        "{:?}: depth {} members {} best mu {} -> {}",
        o.status,
        o.depth,
        model.body.members.len(),
        o.best_mu,
        args.out.display()
    );
    if model.is_success() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(err, "warning: {EXPAND_FEATURES_HINT}");
        Ok(EXIT_EXHAUSTED)
    }
}

fn load_collective(model: &ModelFile, chi0: Option<Chi0>) -> Result<Collective> {
    let c = model.collective()?;
    Ok(match chi0 {
        Some(x) => c.with_chi0(x),
        None => c,
    })
}

/// Writes `row,label,l1,L,chi,plausible` for every input row.
pub fn cmd_predict(model: &PathBuf, csv: &PathBuf, chi0: Option<Chi0>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let model = ModelFile::load(model)?;
        let collective = load_collective(&model, chi0)?;
        let file = std::fs::File::open(csv).map_err(|e| Error::io(csv, e))?;
        let rows = read_unlabeled(file, &model.body.features)?;
        let mut failed = false;
        let _ = writeln!(out, "row,label,l1,L,chi,plausible");
        for (i, row) in rows.into_iter().enumerate() {
            let decision = row.and_then(|raw| {
                collective
                    .classify_batch(&model.body.features, &model.body.quantization, &[raw])
                    .pop()
                    .expect("one row in, one out")
            });
            match decision {
                Ok(d) => {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{:.6},{}",
                        i + 1,
                        d.label_text(),
                        d.l1,
                        d.total,
                        d.chi_f64(),
                        d.plausible
                    );
                }
                Err(e) => {
                    failed = true;
                    let _ = writeln!(err, "row {}: {e}", i + 1);
                }
            }
        }
        Ok(if failed { EXIT_INPUT } else { EXIT_OK })
    };
    let result = run();
    result.unwrap_or_else(|e| report(err, &e))
}

#[derive(Clone, Debug, Default)]
pub struct RulesArgs {
    pub model: PathBuf,
    /// Bits for the relevant sensors, in ascending sensor order.
    pub bits: Option<Vec<bool>>,
    /// 1-based data row of `csv` to explain.
    pub row: Option<usize>,
    pub csv: Option<PathBuf>,
    pub min_chi: Option<Chi0>,
    pub cap: usize,
    pub chi0: Option<Chi0>,
}

pub fn cmd_rules(args: &RulesArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let model = ModelFile::load(&args.model)?;
        let collective = load_collective(&model, args.chi0)?;
        check_rule_cube(&collective)?;
        let features = &model.body.features;
        let q = &model.body.quantization;
        let selector = if let Some(bits) = &args.bits {
            let relevant: Vec<usize> = collective.features_used().into_iter().collect();
            if bits.len() != relevant.len() {
                return Err(Error::Config(format!(
                    "expected {} bits for sensors {}",
                    relevant.len(),
                    relevant.iter().map(|j| format!("z{}", j + 1)).collect::<Vec<_>>().join(",")
                )));
            }
            RuleSelector::Instance(collective.expand(&relevant, bits))
        } else if let Some(row) = args.row {
            let csv = args.csv.as_ref().ok_or_else(|| Error::Config("--row needs --csv".into()))?;
            let file = std::fs::File::open(csv).map_err(|e| Error::io(csv, e))?;
            let rows = read_unlabeled(file, features)?;
            let raw = rows
                .into_iter()
                .nth(row.checked_sub(1).ok_or_else(|| Error::Config("rows are 1-based".into()))?)
                .ok_or_else(|| Error::Config(format!("no row {row}")))??;
            RuleSelector::Instance(q.binarize_row(features, &raw)?)
        } else if let Some(bound) = args.min_chi {
            RuleSelector::MinChi(bound)
        } else {
            RuleSelector::All { cap: args.cap }
        };
        for rule in select_rules(&collective, &selector, features, q)? {
            let _ = writeln!(out, "{rule}");
        }
        Ok(EXIT_OK)
    };
    let result = run();
    result.unwrap_or_else(|e| report(err, &e))
}

pub fn cmd_matrix(model: &PathBuf, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> Result<i32> {
        let model = ModelFile::load(model)?;
        let _ = write!(out, "{}", render_matrix(&model.collective()?, &model.body.features));
        Ok(EXIT_OK)
    };
    let result = run();
    result.unwrap_or_else(|e| report(err, &e))
}

pub fn cmd_coherence_map(
    model: &PathBuf,
    all_features: bool,
    chi0: Option<Chi0>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let run = || -> Result<i32> {
        let model = ModelFile::load(model)?;
        let map = load_collective(&model, chi0)?.coherence_map(!all_features)?;
        map.write_csv(out, &model.body.features)?;
        Ok(EXIT_OK)
    };
    let result = run();
    result.unwrap_or_else(|e| report(err, &e))
}

pub fn cmd_count(m: usize, r_star: usize, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match check_inequality(m, r_star) {
        Ok(report) if json => {
            let _ = writeln!(out, "{}", report.to_json());
            EXIT_OK
        }
        Ok(report) => {
            let _ = write!(out, "{report}");
            EXIT_OK
        }
        Err(e) => report(err, &e),
    }
}

pub fn cmd_compare(
    data: &DataArgs,
    synthesis: &SynthesisConfig,
    grid: Option<Vec<ClassicConfig>>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let run = || -> Result<i32> {
        let bset = data.load()?;
        let grid = grid.unwrap_or_else(|| default_grid(bset.n()));
        let _ = write!(out, "{}", compare(&bset, synthesis, &grid)?);
        Ok(EXIT_OK)
    };
    let result = run();
    result.unwrap_or_else(|e| report(err, &e))
}
