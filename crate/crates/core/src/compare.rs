//! Side-by-side runs of the exterior-addition method and the classic
//! baseline over a grid of classic settings.

use std::fmt;

use crate::classic::{synthesize_classic, ClassicConfig, Freedom};
use crate::dataset::{BooleanLearningSet, SplitStrategy};
use crate::error::Result;
use crate::synthesis::{synthesize, SynthesisConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub success: bool,
    pub depth: usize,
    pub mu: usize,
    pub feature_count: usize,
    /// Member signatures joined by `;`.
    pub selection: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicRun {
    pub config: ClassicConfig,
    pub cr_trace: Vec<f64>,
    pub summary: RunSummary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub exterior: RunSummary,
    /// Exterior result recomputed once per grid point.
    pub exterior_runs: Vec<RunSummary>,
    pub classic: Vec<ClassicRun>,
}

impl CompareReport {
    pub fn exterior_fixed(&self) -> bool {
        self.exterior_runs.iter().all(|r| *r == self.exterior)
    }

    pub fn classic_distinct(&self) -> usize {
        let mut sel: Vec<&str> = self.classic.iter().map(|r| r.summary.selection.as_str()).collect();
        sel.sort_unstable();
        sel.dedup();
        sel.len()
    }

    pub fn classic_varies(&self) -> bool {
        self.classic_distinct() > 1
    }
}

/// alpha/beta in {(1,1), (1,0), (0,1)}, delta in {0, n}, F in {0.4 L1, L1},
/// split in {interleave, random seed 1, random seed 2}.
pub fn default_grid(n: usize) -> Vec<ClassicConfig> {
    let mut grid = Vec::new();
    for (alpha, beta) in [(1.0, 1.0), (1.0, 0.0), (0.0, 1.0)] {
        for delta in [0.0, n as f64] {
            for freedom in [Freedom::Fraction(0.4), Freedom::Fraction(1.0)] {
                for split in
                    [SplitStrategy::Interleave, SplitStrategy::Random { seed: 1 }, SplitStrategy::Random { seed: 2 }]
                {
                    grid.push(ClassicConfig { alpha, beta, delta, freedom, split, ..Default::default() });
                }
            }
        }
    }
    grid
}

fn exterior_summary(bset: &BooleanLearningSet, config: &SynthesisConfig) -> Result<RunSummary> {
    let res = synthesize(bset, config)?;
    let members = res.members();
    let features: std::collections::BTreeSet<usize> =
        members.iter().flat_map(|c| c.expr.features_used()).collect();
    Ok(RunSummary {
        success: res.is_success(),
        depth: res.depth(),
        mu: res.best_mu(),
        feature_count: features.len(),
        selection: members.iter().map(|c| c.signature()).collect::<Vec<_>>().join(";"),
    })
}

pub fn compare(
    bset: &BooleanLearningSet,
    synthesis: &SynthesisConfig,
    grid: &[ClassicConfig],
) -> Result<CompareReport> {
    let exterior = exterior_summary(bset, synthesis)?;
    let mut exterior_runs = Vec::with_capacity(grid.len());
    let mut classic = Vec::with_capacity(grid.len());
    for config in grid {
        exterior_runs.push(exterior_summary(bset, synthesis)?);
        let res = synthesize_classic(bset, config)?;
        classic.push(ClassicRun {
            config: *config,
            cr_trace: res.cr_trace.clone(),
            summary: RunSummary {
                success: res.model.mu == 0,
                depth: res.r_star,
                mu: res.model.mu,
                feature_count: res.model.expr.features_used().len(),
                selection: res.model.signature(),
            },
        });
    }
    Ok(CompareReport { exterior, exterior_runs, classic })
}

fn split_label(s: SplitStrategy) -> String {
    match s {
        SplitStrategy::Interleave => "interleave".into(),
        SplitStrategy::Random { seed } => format!("random:{seed}"),
    }
}

fn freedom_label(f: Freedom) -> String {
    match f {
        Freedom::Count(c) => c.to_string(),
        Freedom::Fraction(x) => format!("{x}L1"),
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.exterior;
        writeln!(f, "exterior: depth {} mu {} features {} members {}", e.depth, e.mu, e.feature_count,
            e.selection.split(';').count())?;
        writeln!(f, "  {}", e.selection)?;
        writeln!(f)?;
        writeln!(f, "{:>5} {:>5} {:>7} {:>7} {:>12} {:>5} {:>4} {:>4}  selection", "alpha", "beta", "delta", "F",
            "split", "depth", "mu", "feat")?;
        for run in &self.classic {
            let c = &run.config;
            let s = &run.summary;
            writeln!(f, "{:>5} {:>5} {:>7} {:>7} {:>12} {:>5} {:>4} {:>4}  {}", c.alpha, c.beta, c.delta,
                freedom_label(c.freedom), split_label(c.split), s.depth, s.mu, s.feature_count, s.selection)?;
        }
        writeln!(f)?;
        writeln!(f, "classic distinct selections: {} of {} runs (varies: {})", self.classic_distinct(),
            self.classic.len(), self.classic_varies())?;
        writeln!(f, "exterior identical across grid: {}", self.exterior_fixed())
    }
}
