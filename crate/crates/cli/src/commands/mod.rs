mod gqm;
mod linear;
mod phase_space;
mod structures;

use std::collections::BTreeMap;
use std::io::{self, Write};

use biham_core::wwm::MomentumSign;
use biham_core::Complex64;

use crate::error::CliResult;
use crate::report::Report;
use crate::spec::ProblemSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    AnalyzeLinear,
    Triple,
    Compat,
    Recursion,
    Gqm,
    Wigner,
    Moyal,
    Kms,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::AnalyzeLinear => "analyze-linear",
            Self::Triple => "triple",
            Self::Compat => "compat",
            Self::Recursion => "recursion",
            Self::Gqm => "gqm",
            Self::Wigner => "wigner",
            Self::Moyal => "moyal",
            Self::Kms => "kms",
        }
    }
}

pub const PLOT_SELECTORS: [&str; 3] = ["wigner", "spectrum", "involution-residuals"];

/// Columnar data for external plotting.
#[derive(Clone, Debug)]
pub struct PlotTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl PlotTable {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn spectrum(values: &[Complex64]) -> Self {
        let mut t = Self::new(vec!["re", "im"]);
        t.rows = values.iter().map(|z| vec![z.re, z.im]).collect();
        t
    }

    pub fn write_csv(&self, mut w: impl Write) -> io::Result<()> {
        writeln!(w, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Plain file written next to the report, e.g. a sampled grid.
pub struct Artifact {
    pub file_name: String,
    pub contents: Vec<u8>,
}

pub struct Outcome {
    pub report: Report,
    pub plots: BTreeMap<&'static str, PlotTable>,
    pub artifacts: Vec<Artifact>,
}

impl Outcome {
    pub fn new(report: Report) -> Self {
        Self { report, plots: BTreeMap::new(), artifacts: Vec::new() }
    }
}

pub struct Context<'a> {
    pub spec: &'a ProblemSpec,
    pub seed: u64,
    pub momentum_sign: Option<MomentumSign>,
}

impl Context<'_> {
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.spec.tolerances.get(name, default)
    }
}

pub fn run(command: Command, ctx: &Context) -> CliResult<Outcome> {
    match command {
        Command::AnalyzeLinear => linear::analyze(ctx),
        Command::Triple => structures::triple(ctx),
        Command::Compat => structures::compat(ctx),
        Command::Recursion => linear::recursion(ctx),
        Command::Gqm => gqm::run(ctx),
        Command::Wigner => phase_space::wigner(ctx),
        Command::Moyal => phase_space::moyal(ctx),
        Command::Kms => phase_space::kms(ctx),
    }
}
