use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Serialize;

use rydhubo_core::estimate::{complete_hypergraph, histogram_of, ResourceEstimate};
use rydhubo_core::expand::ATOM_BOUND_CONSTANT;
use rydhubo_core::sim::{default_blockade, ground_state, sweep_graph, EigenOptions, Hamiltonian, RydbergParams, Schedule};
use rydhubo_core::verify::ground_manifold_of;
use rydhubo_core::{
    compile, drop_gadget_edge, emit_negative_hyperedge, emit_positive_hyperedge, estimate_atoms, expand_superatom, lower,
    parse_hubo, verify_equivalence, verify_expansion, CompileOptions, ExpansionSpec, GadgetKind, Mode, PairRule, Polynomial, Var,
    VerifyOptions,
};

use crate::dot::write_dot;
use crate::error::{CliError, ExitStatus};
use crate::graph_json::{mode_tag, read_graph_json, write_graph_json};
use crate::report::{sha256_hex, CertificateReport, CompileStats, GroundStateSummary, SimulationSummary};
use crate::schedule_json::read_schedule_json;

#[derive(Debug, Parser)]
#[command(name = "rydhubo", version, about = "Compile HUBO problems into Rydberg atom graphs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Addressing)]
    pub mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = PairRuleArg::LastTwo)]
    pub pair_rule: PairRuleArg,
    /// Seed for every randomized step (eigensolver start vectors).
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Print summaries as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Addressing,
    Duplication,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Addressing => Mode::LocalAddressing,
            ModeArg::Duplication => Mode::Duplication,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairRuleArg {
    LastTwo,
    FirstTwo,
}

impl From<PairRuleArg> for PairRule {
    fn from(r: PairRuleArg) -> PairRule {
        match r {
            PairRuleArg::LastTwo => PairRule::LastTwo,
            PairRuleArg::FirstTwo => PairRule::FirstTwo,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    DropEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pos,
    Neg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a HUBO file into an atom graph.
    Compile {
        input: PathBuf,
        #[arg(long = "out", value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[command(flatten)]
        common: CompileArgs,
    },
    /// Check that the compiled graph's ground manifold reproduces the HUBO minima.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
        /// Largest number of witnesses written to the certificate.
        #[arg(long, default_value_t = 16)]
        witness_limit: usize,
        #[command(flatten)]
        common: CompileArgs,
    },
    /// Sweep a compiled graph and report data-projection probabilities as CSV.
    Simulate {
        graph: PathBuf,
        /// Schedule JSON; the default sweep of length --duration when absent.
        schedule: Option<PathBuf>,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 10.0)]
        duration: f64,
        /// Blockade strength; defaults to 4 * max weight * |final detuning|.
        #[arg(long)]
        blockade: Option<f64>,
        #[arg(long, default_value_t = rydhubo_core::sim::DEFAULT_ATOM_CAP)]
        atom_cap: usize,
        /// Also compute the ground state at the final drive.
        #[arg(long)]
        ground_state: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replace one superatom by a bounded-clique fragment and certify it.
    Expand {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 1)]
        weight: i64,
        #[arg(long, default_value_t = 2)]
        max_clique: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Atom counts as CSV rows `N,K,mode,atoms`.
    Estimate {
        /// HUBO file to count; otherwise complete hypergraphs are used.
        input: Option<PathBuf>,
        /// Order of the complete hypergraph.
        #[arg(long, default_value_t = 3)]
        complete: usize,
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64])]
        n: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Largest superatom clique; larger gadgets are expanded.
    #[arg(long)]
    pub max_clique: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn read_hubo(path: &Path) -> Result<(String, Polynomial), CliError> {
    let text = read(path)?;
    let p = parse_hubo(&text).map_err(|source| CliError::Hubo {
        path: path.to_path_buf(),
        source,
    })?;
    if p.is_empty() && p.constant() == 0 {
        warn!("{}: polynomial has no terms", path.display());
    }
    Ok((text, p))
}

/// Artifact to `output` (or stdout); the summary goes to stdout when the artifact went to a file.
fn emit(output: Option<&Path>, artifact: &str, summary: &str) -> Result<(), CliError> {
    match output {
        Some(path) => {
            write_atomic(path, artifact.as_bytes()).map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
            print!("{summary}");
        }
        None => {
            print!("{artifact}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are always serializable");
    s.push('\n');
    s
}

impl Cli {
    fn compile_options(&self, common: &CompileArgs) -> CompileOptions {
        CompileOptions {
            pair_rule: self.pair_rule.into(),
            mode: self.mode.into(),
            expansion: common.max_clique.map(ExpansionSpec::new),
        }
    }

    pub fn run(&self) -> Result<ExitStatus, CliError> {
        let start = Instant::now();
        let status = match &self.command {
            Command::Compile { input, format, common } => self.compile(input, *format, common),
            Command::Verify {
                input,
                inject_fault,
                witness_limit,
                common,
            } => self.verify(input, *inject_fault, *witness_limit, common),
            Command::Simulate {
                graph,
                schedule,
                steps,
                duration,
                blockade,
                atom_cap,
                ground_state,
                output,
            } => self.simulate(
                graph,
                schedule.as_deref(),
                *steps,
                *duration,
                *blockade,
                *atom_cap,
                *ground_state,
                output.as_deref(),
            ),
            Command::Expand {
                kind,
                order,
                weight,
                max_clique,
                output,
            } => self.expand(*kind, *order, *weight, *max_clique, output.as_deref()),
            Command::Estimate {
                input,
                complete,
                n,
                output,
            } => self.estimate(input.as_deref(), *complete, n, output.as_deref()),
        };
        info!("finished in {:.3} s", start.elapsed().as_secs_f64());
        status
    }

    fn compile(&self, input: &Path, format: GraphFormat, common: &CompileArgs) -> Result<ExitStatus, CliError> {
        let (_, p) = read_hubo(input)?;
        let cg = compile(&p, &self.compile_options(common))?;
        let artifact = match format {
            GraphFormat::Json => write_graph_json(&cg),
            GraphFormat::Dot => write_dot(&cg),
        };
        let stats = CompileStats::new(&cg, self.pair_rule.into());
        let summary = if self.json { to_json(&stats) } else { stats.text(&cg.names) };
        emit(common.output.as_deref(), &artifact, &summary)?;
        Ok(ExitStatus::Success)
    }

    fn verify(
        &self,
        input: &Path,
        fault: Option<Fault>,
        witness_limit: usize,
        common: &CompileArgs,
    ) -> Result<ExitStatus, CliError> {
        let (text, p) = read_hubo(input)?;
        let mut cg = compile(&p, &self.compile_options(common))?;
        let injected = match fault {
            Some(Fault::DropEdge) => {
                let edge = drop_gadget_edge(&mut cg);
                if edge.is_none() {
                    warn!("no gadget clique edge to drop");
                }
                edge
            }
            None => None,
        };
        let cert = verify_equivalence(&p, &cg, &VerifyOptions::default())?;
        let report = CertificateReport::new(text.as_bytes(), &cg, self.pair_rule.into(), &cert, witness_limit, injected);
        let summary = if self.json { String::new() } else { report.text() };
        emit(common.output.as_deref(), &to_json(&report), &summary)?;
        Ok(if cert.equivalent {
            ExitStatus::Success
        } else {
            ExitStatus::NotEquivalent
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn simulate(
        &self,
        graph_path: &Path,
        schedule_path: Option<&Path>,
        steps: usize,
        duration: f64,
        blockade: Option<f64>,
        atom_cap: usize,
        with_ground_state: bool,
        output: Option<&Path>,
    ) -> Result<ExitStatus, CliError> {
        let graph_text = read(graph_path)?;
        let loaded = read_graph_json(&graph_text).map_err(|source| CliError::Format {
            path: graph_path.to_path_buf(),
            source,
        })?;
        let schedule = match schedule_path {
            Some(path) => read_schedule_json(&read(path)?).map_err(|source| CliError::Format {
                path: path.to_path_buf(),
                source,
            })?,
            None => Schedule::default_sweep(duration)?,
        };
        let final_delta = schedule.delta_at(schedule.duration);
        let u = blockade.unwrap_or_else(|| default_blockade(&loaded.graph, final_delta.max(1.0)));
        let params = RydbergParams::new(0.0, final_delta, u).with_atom_cap(atom_cap);
        // Check the cap before the exact solver runs on a large graph.
        Hamiltonian::new(&loaded.graph, &params)?;

        let report = ground_manifold_of(&loaded.graph, &loaded.var_to_atom, &VerifyOptions::default())?;
        let targets: BTreeSet<_> = report.data_projections;
        let result = sweep_graph(&loaded.graph, &loaded.var_to_atom, &params, &schedule, steps, &targets)?;

        let ground = if with_ground_state {
            info!("eigensolver seed {}", self.seed);
            let mut h = Hamiltonian::new(&loaded.graph, &params)?;
            h.set_drive(schedule.omega_at(schedule.duration), final_delta);
            let gs = ground_state(
                &h,
                &EigenOptions {
                    seed: self.seed,
                    ..Default::default()
                },
            )?;
            let dominant = gs.state.dominant();
            let bits: String = loaded
                .var_to_atom
                .iter()
                .map(|&a| if dominant >> a & 1 == 1 { '1' } else { '0' })
                .collect();
            Some(GroundStateSummary {
                seed: self.seed,
                energy: gs.energy,
                degeneracy: gs.degeneracy,
                gap: gs.gap,
                dominant_projection: bits,
            })
        } else {
            None
        };

        let mut csv = csv::Writer::from_writer(Vec::new());
        csv.write_record(["assignment", "probability"]).expect("in-memory write");
        for (a, p) in &result.projections {
            csv.write_record([a.to_string(), format!("{p:.12}")])
                .expect("in-memory write");
        }
        let artifact = String::from_utf8(csv.into_inner().expect("in-memory flush")).expect("CSV is UTF-8");

        let summary = SimulationSummary {
            graph_sha256: sha256_hex(graph_text.as_bytes()),
            atoms: loaded.graph.num_atoms(),
            steps,
            duration: schedule.duration,
            blockade: u,
            targets: targets.iter().map(ToString::to_string).collect(),
            success_probability: result.success_probability,
            norm_drift: result.norm_drift,
            ground_state: ground,
        };
        let text = if self.json { to_json(&summary) } else { summary.text() };
        emit(output, &artifact, &text)?;
        Ok(ExitStatus::Success)
    }

    fn expand(
        &self,
        kind: KindArg,
        order: usize,
        weight: i64,
        max_clique: usize,
        output: Option<&Path>,
    ) -> Result<ExitStatus, CliError> {
        if order < 2 {
            return Err(CliError::Usage(format!("hyperedge order must be at least 2, got {order}")));
        }
        let vars: Vec<Var> = (0..order as u32).map(Var).collect();
        let (gadget, _) = match kind {
            KindArg::Pos => emit_positive_hyperedge(&vars, weight),
            KindArg::Neg => emit_negative_hyperedge(&vars[..order - 2], (vars[order - 2], vars[order - 1]), weight),
        }
        .map_err(rydhubo_core::ExpandError::from)?;
        let e = expand_superatom(&gadget, &ExpansionSpec::new(max_clique))?;
        let check = verify_expansion(&gadget, &e.fragment)?;

        #[derive(Serialize)]
        struct ProfileRow {
            clamp: String,
            original: i64,
            expanded: i64,
        }
        #[derive(Serialize)]
        struct ExpandReport {
            kind: &'static str,
            order: usize,
            weight: i64,
            max_clique: usize,
            expanded: bool,
            equivalent: bool,
            constant: i64,
            aux_atoms: usize,
            atom_bound: usize,
            clique_size: usize,
            atoms: Vec<i64>,
            ports: Vec<usize>,
            edges: Vec<[usize; 2]>,
            profile: Vec<ProfileRow>,
        }
        let report = ExpandReport {
            kind: gadget.kind.label(),
            order,
            weight,
            max_clique,
            expanded: e.expanded,
            equivalent: check.equivalent,
            constant: e.constant,
            aux_atoms: e.aux_atoms(),
            atom_bound: ATOM_BOUND_CONSTANT * order * order,
            clique_size: e.fragment.graph.max_clique_size(),
            atoms: e.fragment.graph.weights(),
            ports: e.fragment.ports.clone(),
            edges: e.fragment.graph.edges().map(|(a, b)| [a, b]).collect(),
            profile: check
                .diff
                .iter()
                .map(|d| ProfileRow {
                    clamp: rydhubo_core::Assignment::from_mask(d.clamp, order).to_string(),
                    original: d.original,
                    expanded: d.expanded,
                })
                .collect(),
        };
        let summary = if self.json {
            String::new()
        } else {
            format!(
                "{}({order}) weight {weight}: {} aux atoms (bound {}), max clique {}, constant {}, certified on {} clamps\n",
                report.kind,
                report.aux_atoms,
                report.atom_bound,
                report.clique_size,
                report.constant,
                report.profile.len()
            )
        };
        emit(output, &to_json(&report), &summary)?;
        Ok(ExitStatus::Success)
    }

    fn estimate(
        &self,
        input: Option<&Path>,
        complete: usize,
        ns: &[usize],
        output: Option<&Path>,
    ) -> Result<ExitStatus, CliError> {
        let mut rows: Vec<(usize, usize, ResourceEstimate)> = Vec::new();
        match input {
            Some(path) => {
                let (_, p) = read_hubo(path)?;
                let hist = histogram_of(&lower(&p, self.pair_rule.into()));
                for mode in [Mode::LocalAddressing, Mode::Duplication] {
                    rows.push((p.num_vars(), p.max_order(), estimate_atoms(p.num_vars(), &hist, mode)));
                }
            }
            None => {
                if complete < 2 {
                    return Err(CliError::Usage(format!(
                        "complete hypergraph order must be at least 2, got {complete}"
                    )));
                }
                for &n in ns {
                    let hist = complete_hypergraph(n, complete, GadgetKind::PosHyperedge, 1);
                    for mode in [Mode::LocalAddressing, Mode::Duplication] {
                        rows.push((n, complete, estimate_atoms(n, &hist, mode)));
                    }
                }
            }
        }
        let mut csv = csv::Writer::from_writer(Vec::new());
        csv.write_record(["N", "K", "mode", "atoms"]).expect("in-memory write");
        for (n, k, e) in &rows {
            csv.write_record([
                n.to_string(),
                k.to_string(),
                mode_tag(e.mode).to_string(),
                e.total().to_string(),
            ])
            .expect("in-memory write");
        }
        let artifact = String::from_utf8(csv.into_inner().expect("in-memory flush")).expect("CSV is UTF-8");
        let class = rows.first().map_or_else(String::new, |(_, _, e)| e.asymptotic.clone());
        let summary = if self.json {
            to_json(&serde_json::json!({ "asymptotic": class }))
        } else {
            format!("growth {class}\n")
        };
        emit(output, &artifact, &summary)?;
        Ok(ExitStatus::Success)
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitStatus::Parse as i32 } else { 0 };
        }
    };
    match cli.run() {
        Ok(status) => status as i32,
        Err(e) => {
            eprintln!("error: {e}");
            e.status() as i32
        }
    }
}
