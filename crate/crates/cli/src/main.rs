use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quotkit::report::Report;
use quotkit::scenario::{
    ChartParams, ChernParams, GammaParams, GraphParams, IneqParams, Preset, Scenario, ScenarioError,
    ScenarioFile, SuiteParams, TransitionParams,
};
use quotkit_core::transform::Strategy;

#[derive(Parser)]
#[command(name = "quotkit", version, about = "Exact checks for rank-two quotients on R_d and their surface transforms")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = Order::Lex)]
    strategy: Order,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    MaxMult,
}

impl From<Order> for Strategy {
    fn from(o: Order) -> Self {
        match o {
            Order::Lex => Strategy::Lex,
            Order::MaxMult => Strategy::MaxMult,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PresetArg {
    #[value(name = "2C", alias = "2c")]
    TwoC,
    #[value(name = "picard-1")]
    PicardOne,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, alias = "preset", value_enum)]
    scenario: Option<PresetArg>,
    /// C² = −d for the 2C preset.
    #[arg(long)]
    d: Option<i64>,
    /// C² for the Picard-1 preset.
    #[arg(long)]
    csq: Option<i64>,
    /// Resolution graph as JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Number of random consistent graphs.
    #[arg(long)]
    random: Option<usize>,
}

impl From<GraphArgs> for GraphParams {
    fn from(a: GraphArgs) -> Self {
        GraphParams {
            scenario: a.scenario.map(|p| match p {
                PresetArg::TwoC => Preset::TwoC,
                PresetArg::PicardOne => Preset::PicardOne,
            }),
            d: a.d,
            csq: a.csq,
            graph: a.graph,
            inline: None,
            random: a.random,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Kernel dimensions and t-limits on the Γ locus.
    Gamma {
        #[arg(long, default_value_t = 1)]
        d_min: usize,
        #[arg(long, default_value_t = 5)]
        d_max: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Grassmannian chart at the base Γ point.
    Chart {
        #[arg(long)]
        d: usize,
    },
    /// Chart changes between the pair charts.
    Transition {
        #[arg(long, default_value_t = 5)]
        d_max: usize,
    },
    /// Forward elementary transformations on a resolution graph.
    Forward(GraphArgs),
    /// Backward transformations and fibre invariants.
    Backward(GraphArgs),
    /// Choice ledger and fibre dimension.
    ChoiceDim(GraphArgs),
    /// Chern character identities.
    Chern {
        #[arg(long, default_value_t = 10)]
        d_max: usize,
        #[arg(long, default_value_t = 200)]
        chains: usize,
    },
    /// The rank inequality over a grid of sequences.
    Ineq {
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 5)]
        r_max: usize,
    },
    /// Every battery.
    Suite {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        d: Vec<usize>,
    },
    /// Run a scenario document.
    Run { scenario: PathBuf },
}

fn run(cli: Cli) -> Result<Report, ScenarioError> {
    let strategy = cli.strategy.into();
    let sc = match cli.command {
        Command::Gamma { d_min, d_max, samples } => Scenario::Gamma(GammaParams {
            d_min,
            d_max,
            samples,
            ..Default::default()
        }),
        Command::Chart { d } => Scenario::Chart(ChartParams { d }),
        Command::Transition { d_max } => Scenario::Transition(TransitionParams { d_max }),
        Command::Forward(g) => Scenario::Forward(g.into()),
        Command::Backward(g) => Scenario::Backward(g.into()),
        Command::ChoiceDim(g) => Scenario::ChoiceDim(g.into()),
        Command::Chern { d_max, chains } => Scenario::Chern(ChernParams { d_max, chains }),
        Command::Ineq { m_max, r_max } => Scenario::Ineq(IneqParams { m_max, r_max }),
        Command::Suite { d } => Scenario::Suite(SuiteParams { d_range: d }),
        Command::Run { scenario } => {
            return quotkit::run_file(&ScenarioFile::load(&scenario)?, cli.seed, strategy);
        }
    };
    quotkit::run_scenario(&sc, cli.seed, strategy)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, format) = (cli.out.clone(), cli.format);
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
