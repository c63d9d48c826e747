use std::error::Error;
use std::io;
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error as ThisError;

use folkrec::config::{EngineConfig, ReprMode, VectorMode};
use folkrec::evaluation::{self, EvaluationError, EvaluationReport};
use folkrec::ingest::{self, IngestError, InputFormat};
use folkrec::model::{Folksonomy, UserId};
use folkrec::ranking::{self, RankingError, RecommendationList};
use folkrec::store::{self, CorpusStats, StoreError};

const EXIT_USAGE: i32 = 1;
const EXIT_IO: i32 = 2;
const EXIT_DATA: i32 = 3;

#[derive(Parser)]
#[command(
    name = "folkrec",
    version,
    about = "Personalized tag-based bookmark recommender"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a bookmark corpus and write a queryable index
    Ingest(IngestArgs),
    /// Rank resources a user has not bookmarked yet
    Recommend(RecommendArgs),
    /// Print corpus statistics from an index
    Stats(StatsArgs),
    /// Compute acceptance statistics from recorded judgments
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct IngestArgs {
    /// Corpus file (JSONL or TSV)
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: InputFormat,
    /// Where to write the index
    #[arg(long)]
    index: PathBuf,
    /// Write the ingest report JSON here instead of standard error
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    repr_mode: ReprMode,
    #[arg(long, value_enum, default_value_t)]
    vector_mode: VectorMode,
    #[arg(long, default_value_t = 0.7, value_parser = parse_threshold)]
    pref_threshold: f64,
    /// Snapshot the symmetric combination formula into the index
    #[arg(long)]
    symmetric: bool,
}

#[derive(Args)]
struct RecommendArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long)]
    user: String,
    #[arg(long, default_value_t = 5, value_parser = parse_top_k)]
    top_k: usize,
    /// Override the representativeness mode stored in the index
    #[arg(long, value_enum)]
    repr_mode: Option<ReprMode>,
    /// Override the vector mode stored in the index
    #[arg(long, value_enum)]
    vector_mode: Option<VectorMode>,
    /// Override the preference threshold stored in the index
    #[arg(long, value_parser = parse_threshold)]
    pref_threshold: Option<f64>,
    /// Override the combination formula stored in the index
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_parser = clap::value_parser!(bool))]
    symmetric: Option<bool>,
    /// Show the factor breakdown behind each score
    #[arg(long)]
    explain: bool,
    #[arg(long, value_enum, default_value_t)]
    output: OutputFormat,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    index: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    output: OutputFormat,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Acceptance file: one count per line, or participant,count
    input: PathBuf,
    /// Recommendations shown per participant
    #[arg(long, default_value_t = 5, value_parser = parse_set_size)]
    set_size: usize,
    #[arg(long, value_enum, default_value_t)]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum OutputFormat {
    #[default]
    Table,
    Tsv,
    Json,
}

fn parse_threshold(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("must be in (0, 1], got {value}"))
    }
}

fn parse_top_k(s: &str) -> Result<usize, String> {
    let value: usize = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if value >= 1 {
        Ok(value)
    } else {
        Err("must be at least 1".to_string())
    }
}

fn parse_set_size(s: &str) -> Result<usize, String> {
    let value: usize = s.parse().map_err(|_| format!("{s:?} is not an integer"))?;
    if value >= 1 {
        Ok(value)
    } else {
        Err("must be at least 1".to_string())
    }
}

#[derive(Debug, ThisError)]
enum CliError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
    #[error(transparent)]
    Ranking(#[from] RankingError),
    #[error("writing {path}")]
    WriteOutput {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Ingest(IngestError::Io { .. }) => EXIT_IO,
            CliError::Store(StoreError::Read { .. } | StoreError::Write { .. }) => EXIT_IO,
            CliError::Store(_) => EXIT_DATA,
            CliError::Evaluation(EvaluationError::Io { .. }) => EXIT_IO,
            CliError::Evaluation(_) => EXIT_DATA,
            CliError::Ranking(RankingError::ZeroK) => EXIT_USAGE,
            CliError::Ranking(_) => EXIT_DATA,
            CliError::WriteOutput { .. } => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
        }
    }
}

fn main() {
    // Die quietly when the output pipe closes early (folkrec stats | head),
    // like other line-oriented tools, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        let mut source = err.source();
        while let Some(cause) = source {
            eprintln!("  caused by: {cause}");
            source = cause.source();
        }
        std::process::exit(err.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Ingest(args) => cmd_ingest(args),
        Command::Recommend(args) => cmd_recommend(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    }
}

fn cmd_ingest(args: IngestArgs) -> Result<(), CliError> {
    let (assignments, report) = ingest::load_corpus(&args.input, args.format)?;
    let folksonomy = Folksonomy::build(assignments);
    let config = EngineConfig {
        repr_mode: args.repr_mode,
        vector_mode: args.vector_mode,
        pref_threshold: args.pref_threshold,
        symmetric: args.symmetric,
    };
    store::save_index(&args.index, &folksonomy, &config)?;

    let report_json =
        serde_json::to_string_pretty(&report).expect("ingest report serializes to JSON");
    match &args.report {
        Some(path) => {
            std::fs::write(path, report_json + "\n").map_err(|source| CliError::WriteOutput {
                path: path.clone(),
                source,
            })?;
        }
        None => eprintln!("{report_json}"),
    }
    if folksonomy.resource_count() == 0 {
        eprintln!("warning: resulting corpus is empty");
    }

    let stats = CorpusStats::of(&folksonomy);
    println!("records accepted     {}", report.records_accepted);
    println!("records skipped      {}", report.records_skipped);
    println!("assignments emitted  {}", report.assignments_emitted);
    println!("tags rejected        {}", report.tags_rejected);
    println!(
        "index written to {} ({} users, {} resources, {} tags, {} assignments)",
        args.index.display(),
        stats.users,
        stats.resources,
        stats.tags,
        stats.assignments
    );
    Ok(())
}

fn cmd_recommend(args: RecommendArgs) -> Result<(), CliError> {
    let (folksonomy, mut config) = store::load_index(&args.index)?;
    if let Some(mode) = args.repr_mode {
        config.repr_mode = mode;
    }
    if let Some(mode) = args.vector_mode {
        config.vector_mode = mode;
    }
    if let Some(threshold) = args.pref_threshold {
        config.pref_threshold = threshold;
    }
    if let Some(symmetric) = args.symmetric {
        config.symmetric = symmetric;
    }

    let user = UserId::new(&args.user)
        .map_err(|e| CliError::Usage(format!("invalid --user value: {e}")))?;
    if folksonomy.resources_of_user(&user).is_empty() {
        eprintln!("warning: user {user} has no bookmarks in the index");
    }
    let list = ranking::recommend(&user, &folksonomy, args.top_k, &config)?;

    match args.output {
        OutputFormat::Json => print_json(&list),
        OutputFormat::Table => {
            print_table(&recommend_rows(&list, args.explain, |s| format!("{s:.4}")))
        }
        OutputFormat::Tsv => print_tsv(&recommend_rows(&list, args.explain, |s| s.to_string())),
    }
    Ok(())
}

fn recommend_rows(
    list: &RecommendationList,
    explain: bool,
    fmt: impl Fn(f64) -> String,
) -> Vec<Vec<String>> {
    let mut header = vec!["rank", "resource", "score", "anchor"];
    if explain {
        header.extend(["ds_anchor", "ds_candidate", "cosine", "boost_tag", "boost"]);
    }
    let mut rows = vec![header.into_iter().map(String::from).collect::<Vec<_>>()];
    for (position, item) in list.items.iter().enumerate() {
        let mut row = vec![
            (position + 1).to_string(),
            item.candidate.to_string(),
            fmt(item.score),
            item.anchor.to_string(),
        ];
        if explain {
            let f = &item.factors;
            row.extend([
                fmt(f.ds_anchor),
                fmt(f.ds_candidate),
                fmt(f.cosine),
                f.boost_tag
                    .as_ref()
                    .map_or_else(|| "-".to_string(), ToString::to_string),
                fmt(f.boost),
            ]);
        }
        rows.push(row);
    }
    rows
}

#[derive(Serialize)]
struct StatsOutput {
    users: usize,
    resources: usize,
    tags: usize,
    assignments: usize,
    top_tags: Vec<TopTag>,
    popularity_histogram: Vec<PopularityBucket>,
}

#[derive(Serialize)]
struct TopTag {
    tag: String,
    popularity: f64,
}

#[derive(Serialize)]
struct PopularityBucket {
    range: String,
    count: usize,
}

fn cmd_stats(args: StatsArgs) -> Result<(), CliError> {
    let (folksonomy, _config) = store::load_index(&args.index)?;
    let stats = CorpusStats::of(&folksonomy);

    let mut by_popularity: Vec<(usize, &folkrec::model::Tag)> = folksonomy
        .vocabulary()
        .iter()
        .map(|t| (folksonomy.resources_of_tag(t).len(), t))
        .collect();
    by_popularity.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));

    let top_tags: Vec<TopTag> = by_popularity
        .iter()
        .take(10)
        .map(|&(count, tag)| TopTag {
            tag: tag.to_string(),
            popularity: count as f64 / stats.resources as f64,
        })
        .collect();

    let mut buckets = [0usize; 10];
    for &(count, _) in &by_popularity {
        // popularity lies in (0, 1]; integer arithmetic keeps boundary
        // values in their exact bucket
        let index = (10 * count).div_ceil(stats.resources) - 1;
        buckets[index] += 1;
    }
    let popularity_histogram: Vec<PopularityBucket> = buckets
        .iter()
        .enumerate()
        .map(|(i, &count)| PopularityBucket {
            range: format!("({:.1},{:.1}]", i as f64 / 10.0, (i + 1) as f64 / 10.0),
            count,
        })
        .collect();

    let output = StatsOutput {
        users: stats.users,
        resources: stats.resources,
        tags: stats.tags,
        assignments: stats.assignments,
        top_tags: if stats.resources == 0 {
            Vec::new()
        } else {
            top_tags
        },
        popularity_histogram: if stats.resources == 0 {
            Vec::new()
        } else {
            popularity_histogram
        },
    };

    match args.output {
        OutputFormat::Json => print_json(&output),
        OutputFormat::Table => {
            let rows = vec![
                vec!["users".to_string(), output.users.to_string()],
                vec!["resources".to_string(), output.resources.to_string()],
                vec!["tags".to_string(), output.tags.to_string()],
                vec!["assignments".to_string(), output.assignments.to_string()],
            ];
            print_table(&rows);
            if !output.top_tags.is_empty() {
                println!();
                println!("top tags");
                let rows: Vec<Vec<String>> = output
                    .top_tags
                    .iter()
                    .map(|t| vec![format!("  {}", t.tag), format!("{:.4}", t.popularity)])
                    .collect();
                print_table(&rows);
            }
            if !output.popularity_histogram.is_empty() {
                println!();
                println!("popularity histogram");
                let rows: Vec<Vec<String>> = output
                    .popularity_histogram
                    .iter()
                    .map(|b| vec![format!("  {}", b.range), b.count.to_string()])
                    .collect();
                print_table(&rows);
            }
        }
        OutputFormat::Tsv => {
            println!("users\t{}", output.users);
            println!("resources\t{}", output.resources);
            println!("tags\t{}", output.tags);
            println!("assignments\t{}", output.assignments);
            for t in &output.top_tags {
                println!("top_tag\t{}\t{}", t.tag, t.popularity);
            }
            for b in &output.popularity_histogram {
                println!("bucket\t{}\t{}", b.range, b.count);
            }
        }
    }
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<(), CliError> {
    let sample = evaluation::load_acceptances(&args.input, args.set_size)?;
    let report = evaluation::compute_report(&sample)?;

    match args.output {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Table => print_evaluation_table(&report),
        OutputFormat::Tsv => {
            println!("n\t{}", report.n);
            println!("set_size\t{}", report.set_size);
            println!("mean\t{}", report.mean);
            println!("sample_std_dev\t{}", report.sample_std_dev);
            println!("standard_error\t{}", report.standard_error);
            println!("acceptance_rate\t{}", report.acceptance_rate);
            println!(
                "above_threshold_fraction\t{}",
                report.above_threshold_fraction
            );
            println!("verdict\t{}", report.verdict);
            for (accepted, participants) in &report.histogram {
                println!("accepted:{accepted}\t{participants}");
            }
        }
    }
    Ok(())
}

fn print_evaluation_table(report: &EvaluationReport) {
    let rows = vec![
        vec!["participants".to_string(), report.n.to_string()],
        vec!["set size".to_string(), report.set_size.to_string()],
        vec!["mean".to_string(), format!("{:.4}", report.mean)],
        vec![
            "std dev".to_string(),
            format!("{:.4}", report.sample_std_dev),
        ],
        vec![
            "std error".to_string(),
            format!("{:.4}", report.standard_error),
        ],
        vec![
            "acceptance rate".to_string(),
            format!("{:.4}", report.acceptance_rate),
        ],
        vec![
            "above threshold".to_string(),
            format!("{:.4}", report.above_threshold_fraction),
        ],
        vec!["verdict".to_string(), report.verdict.to_string()],
    ];
    print_table(&rows);
    println!();
    let mut hist_rows = vec![vec!["accepted".to_string(), "participants".to_string()]];
    for (accepted, participants) in &report.histogram {
        hist_rows.push(vec![accepted.to_string(), participants.to_string()]);
    }
    print_table(&hist_rows);
}

fn print_json(value: &impl Serialize) {
    let json = serde_json::to_string_pretty(value).expect("output serializes to JSON");
    println!("{json}");
}

fn print_tsv(rows: &[Vec<String>]) {
    for row in rows {
        println!("{}", row.join("\t"));
    }
}

fn print_table(rows: &[Vec<String>]) {
    let columns = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut widths = vec![0usize; columns];
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    for row in rows {
        let line = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{cell:<width$}", width = widths[i]))
            .collect::<Vec<_>>()
            .join("  ");
        println!("{}", line.trim_end());
    }
}
