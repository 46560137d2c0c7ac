use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use corrmix::report::{self, DEFAULT_PRECISION};
use corrmix::{
    apply_transform, emit_scatter, least_squares_fit, parse_csv, run_report, write_csv,
    BivariateSample, ColumnRef, CsvOptions, Error, Method, OutputFormat, PlotFormat, ReportRequest,
    TiePolicy, TransformSpec,
};

const EXIT_PARSE: u8 = 3;
const EXIT_DEGENERATE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "corrmix",
    version,
    about = "Pearson, Spearman and mixed rank/value correlation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlation coefficients with strength classes.
    Corr {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Least-squares line and coefficient of determination.
    Fit {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply transforms in order and write the resulting sample as CSV.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        /// Transform in text form: mean, min, max, point:K, median, std,
        /// shift:A,B or scale:OPa,OPb (OP is * or /). Repeatable.
        #[arg(long = "spec", required = true)]
        specs: Vec<TransformSpec>,
        /// Write here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Coefficients, fit, transform checks and an optional scatter plot.
    Report {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        methods: MethodArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Transform whose before/after Pearson value is reported. Repeatable.
        #[arg(long = "transform")]
        transforms: Vec<TransformSpec>,
        /// Skip the least-squares fit.
        #[arg(long)]
        no_fit: bool,
        #[arg(long, value_enum)]
        plot: Option<PlotKind>,
        /// Where to write the plot; defaults to appending it to the report output.
        #[arg(long)]
        plot_output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for standard input.
    #[arg(default_value = "-")]
    input: PathBuf,
    /// Field delimiter: a single character, or `tab`.
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    delimiter: u8,
    /// Treat the first row as a header.
    #[arg(long)]
    header: bool,
    /// x column: 1-based position or header name.
    #[arg(long, default_value = "1")]
    x_col: String,
    /// y column: 1-based position or header name.
    #[arg(long, default_value = "2")]
    y_col: String,
}

impl InputArgs {
    fn csv_options(&self) -> CsvOptions {
        CsvOptions {
            delimiter: self.delimiter,
            has_header: self.header,
            x_column: ColumnRef::parse_user(&self.x_col),
            y_column: ColumnRef::parse_user(&self.y_col),
        }
    }

    fn read_sample(&self) -> Result<BivariateSample, Error> {
        let options = self.csv_options();
        if self.input.as_os_str() == "-" {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            parse_csv(buf.as_slice(), &options)
        } else {
            parse_csv(File::open(&self.input)?, &options)
        }
    }
}

#[derive(Args)]
struct MethodArgs {
    /// Coefficients to compute. Repeatable or comma-separated.
    #[arg(
        long = "method",
        value_enum,
        value_delimiter = ',',
        default_value = "all"
    )]
    methods: Vec<MethodArg>,
    /// How tied values share ranks.
    #[arg(long, value_enum, default_value = "average")]
    ties: TiesArg,
}

impl MethodArgs {
    fn methods(&self) -> Vec<Method> {
        let mut out: Vec<Method> = Vec::new();
        for arg in &self.methods {
            let chosen: &[Method] = match arg {
                MethodArg::All => &Method::ALL,
                MethodArg::Pearson => &[Method::Pearson],
                MethodArg::Spearman => &[Method::Spearman],
                MethodArg::MixX => &[Method::MixRankX],
                MethodArg::MixY => &[Method::MixRankY],
            };
            for m in chosen {
                if !out.contains(m) {
                    out.push(*m);
                }
            }
        }
        out
    }

    fn tie_policy(&self) -> TiePolicy {
        match self.ties {
            TiesArg::Average => TiePolicy::Average,
            TiesArg::Min => TiePolicy::Min,
            TiesArg::Max => TiePolicy::Max,
            TiesArg::Dense => TiePolicy::Dense,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Decimal places in text output.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> OutputFormat {
        match self.format {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pearson,
    Spearman,
    MixX,
    MixY,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum TiesArg {
    Average,
    Min,
    Max,
    Dense,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    Svg,
    Ascii,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" | "\t" => Ok(b'\t'),
        _ if s.len() == 1 && s.is_ascii() => Ok(s.as_bytes()[0]),
        _ => Err(format!(
            "delimiter must be a single ASCII character or `tab`, got `{s}`"
        )),
    }
}

fn open_output(path: Option<&PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Non-zero exit for a failed run, with the error already reported.
struct Failure(u8);

fn exit_code(err: &Error) -> u8 {
    if err.is_degenerate_data() {
        EXIT_DEGENERATE
    } else {
        EXIT_PARSE
    }
}

fn report_error(err: &Error, json: bool) -> Failure {
    if json {
        let record = serde_json::json!({ "error_kind": err.kind(), "error": err.to_string() });
        eprintln!("{record}");
    } else {
        eprintln!("error[{}]: {}", err.kind(), err);
    }
    Failure(exit_code(err))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Corr {
            input,
            methods,
            output,
        } => {
            let json = output.format == FormatArg::Json;
            let sample = input.read_sample().map_err(|e| report_error(&e, json))?;
            let request = ReportRequest {
                methods: methods.methods(),
                tie_policy: methods.tie_policy(),
                transforms: Vec::new(),
                fit: false,
            };
            let doc = run_report(&sample, &request);
            // Per-method failures are part of the document, not the exit path.
            let degenerate = doc.errors().next().map(exit_code);
            let body = report::render(&doc, output.format(), output.precision)
                .map_err(|e| report_error(&e, json))?;
            write_all(output.output.as_ref(), body.as_bytes())
                .map_err(|e| report_error(&e, json))?;
            degenerate.map_or(Ok(()), |code| Err(Failure(code)))
        }
        Command::Fit { input, output } => {
            let json = output.format == FormatArg::Json;
            let sample = input.read_sample().map_err(|e| report_error(&e, json))?;
            let fit = least_squares_fit(&sample).map_err(|e| report_error(&e, json))?;
            let doc = corrmix::ReportDocument {
                summary: corrmix::summarize(&sample),
                tie_policy: TiePolicy::Average,
                coefficients: Vec::new(),
                regression: Some(Ok(fit.clone())),
                transforms: Vec::new(),
            };
            let body = report::render(&doc, output.format(), output.precision)
                .map_err(|e| report_error(&e, json))?;
            write_all(output.output.as_ref(), body.as_bytes())
                .map_err(|e| report_error(&e, json))?;
            // The line exists for constant y but r² does not.
            match corrmix::r_squared_of(&fit) {
                Ok(_) => Ok(()),
                Err(e) => Err(report_error(&e, json)),
            }
        }
        Command::Transform {
            input,
            specs,
            output,
        } => {
            let mut sample = input.read_sample().map_err(|e| report_error(&e, false))?;
            for spec in &specs {
                sample = apply_transform(&sample, spec).map_err(|e| report_error(&e, false))?;
            }
            let header = input.header.then_some(("x", "y"));
            let dest = open_output(output.as_ref()).map_err(|e| report_error(&e, false))?;
            write_csv(&sample, dest, input.delimiter, header).map_err(|e| report_error(&e, false))
        }
        Command::Report {
            input,
            methods,
            output,
            transforms,
            no_fit,
            plot,
            plot_output,
        } => {
            let json = output.format == FormatArg::Json;
            let sample = input.read_sample().map_err(|e| report_error(&e, json))?;
            let request = ReportRequest {
                methods: methods.methods(),
                tie_policy: methods.tie_policy(),
                transforms,
                fit: !no_fit,
            };
            let doc = run_report(&sample, &request);
            let degenerate = doc.errors().next().map(exit_code);
            let body = report::render(&doc, output.format(), output.precision)
                .map_err(|e| report_error(&e, json))?;

            let fit = doc.regression.as_ref().and_then(|r| r.as_ref().ok());
            let plot_bytes = match plot {
                Some(kind) => {
                    let format = match kind {
                        PlotKind::Svg => PlotFormat::Svg,
                        PlotKind::Ascii => PlotFormat::ascii(),
                    };
                    let mut buf = Vec::new();
                    emit_scatter(&sample, fit, format, &mut buf)
                        .map_err(|e| report_error(&e, json))?;
                    Some(buf)
                }
                None => None,
            };

            let mut main = body.into_bytes();
            match (plot_bytes, plot_output.as_ref()) {
                (Some(bytes), Some(path)) => {
                    write_all(Some(path), &bytes).map_err(|e| report_error(&e, json))?
                }
                (Some(bytes), None) => main.extend(bytes),
                (None, _) => {}
            }
            write_all(output.output.as_ref(), &main).map_err(|e| report_error(&e, json))?;
            degenerate.map_or(Ok(()), |code| Err(Failure(code)))
        }
    }
}

fn write_all(path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Error> {
    let mut dest = open_output(path)?;
    dest.write_all(bytes)?;
    dest.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code)) => ExitCode::from(code),
    }
}
