//! `hybridseg` command-line tool.
//!
//! Exit codes: 0 on success, 2 for invalid arguments, 3 for I/O or codec
//! failures.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use hybridseg::ppm_io::PGM_MAGIC;
use hybridseg::{
    median_filter_fast, median_filter_naive, read_pgm, read_ppm, segment_with_timings,
    split_channels, sweep, write_ppm, ColorImage, GrayChannel, SegmentationConfig, ValueAssignment,
    WindowSize,
};

use report::{mode_name, BenchReport, BenchRow, Panel, RunReport, SweepReport, Thresholds};

/// Panel file names, in sweep order: Otsu only, then k = 3, 5, …, 15.
pub const PANEL_FILES: [&str; 8] = [
    "a_otsu.ppm",
    "b_k3.ppm",
    "c_k5.ppm",
    "d_k7.ppm",
    "e_k9.ppm",
    "f_k11.ppm",
    "g_k13.ppm",
    "h_k15.ppm",
];

#[derive(Debug, Parser)]
#[command(
    name = "hybridseg",
    version,
    about = "Per-channel Otsu thresholding with median smoothing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Classes become 0 and 255
    Binary,
    /// Classes become their rounded mean level
    Means,
}

impl From<Mode> for ValueAssignment {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Binary => ValueAssignment::Binary,
            Mode::Means => ValueAssignment::ClassMeans,
        }
    }
}

fn parse_window(s: &str) -> Result<WindowSize, String> {
    let k: usize = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    WindowSize::new(k).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Segment one image
    Segment {
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Median window side (odd, 3..=255)
        #[arg(long, value_name = "K", default_value = "15", value_parser = parse_window)]
        window: WindowSize,
        #[arg(long, value_enum, default_value_t = Mode::Means)]
        mode: Mode,
        /// Stop after thresholding and merging
        #[arg(long)]
        no_median: bool,
        /// Write a JSON run report
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Write the Otsu-only panel and one panel per window 3, 5, ..., 15
    Sweep {
        input: PathBuf,
        #[arg(short = 'd', long = "dir")]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Means)]
        mode: Mode,
    },
    /// Time the naive and fast median filters for every sweep window
    Bench {
        /// P6 (red plane is used) or P5 input
        input: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        repeat: u32,
    },
}

fn read_image(path: &Path) -> Result<ColorImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    read_ppm(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn run_segment(
    input: &Path,
    output: &Path,
    config: SegmentationConfig,
    report: Option<&Path>,
) -> Result<()> {
    let img = read_image(input)?;
    let (out, timings) = segment_with_timings(&img, &config);
    write_file(output, &write_ppm(&out.image))?;
    if let Some(path) = report {
        let r = RunReport {
            input: input.display().to_string(),
            output: output.display().to_string(),
            width: img.width(),
            height: img.height(),
            thresholds: Thresholds::of(&out),
            mode: mode_name(config.mode),
            window: config.window.k(),
            median: config.apply_median,
            distinct_colors: out.image.distinct_colors(),
            timings_ms: timings.into(),
        };
        write_file(path, report::to_json(&r).as_bytes())?;
    }
    Ok(())
}

fn run_sweep(input: &Path, dir: &Path, mode: ValueAssignment) -> Result<()> {
    let img = read_image(input)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let outs = sweep(&img, mode);
    let mut panels = Vec::with_capacity(outs.len());
    for (out, file) in outs.iter().zip(PANEL_FILES) {
        write_file(&dir.join(file), &write_ppm(&out.image))?;
        panels.push(Panel {
            file,
            window: out.config.apply_median.then(|| out.config.window.k()),
            distinct_colors: out.image.distinct_colors(),
        });
    }
    let r = SweepReport {
        input: input.display().to_string(),
        width: img.width(),
        height: img.height(),
        mode: mode_name(mode),
        thresholds: Thresholds::of(&outs[0]),
        panels,
    };
    write_file(&dir.join("report.json"), report::to_json(&r).as_bytes())
}

fn time(f: impl FnOnce()) -> Duration {
    let start = Instant::now();
    f();
    start.elapsed()
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

fn run_bench(input: &Path, repeat: u32) -> Result<()> {
    let bytes = fs::read(input).with_context(|| format!("reading {}", input.display()))?;
    let (channel, name): (GrayChannel, _) = if bytes.starts_with(PGM_MAGIC) {
        (
            read_pgm(&bytes).with_context(|| format!("decoding {}", input.display()))?,
            "gray",
        )
    } else {
        let img = read_ppm(&bytes).with_context(|| format!("decoding {}", input.display()))?;
        (split_channels(&img).0, "r")
    };

    // One worker, so the columns compare algorithmic cost rather than core count.
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build()?;
    let windows: Vec<WindowSize> = WindowSize::sweep().collect();
    let mut naive = vec![Vec::new(); windows.len()];
    let mut fast = vec![Vec::new(); windows.len()];
    // Rounds sweep every window in turn so load drift hits all rows alike.
    pool.install(|| {
        for _ in 0..repeat {
            for (i, &w) in windows.iter().enumerate() {
                naive[i].push(time(|| {
                    std::hint::black_box(median_filter_naive(&channel, w));
                }));
                fast[i].push(time(|| {
                    std::hint::black_box(median_filter_fast(&channel, w));
                }));
            }
        }
    });
    let rows = windows
        .iter()
        .zip(naive.into_iter().zip(fast))
        .map(|(w, (n, f))| BenchRow {
            k: w.k(),
            naive_ms: median(n).as_secs_f64() * 1e3,
            fast_ms: median(f).as_secs_f64() * 1e3,
        })
        .collect();
    let r = BenchReport {
        input: input.display().to_string(),
        width: channel.width(),
        height: channel.height(),
        channel: name,
        repeat: repeat as usize,
        threads: 1,
        rows,
    };
    print!("{}", report::to_json(&r));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap exits 0 for --help/--version and 2 for usage errors
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Segment {
            input,
            output,
            window,
            mode,
            no_median,
            report,
        } => {
            let config = SegmentationConfig {
                window,
                mode: mode.into(),
                apply_median: !no_median,
            };
            run_segment(&input, &output, config, report.as_deref())
        }
        Command::Sweep { input, dir, mode } => run_sweep(&input, &dir, mode.into()),
        Command::Bench { input, repeat } => run_bench(&input, repeat),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
