use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use contourgraph::curvature::{default_sigma, dominant_peaks};
use contourgraph::shapes::io::{format_contour_csv, read_netpbm};
use contourgraph::shapes::synthetic::{generate_dataset, SyntheticSpec};
use contourgraph::{
    build_weighted, curvature_signal, generate_shape, interpolate, measure_all, normalize_signal, perturb, sweep,
    threshold, trace_boundary, ClassifierSpec, Contour, CvConfig, DescriptorKind, LabeledDataset, MetricOptions, Mode,
    Perturbation, ShapeSpec, SweepPlan, Unreachable,
};
use contourgraph_cli::config::{ExperimentConfig, Thresholds};
use contourgraph_cli::dataset::{load_dataset, load_shape, save_dataset};
use contourgraph_cli::experiment::{format_study, format_table, perturb_dataset, extract_dataset, Condition, ReportFile};
use contourgraph_cli::features::{read_features, write_features};
use contourgraph_cli::output::{invocation_hash, provenance, write_atomic};
use contourgraph_cli::{run_experiment, single_threshold_study, sweep_study};

#[derive(Parser)]
#[command(name = "contourgraph", version, about = "Shape descriptors from thresholded contour networks")]
struct Cli {
    /// Worker threads for shape-level parallelism (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a single shape or a synthetic labelled dataset.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Trace the boundary of a PBM/PGM silhouette.
    Trace {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a rotation, scaling, noise or degradation to a contour or dataset.
    Perturb(PerturbArgs),
    /// Blend two contours.
    Interpolate {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        /// Blend weight of `--to`, in [0, 1].
        #[arg(long, conflicts_with = "steps")]
        alpha: Option<f64>,
        /// Write steps + 1 evenly spaced blends into the `--out` directory.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract descriptors for every shape of a dataset directory.
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "phi")]
        descriptor: DescriptorKind,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        skip_bad: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Network measurements of one contour: per-node profile at a threshold,
    /// or graph-level values along a sweep.
    Measure {
        #[arg(long)]
        input: PathBuf,
        /// Single threshold; writes `node,k,cc,b,k2,k3`.
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Distance charged for unreachable pairs (default: node count).
        #[arg(long)]
        unreachable: Option<u64>,
        /// Also dump the thresholded graph as an `i j` edge list.
        #[arg(long, requires = "threshold")]
        edges: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Curvature signal of one contour as `index,curvature`.
    Curvature {
        #[arg(long)]
        input: PathBuf,
        /// Gaussian width in frequency bins (default: N / 64).
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validate a classifier on a feature file.
    Classify {
        #[arg(long)]
        features: PathBuf,
        #[command(flatten)]
        cv: CvArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Accuracy of phi and varphi as the number of thresholds varies.
    SweepStudy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_mode, default_value = "lt")]
        mode: Mode,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,7,13,20")]
        sizes: Vec<usize>,
        #[command(flatten)]
        cv: CvArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Accuracy of the measurements taken at each threshold alone.
    SingleThresholdStudy {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        cv: CvArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a full experiment from a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// One circle, regular polygon or star.
    Shape {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 4)]
        sides: usize,
        #[arg(long, default_value_t = 0.5)]
        inner_ratio: f64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 50.0)]
        radius: f64,
        #[arg(long, default_value_t = 0.0)]
        rotation: f64,
        #[arg(long)]
        label: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// The ten-class jittered geometric dataset, written as `<out>/<class>/<id>.csv`.
    Dataset {
        #[arg(long, default_value_t = 25)]
        per_class: usize,
        #[arg(long, default_value_t = 120)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        noise: u32,
        #[arg(long, env = "CONTOURGRAPH_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Circle,
    Polygon,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbKind {
    Rotate,
    Scale,
    Noise,
    DegradeContinuous,
    DegradeRandom,
}

#[derive(Args)]
struct PerturbArgs {
    /// A contour file or a dataset directory.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: PerturbKind,
    /// Angle in degrees, scale factor, noise level in pixels, or removed
    /// fraction.
    #[arg(long)]
    value: f64,
    #[arg(long, env = "CONTOURGRAPH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_parser = parse_mode, default_value = "lt")]
    mode: Mode,
    /// Explicit comma-separated thresholds.
    #[arg(long, value_delimiter = ',', conflicts_with = "n_thresholds")]
    thresholds: Option<Vec<f64>>,
    /// Number of equally spaced thresholds.
    #[arg(long, default_value_t = 13)]
    n_thresholds: usize,
}

impl SweepArgs {
    fn thresholds(&self) -> Thresholds {
        match &self.thresholds {
            Some(ts) => Thresholds::List(ts.clone()),
            None => Thresholds::Count(self.n_thresholds),
        }
    }

    fn plan(&self) -> Result<SweepPlan> {
        self.thresholds().plan(self.mode)
    }
}

#[derive(Args)]
struct CvArgs {
    /// `knn:K` or `nb`.
    #[arg(long, default_value = "knn:1")]
    classifier: ClassifierSpec,
    #[arg(long, default_value_t = 10)]
    folds: usize,
    #[arg(long, default_value_t = 100)]
    repeats: usize,
    #[arg(long, env = "CONTOURGRAPH_SEED", default_value_t = 0)]
    seed: u64,
    /// Use raw features instead of min–max scaling fitted on training folds.
    #[arg(long)]
    no_scale: bool,
}

impl CvArgs {
    fn config(&self) -> CvConfig {
        CvConfig {
            folds: self.folds,
            repeats: self.repeats,
            seed: self.seed,
            scale: !self.no_scale,
        }
    }
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn read_shape(path: &Path) -> Result<Contour> {
    load_shape(path).with_context(|| format!("reading {}", path.display()))
}

fn write_contour(path: &Path, c: &Contour, header: &str) -> Result<()> {
    write_atomic(path, format!("{header}{}", format_contour_csv(c)).as_bytes())
}

fn perturbation(kind: PerturbKind, value: f64, seed: u64) -> Result<Perturbation> {
    Ok(match kind {
        PerturbKind::Rotate => Perturbation::Rotate { angle_deg: value },
        PerturbKind::Scale => Perturbation::Scale { factor: value },
        PerturbKind::Noise => {
            if value < 0.0 || value.fract() != 0.0 {
                bail!("noise level must be a non-negative integer, got {value}");
            }
            Perturbation::Noise { level: value as u32, seed }
        }
        PerturbKind::DegradeContinuous => Perturbation::DegradeContinuous { fraction: value, seed },
        PerturbKind::DegradeRandom => Perturbation::DegradeRandom { fraction: value, seed },
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    pool.build().context("starting worker pool")?.install(|| execute(cli.cmd, &invocation_hash(&args)))
}

fn execute(cmd: Command, hash: &str) -> Result<()> {
    let opts = MetricOptions::default();
    match cmd {
        Command::Generate(GenerateCmd::Shape { kind, sides, inner_ratio, samples, radius, rotation, label, out }) => {
            let spec = match kind {
                KindArg::Circle => ShapeSpec::circle(samples, radius),
                KindArg::Polygon => ShapeSpec::polygon(sides, samples, radius),
                KindArg::Star => ShapeSpec::star(sides, inner_ratio, samples, radius),
            }
            .rotated(rotation);
            let mut c = generate_shape(&spec)?;
            c.set_label(label);
            write_contour(&out, &c, &provenance(hash, 0))?;
        }
        Command::Generate(GenerateCmd::Dataset { per_class, points, noise, seed, out }) => {
            let mut spec = SyntheticSpec::geometric_ten(per_class, points, seed);
            spec.noise_level = noise;
            let cs = generate_dataset(&spec)?;
            save_dataset(&out, &cs, &provenance(hash, seed))?;
            eprintln!("wrote {} shapes to {}", cs.len(), out.display());
        }
        Command::Trace { input, label, out } => {
            let mut c = trace_boundary(&read_netpbm(&input)?)?;
            c.set_label(label);
            write_contour(&out, &c, &provenance(hash, 0))?;
        }
        Command::Perturb(PerturbArgs { input, kind, value, seed, out }) => {
            let p = perturbation(kind, value, seed)?;
            if input.is_dir() {
                let cs = load_dataset(&input, false)?;
                let shapes = perturb_dataset(&cs, &p)?;
                save_dataset(&out, &shapes, &provenance(hash, seed))?;
            } else {
                let c = perturb(&read_shape(&input)?, &p)?;
                write_contour(&out, &c, &provenance(hash, seed))?;
            }
        }
        Command::Interpolate { from, to, alpha, steps, out } => {
            let (a, b) = (read_shape(&from)?, read_shape(&to)?);
            match (alpha, steps) {
                (Some(alpha), _) => write_contour(&out, &interpolate(&a, &b, alpha)?, &provenance(hash, 0))?,
                (None, Some(k)) if k > 0 => {
                    for s in 0..=k {
                        let c = interpolate(&a, &b, s as f64 / k as f64)?;
                        write_contour(&out.join(format!("step_{s:03}.csv")), &c, &provenance(hash, 0))?;
                    }
                }
                _ => bail!("give --alpha or a positive --steps"),
            }
        }
        Command::Extract { input, descriptor, sweep, skip_bad, out } => {
            if descriptor == DescriptorKind::Single {
                bail!("use single-threshold-study for single-threshold features");
            }
            let cs = load_dataset(&input, skip_bad)?;
            let vectors = extract_dataset(&cs, descriptor, &sweep.plan()?, &opts)?;
            write_features(&out, &vectors, hash, 0)?;
            eprintln!("wrote {} vectors of length {}", vectors.len(), vectors[0].values.len());
        }
        Command::Measure { input, threshold: t, sweep: sw, unreachable, edges, out } => {
            let opts = MetricOptions {
                unreachable: unreachable.map_or(Unreachable::NodeCount, Unreachable::Fixed),
            };
            let c = read_shape(&input)?;
            let w = build_weighted(&c)?;
            let mut text = provenance(hash, 0);
            match t {
                Some(t) => {
                    let g = threshold(&w, t, sw.mode)?;
                    text += &measure_all(&g, &opts).1.to_csv();
                    if let Some(e) = edges {
                        write_atomic(&e, g.to_edge_list().as_bytes())?;
                    }
                }
                None => {
                    text += "threshold,k,kmax,k2,k3,cc,l,rho,b\n";
                    for g in sweep(&w, &sw.plan()?) {
                        let m = contourgraph::measure_summary(&g, &opts);
                        text += &format!(
                            "{},{},{},{},{},{},{},{},{}\n",
                            m.threshold,
                            m.avg_degree,
                            m.max_degree,
                            m.hier_degree_2,
                            m.hier_degree_3,
                            m.avg_clustering,
                            m.avg_path_length,
                            m.assortativity,
                            m.avg_betweenness
                        );
                    }
                }
            }
            write_atomic(&out, text.as_bytes())?;
        }
        Command::Curvature { input, sigma, normalize, out } => {
            let c = read_shape(&input)?;
            let mut k = curvature_signal(&c, sigma.unwrap_or_else(|| default_sigma(c.len())))?;
            if normalize {
                k = normalize_signal(&k);
            }
            if k.degenerate {
                eprintln!("warning: contour is too small or flat for a stable curvature estimate");
            }
            eprintln!("dominant peaks at {:?}", dominant_peaks(&k.values));
            write_atomic(&out, (provenance(hash, 0) + &k.to_csv()).as_bytes())?;
        }
        Command::Classify { features, cv, out } => {
            let data = LabeledDataset::new(read_features(&features)?)?;
            let report = contourgraph::cross_validate(&data, &cv.classifier, &cv.config())?;
            let cond = Condition {
                name: features.file_stem().and_then(|s| s.to_str()).unwrap_or("features").to_string(),
                perturbation: None,
            };
            let file = ReportFile {
                config_hash: hash.to_string(),
                seed: cv.seed,
                condition: cond.clone(),
                report: report.clone(),
            };
            let table = format_table(&[(cond, report.clone())], hash, cv.seed);
            write_atomic(&out.join("report.json"), (serde_json::to_string_pretty(&file)? + "\n").as_bytes())?;
            write_atomic(&out.join("report.txt"), table.as_bytes())?;
            println!("{report}");
        }
        Command::SweepStudy { input, mode, sizes, cv, out } => {
            let cs = load_dataset(&input, false)?;
            let rows = sweep_study(&cs, mode, &sizes, &cv.classifier, &cv.config(), &opts)?;
            write_atomic(&out, format_study(&rows, hash, cv.seed).as_bytes())?;
        }
        Command::SingleThresholdStudy { input, sweep: sw, cv, out } => {
            let cs = load_dataset(&input, false)?;
            let plan = sw.plan()?;
            let rows = single_threshold_study(&cs, sw.mode, plan.thresholds(), &cv.classifier, &cv.config(), &opts)?;
            write_atomic(&out, format_study(&rows, hash, cv.seed).as_bytes())?;
        }
        Command::Run { config, out } => {
            let cfg = ExperimentConfig::read(&config)?;
            let outcome = run_experiment(&cfg, &out)?;
            for (c, r) in &outcome.reports {
                println!("{}\t{r}", c.name);
            }
        }
    }
    Ok(())
}
