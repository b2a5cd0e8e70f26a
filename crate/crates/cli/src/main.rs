//! Command-line surface for the PU(2,1) toolkit: classification,
//! decomposability, component charts, momentum-map skeletons and the
//! standard figures as CSV/SVG/JSON.

mod angles;

use angles::{parse_classes, parse_pair};
use chlab::complex3::CMat3;
use chlab::decompose::{chart_sample, component_chart, AlphaInterval, ComponentChart};
use chlab::figures::{deltoid_csv, deltoid_svg, skeleton_csv, skeleton_svg, trace_curves_csv,
    trace_curves_svg};
use chlab::hermitian::{HermitianForm, PointType};
use chlab::isometry::{angle_pair, goldman_discriminant, su21_lift, AnglePair, SU21Element};
use chlab::momentum::{fiber_probe, reducible_skeleton, FiberOutcome};
use chlab::reflections::MirrorKind;
use chlab::trace_geometry::tangents_through;
use chlab::triangle_groups::{
    exotic_chart_45_20, rfuchsian_chart, trace_curve, CurveLevel, PQRSignature,
};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C;
use serde_json::{json, Value};
use std::f64::consts::TAU;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "chlab",
    about = "Complex hyperbolic PU(2,1) toolkit: elliptic triples, reflection decompositions, momentum skeletons and triangle-group charts",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output file path; stdout when omitted. For `--format csv` together
    /// with svg-producing commands, `--out` is used as a prefix.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an isometry from an angle pair or a matrix.
    Classify {
        /// One angle pair "a1,a2" (builds the E(a1,a2) lift).
        #[arg(long)]
        classes: Option<String>,
        /// A 3x3 complex matrix as JSON [[[re,im];3];3], preserving the
        /// canonical form projectively.
        #[arg(long)]
        matrix: Option<String>,
        /// Read the matrix JSON from a file instead.
        #[arg(long)]
        matrix_file: Option<PathBuf>,
    },
    /// Test decomposability of a class triple and report the chart.
    Decompose {
        /// Three angle pairs "a1,a2;b1,b2;c1,c2".
        #[arg(long)]
        classes: String,
        /// Fixed-point type vector, e.g. "---" (spherical).
        #[arg(long, default_value = "---")]
        types: String,
        /// Write the matrices of a mid-chart sample to this file.
        #[arg(long)]
        matrices_out: Option<PathBuf>,
        /// Tolerance for the decomposability decision.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Chart of the relative component for a class triple.
    Chart {
        #[arg(long)]
        classes: String,
    },
    /// Build the representation at (theta, alpha) on the chart.
    Sample {
        #[arg(long)]
        classes: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        alpha: String,
    },
    /// Reducible skeleton of the momentum map for two classes.
    Skeleton {
        /// Two angle pairs "a1,a2;b1,b2".
        #[arg(long)]
        classes: String,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// The deltoid curve, optionally with the tangent lines through a point.
    Deltoid {
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Interior point "re,im" for the three tangent lines.
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Trace-curve families of a chart.
    TraceCurve {
        /// Three angle pairs; alternatively use --rfuchsian or --exotic.
        #[arg(long)]
        classes: Option<String>,
        /// R-Fuchsian chart for a signature "p,q,r".
        #[arg(long)]
        rfuchsian: Option<String>,
        /// The built-in exotic (4,5,20) chart.
        #[arg(long, default_value_t = false)]
        exotic: bool,
        /// Level curves of "theta" or "alpha".
        #[arg(long, default_value = "theta")]
        level_type: String,
        /// Number of level curves.
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Probe the momentum-map fiber above a product class.
    FiberProbe {
        /// Three angle pairs "c1;c2;c3" with c3 the product class.
        #[arg(long)]
        classes: String,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(msg) => {
            println!("{}", json!({ "error": msg }));
            std::process::exit(1);
        }
    }
}

fn complex_json(z: C) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CMat3) -> Value {
    let rows: Vec<Value> = (0..3)
        .map(|i| {
            let cols: Vec<Value> = (0..3).map(|j| complex_json(m.0[i][j])).collect();
            Value::Array(cols)
        })
        .collect();
    Value::Array(rows)
}

fn parse_matrix_json(v: &Value) -> Result<CMat3, String> {
    let rows = v.as_array().ok_or("matrix must be a JSON array")?;
    if rows.len() != 3 {
        return Err("matrix must have three rows".into());
    }
    let mut m = CMat3::zero();
    for (i, row) in rows.iter().enumerate() {
        let cols = row.as_array().ok_or("matrix rows must be arrays")?;
        if cols.len() != 3 {
            return Err("matrix rows must have three entries".into());
        }
        for (j, cell) in cols.iter().enumerate() {
            let pair = cell.as_array().ok_or("matrix entries must be [re, im]")?;
            if pair.len() != 2 {
                return Err("matrix entries must be [re, im]".into());
            }
            let re = pair[0].as_f64().ok_or("non-numeric matrix entry")?;
            let im = pair[1].as_f64().ok_or("non-numeric matrix entry")?;
            m.0[i][j] = C::new(re, im);
        }
    }
    Ok(m)
}

fn pair_json(p: &AnglePair) -> Value {
    json!([p.alpha1, p.alpha2])
}

fn chart_json(chart: &ComponentChart) -> Value {
    let domain: Vec<Value> = chart
        .theta_domain
        .iter()
        .map(|(lo, hi)| json!([lo, hi]))
        .collect();
    json!({
        "classes": chart.classes.iter().map(pair_json).collect::<Vec<_>>(),
        "beta": chart.beta,
        "gamma": chart.gamma,
        "lambdas": chart.lambdas.iter().map(|l| complex_json(*l)).collect::<Vec<_>>(),
        "theta_domain": domain,
    })
}

fn element_report(m: &SU21Element) -> Value {
    let class = m.classify();
    let mut report = json!({
        "class": class.name(),
        "trace": complex_json(m.trace()),
        "discriminant": goldman_discriminant(m.trace()),
    });
    if class.is_elliptic() {
        if let Ok(p) = angle_pair(m) {
            report["angle_pair"] = pair_json(&p);
        }
    }
    report
}

fn parse_types(s: &str) -> Result<[PointType; 3], String> {
    let chars: Vec<char> = s.chars().collect();
    if chars.len() != 3 {
        return Err("type vector must have three characters, e.g. '---'".into());
    }
    let mut out = [PointType::Negative; 3];
    for (k, c) in chars.iter().enumerate() {
        out[k] = match c {
            '-' => PointType::Negative,
            '+' => PointType::Positive,
            _ => return Err(format!("unknown type character '{c}'")),
        };
    }
    Ok(out)
}

fn emit(output: &OutputOpts, content: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => std::fs::write(path, content).map_err(|e| e.to_string()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    let form = HermitianForm::canonical();
    match cli.command {
        Command::Classify {
            classes,
            matrix,
            matrix_file,
        } => {
            let element = if let Some(c) = classes {
                let pair = parse_pair(&c)?;
                chlab::isometry::elliptic_from_angle_pair(&pair)
            } else {
                let text = if let Some(m) = matrix {
                    m
                } else if let Some(path) = matrix_file {
                    std::fs::read_to_string(path).map_err(|e| e.to_string())?
                } else {
                    return Err("classify needs --classes or --matrix/--matrix-file".into());
                };
                let v: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                let m = parse_matrix_json(&v)?;
                su21_lift(&m, &form).map_err(|e| e.to_string())?[0]
            };
            println!("{}", element_report(&element));
            Ok(())
        }
        Command::Decompose {
            classes,
            types,
            matrices_out,
            tol,
        } => {
            let cls = parse_classes(&classes)?;
            if cls.len() != 3 {
                return Err("decompose needs three classes".into());
            }
            let want = parse_types(&types)?;
            // class-level eigenvalue criterion
            let sum: f64 = cls.iter().map(|p| p.alpha1 + p.alpha2).sum();
            let cubed = C::from_polar(1.0, -sum);
            let decomposable = (cubed - C::new(1.0, 0.0)).norm() <= tol;
            let mut report = json!({
                "classes": cls.iter().map(pair_json).collect::<Vec<_>>(),
                "types": types,
                "lambda_product_cubed": complex_json(cubed),
                "decomposable": decomposable,
            });
            if decomposable && want == [PointType::Negative; 3] {
                match component_chart(&cls[0], &cls[1], &cls[2], want) {
                    Ok(chart) => {
                        report["chart"] = chart_json(&chart);
                        if let Some(path) = matrices_out {
                            if let Some((lo, hi)) = chart.theta_domain.first() {
                                let theta = 0.5 * (lo + hi);
                                if let Some(alpha) = chart.alpha_interval(theta).midpoint() {
                                    let s = chart_sample(&chart, theta, alpha)
                                        .map_err(|e| e.to_string())?;
                                    let doc = sample_json(&s);
                                    std::fs::write(
                                        path,
                                        serde_json::to_string_pretty(&doc)
                                            .map_err(|e| e.to_string())?,
                                    )
                                    .map_err(|e| e.to_string())?;
                                }
                            }
                        }
                    }
                    Err(e) => {
                        report["chart_error"] = json!(e.to_string());
                    }
                }
            }
            println!("{report}");
            Ok(())
        }
        Command::Chart { classes } => {
            let cls = parse_classes(&classes)?;
            if cls.len() != 3 {
                return Err("chart needs three classes".into());
            }
            let chart = component_chart(&cls[0], &cls[1], &cls[2], [PointType::Negative; 3])
                .map_err(|e| e.to_string())?;
            println!("{}", chart_json(&chart));
            Ok(())
        }
        Command::Sample {
            classes,
            theta,
            alpha,
        } => {
            let cls = parse_classes(&classes)?;
            if cls.len() != 3 {
                return Err("sample needs three classes".into());
            }
            let theta = angles::parse_angle(&theta)?;
            let alpha = angles::parse_angle(&alpha)?;
            let chart = component_chart(&cls[0], &cls[1], &cls[2], [PointType::Negative; 3])
                .map_err(|e| e.to_string())?;
            let s = chart_sample(&chart, theta, alpha).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&sample_json(&s)).map_err(|e| e.to_string())?
            );
            Ok(())
        }
        Command::Skeleton {
            classes,
            grid,
            output,
        } => {
            let cls = parse_classes(&classes)?;
            if cls.len() != 2 {
                return Err("skeleton needs two classes".into());
            }
            let sk = reducible_skeleton(&cls[0], &cls[1], grid).map_err(|e| e.to_string())?;
            match output.format {
                Format::Csv => emit(&output, &skeleton_csv(&sk)),
                Format::Svg => emit(&output, &skeleton_svg(&sk)),
                Format::Json => {
                    let doc = json!({
                        "vertices": sk.vertices.iter().map(|v| json!([v.x, v.y])).collect::<Vec<_>>(),
                        "spherical_pieces": sk.spherical.len(),
                        "hyperbolic_segments": sk.hyperbolic.len(),
                    });
                    emit(&output, &format!("{doc}\n"))
                }
            }
        }
        Command::Deltoid {
            grid,
            point,
            output,
        } => {
            let z = match point {
                Some(p) => {
                    let parts: Vec<&str> = p.split(',').collect();
                    if parts.len() != 2 {
                        return Err("point must be 're,im'".into());
                    }
                    Some(C::new(
                        parts[0].trim().parse().map_err(|_| "bad point")?,
                        parts[1].trim().parse().map_err(|_| "bad point")?,
                    ))
                }
                None => None,
            };
            match output.format {
                Format::Csv => emit(&output, &deltoid_csv(grid)),
                Format::Svg => emit(&output, &deltoid_svg(grid, z)),
                Format::Json => {
                    let mut doc = json!({ "grid": grid });
                    if let Some(z) = z {
                        let lines = tangents_through(z).map_err(|e| e.to_string())?;
                        doc["tangent_parameters"] =
                            json!(lines.iter().map(|l| l.foot_theta).collect::<Vec<_>>());
                    }
                    emit(&output, &format!("{doc}\n"))
                }
            }
        }
        Command::TraceCurve {
            classes,
            rfuchsian,
            exotic,
            level_type,
            levels,
            grid,
            output,
        } => {
            let (chart, id) = if exotic {
                (exotic_chart_45_20().map_err(|e| e.to_string())?, "exotic-4-5-20".to_string())
            } else if let Some(pqr) = rfuchsian {
                let parts: Vec<u32> = pqr
                    .split(',')
                    .map(|s| s.trim().parse::<u32>().map_err(|_| "bad p,q,r"))
                    .collect::<Result<_, _>>()?;
                if parts.len() != 3 {
                    return Err("rfuchsian needs 'p,q,r'".into());
                }
                let sig =
                    PQRSignature::new(parts[0], parts[1], parts[2]).map_err(|e| e.to_string())?;
                (
                    rfuchsian_chart(&sig).map_err(|e| e.to_string())?,
                    format!("rfuchsian-{}-{}-{}", parts[0], parts[1], parts[2]),
                )
            } else if let Some(c) = classes {
                let cls = parse_classes(&c)?;
                if cls.len() != 3 {
                    return Err("trace-curve needs three classes".into());
                }
                (
                    component_chart(&cls[0], &cls[1], &cls[2], [PointType::Negative; 3])
                        .map_err(|e| e.to_string())?,
                    "custom".to_string(),
                )
            } else {
                return Err("trace-curve needs --classes, --rfuchsian or --exotic".into());
            };

            // restrict levels to the realizable band where the angular
            // invariant has a nonempty interval
            let mut admissible = Vec::new();
            for (lo, hi) in &chart.theta_domain {
                for i in 0..512 {
                    let theta = lo + (hi - lo) * (i as f64 + 0.5) / 512.0;
                    if let AlphaInterval::Arc { lo: alo, hi: ahi } = chart.alpha_interval(theta) {
                        if ahi > alo + 1e-6 {
                            admissible.push(theta);
                        }
                    } else if chart.alpha_interval(theta) == AlphaInterval::Full {
                        admissible.push(theta);
                    }
                }
            }
            if admissible.is_empty() {
                return Err("chart has no realizable parameters".into());
            }
            let mut curves = Vec::new();
            let levels = levels.max(1);
            for k in 0..levels {
                match level_type.as_str() {
                    "theta" => {
                        let idx = ((admissible.len() - 1) as f64 * (k as f64 + 0.5)
                            / levels as f64) as usize;
                        let theta = admissible[idx.min(admissible.len() - 1)];
                        if let Ok(c) = trace_curve(&chart, CurveLevel::Theta(theta), grid) {
                            curves.push((format!("{id}_theta_{k}"), c));
                        }
                    }
                    "alpha" => {
                        // spread alpha levels over the widest interval
                        let widest = admissible
                            .iter()
                            .map(|t| chart.alpha_interval(*t))
                            .filter_map(|i| match i {
                                AlphaInterval::Arc { lo, hi } => Some((lo, hi)),
                                AlphaInterval::Full => Some((0.0, TAU)),
                                AlphaInterval::Empty => None,
                            })
                            .max_by(|a, b| (a.1 - a.0).partial_cmp(&(b.1 - b.0)).unwrap());
                        let (alo, ahi) = widest.ok_or("no admissible alpha interval")?;
                        let alpha = alo + (ahi - alo) * (k as f64 + 0.5) / levels as f64;
                        if let Ok(c) = trace_curve(&chart, CurveLevel::Alpha(alpha), grid) {
                            curves.push((format!("{id}_alpha_{k}"), c));
                        }
                    }
                    other => return Err(format!("unknown level type '{other}'")),
                }
            }
            match output.format {
                Format::Csv => emit(&output, &trace_curves_csv(&curves)),
                Format::Svg => emit(&output, &trace_curves_svg(&curves)),
                Format::Json => {
                    let doc = json!({
                        "chart": chart_json(&chart),
                        "curves": curves.len(),
                        "points": curves.iter().map(|(_, c)| c.len()).sum::<usize>(),
                    });
                    emit(&output, &format!("{doc}\n"))
                }
            }
        }
        Command::FiberProbe { classes, samples } => {
            let cls = parse_classes(&classes)?;
            if cls.len() != 3 {
                return Err("fiber-probe needs three classes".into());
            }
            let report =
                fiber_probe(&cls[2], &cls[0], &cls[1], samples).map_err(|e| e.to_string())?;
            let outcome = match report.outcome {
                FiberOutcome::Empty => json!({ "kind": "empty" }),
                FiberOutcome::Point => json!({ "kind": "point" }),
                FiberOutcome::DecomposableFamily {
                    samples_checked,
                    all_decomposable,
                    boundary_character_spread,
                } => json!({
                    "kind": "decomposable_family",
                    "samples_checked": samples_checked,
                    "all_decomposable": all_decomposable,
                    "boundary_character_spread": boundary_character_spread,
                }),
            };
            println!(
                "{}",
                json!({
                    "membership": format!("{:?}", report.membership),
                    "outcome": outcome,
                })
            );
            Ok(())
        }
    }
}

fn sample_json(s: &chlab::decompose::ChartSample) -> Value {
    let refl: Vec<Value> = s
        .decomposition
        .reflections
        .iter()
        .map(|r| {
            json!({
                "polar": (0..3).map(|k| complex_json(r.polar.0[k])).collect::<Vec<_>>(),
                "eta": complex_json(r.eta),
                "kind": match r.kind {
                    MirrorKind::MirrorLine => "line",
                    MirrorKind::MirrorPoint => "point",
                },
            })
        })
        .collect();
    json!({
        "theta": s.theta,
        "alpha": s.alpha,
        "a": matrix_json(s.triple.a.matrix()),
        "b": matrix_json(s.triple.b.matrix()),
        "c": matrix_json(s.triple.c.matrix()),
        "omega": complex_json(s.triple.omega),
        "reflections": refl,
    })
}
