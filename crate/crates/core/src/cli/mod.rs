//! The `minkowski` command-line front end.
//!
//! Every subcommand renders into a `String` so the binary stays a thin wrapper
//! and the output can be tested directly through [`run`].

mod format;
mod svg;

use std::ffi::OsString;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ball::{classify, Ball, Exponent};
use crate::critical::{critical_determinant, davis_constant, kappa_minkowski, packing_lattice};
use crate::lattice::{density, is_admissible, is_packing, moduli_scan, Lattice2, VerifyReport};
use crate::moduli::{delta0, delta1};

pub use format::{fmt_sig, MACHINE_DIGITS};
use format::{columns, human, human_lattice, key_values, machine, Csv, JsonExponent, JsonLattice, Num};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "minkowski", version, about = "Critical lattices and optimal lattice packings of planar p-balls")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical determinant, critical lattice and optimal packing of D_p
    Critical {
        /// Ball exponent: a real p >= 1 or `inf`
        #[arg(long)]
        p: Exponent,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// The Davis constant p_0 where the two branches cross
    Davis {
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Constants on a uniform grid of exponents
    Table {
        #[arg(long, default_value_t = 1.0)]
        p_min: f64,
        #[arg(long, default_value_t = 6.0)]
        p_max: f64,
        #[arg(long, default_value_t = 51)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Check a user-supplied lattice for admissibility and packing
    Verify {
        #[arg(long)]
        p: Exponent,
        /// Basis as a1x,a1y,a2x,a2y
        #[arg(long, allow_hyphen_values = true)]
        basis: String,
        /// Verify the lattice scaled by 2
        #[arg(long)]
        doubled: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Sample the moduli family Δ(p, σ) over σ ∈ [1, σ_p]
    Scan {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

/// Parses `args` (including the program name) and renders the command output.
pub fn run<I, T>(args: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(e.to_string());
        }
        Err(e) => return Err(e.into()),
    };
    match cli.command {
        Command::Critical { p, format } => cmd_critical(p, format),
        Command::Davis { format } => cmd_davis(format),
        Command::Table { p_min, p_max, steps, format } => cmd_table(p_min, p_max, steps, format),
        Command::Verify { p, basis, doubled, format } => {
            cmd_verify(p, parse_basis(&basis)?, doubled, format)
        }
        Command::Scan { p, samples, format } => cmd_scan(p, samples, format),
    }
}

fn parse_basis(s: &str) -> anyhow::Result<[f64; 4]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        bail!("--basis expects four comma-separated numbers, got {s:?}");
    }
    let mut out = [0.0f64; 4];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part.parse().with_context(|| format!("invalid number {part:?} in --basis"))?;
        if !slot.is_finite() {
            bail!("--basis entries must be finite, got {part:?}");
        }
    }
    Ok(out)
}

fn no_svg(format: OutputFormat, command: &str) -> anyhow::Result<()> {
    if format == OutputFormat::Svg {
        bail!("svg output is only available for `table` and `scan`, not `{command}`");
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

#[derive(Serialize)]
struct CriticalJson {
    p: JsonExponent,
    class: &'static str,
    delta: Num,
    branch: &'static str,
    branches_agree: bool,
    kappa: Num,
    kappa_minkowski: Option<Num>,
    lattice: JsonLattice,
    packing_lattice: JsonLattice,
    packing_determinant: Num,
    density: Num,
}

/// `critical --p <p>`
pub fn cmd_critical(p: Exponent, format: OutputFormat) -> anyhow::Result<String> {
    no_svg(format, "critical")?;
    let r = critical_determinant(p)?;
    let class = classify(p, davis_constant());
    let packing = packing_lattice(p)?;
    let dens = density(&packing, p)?;
    let k_mink = match p {
        Exponent::Finite(v) => Some(kappa_minkowski(v)?),
        Exponent::Infinity => None,
    };
    Ok(match format {
        OutputFormat::Json => to_json(&CriticalJson {
            p: JsonExponent(p),
            class: class.name(),
            delta: Num(r.delta),
            branch: r.branch.name(),
            branches_agree: r.branches_agree,
            kappa: Num(r.kappa),
            kappa_minkowski: k_mink.map(Num),
            lattice: (&r.lattice).into(),
            packing_lattice: (&packing).into(),
            packing_determinant: Num(packing.determinant()),
            density: Num(dens),
        })?,
        OutputFormat::Csv => {
            let mut csv = Csv::new(&[
                "p", "class", "delta", "branch", "branches_agree", "kappa", "kappa_minkowski",
                "lattice_a_x", "lattice_a_y", "lattice_b_x", "lattice_b_y",
                "packing_a_x", "packing_a_y", "packing_b_x", "packing_b_y",
                "packing_determinant", "density",
            ]);
            let (la, lb, pa, pb) = (r.lattice.a(), r.lattice.b(), packing.a(), packing.b());
            csv.row([
                p.to_string(),
                class.to_string(),
                machine(r.delta),
                r.branch.to_string(),
                r.branches_agree.to_string(),
                machine(r.kappa),
                k_mink.map(machine).unwrap_or_default(),
                machine(la[0]), machine(la[1]), machine(lb[0]), machine(lb[1]),
                machine(pa[0]), machine(pa[1]), machine(pb[0]), machine(pb[1]),
                machine(packing.determinant()),
                machine(dens),
            ]);
            csv.finish()
        }
        _ => key_values(&[
            ("p", p.to_string()),
            ("class", class.to_string()),
            ("delta", human(r.delta)),
            ("branch", r.branch.to_string()),
            ("branches_agree", r.branches_agree.to_string()),
            ("kappa_optimal", human(r.kappa)),
            ("kappa_minkowski", k_mink.map(human).unwrap_or_else(|| "-".into())),
            ("critical_lattice", human_lattice(&r.lattice)),
            ("packing_lattice", human_lattice(&packing)),
            ("packing_determinant", human(packing.determinant())),
            ("density", human(dens)),
        ]),
    })
}

#[derive(Serialize)]
struct DavisJson {
    p0: Num,
    delta0: Num,
    delta1: Num,
    difference: Num,
}

/// `davis`
pub fn cmd_davis(format: OutputFormat) -> anyhow::Result<String> {
    no_svg(format, "davis")?;
    let p0 = davis_constant();
    let (d0, d1) = (delta0(p0)?, delta1(p0)?);
    Ok(match format {
        OutputFormat::Json => to_json(&DavisJson {
            p0: Num(p0),
            delta0: Num(d0),
            delta1: Num(d1),
            difference: Num(d0 - d1),
        })?,
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["p0", "delta0", "delta1", "difference"]);
            csv.row([machine(p0), machine(d0), machine(d1), machine(d0 - d1)]);
            csv.finish()
        }
        _ => key_values(&[
            ("p0", format!("{p0:.10}")),
            ("delta0(p0)", format!("{d0:.12}")),
            ("delta1(p0)", format!("{d1:.12}")),
            ("difference", format!("{:.3e}", d0 - d1)),
        ]),
    })
}

/// One row of `table`.
#[derive(Debug, Clone, Serialize)]
struct TableRow {
    p: Num,
    class: &'static str,
    delta: Num,
    branch: &'static str,
    kappa_optimal: Num,
    kappa_minkowski: Num,
    packing_determinant: Num,
    density: Num,
    #[serde(skip)]
    values: [f64; 6],
}

const TABLE_HEADER: [&str; 8] = [
    "p", "class", "delta", "branch", "kappa_optimal", "kappa_minkowski", "packing_determinant", "density",
];

/// `table --p-min a --p-max b --steps n`
pub fn cmd_table(p_min: f64, p_max: f64, steps: usize, format: OutputFormat) -> anyhow::Result<String> {
    if !(p_min.is_finite() && p_max.is_finite() && p_min >= 1.0 && p_min < p_max) {
        bail!("need 1 <= p-min < p-max (finite), got p-min = {p_min}, p-max = {p_max}");
    }
    if steps < 2 {
        bail!("--steps must be at least 2, got {steps}");
    }
    let p0 = davis_constant();
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let p = if i + 1 == steps {
            p_max
        } else {
            p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64
        };
        let e = Exponent::Finite(p);
        let r = critical_determinant(e)?;
        let packing = packing_lattice(e)?;
        let dens = density(&packing, e)?;
        let km = kappa_minkowski(p)?;
        rows.push(TableRow {
            p: Num(p),
            class: classify(e, p0).name(),
            delta: Num(r.delta),
            branch: r.branch.name(),
            kappa_optimal: Num(r.kappa),
            kappa_minkowski: Num(km),
            packing_determinant: Num(packing.determinant()),
            density: Num(dens),
            values: [p, r.delta, r.kappa, km, packing.determinant(), dens],
        });
    }
    Ok(match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct TableJson<'a> {
                davis_constant: Num,
                rows: &'a [TableRow],
            }
            to_json(&TableJson { davis_constant: Num(p0), rows: &rows })?
        }
        OutputFormat::Csv => {
            let mut csv = Csv::new(&TABLE_HEADER);
            for r in &rows {
                let v = r.values;
                csv.row([
                    machine(v[0]), r.class.to_string(), machine(v[1]), r.branch.to_string(),
                    machine(v[2]), machine(v[3]), machine(v[4]), machine(v[5]),
                ]);
            }
            csv.finish()
        }
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let v = r.values;
                    vec![
                        human(v[0]), r.class.to_string(), human(v[1]), r.branch.to_string(),
                        human(v[2]), human(v[3]), human(v[4]), human(v[5]),
                    ]
                })
                .collect();
            columns(&TABLE_HEADER, &cells)
        }
        OutputFormat::Svg => table_svg(&rows, p0, p_min, p_max)?,
    })
}

fn table_svg(rows: &[TableRow], p0: f64, p_min: f64, p_max: f64) -> anyhow::Result<String> {
    let pick = |k: usize| rows.iter().map(|r| (r.values[0], r.values[k])).collect::<Vec<_>>();
    let mut branch0 = Vec::new();
    let mut branch1 = Vec::new();
    for r in rows {
        let p = r.values[0];
        if p > 1.0 {
            branch0.push((p, delta0(p)?));
            branch1.push((p, delta1(p)?));
        }
    }
    let mut plot = svg::Plot {
        title: "Critical determinant and optimal packing density of D_p",
        x_label: "p",
        y_label: "value",
        series: vec![
            svg::Series { label: "Δ(D_p)", color: "#1f77b4", points: pick(1) },
            svg::Series { label: "density", color: "#d62728", points: pick(5) },
            svg::Series { label: "branch Δ(p, σ_p)", color: "#2ca02c", points: branch0 },
            svg::Series { label: "branch Δ(p, 1)", color: "#ff7f0e", points: branch1 },
        ],
        markers: vec![],
        vlines: vec![],
    };
    if (p_min..=p_max).contains(&p0) {
        let d = delta0(p0)?;
        plot.vlines.push(svg::VerticalLine { label: "p_0", x: p0 });
        plot.markers.push(svg::Marker { label: "branch crossing", color: "#000", at: (p0, d) });
    }
    Ok(plot.render())
}

#[derive(Serialize)]
struct VerifyJson {
    p: JsonExponent,
    doubled: bool,
    lattice: JsonLattice,
    determinant: Num,
    unit_ball: ReportJson,
    doubled_ball: ReportJson,
    packing: bool,
    density: Option<Num>,
}

#[derive(Serialize)]
struct ReportJson {
    admissible: bool,
    min_gauge: Num,
    boundary_pairs: usize,
    enumerated: usize,
}

impl From<VerifyReport> for ReportJson {
    fn from(r: VerifyReport) -> Self {
        Self {
            admissible: r.admissible,
            min_gauge: Num(r.min_gauge),
            boundary_pairs: r.boundary_pairs,
            enumerated: r.enumerated,
        }
    }
}

/// `verify --p <p> --basis a1x,a1y,a2x,a2y [--doubled]`
pub fn cmd_verify(p: Exponent, basis: [f64; 4], doubled: bool, format: OutputFormat) -> anyhow::Result<String> {
    no_svg(format, "verify")?;
    let mut lattice = Lattice2::from_coords(basis)?;
    if doubled {
        lattice = lattice.scaled(2.0);
    }
    let unit = is_admissible(&lattice, &Ball::unit(p))?;
    let twice = is_admissible(&lattice, &Ball::doubled(p))?;
    let packing = is_packing(&lattice, p)?;
    let dens = if packing { Some(density(&lattice, p)?) } else { None };
    Ok(match format {
        OutputFormat::Json => to_json(&VerifyJson {
            p: JsonExponent(p),
            doubled,
            lattice: (&lattice).into(),
            determinant: Num(lattice.determinant()),
            unit_ball: unit.into(),
            doubled_ball: twice.into(),
            packing,
            density: dens.map(Num),
        })?,
        OutputFormat::Csv => {
            let mut csv = Csv::new(&[
                "p", "a_x", "a_y", "b_x", "b_y", "determinant",
                "admissible", "min_gauge", "boundary_pairs", "enumerated",
                "admissible_doubled", "min_gauge_doubled", "boundary_pairs_doubled", "enumerated_doubled",
                "packing", "density",
            ]);
            let (a, b) = (lattice.a(), lattice.b());
            csv.row([
                p.to_string(),
                machine(a[0]), machine(a[1]), machine(b[0]), machine(b[1]),
                machine(lattice.determinant()),
                unit.admissible.to_string(), machine(unit.min_gauge),
                unit.boundary_pairs.to_string(), unit.enumerated.to_string(),
                twice.admissible.to_string(), machine(twice.min_gauge),
                twice.boundary_pairs.to_string(), twice.enumerated.to_string(),
                packing.to_string(),
                dens.map(machine).unwrap_or_default(),
            ]);
            csv.finish()
        }
        _ => {
            let describe = |r: &VerifyReport| {
                format!(
                    "{} (min_gauge {}, boundary_pairs {}, enumerated {})",
                    r.admissible,
                    human(r.min_gauge),
                    r.boundary_pairs,
                    r.enumerated
                )
            };
            key_values(&[
                ("p", p.to_string()),
                ("lattice", human_lattice(&lattice)),
                ("determinant", human(lattice.determinant())),
                ("admissible D_p", describe(&unit)),
                ("admissible 2D_p", describe(&twice)),
                ("packing", packing.to_string()),
                ("density", dens.map(human).unwrap_or_else(|| "-".into())),
            ])
        }
    })
}

#[derive(Serialize)]
struct ScanJson {
    p: Num,
    sigma_p: Num,
    argmin_index: usize,
    argmin_sigma: Num,
    min_delta: Num,
    delta_at_one: Num,
    delta_at_sigma_p: Num,
    min_lattice_gauge: Num,
    samples: Vec<ScanSampleJson>,
}

#[derive(Serialize)]
struct ScanSampleJson {
    sigma: Num,
    tau: Num,
    delta: Num,
}

/// `scan --p <p> --samples n`
pub fn cmd_scan(p: f64, samples: usize, format: OutputFormat) -> anyhow::Result<String> {
    let s = moduli_scan(p, samples)?;
    Ok(match format {
        OutputFormat::Json => to_json(&ScanJson {
            p: Num(s.p),
            sigma_p: Num(s.sigma_p),
            argmin_index: s.argmin,
            argmin_sigma: Num(s.argmin_sigma()),
            min_delta: Num(s.min_delta),
            delta_at_one: Num(s.delta_at_one),
            delta_at_sigma_p: Num(s.delta_at_sigma_p),
            min_lattice_gauge: Num(s.min_lattice_gauge),
            samples: s
                .points
                .iter()
                .map(|m| ScanSampleJson { sigma: Num(m.sigma), tau: Num(m.tau), delta: Num(m.delta) })
                .collect(),
        })?,
        OutputFormat::Csv => {
            let mut csv = Csv::new(&["sigma", "tau", "delta"]);
            for m in &s.points {
                csv.row([machine(m.sigma), machine(m.tau), machine(m.delta)]);
            }
            csv.finish()
        }
        OutputFormat::Table => {
            let cells: Vec<Vec<String>> = s
                .points
                .iter()
                .map(|m| vec![human(m.sigma), human(m.tau), human(m.delta)])
                .collect();
            let mut out = columns(&["sigma", "tau", "delta"], &cells);
            out.push('\n');
            out.push_str(&key_values(&[
                ("p", human(s.p)),
                ("sigma_p", human(s.sigma_p)),
                ("argmin_sigma", human(s.argmin_sigma())),
                ("min_delta", human(s.min_delta)),
                ("delta(p, 1)", human(s.delta_at_one)),
                ("delta(p, sigma_p)", human(s.delta_at_sigma_p)),
                ("min_lattice_gauge", human(s.min_lattice_gauge)),
            ]));
            out
        }
        OutputFormat::Svg => {
            let curve: Vec<(f64, f64)> = s.points.iter().map(|m| (m.sigma, m.delta)).collect();
            let title = format!("Δ(p, σ) over the moduli family, p = {}", human(p));
            let argmin = s.points[s.argmin];
            svg::Plot {
                title: &title,
                x_label: "σ",
                y_label: "Δ(p, σ)",
                series: vec![svg::Series { label: "Δ(p, σ)", color: "#1f77b4", points: curve }],
                markers: vec![
                    svg::Marker { label: "σ = 1", color: "#ff7f0e", at: (1.0, s.delta_at_one) },
                    svg::Marker { label: "σ = σ_p", color: "#2ca02c", at: (s.sigma_p, s.delta_at_sigma_p) },
                    svg::Marker { label: "argmin", color: "#d62728", at: (argmin.sigma, argmin.delta) },
                ],
                vlines: vec![],
            }
            .render()
        }
    })
}
