//! Implementations of the CLI subcommands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use biso::applications::fi_curve_bounds;
use biso::coefficients::CoefficientReport;
use biso::extremal::{general_binary_dominated, match_extremal, theorem2_degrading_map, ClassKind};
use biso::io::{format_channel, parse_channel};
use biso::orders::{
    criterion_profile, guessing_probability_channel, is_degraded, is_less_noisy, is_more_capable,
    mi_difference_profile, OrderVerdict, Witness,
};
use biso::{BisoChannel, Channel};

use crate::checks::{registry, z_matched_bsc, CheckReport};
use crate::format::{matrix, num};
use crate::{CliError, CliResult};

pub fn load(path: &Path) -> CliResult<Channel> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e.to_string()))?;
    parse_channel(&text).map_err(|e| CliError::Channel(path.to_path_buf(), e))
}

fn require_biso(path: &Path, channel: &Channel) -> CliResult<BisoChannel> {
    channel
        .canonicalize_biso()
        .map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(PathBuf::from("<output>"), e.to_string())
}

fn class_line(channel: &Channel, kind: ClassKind) -> String {
    match match_extremal(channel, kind) {
        Ok(m) => format!(
            "value={} bsc_p={} bec_eps={}",
            num(m.class.value),
            num(m.bsc_param),
            num(m.bec_param)
        ),
        Err(e) => format!("n/a ({e})"),
    }
}

pub fn analyze(path: &Path, out: &mut dyn Write) -> CliResult<()> {
    let c = load(path)?;
    let r = CoefficientReport::of(&c);
    let lines = [
        ("outputs", c.outputs().to_string()),
        ("biso", if c.is_biso() { "yes" } else { "no" }.to_string()),
        ("eta_kl", num(r.eta_kl)),
        ("eta_tv", num(r.eta_tv)),
        ("doeblin_alpha", num(r.doeblin_alpha)),
        ("alpha_max", num(r.alpha_max)),
        ("leakage_nats", num(r.maximal_leakage)),
        ("leakage_bits", num(r.maximal_leakage_bits())),
        ("capacity_bits", num(r.capacity)),
        ("class_eta", class_line(&c, ClassKind::EtaKl)),
        ("class_alpha", class_line(&c, ClassKind::Alpha)),
        ("class_capacity", class_line(&c, ClassKind::Capacity)),
    ];
    for (k, v) in lines {
        writeln!(out, "{k:<15}{v}").map_err(io_err)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OrderFlag {
    Deg,
    Ln,
    Mc,
    All,
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn witness_text(w: &Option<Witness>) -> String {
    match w {
        None => String::new(),
        Some(Witness::Map(m)) => format!("  map:\n{}", indent(&indent(&matrix(m.rows())))),
        Some(Witness::Infeasible(c)) => format!("  phase-one optimum: {}\n", num(c.phase_one_optimum)),
        Some(Witness::Point { parameter, value }) => {
            format!("  at {}: {}\n", num(*parameter), num(*value))
        }
        Some(Witness::Ratios { first, second }) => {
            format!("  ratios: {} {}\n", num(*first), num(*second))
        }
    }
}

fn guessing_witness(p: &Channel, q: &Channel, grid: usize) -> Option<String> {
    let (x, gap) = (1..=grid)
        .map(|k| k as f64 / (grid + 1) as f64)
        .map(|x| {
            (
                x,
                guessing_probability_channel(q, x) - guessing_probability_channel(p, x),
            )
        })
        .fold((0.0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    (gap > 1e-12).then(|| {
        format!(
            "  guessing witness: x={} first={} second={}\n",
            num(x),
            num(guessing_probability_channel(p, x)),
            num(guessing_probability_channel(q, x))
        )
    })
}

fn write_verdict(out: &mut dyn Write, label: &str, v: &OrderVerdict) -> CliResult<()> {
    write!(out, "{label}: {}\n{}", v.relation, witness_text(&v.witness)).map_err(io_err)
}

pub fn compare(a: &Path, b: &Path, order: OrderFlag, grid: usize, out: &mut dyn Write) -> CliResult<()> {
    let (ca, cb) = (load(a)?, load(b)?);
    let pairs = [("A >= B", &ca, &cb), ("B >= A", &cb, &ca)];
    if matches!(order, OrderFlag::Deg | OrderFlag::All) {
        for (label, p, q) in pairs {
            let v = is_degraded(p, q)?;
            write_verdict(out, &format!("deg {label}"), &v)?;
            if v.fails() {
                if let Some(text) = guessing_witness(p, q, grid) {
                    write!(out, "{text}").map_err(io_err)?;
                }
            }
        }
    }
    if matches!(order, OrderFlag::Ln | OrderFlag::All) {
        match (ca.canonicalize_biso(), cb.canonicalize_biso()) {
            (Ok(wa), Ok(wb)) => {
                write_verdict(out, "ln A >= B", &is_less_noisy(&wa, &wb, grid)?)?;
                write_verdict(out, "ln B >= A", &is_less_noisy(&wb, &wa, grid)?)?;
            }
            _ if order == OrderFlag::Ln => {
                return Err(CliError::Precondition(
                    "less-noisy comparison needs two BISO channels".into(),
                ))
            }
            _ => writeln!(out, "ln: skipped, channels are not both BISO").map_err(io_err)?,
        }
    }
    if matches!(order, OrderFlag::Mc | OrderFlag::All) {
        for (label, p, q) in pairs {
            write_verdict(out, &format!("mc {label}"), &is_more_capable(p, q, grid)?)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindFlag {
    Eta,
    Alpha,
    Capacity,
}

impl From<KindFlag> for ClassKind {
    fn from(k: KindFlag) -> Self {
        match k {
            KindFlag::Eta => ClassKind::EtaKl,
            KindFlag::Alpha => ClassKind::Alpha,
            KindFlag::Capacity => ClassKind::Capacity,
        }
    }
}

pub fn extremal(path: &Path, kind: KindFlag, dir: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    let c = load(path)?;
    let kind = ClassKind::from(kind);
    let m = match_extremal(&c, kind).map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))?;
    writeln!(out, "kind     {kind}").map_err(io_err)?;
    writeln!(out, "value    {}", num(m.class.value)).map_err(io_err)?;
    writeln!(out, "bsc_p    {}", num(m.bsc_param)).map_err(io_err)?;
    writeln!(out, "bec_eps  {}", num(m.bec_param)).map_err(io_err)?;
    if kind == ClassKind::Alpha {
        match c.canonicalize_biso() {
            Ok(w) => {
                let labels: Vec<String> = w.labels().iter().map(i64::to_string).collect();
                writeln!(out, "indicator map, rows for outputs {}:", labels.join(" ")).map_err(io_err)?;
                write!(out, "{}", indent(&matrix(theorem2_degrading_map(&w).rows()))).map_err(io_err)?;
            }
            Err(_) => {
                let (map, d) = general_binary_dominated(&c)?;
                writeln!(out, "dominated binary channel:").map_err(io_err)?;
                write!(out, "{}", indent(&matrix(&[d.row(0).to_vec(), d.row(1).to_vec()]))).map_err(io_err)?;
                writeln!(out, "indicator map:").map_err(io_err)?;
                write!(out, "{}", indent(&matrix(map.rows()))).map_err(io_err)?;
            }
        }
    }
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e.to_string()))?;
        let files = [
            ("bsc.txt", Channel::bsc(m.bsc_param)?),
            ("bec.txt", Channel::bec(m.bec_param)?),
        ];
        for (name, ch) in files {
            let p = dir.join(name);
            fs::write(&p, format_channel(&ch)).map_err(|e| CliError::Io(p.clone(), e.to_string()))?;
            writeln!(out, "wrote    {}", p.display()).map_err(io_err)?;
        }
    }
    Ok(())
}

fn write_report(out: &mut dyn Write, report: &CheckReport) -> std::io::Result<()> {
    for r in &report.rows {
        writeln!(
            out,
            "  {:<48} {:<9} expected={:<16} computed={:<20} tol={:<8} {}",
            r.check_id,
            r.source.to_string(),
            num(r.expected),
            num(r.computed),
            num(r.tolerance),
            if r.passed { "ok" } else { "MISMATCH" }
        )?;
    }
    if let Some(e) = &report.error {
        writeln!(out, "  error: {e}")?;
    }
    let status = if report.passed() { "PASS" } else { "FAIL" };
    writeln!(out, "{status} {} ({})", report.id, report.title)
}

/// Returns whether every selected check passed.
pub fn paper_check(list: bool, only: Option<&str>, out: &mut dyn Write) -> CliResult<bool> {
    if list {
        for c in registry() {
            writeln!(out, "{:<22} {}", c.id, c.title).map_err(io_err)?;
        }
        return Ok(true);
    }
    let selected: Vec<_> = match only {
        Some(id) => {
            let c = registry()
                .iter()
                .find(|c| c.id == id)
                .ok_or_else(|| CliError::Usage(format!("unknown check id `{id}`")))?;
            vec![c]
        }
        None => registry().iter().collect(),
    };
    let mut all = true;
    for c in selected {
        let report = c.run();
        all &= report.passed();
        write_report(out, &report).map_err(io_err)?;
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    Criterion,
    FiBounds,
    MiDiff,
}

pub struct SweepArgs<'a> {
    pub quantity: Quantity,
    pub files: &'a [PathBuf],
    pub grid: usize,
    pub z_matched: Option<f64>,
    pub t_max: f64,
    pub steps: usize,
}

fn need_files(files: &[PathBuf], n: usize, what: &str) -> CliResult<()> {
    if files.len() != n {
        return Err(CliError::Usage(format!("{what} sweep takes {n} channel file(s)")));
    }
    Ok(())
}

pub fn sweep(args: &SweepArgs<'_>, out: &mut dyn Write) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(PathBuf::from("<output>"), e.to_string());
    match args.quantity {
        Quantity::Criterion => {
            need_files(args.files, 2, "criterion")?;
            let a = require_biso(&args.files[0], &load(&args.files[0])?)?;
            let b = require_biso(&args.files[1], &load(&args.files[1])?)?;
            w.write_record(["q", "criterion"]).map_err(csv_err)?;
            for (q, v) in criterion_profile(&a, &b, args.grid)?.points {
                w.write_record([num(q), num(v)]).map_err(csv_err)?;
            }
        }
        Quantity::FiBounds => {
            need_files(args.files, 1, "fi-bounds")?;
            let c = require_biso(&args.files[0], &load(&args.files[0])?)?;
            if args.steps == 0 || args.t_max.is_nan() || args.t_max < 0.0 {
                return Err(CliError::Usage("need --steps >= 1 and --t-max >= 0".into()));
            }
            w.write_record(["t", "lower", "upper"]).map_err(csv_err)?;
            for k in 0..=args.steps {
                let t = args.t_max * k as f64 / args.steps as f64;
                let b = fi_curve_bounds(&c, t)?;
                w.write_record([num(t), num(b.lower), num(b.upper)]).map_err(csv_err)?;
            }
        }
        Quantity::MiDiff => {
            let (p, q) = match args.z_matched {
                Some(zq) => {
                    if !args.files.is_empty() {
                        return Err(CliError::Usage("--z-matched takes no channel files".into()));
                    }
                    if !(zq > 0.0 && zq < 1.0) {
                        return Err(CliError::Precondition(format!("--z-matched {zq} outside (0, 1)")));
                    }
                    (Channel::z(zq)?, Channel::bsc(z_matched_bsc(zq)?)?)
                }
                None => {
                    need_files(args.files, 2, "mi-diff")?;
                    (load(&args.files[0])?, load(&args.files[1])?)
                }
            };
            w.write_record(["x", "mi_difference"]).map_err(csv_err)?;
            for (x, v) in mi_difference_profile(&p, &q, args.grid)?.points {
                w.write_record([num(x), num(v)]).map_err(csv_err)?;
            }
        }
    }
    w.flush().map_err(io_err)?;
    Ok(())
}
