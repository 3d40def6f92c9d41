//! Command-line front end.
//!
//! Exit codes: 0 on success (and when every verdict passes), 1 when a
//! verdict fails, 2 on usage errors. Data goes to `out`, diagnostics to `err`.
//! Lines are numbered from 1 on the command line (`--fix 3=0`).

use std::collections::BTreeSet;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::derivation::{derived_connectives, ConnectiveName, Fixing};
use crate::device::{run_histogram, DeviceConfig, ProbeState, DEFAULT_BIN_WIDTH};
use crate::energy::{info_loss, Distribution};
use crate::gate::{Gate, GateJson, Word};
use crate::library::{build, GateId};
use crate::machine::{
    all_conclusions, coherence_check, verify_conclusion, verify_conclusion_with, NormalizationId,
    Verdict,
};

/// Environment variable consulted when `simulate` gets no `--seed`.
pub const SEED_ENV: &str = "REVLOGIC_SEED";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "revlogic",
    version,
    about = "Reversible gates, ancilla derivations, a noisy cantilever device and Landauer costs"
)]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect the built-in gates
    #[command(subcommand)]
    Gates(GatesCommand),
    /// Enumerate the connectives obtainable by fixing input lines
    Derive { gate: GateId },
    /// Sample the device and print a histogram
    Simulate(SimulateArgs),
    /// Run a normalization through the device and check it against its gate
    Machine(MachineArgs),
    /// Information loss and minimum dissipation of a (restricted) gate
    Energy(EnergyArgs),
    /// Run every conclusion, coherence and derived-set check
    VerifyAll,
}

#[derive(Debug, Subcommand)]
enum GatesCommand {
    /// List the gate ids
    List,
    /// Print a truth table and its JSON form
    Show { gate: GateId },
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Probe pair as bits (00, 01, 10, 11) or letters (DD, DA, AD, AA)
    #[arg(long)]
    input: ProbeState,
    /// Number of trials
    #[arg(long, default_value_t = 10_000)]
    n: usize,
    /// Random seed (default: $REVLOGIC_SEED, else 42)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BIN_WIDTH)]
    bin_width: f64,
    /// Keep the two single-probe angles apart
    #[arg(long)]
    distinguishable: bool,
}

#[derive(Debug, Args)]
struct MachineArgs {
    #[command(flatten)]
    which: WhichNorm,
    /// Keep the two single-probe angles apart (required by u4)
    #[arg(long)]
    distinguishable: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct WhichNorm {
    /// u1, u2, u3, u1bar, u2bar, u3bar, u4 or delta
    #[arg(long)]
    norm: Option<NormalizationId>,
    /// Check every normalization with its own default device
    #[arg(long)]
    all: bool,
}

#[derive(Debug, Args)]
struct EnergyArgs {
    #[arg(long)]
    gate: GateId,
    /// Fix an input line, e.g. `--fix 3=0` (repeatable)
    #[arg(long = "fix", value_parser = parse_fix)]
    fix: Vec<(usize, bool)>,
    /// Keep only these output lines (repeatable; default all)
    #[arg(long = "project")]
    project: Vec<usize>,
    /// Temperature in kelvin
    #[arg(long, default_value_t = 300.0)]
    temp: f64,
}

fn parse_fix(s: &str) -> Result<(usize, bool), String> {
    let (line, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected LINE=BIT, got {s:?}"))?;
    let line: usize = line
        .trim()
        .trim_start_matches('x')
        .parse()
        .map_err(|_| format!("bad line in {s:?}"))?;
    if line == 0 {
        return Err("lines are numbered from 1".into());
    }
    let value = match value.trim() {
        "0" => false,
        "1" => true,
        _ => return Err(format!("bad bit in {s:?}")),
    };
    Ok((line - 1, value))
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, Failure> {
    match &cli.command {
        Command::Gates(GatesCommand::List) => gates_list(cli.json, out),
        Command::Gates(GatesCommand::Show { gate }) => gates_show(*gate, cli.json, out),
        Command::Derive { gate } => derive(*gate, cli.json, out),
        Command::Simulate(a) => simulate(a, cli.json, out, err),
        Command::Machine(a) => machine(a, cli.json, out),
        Command::Energy(a) => energy(a, out),
        Command::VerifyAll => verify_all(cli.json, out),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn gates_list(json: bool, out: &mut dyn Write) -> Result<bool, Failure> {
    if json {
        let list: Vec<_> = GateId::ALL
            .iter()
            .map(|&id| {
                let g = build(id);
                json!({"id": id.as_str(), "width": id.width(), "flags": g.flags()})
            })
            .collect();
        write_json(out, &list)?;
    } else {
        for id in GateId::ALL {
            let f = build(id).flags();
            writeln!(
                out,
                "{:<10} width {}  self-reversible={}  conservative={}",
                id.as_str(),
                id.width(),
                f.self_reversible,
                f.conservative
            )?;
        }
    }
    Ok(true)
}

/// Inputs on the left, outputs on the right, rows in input order.
pub fn render_table(g: &Gate) -> String {
    let n = g.width();
    let head_in: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    let head_out: Vec<String> = (1..=n).map(|k| format!("x{k}'")).collect();
    let mut s = format!("{} | {}\n", head_in.join(" "), head_out.join(" "));
    for (i, y) in g.table().iter().enumerate() {
        let x = Word::new(n, i as u32).expect("table index fits its width");
        let ins: Vec<String> = x
            .bits()
            .iter()
            .map(|&b| format!("{:>2}", u8::from(b)))
            .collect();
        let outs: Vec<String> = y
            .bits()
            .iter()
            .map(|&b| format!("{:>3}", u8::from(b)))
            .collect();
        s.push_str(&format!("{} | {}\n", ins.join(" "), outs.join(" ")));
    }
    s
}

fn gates_show(id: GateId, json: bool, out: &mut dyn Write) -> Result<bool, Failure> {
    let g = build(id);
    let form = GateJson::from(g.clone());
    if json {
        write_json(out, &form)?;
        return Ok(true);
    }
    let f = g.flags();
    writeln!(
        out,
        "{} (width {}, self-reversible={}, conservative={})",
        g.name(),
        g.width(),
        f.self_reversible,
        f.conservative
    )?;
    write!(out, "{}", render_table(&g))?;
    writeln!(
        out,
        "{}",
        serde_json::to_string(&form).map_err(io::Error::from)?
    )?;
    Ok(true)
}

fn derive(id: GateId, json: bool, out: &mut dyn Write) -> Result<bool, Failure> {
    let set = derived_connectives(&build(id)).map_err(usage)?;
    if json {
        write_json(out, &set)?;
        return Ok(true);
    }
    for e in &set.entries {
        let args: Vec<String> = e.inputs.iter().map(|l| format!("x{}", l + 1)).collect();
        writeln!(
            out,
            "{:<14} x{}' = {}({})",
            e.fixing.to_string(),
            e.line + 1,
            e.name,
            args.join(", ")
        )?;
    }
    let names: Vec<&str> = set.names.iter().map(|n| n.label()).collect();
    writeln!(out, "names: {}", names.join(", "))?;
    Ok(true)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn simulate(
    a: &SimulateArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<bool, Failure> {
    let mut cfg = DeviceConfig::default()
        .with_distinguishable(a.distinguishable)
        .map_err(usage)?;
    if let Some(s) = a.sigma {
        cfg = cfg.with_sigma(s).map_err(usage)?;
    }
    let seed = resolve_seed(a.seed)?;
    let h = run_histogram(a.input, a.n, &cfg, seed, a.bin_width).map_err(usage)?;
    if json {
        let bins: Vec<_> = h.bins().collect();
        write_json(
            out,
            &json!({
                "input": a.input.to_string(),
                "symbol": a.input.symbol().to_string(),
                "seed": seed,
                "config": cfg,
                "bin_width": h.bin_width,
                "bins": bins,
                "summary": h.summary,
            }),
        )?;
    } else {
        h.write_csv(&mut *out)
            .map_err(|e| Failure::Io(io::Error::other(e)))?;
        writeln!(
            err,
            "{}",
            serde_json::to_string(&json!({"seed": seed, "summary": h.summary}))
                .map_err(io::Error::from)?
        )?;
    }
    Ok(true)
}

fn print_verdict(v: &Verdict, out: &mut dyn Write) -> io::Result<()> {
    let t = &v.table;
    writeln!(out, "normalization {}  (ancilla {:?})", v.id, t.ancilla)?;
    writeln!(out, "probes  alpha_i  alpha_o | x1 x2 x3 -> x1' x2' x3'")?;
    for r in &t.rows {
        let i = r.input.bits();
        let o = r.output.bits();
        writeln!(
            out,
            "{} {}  {:>7.3}  {:>7.3} | {:>2} {:>2} {:>2} -> {:>3} {:>3} {:>3}",
            r.probes.letters(),
            r.probes.symbol(),
            r.alpha_i,
            r.alpha_o,
            u8::from(i[0]),
            u8::from(i[1]),
            u8::from(i[2]),
            u8::from(o[0]),
            u8::from(o[1]),
            u8::from(o[2]),
        )?;
    }
    writeln!(
        out,
        "{} {}: {} {} -> {} (expected {})",
        if v.pass { "PASS" } else { "FAIL" },
        v.id,
        v.gate.as_str().to_uppercase(),
        v.fixing,
        v.connective,
        v.expected
    )
}

fn machine(a: &MachineArgs, json: bool, out: &mut dyn Write) -> Result<bool, Failure> {
    let all = a.which.all;
    let verdicts = if all {
        all_conclusions()
    } else {
        let id = a.which.norm.expect("clap enforces --norm or --all");
        if id == NormalizationId::U4 && !a.distinguishable {
            return Err(usage("u4 needs --distinguishable"));
        }
        let cfg = DeviceConfig::default()
            .with_distinguishable(a.distinguishable)
            .map_err(usage)?;
        vec![verify_conclusion_with(id, &cfg).map_err(usage)?]
    };
    let ok = verdicts.iter().all(|v| v.pass);
    if json {
        if all {
            write_json(out, &verdicts)?;
        } else {
            write_json(out, &verdicts[0])?;
        }
    } else {
        for (k, v) in verdicts.iter().enumerate() {
            if k > 0 {
                writeln!(out)?;
            }
            print_verdict(v, out)?;
        }
    }
    Ok(ok)
}

fn energy(a: &EnergyArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let g = build(a.gate);
    let n = g.width();
    let fixing = Fixing::new(n, &a.fix).map_err(usage)?;
    let mut keep = Vec::new();
    for &line in &a.project {
        if line == 0 || line > n {
            return Err(usage(format!("--project {line}: lines are 1..={n}")));
        }
        keep.push(line - 1);
    }
    if keep.is_empty() {
        keep = (0..n).collect();
    }
    let free = fixing.free().len();
    let d = Distribution::uniform(free).map_err(usage)?;
    let table = |w: Word| {
        let y = g
            .apply(fixing.embed(w).expect("free word has the free width"))
            .expect("embedded word has the gate width");
        let bits: Vec<bool> = keep.iter().map(|&l| y.bit(l)).collect();
        Word::from_bits(&bits).expect("1..=3 bits")
    };
    let report = info_loss(table, &d, a.temp).map_err(usage)?;
    write_json(
        out,
        &json!({
            "gate": a.gate.as_str(),
            "fixing": fixing,
            "kept_lines": keep.iter().map(|l| l + 1).collect::<Vec<_>>(),
            "report": report,
        }),
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct Check {
    check: String,
    pass: bool,
    detail: String,
}

fn derived_set_check(id: GateId, required: &[ConnectiveName]) -> Check {
    let names: BTreeSet<ConnectiveName> = derived_connectives(&build(id))
        .map(|s| s.names)
        .unwrap_or_default();
    let missing: Vec<&str> = required
        .iter()
        .filter(|n| !names.contains(n))
        .map(|n| n.label())
        .collect();
    let req: Vec<&str> = required.iter().map(|n| n.label()).collect();
    Check {
        check: format!("derived({})", id.as_str()),
        pass: missing.is_empty(),
        detail: if missing.is_empty() {
            format!("contains {{{}}}", req.join(", "))
        } else {
            format!("missing {{{}}}", missing.join(", "))
        },
    }
}

/// Every check `verify-all` runs, in print order.
fn all_checks() -> Vec<Check> {
    use ConnectiveName::*;
    let mut checks: Vec<Check> = NormalizationId::ALL
        .into_iter()
        .map(|id| {
            let v = verify_conclusion(id);
            Check {
                check: id.as_str().to_string(),
                pass: v.pass,
                detail: format!(
                    "{} {} -> {}",
                    v.gate.as_str().to_uppercase(),
                    v.fixing,
                    v.connective
                ),
            }
        })
        .collect();
    let c = coherence_check();
    checks.push(Check {
        check: "coherence".into(),
        pass: c.pass,
        detail: "u1(alpha_o) = |u1(0) - u1(alpha_o)| on all four inputs".into(),
    });
    checks.push(derived_set_check(GateId::Cl, &[Xor, Or, Nor, Not, FanOut]));
    checks.push(derived_set_check(
        GateId::Toffoli,
        &[Xor, And, Nand, Not, FanOut],
    ));
    checks
}

fn verify_all(json: bool, out: &mut dyn Write) -> Result<bool, Failure> {
    let checks = all_checks();
    if json {
        write_json(out, &checks)?;
    } else {
        for c in &checks {
            writeln!(
                out,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.check,
                c.detail
            )?;
        }
    }
    Ok(checks.iter().all(|c| c.pass))
}
