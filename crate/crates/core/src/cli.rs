//! The `rpla` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cost::{compare, cost_report, CostReport};
use crate::gates::unpack;
use crate::io::{deserialize_netlist, emit_dot, serialize_netlist};
use crate::netlist::Netlist;
use crate::pla::{parse_pla, PlaSpec};
use crate::simulator::{
    bit_string, check_circuit_bijective, check_equivalence, simulate, truth_table,
};
use crate::synth::{expand_to_minterms, synthesize, Backend, SynthOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rpla",
    version,
    about = "Reversible programmable logic array synthesis and analysis"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Mux,
    Fredkin,
}

impl From<BackendArg> for Backend {
    fn from(arg: BackendArg) -> Self {
        match arg {
            BackendArg::Mux => Backend::MuxFeynman,
            BackendArg::Fredkin => Backend::FredkinFeynman,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EmitFormat {
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Synthesize a .pla specification into a reversible netlist.
    Synth {
        pla: PathBuf,
        #[arg(long, value_enum, default_value = "mux")]
        backend: BackendArg,
        /// Build all 2^n minterms in the AND plane.
        #[arg(long)]
        full_plane: bool,
        /// Output path for the netlist document (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate a netlist on one input vector or on all of them.
    Sim {
        netlist: PathBuf,
        /// Input bits, first input first (e.g. 101).
        #[arg(long, conflicts_with = "table")]
        input: Option<String>,
        /// Print the full truth table (default).
        #[arg(long)]
        table: bool,
    },
    /// Check a netlist against a .pla specification.
    Verify {
        netlist: PathBuf,
        #[arg(long)]
        against: PathBuf,
    },
    /// Report cost metrics of a netlist.
    Cost { netlist: PathBuf },
    /// Compare both backends on a .pla specification.
    Compare {
        pla: PathBuf,
        #[arg(long)]
        full_plane: bool,
    },
    /// Print a netlist as Graphviz or as its JSON document.
    Emit {
        netlist: PathBuf,
        #[arg(long, value_enum)]
        format: EmitFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_pla(path: &Path) -> Result<PlaSpec, Failure> {
    parse_pla(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_netlist(path: &Path) -> Result<Netlist, Failure> {
    deserialize_netlist(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_valid_netlist(path: &Path) -> Result<Netlist, Failure> {
    let netlist = load_netlist(path)?;
    let diags = netlist.validate();
    if !diags.is_empty() {
        let lines: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        return Err(usage(format!(
            "{}: invalid netlist\n{}",
            path.display(),
            lines.join("\n")
        )));
    }
    Ok(netlist)
}

fn write_output(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| usage(format!("stdout: {e}"))),
    }
}

fn emit_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| usage(format!("stdout: {e}")))
}

fn parse_bits(text: &str, n: usize) -> Result<Vec<bool>, Failure> {
    let bits: Option<Vec<bool>> = text
        .chars()
        .map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        })
        .collect();
    match bits {
        Some(b) if b.len() == n => Ok(b),
        Some(b) => Err(usage(format!(
            "--input has {} bits, netlist has {n} inputs",
            b.len()
        ))),
        None => Err(usage(format!("--input `{text}` must contain only 0 and 1"))),
    }
}

fn render_report(report: &CostReport, indent: &str, out: &mut String) {
    use std::fmt::Write as _;
    let kinds: Vec<String> = report
        .gates_by_kind
        .iter()
        .map(|(k, c)| format!("{k} {c}"))
        .collect();
    let _ = writeln!(
        out,
        "{indent}gates: {} ({})",
        report.gate_total,
        kinds.join(", ")
    );
    let _ = writeln!(out, "{indent}quantum cost: {}", report.quantum_cost);
    let _ = writeln!(out, "{indent}constant inputs: {}", report.constant_inputs);
    let _ = writeln!(
        out,
        "{indent}garbage outputs (strict): {}",
        report.garbage_strict
    );
    let _ = writeln!(
        out,
        "{indent}total logical calculation: {}",
        report.logic_calc
    );
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let io_err = |e: std::io::Error| usage(format!("stdout: {e}"));
    match cli.command {
        Command::Synth {
            pla,
            backend,
            full_plane,
            output,
        } => {
            let spec = load_pla(&pla)?;
            let netlist = synthesize(&spec, backend.into(), SynthOptions { full_plane })
                .map_err(|e| usage(e.to_string()))?;
            let text = serialize_netlist(&netlist);
            match output {
                None => write_output(None, &text, out)?,
                Some(path) => {
                    write_output(Some(&path), &text, out)?;
                    if cli.json {
                        emit_json(
                            out,
                            &json!({
                                "output": path.display().to_string(),
                                "backend": Backend::from(backend),
                                "full_plane": full_plane,
                                "gates": netlist.gates().len(),
                                "lines": netlist.lines().len(),
                            }),
                        )?;
                    } else {
                        writeln!(
                            out,
                            "wrote {} ({} gates, {} lines) to {}",
                            netlist.name(),
                            netlist.gates().len(),
                            netlist.lines().len(),
                            path.display()
                        )
                        .map_err(io_err)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Sim { netlist, input, .. } => {
            let netlist = load_valid_netlist(&netlist)?;
            match input {
                Some(bits) => {
                    let inputs = parse_bits(&bits, netlist.n_inputs())?;
                    let outputs = simulate(&netlist, &inputs).map_err(|e| usage(e.to_string()))?;
                    if cli.json {
                        emit_json(
                            out,
                            &json!({ "input": bits, "outputs": bit_string(&outputs) }),
                        )?;
                    } else {
                        writeln!(out, "{}", bit_string(&outputs)).map_err(io_err)?;
                    }
                }
                None => {
                    let table = truth_table(&netlist).map_err(|e| usage(e.to_string()))?;
                    if cli.json {
                        let rows: Vec<_> = table
                            .rows
                            .iter()
                            .enumerate()
                            .map(|(v, r)| json!({ "input": bit_string(&unpack(v, table.n)), "outputs": bit_string(r) }))
                            .collect();
                        emit_json(out, &json!({ "n": table.n, "m": table.m, "rows": rows }))?;
                    } else {
                        let outputs: Vec<String> =
                            (0..table.m).map(|j| netlist.output_label(j)).collect();
                        writeln!(
                            out,
                            "# {} | {}",
                            netlist.input_labels().join(" "),
                            outputs.join(" ")
                        )
                        .map_err(io_err)?;
                        write!(out, "{table}").map_err(io_err)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { netlist, against } => {
            let netlist = load_netlist(&netlist)?;
            let spec = load_pla(&against)?;
            let diags = netlist.validate();
            if !diags.is_empty() {
                if cli.json {
                    emit_json(out, &json!({ "valid": false, "diagnostics": diags }))?;
                } else {
                    writeln!(out, "validate: FAILED").map_err(io_err)?;
                    for d in &diags {
                        writeln!(out, "  {d}").map_err(io_err)?;
                    }
                }
                return Ok(EXIT_VERIFY_FAILED);
            }
            let cover = expand_to_minterms(&spec);
            let equivalence =
                check_equivalence(&netlist, &cover).map_err(|e| usage(e.to_string()))?;
            let bijectivity =
                check_circuit_bijective(&netlist).map_err(|e| usage(e.to_string()))?;
            let ok = equivalence.equivalent && bijectivity.bijective;
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "valid": true,
                        "equivalence": equivalence,
                        "bijectivity": bijectivity,
                        "passed": ok,
                    }),
                )?;
            } else {
                writeln!(out, "validate: ok").map_err(io_err)?;
                match &equivalence.first_mismatch {
                    None => writeln!(out, "equivalence: ok ({} input vectors)", 1usize << spec.n),
                    Some(m) => writeln!(out, "equivalence: FAILED at {m}"),
                }
                .map_err(io_err)?;
                if bijectivity.bijective {
                    writeln!(out, "bijectivity: ok ({})", bijectivity.mode)
                } else {
                    writeln!(out, "bijectivity: FAILED ({})", bijectivity.mode)
                }
                .map_err(io_err)?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Cost { netlist } => {
            let netlist = load_valid_netlist(&netlist)?;
            let report = cost_report(&netlist);
            if cli.json {
                emit_json(out, &report)?;
            } else {
                let mut text = format!("netlist: {}\n", netlist.name());
                render_report(&report, "", &mut text);
                if let Some(planes) = &report.plane_breakdown {
                    text.push_str("AND plane:\n");
                    render_report(&planes.and_plane, "  ", &mut text);
                    text.push_str("OR plane:\n");
                    render_report(&planes.or_plane, "  ", &mut text);
                }
                if let Some(note) = &report.garbage_note {
                    text.push_str(&format!("note: {note}\n"));
                }
                out.write_all(text.as_bytes()).map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Compare { pla, full_plane } => {
            let spec = load_pla(&pla)?;
            let table =
                compare(&spec, SynthOptions { full_plane }).map_err(|e| usage(e.to_string()))?;
            if cli.json {
                emit_json(out, &table)?;
            } else {
                out.write_all(table.render_text().as_bytes())
                    .map_err(io_err)?;
            }
            Ok(EXIT_OK)
        }
        Command::Emit {
            netlist,
            format,
            output,
        } => {
            let netlist = load_valid_netlist(&netlist)?;
            let text = match format {
                EmitFormat::Dot => emit_dot(&netlist),
                EmitFormat::Json => serialize_netlist(&netlist),
            };
            write_output(output.as_deref(), &text, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
