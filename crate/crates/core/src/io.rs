//! Netlist documents (JSON) and Graphviz output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{GateKind, GateRole, RoleName};
use crate::netlist::{Consumer, Driver, GateId, GateInstance, Line, LineId, Netlist, Plane};

pub const FORMAT_NAME: &str = "rpla-netlist";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetlistDocument {
    pub format: String,
    pub version: u32,
    pub name: String,
    pub inputs: Vec<PortRecord>,
    pub outputs: Vec<OutputRecord>,
    pub constants: Vec<ConstantRecord>,
    pub gates: Vec<GateRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortRecord {
    pub label: String,
    pub line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputRecord {
    pub index: usize,
    pub label: String,
    pub line: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantRecord {
    pub line: u32,
    pub bit: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRecord {
    pub id: u32,
    pub kind: GateKind,
    pub role: RoleName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane: Option<Plane>,
    pub inputs: Vec<u32>,
    pub outputs: Vec<u32>,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed netlist document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document format `{found}` (expected `{FORMAT_NAME}`)")]
    Format { found: String },
    #[error("unsupported document version {found} (expected {FORMAT_VERSION})")]
    Version { found: u32 },
    #[error("line {0} is referenced but never driven")]
    DanglingLine(u32),
    #[error("line {0} has more than one driver")]
    MultipleDrivers(u32),
    #[error("duplicate gate id {0}")]
    DuplicateGate(u32),
    #[error("duplicate primary output index {0}")]
    DuplicateOutput(usize),
    #[error("constant on line {line} has bit {bit}, expected 0 or 1")]
    BadConstant { line: u32, bit: u8 },
    #[error("gate {id}: role {role} is not a configuration of a {kind} gate")]
    BadRole {
        id: u32,
        kind: GateKind,
        role: RoleName,
    },
}

pub fn to_document(netlist: &Netlist) -> NetlistDocument {
    NetlistDocument {
        format: FORMAT_NAME.to_string(),
        version: FORMAT_VERSION,
        name: netlist.name().to_string(),
        inputs: netlist
            .primary_inputs()
            .iter()
            .zip(netlist.input_labels())
            .map(|(l, label)| PortRecord {
                label: label.clone(),
                line: l.0,
            })
            .collect(),
        outputs: netlist
            .output_slots()
            .iter()
            .enumerate()
            .filter_map(|(index, slot)| {
                slot.map(|l| OutputRecord {
                    index,
                    label: netlist.output_label(index),
                    line: l.0,
                })
            })
            .collect(),
        constants: netlist
            .constant_lines()
            .iter()
            .map(|&l| ConstantRecord {
                line: l.0,
                bit: matches!(netlist.lines()[l.index()].driver, Driver::Constant(true)) as u8,
            })
            .collect(),
        gates: netlist
            .gates()
            .iter()
            .map(|g| GateRecord {
                id: g.id.0,
                kind: g.kind,
                role: g.role,
                plane: g.plane,
                inputs: g.inputs.iter().map(|l| l.0).collect(),
                outputs: g.outputs.iter().map(|l| l.0).collect(),
            })
            .collect(),
    }
}

/// Pretty JSON with a trailing newline. Field and record order are fixed, so
/// equal netlists serialize to identical bytes.
pub fn serialize_netlist(netlist: &Netlist) -> String {
    let mut text =
        serde_json::to_string_pretty(&to_document(netlist)).expect("document serializes");
    text.push('\n');
    text
}

pub fn deserialize_netlist(text: &str) -> Result<Netlist, DocumentError> {
    from_document(serde_json::from_str(text)?)
}

/// Rebuilds a netlist from a document. Line and gate ids are renumbered
/// densely in ascending order. Fan-out and feedback are not rejected here;
/// they surface through [`Netlist::validate`].
pub fn from_document(doc: NetlistDocument) -> Result<Netlist, DocumentError> {
    if doc.format != FORMAT_NAME {
        return Err(DocumentError::Format { found: doc.format });
    }
    if doc.version != FORMAT_VERSION {
        return Err(DocumentError::Version { found: doc.version });
    }

    let mut gate_records: Vec<&GateRecord> = doc.gates.iter().collect();
    gate_records.sort_by_key(|g| g.id);
    for pair in gate_records.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(DocumentError::DuplicateGate(pair[0].id));
        }
    }
    for g in &gate_records {
        if GateRole::from_parts(g.kind, g.role).is_none() {
            return Err(DocumentError::BadRole {
                id: g.id,
                kind: g.kind,
                role: g.role,
            });
        }
    }
    let gate_index: BTreeMap<u32, GateId> = gate_records
        .iter()
        .enumerate()
        .map(|(i, g)| (g.id, GateId(i as u32)))
        .collect();

    let mut drivers: BTreeMap<u32, Driver> = BTreeMap::new();
    let mut drive = |line: u32, driver: Driver| -> Result<(), DocumentError> {
        if drivers.insert(line, driver).is_some() {
            return Err(DocumentError::MultipleDrivers(line));
        }
        Ok(())
    };
    for (i, port) in doc.inputs.iter().enumerate() {
        drive(port.line, Driver::PrimaryInput(i))?;
    }
    for c in &doc.constants {
        if c.bit > 1 {
            return Err(DocumentError::BadConstant {
                line: c.line,
                bit: c.bit,
            });
        }
        drive(c.line, Driver::Constant(c.bit == 1))?;
    }
    for g in &gate_records {
        for (pin, &line) in g.outputs.iter().enumerate() {
            drive(
                line,
                Driver::GatePin {
                    gate: gate_index[&g.id],
                    pin,
                },
            )?;
        }
    }

    let mut referenced: BTreeSet<u32> = drivers.keys().copied().collect();
    referenced.extend(gate_records.iter().flat_map(|g| g.inputs.iter().copied()));
    referenced.extend(doc.outputs.iter().map(|o| o.line));
    if let Some(&line) = referenced.iter().find(|l| !drivers.contains_key(l)) {
        return Err(DocumentError::DanglingLine(line));
    }
    let remap: BTreeMap<u32, LineId> = referenced
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, LineId(i as u32)))
        .collect();

    let mut lines: Vec<Line> = referenced
        .iter()
        .map(|l| Line {
            id: remap[l],
            driver: match drivers[l] {
                Driver::GatePin { gate, pin } => Driver::GatePin { gate, pin },
                other => other,
            },
            consumer: Consumer::Unconsumed,
        })
        .collect();

    let mut consume = |line: LineId, consumer: Consumer| {
        let slot = &mut lines[line.index()].consumer;
        if *slot == Consumer::Unconsumed {
            *slot = consumer;
        }
    };
    let gates: Vec<GateInstance> = gate_records
        .iter()
        .map(|g| {
            let id = gate_index[&g.id];
            let inputs: Vec<LineId> = g.inputs.iter().map(|l| remap[l]).collect();
            for (pin, &l) in inputs.iter().enumerate() {
                consume(l, Consumer::GatePin { gate: id, pin });
            }
            GateInstance {
                id,
                kind: g.kind,
                role: g.role,
                plane: g.plane,
                inputs,
                outputs: g.outputs.iter().map(|l| remap[l]).collect(),
            }
        })
        .collect();

    let mut outputs: Vec<Option<LineId>> = Vec::new();
    let mut output_labels: Vec<String> = Vec::new();
    for o in &doc.outputs {
        if outputs.len() <= o.index {
            outputs.resize(o.index + 1, None);
            output_labels.resize(o.index + 1, String::new());
        }
        if outputs[o.index].is_some() {
            return Err(DocumentError::DuplicateOutput(o.index));
        }
        let line = remap[&o.line];
        outputs[o.index] = Some(line);
        output_labels[o.index] = o.label.clone();
        consume(line, Consumer::PrimaryOutput(o.index));
    }
    for (i, label) in output_labels.iter_mut().enumerate() {
        if label.is_empty() {
            *label = format!("f{i}");
        }
    }

    Ok(Netlist {
        name: doc.name,
        input_labels: doc.inputs.iter().map(|p| p.label.clone()).collect(),
        output_labels,
        lines,
        primary_inputs: doc.inputs.iter().map(|p| remap[&p.line]).collect(),
        constant_lines: doc.constants.iter().map(|c| remap[&c.line]).collect(),
        gates,
        outputs,
        plane_cursor: None,
    })
}

const OUT_PINS: [&str; 3] = ["P", "Q", "R"];
const IN_PINS: [&str; 3] = ["A", "B", "C"];

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz digraph: one node per primary input, constant, gate and primary
/// output, a shared sink for unconsumed lines, and one edge per line.
pub fn emit_dot(netlist: &Netlist) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(netlist.name()));
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [fontname=\"Helvetica\"];");
    for (i, label) in netlist.input_labels().iter().enumerate() {
        let _ = writeln!(
            out,
            "  in{i} [label=\"{}\", shape=invhouse];",
            dot_escape(label)
        );
    }
    for &l in netlist.constant_lines() {
        let bit = matches!(netlist.lines()[l.index()].driver, Driver::Constant(true)) as u8;
        let _ = writeln!(out, "  k{} [label=\"{bit}\", shape=plaintext];", l.0);
    }
    for g in netlist.gates() {
        let plane = g.plane.map(|p| format!("\\n{p} plane")).unwrap_or_default();
        let _ = writeln!(
            out,
            "  g{} [label=\"{} {}\\n{}{plane}\", shape=box];",
            g.id.0, g.kind, g.id.0, g.role
        );
    }
    for (j, slot) in netlist.output_slots().iter().enumerate() {
        if slot.is_some() {
            let label = dot_escape(&netlist.output_label(j));
            let _ = writeln!(out, "  out{j} [label=\"{label}\", shape=house];");
        }
    }
    let has_sink = netlist
        .lines()
        .iter()
        .any(|l| l.consumer == Consumer::Unconsumed);
    if has_sink {
        let _ = writeln!(
            out,
            "  unconsumed [label=\"unconsumed\", shape=doublecircle];"
        );
    }
    for line in netlist.lines() {
        let (src, tail) = match line.driver {
            Driver::PrimaryInput(i) => (format!("in{i}"), ""),
            Driver::Constant(_) => (format!("k{}", line.id.0), ""),
            Driver::GatePin { gate, pin } => (
                format!("g{}", gate.0),
                OUT_PINS.get(pin).copied().unwrap_or("?"),
            ),
        };
        let (dst, head) = match line.consumer {
            Consumer::GatePin { gate, pin } => (
                format!("g{}", gate.0),
                IN_PINS.get(pin).copied().unwrap_or("?"),
            ),
            Consumer::PrimaryOutput(j) => (format!("out{j}"), ""),
            Consumer::Unconsumed => ("unconsumed".to_string(), ""),
        };
        let pins = match (tail, head) {
            ("", "") => String::new(),
            (t, "") => format!(" {t}"),
            ("", h) => format!(" →{h}"),
            (t, h) => format!(" {t}→{h}"),
        };
        let _ = writeln!(out, "  {src} -> {dst} [label=\"{}{pins}\"];", line.id);
    }
    out.push_str("}\n");
    out
}
