//! Reversible cost metrics: gate counts, quantum cost (QC), constant inputs
//! (CI), garbage outputs (GO) and total logical calculation (T).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::gates::GateKind;
use crate::netlist::{Consumer, Driver, GateInstance, Netlist, Plane};
use crate::pla::PlaSpec;
use crate::synth::{synthesize, Backend, SynthError, SynthOptions};

/// Counts of two-input XOR (alpha), two-input AND (beta) and NOT (delta)
/// operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct LogicCalc {
    pub alpha: u64,
    pub beta: u64,
    pub delta: u64,
}

impl LogicCalc {
    pub const ZERO: LogicCalc = LogicCalc::new(0, 0, 0);

    pub const fn new(alpha: u64, beta: u64, delta: u64) -> Self {
        LogicCalc { alpha, beta, delta }
    }

    pub fn scale(self, k: u64) -> Self {
        LogicCalc::new(self.alpha * k, self.beta * k, self.delta * k)
    }

    pub fn total(self) -> u64 {
        self.alpha + self.beta + self.delta
    }
}

impl Add for LogicCalc {
    type Output = LogicCalc;

    fn add(self, rhs: LogicCalc) -> LogicCalc {
        LogicCalc::new(
            self.alpha + rhs.alpha,
            self.beta + rhs.beta,
            self.delta + rhs.delta,
        )
    }
}

impl AddAssign for LogicCalc {
    fn add_assign(&mut self, rhs: LogicCalc) {
        *self = *self + rhs;
    }
}

impl Sum for LogicCalc {
    fn sum<I: Iterator<Item = LogicCalc>>(iter: I) -> Self {
        iter.fold(LogicCalc::ZERO, Add::add)
    }
}

impl fmt::Display for LogicCalc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}α + {}β + {}δ", self.alpha, self.beta, self.delta)
    }
}

/// Attached to garbage counts so readers can reconcile them with the
/// zero-garbage figure published for the reference RPLA.
pub const GARBAGE_NOTE: &str = "the published reference RPLA reports 0 garbage outputs by \
counting every Feynman output as reused; this figure is the structural count of gate outputs \
that are neither consumed nor primary outputs";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub gates_by_kind: BTreeMap<GateKind, usize>,
    pub gate_total: usize,
    pub quantum_cost: u64,
    pub constant_inputs: usize,
    pub garbage_strict: usize,
    pub garbage_note: Option<String>,
    pub logic_calc: LogicCalc,
    pub plane_breakdown: Option<PlaneBreakdown>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneBreakdown {
    pub and_plane: Box<CostReport>,
    pub or_plane: Box<CostReport>,
}

pub fn quantum_cost(netlist: &Netlist) -> u64 {
    netlist.gates().iter().map(|g| g.spec().quantum_cost).sum()
}

/// Constant-driven lines consumed by gates.
pub fn constant_inputs(netlist: &Netlist) -> usize {
    constant_inputs_of(netlist, netlist.gates().iter())
}

/// Unconsumed, non-primary gate outputs, plus the reconciliation note when nonzero.
pub fn garbage_outputs(netlist: &Netlist) -> (usize, Option<String>) {
    let strict = netlist
        .lines()
        .iter()
        .filter(|l| {
            matches!(l.driver, Driver::GatePin { .. }) && l.consumer == Consumer::Unconsumed
        })
        .count();
    (strict, (strict > 0).then(|| GARBAGE_NOTE.to_string()))
}

pub fn total_logical_calculation(netlist: &Netlist) -> LogicCalc {
    netlist
        .gates()
        .iter()
        .map(|g| g.spec().logic_signature)
        .sum()
}

fn constant_inputs_of<'a>(
    netlist: &Netlist,
    gates: impl Iterator<Item = &'a GateInstance>,
) -> usize {
    gates
        .flat_map(|g| &g.inputs)
        .filter(|l| matches!(netlist.lines()[l.index()].driver, Driver::Constant(_)))
        .count()
}

fn base_report<'a>(
    netlist: &Netlist,
    gates: impl Iterator<Item = &'a GateInstance> + Clone,
    garbage_strict: usize,
) -> CostReport {
    let mut gates_by_kind: BTreeMap<GateKind, usize> =
        GateKind::ALL.iter().map(|&k| (k, 0)).collect();
    for g in gates.clone() {
        *gates_by_kind.entry(g.kind).or_default() += 1;
    }
    CostReport {
        gate_total: gates_by_kind.values().sum(),
        quantum_cost: gates_by_kind
            .iter()
            .map(|(k, &c)| k.quantum_cost() * c as u64)
            .sum(),
        constant_inputs: constant_inputs_of(netlist, gates.clone()),
        garbage_strict,
        garbage_note: (garbage_strict > 0).then(|| GARBAGE_NOTE.to_string()),
        logic_calc: gates.map(|g| g.spec().logic_signature).sum(),
        gates_by_kind,
        plane_breakdown: None,
    }
}

/// Metrics for the gates tagged with `plane`.
///
/// Within a plane, a gate's functional outputs that leave the plane unused
/// (e.g. unused minterms of a full AND plane) are plane ports rather than
/// garbage; only the non-functional byproducts count.
pub fn plane_report(netlist: &Netlist, plane: Plane) -> CostReport {
    let gates = netlist
        .gates()
        .iter()
        .filter(move |g| g.plane == Some(plane));
    let garbage = gates
        .clone()
        .map(|g| {
            let functional = g.gate_role().functional_outputs;
            g.outputs
                .iter()
                .enumerate()
                .filter(|(pin, l)| {
                    !functional.contains(pin)
                        && netlist.lines()[l.index()].consumer == Consumer::Unconsumed
                })
                .count()
        })
        .sum();
    base_report(netlist, gates, garbage)
}

pub fn cost_report(netlist: &Netlist) -> CostReport {
    let (garbage, _) = garbage_outputs(netlist);
    let mut report = base_report(netlist, netlist.gates().iter(), garbage);
    if netlist.gates().iter().any(|g| g.plane.is_some()) {
        report.plane_breakdown = Some(PlaneBreakdown {
            and_plane: Box::new(plane_report(netlist, Plane::And)),
            or_plane: Box::new(plane_report(netlist, Plane::Or)),
        });
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    Proposed,
    Existing,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Proposed => "proposed",
            Winner::Existing => "existing",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub scope: String,
    pub metric: String,
    pub proposed: u64,
    pub existing: u64,
    /// `existing - proposed`; positive means the proposed backend is cheaper.
    pub delta: i64,
    pub winner: Winner,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonTable {
    pub proposed_backend: Backend,
    pub existing_backend: Backend,
    pub full_plane: bool,
    pub proposed: CostReport,
    pub existing: CostReport,
    pub rows: Vec<ComparisonRow>,
    pub notes: Vec<String>,
}

impl ComparisonTable {
    pub fn row(&self, scope: &str, metric: &str) -> Option<&ComparisonRow> {
        self.rows
            .iter()
            .find(|r| r.scope == scope && r.metric == metric)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "proposed: {}   existing: {}   mode: {}",
            self.proposed_backend,
            self.existing_backend,
            if self.full_plane {
                "full plane"
            } else {
                "demand-driven"
            }
        );
        let headers = ["scope", "metric", "proposed", "existing", "delta", "winner"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.scope.clone(),
                    r.metric.clone(),
                    r.proposed.to_string(),
                    r.existing.to_string(),
                    r.delta.to_string(),
                    r.winner.to_string(),
                ]
            })
            .collect();
        let mut widths = headers.map(|h| h.chars().count());
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |out: &mut String, row: &[&str]| {
            let mut text = String::new();
            for (i, (cell, w)) in row.iter().zip(widths).enumerate() {
                if i > 0 {
                    text.push_str("  ");
                }
                // Text columns left-aligned, numbers right-aligned.
                if i < 2 || i == 5 {
                    let _ = write!(text, "{cell:<w$}");
                } else {
                    let _ = write!(text, "{cell:>w$}");
                }
            }
            let _ = writeln!(out, "{}", text.trim_end());
        };
        line(&mut out, &headers);
        for row in &cells {
            line(
                &mut out,
                &row.iter().map(String::as_str).collect::<Vec<_>>(),
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

type Metric = (&'static str, fn(&CostReport) -> u64);

fn push_rows(
    rows: &mut Vec<ComparisonRow>,
    scope: &str,
    proposed: &CostReport,
    existing: &CostReport,
) {
    let metrics: [Metric; 8] = [
        ("gates", |r| r.gate_total as u64),
        ("QC", |r| r.quantum_cost),
        ("CI", |r| r.constant_inputs as u64),
        ("GO(strict)", |r| r.garbage_strict as u64),
        ("T.alpha", |r| r.logic_calc.alpha),
        ("T.beta", |r| r.logic_calc.beta),
        ("T.delta", |r| r.logic_calc.delta),
        ("T.total", |r| r.logic_calc.total()),
    ];
    for (metric, get) in metrics {
        let (p, e) = (get(proposed), get(existing));
        rows.push(ComparisonRow {
            scope: scope.to_string(),
            metric: metric.to_string(),
            proposed: p,
            existing: e,
            delta: e as i64 - p as i64,
            winner: match p.cmp(&e) {
                std::cmp::Ordering::Less => Winner::Proposed,
                std::cmp::Ordering::Greater => Winner::Existing,
                std::cmp::Ordering::Equal => Winner::Tie,
            },
        });
    }
}

/// Side-by-side table for two already computed reports.
pub fn compare_reports(
    proposed_backend: Backend,
    proposed: CostReport,
    existing_backend: Backend,
    existing: CostReport,
    full_plane: bool,
) -> ComparisonTable {
    let mut rows = Vec::new();
    if let (Some(p), Some(e)) = (&proposed.plane_breakdown, &existing.plane_breakdown) {
        push_rows(&mut rows, "AND plane", &p.and_plane, &e.and_plane);
        push_rows(&mut rows, "OR plane", &p.or_plane, &e.or_plane);
    }
    push_rows(&mut rows, "total", &proposed, &existing);
    let mut notes = Vec::new();
    if proposed.garbage_strict > 0 || existing.garbage_strict > 0 {
        notes.push(GARBAGE_NOTE.to_string());
    }
    ComparisonTable {
        proposed_backend,
        existing_backend,
        full_plane,
        proposed,
        existing,
        rows,
        notes,
    }
}

/// Synthesizes `spec` with both backends and compares their costs.
pub fn compare_backends(
    spec: &PlaSpec,
    options: SynthOptions,
    proposed: Backend,
    existing: Backend,
) -> Result<ComparisonTable, SynthError> {
    let p = cost_report(&synthesize(spec, proposed, options)?);
    let e = cost_report(&synthesize(spec, existing, options)?);
    Ok(compare_reports(
        proposed,
        p,
        existing,
        e,
        options.full_plane,
    ))
}

/// MUX+Feynman (proposed) against Fredkin+Feynman (existing).
pub fn compare(spec: &PlaSpec, options: SynthOptions) -> Result<ComparisonTable, SynthError> {
    compare_backends(spec, options, Backend::MuxFeynman, Backend::FredkinFeynman)
}
