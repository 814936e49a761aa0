//! Reversible netlists: gates wired by single-driver, single-consumer lines.
//!
//! The builder refuses to consume a line twice, so netlists built through
//! [`Netlist::add_gate`] are fan-out free and acyclic by construction.
//! [`Netlist::validate`] re-derives both properties from the gate records so
//! netlists assembled from documents are checked too.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{GateKind, GateRole, GateSpec, RoleName};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub u32);

impl LineId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl GateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Driver {
    PrimaryInput(usize),
    Constant(bool),
    GatePin { gate: GateId, pin: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consumer {
    GatePin { gate: GateId, pin: usize },
    PrimaryOutput(usize),
    Unconsumed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub id: LineId,
    pub driver: Driver,
    pub consumer: Consumer,
}

/// Which half of a PLA a gate belongs to. Literal copying counts as AND plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    And,
    Or,
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::And => "AND",
            Plane::Or => "OR",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateInstance {
    pub id: GateId,
    pub kind: GateKind,
    pub role: RoleName,
    pub plane: Option<Plane>,
    pub inputs: Vec<LineId>,
    pub outputs: Vec<LineId>,
}

impl GateInstance {
    pub fn spec(&self) -> &'static GateSpec {
        self.kind.spec()
    }

    /// Falls back to a raw role if the kind/role pair is not a known configuration.
    pub fn gate_role(&self) -> GateRole {
        GateRole::from_parts(self.kind, self.role).unwrap_or_else(|| GateRole::raw(self.kind))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetlistError {
    #[error("line {0} is already consumed (fan-out is not permitted)")]
    FanOutViolation(LineId),
    #[error("unknown line {0}")]
    UnknownLine(LineId),
    #[error("{kind} gate takes {expected} input lines, got {found}")]
    WidthMismatch {
        kind: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("primary output {0} is already assigned")]
    OutputAlreadyMarked(usize),
    #[error("feedback loop through gates {0:?}")]
    FeedbackViolation(Vec<GateId>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    FanOutViolation,
    FeedbackViolation,
    UnknownLine,
    WidthMismatch,
    DriverMismatch,
    ConsumerMismatch,
    MissingOutput,
}

/// One invariant violation found by [`Netlist::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub lines: Vec<LineId>,
    pub gates: Vec<GateId>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    pub(crate) name: String,
    pub(crate) input_labels: Vec<String>,
    pub(crate) output_labels: Vec<String>,
    pub(crate) lines: Vec<Line>,
    pub(crate) primary_inputs: Vec<LineId>,
    pub(crate) constant_lines: Vec<LineId>,
    pub(crate) gates: Vec<GateInstance>,
    pub(crate) outputs: Vec<Option<LineId>>,
    pub(crate) plane_cursor: Option<Plane>,
}

impl Netlist {
    pub fn new(n_inputs: usize) -> Self {
        let mut netlist = Netlist {
            name: String::from("netlist"),
            input_labels: (0..n_inputs).map(default_input_label).collect(),
            output_labels: Vec::new(),
            lines: Vec::new(),
            primary_inputs: Vec::new(),
            constant_lines: Vec::new(),
            gates: Vec::new(),
            outputs: Vec::new(),
            plane_cursor: None,
        };
        for i in 0..n_inputs {
            let id = netlist.push_line(Driver::PrimaryInput(i));
            netlist.primary_inputs.push(id);
        }
        netlist
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn input_labels(&self) -> &[String] {
        &self.input_labels
    }

    pub fn output_labels(&self) -> &[String] {
        &self.output_labels
    }

    pub fn set_input_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.primary_inputs.len());
        self.input_labels = labels;
    }

    /// Labels for outputs; indices beyond `labels` fall back to `f<index>`.
    pub fn set_output_labels(&mut self, labels: Vec<String>) {
        self.output_labels = labels;
    }

    pub fn output_label(&self, index: usize) -> String {
        self.output_labels
            .get(index)
            .cloned()
            .unwrap_or_else(|| format!("f{index}"))
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line(&self, id: LineId) -> Option<&Line> {
        self.lines.get(id.index())
    }

    pub fn gates(&self) -> &[GateInstance] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> Option<&GateInstance> {
        self.gates.get(id.index())
    }

    pub fn primary_inputs(&self) -> &[LineId] {
        &self.primary_inputs
    }

    pub fn constant_lines(&self) -> &[LineId] {
        &self.constant_lines
    }

    pub fn n_inputs(&self) -> usize {
        self.primary_inputs.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.outputs.len()
    }

    /// Output lines in index order; unassigned slots are skipped.
    pub fn primary_outputs(&self) -> Vec<LineId> {
        self.outputs.iter().flatten().copied().collect()
    }

    pub fn output_slots(&self) -> &[Option<LineId>] {
        &self.outputs
    }

    /// Lines nobody consumes and that are not primary outputs, ascending.
    pub fn unconsumed_lines(&self) -> Vec<LineId> {
        self.lines
            .iter()
            .filter(|l| l.consumer == Consumer::Unconsumed)
            .map(|l| l.id)
            .collect()
    }

    /// Plane tag applied to gates added from now on.
    pub fn set_plane(&mut self, plane: Option<Plane>) {
        self.plane_cursor = plane;
    }

    fn push_line(&mut self, driver: Driver) -> LineId {
        let id = LineId(self.lines.len() as u32);
        self.lines.push(Line {
            id,
            driver,
            consumer: Consumer::Unconsumed,
        });
        id
    }

    pub fn add_constant(&mut self, bit: bool) -> LineId {
        let id = self.push_line(Driver::Constant(bit));
        self.constant_lines.push(id);
        id
    }

    fn check_free(&self, id: LineId) -> Result<(), NetlistError> {
        match self.line(id) {
            None => Err(NetlistError::UnknownLine(id)),
            Some(line) if line.consumer != Consumer::Unconsumed => {
                Err(NetlistError::FanOutViolation(id))
            }
            Some(_) => Ok(()),
        }
    }

    /// Appends a gate consuming `inputs` (pin order) and returns its fresh output lines.
    pub fn add_gate(
        &mut self,
        kind: GateKind,
        role: RoleName,
        inputs: &[LineId],
    ) -> Result<Vec<LineId>, NetlistError> {
        if inputs.len() != kind.width() {
            return Err(NetlistError::WidthMismatch {
                kind,
                expected: kind.width(),
                found: inputs.len(),
            });
        }
        for (i, &id) in inputs.iter().enumerate() {
            self.check_free(id)?;
            if inputs[..i].contains(&id) {
                return Err(NetlistError::FanOutViolation(id));
            }
        }
        let gate = GateId(self.gates.len() as u32);
        for (pin, &id) in inputs.iter().enumerate() {
            self.lines[id.index()].consumer = Consumer::GatePin { gate, pin };
        }
        let outputs: Vec<LineId> = (0..kind.width())
            .map(|pin| self.push_line(Driver::GatePin { gate, pin }))
            .collect();
        self.gates.push(GateInstance {
            id: gate,
            kind,
            role,
            plane: self.plane_cursor,
            inputs: inputs.to_vec(),
            outputs: outputs.clone(),
        });
        Ok(outputs)
    }

    /// Instantiates `role`, creating its constant lines, with `free` wired to
    /// the non-constant pins in ascending pin order. Returns all output lines.
    pub fn add_role(
        &mut self,
        role: &GateRole,
        free: &[LineId],
    ) -> Result<Vec<LineId>, NetlistError> {
        let free_pins = role.free_pins();
        if free_pins.len() != free.len() {
            return Err(NetlistError::WidthMismatch {
                kind: role.base,
                expected: free_pins.len(),
                found: free.len(),
            });
        }
        for &id in free {
            self.check_free(id)?;
        }
        let mut pins = vec![LineId(0); role.base.width()];
        for &(pin, bit) in &role.constant_pins {
            pins[pin] = self.add_constant(bit);
        }
        for (&pin, &id) in free_pins.iter().zip(free) {
            pins[pin] = id;
        }
        self.add_gate(role.base, role.name, &pins)
    }

    pub fn mark_output(&mut self, line: LineId, index: usize) -> Result<(), NetlistError> {
        self.check_free(line)?;
        if self.outputs.get(index).is_some_and(|slot| slot.is_some()) {
            return Err(NetlistError::OutputAlreadyMarked(index));
        }
        if self.outputs.len() <= index {
            self.outputs.resize(index + 1, None);
        }
        self.outputs[index] = Some(line);
        self.lines[line.index()].consumer = Consumer::PrimaryOutput(index);
        Ok(())
    }

    /// Gate ids such that every gate follows the gates driving its inputs.
    /// Ties are broken by ascending id.
    pub fn topo_order(&self) -> Result<Vec<GateId>, NetlistError> {
        let mut driver_gate: Vec<Option<usize>> = vec![None; self.lines.len()];
        for (g, gate) in self.gates.iter().enumerate() {
            for &out in &gate.outputs {
                if let Some(slot) = driver_gate.get_mut(out.index()) {
                    *slot = Some(g);
                }
            }
        }
        let mut indegree = vec![0usize; self.gates.len()];
        let mut successors: Vec<Vec<usize>> = vec![Vec::new(); self.gates.len()];
        for (g, gate) in self.gates.iter().enumerate() {
            for &inp in &gate.inputs {
                if let Some(Some(d)) = driver_gate.get(inp.index()) {
                    successors[*d].push(g);
                    indegree[g] += 1;
                }
            }
        }
        let mut ready: BinaryHeap<Reverse<(GateId, usize)>> = indegree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(g, _)| Reverse((self.gates[g].id, g)))
            .collect();
        let mut order = Vec::with_capacity(self.gates.len());
        while let Some(Reverse((id, g))) = ready.pop() {
            order.push(id);
            for &s in &successors[g] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.push(Reverse((self.gates[s].id, s)));
                }
            }
        }
        if order.len() != self.gates.len() {
            let stuck = indegree
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(g, _)| self.gates[g].id)
                .collect();
            return Err(NetlistError::FeedbackViolation(stuck));
        }
        Ok(order)
    }

    /// Re-derives every structural invariant from the gate records.
    /// Returns one diagnostic per violation; empty means valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        let n_lines = self.lines.len();
        let known = |id: LineId| id.index() < n_lines;

        for (i, line) in self.lines.iter().enumerate() {
            if line.id.index() != i {
                diags.push(diag(
                    DiagnosticKind::UnknownLine,
                    vec![line.id],
                    vec![],
                    format!("line stored at slot {i} carries id {}", line.id),
                ));
            }
        }

        let mut drivers: Vec<Vec<Driver>> = vec![Vec::new(); n_lines];
        let mut consumers: Vec<Vec<Consumer>> = vec![Vec::new(); n_lines];
        let record_unknown = |diags: &mut Vec<Diagnostic>, id: LineId, gate: Option<GateId>| {
            diags.push(diag(
                DiagnosticKind::UnknownLine,
                vec![id],
                gate.into_iter().collect(),
                format!("reference to unknown line {id}"),
            ));
        };

        for (i, &id) in self.primary_inputs.iter().enumerate() {
            if known(id) {
                drivers[id.index()].push(Driver::PrimaryInput(i));
            } else {
                record_unknown(&mut diags, id, None);
            }
        }
        for &id in &self.constant_lines {
            if !known(id) {
                record_unknown(&mut diags, id, None);
                continue;
            }
            match self.lines[id.index()].driver {
                Driver::Constant(bit) => drivers[id.index()].push(Driver::Constant(bit)),
                _ => diags.push(diag(
                    DiagnosticKind::DriverMismatch,
                    vec![id],
                    vec![],
                    format!("constant list names {id}, which is not constant-driven"),
                )),
            }
        }
        for gate in &self.gates {
            let width = gate.kind.width();
            if gate.inputs.len() != width || gate.outputs.len() != width {
                diags.push(diag(
                    DiagnosticKind::WidthMismatch,
                    vec![],
                    vec![gate.id],
                    format!(
                        "{} gate {} has {} inputs and {} outputs, expected {width}",
                        gate.kind,
                        gate.id,
                        gate.inputs.len(),
                        gate.outputs.len()
                    ),
                ));
            }
            for (pin, &id) in gate.inputs.iter().enumerate() {
                if known(id) {
                    consumers[id.index()].push(Consumer::GatePin { gate: gate.id, pin });
                } else {
                    record_unknown(&mut diags, id, Some(gate.id));
                }
            }
            for (pin, &id) in gate.outputs.iter().enumerate() {
                if known(id) {
                    drivers[id.index()].push(Driver::GatePin { gate: gate.id, pin });
                } else {
                    record_unknown(&mut diags, id, Some(gate.id));
                }
            }
        }
        for (index, slot) in self.outputs.iter().enumerate() {
            match slot {
                None => diags.push(diag(
                    DiagnosticKind::MissingOutput,
                    vec![],
                    vec![],
                    format!("primary output {index} is not assigned"),
                )),
                Some(id) if known(*id) => {
                    consumers[id.index()].push(Consumer::PrimaryOutput(index))
                }
                Some(id) => record_unknown(&mut diags, *id, None),
            }
        }

        for line in &self.lines {
            let i = line.id.index();
            if i >= n_lines {
                continue;
            }
            // Constant-driven lines are recorded from the line itself when the
            // constant list omits them.
            if drivers[i].is_empty() {
                if let Driver::Constant(_) = line.driver {
                    diags.push(diag(
                        DiagnosticKind::DriverMismatch,
                        vec![line.id],
                        vec![],
                        format!("constant line {} missing from the constant list", line.id),
                    ));
                    continue;
                }
            }
            match drivers[i].as_slice() {
                [d] if *d == line.driver => {}
                [] => diags.push(diag(
                    DiagnosticKind::DriverMismatch,
                    vec![line.id],
                    vec![],
                    format!("line {} has no driver", line.id),
                )),
                [d] => diags.push(diag(
                    DiagnosticKind::DriverMismatch,
                    vec![line.id],
                    gate_of_driver(d).into_iter().collect(),
                    format!(
                        "line {} records driver {:?} but is driven by {:?}",
                        line.id, line.driver, d
                    ),
                )),
                many => diags.push(diag(
                    DiagnosticKind::DriverMismatch,
                    vec![line.id],
                    many.iter().filter_map(gate_of_driver).collect(),
                    format!("line {} has {} drivers", line.id, many.len()),
                )),
            }
            match consumers[i].as_slice() {
                [] if line.consumer == Consumer::Unconsumed => {}
                [c] if *c == line.consumer => {}
                [] | [_] => diags.push(diag(
                    DiagnosticKind::ConsumerMismatch,
                    vec![line.id],
                    vec![],
                    format!(
                        "line {} records consumer {:?} but gate records disagree",
                        line.id, line.consumer
                    ),
                )),
                many => diags.push(diag(
                    DiagnosticKind::FanOutViolation,
                    vec![line.id],
                    many.iter().filter_map(gate_of_consumer).collect(),
                    format!("line {} feeds {} consumers", line.id, many.len()),
                )),
            }
        }

        let references_ok = !diags.iter().any(|d| {
            matches!(
                d.kind,
                DiagnosticKind::UnknownLine | DiagnosticKind::WidthMismatch
            )
        });
        if references_ok {
            if let Err(NetlistError::FeedbackViolation(gates)) = self.topo_order() {
                let message = format!("gates {gates:?} form a feedback loop");
                diags.push(diag(
                    DiagnosticKind::FeedbackViolation,
                    vec![],
                    gates,
                    message,
                ));
            }
        }
        diags
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

fn default_input_label(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

fn gate_of_driver(d: &Driver) -> Option<GateId> {
    match d {
        Driver::GatePin { gate, .. } => Some(*gate),
        _ => None,
    }
}

fn gate_of_consumer(c: &Consumer) -> Option<GateId> {
    match c {
        Consumer::GatePin { gate, .. } => Some(*gate),
        _ => None,
    }
}

fn diag(
    kind: DiagnosticKind,
    lines: Vec<LineId>,
    gates: Vec<GateId>,
    message: String,
) -> Diagnostic {
    Diagnostic {
        kind,
        lines,
        gates,
        message,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_netlist_has_free_inputs() {
        let n = Netlist::new(3);
        assert_eq!(n.primary_inputs().len(), 3);
        assert!(n.gates().is_empty());
        assert_eq!(n.unconsumed_lines().len(), 3);
        assert!(n.validate().is_empty());
    }

    #[test]
    fn copier_then_and() {
        let mut n = Netlist::new(2);
        let [a, b] = [n.primary_inputs()[0], n.primary_inputs()[1]];
        let copies = n.add_role(&GateRole::copier(), &[a]).unwrap();
        n.add_role(&GateRole::and(GateKind::Mux), &[copies[0], b])
            .unwrap();
        assert_eq!(n.gates().len(), 2);
        let gate_outputs: usize = n.gates().iter().map(|g| g.outputs.len()).sum();
        assert_eq!(gate_outputs, 5);
        // Two constants plus five gate outputs.
        assert_eq!(n.lines().len() - 2, 7);
        assert!(n.validate().is_empty());
        assert_eq!(n.topo_order().unwrap(), [GateId(0), GateId(1)]);
    }

    #[test]
    fn consuming_twice_is_fan_out() {
        let mut n = Netlist::new(2);
        let a = n.primary_inputs()[0];
        n.add_role(&GateRole::copier(), &[a]).unwrap();
        let err = n.add_role(&GateRole::not(), &[a]).unwrap_err();
        assert_eq!(err, NetlistError::FanOutViolation(a));
        let b = n.primary_inputs()[1];
        let c = n.add_constant(false);
        let err = n
            .add_gate(GateKind::Mux, RoleName::Raw, &[b, b, c])
            .unwrap_err();
        assert_eq!(err, NetlistError::FanOutViolation(b));
        // Failed calls leave the netlist untouched.
        assert_eq!(n.gates().len(), 1);
        assert!(n.validate().is_empty());
    }

    #[test]
    fn builder_errors() {
        let mut n = Netlist::new(1);
        let a = n.primary_inputs()[0];
        assert_eq!(
            n.add_gate(GateKind::Feynman, RoleName::Raw, &[a])
                .unwrap_err(),
            NetlistError::WidthMismatch {
                kind: GateKind::Feynman,
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            n.add_role(&GateRole::not(), &[LineId(9)]).unwrap_err(),
            NetlistError::UnknownLine(LineId(9))
        );
        n.mark_output(a, 0).unwrap();
        assert_eq!(
            n.mark_output(a, 1).unwrap_err(),
            NetlistError::FanOutViolation(a)
        );
        let c = n.add_constant(true);
        assert_eq!(
            n.mark_output(c, 0).unwrap_err(),
            NetlistError::OutputAlreadyMarked(0)
        );
    }

    #[test]
    fn validate_catches_fan_out_backdoor() {
        let mut n = Netlist::new(2);
        let [a, b] = [n.primary_inputs()[0], n.primary_inputs()[1]];
        n.add_role(&GateRole::not(), &[a]).unwrap();
        n.add_role(&GateRole::not(), &[b]).unwrap();
        n.gates[1].inputs[0] = a;
        let kinds: Vec<_> = n.validate().into_iter().map(|d| d.kind).collect();
        assert!(
            kinds.contains(&DiagnosticKind::FanOutViolation),
            "{kinds:?}"
        );
    }

    #[test]
    fn validate_catches_feedback_backdoor() {
        let mut n = Netlist::new(2);
        let [a, b] = [n.primary_inputs()[0], n.primary_inputs()[1]];
        let o0 = n.add_role(&GateRole::not(), &[a]).unwrap();
        let o1 = n.add_role(&GateRole::not(), &[b]).unwrap();
        // g0 now reads g1's output and g1 reads g0's output.
        n.gates[0].inputs[0] = o1[0];
        n.gates[1].inputs[0] = o0[0];
        n.lines[a.index()].consumer = Consumer::Unconsumed;
        n.lines[b.index()].consumer = Consumer::Unconsumed;
        n.lines[o1[0].index()].consumer = Consumer::GatePin {
            gate: GateId(0),
            pin: 0,
        };
        n.lines[o0[0].index()].consumer = Consumer::GatePin {
            gate: GateId(1),
            pin: 0,
        };
        let diags = n.validate();
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert_eq!(diags[0].kind, DiagnosticKind::FeedbackViolation);
        assert!(matches!(
            n.topo_order(),
            Err(NetlistError::FeedbackViolation(_))
        ));
    }

    #[test]
    fn validate_reports_missing_output() {
        let mut n = Netlist::new(1);
        let a = n.primary_inputs()[0];
        n.mark_output(a, 1).unwrap();
        let diags = n.validate();
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].kind, DiagnosticKind::MissingOutput);
    }

    #[test]
    fn topo_order_is_independent_of_insertion_order() {
        let mut n = Netlist::new(3);
        let ins = n.primary_inputs().to_vec();
        let x = n.add_role(&GateRole::not(), &[ins[0]]).unwrap();
        let y = n.add_role(&GateRole::not(), &[ins[1]]).unwrap();
        let z = n.add_role(&GateRole::copier(), &[ins[2]]).unwrap();
        n.add_role(&GateRole::and(GateKind::Mux), &[x[1], y[1]])
            .unwrap();
        n.add_role(&GateRole::or(GateKind::Mux), &[z[0], z[1]])
            .unwrap();
        let expected = n.topo_order().unwrap();
        assert_eq!(
            expected,
            [GateId(0), GateId(1), GateId(2), GateId(3), GateId(4)]
        );
        let mut shuffled = n.clone();
        for perm in [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3], [1, 3, 0, 4, 2]] {
            shuffled.gates = perm.iter().map(|&i| n.gates[i].clone()).collect();
            assert_eq!(shuffled.topo_order().unwrap(), expected);
        }
    }

    #[test]
    fn single_gate_order() {
        let mut n = Netlist::new(1);
        let a = n.primary_inputs()[0];
        n.add_role(&GateRole::copier(), &[a]).unwrap();
        assert_eq!(n.topo_order().unwrap(), [GateId(0)]);
    }
}
