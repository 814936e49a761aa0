//! Exhaustive forward and inverse simulation of reversible netlists.
//!
//! Gates are applied as table lookups in topological order. The "full"
//! vectors used by the bijectivity and inverse routines are laid out as
//! primary inputs followed by constant lines (input side) and primary
//! outputs followed by unconsumed lines (output side).

use std::collections::HashMap;
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::gates::unpack;
use crate::netlist::{Consumer, Diagnostic, GateId, LineId, Netlist, NetlistError};
use crate::synth::MintermCover;

/// Largest input count accepted for `2^n` enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;
/// Bijectivity is checked exhaustively when inputs plus constants fit in this many bits.
pub const EXHAUSTIVE_BIJECTIVITY_LIMIT: usize = 20;
/// Random constant overrides tried when the exhaustive check is out of reach.
pub const BIJECTIVITY_SAMPLES: usize = 1000;
const SAMPLING_SEED: u64 = 0x5250_4c41;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("netlist is invalid: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Diagnostic>),
    #[error(transparent)]
    Structure(#[from] NetlistError),
    #[error("expected {expected} input bits, got {found}")]
    InputWidth { expected: usize, found: usize },
    #[error("expected {expected} constant overrides, got {found}")]
    OverrideWidth { expected: usize, found: usize },
    #[error("expected a full output vector of {expected} bits, got {found}")]
    OutputShape { expected: usize, found: usize },
    #[error("{what} needs {found} enumerated bits, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        found: usize,
        cap: usize,
    },
    #[error("netlist has {netlist_inputs} inputs and {netlist_outputs} outputs, reference has {reference_inputs} and {reference_outputs}")]
    ArityMismatch {
        netlist_inputs: usize,
        netlist_outputs: usize,
        reference_inputs: usize,
        reference_outputs: usize,
    },
}

/// Value of every line after a forward pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
    gates_evaluated: usize,
}

impl Assignment {
    pub fn get(&self, line: LineId) -> bool {
        self.values[line.index()]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn gates_evaluated(&self) -> usize {
        self.gates_evaluated
    }

    pub fn read(&self, lines: &[LineId]) -> Vec<bool> {
        lines.iter().map(|&l| self.get(l)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruthTable {
    pub n: usize,
    pub m: usize,
    /// `rows[v]` holds the outputs for input vector `v` (input 0 most significant).
    pub rows: Vec<Vec<bool>>,
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, row) in self.rows.iter().enumerate() {
            writeln!(f, "{} {}", bit_string(&unpack(v, self.n)), bit_string(row))?;
        }
        Ok(())
    }
}

pub fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// A netlist paired with a precomputed gate order.
struct Prepared<'a> {
    netlist: &'a Netlist,
    order: Vec<GateId>,
}

impl<'a> Prepared<'a> {
    fn validated(netlist: &'a Netlist) -> Result<Self, SimError> {
        let diags = netlist.validate();
        if !diags.is_empty() {
            return Err(SimError::Invalid(diags));
        }
        Self::unchecked(netlist)
    }

    /// Only requires an acyclic gate graph; line accounting is not checked.
    fn unchecked(netlist: &'a Netlist) -> Result<Self, SimError> {
        let order = netlist.topo_order()?;
        Ok(Prepared { netlist, order })
    }

    fn forward(&self, inputs: &[bool], constants: &[bool]) -> Assignment {
        let netlist = self.netlist;
        let mut values = vec![false; netlist.lines().len()];
        for (&line, &bit) in netlist.primary_inputs().iter().zip(inputs) {
            values[line.index()] = bit;
        }
        for (&line, &bit) in netlist.constant_lines().iter().zip(constants) {
            values[line.index()] = bit;
        }
        let mut gates_evaluated = 0;
        for &id in &self.order {
            let gate = &netlist.gates()[id.index()];
            let index = gate
                .inputs
                .iter()
                .fold(0, |acc, l| (acc << 1) | values[l.index()] as usize);
            let out = gate.spec().forward(index);
            let width = gate.outputs.len();
            for (pin, l) in gate.outputs.iter().enumerate() {
                values[l.index()] = (out >> (width - 1 - pin)) & 1 == 1;
            }
            gates_evaluated += 1;
        }
        Assignment {
            values,
            gates_evaluated,
        }
    }

    fn backward(&self, full_output: &[bool]) -> Vec<bool> {
        let netlist = self.netlist;
        let mut values = vec![false; netlist.lines().len()];
        for (&line, &bit) in full_output_lines(netlist).iter().zip(full_output) {
            values[line.index()] = bit;
        }
        for &id in self.order.iter().rev() {
            let gate = &netlist.gates()[id.index()];
            let index = gate
                .outputs
                .iter()
                .fold(0, |acc, l| (acc << 1) | values[l.index()] as usize);
            let inp = gate.spec().backward(index);
            let width = gate.inputs.len();
            for (pin, l) in gate.inputs.iter().enumerate() {
                values[l.index()] = (inp >> (width - 1 - pin)) & 1 == 1;
            }
        }
        full_input_lines(netlist)
            .iter()
            .map(|l| values[l.index()])
            .collect()
    }
}

fn declared_constants(netlist: &Netlist) -> Vec<bool> {
    netlist
        .constant_lines()
        .iter()
        .map(|&l| match netlist.lines()[l.index()].driver {
            crate::netlist::Driver::Constant(bit) => bit,
            _ => false,
        })
        .collect()
}

/// Primary inputs followed by constant lines.
pub fn full_input_lines(netlist: &Netlist) -> Vec<LineId> {
    let mut lines = netlist.primary_inputs().to_vec();
    lines.extend_from_slice(netlist.constant_lines());
    lines
}

/// Primary outputs followed by unconsumed lines, both ascending.
pub fn full_output_lines(netlist: &Netlist) -> Vec<LineId> {
    let mut lines = netlist.primary_outputs();
    lines.extend(
        netlist
            .lines()
            .iter()
            .filter(|l| l.consumer == Consumer::Unconsumed)
            .map(|l| l.id),
    );
    lines
}

fn check_inputs(netlist: &Netlist, inputs: &[bool]) -> Result<(), SimError> {
    if inputs.len() != netlist.n_inputs() {
        return Err(SimError::InputWidth {
            expected: netlist.n_inputs(),
            found: inputs.len(),
        });
    }
    Ok(())
}

/// Forward pass. `overrides` replaces the declared constant bits, in
/// constant-line order.
pub fn evaluate(
    netlist: &Netlist,
    inputs: &[bool],
    overrides: Option<&[bool]>,
) -> Result<Assignment, SimError> {
    check_inputs(netlist, inputs)?;
    let prepared = Prepared::validated(netlist)?;
    let constants = match overrides {
        Some(bits) if bits.len() != netlist.constant_lines().len() => {
            return Err(SimError::OverrideWidth {
                expected: netlist.constant_lines().len(),
                found: bits.len(),
            })
        }
        Some(bits) => bits.to_vec(),
        None => declared_constants(netlist),
    };
    Ok(prepared.forward(inputs, &constants))
}

/// Primary-output bits for one input vector.
pub fn simulate(netlist: &Netlist, inputs: &[bool]) -> Result<Vec<bool>, SimError> {
    Ok(evaluate(netlist, inputs, None)?.read(&netlist.primary_outputs()))
}

pub fn truth_table(netlist: &Netlist) -> Result<TruthTable, SimError> {
    truth_table_with_cap(netlist, DEFAULT_ENUMERATION_CAP)
}

pub fn truth_table_with_cap(netlist: &Netlist, cap: usize) -> Result<TruthTable, SimError> {
    let n = netlist.n_inputs();
    if n > cap {
        return Err(SimError::CapExceeded {
            what: "truth table",
            found: n,
            cap,
        });
    }
    let prepared = Prepared::validated(netlist)?;
    let constants = declared_constants(netlist);
    let outputs = netlist.primary_outputs();
    let rows = (0..1usize << n)
        .map(|v| prepared.forward(&unpack(v, n), &constants).read(&outputs))
        .collect();
    Ok(TruthTable {
        n,
        m: outputs.len(),
        rows,
    })
}

/// Recovers the full input vector (primary inputs then constants) from the
/// full output vector (primary outputs then unconsumed lines).
pub fn inverse_evaluate(netlist: &Netlist, full_output: &[bool]) -> Result<Vec<bool>, SimError> {
    let prepared = Prepared::validated(netlist)?;
    let expected = full_output_lines(netlist).len();
    if full_output.len() != expected {
        return Err(SimError::OutputShape {
            expected,
            found: full_output.len(),
        });
    }
    Ok(prepared.backward(full_output))
}

/// Full output vector produced by a full input vector.
pub fn full_forward(netlist: &Netlist, full_input: &[bool]) -> Result<Vec<bool>, SimError> {
    let n = netlist.n_inputs();
    let c = netlist.constant_lines().len();
    if full_input.len() != n + c {
        return Err(SimError::InputWidth {
            expected: n + c,
            found: full_input.len(),
        });
    }
    let prepared = Prepared::validated(netlist)?;
    let a = prepared.forward(&full_input[..n], &full_input[n..]);
    Ok(a.read(&full_output_lines(netlist)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum BijectivityMode {
    Exhaustive { vectors: u64 },
    Sampled { vectors: u64 },
}

impl fmt::Display for BijectivityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BijectivityMode::Exhaustive { vectors } => {
                write!(f, "exhaustive over {vectors} vectors")
            }
            BijectivityMode::Sampled { vectors } => write!(f, "sampled over {vectors} vectors"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectivityReport {
    pub bijective: bool,
    pub mode: BijectivityMode,
    /// Two full input vectors with the same full output.
    pub witness: Option<(Vec<bool>, Vec<bool>)>,
}

/// Checks that the map from (inputs, constants) to (outputs, unconsumed
/// lines) is injective, treating constants as free inputs.
///
/// Exhaustive when `n + c <= EXHAUSTIVE_BIJECTIVITY_LIMIT`. Otherwise the
/// declared-constant slice is enumerated and `BIJECTIVITY_SAMPLES` random
/// constant overrides (each with a random input vector) are added; every
/// sampled vector must also round-trip through the inverse pass.
pub fn check_circuit_bijective(netlist: &Netlist) -> Result<BijectivityReport, SimError> {
    let n = netlist.n_inputs();
    let c = netlist.constant_lines().len();
    let prepared = Prepared::unchecked(netlist)?;
    let out_lines = full_output_lines(netlist);
    let in_width = n + c;

    if in_width <= EXHAUSTIVE_BIJECTIVITY_LIMIT {
        let mut seen: HashMap<Vec<bool>, usize> = HashMap::with_capacity(1 << in_width);
        for v in 0..1usize << in_width {
            let full = unpack(v, in_width);
            let out = prepared.forward(&full[..n], &full[n..]).read(&out_lines);
            if let Some(&prev) = seen.get(&out) {
                return Ok(BijectivityReport {
                    bijective: false,
                    mode: BijectivityMode::Exhaustive {
                        vectors: v as u64 + 1,
                    },
                    witness: Some((unpack(prev, in_width), full)),
                });
            }
            seen.insert(out, v);
        }
        return Ok(BijectivityReport {
            bijective: true,
            mode: BijectivityMode::Exhaustive {
                vectors: 1 << in_width,
            },
            witness: None,
        });
    }

    if n > DEFAULT_ENUMERATION_CAP {
        return Err(SimError::CapExceeded {
            what: "bijectivity check",
            found: n,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let declared = declared_constants(netlist);
    let mut rng = StdRng::seed_from_u64(SAMPLING_SEED);
    let candidates = (0..1usize << n)
        .map(|v| {
            let mut full = unpack(v, n);
            full.extend_from_slice(&declared);
            full
        })
        .chain((0..BIJECTIVITY_SAMPLES).map(|_| (0..in_width).map(|_| rng.random()).collect()));

    let mut seen: HashMap<Vec<bool>, Vec<bool>> = HashMap::new();
    let mut vectors = 0u64;
    let accounted = out_lines.len() == in_width;
    for full in candidates {
        vectors += 1;
        let out = prepared.forward(&full[..n], &full[n..]).read(&out_lines);
        if accounted && prepared.backward(&out) != full {
            return Ok(BijectivityReport {
                bijective: false,
                mode: BijectivityMode::Sampled { vectors },
                witness: Some((full.clone(), prepared.backward(&out))),
            });
        }
        match seen.get(&out) {
            Some(prev) if *prev != full => {
                return Ok(BijectivityReport {
                    bijective: false,
                    mode: BijectivityMode::Sampled { vectors },
                    witness: Some((prev.clone(), full)),
                });
            }
            Some(_) => {}
            None => {
                seen.insert(out, full);
            }
        }
    }
    Ok(BijectivityReport {
        bijective: accounted,
        mode: BijectivityMode::Sampled { vectors },
        witness: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub input: Vec<bool>,
    pub expected: Vec<bool>,
    pub actual: Vec<bool>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input {}: expected {}, got {}",
            bit_string(&self.input),
            bit_string(&self.expected),
            bit_string(&self.actual)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub first_mismatch: Option<Mismatch>,
}

/// Compares the netlist's outputs against minterm membership on all `2^n` inputs.
pub fn check_equivalence(
    netlist: &Netlist,
    reference: &MintermCover,
) -> Result<Equivalence, SimError> {
    if netlist.n_inputs() != reference.n || netlist.n_outputs() != reference.m() {
        return Err(SimError::ArityMismatch {
            netlist_inputs: netlist.n_inputs(),
            netlist_outputs: netlist.n_outputs(),
            reference_inputs: reference.n,
            reference_outputs: reference.m(),
        });
    }
    let table = truth_table(netlist)?;
    for (v, actual) in table.rows.iter().enumerate() {
        let expected = reference.evaluate(v);
        if *actual != expected {
            return Ok(Equivalence {
                equivalent: false,
                first_mismatch: Some(Mismatch {
                    input: unpack(v, table.n),
                    expected,
                    actual: actual.clone(),
                }),
            });
        }
    }
    Ok(Equivalence {
        equivalent: true,
        first_mismatch: None,
    })
}
