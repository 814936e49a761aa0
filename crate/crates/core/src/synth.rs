//! Reversible PLA synthesis.
//!
//! A specification is expanded to per-output minterm sets, then built as
//! three stages on one netlist:
//!
//! 1. literal supply: Feynman NOT gates produce complements and Feynman
//!    copier chains produce one line per literal use;
//! 2. AND plane: each minterm is a chain of `n - 1` two-input AND roles;
//! 3. OR plane: minterms shared between outputs are copied, then each
//!    output is a chain of two-input OR roles.
//!
//! The backend decides which 3-pin gate realises the AND and OR roles.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{unpack, GateKind, GateRole};
use crate::netlist::{LineId, Netlist, NetlistError, Plane};
use crate::pla::{PlaSpec, SpecError};
use crate::simulator::DEFAULT_ENUMERATION_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Backend {
    /// MUX gates for AND/OR, Feynman gates for copies and complements.
    MuxFeynman,
    /// Fredkin gates for AND/OR, Feynman gates for copies and complements.
    FredkinFeynman,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::MuxFeynman, Backend::FredkinFeynman];

    pub fn logic_gate(self) -> GateKind {
        match self {
            Backend::MuxFeynman => GateKind::Mux,
            Backend::FredkinFeynman => GateKind::Fredkin,
        }
    }

    pub fn and_role(self) -> GateRole {
        GateRole::and(self.logic_gate())
    }

    pub fn or_role(self) -> GateRole {
        GateRole::or(self.logic_gate())
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Backend::MuxFeynman => "mux",
            Backend::FredkinFeynman => "fredkin",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::MuxFeynman => "MUX+Feynman",
            Backend::FredkinFeynman => "Fredkin+Feynman",
        })
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mux" | "mux+feynman" | "muxfeynman" => Ok(Backend::MuxFeynman),
            "fredkin" | "fredkin+feynman" | "fredkinfeynman" => Ok(Backend::FredkinFeynman),
            _ => Err(format!("unknown backend `{s}` (expected mux or fredkin)")),
        }
    }
}

/// Per-output on-sets over `2^n` minterm indices (input 0 most significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MintermCover {
    pub n: usize,
    pub outputs: Vec<BTreeSet<usize>>,
}

impl MintermCover {
    pub fn m(&self) -> usize {
        self.outputs.len()
    }

    /// Output bits for input vector `v`.
    pub fn evaluate(&self, v: usize) -> Vec<bool> {
        self.outputs.iter().map(|set| set.contains(&v)).collect()
    }

    /// Minterms used by at least one output.
    pub fn needed(&self) -> BTreeSet<usize> {
        self.outputs.iter().flatten().copied().collect()
    }
}

pub fn expand_to_minterms(spec: &PlaSpec) -> MintermCover {
    let mut outputs = vec![BTreeSet::new(); spec.m];
    for cube in &spec.cubes {
        let free: Vec<usize> = cube
            .inputs
            .iter()
            .enumerate()
            .filter(|(_, b)| **b == crate::pla::CubeBit::DontCare)
            .map(|(i, _)| spec.n - 1 - i)
            .collect();
        let base = cube.inputs.iter().fold(0usize, |acc, b| {
            (acc << 1) | (*b == crate::pla::CubeBit::One) as usize
        });
        for assignment in 0..1usize << free.len() {
            let minterm = free
                .iter()
                .enumerate()
                .filter(|(k, _)| (assignment >> k) & 1 == 1)
                .fold(base, |acc, (_, &shift)| acc | (1 << shift));
            for (j, _) in cube.outputs.iter().enumerate().filter(|(_, &on)| on) {
                outputs[j].insert(minterm);
            }
        }
    }
    MintermCover { n: spec.n, outputs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub input: usize,
    pub positive: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.input, if self.positive { "" } else { "'" })
    }
}

/// The literal of input `i` appearing in minterm `minterm`.
fn literal_in(n: usize, minterm: usize, input: usize) -> Literal {
    Literal {
        input,
        positive: (minterm >> (n - 1 - input)) & 1 == 1,
    }
}

/// Number of lines each literal must supply: one per minterm it appears in.
pub fn literal_demand(n: usize, minterms: &BTreeSet<usize>) -> BTreeMap<Literal, usize> {
    let mut demand = BTreeMap::new();
    for input in 0..n {
        for positive in [true, false] {
            demand.insert(Literal { input, positive }, 0);
        }
    }
    for &mt in minterms {
        for input in 0..n {
            *demand.get_mut(&literal_in(n, mt, input)).unwrap() += 1;
        }
    }
    demand
}

/// Turns one line into `count` lines with a chain of `count - 1` copiers.
/// `count == 0` leaves the source unconsumed.
pub fn copy_chain(
    netlist: &mut Netlist,
    source: LineId,
    count: usize,
) -> Result<Vec<LineId>, NetlistError> {
    let mut copies = Vec::with_capacity(count);
    if count == 0 {
        return Ok(copies);
    }
    let copier = GateRole::copier();
    let mut current = source;
    for _ in 1..count {
        let out = netlist.add_role(&copier, &[current])?;
        copies.push(out[0]);
        current = out[1];
    }
    copies.push(current);
    Ok(copies)
}

/// Builds complements and copies so that each literal has exactly
/// `demand[literal]` distinct lines.
pub fn build_literal_supply(
    netlist: &mut Netlist,
    n: usize,
    demand: &BTreeMap<Literal, usize>,
) -> Result<BTreeMap<Literal, Vec<LineId>>, NetlistError> {
    let mut supply = BTreeMap::new();
    for input in 0..n {
        let pos = Literal {
            input,
            positive: true,
        };
        let neg = Literal {
            input,
            positive: false,
        };
        let d_pos = demand.get(&pos).copied().unwrap_or(0);
        let d_neg = demand.get(&neg).copied().unwrap_or(0);
        let mut positive_source = netlist.primary_inputs()[input];
        if d_neg > 0 {
            let out = netlist.add_role(&GateRole::not(), &[positive_source])?;
            positive_source = out[0];
            supply.insert(neg, copy_chain(netlist, out[1], d_neg)?);
        }
        if d_pos > 0 {
            supply.insert(pos, copy_chain(netlist, positive_source, d_pos)?);
        }
    }
    Ok(supply)
}

/// Realises each minterm as a left-associative AND chain over its literals in
/// input order. Literal copies are handed out in ascending minterm order.
pub fn build_and_plane(
    netlist: &mut Netlist,
    n: usize,
    minterms: &BTreeSet<usize>,
    supply: BTreeMap<Literal, Vec<LineId>>,
    backend: Backend,
) -> Result<BTreeMap<usize, LineId>, NetlistError> {
    let mut supply: BTreeMap<Literal, VecDeque<LineId>> =
        supply.into_iter().map(|(k, v)| (k, v.into())).collect();
    let and = backend.and_role();
    let mut take = |lit: Literal| -> LineId {
        supply
            .get_mut(&lit)
            .and_then(|q| q.pop_front())
            .unwrap_or_else(|| panic!("literal supply exhausted for {lit}"))
    };
    let mut lines = BTreeMap::new();
    for &mt in minterms {
        let mut acc = take(literal_in(n, mt, 0));
        for input in 1..n {
            let lit = take(literal_in(n, mt, input));
            acc = netlist.add_role(&and, &[acc, lit])?[2];
        }
        lines.insert(mt, acc);
    }
    Ok(lines)
}

/// Combines minterm lines into one line per output. Returns output lines in
/// output order; they are not yet marked as primary outputs.
pub fn build_or_plane(
    netlist: &mut Netlist,
    cover: &MintermCover,
    minterm_lines: &BTreeMap<usize, LineId>,
    backend: Backend,
) -> Result<Vec<LineId>, NetlistError> {
    let mut copies: BTreeMap<usize, VecDeque<LineId>> = BTreeMap::new();
    for (&mt, &line) in minterm_lines {
        let users = cover.outputs.iter().filter(|set| set.contains(&mt)).count();
        copies.insert(mt, copy_chain(netlist, line, users)?.into());
    }
    let or = backend.or_role();
    let mut result = Vec::with_capacity(cover.m());
    for set in &cover.outputs {
        let mut terms = set.iter().map(|mt| {
            copies
                .get_mut(mt)
                .and_then(|q| q.pop_front())
                .unwrap_or_else(|| panic!("no line for minterm {mt}"))
        });
        let line = match terms.next() {
            None => netlist.add_constant(false),
            Some(first) => {
                let rest: Vec<LineId> = terms.collect();
                let mut acc = first;
                for term in rest {
                    acc = netlist.add_role(&or, &[acc, term])?[2];
                }
                acc
            }
        };
        result.push(line);
    }
    Ok(result)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SynthOptions {
    /// Instantiate all `2^n` minterms in the AND plane instead of only the
    /// ones the cover uses.
    pub full_plane: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SynthError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
    #[error("{n} inputs exceeds the synthesis cap of {cap}")]
    TooManyInputs { n: usize, cap: usize },
}

pub fn synthesize(
    spec: &PlaSpec,
    backend: Backend,
    options: SynthOptions,
) -> Result<Netlist, SynthError> {
    spec.check()?;
    if spec.n > DEFAULT_ENUMERATION_CAP {
        return Err(SynthError::TooManyInputs {
            n: spec.n,
            cap: DEFAULT_ENUMERATION_CAP,
        });
    }
    let cover = expand_to_minterms(spec);
    let minterms: BTreeSet<usize> = if options.full_plane {
        (0..1usize << spec.n).collect()
    } else {
        cover.needed()
    };

    let mut netlist = Netlist::new(spec.n).with_name(format!(
        "rpla-{}{}",
        backend.short_name(),
        if options.full_plane { "-full" } else { "" }
    ));
    if let Some(labels) = &spec.input_labels {
        netlist.set_input_labels(labels.clone());
    }
    netlist.set_output_labels(
        spec.output_labels
            .clone()
            .unwrap_or_else(|| (0..spec.m).map(|j| format!("f{j}")).collect()),
    );

    netlist.set_plane(Some(Plane::And));
    let demand = literal_demand(spec.n, &minterms);
    let supply = build_literal_supply(&mut netlist, spec.n, &demand)?;
    let minterm_lines = build_and_plane(&mut netlist, spec.n, &minterms, supply, backend)?;

    netlist.set_plane(Some(Plane::Or));
    let outputs = build_or_plane(&mut netlist, &cover, &minterm_lines, backend)?;
    netlist.set_plane(None);
    for (j, line) in outputs.into_iter().enumerate() {
        netlist.mark_output(line, j)?;
    }
    Ok(netlist)
}

/// Direct sum-of-products evaluation of the cubes, without minterm expansion.
pub fn evaluate_cubes(spec: &PlaSpec, v: usize) -> Vec<bool> {
    let input = unpack(v, spec.n);
    let mut out = vec![false; spec.m];
    for cube in spec.cubes.iter().filter(|c| c.covers(&input)) {
        for (o, &on) in out.iter_mut().zip(&cube.outputs) {
            *o |= on;
        }
    }
    out
}
