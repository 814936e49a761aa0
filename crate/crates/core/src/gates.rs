//! Reversible gate library.
//!
//! Every gate is stored as a permutation table over `2^width` bit-vectors.
//! Pin A is the most significant bit of a table index, so for a 3-pin gate
//! the index `0b101` means `A=1, B=0, C=1`. Tables are generated once from the
//! closed-form output equations in [`closed_form`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cost::LogicCalc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("{kind} gate expects {expected} bits, got {found}")]
    WidthMismatch {
        kind: GateKind,
        expected: usize,
        found: usize,
    },
    #[error("{role} role expects {expected} free inputs, got {found}")]
    FreeInputMismatch {
        role: RoleName,
        expected: usize,
        found: usize,
    },
    #[error("unknown gate kind `{0}`")]
    UnknownKind(String),
    #[error("unknown role `{0}`")]
    UnknownRole(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    Feynman,
    Fredkin,
    Mux,
}

impl GateKind {
    pub const ALL: [GateKind; 3] = [GateKind::Feynman, GateKind::Fredkin, GateKind::Mux];

    pub fn width(self) -> usize {
        match self {
            GateKind::Feynman => 2,
            GateKind::Fredkin | GateKind::Mux => 3,
        }
    }

    pub fn quantum_cost(self) -> u64 {
        match self {
            GateKind::Feynman => 1,
            GateKind::Fredkin => 5,
            GateKind::Mux => 4,
        }
    }

    /// Operator occurrences in the gate's output expressions.
    pub fn logic_signature(self) -> LogicCalc {
        match self {
            // Q = A ^ B
            GateKind::Feynman => LogicCalc::new(1, 0, 0),
            // Q = A'B ^ AC, R = A'C ^ AB
            GateKind::Fredkin => LogicCalc::new(2, 4, 2),
            // Q = A ^ B ^ C, R = A'C ^ AB
            GateKind::Mux => LogicCalc::new(3, 2, 1),
        }
    }

    /// The shared, lazily built table for this kind.
    pub fn spec(self) -> &'static GateSpec {
        static TABLES: OnceLock<[GateSpec; 3]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            [
                build_gate(GateKind::Feynman),
                build_gate(GateKind::Fredkin),
                build_gate(GateKind::Mux),
            ]
        });
        match self {
            GateKind::Feynman => &tables[0],
            GateKind::Fredkin => &tables[1],
            GateKind::Mux => &tables[2],
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::Feynman => "Feynman",
            GateKind::Fredkin => "Fredkin",
            GateKind::Mux => "Mux",
        })
    }
}

impl FromStr for GateKind {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "feynman" => Ok(GateKind::Feynman),
            "fredkin" => Ok(GateKind::Fredkin),
            "mux" => Ok(GateKind::Mux),
            _ => Err(GateError::UnknownKind(s.to_string())),
        }
    }
}

/// A reversible gate as an explicit permutation with its cost metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub width: usize,
    /// `perm[input_index] = output_index`.
    pub perm: Vec<u8>,
    inverse: Vec<u8>,
    pub quantum_cost: u64,
    pub logic_signature: LogicCalc,
}

impl GateSpec {
    #[inline]
    pub fn forward(&self, index: usize) -> usize {
        self.perm[index] as usize
    }

    #[inline]
    pub fn backward(&self, index: usize) -> usize {
        self.inverse[index] as usize
    }

    pub fn eval(&self, inputs: &[bool]) -> Result<Vec<bool>, GateError> {
        self.check_width(inputs.len())?;
        Ok(unpack(self.forward(pack(inputs)), self.width))
    }

    pub fn invert(&self, outputs: &[bool]) -> Result<Vec<bool>, GateError> {
        self.check_width(outputs.len())?;
        Ok(unpack(self.backward(pack(outputs)), self.width))
    }

    fn check_width(&self, found: usize) -> Result<(), GateError> {
        if found != self.width {
            return Err(GateError::WidthMismatch {
                kind: self.kind,
                expected: self.width,
                found,
            });
        }
        Ok(())
    }
}

/// Packs bits into an index, first element most significant.
pub fn pack(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// Inverse of [`pack`].
pub fn unpack(index: usize, width: usize) -> Vec<bool> {
    (0..width)
        .map(|i| (index >> (width - 1 - i)) & 1 == 1)
        .collect()
}

/// Output equations of each gate, evaluated directly.
pub fn closed_form(kind: GateKind, inputs: &[bool]) -> Vec<bool> {
    match kind {
        GateKind::Feynman => {
            let (a, b) = (inputs[0], inputs[1]);
            vec![a, a ^ b]
        }
        GateKind::Fredkin => {
            let (a, b, c) = (inputs[0], inputs[1], inputs[2]);
            vec![a, (!a & b) ^ (a & c), (!a & c) ^ (a & b)]
        }
        GateKind::Mux => {
            let (a, b, c) = (inputs[0], inputs[1], inputs[2]);
            vec![a, a ^ b ^ c, (!a & c) ^ (a & b)]
        }
    }
}

pub fn build_gate(kind: GateKind) -> GateSpec {
    let width = kind.width();
    let perm: Vec<u8> = (0..1usize << width)
        .map(|v| pack(&closed_form(kind, &unpack(v, width))) as u8)
        .collect();
    debug_assert!(is_reversible(&perm));
    let mut inverse = vec![0u8; perm.len()];
    for (i, &o) in perm.iter().enumerate() {
        inverse[o as usize] = i as u8;
    }
    GateSpec {
        kind,
        width,
        perm,
        inverse,
        quantum_cost: kind.quantum_cost(),
        logic_signature: kind.logic_signature(),
    }
}

pub fn eval_gate(spec: &GateSpec, inputs: &[bool]) -> Result<Vec<bool>, GateError> {
    spec.eval(inputs)
}

pub fn invert_gate(spec: &GateSpec, outputs: &[bool]) -> Result<Vec<bool>, GateError> {
    spec.invert(outputs)
}

pub fn is_reversible(perm: &[u8]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &o in perm {
        match seen.get_mut(o as usize) {
            Some(slot) if !*slot => *slot = true,
            _ => return false,
        }
    }
    true
}

/// Every `(input, output)` pair of `perm` whose Hamming weights differ.
pub fn conservation_violations(perm: &[u8]) -> Vec<(usize, usize)> {
    perm.iter()
        .enumerate()
        .filter(|&(i, &o)| i.count_ones() != o.count_ones())
        .map(|(i, &o)| (i, o as usize))
        .collect()
}

pub fn is_conservative(perm: &[u8]) -> bool {
    perm.iter()
        .enumerate()
        .all(|(i, &o)| i.count_ones() == o.count_ones())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleName {
    Copier,
    Not,
    And,
    Or,
    Raw,
}

impl fmt::Display for RoleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RoleName::Copier => "Copier",
            RoleName::Not => "Not",
            RoleName::And => "And",
            RoleName::Or => "Or",
            RoleName::Raw => "Raw",
        })
    }
}

impl FromStr for RoleName {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "copier" => Ok(RoleName::Copier),
            "not" => Ok(RoleName::Not),
            "and" => Ok(RoleName::And),
            "or" => Ok(RoleName::Or),
            "raw" => Ok(RoleName::Raw),
            _ => Err(GateError::UnknownRole(s.to_string())),
        }
    }
}

const PIN_A: usize = 0;
const PIN_B: usize = 1;
const PIN_C: usize = 2;

/// A gate specialised into a Boolean function by tying some pins to constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateRole {
    pub base: GateKind,
    /// `(pin, bit)` pairs, ascending by pin.
    pub constant_pins: Vec<(usize, bool)>,
    pub functional_outputs: Vec<usize>,
    pub name: RoleName,
}

impl GateRole {
    /// Feynman with B = 0: P and Q both carry A.
    pub fn copier() -> Self {
        GateRole {
            base: GateKind::Feynman,
            constant_pins: vec![(PIN_B, false)],
            functional_outputs: vec![PIN_A, PIN_B],
            name: RoleName::Copier,
        }
    }

    /// Feynman with B = 1: Q = A'.
    pub fn not() -> Self {
        GateRole {
            base: GateKind::Feynman,
            constant_pins: vec![(PIN_B, true)],
            functional_outputs: vec![PIN_B],
            name: RoleName::Not,
        }
    }

    /// C = 0 makes R = AB for both Mux and Fredkin.
    pub fn and(base: GateKind) -> Self {
        assert_ne!(base, GateKind::Feynman, "AND needs a 3-pin gate");
        GateRole {
            base,
            constant_pins: vec![(PIN_C, false)],
            functional_outputs: vec![PIN_C],
            name: RoleName::And,
        }
    }

    /// B = 1 makes R = A'C ^ A = A + C for both Mux and Fredkin.
    pub fn or(base: GateKind) -> Self {
        assert_ne!(base, GateKind::Feynman, "OR needs a 3-pin gate");
        GateRole {
            base,
            constant_pins: vec![(PIN_B, true)],
            functional_outputs: vec![PIN_C],
            name: RoleName::Or,
        }
    }

    pub fn raw(base: GateKind) -> Self {
        GateRole {
            base,
            constant_pins: Vec::new(),
            functional_outputs: (0..base.width()).collect(),
            name: RoleName::Raw,
        }
    }

    /// Reconstructs a role from its kind and name.
    pub fn from_parts(base: GateKind, name: RoleName) -> Option<Self> {
        match (base, name) {
            (GateKind::Feynman, RoleName::Copier) => Some(Self::copier()),
            (GateKind::Feynman, RoleName::Not) => Some(Self::not()),
            (GateKind::Mux | GateKind::Fredkin, RoleName::And) => Some(Self::and(base)),
            (GateKind::Mux | GateKind::Fredkin, RoleName::Or) => Some(Self::or(base)),
            (_, RoleName::Raw) => Some(Self::raw(base)),
            _ => None,
        }
    }

    /// Pins not tied to a constant, ascending.
    pub fn free_pins(&self) -> Vec<usize> {
        (0..self.base.width())
            .filter(|p| !self.constant_pins.iter().any(|(c, _)| c == p))
            .collect()
    }

    /// Full input vector with constants filled in around `free_inputs`.
    pub fn fill(&self, free_inputs: &[bool]) -> Result<Vec<bool>, GateError> {
        let free = self.free_pins();
        if free.len() != free_inputs.len() {
            return Err(GateError::FreeInputMismatch {
                role: self.name,
                expected: free.len(),
                found: free_inputs.len(),
            });
        }
        let mut full = vec![false; self.base.width()];
        for &(pin, bit) in &self.constant_pins {
            full[pin] = bit;
        }
        for (&pin, &bit) in free.iter().zip(free_inputs) {
            full[pin] = bit;
        }
        Ok(full)
    }
}

/// Evaluates `role` and returns its functional outputs in pin order.
pub fn apply_role(role: &GateRole, free_inputs: &[bool]) -> Result<Vec<bool>, GateError> {
    let outputs = role.base.spec().eval(&role.fill(free_inputs)?)?;
    Ok(role
        .functional_outputs
        .iter()
        .map(|&p| outputs[p])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    // Hand-written truth tables, independent of `closed_form`.
    const FEYNMAN: [u8; 4] = [0b00, 0b01, 0b11, 0b10];
    const FREDKIN: [u8; 8] = [0b000, 0b001, 0b010, 0b011, 0b100, 0b110, 0b101, 0b111];
    const MUX: [u8; 8] = [0b000, 0b011, 0b010, 0b001, 0b110, 0b100, 0b101, 0b111];

    #[test]
    fn tables_match_hand_truth_tables() {
        assert_eq!(build_gate(GateKind::Feynman).perm, FEYNMAN);
        assert_eq!(build_gate(GateKind::Fredkin).perm, FREDKIN);
        assert_eq!(build_gate(GateKind::Mux).perm, MUX);
    }

    #[test]
    fn spec_examples() {
        let f = GateKind::Feynman.spec();
        assert_eq!(f.eval(&bits("00")).unwrap(), bits("00"));
        assert_eq!(f.eval(&bits("10")).unwrap(), bits("11"));
        assert_eq!(f.eval(&bits("11")).unwrap(), bits("10"));
        assert_eq!(f.invert(&bits("11")).unwrap(), bits("10"));

        let m = GateKind::Mux.spec();
        assert_eq!(m.eval(&bits("100")).unwrap(), bits("110"));
        assert_eq!(m.eval(&bits("011")).unwrap(), bits("001"));
        assert_eq!(m.invert(&bits("000")).unwrap(), bits("000"));

        let fr = GateKind::Fredkin.spec();
        assert_eq!(fr.eval(&bits("101")).unwrap(), bits("110"));
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let err = GateKind::Mux.spec().eval(&bits("10")).unwrap_err();
        assert_eq!(
            err,
            GateError::WidthMismatch {
                kind: GateKind::Mux,
                expected: 3,
                found: 2
            }
        );
        assert!(GateKind::Feynman.spec().invert(&bits("101")).is_err());
    }

    #[test]
    fn bijection_round_trip_and_pass_through() {
        for kind in GateKind::ALL {
            let spec = kind.spec();
            assert!(is_reversible(&spec.perm), "{kind}");
            for v in 0..1usize << spec.width {
                let input = unpack(v, spec.width);
                let out = spec.eval(&input).unwrap();
                assert_eq!(out[0], input[0], "{kind} P != A at {v}");
                assert_eq!(spec.invert(&out).unwrap(), input);
            }
        }
    }

    #[test]
    fn conservativity() {
        assert!(is_conservative(&GateKind::Fredkin.spec().perm));
        assert!(!is_conservative(&GateKind::Mux.spec().perm));
        let violations = conservation_violations(&GateKind::Mux.spec().perm);
        assert!(violations.contains(&(0b100, 0b110)));
        assert_eq!(
            violations,
            [
                (0b001, 0b011),
                (0b011, 0b001),
                (0b100, 0b110),
                (0b101, 0b100)
            ]
        );
        assert!(conservation_violations(&GateKind::Fredkin.spec().perm).is_empty());
    }

    #[test]
    fn is_reversible_rejects_non_permutations() {
        assert!(!is_reversible(&[0, 0, 1, 2]));
        assert!(!is_reversible(&[0, 1, 2, 4]));
        assert!(is_reversible(&[3, 2, 1, 0]));
    }

    #[test]
    fn metadata() {
        let qc: Vec<u64> = GateKind::ALL
            .iter()
            .map(|k| k.spec().quantum_cost)
            .collect();
        assert_eq!(qc, [1, 5, 4]);
        assert_eq!(
            GateKind::Mux.spec().logic_signature,
            LogicCalc::new(3, 2, 1)
        );
        assert_eq!(
            GateKind::Fredkin.spec().logic_signature,
            LogicCalc::new(2, 4, 2)
        );
        assert_eq!(
            GateKind::Feynman.spec().logic_signature,
            LogicCalc::new(1, 0, 0)
        );
    }

    #[test]
    fn role_examples() {
        let and = GateRole::and(GateKind::Mux);
        assert_eq!(apply_role(&and, &bits("11")).unwrap(), bits("1"));
        assert_eq!(apply_role(&and, &bits("10")).unwrap(), bits("0"));
        let or = GateRole::or(GateKind::Mux);
        assert_eq!(apply_role(&or, &bits("00")).unwrap(), bits("0"));
        assert_eq!(apply_role(&or, &bits("10")).unwrap(), bits("1"));
        assert_eq!(
            apply_role(&GateRole::copier(), &bits("1")).unwrap(),
            bits("11")
        );
        assert_eq!(apply_role(&GateRole::not(), &bits("1")).unwrap(), bits("0"));
    }

    #[test]
    fn roles_are_exhaustively_correct() {
        for kind in [GateKind::Mux, GateKind::Fredkin] {
            for v in 0..4 {
                let (a, c) = (v & 2 != 0, v & 1 != 0);
                assert_eq!(apply_role(&GateRole::and(kind), &[a, c]).unwrap(), [a & c]);
                assert_eq!(apply_role(&GateRole::or(kind), &[a, c]).unwrap(), [a | c]);
            }
        }
        for a in [false, true] {
            assert_eq!(apply_role(&GateRole::copier(), &[a]).unwrap(), [a, a]);
            assert_eq!(apply_role(&GateRole::not(), &[a]).unwrap(), [!a]);
        }
    }

    #[test]
    fn mux_q_with_b_tied_high_is_xnor_not_or() {
        for v in 0..4 {
            let (a, c) = (v & 2 != 0, v & 1 != 0);
            let out = GateKind::Mux.spec().eval(&[a, true, c]).unwrap();
            assert_eq!(out[1], !(a ^ c));
        }
    }

    #[test]
    fn role_free_input_count_is_checked() {
        let err = apply_role(&GateRole::and(GateKind::Mux), &bits("1")).unwrap_err();
        assert!(matches!(
            err,
            GateError::FreeInputMismatch {
                expected: 2,
                found: 1,
                ..
            }
        ));
    }

    #[test]
    fn role_from_parts() {
        assert_eq!(
            GateRole::from_parts(GateKind::Fredkin, RoleName::Or),
            Some(GateRole::or(GateKind::Fredkin))
        );
        assert_eq!(GateRole::from_parts(GateKind::Feynman, RoleName::And), None);
        assert_eq!(GateRole::from_parts(GateKind::Mux, RoleName::Copier), None);
    }

    #[test]
    fn kind_and_role_parse() {
        assert_eq!("MUX".parse::<GateKind>().unwrap(), GateKind::Mux);
        assert!("toffoli".parse::<GateKind>().is_err());
        assert_eq!("copier".parse::<RoleName>().unwrap(), RoleName::Copier);
    }
}
