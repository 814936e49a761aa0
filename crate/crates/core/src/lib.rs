//! Synthesis, simulation and cost analysis for reversible programmable logic
//! arrays (RPLAs).
//!
//! A `.pla` sum-of-products specification is turned into a netlist of
//! reversible gates (Feynman copiers and inverters plus MUX or Fredkin gates
//! configured as AND/OR), which can be simulated forwards and backwards,
//! checked against the specification, and costed.
//!
//! ```
//! use rpla::{cost_report, parse_pla, synthesize, Backend, SynthOptions};
//!
//! let spec = parse_pla(".i 3\n.o 1\n001 1\n010 1\n100 1\n111 1\n.e").unwrap();
//! let netlist = synthesize(&spec, Backend::MuxFeynman, SynthOptions::default()).unwrap();
//! assert!(netlist.validate().is_empty());
//! assert_eq!(cost_report(&netlist).quantum_cost, 9 * 1 + 11 * 4);
//! ```

pub mod cli;
pub mod cost;
pub mod gates;
pub mod io;
pub mod netlist;
pub mod pla;
pub mod simulator;
pub mod synth;

pub use cost::{compare, cost_report, ComparisonTable, CostReport, LogicCalc};
pub use gates::{apply_role, GateKind, GateRole, GateSpec, RoleName};
pub use io::{deserialize_netlist, emit_dot, serialize_netlist};
pub use netlist::{Diagnostic, GateId, LineId, Netlist, NetlistError, Plane};
pub use pla::{parse_pla, PlaSpec};
pub use simulator::{
    check_circuit_bijective, check_equivalence, evaluate, inverse_evaluate, truth_table,
};
pub use synth::{expand_to_minterms, synthesize, Backend, MintermCover, SynthOptions};
