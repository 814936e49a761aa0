use proptest::prelude::*;

use rpla::cost::{cost_report, quantum_cost};
use rpla::gates::{unpack, GateKind};
use rpla::pla::{parse_pla, Cube, CubeBit, PlaSpec};
use rpla::simulator::{
    check_circuit_bijective, evaluate, full_forward, full_output_lines, inverse_evaluate,
    truth_table,
};
use rpla::synth::{evaluate_cubes, synthesize, Backend, SynthOptions};
use rpla::{deserialize_netlist, serialize_netlist, RoleName};

fn cube_bit() -> impl Strategy<Value = CubeBit> {
    prop_oneof![
        Just(CubeBit::Zero),
        Just(CubeBit::One),
        Just(CubeBit::DontCare)
    ]
}

fn pla_spec(max_n: usize, max_m: usize) -> impl Strategy<Value = PlaSpec> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        let cube = (
            proptest::collection::vec(cube_bit(), n),
            proptest::collection::vec(any::<bool>(), m),
        )
            .prop_map(|(inputs, outputs)| Cube { inputs, outputs });
        proptest::collection::vec(cube, 0..6)
            .prop_map(move |cubes| PlaSpec::new(n, m, cubes).unwrap())
    })
}

fn options() -> impl Strategy<Value = SynthOptions> {
    any::<bool>().prop_map(|full_plane| SynthOptions { full_plane })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn synthesized_netlists_match_the_cubes(spec in pla_spec(4, 3), opts in options()) {
        for backend in Backend::ALL {
            let netlist = synthesize(&spec, backend, opts).unwrap();
            prop_assert!(netlist.validate().is_empty());
            let table = truth_table(&netlist).unwrap();
            for (v, row) in table.rows.iter().enumerate() {
                prop_assert_eq!(row, &evaluate_cubes(&spec, v), "backend {} input {}", backend, v);
            }
        }
    }

    #[test]
    fn backends_agree(spec in pla_spec(4, 3)) {
        let mux = synthesize(&spec, Backend::MuxFeynman, SynthOptions::default()).unwrap();
        let fredkin = synthesize(&spec, Backend::FredkinFeynman, SynthOptions::default()).unwrap();
        prop_assert_eq!(truth_table(&mux).unwrap(), truth_table(&fredkin).unwrap());
        // Same placement, so gate counts match and only the 3-pin gate kind differs.
        prop_assert_eq!(mux.gates().len(), fredkin.gates().len());
        let roles = mux.gates().iter().filter(|g| matches!(g.role, RoleName::And | RoleName::Or)).count();
        if roles > 0 {
            prop_assert!(quantum_cost(&mux) < quantum_cost(&fredkin));
        } else {
            prop_assert_eq!(quantum_cost(&mux), quantum_cost(&fredkin));
        }
    }

    #[test]
    fn inverse_undoes_evaluate(spec in pla_spec(4, 3), opts in options()) {
        let netlist = synthesize(&spec, Backend::MuxFeynman, opts).unwrap();
        let n = netlist.n_inputs();
        let outputs = full_output_lines(&netlist);
        for v in 0..1usize << n {
            let input = unpack(v, n);
            let assignment = evaluate(&netlist, &input, None).unwrap();
            prop_assert_eq!(assignment.gates_evaluated(), netlist.gates().len());
            let recovered = inverse_evaluate(&netlist, &assignment.read(&outputs)).unwrap();
            prop_assert_eq!(&recovered[..n], &input[..]);
            let constants_restored = netlist.constant_lines().iter().zip(&recovered[n..]).all(|(l, &bit)| {
                matches!(netlist.line(*l).unwrap().driver, rpla::netlist::Driver::Constant(b) if b == bit)
            });
            prop_assert!(constants_restored);
        }
    }

    #[test]
    fn constants_as_free_inputs_round_trip(spec in pla_spec(3, 2), seed in any::<u64>()) {
        let netlist = synthesize(&spec, Backend::FredkinFeynman, SynthOptions::default()).unwrap();
        let width = netlist.n_inputs() + netlist.constant_lines().len();
        let full: Vec<bool> = (0..width).map(|i| (seed >> (i % 64)) & 1 == 1).collect();
        let out = full_forward(&netlist, &full).unwrap();
        prop_assert_eq!(inverse_evaluate(&netlist, &out).unwrap(), full);
    }

    #[test]
    fn builder_netlists_are_bijective(spec in pla_spec(3, 2)) {
        let netlist = synthesize(&spec, Backend::MuxFeynman, SynthOptions::default()).unwrap();
        let report = check_circuit_bijective(&netlist).unwrap();
        prop_assert!(report.bijective, "{:?}", report);
    }

    #[test]
    fn serialization_preserves_structure_and_costs(spec in pla_spec(4, 3), opts in options()) {
        let netlist = synthesize(&spec, Backend::FredkinFeynman, opts).unwrap();
        let text = serialize_netlist(&netlist);
        let back = deserialize_netlist(&text).unwrap();
        prop_assert!(back.validate().is_empty());
        prop_assert_eq!(cost_report(&back), cost_report(&netlist));
        prop_assert_eq!(serialize_netlist(&back), text);
    }

    #[test]
    fn printed_pla_is_a_parse_fixpoint(spec in pla_spec(5, 3)) {
        let once = parse_pla(&spec.to_string()).unwrap();
        prop_assert_eq!(&once, &spec);
        prop_assert_eq!(parse_pla(&once.to_string()).unwrap(), once);
    }

    #[test]
    fn gate_round_trip(kind in prop_oneof![Just(GateKind::Feynman), Just(GateKind::Fredkin), Just(GateKind::Mux)], v in 0usize..8) {
        let spec = kind.spec();
        let input = unpack(v % (1 << spec.width), spec.width);
        let out = spec.eval(&input).unwrap();
        prop_assert_eq!(spec.invert(&out).unwrap(), input);
    }
}

#[test]
fn full_reference_fabric_is_bijective_in_sampled_mode() {
    let spec = PlaSpec::from_minterms(3, &[1, 2, 4, 7]).unwrap();
    for backend in Backend::ALL {
        let netlist = synthesize(&spec, backend, SynthOptions { full_plane: true }).unwrap();
        assert_eq!(netlist.constant_lines().len(), 40);
        let report = check_circuit_bijective(&netlist).unwrap();
        assert!(report.bijective);
        assert_eq!(
            report.mode,
            rpla::simulator::BijectivityMode::Sampled { vectors: 8 + 1000 }
        );
    }
}
