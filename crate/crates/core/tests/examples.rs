macro_rules! example_test {
    ($name:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $name() {
            $name::run_example().expect("example should run");
        }
    };
}

example_test!(special_functions, "special_functions.rs");
example_test!(coherent_states, "coherent_states.rs");
example_test!(photon_addition, "photon_addition.rs");
example_test!(photon_statistics, "photon_statistics.rs");
example_test!(photon_number_distribution, "photon_number_distribution.rs");
example_test!(resolution_of_identity, "resolution_of_identity.rs");
example_test!(thermal_states, "thermal_states.rs");
example_test!(label_continuity, "label_continuity.rs");
example_test!(cli_sweep, "cli_sweep.rs");
