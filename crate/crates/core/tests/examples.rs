mod unification_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/unification.rs"
    ));
}

mod streams_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/streams.rs"));
}

mod standard_constraints_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/standard_constraints.rs"
    ));
}

mod custom_system_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/custom_system.rs"
    ));
}

mod programs_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/programs.rs"));
}

mod nrev_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/nrev.rs"));
}

#[test]
fn unification_example_runs() {
    unification_example::run_example().expect("unification example should run");
}

#[test]
fn streams_example_runs() {
    streams_example::run_example().expect("streams example should run");
}

#[test]
fn standard_constraints_example_runs() {
    standard_constraints_example::run_example().expect("standard_constraints example should run");
}

#[test]
fn custom_system_example_runs() {
    custom_system_example::run_example().expect("custom_system example should run");
}

#[test]
fn programs_example_runs() {
    programs_example::run_example().expect("programs example should run");
}

#[test]
fn nrev_example_runs() {
    nrev_example::run_example().expect("nrev example should run");
}
