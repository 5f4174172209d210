//! Printing of constraint stores.

use std::fmt::Write;

use crate::engine::State;

/// Renders a state as `((== . <tuples>) (<id> . <tuples>) ... . <counter>)`.
///
/// Fields appear in registration order with `==` first and tuples newest
/// first. An empty field prints as `(<id>)`. Variables print as bare
/// integers.
pub fn print_store(st: &State) -> String {
    let mut out = String::from("(");
    for (i, (id, tuples)) in st.store().fields().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        if tuples.is_empty() {
            write!(out, "({id})").unwrap();
        } else {
            let ts: Vec<String> = tuples.iter().map(|t| t.to_string()).collect();
            write!(out, "({id} . ({}))", ts.join(" ")).unwrap();
        }
    }
    write!(out, " . {})", st.counter()).unwrap();
    out
}
