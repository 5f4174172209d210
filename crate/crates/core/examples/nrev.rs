// Naive reverse, run forwards and backwards.

use mukanren::frontend::{parse, Count, Interpreter};
use mukanren::standard_system;

const NREV: &str = include_str!("nrev.mk");

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sys = standard_system();
    let forwards = parse(NREV)?;
    let interp = Interpreter::new(&forwards, &sys);
    let answer = interp.run(&forwards.queries[0], Count::Take(1))?;
    let rev = answer.first().ok_or("nrev produced no answer")?.readback();
    println!("(nrev '(a b c) q) => {rev}");
    if rev.to_string() != "(c b a)" {
        return Err(format!("unexpected reversal {rev}").into());
    }

    // The same relations run in the other direction.
    let backwards_src = NREV.replace(
        "(run 1 (q) (nrev '(a b c) q))",
        "(run 1 (q) (nrev q '(x y)))",
    );
    let backwards = parse(&backwards_src)?;
    let interp = Interpreter::new(&backwards, &sys);
    for a in interp.run(&backwards.queries[0], Count::Take(1))? {
        println!("(nrev q '(x y)) => {}", a.readback());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
