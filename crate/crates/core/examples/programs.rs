// Parsing and running the sample programs in `examples`.

use std::path::Path;

use mukanren::frontend::{eval_program, parse};
use mukanren::standard_system;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let mut files: Vec<_> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "mk"))
        .collect();
    files.sort();
    let sys = standard_system();
    for path in files {
        let text = std::fs::read_to_string(&path)?;
        let program = parse(&text).map_err(|e| format!("{}:{e}", path.display()))?;
        println!(";; {}", path.file_name().unwrap().to_string_lossy());
        for answers in eval_program(&program, &sys)? {
            if answers.is_empty() {
                println!("no answers");
            }
            for a in answers {
                println!("{}", a.readback());
            }
        }
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
