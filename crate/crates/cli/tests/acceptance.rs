use sedgeo_cli::reproduce::{run, CRITERIA};

fn main() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let o = run(c);
        println!("{}", o.line());
        if !o.ok() {
            for line in o.text.lines().filter(|l| l.starts_with("FAIL")) {
                println!("    {line}");
            }
            failed.push(o.id);
        }
    }
    if failed.is_empty() {
        println!(
            "acceptance: {} of {} criteria pass",
            CRITERIA.len(),
            CRITERIA.len()
        );
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
