//! Parsing diagram files and driving the command line in-process.

use trisect::cli::format::parse_diagram;

const TEXT: &str = "\
# CP² with one word curve
trisection genus=1 params=(0,0,0)
alpha: @1(1,0)
beta: y1
gamma: @1(1,1)
";

fn main() -> trisect::Result<()> {
    let d = parse_diagram(TEXT)?;
    print!("parsed a {} diagram of genus {}:\n{d}", d.kind(), d.genus());

    match parse_diagram("trisection genus=1\nalpha: @1(2,4)\n") {
        Err(e) => println!("bad input: {e}"),
        Ok(_) => unreachable!("(2,4) is not primitive"),
    }

    let mut out = Vec::new();
    let code = trisect::cli::run(["trisect", "invariants", "catalog:s1xs3"], &mut out);
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit code {code}");
    Ok(())
}
