//! Drive the command-line front end in-process.

fn main() {
    for args in [
        vec!["theta", "1", "0", "1"],
        vec!["--format", "json", "reduce", "-0.3", "0.4"],
        vec!["minimize", "w", "--alpha", "2", "--b", "0.12"],
        vec!["verify", "--only", "HHH"],
        vec!["verify", "--only", "NOPE"],
    ] {
        let out = hexlat::cli::run(std::iter::once("hexlat").chain(args.iter().copied()));
        println!("$ hexlat {}  (exit {})", args.join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
        println!();
    }
}
