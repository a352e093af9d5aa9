//! Driving the command-line interface in-process.

fn main() {
    for args in [
        vec!["extremal", "eval", "--group", "Z", "--set", "residues(2;0)", "--quantity", "is12"],
        vec!["extremal", "check", "finite-collapse", "--group", "Zmod(3)", "--format", "tsv"],
        vec!["extremal", "eval", "--group", "Zmod(4)", "--set", "{5}", "--quantity", "is12"],
    ] {
        let out = extremal::cli::run(args.iter().copied());
        println!("$ {}\nexit {}", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
