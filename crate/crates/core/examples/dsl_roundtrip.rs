//! Parsing and canonical printing of set expressions.

use extremal::lang::{canonical_print, parse_group, parse_set, print_group};
use extremal::Group;

fn main() {
    let cases = [
        ("Zmod(6)", "{3,1,1} | !{0} & {2,4}"),
        ("Zmod(4)", "{0,1} * inv({0,1})"),
        ("Z", "residues( 3 ; 2 , 0 ) | shift(-1, {5})"),
        ("Z^2", "residues((2,3);(1,1),(0,0))"),
        ("Free(2)", "prefix(A, a) | conj(prefix(b), ab)"),
        ("Sym(3)", "wr({[1,0,2]}, {[0,1,2],[1,2,0]})"),
        ("Zmod(4)", "{0,1} |"),
        ("Free(2)", "residues(2;0)"),
    ];
    for (group, text) in cases {
        let spec = parse_group(group).expect("valid group");
        let g = Group::new(spec.clone()).expect("small group");
        match parse_set(text, &g) {
            Ok(set) => {
                let printed = canonical_print(&g, &set);
                let again = parse_set(&printed, &g).expect("canonical text parses");
                println!("{:<8} {text:<40} => {printed}   (round-trip {})", print_group(&spec), again == set);
                if let Ok(Some(elems)) = g.enumerate(&set) {
                    println!("{:<8} {:<40}    {} elements", "", "", elems.len());
                }
            }
            Err(e) => println!("{:<8} {text:<40} => error: {e}", print_group(&spec)),
        }
    }
}
