//! Packing indices and covering numbers with their witnesses.

use extremal::comb::{covering_number, packing_index, CovValue, PackValue};
use extremal::lang::{canonical_print, parse_group, parse_set, print_element};
use extremal::{Element, Group, Subset};

fn list(g: &Group, xs: &[Element]) -> String {
    xs.iter().map(|x| print_element(g, x)).collect::<Vec<_>>().join(",")
}

fn main() -> extremal::Result<()> {
    for (group, set) in [
        ("Zmod(6)", "{0,1}"),
        ("Zmod(6)", "{0,3}"),
        ("Sym(3)", "{[0,1,2],[1,0,2]}"),
        ("Dih(4)", "{r0,r1,sr0}"),
        ("Z", "residues(3;0)"),
        ("Z^2", "residues((2,2);(0,0),(1,1))"),
    ] {
        let g = Group::new(parse_group(group)?)?;
        let a = parse_set(set, &g)?;
        let pack = packing_index(&g, &a, 8, None)?;
        let diff = Subset::difference_set(a.clone());
        let cov = covering_number(&g, &diff, 8)?;
        let p = match pack.value {
            PackValue::Exact(k) => format!("{k}"),
            PackValue::AtLeast(k) => format!(">= {k}"),
        };
        let c = match cov.value {
            CovValue::Exact(k) => format!("{k}"),
            CovValue::AtMost(k) => format!("<= {k}"),
            CovValue::Infinite => "infinite".into(),
        };
        println!(
            "{group:<8} {:<28} pack = {p} by {{{}}}, cov(AA^-1) = {c} by {{{}}}",
            canonical_print(&g, &a),
            list(&g, &pack.witness),
            list(&g, &cov.witness)
        );
    }
    Ok(())
}
