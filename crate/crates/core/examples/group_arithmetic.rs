//! Multiplication, inverses and balls in the supported group families.

use extremal::lang::{parse_element, parse_group, print_element};
use extremal::Group;

fn main() -> extremal::Result<()> {
    for text in ["Zmod(6)", "Dih(4)", "Sym(3)", "Zmod(2) x Sym(3)", "Z^2", "Free(2)"] {
        let g = Group::new(parse_group(text)?)?;
        let (x, y) = match text {
            "Zmod(6)" => ("4", "5"),
            "Dih(4)" => ("r1", "sr2"),
            "Sym(3)" => ("[1,0,2]", "[1,2,0]"),
            "Zmod(2) x Sym(3)" => ("(1,[1,0,2])", "(1,[0,2,1])"),
            "Z^2" => ("(1,-2)", "(3,4)"),
            _ => ("ab", "BaB"),
        };
        let (x, y) = (parse_element(x, &g)?, parse_element(y, &g)?);
        let xy = g.multiply(&x, &y)?;
        let yx = g.multiply(&y, &x)?;
        println!(
            "{text:<18} x*y = {:<12} y*x = {:<12} x^-1 = {:<10} |ball(2)| = {}",
            print_element(&g, &xy),
            print_element(&g, &yx),
            print_element(&g, &g.invert(&x)?),
            g.ball(2).len(),
        );
    }
    Ok(())
}
