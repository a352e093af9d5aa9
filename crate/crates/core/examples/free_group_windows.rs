//! Window bounds on the free group: a set of density at most 1/6 whose
//! complement splits into another such set and a point.

use extremal::comb::packing_index;
use extremal::dens::is12;
use extremal::lang::{parse_set, print_element};
use extremal::rational::to_pq;
use extremal::{Group, Window};

fn main() -> extremal::Result<()> {
    let f2 = Group::free(2)?;
    let a = parse_set("prefix(a,A)", &f2)?;
    let b = parse_set("prefix(b,B)", &f2)?;
    let p = packing_index(&f2, &a, 8, Some(&f2.ball(6)))?;
    let w: Vec<String> = p.witness.iter().map(|x| print_element(&f2, x)).collect();
    println!("prefix(a,A): {} disjoint translates by {}", p.value.lower(), w.join(", "));

    for (name, set, letter) in [("prefix(a,A)", &a, "B"), ("prefix(b,B)", &b, "A")] {
        for n in [2usize, 4, 6] {
            let window = Window::new((0..n).map(|i| extremal::lang::parse_element(&if i == 0 { "1".into() } else { letter.repeat(i) }, &f2)).collect::<extremal::Result<_>>()?)?;
            let r = is12(&f2, set, Some(&window))?;
            println!("is12({name}) <= {} using {n} powers of {letter}", to_pq(r.value.hi().expect("upper bound")));
        }
    }
    println!("F2 = prefix(a,A) | prefix(b,B) | {{1}}: two cells of density at most 1/6 and a point cover a set of density 1");
    Ok(())
}
