//! The main extremal densities of one set, each with its method tag.

use extremal::dens::{
    dstar_window, is12, iss213, kelley_lp, si21, sis123, translate_family, us12, uss213_search, DensityResult, Value,
};
use extremal::lang::{parse_set, print_element};
use extremal::rational::to_pq;
use extremal::grp::GroupSpec;
use extremal::{Group, Subset};

fn show(name: &str, r: &DensityResult) {
    let value = match &r.value {
        Value::Interval(lo, hi) => format!("[{}, {}]", to_pq(lo), to_pq(hi)),
        v => format!("{} {}", v.kind(), to_pq(v.exact().or(v.hi()).or(v.lo()).expect("a bound"))),
    };
    println!("  {name:<8} {value:<18} via {}", r.method.tag());
}

fn main() -> extremal::Result<()> {
    let g = Group::new(GroupSpec::Dihedral(4))?;
    let a = parse_set("{r0,r1,sr0}", &g)?;
    println!("Dih(4), A = {{r0,r1,sr0}}");
    show("is12", &is12(&g, &a, None)?);
    show("si21", &si21(&g, &a)?);
    show("kelley", &kelley_lp(&translate_family(&g, &a)?)?);
    show("us12", &us12(&g, &a, 4, None)?);
    show("iss213", &iss213(&g, &a, None)?);
    show("uss213", &uss213_search(&g, &a, 4, None)?);
    show("sis123", &sis123(&g, &a, 4, 4)?);
    let r = is12(&g, &a, None)?;
    if let Some(mu) = &r.witness.measure {
        let pts: Vec<String> = mu.iter().map(|(x, p)| format!("{}:{}", print_element(&g, x), to_pq(p))).collect();
        println!("  optimal measure {}", pts.join(" "));
    }

    let z = Group::free_abelian(1)?;
    let thirds = Subset::residues(vec![3], vec![vec![0], vec![1]])?;
    println!("Z, A = residues(3;0,1)");
    show("is12", &is12(&z, &thirds, None)?);
    show("iss213", &iss213(&z, &thirds, None)?);
    let squares = parse_set("{0,1,4,9,16,25,36,49}", &z)?;
    println!("Z, A = first eight squares");
    show("d*", &dstar_window(&z, &squares, &[1, 2, 4, 8, 16])?);
    Ok(())
}
