//! Finitely supported measures, convolution and invariance defects.

use extremal::lang::{parse_set, print_element};
use extremal::meas::{convolve, invariance_defect, Measure};
use extremal::rational::{rat, to_pq};
use extremal::{Element, Group};

fn main() -> extremal::Result<()> {
    let g = Group::cyclic(6)?;
    let mu = Measure::from_weights([(Element::Index(0), rat(1, 2)), (Element::Index(1), rat(1, 2))])?;
    let mut power = mu.clone();
    for k in 2..=4 {
        power = convolve(&g, &power, &mu)?;
        let weights: Vec<String> = power.iter().map(|(x, p)| format!("{}:{}", print_element(&g, x), to_pq(p))).collect();
        println!("mu^{k} = {}", weights.join(" "));
    }
    let evens = parse_set("{0,2,4}", &g)?;
    println!("mu^4(evens) = {}", to_pq(&power.eval(&g, &evens)?));

    let z = Group::free_abelian(1)?;
    let one = Element::Vector(vec![1]);
    for n in [5i64, 50, 500] {
        let uniform = Measure::uniform((-n..=n).map(|x| Element::Vector(vec![x])))?;
        let half_line = parse_set(&format!("{{{}}}", (0..=n).map(|x| x.to_string()).collect::<Vec<_>>().join(",")), &z)?;
        let d = invariance_defect(&z, &uniform, &half_line, std::slice::from_ref(&one))?;
        println!("uniform(-{n}..{n}) moves [0,{n}] by {} under x -> x+1", to_pq(&d));
    }
    Ok(())
}
