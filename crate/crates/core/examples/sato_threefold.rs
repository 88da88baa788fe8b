//! Star-subdivide the P^1-bundle over F3 twice and inspect -K on the result.

use num_traits::Zero;
use torifan::constructions::{sato_blown_up_fan, sato_fan};
use torifan::divisor::InvariantDivisor;
use torifan::intersection::{is_ample, is_nef, wall_numbers};
use torifan::report::cmd_example_sato;

fn main() -> torifan::Result<()> {
    let sigma = sato_fan();
    let delta = sato_blown_up_fan();
    println!("Sigma: {} rays, {} cones", sigma.rays().len(), sigma.max_cones().len());
    println!("Delta: {} rays, {} cones", delta.rays().len(), delta.max_cones().len());

    let k = InvariantDivisor::anticanonical(&delta);
    let data = k.cartier_data()?;
    for (c, cone) in delta.max_cones().iter().enumerate() {
        println!("  m{cone} = {}", data.get(c));
    }
    println!("base point free: {}", k.is_basepoint_free()?.holds());
    println!("nef: {}  ample: {}", is_nef(&k)?.holds(), is_ample(&k)?.holds());
    let zero_walls = wall_numbers(&k)?.into_iter().filter(|(_, v)| v.is_zero()).count();
    println!("walls with -K.C = 0: {zero_walls}");
    println!("kappa: {}", k.kodaira_dimension()?);

    print!("{}", cmd_example_sato().to_table());
    Ok(())
}
