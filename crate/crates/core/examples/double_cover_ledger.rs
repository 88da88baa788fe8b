//! Picard-lattice bookkeeping for P1xP1 blown up at 16 points.

use torifan::picard::{double_cover_ledger, PicardLattice};

fn main() {
    let z = PicardLattice::ruled_quadric().blow_up_points(16);
    println!("rank {}  signature {:?}", z.rank(), z.signature());
    let l = double_cover_ledger();
    println!("{}", serde_json::to_string_pretty(&l).expect("ledger serializes"));
}
