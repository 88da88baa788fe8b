//! Nef and ample verdicts of -K across Hirzebruch surfaces, with witnesses.

use torifan::constructions::hirzebruch;
use torifan::divisor::InvariantDivisor;
use torifan::intersection::{is_ample, is_nef};
use torifan::Verdict;

fn main() -> torifan::Result<()> {
    for a in 0..=5 {
        let f = hirzebruch(a);
        let k = InvariantDivisor::anticanonical(&f);
        let nef = is_nef(&k)?;
        let ample = is_ample(&k)?.holds();
        let points = k.polytope().count_lattice_points()?;
        match nef {
            Verdict::Holds => println!("F{a}: nef, ample={ample}, h0(-K)={points}"),
            Verdict::Fails(w) => {
                let ray = f.ray(w.curve.wall[0]);
                println!("F{a}: not nef, -K.C = {} on the curve of ray {ray}, h0(-K)={points}", w.value)
            }
        }
    }
    Ok(())
}
