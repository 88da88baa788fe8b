//! Smith normal form and exact linear solves.

use torifan::lattice::{primitive, smith_normal_form, solve_rational};
use torifan::{BigRational, IntegerMatrix, LatticeVector};

fn main() -> torifan::Result<()> {
    let a = IntegerMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("diagonal {:?}, rank {}", snf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>(), snf.rank());
    assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);

    // Cartier data on one cone: rows are the generators, rhs is -a.
    let cone = IntegerMatrix::from_i64_rows(&[&[-1, 3, 0], &[0, -1, 0], &[0, 0, 1]]);
    let rhs: Vec<BigRational> = [-1, -1, -1].iter().map(|&x| BigRational::from_integer(x.into())).collect();
    println!("m = {}", solve_rational(&cone, &rhs)?);

    println!("primitive(6,-4,10) = {}", primitive(&LatticeVector::from_i64s(&[6, -4, 10]))?);
    Ok(())
}
