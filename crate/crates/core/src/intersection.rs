//! Intersection numbers of Cartier divisors with torus-invariant curves.
//!
//! On a smooth complete toric variety every invariant curve is `V(τ)` for a
//! wall `τ = σ ∩ σ'`, and `D·V(τ) = <m_σ - m_σ', u'>` where `u'` is the ray
//! of `σ'` outside `τ`. Nefness and ampleness (toric Kleiman) are decided by
//! signs of these numbers on all walls.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::divisor::{CartierData, InvariantDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::Verdict;

/// The invariant curve of a wall, with the extra ray of each incident cone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WallCurve {
    pub wall: Vec<usize>,
    pub left: usize,
    pub right: usize,
    pub extra_left: usize,
    pub extra_right: usize,
}

impl WallCurve {
    /// Same curve with the two incident cones exchanged.
    pub fn swapped(&self) -> WallCurve {
        WallCurve {
            wall: self.wall.clone(),
            left: self.right,
            right: self.left,
            extra_left: self.extra_right,
            extra_right: self.extra_left,
        }
    }
}

/// A wall together with the intersection number attained on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallWitness {
    pub curve: WallCurve,
    pub value: BigRational,
}

pub fn wall_curves(fan: &Fan) -> Result<Vec<WallCurve>> {
    let extra = |cone: usize, wall: &[usize]| {
        *fan.max_cones()[cone].rays().iter().find(|r| !wall.contains(r)).expect("cone has one ray off its wall")
    };
    Ok(fan
        .walls()?
        .into_iter()
        .map(|w| WallCurve {
            extra_left: extra(w.left, &w.rays),
            extra_right: extra(w.right, &w.rays),
            wall: w.rays,
            left: w.left,
            right: w.right,
        })
        .collect())
}

fn checked_data(d: &InvariantDivisor<'_>) -> Result<CartierData> {
    let fan = d.fan();
    fan.require_smooth()?;
    fan.require_complete()?;
    let data = d.cartier_data()?;
    if let Some(c) = data.first_non_integral() {
        return Err(Error::NotCartier(c));
    }
    Ok(data)
}

fn evaluate(fan: &Fan, data: &CartierData, w: &WallCurve) -> BigRational {
    (data.get(w.left) - data.get(w.right)).pair(fan.ray(w.extra_right))
}

/// `D·V(wall)` on a smooth complete fan.
pub fn wall_number(d: &InvariantDivisor<'_>, w: &WallCurve) -> Result<BigRational> {
    let data = checked_data(d)?;
    Ok(evaluate(d.fan(), &data, w))
}

/// Intersection numbers with every wall curve, in wall order.
pub fn wall_numbers(d: &InvariantDivisor<'_>) -> Result<Vec<(WallCurve, BigRational)>> {
    let data = checked_data(d)?;
    let fan = d.fan();
    Ok(wall_curves(fan)?
        .into_iter()
        .map(|w| {
            let v = evaluate(fan, &data, &w);
            (w, v)
        })
        .collect())
}

/// A wall attaining the minimal intersection number (first such in wall
/// order).
pub fn min_wall(d: &InvariantDivisor<'_>) -> Result<WallWitness> {
    wall_numbers(d)?
        .into_iter()
        .reduce(|best, cur| if cur.1 < best.1 { cur } else { best })
        .map(|(curve, value)| WallWitness { curve, value })
        .ok_or_else(|| Error::NonCompleteFan("fan has no walls".into()))
}

/// Nef iff `D·C ≥ 0` on every invariant curve; the witness is a minimizing
/// wall.
pub fn is_nef(d: &InvariantDivisor<'_>) -> Result<Verdict<WallWitness>> {
    let w = min_wall(d)?;
    Ok(if w.value.is_negative() { Verdict::Fails(w) } else { Verdict::Holds })
}

/// Ample iff `D·C > 0` on every invariant curve.
pub fn is_ample(d: &InvariantDivisor<'_>) -> Result<Verdict<WallWitness>> {
    let w = min_wall(d)?;
    Ok(if w.value.is_positive() { Verdict::Holds } else { Verdict::Fails(w) })
}

/// Whether every wall number vanishes (numerically trivial divisor).
pub fn is_numerically_trivial(d: &InvariantDivisor<'_>) -> Result<bool> {
    Ok(wall_numbers(d)?.iter().all(|(_, v)| v.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::RationalCovector;

    fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
    }

    fn f3() -> Fan {
        // rays e, e0 = (-1,3), f1, f0
        Fan::from_i64(2, &[&[1, 0], &[-1, 3], &[0, 1], &[0, -1]], &[&[1, 3], &[1, 2], &[0, 3], &[0, 2]])
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn p2_anticanonical_walls() {
        let f = p2();
        let k = InvariantDivisor::anticanonical(&f);
        let nums = wall_numbers(&k).unwrap();
        assert_eq!(nums.len(), 3);
        assert!(nums.iter().all(|(_, v)| *v == q(3)));
        assert!(is_ample(&k).unwrap().holds());
    }

    #[test]
    fn f3_negative_section() {
        let f = f3();
        let k = InvariantDivisor::anticanonical(&f);
        let v = is_nef(&k).unwrap();
        let w = v.witness().expect("-K on F3 is not nef");
        assert_eq!(w.value, q(-1));
        // the negative section is V(f1)
        assert_eq!(w.curve.wall, vec![2]);
    }

    #[test]
    fn zero_divisor() {
        let f = p2();
        let z = InvariantDivisor::zero(&f);
        assert!(wall_numbers(&z).unwrap().iter().all(|(_, v)| v.is_zero()));
        assert!(is_nef(&z).unwrap().holds());
        assert!(!is_ample(&z).unwrap().holds());
    }

    #[test]
    fn principal_divisor_is_numerically_trivial() {
        let f = f3();
        let d = InvariantDivisor::principal(&f, &RationalCovector::from_i64s(&[2, -5])).unwrap();
        assert!(is_numerically_trivial(&d).unwrap());
    }

    #[test]
    fn singular_fan_rejected() {
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 2], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = InvariantDivisor::zero(&f);
        assert!(matches!(is_nef(&d), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn non_cartier_rejected() {
        let f = p2();
        let d = InvariantDivisor::new(&f, vec![BigRational::new(1.into(), 2.into()), q(0), q(0)]).unwrap();
        assert!(matches!(is_nef(&d), Err(Error::NotCartier(_))));
    }

    #[test]
    fn swapped_labels_agree() {
        let f = f3();
        let d = InvariantDivisor::from_integers(&f, &[2, -1, 3, 0]).unwrap();
        for w in wall_curves(&f).unwrap() {
            assert_eq!(wall_number(&d, &w).unwrap(), wall_number(&d, &w.swapped()).unwrap());
        }
    }
}
