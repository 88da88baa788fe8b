//! Picard lattices of rational surfaces under point blow-ups.
//!
//! A [`PicardLattice`] is a free abelian group with a symmetric integer
//! intersection form and a tracked canonical class. Blowing up a point adds an
//! exceptional class `E` with `E² = -1`, orthogonal to everything pulled back,
//! and replaces `K` by `σ*K + E`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// A rational divisor class in a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivClass(Vec<BigRational>);

impl DivClass {
    pub fn new(coords: Vec<BigRational>) -> Self {
        DivClass(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        DivClass(coords.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &DivClass) -> DivClass {
        assert_eq!(self.rank(), other.rank());
        DivClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> DivClass {
        DivClass(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> DivClass {
        DivClass(self.0.iter().map(|a| -a).collect())
    }

    /// Whether all coordinates are even integers, i.e. the class is `2L`
    /// for an integral `L`.
    pub fn is_even(&self) -> bool {
        self.0
            .iter()
            .all(|a| a.is_integer() && (a.to_integer() % BigInt::from(2)).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardLattice {
    labels: Vec<String>,
    gram: Vec<Vec<BigInt>>,
    canonical: Vec<BigInt>,
}

impl PicardLattice {
    /// `P^1 × P^1` in the basis of the two rulings.
    pub fn ruled_quadric() -> Self {
        PicardLattice {
            labels: vec!["F1".into(), "F2".into()],
            gram: vec![
                vec![BigInt::zero(), BigInt::one()],
                vec![BigInt::one(), BigInt::zero()],
            ],
            canonical: vec![BigInt::from(-2), BigInt::from(-2)],
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn canonical(&self) -> DivClass {
        DivClass(self.canonical.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Blow up one point: new basis vector `E_i`, `E_i² = -1`,
    /// `K ↦ σ*K + E_i`.
    pub fn blow_up_point(&self) -> Self {
        let r = self.rank();
        let exceptional = self.labels.iter().filter(|l| l.starts_with('E')).count();
        let mut labels = self.labels.clone();
        labels.push(format!("E{exceptional}"));
        let mut gram: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.push(BigInt::zero());
                row
            })
            .collect();
        let mut last = vec![BigInt::zero(); r + 1];
        last[r] = BigInt::from(-1);
        gram.push(last);
        let mut canonical = self.canonical.clone();
        canonical.push(BigInt::one());
        PicardLattice { labels, gram, canonical }
    }

    pub fn blow_up_points(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |l, _| l.blow_up_point())
    }

    /// `Aᵀ · gram · B`.
    pub fn pairing(&self, a: &DivClass, b: &DivClass) -> Result<BigRational> {
        for c in [a, b] {
            if c.rank() != self.rank() {
                return Err(Error::DimensionMismatch { expected: self.rank(), found: c.rank() });
            }
        }
        let mut acc = BigRational::zero();
        for (i, x) in a.coords().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords().iter().enumerate() {
                if !self.gram[i][j].is_zero() {
                    acc += x * y * &self.gram[i][j];
                }
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self, a: &DivClass) -> Result<BigRational> {
        self.pairing(a, a)
    }

    /// Pullback of a class from a lattice this one was blown up from.
    pub fn pull_back(&self, a: &DivClass) -> Result<DivClass> {
        if a.rank() > self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: a.rank() });
        }
        let mut c = a.coords().to_vec();
        c.resize(self.rank(), BigRational::zero());
        Ok(DivClass(c))
    }

    /// Class of the `i`-th exceptional curve.
    pub fn exceptional(&self, i: usize) -> Option<DivClass> {
        let label = format!("E{i}");
        let pos = self.labels.iter().position(|l| *l == label)?;
        let mut c = vec![BigRational::zero(); self.rank()];
        c[pos] = BigRational::one();
        Some(DivClass(c))
    }

    /// Signature `(positive, negative)` of the intersection form, by
    /// congruence diagonalization over `Q`.
    pub fn signature(&self) -> (usize, usize) {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let (mut pos, mut neg) = (0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                    swap_sym(&mut a, k, i);
                } else if let Some((i, j)) =
                    (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
                {
                    // e_i += e_j makes the diagonal entry 2·a_ij
                    add_sym(&mut a, i, j);
                    swap_sym(&mut a, k, i);
                } else {
                    break;
                }
            }
            let p = a[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &p;
                for j in k..n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
                for j in k..n {
                    let d = &f * &a[j][k];
                    a[j][i] -= d;
                }
            }
        }
        (pos, neg)
    }
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Basis change `e_i ← e_i + e_j` applied to a symmetric form.
fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

/// Numerical ledger for the double cover branched along the strict
/// transform of a `(4,4)` grid of lines on `P^1 × P^1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCoverLedger {
    pub k_squared_before: String,
    pub k_squared_after: String,
    pub blown_up_points: usize,
    /// `B = σ*B' - 2ΣE_i`.
    pub branch_class: Vec<String>,
    pub branch_is_even: bool,
    /// `L = B/2`.
    pub half_branch: Vec<String>,
    /// `K_Z + L`.
    pub k_plus_half_branch: Vec<String>,
    pub k_plus_half_branch_is_zero: bool,
    /// `σ*(K_{Z'} + B'/2)` computed downstairs and pulled back.
    pub pulled_back_log_canonical: Vec<String>,
    /// Strict transform of a ruling line through four blown-up points.
    pub witness_curve: Vec<String>,
    pub witness_self_intersection: String,
    pub witness_canonical_degree: String,
    pub anticanonical_on_witness: String,
    pub signature: (usize, usize),
}

fn strings(c: &DivClass) -> Vec<String> {
    c.coords().iter().map(ToString::to_string).collect()
}

/// Builds `P^1 × P^1`, blows up the 16 grid points, and evaluates every
/// class identity of the ledger exactly.
pub fn double_cover_ledger() -> DoubleCoverLedger {
    let base = PicardLattice::ruled_quadric();
    let k_base = base.canonical();
    let branch_base = DivClass::from_i64s(&[4, 4]);
    let blown = base.blow_up_points(16);
    let k = blown.canonical();

    let mut branch = blown.pull_back(&branch_base).expect("rank grows");
    for i in 0..16 {
        let e = blown.exceptional(i).expect("sixteen exceptional curves");
        branch = branch.add(&e.scale(&BigRational::from_integer((-2).into())));
    }
    let half = BigRational::new(1.into(), 2.into());
    let l = branch.scale(&half);
    let k_plus_l = k.add(&l);
    let log_canonical = blown
        .pull_back(&k_base.add(&branch_base.scale(&half)))
        .expect("rank grows");

    // vertical line of the grid through its four points E0..E3
    let mut c = blown.pull_back(&DivClass::from_i64s(&[0, 1])).expect("rank grows");
    for i in 0..4 {
        c = c.add(&blown.exceptional(i).expect("exists").neg());
    }
    let pair = |a: &DivClass, b: &DivClass| blown.pairing(a, b).expect("ranks agree");

    DoubleCoverLedger {
        k_squared_before: base.self_intersection(&k_base).expect("ranks agree").to_string(),
        k_squared_after: pair(&k, &k).to_string(),
        blown_up_points: 16,
        branch_class: strings(&branch),
        branch_is_even: branch.is_even(),
        half_branch: strings(&l),
        k_plus_half_branch: strings(&k_plus_l),
        k_plus_half_branch_is_zero: k_plus_l.is_zero(),
        pulled_back_log_canonical: strings(&log_canonical),
        witness_self_intersection: pair(&c, &c).to_string(),
        witness_canonical_degree: pair(&k, &c).to_string(),
        anticanonical_on_witness: pair(&k.neg(), &c).to_string(),
        witness_curve: strings(&c),
        signature: blown.signature(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn quadric_numbers() {
        let l = PicardLattice::ruled_quadric();
        let k = l.canonical();
        assert_eq!(l.self_intersection(&k).unwrap(), q(8));
        let f = DivClass::from_i64s(&[0, 1]);
        assert_eq!(l.self_intersection(&f).unwrap(), q(0));
        assert_eq!(l.pairing(&k, &f).unwrap(), q(-2));
    }

    #[test]
    fn k_squared_drops_by_one() {
        let mut l = PicardLattice::ruled_quadric();
        for expected in (-8..=8).rev() {
            assert_eq!(l.self_intersection(&l.canonical()).unwrap(), q(expected));
            if expected > -8 {
                l = l.blow_up_point();
            }
        }
        assert_eq!(l.rank(), 18);
        assert_eq!(PicardLattice::ruled_quadric().blow_up_points(0), PicardLattice::ruled_quadric());
    }

    #[test]
    fn pullback_isometry() {
        let base = PicardLattice::ruled_quadric();
        let up = base.blow_up_points(3);
        let a = DivClass::from_i64s(&[2, -1]);
        let b = DivClass::from_i64s(&[5, 3]);
        let (pa, pb) = (up.pull_back(&a).unwrap(), up.pull_back(&b).unwrap());
        assert_eq!(up.pairing(&pa, &pb).unwrap(), base.pairing(&a, &b).unwrap());
        for i in 0..3 {
            assert!(up.pairing(&pa, &up.exceptional(i).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn pairing_dimension_mismatch() {
        let l = PicardLattice::ruled_quadric();
        let err = l.pairing(&DivClass::from_i64s(&[1]), &DivClass::from_i64s(&[1, 0])).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn signature_tracks_blowups() {
        for k in 0..5 {
            assert_eq!(PicardLattice::ruled_quadric().blow_up_points(k).signature(), (1, 1 + k));
        }
    }

    #[test]
    fn ledger_values() {
        let l = double_cover_ledger();
        assert_eq!(l.k_squared_before, "8");
        assert_eq!(l.k_squared_after, "-8");
        assert!(l.branch_is_even);
        assert!(l.k_plus_half_branch_is_zero);
        assert!(l.pulled_back_log_canonical.iter().all(|c| c == "0"));
        assert_eq!(l.anticanonical_on_witness, "-2");
        assert_eq!(l.witness_self_intersection, "-4");
        assert_eq!(l.witness_canonical_degree, "2");
        assert_eq!(l.signature, (1, 17));
    }
}
