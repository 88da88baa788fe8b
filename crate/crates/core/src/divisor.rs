//! Torus-invariant divisors `D = Σ a_ρ D_ρ` on the toric variety of a fan.
//!
//! For a simplicial fan with full-dimensional maximal cones each divisor has
//! unique rational Cartier data `{m_σ}` solving `<m_σ, u_ρ> = -a_ρ` for
//! `ρ ∈ σ(1)`; it is Cartier exactly when every `m_σ` is integral. The
//! section polytope is `P_D = {m : <m, u_ρ> ≥ -a_ρ for all ρ}`, and on a
//! complete fan a Cartier divisor is base point free iff every `m_σ ∈ P_D`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::{for_each_subset, Fan, FanMap};
use crate::lattice::{self, solve_rational, IntegerMatrix, LatticeVector, RationalCovector};
use crate::Verdict;

/// A torus-invariant `Q`-divisor, coefficients aligned with the fan's rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantDivisor<'a> {
    fan: &'a Fan,
    coeffs: Vec<BigRational>,
}

impl<'a> InvariantDivisor<'a> {
    pub fn new(fan: &'a Fan, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != fan.rays().len() {
            return Err(Error::DimensionMismatch { expected: fan.rays().len(), found: coeffs.len() });
        }
        Ok(InvariantDivisor { fan, coeffs })
    }

    pub fn from_integers(fan: &'a Fan, coeffs: &[i64]) -> Result<Self> {
        Self::new(fan, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero(fan: &'a Fan) -> Self {
        InvariantDivisor { fan, coeffs: vec![BigRational::zero(); fan.rays().len()] }
    }

    /// `-K = Σ D_ρ`.
    pub fn anticanonical(fan: &'a Fan) -> Self {
        InvariantDivisor { fan, coeffs: vec![BigRational::one(); fan.rays().len()] }
    }

    /// The principal divisor `div(χ^m) = Σ <m, u_ρ> D_ρ`.
    pub fn principal(fan: &'a Fan, m: &RationalCovector) -> Result<Self> {
        if m.dim() != fan.dim() {
            return Err(Error::DimensionMismatch { expected: fan.dim(), found: m.dim() });
        }
        Ok(InvariantDivisor { fan, coeffs: fan.rays().iter().map(|u| m.pair(u)).collect() })
    }

    pub fn fan(&self) -> &'a Fan {
        self.fan
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        InvariantDivisor { fan: self.fan, coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Sum of two divisors on the same fan.
    pub fn add(&self, other: &InvariantDivisor<'_>) -> Result<Self> {
        if self.fan != other.fan {
            return Err(Error::FanMismatch);
        }
        Ok(InvariantDivisor {
            fan: self.fan,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    /// Solves `<m_σ, u_ρ> = -a_ρ` on every maximal cone.
    pub fn cartier_data(&self) -> Result<CartierData> {
        self.fan.require_simplicial()?;
        let covectors = (0..self.fan.max_cones().len())
            .map(|c| {
                let b: Vec<BigRational> =
                    self.fan.max_cones()[c].rays().iter().map(|&r| -&self.coeffs[r]).collect();
                solve_rational(&self.fan.generator_matrix(c), &b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CartierData { covectors })
    }

    pub fn polytope(&self) -> HPolytope {
        HPolytope {
            dim: self.fan.dim(),
            inequalities: self
                .fan
                .rays()
                .iter()
                .zip(&self.coeffs)
                .map(|(u, a)| Inequality { normal: u.clone(), rhs: -a })
                .collect(),
        }
    }

    /// `D` is base point free iff `m_σ ∈ P_D` for every maximal cone. The
    /// witness names the first cone and a ray whose inequality it violates.
    pub fn is_basepoint_free(&self) -> Result<Verdict<BasepointWitness>> {
        self.fan.require_complete()?;
        let data = self.cartier_data()?;
        if let Some(c) = data.first_non_integral() {
            return Err(Error::NotCartier(c));
        }
        let p = self.polytope();
        for (cone, m) in data.covectors().iter().enumerate() {
            if let Some(ray) = p.first_violated(m) {
                return Ok(Verdict::Fails(BasepointWitness { cone, ray }));
            }
        }
        Ok(Verdict::Holds)
    }

    /// `κ(D) = dim P_D` for nef `D`; refuses divisors that are not nef.
    ///
    /// `Q`-Cartier input is cleared of denominators first: `D` is nef iff
    /// `kD` is, and `P_{kD} = k·P_D` has the same dimension.
    pub fn kodaira_dimension(&self) -> Result<usize> {
        let data = self.cartier_data()?;
        let k = data.denominator_lcm();
        let scaled = self.scale(&BigRational::from_integer(k));
        if !scaled.is_basepoint_free()?.holds() {
            return Err(Error::NotNef);
        }
        match self.polytope().dimension()? {
            PolytopeDim::Dim(d) => Ok(d),
            PolytopeDim::Empty => Err(Error::NotNef),
        }
    }

    /// `D + div(χ^m)`.
    pub fn translate_by_character(&self, m: &RationalCovector) -> Result<Self> {
        self.add(&InvariantDivisor::principal(self.fan, m)?)
    }
}

impl fmt::Display for InvariantDivisor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasepointWitness {
    pub cone: usize,
    pub ray: usize,
}

/// One covector `m_σ` per maximal cone, in the fan's cone order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartierData {
    covectors: Vec<RationalCovector>,
}

impl CartierData {
    pub fn covectors(&self) -> &[RationalCovector] {
        &self.covectors
    }

    pub fn get(&self, cone: usize) -> &RationalCovector {
        &self.covectors[cone]
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }

    pub fn first_non_integral(&self) -> Option<usize> {
        self.covectors.iter().position(|m| !m.is_integral())
    }

    pub fn denominator_lcm(&self) -> BigInt {
        self.covectors.iter().fold(BigInt::one(), |l, m| l.lcm(&m.denominator_lcm()))
    }
}

/// `<m, normal> ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inequality {
    pub normal: LatticeVector,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    inequalities: Vec<Inequality>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeDim {
    Empty,
    Dim(usize),
}

impl HPolytope {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        if let Some(bad) = inequalities.iter().find(|i| i.normal.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: bad.normal.dim() });
        }
        Ok(HPolytope { dim, inequalities })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    /// Exact membership test, non-strict inequalities.
    pub fn contains(&self, m: &RationalCovector) -> Result<bool> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: m.dim() });
        }
        Ok(self.first_violated(m).is_none())
    }

    fn first_violated(&self, m: &RationalCovector) -> Option<usize> {
        self.inequalities.iter().position(|ineq| m.pair(&ineq.normal) < ineq.rhs)
    }

    /// Bounded iff the recession cone `{d : <d, u> ≥ 0 ∀u}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        let n = self.dim;
        let normals: Vec<Vec<BigRational>> =
            self.inequalities.iter().map(|i| i.normal.to_rational()).collect();
        if lattice::rank(&normals) < n {
            return false;
        }
        // a nonzero pointed recession cone has an extreme ray cut out by
        // n-1 independent tight normals
        let mut bounded = true;
        for_each_subset(normals.len(), n - 1, |rows| {
            if !bounded {
                return;
            }
            let sub: Vec<Vec<BigRational>> = rows.iter().map(|&i| normals[i].clone()).collect();
            let ns = lattice::nullspace(&sub, n);
            if ns.len() != 1 {
                return;
            }
            let d = &ns[0];
            let dots: Vec<BigRational> = normals.iter().map(|u| lattice::dot(u, d)).collect();
            if dots.iter().all(|x| !x.is_negative()) || dots.iter().all(|x| !x.is_positive()) {
                bounded = false;
            }
        });
        bounded
    }

    /// Vertices by exhaustive basic-solution enumeration, deduplicated and
    /// sorted.
    pub fn vertices(&self) -> Vec<RationalCovector> {
        let n = self.dim;
        let mut found = BTreeSet::new();
        for_each_subset(self.inequalities.len(), n, |rows| {
            let a = IntegerMatrix::from_lattice_rows(rows.iter().map(|&i| &self.inequalities[i].normal));
            let b: Vec<BigRational> = rows.iter().map(|&i| self.inequalities[i].rhs.clone()).collect();
            if let Ok(m) = solve_rational(&a, &b) {
                if self.first_violated(&m).is_none() {
                    found.insert(m);
                }
            }
        });
        found.into_iter().collect()
    }

    /// Dimension of the affine hull; only defined for bounded polytopes.
    pub fn dimension(&self) -> Result<PolytopeDim> {
        if !self.is_bounded() {
            return Err(Error::UnboundedPolytope);
        }
        let vs = self.vertices();
        let Some(first) = vs.first() else {
            return Ok(PolytopeDim::Empty);
        };
        let diffs: Vec<Vec<BigRational>> =
            vs[1..].iter().map(|v| (v - first).coords().to_vec()).collect();
        Ok(PolytopeDim::Dim(lattice::rank(&diffs)))
    }

    /// Number of lattice points, by scanning the vertex bounding box.
    pub fn count_lattice_points(&self) -> Result<u64> {
        if !self.is_bounded() {
            return Err(Error::UnboundedPolytope);
        }
        let vs = self.vertices();
        if vs.is_empty() {
            return Ok(0);
        }
        let lo: Vec<BigInt> = (0..self.dim)
            .map(|i| vs.iter().map(|v| v.coords()[i].ceil().to_integer()).min().unwrap())
            .collect();
        let hi: Vec<BigInt> = (0..self.dim)
            .map(|i| vs.iter().map(|v| v.coords()[i].floor().to_integer()).max().unwrap())
            .collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Ok(0);
        }
        let mut point = lo.clone();
        let mut count = 0u64;
        loop {
            let m = RationalCovector::new(point.iter().map(|c| BigRational::from_integer(c.clone())).collect());
            if self.first_violated(&m).is_none() {
                count += 1;
            }
            // odometer step
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Ok(count);
                }
                if point[i] < hi[i] {
                    point[i] += 1;
                    break;
                }
                point[i] = lo[i].clone();
                i += 1;
            }
        }
    }
}

/// `m ∘ φ`, the covector on the source lattice.
pub fn pull_back_covector(matrix: &IntegerMatrix, m: &RationalCovector) -> RationalCovector {
    assert_eq!(matrix.rows(), m.dim());
    RationalCovector::new(
        (0..matrix.cols())
            .map(|j| (0..matrix.rows()).fold(BigRational::zero(), |acc, i| acc + &m.coords()[i] * &matrix[(i, j)]))
            .collect(),
    )
}

/// `φ^*D`: the coefficient at a source ray `ρ` is `-<m'_{σ'}, φ(u_ρ)>` for
/// any target cone `σ'` containing `φ(u_ρ)`.
pub fn pullback<'m>(map: &'m FanMap, divisor: &InvariantDivisor<'_>) -> Result<InvariantDivisor<'m>> {
    if divisor.fan() != map.target() {
        return Err(Error::FanMismatch);
    }
    if let Verdict::Fails(c) = map.check()? {
        return Err(Error::IncompatibleMap(c));
    }
    let data = divisor.cartier_data()?;
    if let Some(c) = data.first_non_integral() {
        return Err(Error::NotCartier(c));
    }
    let coeffs = map
        .source()
        .rays()
        .iter()
        .map(|u| {
            let image = map.image(u);
            let t = map.target().cone_containing(&image).expect("compatible map covers every ray");
            -data.get(t).pair(&image)
        })
        .collect();
    InvariantDivisor::new(map.source(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> Fan {
        Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]])
    }

    fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
    }

    fn cov(xs: &[i64]) -> RationalCovector {
        RationalCovector::from_i64s(xs)
    }

    #[test]
    fn anticanonical_coefficients() {
        let f = p2();
        let k = InvariantDivisor::anticanonical(&f);
        assert!(k.coeffs().iter().all(One::is_one));
        assert_eq!(InvariantDivisor::anticanonical(&p1()).coeffs().len(), 2);
    }

    #[test]
    fn p2_cartier_data() {
        let f = p2();
        let data = InvariantDivisor::anticanonical(&f).cartier_data().unwrap();
        // cones <e1,e2>, <e2,-e1-e2>, <e1,-e1-e2>
        assert_eq!(data.covectors(), &[cov(&[-1, -1]), cov(&[2, -1]), cov(&[-1, 2])]);
        assert!(data.is_integral());
    }

    #[test]
    fn zero_divisor_cartier_data() {
        let f = p2();
        let data = InvariantDivisor::zero(&f).cartier_data().unwrap();
        assert!(data.covectors().iter().all(|m| *m == cov(&[0, 0])));
    }

    #[test]
    fn p1_polytope_interval() {
        let f = p1();
        let p = InvariantDivisor::anticanonical(&f).polytope();
        assert_eq!(p.vertices(), vec![cov(&[-1]), cov(&[1])]);
        assert!(!p.contains(&cov(&[2])).unwrap());
        assert!(p.contains(&cov(&[1])).unwrap());
        assert_eq!(p.count_lattice_points().unwrap(), 3);
    }

    #[test]
    fn p2_polytope_triangle() {
        let f = p2();
        let p = InvariantDivisor::anticanonical(&f).polytope();
        assert_eq!(p.vertices(), vec![cov(&[-1, -1]), cov(&[-1, 2]), cov(&[2, -1])]);
        assert_eq!(p.dimension().unwrap(), PolytopeDim::Dim(2));
        assert_eq!(p.count_lattice_points().unwrap(), 10);
    }

    #[test]
    fn contains_dimension_mismatch() {
        let f = p2();
        let p = InvariantDivisor::zero(&f).polytope();
        assert!(matches!(p.contains(&cov(&[0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn zero_divisor_polytope_is_a_point() {
        let f = p2();
        let z = InvariantDivisor::zero(&f);
        assert_eq!(z.polytope().count_lattice_points().unwrap(), 1);
        assert_eq!(z.kodaira_dimension().unwrap(), 0);
        assert!(z.is_basepoint_free().unwrap().holds());
    }

    #[test]
    fn empty_polytope() {
        let f = p1();
        let d = InvariantDivisor::from_integers(&f, &[-1, -1]).unwrap();
        let p = d.polytope();
        assert_eq!(p.dimension().unwrap(), PolytopeDim::Empty);
        assert_eq!(p.count_lattice_points().unwrap(), 0);
        assert_eq!(d.kodaira_dimension(), Err(Error::NotNef));
    }

    #[test]
    fn unbounded_polytope() {
        let p = HPolytope::new(
            2,
            vec![
                Inequality { normal: LatticeVector::from_i64s(&[1, 0]), rhs: BigRational::zero() },
                Inequality { normal: LatticeVector::from_i64s(&[0, 1]), rhs: BigRational::zero() },
            ],
        )
        .unwrap();
        assert!(!p.is_bounded());
        assert_eq!(p.count_lattice_points(), Err(Error::UnboundedPolytope));
        assert_eq!(p.dimension(), Err(Error::UnboundedPolytope));
    }

    #[test]
    fn p2_kodaira_dimension() {
        let f = p2();
        assert_eq!(InvariantDivisor::anticanonical(&f).kodaira_dimension().unwrap(), 2);
    }

    #[test]
    fn fractional_divisor_is_not_cartier() {
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 2], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = InvariantDivisor::from_integers(&f, &[1, 0, 0]).unwrap();
        let data = d.cartier_data().unwrap();
        assert!(!data.is_integral());
        assert_eq!(data.denominator_lcm(), BigInt::from(2));
    }

    #[test]
    fn non_cartier_rejected_by_bpf() {
        // weighted projective plane P(1,1,2): rays (1,0),(0,1),(-1,-2)
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = InvariantDivisor::from_integers(&f, &[1, 0, 0]).unwrap();
        assert!(matches!(d.is_basepoint_free(), Err(Error::NotCartier(_))));
        // 2D is Cartier, nef, and big
        let two = d.scale(&BigRational::from_integer(2.into()));
        assert!(two.is_basepoint_free().unwrap().holds());
        assert_eq!(d.kodaira_dimension().unwrap(), 2);
    }

    #[test]
    fn incomplete_fan_rejected_by_bpf() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2]]);
        let d = InvariantDivisor::zero(&f);
        assert!(matches!(d.is_basepoint_free(), Err(Error::NonCompleteFan(_))));
    }

    #[test]
    fn bpf_failure_witness() {
        // -D_0 on P^2 is anti-effective and not nef
        let f = p2();
        let d = InvariantDivisor::from_integers(&f, &[-1, 0, 0]).unwrap();
        let v = d.is_basepoint_free().unwrap();
        let w = v.witness().unwrap();
        let m = d.cartier_data().unwrap().get(w.cone).clone();
        assert!(m.pair(f.ray(w.ray)) < -&d.coeffs()[w.ray]);
    }

    #[test]
    fn pullback_along_identity() {
        let f = p2();
        let map = FanMap::identity(f.clone());
        let d = InvariantDivisor::from_integers(map.target(), &[2, -1, 3]).unwrap();
        let back = pullback(&map, &d).unwrap();
        assert_eq!(back.coeffs(), d.coeffs());
        let zero = InvariantDivisor::zero(map.target());
        assert!(pullback(&map, &zero).unwrap().coeffs().iter().all(Zero::is_zero));
    }

    #[test]
    fn pullback_rejects_other_fan() {
        let f = p2();
        let g = p1();
        let map = FanMap::identity(f);
        let d = InvariantDivisor::zero(&g);
        assert_eq!(pullback(&map, &d), Err(Error::FanMismatch));
    }

    #[test]
    fn principal_divisor_translates_polytope() {
        let f = p2();
        let d = InvariantDivisor::anticanonical(&f);
        let m = cov(&[1, -2]);
        let t = d.translate_by_character(&m).unwrap();
        let shifted: Vec<RationalCovector> = d.polytope().vertices().iter().map(|v| v - &m).collect();
        let mut expected = shifted;
        expected.sort();
        assert_eq!(t.polytope().vertices(), expected);
    }
}
