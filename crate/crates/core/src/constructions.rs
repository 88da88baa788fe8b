//! Fan builders: projective spaces, products, projectivized split bundles,
//! `P^1`-bundles over a toric base, and blow-ups along invariant centers.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fan::{Fan, FanMap};
use crate::lattice::{primitive, IntegerMatrix, LatticeVector};
use crate::Verdict;

/// Fan of `P^n`: rays `e_1..e_n, -(e_1+…+e_n)`, one maximal cone per omitted ray.
pub fn projective_space_fan(n: usize) -> Fan {
    assert!(n >= 1, "projective space needs n >= 1");
    let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
    rays.push(LatticeVector::new(vec![BigInt::from(-1); n]));
    let cones = (0..=n).rev().map(|skip| (0..=n).filter(|&r| r != skip).collect()).collect();
    Fan::new(n, rays, cones)
}

/// Product fan in `N_1 ⊕ N_2`; rays of `a` first, then rays of `b`.
pub fn product_fan(a: &Fan, b: &Fan) -> Fan {
    let dim = a.dim() + b.dim();
    let mut rays = Vec::with_capacity(a.rays().len() + b.rays().len());
    for u in a.rays() {
        let mut c = u.coords().to_vec();
        c.resize(dim, BigInt::zero());
        rays.push(LatticeVector::new(c));
    }
    for u in b.rays() {
        let mut c = vec![BigInt::zero(); a.dim()];
        c.extend_from_slice(u.coords());
        rays.push(LatticeVector::new(c));
    }
    let off = a.rays().len();
    let mut cones = Vec::new();
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            cones.push(ca.rays().iter().copied().chain(cb.rays().iter().map(|r| r + off)).collect());
        }
    }
    Fan::new(dim, rays, cones)
}

/// `P(O(a_0) ⊕ … ⊕ O(a_k))` over `P^s`, with `a_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    s: usize,
    twists: Vec<BigInt>,
}

impl BundleSpec {
    /// Twists are normalized so that the first summand is untwisted.
    pub fn new(s: usize, twists: &[i64]) -> Result<Self> {
        if s < 1 {
            return Err(Error::Usage("bundle base dimension must be at least 1".into()));
        }
        if twists.len() < 2 {
            return Err(Error::Usage("bundle needs at least two summands".into()));
        }
        let a0 = twists[0];
        Ok(BundleSpec { s, twists: twists.iter().map(|&a| BigInt::from(a - a0)).collect() })
    }

    /// `O ⊕ O(1)^{r+1}` over `P^s`.
    pub fn trivial_plus_hyperplanes(r: usize, s: usize) -> Result<Self> {
        let mut twists = vec![0];
        twists.extend(std::iter::repeat_n(1, r + 1));
        Self::new(s, &twists)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Fiber rank `k` (number of summands minus one).
    pub fn k(&self) -> usize {
        self.twists.len() - 1
    }

    pub fn twists(&self) -> &[BigInt] {
        &self.twists
    }
}

/// A split-bundle fan together with the named roles of its rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBundle {
    pub fan: Fan,
    /// `e_1..e_s` then the lifted negative base ray.
    pub base_rays: Vec<usize>,
    /// `f_1..f_k` then `f_0`.
    pub fiber_rays: Vec<usize>,
    /// `<f_1..f_k>`: its orbit closure is the section of the trivial quotient.
    pub section_cone: Vec<usize>,
    /// Projection `Z^s ⊕ Z^k → Z^s`.
    pub projection: IntegerMatrix,
}

impl SplitBundle {
    pub fn projection_map(&self) -> FanMap {
        let s = self.projection.rows();
        FanMap::new(self.projection.clone(), self.fan.clone(), projective_space_fan(s))
            .expect("projection has matching shape")
    }
}

/// Fan of the projectivized split bundle in `Z^s ⊕ Z^k`.
///
/// Fiber rays are `f_i = (0, e_i)` and `f_0 = (0, -Σe_i)`; base rays are
/// `(e_j, 0)` and `(-Σe_j, a_1, …, a_k)`. Maximal cones pair a cone of `P^s`
/// with a cone of the fiber `P^k`.
pub fn split_bundle_fan(spec: &BundleSpec) -> SplitBundle {
    let (s, k) = (spec.s(), spec.k());
    let dim = s + k;
    let mut rays: Vec<LatticeVector> = (0..s).map(|j| LatticeVector::basis(dim, j)).collect();
    let mut neg = vec![BigInt::from(-1); s];
    neg.extend(spec.twists()[1..].iter().cloned());
    rays.push(LatticeVector::new(neg));
    for i in 0..k {
        rays.push(LatticeVector::basis(dim, s + i));
    }
    let mut f0 = vec![BigInt::zero(); s];
    f0.extend(std::iter::repeat_n(BigInt::from(-1), k));
    rays.push(LatticeVector::new(f0));

    let base_rays: Vec<usize> = (0..=s).collect();
    let fiber_rays: Vec<usize> = (s + 1..=s + k + 1).collect();
    let mut cones = Vec::with_capacity((s + 1) * (k + 1));
    for &skip_b in base_rays.iter().rev() {
        for &skip_f in fiber_rays.iter().rev() {
            cones.push(
                base_rays
                    .iter()
                    .chain(&fiber_rays)
                    .copied()
                    .filter(|&r| r != skip_b && r != skip_f)
                    .collect(),
            );
        }
    }

    let mut projection = IntegerMatrix::zeros(s, dim);
    for j in 0..s {
        projection[(j, j)] = BigInt::from(1);
    }
    SplitBundle {
        fan: Fan::new(dim, rays, cones),
        section_cone: fiber_rays[..k].to_vec(),
        base_rays,
        fiber_rays,
        projection,
    }
}

/// Hirzebruch surface `F_a = P(O ⊕ O(a))` over `P^1`.
pub fn hirzebruch(a: i64) -> Fan {
    split_bundle_fan(&BundleSpec::new(1, &[0, a]).expect("valid spec")).fan
}

/// `P(O ⊕ L)` over a toric base, where `L` is given by one integer per base
/// ray. Rays `(u_ρ, c_ρ)` in base order, then `(0, 1)` and `(0, -1)`.
pub fn line_bundle_lift(base: &Fan, twist: &[i64]) -> Result<Fan> {
    if twist.len() != base.rays().len() {
        return Err(Error::DimensionMismatch { expected: base.rays().len(), found: twist.len() });
    }
    let n = base.dim();
    let mut rays: Vec<LatticeVector> = base
        .rays()
        .iter()
        .zip(twist)
        .map(|(u, &c)| {
            let mut v = u.coords().to_vec();
            v.push(BigInt::from(c));
            LatticeVector::new(v)
        })
        .collect();
    rays.push(LatticeVector::basis(n + 1, n));
    rays.push(&LatticeVector::zero(n + 1) - &LatticeVector::basis(n + 1, n));
    let (up, down) = (base.rays().len(), base.rays().len() + 1);
    let mut cones = Vec::new();
    for c in base.max_cones() {
        for tip in [up, down] {
            let mut rays: Vec<usize> = c.rays().to_vec();
            rays.push(tip);
            cones.push(rays);
        }
    }
    Ok(Fan::new(n + 1, rays, cones))
}

/// Blow-up of a smooth fan along the orbit closure of the cone spanned by
/// `cone_rays`: star subdivision at the sum of its generators.
pub fn blow_up_invariant(fan: &Fan, cone_rays: &[usize]) -> Result<Fan> {
    fan.require_simplicial()?;
    let is_face = !cone_rays.is_empty()
        && cone_rays.iter().all(|&r| r < fan.rays().len())
        && fan.max_cones().iter().any(|c| cone_rays.iter().all(|&r| c.contains_ray(r)));
    if !is_face {
        return Err(Error::NotACone(cone_rays.to_vec()));
    }
    if let Verdict::Fails(c) = fan.is_smooth()? {
        return Err(Error::NotSmooth(c));
    }
    let sum = cone_rays
        .iter()
        .skip(1)
        .fold(fan.ray(cone_rays[0]).clone(), |acc, &r| &acc + fan.ray(r));
    fan.star_subdivision(&primitive(&sum)?)
}

/// The threefold fan `Σ` with rays `x_1..x_4, y_1, y_2` (in that order).
pub fn sato_fan() -> Fan {
    Fan::from_i64(
        3,
        &[&[1, 0, 1], &[0, 1, 0], &[-1, 3, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]],
        &[
            &[0, 1, 4],
            &[0, 1, 5],
            &[1, 2, 4],
            &[1, 2, 5],
            &[2, 3, 4],
            &[2, 3, 5],
            &[3, 0, 4],
            &[3, 0, 5],
        ],
    )
}

/// `Δ`: `Σ` blown up along `<x_2, y_1>` and then along `<x_2, z_1>`. Rays
/// `x_1..x_4, y_1, y_2, z_1, z_2`.
pub fn sato_blown_up_fan() -> Fan {
    let sigma = sato_fan();
    let once = blow_up_invariant(&sigma, &[1, 4]).expect("<x2,y1> is a smooth cone");
    blow_up_invariant(&once, &[1, 6]).expect("<x2,z1> is a smooth cone")
}

/// Smooth complete fans used for cross-checking the positivity criteria.
pub fn catalog() -> Vec<(String, Fan)> {
    let mut out = vec![
        ("P1".to_string(), projective_space_fan(1)),
        ("P2".to_string(), projective_space_fan(2)),
        ("P1xP1".to_string(), product_fan(&projective_space_fan(1), &projective_space_fan(1))),
    ];
    for a in 0..=5 {
        out.push((format!("F{a}"), hirzebruch(a)));
    }
    out.push(("Delta".to_string(), sato_blown_up_fan()));
    out
}
