//! Simplicial rational fans with full-dimensional maximal cones.
//!
//! A [`Fan`] stores a table of primitive ray generators and its maximal cones
//! as sorted index sets into that table. Only simplicial fans whose maximal
//! cones are full-dimensional are supported; everything else is reported by
//! [`Fan::validate`].
//!
//! Derived facts (validation diagnostics, completeness, walls) are computed
//! lazily once per fan and cached, so repeated predicate calls on the same fan
//! stay cheap.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, smith_normal_form, IntegerMatrix, LatticeVector};
use crate::Verdict;

/// A cone given by strictly increasing indices into its fan's ray table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_ray(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ">")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticKind {
    RayDimension,
    ZeroRay,
    NonPrimitiveRay,
    DuplicateRay,
    UnusedRay,
    RayIndexOutOfRange,
    /// Maximal cone without exactly `dim` rays.
    NotSimplicial,
    /// Maximal cone whose rays are linearly dependent.
    DegenerateCone,
    DuplicateCone,
    /// Two maximal cones meet outside their common face.
    BadIntersection,
}

/// One violated fan invariant, naming the offending cones and rays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub cones: Vec<usize>,
    pub rays: Vec<usize>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            DiagnosticKind::RayDimension => "ray of wrong dimension",
            DiagnosticKind::ZeroRay => "zero ray",
            DiagnosticKind::NonPrimitiveRay => "non-primitive ray",
            DiagnosticKind::DuplicateRay => "duplicate ray",
            DiagnosticKind::UnusedRay => "ray in no maximal cone",
            DiagnosticKind::RayIndexOutOfRange => "ray index out of range",
            DiagnosticKind::NotSimplicial => "cone is not simplicial and full-dimensional",
            DiagnosticKind::DegenerateCone => "cone rays are linearly dependent",
            DiagnosticKind::DuplicateCone => "duplicate cone",
            DiagnosticKind::BadIntersection => "cones intersect outside a common face",
        };
        write!(f, "{what} (cones {:?}, rays {:?})", self.cones, self.rays)
    }
}

/// A codimension-one cone shared by exactly two maximal cones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wall {
    pub rays: Vec<usize>,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Default)]
struct Facts {
    diagnostics: OnceLock<Vec<Diagnostic>>,
    completeness: OnceLock<std::result::Result<Vec<Wall>, String>>,
}

impl Clone for Facts {
    fn clone(&self) -> Self {
        Facts::default()
    }
}

#[derive(Debug, Clone)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
    facts: Facts,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Assembles a fan without checking it; see [`Fan::validate`].
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Self {
        Fan {
            dim,
            rays,
            max_cones: max_cones.into_iter().map(Cone::new).collect(),
            facts: Facts::default(),
        }
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], max_cones: &[&[usize]]) -> Self {
        Self::new(
            dim,
            rays.iter().map(|r| LatticeVector::from_i64s(r)).collect(),
            max_cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn ray_index(&self, v: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// Index of the maximal cone with exactly this ray set.
    pub fn cone_index(&self, rays: &[usize]) -> Option<usize> {
        let c = Cone::new(rays.to_vec());
        self.max_cones.iter().position(|m| *m == c)
    }

    /// Matrix whose rows are the generators of maximal cone `c`.
    pub fn generator_matrix(&self, c: usize) -> IntegerMatrix {
        IntegerMatrix::from_lattice_rows(self.max_cones[c].rays().iter().map(|&r| &self.rays[r]))
    }

    /// Ray vectors of maximal cone `c`, in index order.
    pub fn cone_generators(&self, c: usize) -> Vec<&LatticeVector> {
        self.max_cones[c].rays().iter().map(|&r| &self.rays[r]).collect()
    }

    /// Geometric equality: same ray vectors and same maximal cones as sets of
    /// ray vectors, irrespective of storage order.
    pub fn same_as(&self, other: &Fan) -> bool {
        fn cones(f: &Fan) -> BTreeSet<BTreeSet<LatticeVector>> {
            f.max_cones
                .iter()
                .map(|c| c.rays().iter().map(|&r| f.rays[r].clone()).collect())
                .collect()
        }
        let rays_a: BTreeSet<_> = self.rays.iter().collect();
        let rays_b: BTreeSet<_> = other.rays.iter().collect();
        self.dim == other.dim
            && rays_a == rays_b
            && self.rays.len() == other.rays.len()
            && self.max_cones.len() == other.max_cones.len()
            && cones(self) == cones(other)
    }

    /// Every violated fan invariant, one diagnostic each. Empty iff valid.
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.facts.diagnostics.get_or_init(|| self.compute_diagnostics()).clone()
    }

    fn diagnostics(&self) -> &[Diagnostic] {
        self.facts.diagnostics.get_or_init(|| self.compute_diagnostics())
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let d = self.diagnostics();
        if d.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidFan(d.to_vec()))
        }
    }

    fn compute_diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let diag = |kind, cones: Vec<usize>, rays: Vec<usize>| Diagnostic { kind, cones, rays };

        let mut shape_ok = self.dim >= 1;
        for (i, r) in self.rays.iter().enumerate() {
            if r.dim() != self.dim {
                out.push(diag(DiagnosticKind::RayDimension, vec![], vec![i]));
                shape_ok = false;
            } else if r.is_zero() {
                out.push(diag(DiagnosticKind::ZeroRay, vec![], vec![i]));
                shape_ok = false;
            } else if !r.is_primitive() {
                out.push(diag(DiagnosticKind::NonPrimitiveRay, vec![], vec![i]));
            }
        }
        for i in 0..self.rays.len() {
            if let Some(j) = (0..i).find(|&j| self.rays[j] == self.rays[i]) {
                out.push(diag(DiagnosticKind::DuplicateRay, vec![], vec![j, i]));
            }
        }

        let mut used = vec![false; self.rays.len()];
        let mut cones_ok = vec![true; self.max_cones.len()];
        for (c, cone) in self.max_cones.iter().enumerate() {
            let bad: Vec<usize> =
                cone.rays().iter().copied().filter(|&r| r >= self.rays.len()).collect();
            if !bad.is_empty() {
                out.push(diag(DiagnosticKind::RayIndexOutOfRange, vec![c], bad));
                cones_ok[c] = false;
                continue;
            }
            for &r in cone.rays() {
                used[r] = true;
            }
            if cone.len() != self.dim {
                out.push(diag(DiagnosticKind::NotSimplicial, vec![c], cone.rays().to_vec()));
                cones_ok[c] = false;
            } else if shape_ok && self.generator_matrix(c).determinant().is_zero() {
                out.push(diag(DiagnosticKind::DegenerateCone, vec![c], cone.rays().to_vec()));
                cones_ok[c] = false;
            }
            if let Some(d) = (0..c).find(|&d| self.max_cones[d] == *cone) {
                out.push(diag(DiagnosticKind::DuplicateCone, vec![d, c], cone.rays().to_vec()));
                cones_ok[c] = false;
            }
        }
        for (r, &u) in used.iter().enumerate() {
            if !u {
                out.push(diag(DiagnosticKind::UnusedRay, vec![], vec![r]));
            }
        }

        if shape_ok {
            let duals: Vec<Option<Vec<Vec<BigRational>>>> = (0..self.max_cones.len())
                .map(|c| cones_ok[c].then(|| self.cone_duals(c)).flatten())
                .collect();
            for a in 0..self.max_cones.len() {
                for b in a + 1..self.max_cones.len() {
                    if let (Some(da), Some(db)) = (&duals[a], &duals[b]) {
                        if !self.meet_in_common_face(a, b, da, db) {
                            out.push(diag(DiagnosticKind::BadIntersection, vec![a, b], vec![]));
                        }
                    }
                }
            }
        }
        out
    }

    /// Rows `h_i` with `λ_i = <h_i, x>` the coordinates of `x` in the
    /// generators of maximal cone `c`.
    fn cone_duals(&self, c: usize) -> Option<Vec<Vec<BigRational>>> {
        let gt = self.generator_matrix(c).transpose().to_rational();
        lattice::inverse(&gt)
    }

    /// Checks that `σ_a ∩ σ_b` is spanned by their common ray vectors, by
    /// enumerating the extreme rays of the intersection cone.
    fn meet_in_common_face(
        &self,
        a: usize,
        b: usize,
        da: &[Vec<BigRational>],
        db: &[Vec<BigRational>],
    ) -> bool {
        let n = self.dim;
        let shared: Vec<Vec<BigRational>> = self
            .cone_generators(a)
            .into_iter()
            .filter(|u| self.cone_generators(b).contains(u))
            .map(|u| u.to_rational())
            .collect();
        let h: Vec<Vec<BigRational>> = da.iter().chain(db).cloned().collect();
        let feasible = |x: &[BigRational]| h.iter().all(|row| !lattice::dot(row, x).is_negative());
        let mut ok = true;
        for_each_subset(h.len(), n - 1, |rows| {
            if !ok {
                return;
            }
            let sub: Vec<Vec<BigRational>> = rows.iter().map(|&i| h[i].clone()).collect();
            let ns = lattice::nullspace(&sub, n);
            if ns.len() != 1 {
                return;
            }
            let d = &ns[0];
            let neg: Vec<BigRational> = d.iter().map(|x| -x).collect();
            for cand in [d.clone(), neg] {
                if feasible(&cand) && !shared.iter().any(|s| positively_parallel(s, &cand)) {
                    ok = false;
                }
            }
        });
        ok
    }

    /// Cheap shape check used by every operation that needs solvable cones.
    pub(crate) fn require_simplicial(&self) -> Result<()> {
        let structural = self.diagnostics().iter().any(|d| {
            matches!(
                d.kind,
                DiagnosticKind::RayDimension
                    | DiagnosticKind::ZeroRay
                    | DiagnosticKind::RayIndexOutOfRange
                    | DiagnosticKind::NotSimplicial
                    | DiagnosticKind::DegenerateCone
            )
        });
        if structural {
            Err(Error::InvalidFan(self.validate()))
        } else {
            Ok(())
        }
    }

    /// Coordinates `λ` of `v` in the generators of maximal cone `c`
    /// (`v = Σ λ_i u_i`, generators in index order).
    pub fn cone_coordinates(&self, c: usize, v: &LatticeVector) -> Vec<BigRational> {
        let gt = self.generator_matrix(c).transpose().to_rational();
        lattice::solve_square(gt, v.to_rational()).expect("simplicial cone has independent rays")
    }

    pub fn cone_contains(&self, c: usize, v: &LatticeVector) -> bool {
        self.cone_coordinates(c, v).iter().all(|x| !x.is_negative())
    }

    /// First maximal cone containing `v`.
    pub fn cone_containing(&self, v: &LatticeVector) -> Option<usize> {
        (0..self.max_cones.len()).find(|&c| self.cone_contains(c, v))
    }

    /// Smooth iff every maximal cone's generators extend to a `Z`-basis, i.e.
    /// the Smith form of its generator matrix is the identity. The witness is
    /// the first singular cone.
    pub fn is_smooth(&self) -> Result<Verdict<usize>> {
        self.require_valid()?;
        for c in 0..self.max_cones.len() {
            let snf = smith_normal_form(&self.generator_matrix(c));
            if !snf.diagonal().iter().all(One::is_one) {
                return Ok(Verdict::Fails(c));
            }
        }
        Ok(Verdict::Holds)
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        match self.is_smooth()? {
            Verdict::Holds => Ok(()),
            Verdict::Fails(c) => Err(Error::NotSmooth(c)),
        }
    }

    /// Whether the maximal cones cover `R^n`.
    ///
    /// Every facet must be shared by exactly two maximal cones lying on
    /// opposite sides of it, the cones must be connected through walls, and a
    /// generic point must lie in exactly one maximal cone.
    pub fn is_complete(&self) -> Result<bool> {
        self.require_valid()?;
        Ok(self.completeness().is_ok())
    }

    pub(crate) fn require_complete(&self) -> Result<()> {
        self.require_valid()?;
        match self.completeness() {
            Ok(_) => Ok(()),
            Err(e) => Err(Error::NonCompleteFan(e.clone())),
        }
    }

    fn completeness(&self) -> &std::result::Result<Vec<Wall>, String> {
        self.facts.completeness.get_or_init(|| self.compute_completeness())
    }

    fn compute_completeness(&self) -> std::result::Result<Vec<Wall>, String> {
        let n = self.dim;
        if self.max_cones.is_empty() {
            return Err("fan has no maximal cones".into());
        }
        let mut facets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (c, cone) in self.max_cones.iter().enumerate() {
            for skip in 0..cone.len() {
                let facet: Vec<usize> =
                    cone.rays().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &r)| r).collect();
                facets.entry(facet).or_default().push(c);
            }
        }

        let mut walls = Vec::with_capacity(facets.len());
        let mut normals = Vec::with_capacity(facets.len());
        for (facet, cones) in &facets {
            if cones.len() != 2 {
                return Err(format!(
                    "facet {facet:?} lies in {} maximal cone(s), expected 2",
                    cones.len()
                ));
            }
            let rows: Vec<Vec<BigRational>> = facet.iter().map(|&r| self.rays[r].to_rational()).collect();
            let w = lattice::nullspace(&rows, n).remove(0);
            let side = |c: usize| {
                let extra = self.max_cones[c].rays().iter().find(|r| !facet.contains(r)).unwrap();
                lattice::dot(&w, &self.rays[*extra].to_rational()).signum()
            };
            if side(cones[0]) == side(cones[1]) {
                return Err(format!("maximal cones {cones:?} lie on the same side of facet {facet:?}"));
            }
            walls.push(Wall { rays: facet.clone(), left: cones[0], right: cones[1] });
            normals.push(w);
        }

        // connectivity through walls
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for w in &walls {
                let next = if w.left == c {
                    w.right
                } else if w.right == c {
                    w.left
                } else {
                    continue;
                };
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(format!("maximal cone {c} is not connected to cone 0 through walls"));
        }

        // covering degree at a generic point
        let x = generic_point(n, &normals);
        let xv = LatticeVector::new(x);
        let covering = (0..self.max_cones.len())
            .filter(|&c| self.cone_coordinates(c, &xv).iter().all(|l| l.is_positive()))
            .count();
        if covering != 1 {
            return Err(format!("generic point {xv} lies in {covering} maximal cones"));
        }
        Ok(walls)
    }

    /// Walls of a complete fan, sorted by their ray sets; `left < right`.
    pub fn walls(&self) -> Result<Vec<Wall>> {
        self.require_valid()?;
        self.completeness().clone().map_err(Error::NonCompleteFan)
    }

    /// Star subdivision at the primitive vector `v`: every maximal cone that
    /// contains `v` is replaced by the cones spanned by `v` and its facets
    /// not containing `v`. The new ray is appended to the ray table.
    pub fn star_subdivision(&self, v: &LatticeVector) -> Result<Fan> {
        self.require_simplicial()?;
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        if !v.is_primitive() {
            return Err(Error::NotPrimitive(v.to_string()));
        }
        if self.ray_index(v).is_some() {
            return Err(Error::DuplicateRay(v.to_string()));
        }
        let new_ray = self.rays.len();
        let mut cones = Vec::with_capacity(self.max_cones.len() + self.dim);
        let mut hit = false;
        for (c, cone) in self.max_cones.iter().enumerate() {
            let coords = self.cone_coordinates(c, v);
            if coords.iter().any(Signed::is_negative) {
                cones.push(cone.rays().to_vec());
                continue;
            }
            hit = true;
            for (i, l) in coords.iter().enumerate() {
                if l.is_positive() {
                    let mut rays = cone.rays().to_vec();
                    rays[i] = new_ray;
                    cones.push(rays);
                }
            }
        }
        if !hit {
            return Err(Error::RayOutsideSupport(v.to_string()));
        }
        let mut rays = self.rays.clone();
        rays.push(v.clone());
        Ok(Fan::new(self.dim, rays, cones))
    }
}

/// Point on the moment curve `(1, t, t², …)` avoiding every given hyperplane.
fn generic_point(n: usize, normals: &[Vec<BigRational>]) -> Vec<BigInt> {
    let mut t = BigInt::from(2);
    loop {
        let mut x = Vec::with_capacity(n);
        let mut p = BigInt::one();
        for _ in 0..n {
            x.push(p.clone());
            p *= &t;
        }
        let xq: Vec<BigRational> = x.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        if normals.iter().all(|w| !lattice::dot(w, &xq).is_zero()) {
            return x;
        }
        t += 1;
    }
}

fn positively_parallel(a: &[BigRational], b: &[BigRational]) -> bool {
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() || a[i].is_positive() != b[i].is_positive() {
        return false;
    }
    let k = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| &(x * &k) == y)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A lattice map `N → N'` together with source and target fans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanMap {
    matrix: IntegerMatrix,
    source: Fan,
    target: Fan,
}

impl FanMap {
    /// `matrix` has shape `target.dim × source.dim`.
    pub fn new(matrix: IntegerMatrix, source: Fan, target: Fan) -> Result<Self> {
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: matrix.rows() });
        }
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: matrix.cols() });
        }
        Ok(FanMap { matrix, source, target })
    }

    pub fn identity(fan: Fan) -> Self {
        FanMap { matrix: IntegerMatrix::identity(fan.dim()), source: fan.clone(), target: fan }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn source(&self) -> &Fan {
        &self.source
    }

    pub fn target(&self) -> &Fan {
        &self.target
    }

    pub fn image(&self, v: &LatticeVector) -> LatticeVector {
        self.matrix.apply(v)
    }

    /// Target maximal cone containing the image of every generator of source
    /// cone `c`.
    pub fn target_cone_for(&self, c: usize) -> Option<usize> {
        let images: Vec<LatticeVector> =
            self.source.cone_generators(c).into_iter().map(|u| self.image(u)).collect();
        (0..self.target.max_cones().len())
            .find(|&t| images.iter().all(|im| self.target.cone_contains(t, im)))
    }

    /// Compatible iff each source maximal cone maps into some target cone;
    /// the witness is the first source cone that does not.
    pub fn check(&self) -> Result<Verdict<usize>> {
        self.source.require_simplicial()?;
        self.target.require_simplicial()?;
        for c in 0..self.source.max_cones().len() {
            if self.target_cone_for(c).is_none() {
                return Ok(Verdict::Fails(c));
            }
        }
        Ok(Verdict::Holds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]])
    }

    #[test]
    fn p2_is_valid_smooth_complete() {
        let f = p2();
        assert!(f.validate().is_empty());
        assert!(f.is_smooth().unwrap().holds());
        assert!(f.is_complete().unwrap());
        assert_eq!(f.walls().unwrap().len(), 3);
    }

    #[test]
    fn duplicate_ray_single_diagnostic() {
        // P^2 with ray 0 repeated as ray 3 in the third cone
        let f = Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 0]],
            &[&[0, 1], &[1, 2], &[2, 3]],
        );
        let d = f.validate();
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].kind, DiagnosticKind::DuplicateRay);
        assert_eq!(d[0].rays, vec![0, 3]);
    }

    #[test]
    fn non_primitive_ray_single_diagnostic() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 2]], &[&[0, 1]]);
        let d = f.validate();
        assert_eq!(d.len(), 1, "{d:?}");
        assert_eq!(d[0].kind, DiagnosticKind::NonPrimitiveRay);
        assert_eq!(d[0].rays, vec![1]);
    }

    #[test]
    fn overlapping_cones_are_reported() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1], &[-1, 2]], &[&[0, 1], &[2, 3]]);
        let d = f.validate();
        assert!(d.iter().any(|d| d.kind == DiagnosticKind::BadIntersection && d.cones == vec![0, 1]));
    }

    #[test]
    fn crossing_cones_in_3d_are_reported() {
        // two simplicial cones whose interiors cross without sharing rays or
        // containing each other's generators
        let f = Fan::from_i64(
            3,
            &[&[0, 4, 1], &[-4, -2, 1], &[4, -2, 1], &[0, -4, 1], &[4, 2, 1], &[-4, 2, 1]],
            &[&[0, 1, 2], &[3, 4, 5]],
        );
        let d = f.validate();
        assert!(d.iter().any(|d| d.kind == DiagnosticKind::BadIntersection), "{d:?}");
    }

    #[test]
    fn singular_cone() {
        let f = Fan::from_i64(2, &[&[1, 0], &[1, 2]], &[&[0, 1]]);
        assert_eq!(f.is_smooth().unwrap(), Verdict::Fails(0));
    }

    #[test]
    fn p1_complete() {
        let f = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]);
        assert!(f.is_complete().unwrap());
        assert_eq!(f.walls().unwrap().len(), 1);
    }

    #[test]
    fn p2_missing_cone_incomplete() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2]]);
        assert!(f.validate().is_empty());
        assert!(!f.is_complete().unwrap());
        assert!(matches!(f.walls(), Err(Error::NonCompleteFan(_))));
    }

    #[test]
    fn double_cover_of_plane_is_not_complete() {
        // eight cones winding twice around the origin: every wall has two
        // cones on opposite sides, but a generic point is covered twice
        let f = Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1], &[1, 1], &[-1, 1], &[-1, -1], &[1, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[6, 7], &[7, 0]],
        );
        let err = f.compute_completeness().unwrap_err();
        assert!(err.contains("lies in 2 maximal cones"), "{err}");
        assert!(f.validate().iter().any(|d| d.kind == DiagnosticKind::BadIntersection));
    }

    #[test]
    fn star_subdivision_of_p2() {
        let f = p2().star_subdivision(&LatticeVector::from_i64s(&[1, 1])).unwrap();
        assert_eq!(f.rays().len(), 4);
        assert_eq!(f.max_cones().len(), 4);
        assert!(f.validate().is_empty());
        assert!(f.is_smooth().unwrap().holds());
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn star_subdivision_on_a_ray_is_identity_like() {
        let err = p2().star_subdivision(&LatticeVector::from_i64s(&[0, 1])).unwrap_err();
        assert!(matches!(err, Error::DuplicateRay(_)));
    }

    #[test]
    fn star_subdivision_outside_support() {
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1]], &[&[0, 1]]);
        let err = f.star_subdivision(&LatticeVector::from_i64s(&[-1, 0])).unwrap_err();
        assert!(matches!(err, Error::RayOutsideSupport(_)));
    }

    #[test]
    fn star_subdivision_rejects_non_primitive() {
        let err = p2().star_subdivision(&LatticeVector::from_i64s(&[2, 2])).unwrap_err();
        assert!(matches!(err, Error::NotPrimitive(_)));
    }

    #[test]
    fn subdividing_a_wall_ray() {
        // (2,1) lies in the interior of <e1, e1+e2>
        let f = p2().star_subdivision(&LatticeVector::from_i64s(&[1, 1])).unwrap();
        let g = f.star_subdivision(&LatticeVector::from_i64s(&[2, 1])).unwrap();
        assert_eq!(g.max_cones().len(), 5);
        assert!(g.validate().is_empty());
        assert!(g.is_complete().unwrap());
    }

    #[test]
    fn identity_map_is_compatible() {
        let m = FanMap::identity(p2());
        assert!(m.check().unwrap().holds());
    }

    #[test]
    fn fan_map_dimension_mismatch() {
        let err = FanMap::new(IntegerMatrix::identity(3), p2(), p2()).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn subsets_enumeration() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            count += 1;
        });
        assert_eq!(count, 1);
    }
}
