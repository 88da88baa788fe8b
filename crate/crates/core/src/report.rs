//! Reproduction reports: each command builds its varieties, runs every check
//! and records `(description, expected, computed, pass)` steps.
//!
//! Reports are deterministic: no timestamps, fixed iteration orders, exact
//! arithmetic. Exit codes: 0 when every asserted step passes, 1 when one
//! fails; input and usage errors (2) are raised before a report exists.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::{blow_up_invariant, catalog, sato_fan, split_bundle_fan, BundleSpec};
use crate::divisor::InvariantDivisor;
use crate::error::{Error, Result};
use crate::fan::{Fan, FanMap};
use crate::intersection::{is_ample, is_nef, WallWitness};
use crate::lattice::{IntegerMatrix, LatticeVector, RationalCovector};
use crate::picard::double_cover_ledger;
use crate::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub description: String,
    pub expected: String,
    pub computed: String,
    /// Where the expected value comes from.
    pub source: String,
    /// `None` for informational steps that carry no assertion.
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub example: String,
    pub steps: Vec<Step>,
    pub overall: bool,
}

impl Report {
    pub fn new(example: impl Into<String>) -> Self {
        Report { example: example.into(), steps: Vec::new(), overall: true }
    }

    /// Asserted step: passes iff `computed == expected`.
    pub fn check(&mut self, description: impl Into<String>, expected: impl ToString, computed: impl ToString, source: &str) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.overall &= pass;
        self.steps.push(Step { description: description.into(), expected, computed, source: source.into(), pass: Some(pass) });
    }

    /// Asserted step with an explicit verdict.
    pub fn assert(&mut self, description: impl Into<String>, expected: impl ToString, computed: impl ToString, pass: bool, source: &str) {
        self.overall &= pass;
        self.steps.push(Step {
            description: description.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            source: source.into(),
            pass: Some(pass),
        });
    }

    pub fn info(&mut self, description: impl Into<String>, computed: impl ToString) {
        self.steps.push(Step {
            description: description.into(),
            expected: String::new(),
            computed: computed.to_string(),
            source: String::new(),
            pass: None,
        });
    }

    pub fn exit_code(&self) -> i32 {
        if self.overall {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.steps.iter().map(|s| s.description.len()).max().unwrap_or(0);
        let mut out = format!("example: {}\n", self.example);
        for s in &self.steps {
            let tag = match s.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INFO",
            };
            let _ = write!(out, "  [{tag}] {:<width$}  computed={}", s.description, s.computed);
            if s.pass.is_some() {
                let _ = write!(out, "  expected={}", s.expected);
            }
            if !s.source.is_empty() {
                let _ = write!(out, "  ({})", s.source);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "overall: {}", if self.overall { "PASS" } else { "FAIL" });
        out
    }
}

const GOLDEN_TABLE: &str = "golden table";
const DEFINITION: &str = "definition";
const ADJUNCTION: &str = "derived: adjunction";

/// Ray names and generators of the blown-up threefold.
pub const SATO_RAYS: [(&str, [i64; 3]); 8] = [
    ("x1", [1, 0, 1]),
    ("x2", [0, 1, 0]),
    ("x3", [-1, 3, 0]),
    ("x4", [0, -1, 0]),
    ("y1", [0, 0, 1]),
    ("y2", [0, 0, -1]),
    ("z1", [0, 1, 1]),
    ("z2", [0, 2, 1]),
];

/// Named maximal cones of the blown-up threefold.
pub const SATO_CONES: [(&str, [&str; 3]); 12] = [
    ("tau1", ["x1", "x2", "z2"]),
    ("tau2", ["x1", "z1", "z2"]),
    ("tau3", ["x1", "z1", "y1"]),
    ("tau4", ["x3", "y1", "z1"]),
    ("tau5", ["x3", "z2", "z1"]),
    ("tau6", ["x3", "z2", "x2"]),
    ("sigma3", ["x1", "x2", "y2"]),
    ("sigma4", ["x2", "x3", "y2"]),
    ("sigma5", ["x3", "x4", "y1"]),
    ("sigma6", ["x3", "x4", "y2"]),
    ("sigma7", ["x4", "x1", "y1"]),
    ("sigma8", ["x4", "x1", "y2"]),
];

/// Cartier data of the anticanonical divisor on the named cones.
pub const SATO_CARTIER: [(&str, [i64; 3]); 12] = [
    ("tau1", [-2, -1, 1]),
    ("tau6", [-2, -1, 1]),
    ("sigma3", [-2, -1, 1]),
    ("sigma4", [-2, -1, 1]),
    ("tau2", [0, 0, -1]),
    ("tau3", [0, 0, -1]),
    ("tau4", [1, 0, -1]),
    ("tau5", [1, 0, -1]),
    ("sigma5", [4, 1, -1]),
    ("sigma6", [4, 1, 1]),
    ("sigma7", [0, 1, -1]),
    ("sigma8", [-2, 1, 1]),
];

fn sato_ray(name: &str) -> LatticeVector {
    let (_, v) = SATO_RAYS.iter().find(|(n, _)| *n == name).expect("known ray name");
    LatticeVector::from_i64s(v)
}

fn cone_vectors(fan: &Fan, c: usize) -> BTreeSet<LatticeVector> {
    fan.cone_generators(c).into_iter().cloned().collect()
}

/// Index of the maximal cone of `fan` spanned by the named rays.
fn named_cone(fan: &Fan, name: &str) -> Option<usize> {
    let (_, rays) = SATO_CONES.iter().find(|(n, _)| *n == name)?;
    let want: BTreeSet<LatticeVector> = rays.iter().map(|r| sato_ray(r)).collect();
    (0..fan.max_cones().len()).find(|&c| cone_vectors(fan, c) == want)
}

fn verdict_text<W>(v: &Verdict<W>, describe: impl Fn(&W) -> String) -> String {
    match v {
        Verdict::Holds => "true".into(),
        Verdict::Fails(w) => format!("false ({})", describe(w)),
    }
}

fn describe_wall(fan: &Fan, w: &WallWitness) -> String {
    let rays: Vec<String> = w.curve.wall.iter().map(|&r| fan.ray(r).to_string()).collect();
    format!("wall [{}] between cones {} and {}, value {}", rays.join(" "), w.curve.left, w.curve.right, w.value)
}

fn err_text(e: &Error) -> String {
    format!("error: {e}")
}

/// The toric threefold example: star subdivisions, Cartier data of `-K`,
/// positivity verdicts upstairs and on the Hirzebruch base.
pub fn cmd_example_sato() -> Report {
    let mut rep = Report::new("sato");
    let sigma = sato_fan();
    rep.check("Sigma is a valid fan", "[]", format!("{:?}", sigma.validate()), DEFINITION);
    rep.check("Sigma rays / maximal cones", "6/8", format!("{}/{}", sigma.rays().len(), sigma.max_cones().len()), GOLDEN_TABLE);

    let z1 = sato_ray("z1");
    let z2 = sato_ray("z2");
    let delta = match sigma.star_subdivision(&z1).and_then(|f| f.star_subdivision(&z2)) {
        Ok(f) => f,
        Err(e) => {
            rep.assert("star subdivisions at z1, z2", "ok", err_text(&e), false, DEFINITION);
            return rep;
        }
    };
    rep.check("Delta rays / maximal cones", "8/12", format!("{}/{}", delta.rays().len(), delta.max_cones().len()), GOLDEN_TABLE);
    let golden: BTreeSet<BTreeSet<LatticeVector>> = SATO_CONES
        .iter()
        .map(|(_, rays)| rays.iter().map(|r| sato_ray(r)).collect())
        .collect();
    let computed: BTreeSet<BTreeSet<LatticeVector>> =
        (0..delta.max_cones().len()).map(|c| cone_vectors(&delta, c)).collect();
    let matched = computed.intersection(&golden).count();
    rep.check("maximal cones match the golden list", "12/12", format!("{matched}/{}", golden.len().max(computed.len())), GOLDEN_TABLE);
    rep.check("Delta is smooth", "true", delta.is_smooth().map(|v| v.holds()).unwrap_or(false), GOLDEN_TABLE);
    rep.check("Delta is complete", "true", delta.is_complete().unwrap_or(false), GOLDEN_TABLE);

    let k = InvariantDivisor::anticanonical(&delta);
    rep.check("-K_X coefficients", "[1,1,1,1,1,1,1,1]", &k, DEFINITION);
    match k.cartier_data() {
        Ok(data) => {
            for (name, m) in SATO_CARTIER {
                let expected = RationalCovector::from_i64s(&m);
                let computed = named_cone(&delta, name).map_or_else(|| "missing cone".into(), |c| data.get(c).to_string());
                rep.check(format!("m[{name}]"), expected, computed, GOLDEN_TABLE);
            }
        }
        Err(e) => rep.assert("Cartier data of -K_X", "table", err_text(&e), false, GOLDEN_TABLE),
    }

    let bpf = k.is_basepoint_free();
    rep.check(
        "-K_X is base point free",
        "true",
        bpf.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| format!("cone {} ray {}", w.cone, w.ray))),
        GOLDEN_TABLE,
    );
    let nef = is_nef(&k);
    rep.check("-K_X is nef", "true", nef.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| describe_wall(&delta, w))), GOLDEN_TABLE);
    rep.check("kappa(-K_X)", 3, k.kodaira_dimension().map_or_else(|e| err_text(&e), |d| d.to_string()), GOLDEN_TABLE);
    let ample = is_ample(&k);
    rep.assert(
        "-K_X is not ample (weak Fano)",
        "false",
        ample.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| describe_wall(&delta, w))),
        matches!(ample, Ok(Verdict::Fails(_))),
        GOLDEN_TABLE,
    );

    let base = split_bundle_fan(&BundleSpec::new(1, &[0, 3]).expect("valid spec")).fan;
    let proj = IntegerMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0]]);
    let map = FanMap::new(proj, delta.clone(), base.clone()).expect("shapes agree");
    rep.check("projection Delta -> base is a fan map", "true", map.check().map_or_else(|e| err_text(&e), |v| v.holds().to_string()), GOLDEN_TABLE);

    let kz = InvariantDivisor::anticanonical(&base);
    match is_nef(&kz) {
        Ok(v) => {
            rep.check("-K_Z is nef", "false", v.holds(), GOLDEN_TABLE);
            let value = v.witness().map_or_else(|| "none".to_string(), |w| w.value.to_string());
            rep.check("-K_Z on the negative section", -1, value, ADJUNCTION);
            if let Some(w) = v.witness() {
                rep.info("-K_Z witness", describe_wall(&base, w));
            }
        }
        Err(e) => rep.assert("-K_Z is nef", "false", err_text(&e), false, GOLDEN_TABLE),
    }
    rep
}

/// Largest total dimension `r + s + 1` accepted by [`cmd_example_bundle`].
pub const MAX_BUNDLE_DIM: usize = 4;

/// Blow-up of the trivial-quotient section of `P(O ⊕ O(1)^{r+1})` over `P^s`.
///
/// For `r > s` the anticanonical divisor upstairs must be ample and the one
/// downstairs not nef; for `r ≤ s` the verdicts are reported without
/// assertions.
pub fn cmd_example_bundle(r: usize, s: usize) -> Result<Report> {
    if r < 1 || s < 1 {
        return Err(Error::Usage("r and s must be at least 1".into()));
    }
    if r + s + 1 > MAX_BUNDLE_DIM {
        return Err(Error::Usage(format!("dimension r+s+1 = {} exceeds {MAX_BUNDLE_DIM}", r + s + 1)));
    }
    let mut rep = Report::new(format!("bundle r={r} s={s}"));
    let bundle = split_bundle_fan(&BundleSpec::trivial_plus_hyperplanes(r, s)?);
    let z = &bundle.fan;
    rep.info("Z rays / maximal cones", format!("{}/{}", z.rays().len(), z.max_cones().len()));
    rep.check("Z is smooth", "true", z.is_smooth()?.holds(), DEFINITION);
    rep.check("Z is complete", "true", z.is_complete()?, DEFINITION);
    rep.check("projection Z -> P^s is a fan map", "true", bundle.projection_map().check()?.holds(), DEFINITION);
    let section: Vec<String> = bundle.section_cone.iter().map(|&i| z.ray(i).to_string()).collect();
    rep.info("section cone", section.join(" "));

    let x = blow_up_invariant(z, &bundle.section_cone)?;
    rep.info("X rays / maximal cones", format!("{}/{}", x.rays().len(), x.max_cones().len()));
    rep.check("X is smooth", "true", x.is_smooth()?.holds(), DEFINITION);
    rep.check("X is complete", "true", x.is_complete()?, DEFINITION);

    let kx = InvariantDivisor::anticanonical(&x);
    let kz = InvariantDivisor::anticanonical(z);
    let ample = is_ample(&kx)?;
    let nef = is_nef(&kz)?;
    let ample_text = verdict_text(&ample, |w| describe_wall(&x, w));
    let nef_text = verdict_text(&nef, |w| describe_wall(z, w));
    if r > s {
        rep.assert("-K_X is ample", "true", ample_text, ample.holds(), GOLDEN_TABLE);
        rep.assert("-K_Z is nef", "false", nef_text, !nef.holds(), GOLDEN_TABLE);
    } else {
        rep.info("-K_X is ample", ample_text);
        rep.info("-K_Z is nef", nef_text);
    }
    Ok(rep)
}

/// Picard-lattice ledger of the double cover over the blown-up quadric.
pub fn cmd_example_double_cover() -> Report {
    let mut rep = Report::new("double-cover");
    let l = double_cover_ledger();
    rep.check("K^2 on P1xP1", 8, &l.k_squared_before, GOLDEN_TABLE);
    rep.check("K^2 after 16 blow-ups", -8, &l.k_squared_after, GOLDEN_TABLE);
    rep.check("B = s*B' - 2 sum E_i is even", "true", l.branch_is_even, GOLDEN_TABLE);
    rep.info("B", l.branch_class.join(","));
    rep.check("K_Z + B/2 is the zero class", "true", l.k_plus_half_branch_is_zero, GOLDEN_TABLE);
    rep.check(
        "s*(K_Z' + B'/2) is the zero class",
        "true",
        l.pulled_back_log_canonical.iter().all(|c| c == "0"),
        GOLDEN_TABLE,
    );
    rep.check("(-K_Z).C on a strict transform of a grid line", -2, &l.anticanonical_on_witness, ADJUNCTION);
    rep.check("C^2", -4, &l.witness_self_intersection, ADJUNCTION);
    rep.check("K_Z.C", 2, &l.witness_canonical_degree, ADJUNCTION);
    rep.check("signature of the intersection form", "(1, 17)", format!("{:?}", l.signature), DEFINITION);
    rep
}

/// Which computations `cmd_check` runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckFlags {
    pub cartier: bool,
    pub bpf: bool,
    pub nef: bool,
    pub ample: bool,
    pub kappa: bool,
    pub points: bool,
}

impl CheckFlags {
    pub fn all() -> Self {
        CheckFlags { cartier: true, bpf: true, nef: true, ample: true, kappa: true, points: true }
    }

    pub fn is_empty(&self) -> bool {
        *self == CheckFlags::default()
    }
}

/// Runs the requested computations on a fan and divisor. Invalid input is
/// an error; failed verdicts and failed computations are failing steps.
pub fn cmd_check(fan: &Fan, coeffs: Vec<BigRational>, flags: CheckFlags) -> Result<Report> {
    fan.require_valid()?;
    let d = InvariantDivisor::new(fan, coeffs)?;
    let flags = if flags.is_empty() { CheckFlags::all() } else { flags };
    let mut rep = Report::new("check");
    rep.info("divisor", &d);

    if flags.cartier {
        match d.cartier_data() {
            Ok(data) => {
                for (c, m) in data.covectors().iter().enumerate() {
                    rep.info(format!("m[{}]", fan.max_cones()[c]), m);
                }
                rep.info("Cartier", data.is_integral());
                rep.assert("Cartier data", "", "computed", true, "");
            }
            Err(e) => rep.assert("Cartier data", "", err_text(&e), false, ""),
        }
    }
    if flags.bpf {
        let v = d.is_basepoint_free();
        let text = v.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| format!("cone {} ray {}", w.cone, w.ray)));
        rep.assert("base point free", "true", text, matches!(v, Ok(Verdict::Holds)), "");
    }
    if flags.nef {
        let v = is_nef(&d);
        let text = v.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| describe_wall(fan, w)));
        rep.assert("nef", "true", text, matches!(v, Ok(Verdict::Holds)), "");
    }
    if flags.ample {
        let v = is_ample(&d);
        let text = v.as_ref().map_or_else(err_text, |v| verdict_text(v, |w| describe_wall(fan, w)));
        rep.assert("ample", "true", text, matches!(v, Ok(Verdict::Holds)), "");
    }
    if flags.kappa {
        let v = d.kodaira_dimension();
        let ok = v.is_ok();
        rep.assert("kappa", "", v.map_or_else(|e| err_text(&e), |k| k.to_string()), ok, "");
    }
    if flags.points {
        let v = d.polytope().count_lattice_points();
        let ok = v.is_ok();
        rep.assert("lattice points of P_D", "", v.map_or_else(|e| err_text(&e), |n| n.to_string()), ok, "");
    }
    Ok(rep)
}

/// Number of random divisors per catalog fan in [`cmd_selftest`].
pub const SELFTEST_SAMPLES: usize = 100;

/// Random integral divisor with coefficients in `[-5, 5]`.
pub fn random_divisor<'a>(fan: &'a Fan, rng: &mut impl Rng) -> InvariantDivisor<'a> {
    let coeffs: Vec<i64> = (0..fan.rays().len()).map(|_| rng.random_range(-5..=5)).collect();
    InvariantDivisor::from_integers(fan, &coeffs).expect("one coefficient per ray")
}

/// Cross-validates polytope membership against wall positivity on the
/// catalog: base point free ⟺ nef, and ample ⟹ nef.
pub fn cmd_selftest(seed: u64) -> Result<Report> {
    let mut rep = Report::new(format!("selftest seed={seed}"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (name, fan) in catalog() {
        let mut agree = 0;
        let mut coherent = 0;
        let mut nef_count = 0;
        for _ in 0..SELFTEST_SAMPLES {
            let d = random_divisor(&fan, &mut rng);
            let bpf = d.is_basepoint_free()?.holds();
            let nef = is_nef(&d)?.holds();
            let ample = is_ample(&d)?.holds();
            agree += usize::from(bpf == nef);
            coherent += usize::from(!ample || nef);
            nef_count += usize::from(nef);
        }
        let n = SELFTEST_SAMPLES;
        rep.check(format!("{name}: bpf <=> nef"), format!("{n}/{n}"), format!("{agree}/{n}"), "criterion equivalence");
        rep.check(format!("{name}: ample => nef"), format!("{n}/{n}"), format!("{coherent}/{n}"), DEFINITION);
        rep.info(format!("{name}: nef samples"), nef_count);
    }
    Ok(rep)
}
