//! JSON file formats.
//!
//! Fan: `{"dim": n, "rays": [[...], ...], "max_cones": [[i, j, k], ...]}` with
//! 0-based ray indices. Divisor: `{"coeffs": ["p/q", ...]}` aligned with the
//! fan's ray order. Integers may be written as JSON numbers or as decimal
//! strings (for values beyond 64 bits).

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::divisor::InvariantDivisor;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::LatticeVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<Scalar>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorFile {
    coeffs: Vec<Scalar>,
}

fn parse_int(s: &Scalar) -> Result<BigInt> {
    match s {
        Scalar::Int(i) => Ok(BigInt::from(*i)),
        Scalar::Text(t) => BigInt::from_str(t.trim()).map_err(|e| Error::Parse(format!("integer {t:?}: {e}"))),
    }
}

fn parse_rational(s: &Scalar) -> Result<BigRational> {
    match s {
        Scalar::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
        Scalar::Text(t) => {
            BigRational::from_str(t.trim()).map_err(|e| Error::Parse(format!("rational {t:?}: {e}")))
        }
    }
}

fn int_scalar(x: &BigInt) -> Scalar {
    x.to_i64().map_or_else(|| Scalar::Text(x.to_string()), Scalar::Int)
}

pub fn fan_from_json(text: &str) -> Result<Fan> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let rays = file
        .rays
        .iter()
        .map(|r| {
            if r.is_empty() {
                return Err(Error::Parse("empty ray".into()));
            }
            Ok(LatticeVector::new(r.iter().map(parse_int).collect::<Result<_>>()?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fan::new(file.dim, rays, file.max_cones))
}

pub fn fan_to_json(fan: &Fan) -> String {
    let file = FanFile {
        dim: fan.dim(),
        rays: fan.rays().iter().map(|r| r.coords().iter().map(int_scalar).collect()).collect(),
        max_cones: fan.max_cones().iter().map(|c| c.rays().to_vec()).collect(),
    };
    serde_json::to_string(&file).expect("fan serializes")
}

pub fn divisor_coeffs_from_json(text: &str) -> Result<Vec<BigRational>> {
    let file: DivisorFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.coeffs.iter().map(parse_rational).collect()
}

pub fn divisor_to_json(d: &InvariantDivisor<'_>) -> String {
    let file = DivisorFile { coeffs: d.coeffs().iter().map(|c| Scalar::Text(c.to_string())).collect() };
    serde_json::to_string(&file).expect("divisor serializes")
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_fan(path: &Path) -> Result<Fan> {
    fan_from_json(&read(path)?)
}

pub fn read_divisor_coeffs(path: &Path) -> Result<Vec<BigRational>> {
    divisor_coeffs_from_json(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sato_blown_up_fan;

    #[test]
    fn fan_round_trip() {
        let f = sato_blown_up_fan();
        let back = fan_from_json(&fan_to_json(&f)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn fan_json_shape() {
        let f = Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]);
        assert_eq!(fan_to_json(&f), r#"{"dim":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#);
    }

    #[test]
    fn big_coordinates_as_strings() {
        let f = fan_from_json(r#"{"dim":1,"rays":[["100000000000000000000"],[-1]],"max_cones":[[0],[1]]}"#)
            .unwrap();
        assert_eq!(f.ray(0).coords()[0].to_string(), "100000000000000000000");
        assert!(fan_to_json(&f).contains(r#""100000000000000000000""#));
    }

    #[test]
    fn divisor_rationals() {
        let c = divisor_coeffs_from_json(r#"{"coeffs":["1/2","-3",4]}"#).unwrap();
        assert_eq!(c[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(c[1], BigRational::from_integer((-3).into()));
        assert_eq!(c[2], BigRational::from_integer(4.into()));
        let f = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let d = InvariantDivisor::new(&f, c).unwrap();
        assert_eq!(divisor_to_json(&d), r#"{"coeffs":["1/2","-3","4"]}"#);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(fan_from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(fan_from_json(r#"{"dim":1,"rays":[["x"]],"max_cones":[]}"#), Err(Error::Parse(_))));
        assert!(matches!(divisor_coeffs_from_json(r#"{"coeffs":["1/0"]}"#), Err(Error::Parse(_))));
        assert!(matches!(divisor_coeffs_from_json(r#"{"coefs":[]}"#), Err(Error::Parse(_))));
    }
}
