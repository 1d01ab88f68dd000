use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Configuration, GeomError, ProjPoint};
use crate::exactmath::{parse_rational, Field, PrimeField, Rational, RationalField};

/// On-disk configuration: `{"characteristic": p, "ambient_dim": m, "points": [[c0, ..., cm], ...]}`.
///
/// For `p > 0` coordinates are integers reduced mod p. For `p = 0` they are
/// rationals written as strings `"a/b"` (bare integers are accepted too).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationFixture {
    pub characteristic: u32,
    pub ambient_dim: usize,
    pub points: Vec<Vec<Value>>,
}

/// A configuration over whichever field a fixture names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfiguration {
    Prime(Configuration<PrimeField>),
    Rational(Configuration<RationalField>),
}

impl ConfigurationFixture {
    pub fn from_json(text: &str) -> Result<Self, GeomError> {
        serde_json::from_str(text).map_err(|e| GeomError::Fixture(e.to_string()))
    }

    pub fn load(&self) -> Result<AnyConfiguration, GeomError> {
        if self.characteristic == 0 {
            let f = RationalField;
            let pts = self
                .points
                .iter()
                .map(|row| {
                    let coords = row.iter().map(rational_coord).collect::<Result<Vec<_>, _>>()?;
                    self.point(&f, coords)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyConfiguration::Rational(Configuration::new(f, self.ambient_dim, pts)?))
        } else {
            let f = PrimeField::new(self.characteristic)?;
            let pts = self
                .points
                .iter()
                .map(|row| {
                    let coords = row
                        .iter()
                        .map(|v| prime_coord(&f, v))
                        .collect::<Result<Vec<_>, _>>()?;
                    self.point(&f, coords)
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(AnyConfiguration::Prime(Configuration::new(f, self.ambient_dim, pts)?))
        }
    }

    fn point<F: Field>(&self, f: &F, coords: Vec<F::Elem>) -> Result<ProjPoint<F>, GeomError> {
        if coords.len() != self.ambient_dim + 1 {
            return Err(GeomError::CoordinateCount {
                expected: self.ambient_dim + 1,
                got: coords.len(),
            });
        }
        ProjPoint::new(f, coords)
    }

    pub fn from_prime(cfg: &Configuration<PrimeField>) -> Self {
        Self {
            characteristic: cfg.field().modulus(),
            ambient_dim: cfg.ambient_dim(),
            points: cfg
                .points()
                .iter()
                .map(|p| p.coords().iter().map(|&c| Value::from(c)).collect())
                .collect(),
        }
    }

    pub fn from_rational(cfg: &Configuration<RationalField>) -> Self {
        Self {
            characteristic: 0,
            ambient_dim: cfg.ambient_dim(),
            points: cfg
                .points()
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|c| Value::from(crate::exactmath::format_rational(c)))
                        .collect()
                })
                .collect(),
        }
    }
}

fn prime_coord(f: &PrimeField, v: &Value) -> Result<u32, GeomError> {
    if let Some(i) = v.as_i64() {
        return Ok(f.reduce(i));
    }
    if let Some(s) = v.as_str() {
        return Ok(f.from_rational(&parse_rational(s)?)?);
    }
    Err(GeomError::Fixture(format!("coordinate {v} is not an integer")))
}

fn rational_coord(v: &Value) -> Result<Rational, GeomError> {
    if let Some(i) = v.as_i64() {
        return Ok(Rational::from_integer(i.into()));
    }
    if let Some(s) = v.as_str() {
        return Ok(parse_rational(s)?);
    }
    Err(GeomError::Fixture(format!("coordinate {v} is not a rational")))
}

impl AnyConfiguration {
    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Prime(c) => c.ambient_dim(),
            Self::Rational(c) => c.ambient_dim(),
        }
    }

    pub fn to_fixture(&self) -> ConfigurationFixture {
        match self {
            Self::Prime(c) => ConfigurationFixture::from_prime(c),
            Self::Rational(c) => ConfigurationFixture::from_rational(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn prime_fixture_reduces_coordinates() {
        let fx = ConfigurationFixture::from_json(
            r#"{"characteristic": 7, "ambient_dim": 1, "points": [[8, -1], [0, 3]]}"#,
        )
        .unwrap();
        let AnyConfiguration::Prime(cfg) = fx.load().unwrap() else {
            panic!("expected prime configuration");
        };
        assert_eq!(cfg.points()[0].coords(), &[1, 6]);
        assert_eq!(cfg.points()[1].coords(), &[0, 1]);
    }

    #[test]
    fn rational_fixture_parses_strings() {
        let fx = ConfigurationFixture::from_json(
            r#"{"characteristic": 0, "ambient_dim": 1, "points": [["1/2", "3/4"], [1, 0]]}"#,
        )
        .unwrap();
        let AnyConfiguration::Rational(cfg) = fx.load().unwrap() else {
            panic!("expected rational configuration");
        };
        assert_eq!(cfg.points()[0].coords(), &[rat(1, 1), rat(3, 2)]);
        let back = ConfigurationFixture::from_rational(&cfg);
        assert_eq!(back.points[0], vec![Value::from("1"), Value::from("3/2")]);
    }

    #[test]
    fn bad_fixtures() {
        let excluded = ConfigurationFixture::from_json(
            r#"{"characteristic": 5, "ambient_dim": 1, "points": [[1, 0]]}"#,
        )
        .unwrap();
        assert!(excluded.load().is_err());
        let short = ConfigurationFixture::from_json(
            r#"{"characteristic": 7, "ambient_dim": 2, "points": [[1, 0]]}"#,
        )
        .unwrap();
        assert!(matches!(short.load(), Err(GeomError::CoordinateCount { .. })));
        assert!(ConfigurationFixture::from_json("{").is_err());
    }
}
