//! Exact rational numbers used as the payoff domain.
//!
//! Every quantity in this crate (payoffs, probabilities, transfer
//! amounts, LP coefficients) is a [`Rational`]. Arbitrary precision
//! keeps strict-inequality checks decidable: a comparison is a theorem,
//! never an approximation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in canonical form
/// (reduced, positive denominator).
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`; use [`parse_rational`] for
/// untrusted input.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` with optional sign, exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((num, den)) => {
            let num = num.trim().parse::<BigInt>().ok()?;
            let den = den.trim().parse::<BigInt>().ok()?;
            if den.is_zero() {
                None
            } else {
                Some(BigRational::new(num, den))
            }
        }
    }
}

/// Canonical text form: `"p"` when integral, else `"p/q"`.
/// Inverse of [`parse_rational`] on canonical rationals.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Strict bound on magnitudes: `max |r| + 1`, so every `r` satisfies
/// `|r| < bound`. At least 1 on empty input.
pub fn strict_abs_bound<'a>(values: impl Iterator<Item = &'a Rational>) -> Rational {
    let mut max_abs = Rational::zero();
    for v in values {
        let a = v.abs();
        if a > max_abs {
            max_abs = a;
        }
    }
    max_abs + rat(1)
}

/// Serde helpers: rationals travel as canonical `"p/q"` strings so that
/// serialized reports and certificates stay human-auditable.
pub mod rat_serde {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| de::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Serde helpers for `Vec<Rational>`.
pub mod rat_vec_serde {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| {
                parse_rational(t).ok_or_else(|| de::Error::custom(format!("bad rational {t:?}")))
            })
            .collect()
    }
}

/// Serde helpers for `Vec<Vec<Rational>>`.
pub mod rat_mat_serde {
    use super::*;
    use serde::{de, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let texts: Vec<String> = row.iter().map(format_rational).collect();
            seq.serialize_element(&texts)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|t| {
                        parse_rational(t)
                            .ok_or_else(|| de::Error::custom(format!("bad rational {t:?}")))
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "3", "-4", "1/2", "-7/3", "22/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&parse_rational("-2/-2").unwrap()), "1");
        assert_eq!(parse_rational(" 5 / 10 ").unwrap(), ratio(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "a", "1/0", "1/", "/2", "1.5", "1/2/3"] {
            assert!(parse_rational(s).is_none(), "accepted {s:?}");
        }
    }

    #[test]
    fn strict_bound_is_strict() {
        let vals = [ratio(7, 2), rat(-4), rat(0)];
        let bound = strict_abs_bound(vals.iter());
        assert_eq!(bound, rat(5));
        for v in &vals {
            assert!(v.abs() < bound);
        }
        // empty input still yields a positive bound
        assert_eq!(strict_abs_bound([].iter()), rat(1));
    }
}
