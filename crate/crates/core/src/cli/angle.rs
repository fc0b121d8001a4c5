use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An angle given as a rational multiple of π, e.g. `1/12` for π/12.
///
/// Keeping the rational form means configs and manifests never carry a
/// decimal approximation of π.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PiMultiple {
    num: i64,
    den: u64,
}

impl PiMultiple {
    pub const ZERO: PiMultiple = PiMultiple { num: 0, den: 1 };
    pub const HALF: PiMultiple = PiMultiple { num: 1, den: 2 };

    pub fn new(num: i64, den: u64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        let g = gcd(num.unsigned_abs(), den);
        Some(Self {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn radians(&self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for PiMultiple {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected a rational multiple of pi such as 1/2 or 1/12, got {s:?}");
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| bad())?,
                d.trim().parse::<u64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        PiMultiple::new(num, den).ok_or_else(bad)
    }
}

impl Serialize for PiMultiple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PiMultiple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
