use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A differential poset family.
///
/// Products are kept flat: a product never has a product as a component and
/// always has at least two components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RankedPosetSpec {
    Young,
    YoungFib,
    Product(Vec<RankedPosetSpec>),
}

impl RankedPosetSpec {
    /// Product of the given specs, flattened. A single factor is returned
    /// as itself.
    pub fn product(factors: Vec<RankedPosetSpec>) -> Result<Self, Error> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                RankedPosetSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::InvalidSpec {
                input: String::new(),
                reason: "empty product".into(),
            }),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(RankedPosetSpec::Product(flat)),
        }
    }

    /// The `r`-fold product of the Young–Fibonacci lattice.
    pub fn z(r: usize) -> Result<Self, Error> {
        Self::product(vec![RankedPosetSpec::YoungFib; r])
    }

    /// Differential degree.
    pub fn r(&self) -> u32 {
        match self {
            RankedPosetSpec::Young | RankedPosetSpec::YoungFib => 1,
            RankedPosetSpec::Product(fs) => fs.iter().map(Self::r).sum(),
        }
    }

    pub fn components(&self) -> &[RankedPosetSpec] {
        match self {
            RankedPosetSpec::Product(fs) => fs,
            _ => std::slice::from_ref(self),
        }
    }
}

pub const SPEC_GRAMMAR: &str = "factor ('*' factor)*, factor = (young | yf | z(k)) ['^' k]; \
     e.g. young, yf, young^2, young*yf, z(3)";

fn parse_count(s: &str, input: &str) -> Result<usize, Error> {
    match s.trim().parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(Error::InvalidSpec {
            input: input.into(),
            reason: format!("expected a positive integer, found '{s}'"),
        }),
    }
}

impl FromStr for RankedPosetSpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self, Error> {
        let mut factors = Vec::new();
        for raw in input.split('*') {
            let tok = raw.trim().to_ascii_lowercase();
            let (base, power) = match tok.split_once('^') {
                Some((b, k)) => (b.trim().to_string(), parse_count(k, input)?),
                None => (tok.clone(), 1),
            };
            let one = match base.as_str() {
                "young" | "y" => RankedPosetSpec::Young,
                "yf" | "youngfib" | "young-fibonacci" => RankedPosetSpec::YoungFib,
                z if z.starts_with("z(") && z.ends_with(')') => {
                    RankedPosetSpec::z(parse_count(&z[2..z.len() - 1], input)?)?
                }
                _ => {
                    return Err(Error::InvalidSpec {
                        input: input.into(),
                        reason: format!("unknown factor '{}'; grammar: {SPEC_GRAMMAR}", raw.trim()),
                    })
                }
            };
            factors.extend(std::iter::repeat_n(one, power));
        }
        Self::product(factors).map_err(|_| Error::InvalidSpec {
            input: input.into(),
            reason: format!("empty spec; grammar: {SPEC_GRAMMAR}"),
        })
    }
}

impl fmt::Display for RankedPosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |s: &RankedPosetSpec| match s {
            RankedPosetSpec::Young => "young",
            RankedPosetSpec::YoungFib => "yf",
            RankedPosetSpec::Product(_) => unreachable!("products are flat"),
        };
        let comps = self.components();
        let mut i = 0;
        let mut first = true;
        while i < comps.len() {
            let mut j = i + 1;
            while j < comps.len() && comps[j] == comps[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(name(&comps[i]))?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for RankedPosetSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RankedPosetSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
