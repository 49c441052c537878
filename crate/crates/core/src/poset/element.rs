use std::fmt;

use serde::{Serialize, Serializer};

use super::RankedPosetSpec;
use crate::error::{Error, Result};

/// An element of one of the supported posets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PosetElement {
    /// Weakly decreasing positive parts.
    Partition(Vec<u32>),
    /// Word over `{1, 2}`, leftmost letter first.
    Word(Vec<u8>),
    Tuple(Vec<PosetElement>),
}

impl PosetElement {
    pub fn partition(parts: &[u32]) -> Self {
        PosetElement::Partition(parts.to_vec())
    }

    /// Parse a word such as `"121"`.
    pub fn word(s: &str) -> Result<Self> {
        s.bytes()
            .map(|b| match b {
                b'1' => Ok(1),
                b'2' => Ok(2),
                _ => Err(Error::InvalidElement(format!("'{s}' is not a word over {{1,2}}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(PosetElement::Word)
    }

    /// The minimum of `spec`.
    pub fn bottom(spec: &RankedPosetSpec) -> Self {
        match spec {
            RankedPosetSpec::Young => PosetElement::Partition(Vec::new()),
            RankedPosetSpec::YoungFib => PosetElement::Word(Vec::new()),
            RankedPosetSpec::Product(fs) => PosetElement::Tuple(fs.iter().map(Self::bottom).collect()),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            PosetElement::Partition(p) => p.iter().map(|&x| x as usize).sum(),
            PosetElement::Word(w) => w.iter().map(|&x| x as usize).sum(),
            PosetElement::Tuple(t) => t.iter().map(Self::rank).sum(),
        }
    }

    /// Check that `self` is a well-formed element of `spec`.
    pub fn validate(&self, spec: &RankedPosetSpec) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidElement(format!("{self} for {spec}: {why}")));
        match (spec, self) {
            (RankedPosetSpec::Young, PosetElement::Partition(p)) => {
                if p.contains(&0) {
                    return bad("zero part");
                }
                if p.windows(2).any(|w| w[0] < w[1]) {
                    return bad("parts not weakly decreasing");
                }
                Ok(())
            }
            (RankedPosetSpec::YoungFib, PosetElement::Word(w)) => {
                if w.iter().any(|&c| c != 1 && c != 2) {
                    return bad("letters must be 1 or 2");
                }
                Ok(())
            }
            (RankedPosetSpec::Product(fs), PosetElement::Tuple(t)) => {
                if fs.len() != t.len() {
                    return bad("tuple length does not match the product");
                }
                fs.iter().zip(t).try_for_each(|(f, e)| e.validate(f))
            }
            _ => bad("element kind does not match the family"),
        }
    }

    /// Elements covering `self`, in no particular order.
    pub(crate) fn covers_unchecked(&self) -> Vec<PosetElement> {
        match self {
            PosetElement::Partition(p) => young_covers(p).into_iter().map(PosetElement::Partition).collect(),
            PosetElement::Word(w) => fib_covers(w).into_iter().map(PosetElement::Word).collect(),
            PosetElement::Tuple(t) => {
                let mut out = Vec::new();
                for (i, e) in t.iter().enumerate() {
                    for c in e.covers_unchecked() {
                        let mut u = t.clone();
                        u[i] = c;
                        out.push(PosetElement::Tuple(u));
                    }
                }
                out
            }
        }
    }
}

/// Add one cell: bump a part that is strictly below its predecessor, or
/// append a new part 1.
fn young_covers(p: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..p.len() {
        if i == 0 || p[i - 1] > p[i] {
            let mut q = p.to_vec();
            q[i] += 1;
            out.push(q);
        }
    }
    let mut q = p.to_vec();
    q.push(1);
    out.push(q);
    out
}

/// With `k` leading 2s: turn the letter after them into a 2 if it is a 1,
/// or insert a 1 at any of the positions `0..=k`.
fn fib_covers(w: &[u8]) -> Vec<Vec<u8>> {
    let k = w.iter().take_while(|&&c| c == 2).count();
    let mut out = Vec::new();
    if w.get(k) == Some(&1) {
        let mut v = w.to_vec();
        v[k] = 2;
        out.push(v);
    }
    for pos in 0..=k {
        let mut v = w.to_vec();
        v.insert(pos, 1);
        out.push(v);
    }
    out
}

impl fmt::Display for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetElement::Partition(p) if p.is_empty() => f.write_str("∅"),
            PosetElement::Partition(p) if p.iter().all(|&x| x < 10) => {
                p.iter().try_for_each(|x| write!(f, "{x}"))
            }
            PosetElement::Partition(p) => {
                let parts: Vec<String> = p.iter().map(u32::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
            PosetElement::Word(w) if w.is_empty() => f.write_str("∅"),
            PosetElement::Word(w) => w.iter().try_for_each(|x| write!(f, "{x}")),
            PosetElement::Tuple(t) => {
                f.write_str("(")?;
                for (i, e) in t.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for PosetElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
