//! Boolean tuples as `Vec<u8>` with entries 0/1, coordinate 1 first.

use serde::ser::SerializeSeq;
use serde::Serializer;

pub type Tuple = Vec<u8>;

pub fn index_of(t: &[u8]) -> usize {
    t.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize)
}

pub fn from_index(index: usize, arity: usize) -> Tuple {
    (0..arity).map(|c| ((index >> (arity - 1 - c)) & 1) as u8).collect()
}

pub fn weight(t: &[u8]) -> usize {
    t.iter().filter(|&&b| b == 1).count()
}

/// `[1, 0, 1]` renders as `"101"`.
pub fn format(t: &[u8]) -> String {
    t.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn format_index(index: usize, arity: usize) -> String {
    format(&from_index(index, arity))
}

pub fn serialize_one<S: Serializer>(t: &Tuple, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format(t))
}

pub fn serialize_many<S: Serializer>(ts: &[Tuple], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(ts.len()))?;
    for t in ts {
        seq.serialize_element(&format(t))?;
    }
    seq.end()
}
