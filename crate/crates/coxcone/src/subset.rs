//! Subsets of the index set `I = {0, .., n-1}` as bitmasks (at most 64 indices).

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    /// Parses 1-based index lists such as `"1,2,4"` or `"{1,2}"`; empty input is `∅`.
    pub fn parse_one_based(s: &str, n: usize) -> crate::Result<Subset> {
        let t = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if t.is_empty() || t == "∅" {
            return Ok(Subset::EMPTY);
        }
        let mut out = Subset::EMPTY;
        for tok in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            let i: usize = tok.parse().map_err(|_| crate::Error::Parse(format!("bad index '{tok}'")))?;
            if i == 0 || i > n {
                return Err(crate::Error::Parse(format!("index {i} outside 1..={n}")));
            }
            out = out.with(i - 1);
        }
        Ok(out)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn inter(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn minus(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).minus(self)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn min_elem(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let m = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == m { None } else { Some((c.wrapping_sub(m)) & m) };
            Some(Subset(c))
        })
    }

    /// All subsets of `{0..n-1}` sorted by size, then lexicographically.
    pub fn all_sorted(n: usize) -> Vec<Subset> {
        let mut v: Vec<Subset> = Subset::full(n).subsets().collect();
        v.sort();
        v
    }
}

/// Size first, then lexicographic comparison of the sorted index lists.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints 1-based, e.g. `{1,2,4}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_size_then_lex() {
        let v = Subset::all_sorted(3);
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }

    #[test]
    fn parse_round_trip() {
        let s = Subset::parse_one_based("{1, 4,2}", 5).unwrap();
        assert_eq!(s.indices(), vec![0, 1, 3]);
        assert!(Subset::parse_one_based("0", 5).is_err());
        assert!(Subset::parse_one_based("", 5).unwrap().is_empty());
    }

    #[test]
    fn subsets_count() {
        assert_eq!(Subset::from_indices([1, 3, 5]).subsets().count(), 8);
    }
}
