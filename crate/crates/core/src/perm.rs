use crate::{Error, Result};
use std::fmt;

/// Permutation of {0..k-1}; `map[i]` is the image of i. Displayed and parsed
/// in 1-based disjoint cycle notation with multi-digit points, e.g. `(1 4 2)`,
/// identity `()`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm { map: (0..k).collect() }
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let k = map.len();
        let mut seen = vec![false; k];
        for &v in &map {
            if v >= k || seen[v] {
                return Err(Error::Input("not a permutation".into()));
            }
            seen[v] = true;
        }
        Ok(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Function composition: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { map: other.map.iter().map(|&v| self.map[v]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Perm { map: inv }
    }

    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        c.compose(self).compose(&c.inverse())
    }

    /// Cycle lengths ≥ 2, sorted descending: the conjugacy class of the
    /// permutation. The identity has an empty type.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths = Vec::new();
        let mut seen = vec![false; self.map.len()];
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.map[at];
                len += 1;
            }
            if len >= 2 {
                lengths.push(len);
            }
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Class label: cycle lengths ≥ 2 joined by `+`, e.g. `3`, `2+2`, `5`;
    /// identity is the empty label.
    pub fn cycle_type_label(&self) -> String {
        self.cycle_type()
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// All permutations of degree k in lexicographic order on the image map.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Perm { map: current.clone() });
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
            else {
                break;
            };
            let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }

    /// Parse disjoint-cycle notation: `(1 4 2)`, `(1 2)(3 4)`, identity `()`.
    pub fn parse_cycles(text: &str, k: usize) -> Result<Perm> {
        let text = text.trim();
        let mut map: Vec<usize> = (0..k).collect();
        let mut moved = vec![false; k];
        let mut rest = text;
        if rest.is_empty() {
            return Err(Error::Input("empty cycle notation".into()));
        }
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(Error::Input(format!("expected `(` in cycle notation `{text}`")));
            };
            if !rest[..open].trim().is_empty() {
                return Err(Error::Input(format!("stray text in cycle notation `{text}`")));
            }
            let Some(close) = rest.find(')') else {
                return Err(Error::Input(format!("unbalanced `(` in `{text}`")));
            };
            let inside = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let points: Vec<usize> = inside
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Input(format!("bad point `{t}` in cycle")))
                })
                .collect::<Result<_>>()?;
            if points.is_empty() {
                continue; // `()` term
            }
            for &p in &points {
                if p == 0 || p > k {
                    return Err(Error::Input(format!("point {p} outside 1..{k}")));
                }
                if moved[p - 1] {
                    return Err(Error::Input(format!("point {p} repeated in cycles")));
                }
                moved[p - 1] = true;
            }
            for w in 0..points.len() {
                let from = points[w] - 1;
                let to = points[(w + 1) % points.len()] - 1;
                map[from] = to;
            }
        }
        Perm::from_map(map)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.map.len()];
        let mut wrote = false;
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut at = start;
            let mut first = true;
            while !seen[at] {
                seen[at] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", at + 1)?;
                first = false;
                at = self.map[at];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// True when the group generated by the permutations acts transitively.
pub fn is_transitive(perms: &[Perm], k: usize) -> bool {
    if k == 0 {
        return true;
    }
    let mut reached = vec![false; k];
    reached[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for p in perms {
            for y in [p.apply(x), p.inverse().apply(x)] {
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    reached.into_iter().all(|r| r)
}
