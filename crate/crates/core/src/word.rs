use std::fmt;

/// Freely reduced word in a free group: letters are nonzero signed generator
/// indices, +i for generator i (zero-based i = value − 1), −i for its inverse.
/// Reduction happens on construction and is maintained by every operation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word { letters: vec![index as i32 + 1] }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = Word::default();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator reference");
            w.push(l);
        }
        w
    }

    fn push(&mut self, letter: i32) {
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// (generator index, sign) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i32)> + '_ {
        self.letters.iter().map(|&l| ((l.unsigned_abs() as usize) - 1, l.signum()))
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.iter().map(|(g, _)| g).max()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn conjugate_by(&self, u: &Word) -> Self {
        u.concat(self).concat(&u.inverse())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..e.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// Sum of phi over the letters; phi is indexed by generator.
    pub fn phi_weight(&self, phi: &[i64]) -> i64 {
        self.iter().map(|(g, s)| phi[g] * s as i64).sum()
    }

    /// Render with the given generator names, `x^-1` for inverses, space
    /// separated; the identity renders as the empty string.
    pub fn display(&self, names: &[String]) -> String {
        let mut parts = Vec::with_capacity(self.letters.len());
        for (g, s) in self.iter() {
            if s > 0 {
                parts.push(names[g].clone());
            } else {
                parts.push(format!("{}^-1", names[g]));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
