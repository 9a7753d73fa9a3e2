use crate::word::Word;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// Element of the integral group ring Z[F] of a free group: a finite formal
/// sum of reduced words with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupRingElem {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElem {
    pub fn zero() -> Self {
        GroupRingElem::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// Left-multiply every term by the word u.
    pub fn left_mul(&self, u: &Word) -> Self {
        let mut out = Self::zero();
        for (w, c) in self.terms() {
            out.add_term(u.concat(w), c);
        }
        out
    }
}

/// Fox free derivative ∂w/∂g with the left product rule:
/// ∂g/∂g = 1, ∂h/∂g = 0 (h ≠ g), ∂(g⁻¹)/∂g = −g⁻¹,
/// ∂(uv)/∂g = ∂u/∂g + u·∂v/∂g.
///
/// Letter by letter: the prefix before an occurrence of g contributes +prefix,
/// and before an occurrence of g⁻¹ contributes −(prefix·g⁻¹).
pub fn fox_derivative(w: &Word, gen: usize, n_gens: usize) -> Result<GroupRingElem> {
    if gen >= n_gens {
        return Err(Error::UnknownGenerator(gen));
    }
    if let Some(max) = w.max_generator() {
        if max >= n_gens {
            return Err(Error::UnknownGenerator(max));
        }
    }
    let mut out = GroupRingElem::zero();
    let mut prefix = Word::identity();
    for (g, s) in w.iter() {
        let letter = Word::from_letters([if s > 0 { g as i32 + 1 } else { -(g as i32 + 1) }]);
        if g == gen {
            if s > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.concat(&letter), -1);
            }
        }
        prefix = prefix.concat(&letter);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::from_letters(letters.iter().copied())
    }

    #[test]
    fn derivative_of_product_xy() {
        // ∂(xy)/∂x = 1
        let d = fox_derivative(&w(&[1, 2]), 0, 2).unwrap();
        assert_eq!(d, GroupRingElem::from_word(Word::identity()));
    }

    #[test]
    fn derivative_of_inverse() {
        // ∂(x^-1)/∂x = -x^-1
        let d = fox_derivative(&w(&[-1]), 0, 1).unwrap();
        let mut expect = GroupRingElem::zero();
        expect.add_term(w(&[-1]), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn derivative_of_commutator() {
        // ∂(xyx⁻¹y⁻¹)/∂x = 1 − xyx⁻¹
        let d = fox_derivative(&w(&[1, 2, -1, -2]), 0, 2).unwrap();
        let mut expect = GroupRingElem::zero();
        expect.add_term(Word::identity(), 1);
        expect.add_term(w(&[1, 2, -1]), -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn unknown_generator_rejected() {
        assert!(fox_derivative(&w(&[1]), 5, 2).is_err());
        assert!(fox_derivative(&w(&[3]), 0, 2).is_err());
    }

    #[test]
    fn fundamental_identity_on_samples() {
        // Σ_g ∂w/∂g · (g − 1) = w − 1, checked in Z[F] directly.
        for letters in [vec![1, 2, -1, -2], vec![1, 1, 1], vec![-2, 1, 2, 2, -1]] {
            let word = w(&letters);
            let mut lhs = GroupRingElem::zero();
            for g in 0..2 {
                let d = fox_derivative(&word, g, 2).unwrap();
                // d·(g − 1) = d·g − d, with right multiplication by the
                // single letter distributing over terms.
                for (u, c) in d.terms() {
                    lhs.add_term(u.concat(&Word::generator(g)), c);
                    lhs.add_term(u.clone(), -c);
                }
            }
            let mut rhs = GroupRingElem::zero();
            rhs.add_term(word.clone(), 1);
            rhs.add_term(Word::identity(), -1);
            assert_eq!(lhs, rhs);
        }
    }
}
