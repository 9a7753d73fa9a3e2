use crate::presentation::{ManifoldKind, Presentation};
use crate::word::Word;
use crate::{Error, Result};

/// Braid word on `strands` strands; letters are nonzero integers i with
/// |i| < strands, sign giving the crossing sign of the Artin generator σ_|i|.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Input(format!("braid needs at least 2 strands, got {strands}")));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::Input(format!(
                    "braid letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Parse `braid <n>: i1 i2 …`.
    pub fn parse(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::Input("empty braid input".into()))?;
        let rest = line
            .strip_prefix("braid")
            .ok_or_else(|| Error::Input("braid input must start with `braid <n>:`".into()))?;
        let (n_part, letters_part) = rest
            .split_once(':')
            .ok_or_else(|| Error::Input("missing `:` in braid input".into()))?;
        let strands: usize = n_part
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("bad strand count `{}`", n_part.trim())))?;
        let mut letters = Vec::new();
        for tok in letters_part.split_whitespace() {
            let l: i32 = tok
                .parse()
                .map_err(|_| Error::Input(format!("bad braid letter `{tok}`")))?;
            letters.push(l);
        }
        BraidWord::new(strands, letters)
    }

    pub fn print(&self) -> String {
        let letters: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        format!("braid {}: {}\n", self.strands, letters.join(" "))
    }

    /// Image of the free generators x_1..x_n under the Artin action of the
    /// whole word (letters composed left to right):
    /// σ_j: x_j ↦ x_j x_{j+1} x_j⁻¹, x_{j+1} ↦ x_j.
    pub fn artin_images(&self) -> Vec<Word> {
        let n = self.strands;
        let mut images: Vec<Word> = (0..n).map(Word::generator).collect();
        for &l in &self.letters {
            let j = (l.unsigned_abs() as usize) - 1;
            if l > 0 {
                let a = images[j].clone();
                let b = images[j + 1].clone();
                images[j] = a.concat(&b).concat(&a.inverse());
                images[j + 1] = a;
            } else {
                let a = images[j].clone();
                let b = images[j + 1].clone();
                images[j] = b.clone();
                images[j + 1] = b.inverse().concat(&a).concat(&b);
            }
        }
        images
    }

    /// Permutation of strand indices induced by the braid (zero-based).
    pub fn strand_permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let j = (l.unsigned_abs() as usize) - 1;
            perm.swap(j, j + 1);
        }
        perm
    }

    pub fn closure_is_knot(&self) -> bool {
        // Single cycle through all strands.
        let perm = self.strand_permutation();
        let mut seen = 1usize;
        let mut at = perm[0];
        while at != 0 {
            seen += 1;
            at = perm[at];
        }
        seen == self.strands
    }
}

/// Presentation of the fundamental group of the exterior of the braid closure:
/// generators one per strand (meridians of the top arcs), relators
/// x_i · Φ(x_i)⁻¹ with Φ the Artin action, one redundant relator dropped,
/// φ ≡ 1 on every generator.
pub fn braid_to_presentation(b: &BraidWord) -> Result<Presentation> {
    let n = b.strands();
    let images = b.artin_images();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let mut relators = Vec::new();
    for i in 0..n {
        let r = Word::generator(i).concat(&images[i].inverse());
        // Trivial relators can appear for unused strands; keep them out.
        if !r.is_empty() {
            relators.push(r);
        }
    }
    // The n relators of a closed-braid presentation have one redundancy.
    relators.pop();
    Presentation::new(
        names,
        relators,
        vec![1; n],
        ManifoldKind::BoundaryTori,
        format!("closure of {}", b.print().trim_end()),
    )
}

/// The 0-framed longitude of a knotted braid closure, as a word in the
/// presentation of `braid_to_presentation`: follow the conjugating prefixes
/// A_i (where Φ(x_i) = A_i x_{π(i)} A_i⁻¹) once around the closure orbit and
/// correct by x_1^{-w} so the φ-value vanishes.
pub fn braid_longitude(b: &BraidWord) -> Result<Word> {
    if !b.closure_is_knot() {
        return Err(Error::Input("braid closure is not a knot; longitude undefined".into()));
    }
    let images = b.artin_images();
    let mut conjugators = Vec::with_capacity(b.strands());
    let mut targets = Vec::with_capacity(b.strands());
    for (i, w) in images.iter().enumerate() {
        let (a, target) = split_conjugate(w).ok_or_else(|| {
            Error::Internal(format!("Artin image of x{} is not a conjugate of a generator", i + 1))
        })?;
        conjugators.push(a);
        targets.push(target);
    }
    let mut lambda = Word::identity();
    let mut strand = 0usize;
    for _ in 0..b.strands() {
        lambda = lambda.concat(&conjugators[strand]);
        strand = targets[strand];
    }
    if strand != 0 {
        return Err(Error::Internal("longitude orbit did not close up".into()));
    }
    let weight = lambda.phi_weight(&vec![1; b.strands()]);
    Ok(lambda.concat(&Word::generator(0).pow(-weight)))
}

/// Decompose w = A x_t A⁻¹; returns (A, t).
fn split_conjugate(w: &Word) -> Option<(Word, usize)> {
    let letters = w.letters();
    if letters.len() % 2 != 1 {
        return None;
    }
    let mid = letters.len() / 2;
    for i in 0..mid {
        if letters[i] != -letters[letters.len() - 1 - i] {
            return None;
        }
    }
    if letters[mid] < 0 {
        return None;
    }
    let a = Word::from_letters(letters[..mid].iter().copied());
    Some((a, letters[mid] as usize - 1))
}
