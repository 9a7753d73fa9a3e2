use crate::intmat::{int_kernel_basis, int_smith, IntMatrix};
use crate::word::Word;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;

/// Whether the presented group is the fundamental group of a manifold with
/// toroidal boundary or of a closed manifold; this fixes b₃ downstream.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ManifoldKind {
    BoundaryTori,
    Closed,
}

impl ManifoldKind {
    pub fn b3(self) -> i64 {
        match self {
            ManifoldKind::BoundaryTori => 0,
            ManifoldKind::Closed => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ManifoldKind::BoundaryTori => "boundary-tori",
            ManifoldKind::Closed => "closed",
        }
    }
}

/// Finitely presented group with a distinguished homomorphism φ to Z and a
/// manifold-kind tag. φ is stored as its value on each generator and must
/// vanish on every relator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    generator_names: Vec<String>,
    relators: Vec<Word>,
    phi: Vec<i64>,
    kind: ManifoldKind,
    label: String,
}

impl Presentation {
    pub fn new(
        generator_names: Vec<String>,
        relators: Vec<Word>,
        phi: Vec<i64>,
        kind: ManifoldKind,
        label: impl Into<String>,
    ) -> Result<Self> {
        let n = generator_names.len();
        if phi.len() != n {
            return Err(Error::Input(format!(
                "phi has {} values for {} generators",
                phi.len(),
                n
            )));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator().is_some_and(|g| g >= n) {
                return Err(Error::Input(format!("relator {i} references an undeclared generator")));
            }
            if r.phi_weight(&phi) != 0 {
                return Err(Error::PhiNotVanishing { index: i });
            }
        }
        Ok(Presentation {
            generator_names,
            relators,
            phi,
            kind,
            label: label.into(),
        })
    }

    pub fn n_gens(&self) -> usize {
        self.generator_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    pub fn kind(&self) -> ManifoldKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn phi_is_primitive(&self) -> bool {
        let mut g: i64 = 0;
        for &v in &self.phi {
            g = gcd_i64(g, v);
        }
        g == 1
    }

    pub fn phi_is_zero(&self) -> bool {
        self.phi.iter().all(|&v| v == 0)
    }

    /// Matrix of abelianized relators: one row per relator, one column per
    /// generator, entries the exponent sums.
    pub fn abelianized_relators(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.relators.len(), self.n_gens());
        for (i, r) in self.relators.iter().enumerate() {
            for (g, s) in r.iter() {
                let v = m.get(i, g) + BigInt::from(s);
                m.set(i, g, v);
            }
        }
        m
    }

    /// (betti number, torsion divisors > 1) of the abelianization.
    pub fn first_homology(&self) -> (usize, Vec<BigInt>) {
        let rel = self.abelianized_relators();
        let snf = int_smith(&rel);
        let betti = self.n_gens() - snf.rank();
        let torsion = snf
            .divisors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect();
        (betti, torsion)
    }

    /// Fill or verify φ: if φ is identically zero it is derived as a primitive
    /// integer class vanishing on all relators (first Smith kernel vector,
    /// sign-normalized); otherwise it is verified and divided by its gcd.
    pub fn derive_phi(&self) -> Result<Presentation> {
        let mut out = self.clone();
        if self.phi_is_zero() {
            let rel = self.abelianized_relators();
            let kernel = int_kernel_basis(&rel);
            let Some(v) = kernel.first() else {
                return Err(Error::NoFreeAbelianQuotient);
            };
            let mut phi: Vec<i64> = v
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Input("phi entry overflows i64".into())))
                .collect::<std::result::Result<_, _>>()?;
            let mut g = 0i64;
            for &x in &phi {
                g = gcd_i64(g, x);
            }
            if g == 0 {
                return Err(Error::NoFreeAbelianQuotient);
            }
            if let Some(&first) = phi.iter().find(|&&x| x != 0) {
                if first < 0 {
                    for x in &mut phi {
                        *x = -*x;
                    }
                }
            }
            for x in &mut phi {
                *x /= g.abs();
            }
            out.phi = phi;
        } else {
            for (i, r) in self.relators.iter().enumerate() {
                if r.phi_weight(&self.phi) != 0 {
                    return Err(Error::PhiNotVanishing { index: i });
                }
            }
            let mut g = 0i64;
            for &x in &self.phi {
                g = gcd_i64(g, x);
            }
            out.phi = self.phi.iter().map(|&x| x / g).collect();
        }
        Ok(out)
    }

    /// Scale φ by a nonzero integer factor; negation gives the dual class.
    pub fn with_phi_scaled(&self, d: i64) -> Presentation {
        let mut out = self.clone();
        out.phi = self.phi.iter().map(|&x| x * d).collect();
        out
    }

    /// Divide φ by the gcd of its entries, keeping direction.
    pub fn primitivized(&self) -> Presentation {
        let mut g = 0i64;
        for &x in &self.phi {
            g = gcd_i64(g, x);
        }
        if g.abs() <= 1 {
            return self.clone();
        }
        let mut out = self.clone();
        out.phi = self.phi.iter().map(|&x| x / g.abs()).collect();
        out
    }

    /// Zero-framed surgery: append the longitude as a relator and mark the
    /// manifold closed. The longitude must have φ-value 0.
    pub fn zero_surgery(&self, longitude: &Word) -> Result<Presentation> {
        let weight = longitude.phi_weight(&self.phi);
        if weight != 0 {
            return Err(Error::NotZeroFramed(weight));
        }
        if longitude.max_generator().is_some_and(|g| g >= self.n_gens()) {
            return Err(Error::Input("longitude references an undeclared generator".into()));
        }
        let mut out = self.clone();
        out.relators.push(longitude.clone());
        out.kind = ManifoldKind::Closed;
        out.label = format!("{} (0-surgery)", self.label);
        Ok(out)
    }

    /// Render in the line-based presentation DSL; inverse of `parse`.
    pub fn print(&self) -> String {
        let mut s = String::from("# talex presentation v1\n");
        if !self.label.is_empty() {
            s.push_str(&format!("label: {}\n", self.label));
        }
        s.push_str(&format!("gens: {}\n", self.generator_names.join(" ")));
        for r in &self.relators {
            s.push_str(&format!("rel: {}\n", r.display(&self.generator_names)));
        }
        let phi_parts: Vec<String> = self
            .generator_names
            .iter()
            .zip(&self.phi)
            .map(|(n, v)| format!("{n}={v}"))
            .collect();
        s.push_str(&format!("phi: {}\n", phi_parts.join(" ")));
        if self.kind == ManifoldKind::Closed {
            s.push_str("kind: closed\n");
        }
        s
    }

    /// Parse the presentation DSL. Lines: `gens: a b c`, `rel: <word>` or
    /// `rel: <word> = <word>`, optional `phi: a=1 b=0`, optional
    /// `kind: closed`, optional `label: ...`; `#` starts a comment. When no
    /// phi line is present a primitive φ is derived from the abelianization.
    pub fn parse(text: &str) -> Result<Presentation> {
        let mut names: Option<Vec<String>> = None;
        let mut relator_lines: Vec<(usize, String)> = Vec::new();
        let mut phi_line: Option<(usize, String)> = None;
        let mut kind = ManifoldKind::BoundaryTori;
        let mut label = String::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = lineno + 1;
            let Some((key, rest)) = line.split_once(':') else {
                return Err(parse_err(lineno, 1, "expected `key: value`"));
            };
            let rest = rest.trim().to_string();
            match key.trim() {
                "gens" => {
                    let list: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if list.is_empty() {
                        return Err(parse_err(lineno, 1, "empty generator list"));
                    }
                    let mut seen = std::collections::HashSet::new();
                    for g in &list {
                        if !seen.insert(g.clone()) {
                            return Err(parse_err(lineno, 1, &format!("duplicate generator `{g}`")));
                        }
                    }
                    names = Some(list);
                }
                "rel" => relator_lines.push((lineno, rest)),
                "phi" => phi_line = Some((lineno, rest)),
                "kind" => match rest.as_str() {
                    "closed" => kind = ManifoldKind::Closed,
                    "boundary-tori" => kind = ManifoldKind::BoundaryTori,
                    other => {
                        return Err(parse_err(lineno, 1, &format!("unknown kind `{other}`")));
                    }
                },
                "label" => label = rest,
                other => {
                    return Err(parse_err(lineno, 1, &format!("unknown key `{other}`")));
                }
            }
        }

        let names = names.ok_or_else(|| parse_err(1, 1, "missing `gens:` line"))?;
        let mut relators = Vec::new();
        for (lineno, text) in &relator_lines {
            relators.push(parse_relator(text, &names, *lineno)?);
        }

        let phi = match phi_line {
            Some((lineno, text)) => parse_phi(&text, &names, lineno)?,
            None => vec![0; names.len()],
        };
        let derived = phi.iter().all(|&x| x == 0);
        let p = Presentation::new(names, relators, phi, kind, label)?;
        if derived {
            p.derive_phi()
        } else {
            Ok(p)
        }
    }
}

fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse { line, col, msg: msg.to_string() }
}

/// Parse a whitespace-separated word; tokens `x` or `x^-1`.
pub fn parse_word(text: &str, names: &[String], lineno: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut cursor = 0usize;
    while cursor < text.len() {
        let rest = &text[cursor..];
        let skip = rest.len() - rest.trim_start().len();
        cursor += skip;
        if cursor >= text.len() {
            break;
        }
        let start = cursor;
        let token: &str = text[start..].split_whitespace().next().unwrap();
        cursor = start + token.len();
        let col = start + 1;
        let (base, inverse) = match token.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (token, false),
        };
        if base.contains('^') {
            return Err(parse_err(lineno, col, &format!("bad exponent in `{token}` (only ^-1 is supported)")));
        }
        let Some(idx) = names.iter().position(|n| n == base) else {
            return Err(parse_err(lineno, col, &format!("unknown generator `{base}`")));
        };
        letters.push(if inverse { -(idx as i32 + 1) } else { idx as i32 + 1 });
    }
    Ok(Word::from_letters(letters))
}

fn parse_relator(text: &str, names: &[String], lineno: usize) -> Result<Word> {
    if let Some((lhs, rhs)) = text.split_once('=') {
        let l = parse_word(lhs.trim(), names, lineno)?;
        let r = parse_word(rhs.trim(), names, lineno)?;
        Ok(l.concat(&r.inverse()))
    } else {
        parse_word(text, names, lineno)
    }
}

fn parse_phi(text: &str, names: &[String], lineno: usize) -> Result<Vec<i64>> {
    let mut phi = vec![0i64; names.len()];
    let mut assigned = vec![false; names.len()];
    for part in text.split_whitespace() {
        let Some((name, value)) = part.split_once('=') else {
            return Err(parse_err(lineno, 1, &format!("expected `gen=int`, got `{part}`")));
        };
        let Some(idx) = names.iter().position(|n| n == name) else {
            return Err(parse_err(lineno, 1, &format!("unknown generator `{name}` in phi")));
        };
        let v: i64 = value
            .parse()
            .map_err(|_| parse_err(lineno, 1, &format!("bad integer `{value}` in phi")))?;
        phi[idx] = v;
        assigned[idx] = true;
    }
    if let Some(i) = assigned.iter().position(|a| !a) {
        return Err(parse_err(lineno, 1, &format!("phi missing generator `{}`", names[i])));
    }
    Ok(phi)
}

/// Parse a block of Wirtinger conjugation equations, one per line, each of the
/// form `x = w y w^-1` with single-generator sides (`c = g^-1 d g` style).
/// Generators are taken from the equation left-hand sides in order of first
/// appearance; every name appearing must occur as some left-hand side. One
/// redundant relator (the last) is dropped; φ ≡ 1 on all meridians.
pub fn parse_wirtinger(text: &str) -> Result<Presentation> {
    let mut equations: Vec<(usize, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        equations.push((lineno + 1, line.to_string()));
    }
    if equations.is_empty() {
        return Err(Error::Input("no Wirtinger equations given".into()));
    }

    // First pass: generator names from left-hand sides.
    let mut names: Vec<String> = Vec::new();
    for (lineno, eq) in &equations {
        let Some((lhs, _)) = eq.split_once('=') else {
            return Err(parse_err(*lineno, 1, "expected `x = w y w^-1`"));
        };
        let lhs = lhs.trim();
        if lhs.is_empty() || lhs.split_whitespace().count() != 1 || lhs.contains('^') {
            return Err(parse_err(*lineno, 1, "left side must be a single generator"));
        }
        if names.iter().any(|n| n == lhs) {
            return Err(parse_err(*lineno, 1, &format!("generator `{lhs}` defined twice")));
        }
        names.push(lhs.to_string());
    }

    let mut relators = Vec::new();
    for (lineno, eq) in &equations {
        let (lhs, rhs) = eq.split_once('=').unwrap();
        let l = parse_word(lhs.trim(), &names, *lineno)?;
        let r = parse_word(rhs.trim(), &names, *lineno)?;
        if !is_conjugation_of_generator(&r) {
            return Err(parse_err(*lineno, 1, "right side is not w y w^-1 for a generator y"));
        }
        relators.push(l.concat(&r.inverse()));
    }
    // The Wirtinger relations are globally redundant; drop the last.
    relators.pop();

    Presentation::new(
        names.clone(),
        relators,
        vec![1; names.len()],
        ManifoldKind::BoundaryTori,
        "wirtinger",
    )
}

fn is_conjugation_of_generator(w: &Word) -> bool {
    let letters = w.letters();
    if letters.len() % 2 != 1 {
        return false;
    }
    let mid = letters.len() / 2;
    if letters[mid] < 0 {
        return false;
    }
    (0..mid).all(|i| letters[i] == -letters[letters.len() - 1 - i])
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_group_of_rank_one() {
        let p = Presentation::parse("gens: a\n").unwrap();
        assert_eq!(p.n_gens(), 1);
        assert!(p.relators().is_empty());
        assert_eq!(p.phi(), &[1]);
        assert_eq!(p.kind(), ManifoldKind::BoundaryTori);
    }

    #[test]
    fn trefoil_braid_style_presentation() {
        let text = "gens: x y\nrel: x y x = y x y\nphi: x=1 y=1\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.relators().len(), 1);
        assert!(p.phi_is_primitive());
        let (betti, torsion) = p.first_homology();
        assert_eq!((betti, torsion.len()), (1, 0));
    }

    #[test]
    fn phi_must_vanish_on_relators() {
        let text = "gens: x y\nrel: x y x = y x y\nphi: x=1 y=2\n";
        assert!(matches!(
            Presentation::parse(text),
            Err(Error::PhiNotVanishing { index: 0 })
        ));
    }

    #[test]
    fn derive_phi_on_commuting_generators() {
        let text = "gens: a b\nrel: a b a^-1 b^-1\n";
        let p = Presentation::parse(text).unwrap();
        // Z^2: some primitive class; both (1,0)-like and (0,1)-like are fine.
        assert!(p.phi_is_primitive());
        assert_eq!(p.relators()[0].phi_weight(p.phi()), 0);
    }

    #[test]
    fn derive_phi_fails_on_finite_abelianization() {
        use crate::word::Word;
        let p = Presentation::new(
            vec!["a".into()],
            vec![Word::from_letters([1, 1])],
            vec![0],
            ManifoldKind::BoundaryTori,
            "Z/2",
        )
        .unwrap();
        assert!(matches!(p.derive_phi(), Err(Error::NoFreeAbelianQuotient)));
        // Parsing without a phi line derives phi and hits the same error.
        assert!(matches!(
            Presentation::parse("gens: a\nrel: a a\n"),
            Err(Error::NoFreeAbelianQuotient)
        ));
    }

    #[test]
    fn wirtinger_trefoil() {
        let text = "a = c b c^-1\nb = a c a^-1\nc = b a b^-1\n";
        let p = parse_wirtinger(text).unwrap();
        assert_eq!(p.n_gens(), 3);
        assert_eq!(p.relators().len(), 2);
        assert_eq!(p.phi(), &[1, 1, 1]);
        let (betti, torsion) = p.first_homology();
        assert_eq!((betti, torsion.len()), (1, 0));
        // Re-deriving phi is a no-op: already primitive all-ones.
        let q = p.derive_phi().unwrap();
        assert_eq!(q.phi(), p.phi());
    }

    #[test]
    fn wirtinger_rejects_non_conjugation() {
        let text = "a = b b\nb = a a\n";
        assert!(parse_wirtinger(text).is_err());
    }

    #[test]
    fn dsl_round_trip() {
        let text = "gens: x y\nrel: x y x = y x y\nphi: x=1 y=1\n";
        let p = Presentation::parse(text).unwrap();
        let q = Presentation::parse(&p.print()).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn surgery_requires_zero_framing() {
        let text = "gens: x y\nrel: x y x = y x y\nphi: x=1 y=1\n";
        let p = Presentation::parse(text).unwrap();
        assert!(matches!(
            p.zero_surgery(&Word::generator(0)),
            Err(Error::NotZeroFramed(1))
        ));
        let l = Word::from_letters([1, -2]);
        let s = p.zero_surgery(&l).unwrap();
        assert_eq!(s.kind(), ManifoldKind::Closed);
        assert_eq!(s.relators().len(), 2);
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = Presentation::parse("gens: a\nrel: q\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
