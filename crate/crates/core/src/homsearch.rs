use crate::perm::{is_transitive, Perm};
use crate::presentation::Presentation;
use crate::word::Word;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

/// A homomorphism to S_k, recorded as one permutation per generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermHom {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl PermHom {
    pub fn new(degree: usize, images: Vec<Perm>) -> Result<Self> {
        if images.iter().any(|p| p.degree() != degree) {
            return Err(Error::Input("permutation degree mismatch".into()));
        }
        Ok(PermHom { degree, images })
    }

    pub fn evaluate(&self, w: &Word) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for (gen, sign) in w.iter() {
            let img = &self.images[gen];
            let next = if sign > 0 { img.clone() } else { img.inverse() };
            acc = acc.compose(&next);
        }
        acc
    }

    /// All relators map to the identity.
    pub fn satisfies(&self, p: &Presentation) -> bool {
        p.n_gens() == self.images.len()
            && p.relators().iter().all(|r| self.evaluate(r).is_identity())
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.images, self.degree)
    }

    /// Order of the subgroup of S_k generated by the images, by closure.
    pub fn image_order(&self) -> usize {
        let mut elems = vec![Perm::identity(self.degree)];
        let mut frontier = elems.clone();
        while let Some(g) = frontier.pop() {
            for h in &self.images {
                let next = g.compose(h);
                if !elems.contains(&next) {
                    elems.push(next.clone());
                    frontier.push(next);
                }
            }
        }
        elems.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_order() == (1..=self.degree).product::<usize>()
    }

    /// Lexicographically smallest image tuple within the S_k-conjugacy class
    /// of this homomorphism.
    pub fn canonical_conjugate(&self) -> Vec<Perm> {
        let mut best = self.images.clone();
        for c in Perm::all(self.degree) {
            let candidate: Vec<Perm> = self.images.iter().map(|p| p.conjugate_by(&c)).collect();
            if candidate < best {
                best = candidate;
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_conjugate() == self.images
    }

    /// Text form: a versioned header, the degree, then `generator: cycles`
    /// per line in presentation order.
    pub fn print(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.images.len());
        let mut out = String::from("# talex hom v1\n");
        let _ = writeln!(out, "degree: {}", self.degree);
        for (name, img) in names.iter().zip(&self.images) {
            let _ = writeln!(out, "{name}: {img}");
        }
        out
    }

    pub fn parse(text: &str, names: &[String]) -> Result<PermHom> {
        let mut degree: Option<usize> = None;
        let mut assignments: BTreeMap<usize, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(Error::Parse {
                    line: lineno,
                    col: 1,
                    msg: format!("expected `name: cycles`, got `{line}`"),
                });
            };
            let key = key.trim();
            let value = value.trim().to_string();
            if key == "degree" {
                let d: usize = value.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    col: 1,
                    msg: format!("bad degree `{value}`"),
                })?;
                if d == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        col: 1,
                        msg: "degree must be at least 1".into(),
                    });
                }
                degree = Some(d);
                continue;
            }
            let Some(gen) = names.iter().position(|n| n == key) else {
                return Err(Error::Parse {
                    line: lineno,
                    col: 1,
                    msg: format!("unknown generator `{key}`"),
                });
            };
            if assignments.insert(gen, (lineno, value)).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    col: 1,
                    msg: format!("generator `{key}` assigned twice"),
                });
            }
        }
        // Without an explicit degree line, take the largest point mentioned.
        let degree = match degree {
            Some(d) => d,
            None => {
                let max_point = assignments
                    .values()
                    .flat_map(|(_, v)| {
                        v.split(|c: char| !c.is_ascii_digit())
                            .filter(|s| !s.is_empty())
                            .map(|s| s.parse::<usize>().unwrap_or(0))
                    })
                    .max()
                    .unwrap_or(0);
                if max_point == 0 {
                    return Err(Error::Input(
                        "cannot infer degree; add a `degree:` line".into(),
                    ));
                }
                max_point
            }
        };
        let mut images = Vec::with_capacity(names.len());
        for (gen, name) in names.iter().enumerate() {
            let Some((lineno, value)) = assignments.get(&gen) else {
                return Err(Error::Input(format!("generator `{name}` has no image")));
            };
            let perm = Perm::parse_cycles(value, degree).map_err(|e| Error::Parse {
                line: *lineno,
                col: 1,
                msg: e.to_string(),
            })?;
            images.push(perm);
        }
        PermHom::new(degree, images)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Restrict every generator image to this cycle-type label, e.g. `3` or `2+2`.
    pub class_restriction: Option<String>,
    pub transitive_only: bool,
    pub time_budget: Duration,
    /// Sort the collected homs lexicographically on image tuples. The raw
    /// search visits branches in constraint order, not lex order.
    pub lexicographic: bool,
    /// Emit only the lex-minimal representative of each S_k-conjugacy class.
    pub deduplicate: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            class_restriction: None,
            transitive_only: false,
            time_budget: Duration::from_secs(60),
            lexicographic: true,
            deduplicate: false,
        }
    }
}

pub struct SearchOutcome {
    pub homs: Vec<PermHom>,
    /// Set when the time budget ran out before the search tree was exhausted.
    pub incomplete: bool,
}

/// Enumerate homomorphisms from the presented group to S_k, in lexicographic
/// order on image tuples. Backtracking with constraint propagation along
/// conjugation-shaped relators; when every relator is a conjugation and the
/// resulting generator graph is connected, all images must share a cycle
/// type, which prunes the branch candidates.
pub fn search_homs(p: &Presentation, k: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    let mut homs = Vec::new();
    let incomplete = for_each_hom(p, k, opts, |h| {
        homs.push(h);
        ControlFlow::Continue(())
    })?;
    if opts.lexicographic {
        homs.sort_by(|a, b| a.images.cmp(&b.images));
    }
    Ok(SearchOutcome { homs, incomplete })
}

/// Visitor form of `search_homs`; the callback may stop the search early.
/// The callback sees homs in search order, which need not be lexicographic.
/// Returns whether the enumeration was cut short by the time budget.
pub fn for_each_hom(
    p: &Presentation,
    k: usize,
    opts: &SearchOptions,
    mut visit: impl FnMut(PermHom) -> ControlFlow<()>,
) -> Result<bool> {
    if k == 0 {
        return Err(Error::Input("degree k must be at least 1".into()));
    }
    if opts.time_budget.is_zero() {
        return Err(Error::Input("time budget must be positive".into()));
    }
    let all = Perm::all(k);
    let base: Vec<Perm> = match &opts.class_restriction {
        Some(label) => {
            let picked: Vec<Perm> =
                all.iter().filter(|p| &p.cycle_type_label() == label).cloned().collect();
            if picked.is_empty() {
                return Err(Error::Input(format!("no cycle type `{label}` in S_{k}")));
            }
            picked
        }
        None => all.clone(),
    };
    let mut conj = Vec::new();
    let mut plain = Vec::new();
    for r in p.relators() {
        match conjugation_shape(r) {
            Some(shape) => conj.push(shape),
            None => {
                if !r.is_empty() {
                    plain.push(r.clone());
                }
            }
        }
    }
    let meridional = plain.is_empty() && conjugation_graph_connected(&conj, p.n_gens());
    let mut search = Search {
        p,
        k,
        opts,
        base,
        conj,
        plain,
        meridional,
        deadline: Instant::now() + opts.time_budget,
        incomplete: false,
        visit: &mut visit,
    };
    let images: Vec<Option<Perm>> = vec![None; p.n_gens()];
    let _ = search.descend(&images);
    Ok(search.incomplete)
}

struct Search<'a, F: FnMut(PermHom) -> ControlFlow<()>> {
    p: &'a Presentation,
    k: usize,
    opts: &'a SearchOptions,
    base: Vec<Perm>,
    /// (a, v, b) meaning x_a = v x_b v⁻¹.
    conj: Vec<(usize, Word, usize)>,
    plain: Vec<Word>,
    meridional: bool,
    deadline: Instant,
    incomplete: bool,
    visit: &'a mut F,
}

impl<F: FnMut(PermHom) -> ControlFlow<()>> Search<'_, F> {
    fn descend(&mut self, images: &[Option<Perm>]) -> ControlFlow<()> {
        if Instant::now() > self.deadline {
            self.incomplete = true;
            return ControlFlow::Break(());
        }
        let mut local = images.to_vec();
        if !self.propagate(&mut local) {
            return ControlFlow::Continue(());
        }
        let Some(next) = self.pick_branch_gen(&local) else {
            return self.emit(&local);
        };
        let class_lock = if self.meridional {
            local.iter().flatten().next().map(|p| p.cycle_type_label())
        } else {
            None
        };
        // Branch candidates stay in lexicographic order: `base` is lex-sorted
        // and filtering preserves it.
        for cand in self.base.clone() {
            if let Some(label) = &class_lock {
                if &cand.cycle_type_label() != label {
                    continue;
                }
            }
            local[next] = Some(cand);
            self.descend(&local)?;
        }
        ControlFlow::Continue(())
    }

    /// Pick the unassigned generator whose assignment unlocks the most
    /// propagation: best is one completing a relator whose other pieces are
    /// all assigned (immediate consistency check), next one whose assignment
    /// forces a neighbour, last one merely finishing a conjugating word.
    /// Ties go to the lowest index, keeping the search deterministic.
    fn pick_branch_gen(&self, images: &[Option<Perm>]) -> Option<usize> {
        let known = |gen: usize, g: usize| images[gen].is_some() || gen == g;
        let mut best: Option<(u32, usize)> = None;
        for g in 0..images.len() {
            if images[g].is_some() {
                continue;
            }
            let mut score = 0u32;
            for (a, v, b) in &self.conj {
                let involved = *a == g || *b == g || v.iter().any(|(x, _)| x == g);
                if !involved || !v.iter().all(|(x, _)| known(x, g)) {
                    continue;
                }
                score += match (known(*a, g), known(*b, g)) {
                    (true, true) => 4,
                    (true, false) | (false, true) => 2,
                    (false, false) => 1,
                };
            }
            for r in &self.plain {
                if r.iter().any(|(x, _)| x == g) && r.iter().all(|(x, _)| known(x, g)) {
                    score += 4;
                }
            }
            if best.map_or(true, |(s, _)| score > s) {
                best = Some((score, g));
            }
        }
        best.map(|(_, g)| g)
    }

    /// Force images along conjugation relators until a fixed point; false on
    /// contradiction.
    fn propagate(&mut self, images: &mut [Option<Perm>]) -> bool {
        loop {
            let mut changed = false;
            for (a, v, b) in &self.conj {
                let Some(conj_by) = self.partial_evaluate(v, images) else {
                    continue;
                };
                match (&images[*a], &images[*b]) {
                    (Some(pa), Some(pb)) => {
                        if *pa != pb.conjugate_by(&conj_by) {
                            return false;
                        }
                    }
                    (None, Some(pb)) => {
                        let forced = pb.conjugate_by(&conj_by);
                        if !self.admissible(&forced) {
                            return false;
                        }
                        images[*a] = Some(forced);
                        changed = true;
                    }
                    (Some(pa), None) => {
                        let forced = pa.conjugate_by(&conj_by.inverse());
                        if !self.admissible(&forced) {
                            return false;
                        }
                        images[*b] = Some(forced);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
            for r in &self.plain {
                if let Some(val) = self.partial_evaluate(r, images) {
                    if !val.is_identity() {
                        return false;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn admissible(&self, perm: &Perm) -> bool {
        match &self.opts.class_restriction {
            Some(label) => &perm.cycle_type_label() == label,
            None => true,
        }
    }

    fn partial_evaluate(&self, w: &Word, images: &[Option<Perm>]) -> Option<Perm> {
        let mut acc = Perm::identity(self.k);
        for (gen, sign) in w.iter() {
            let img = images[gen].as_ref()?;
            let next = if sign > 0 { img.clone() } else { img.inverse() };
            acc = acc.compose(&next);
        }
        Some(acc)
    }

    fn emit(&mut self, images: &[Option<Perm>]) -> ControlFlow<()> {
        let images: Vec<Perm> = images.iter().map(|p| p.clone().unwrap()).collect();
        let hom = PermHom { degree: self.k, images };
        if !hom.satisfies(self.p) {
            return ControlFlow::Continue(());
        }
        if self.opts.transitive_only && !hom.is_transitive() {
            return ControlFlow::Continue(());
        }
        if self.opts.deduplicate && !hom.is_canonical() {
            return ControlFlow::Continue(());
        }
        (self.visit)(hom)
    }
}

/// Recognize a relator that says `x_a = v x_b v⁻¹` (up to rotation), and
/// return (a, v, b). Trivial and non-conjugation relators give None.
fn conjugation_shape(r: &Word) -> Option<(usize, Word, usize)> {
    let mut c: Vec<i32> = r.letters().to_vec();
    while c.len() >= 2 && c[0] == -c[c.len() - 1] {
        c.pop();
        c.remove(0);
    }
    let n = c.len();
    if n < 2 || n % 2 != 0 {
        return None;
    }
    let m = (n - 2) / 2;
    for start in 0..n {
        let at = |i: usize| c[(start + i) % n];
        if at(0) <= 0 || at(m + 1) >= 0 {
            continue;
        }
        if (0..m).all(|i| at(m + 2 + i) == -at(m - i)) {
            let a = (at(0) - 1) as usize;
            let b = (-at(m + 1) - 1) as usize;
            let v = Word::from_letters((1..=m).map(&at));
            return Some((a, v, b));
        }
    }
    None
}

fn conjugation_graph_connected(edges: &[(usize, Word, usize)], n_gens: usize) -> bool {
    if n_gens == 0 {
        return true;
    }
    let mut reached = vec![false; n_gens];
    reached[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (a, _, b) in edges {
            for (from, to) in [(a, b), (b, a)] {
                if *from == x && !reached[*to] {
                    reached[*to] = true;
                    frontier.push(*to);
                }
            }
        }
    }
    reached.into_iter().all(|r| r)
}
