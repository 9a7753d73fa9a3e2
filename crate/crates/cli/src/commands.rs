use crate::CommonArgs;
use num_rational::Ratio;
use rayon::prelude::*;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};
use talex_core::fibering::{fibering_check, FiberingStatus, HomSource};
use talex_core::field::{is_prime, Field};
use talex_core::homsearch::{search_homs, PermHom, SearchOptions};
use talex_core::invariants::{compute_invariants, InvariantReport};
use talex_core::perm::Perm;
use talex_core::presentation::{parse_word, Presentation};
use talex_core::rep::{build_representation, flavor_dim, RepFlavor};
use talex_core::report::{emit_report, ReportDocument, ReportFormat};
use talex_core::table::{load_table, parse_input, KnotTableEntry};
use talex_core::{Error, Result};

const FIXTURE_ENV: &str = "TALEX_FIXTURES";

fn fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"))
}

struct LoadedInput {
    presentation: Presentation,
    /// Canonical text of the final presentation; what the report hashes.
    source_text: String,
    entry: Option<KnotTableEntry>,
}

fn finalize(mut p: Presentation, label: &str, longitude: Option<&str>) -> Result<LoadedInput> {
    if p.label().is_empty() {
        p = p.with_label(label);
    }
    if p.phi_is_zero() {
        p = p.derive_phi()?;
    }
    if let Some(text) = longitude {
        let w = parse_word(text, p.generator_names(), 1)?;
        p = p.zero_surgery(&w)?;
    }
    let source_text = p.print();
    Ok(LoadedInput { presentation: p, source_text, entry: None })
}

fn load_input(spec: &str, longitude: Option<&str>) -> Result<LoadedInput> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input");
        return finalize(parse_input(&text)?.presentation()?, stem, longitude);
    }
    let table_path = fixture_dir().join("knots.table");
    let entries = load_table(&table_path).map_err(|e| {
        Error::Input(format!(
            "`{spec}` is not a file, and the fixture table failed to load: {e}"
        ))
    })?;
    let entry = entries
        .into_iter()
        .find(|e| e.name == spec)
        .ok_or_else(|| {
            Error::Input(format!(
                "`{spec}` is neither a file nor an entry of {}",
                table_path.display()
            ))
        })?;
    let mut loaded = finalize(entry.presentation()?, &entry.name, longitude)?;
    loaded.entry = Some(entry);
    Ok(loaded)
}

fn single_field(primes: &[u64]) -> Result<Field> {
    match primes {
        [] => Ok(Field::Q),
        [p] => Field::prime(*p),
        _ => Err(Error::Input("this command takes at most one --prime".into())),
    }
}

fn validated_primes(primes: &[u64], default: &[u64]) -> Result<Vec<u64>> {
    let ps: Vec<u64> = if primes.is_empty() { default.to_vec() } else { primes.to_vec() };
    for &p in &ps {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
    }
    Ok(ps)
}

fn validated_ks(ks: &[usize], default: &[usize]) -> Result<Vec<usize>> {
    let ks: Vec<usize> = if ks.is_empty() { default.to_vec() } else { ks.to_vec() };
    if ks.iter().any(|&k| k == 0) {
        return Err(Error::Input("--k must be at least 1".into()));
    }
    Ok(ks)
}

fn budget_duration(budget: u64) -> Result<Duration> {
    if budget == 0 {
        return Err(Error::Input("--budget must be positive".into()));
    }
    Ok(Duration::from_secs(budget))
}

/// Genus search tries stronger flavors first.
fn ordered_flavors(flavors: &[RepFlavor], default: &[RepFlavor]) -> Vec<RepFlavor> {
    let mut fs: Vec<RepFlavor> = if flavors.is_empty() { default.to_vec() } else { flavors.to_vec() };
    let rank = |f: &RepFlavor| match f {
        RepFlavor::Standard => 0,
        RepFlavor::Permutation => 1,
        RepFlavor::Trivial => 2,
    };
    fs.sort_by_key(rank);
    fs.dedup();
    fs
}

fn print_bytes(bytes: &[u8]) -> Result<()> {
    std::io::stdout()
        .write_all(bytes)
        .map_err(|e| Error::Internal(format!("stdout write failed: {e}")))
}

fn emit(doc: &ReportDocument, json: bool) -> Result<()> {
    let format = if json { ReportFormat::Structured } else { ReportFormat::Human };
    print_bytes(&emit_report(doc, format)?)
}

fn trivial_hom(p: &Presentation) -> PermHom {
    PermHom::new(1, vec![Perm::identity(1); p.n_gens()]).expect("degree-1 images are consistent")
}

pub fn compute(args: &CommonArgs, hom_path: Option<&str>) -> Result<i32> {
    budget_duration(args.budget)?;
    let loaded = load_input(&args.input, args.longitude.as_deref())?;
    let p = &loaded.presentation;
    let field = single_field(&validated_primes(&args.prime, &[])?)?;
    let (hom, flavor) = match hom_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
            let hom = PermHom::parse(&text, p.generator_names())?;
            if let Some(&k) = args.k.first() {
                if k != hom.degree {
                    return Err(Error::Input(format!(
                        "--k {k} disagrees with the hom file degree {}",
                        hom.degree
                    )));
                }
            }
            let flavor = match args.flavor[..] {
                [] => RepFlavor::Standard,
                [f] => f,
                _ => return Err(Error::Input("compute takes one --flavor".into())),
            };
            (hom, flavor)
        }
        None => (trivial_hom(p), RepFlavor::Trivial),
    };
    if flavor_dim(flavor, hom.degree) == 0 {
        return Err(Error::Input("standard flavor needs degree at least 2".into()));
    }
    let rep = build_representation(&hom, flavor, field);
    let inv = compute_invariants(p, &rep)?;
    let mut doc = ReportDocument::new(p, &loaded.source_text);
    doc.options = vec![format!("command=compute"), format!("flavor={flavor}"), format!("field={field}")];
    doc.attach_invariants(Some(&hom), &inv);
    emit(&doc, args.json)?;
    Ok(0)
}

struct BestBound {
    rational: Ratio<i64>,
    rounded: i64,
    hom: PermHom,
    report: InvariantReport,
}

struct GenusOutcome {
    best: Option<BestBound>,
    meets_known: Option<bool>,
    exhausted: bool,
    spent_ops: u64,
}

/// Flavors strongest-first, k ascending, homs in search order, primes
/// ascending; stops when the supplied known genus is certified.
fn genus_sweep(
    p: &Presentation,
    ks: &[usize],
    primes: &[u64],
    flavors: &[RepFlavor],
    known_genus: Option<i64>,
    deadline: Instant,
) -> Result<GenusOutcome> {
    let mut out = GenusOutcome { best: None, meets_known: None, exhausted: false, spent_ops: 0 };
    'outer: for &k in ks {
        let Some(remaining) = deadline.checked_duration_since(Instant::now()).filter(|d| !d.is_zero())
        else {
            out.exhausted = true;
            break;
        };
        let opts = SearchOptions {
            transitive_only: true,
            deduplicate: true,
            time_budget: remaining,
            ..SearchOptions::default()
        };
        let found = search_homs(p, k, &opts)?;
        out.exhausted |= found.incomplete;
        for &flavor in flavors {
            if flavor_dim(flavor, k) == 0 {
                continue;
            }
            for hom in &found.homs {
                for &prime in primes {
                    if Instant::now() >= deadline {
                        out.exhausted = true;
                        break 'outer;
                    }
                    let rep = build_representation(hom, flavor, Field::Fp(prime));
                    let inv = compute_invariants(p, &rep)?;
                    out.spent_ops += inv.snf_ops;
                    let Some((rational, rounded)) = inv.genus_bound() else { continue };
                    let better = out.best.as_ref().map_or(true, |b| rational > b.rational);
                    if better {
                        out.best = Some(BestBound { rational, rounded, hom: hom.clone(), report: inv });
                    }
                    if let Some(g) = known_genus {
                        if out.best.as_ref().is_some_and(|b| b.rounded >= g) {
                            out.meets_known = Some(true);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    if let Some(g) = known_genus {
        if out.meets_known.is_none() {
            out.meets_known = Some(out.best.as_ref().is_some_and(|b| b.rounded >= g));
        }
    }
    Ok(out)
}

fn genus_doc(command: &str, loaded: &LoadedInput, outcome: &GenusOutcome) -> ReportDocument {
    let mut doc = ReportDocument::new(&loaded.presentation, &loaded.source_text);
    doc.options.push(format!("command={command}"));
    if let Some(known) = loaded.entry.as_ref().and_then(|e| e.known_genus) {
        doc.options.push(format!("knownGenus={known}"));
    }
    if let Some(meets) = outcome.meets_known {
        doc.options.push(format!("meetsKnownGenus={meets}"));
    }
    if outcome.exhausted {
        doc.options.push("budgetExhausted=true".to_string());
    }
    match &outcome.best {
        Some(best) => doc.attach_invariants(Some(&best.hom), &best.report),
        None => doc.options.push("noBoundFound=true".to_string()),
    }
    doc.timings.snf_ops = outcome.spent_ops;
    doc
}

pub fn genus(args: &CommonArgs) -> Result<i32> {
    let budget = budget_duration(args.budget)?;
    let loaded = load_input(&args.input, args.longitude.as_deref())?;
    let ks = validated_ks(&args.k, &[2, 3, 4, 5])?;
    let primes = validated_primes(&args.prime, &[13])?;
    let flavors = ordered_flavors(&args.flavor, &[RepFlavor::Standard, RepFlavor::Permutation]);
    let known = loaded.entry.as_ref().and_then(|e| e.known_genus);
    let outcome = genus_sweep(
        &loaded.presentation,
        &ks,
        &primes,
        &flavors,
        known,
        Instant::now() + budget,
    )?;
    if outcome.best.is_none() && outcome.exhausted {
        return Err(Error::BudgetExhausted);
    }
    emit(&genus_doc("genus", &loaded, &outcome), args.json)?;
    Ok(if outcome.exhausted && outcome.meets_known != Some(true) { 3 } else { 0 })
}

pub fn fiber(args: &CommonArgs, hom_path: Option<&str>) -> Result<i32> {
    let budget = budget_duration(args.budget)?;
    let loaded = load_input(&args.input, args.longitude.as_deref())?;
    let p = &loaded.presentation;
    let ks = validated_ks(&args.k, &[2, 3, 4, 5])?;
    let primes = validated_primes(&args.prime, &[2, 3, 5, 7, 11, 13])?;
    let flavors = ordered_flavors(&args.flavor, &[RepFlavor::Permutation, RepFlavor::Standard]);
    let source = match hom_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
            HomSource::Explicit(vec![PermHom::parse(&text, p.generator_names())?])
        }
        None => HomSource::Search {
            ks,
            opts: SearchOptions {
                transitive_only: true,
                deduplicate: true,
                time_budget: budget,
                ..SearchOptions::default()
            },
        },
    };
    let known = loaded.entry.as_ref().and_then(|e| e.known_genus);
    let verdict = fibering_check(p, &source, &flavors, &primes, known)?;
    let mut doc = ReportDocument::new(p, &loaded.source_text);
    doc.options.push("command=fiber".to_string());
    doc.attach_verdict(&verdict);
    emit(&doc, args.json)?;
    let inconclusive_budget =
        verdict.incomplete && verdict.status == FiberingStatus::NoObstructionFound;
    Ok(if inconclusive_budget { 3 } else { 0 })
}

pub fn search(args: &CommonArgs) -> Result<i32> {
    let budget = budget_duration(args.budget)?;
    let loaded = load_input(&args.input, args.longitude.as_deref())?;
    let p = &loaded.presentation;
    let ks = validated_ks(&args.k, &[2, 3, 4, 5])?;
    let deadline = Instant::now() + budget;
    let mut exhausted = false;
    let mut out = String::new();
    for &k in &ks {
        let Some(remaining) = deadline.checked_duration_since(Instant::now()).filter(|d| !d.is_zero())
        else {
            exhausted = true;
            break;
        };
        let opts = SearchOptions {
            transitive_only: true,
            deduplicate: true,
            time_budget: remaining,
            ..SearchOptions::default()
        };
        let found = search_homs(p, k, &opts)?;
        exhausted |= found.incomplete;
        for hom in &found.homs {
            out.push_str(&hom.print(p.generator_names()));
            out.push('\n');
        }
    }
    if exhausted {
        out.push_str("# search incomplete: budget exhausted\n");
    }
    print_bytes(out.as_bytes())?;
    Ok(if exhausted { 3 } else { 0 })
}

fn resolve_table_path(spec: &str) -> Result<PathBuf> {
    let direct = PathBuf::from(spec);
    if direct.is_file() {
        return Ok(direct);
    }
    let fallback = fixture_dir().join(spec);
    if fallback.is_file() {
        return Ok(fallback);
    }
    Err(Error::Input(format!(
        "table `{spec}` not found (also tried {})",
        fallback.display()
    )))
}

fn batch_entry(args: &CommonArgs, entry: &KnotTableEntry) -> Result<(Vec<u8>, i32)> {
    let budget = budget_duration(args.budget)?;
    let mut loaded = finalize(entry.presentation()?, &entry.name, args.longitude.as_deref())?;
    loaded.entry = Some(entry.clone());
    let ks = validated_ks(&args.k, &[2, 3, 4, 5])?;
    let primes = validated_primes(&args.prime, &[13])?;
    let flavors = ordered_flavors(&args.flavor, &[RepFlavor::Standard, RepFlavor::Permutation]);
    let known = entry.known_genus;
    let outcome = genus_sweep(
        &loaded.presentation,
        &ks,
        &primes,
        &flavors,
        known,
        Instant::now() + budget,
    )?;
    let mut doc = genus_doc("batch", &loaded, &outcome);
    if let Some(expected) = &entry.classical_alexander {
        let trivial = build_representation(&trivial_hom(&loaded.presentation), RepFlavor::Trivial, Field::Q);
        let classical = compute_invariants(&loaded.presentation, &trivial)?;
        let ok = classical.delta1.canonical() == expected.canonical();
        doc.options.push(format!("alexAnnotation={}", if ok { "confirmed" } else { "MISMATCH" }));
    }
    let bytes = if args.json {
        let mut line = serde_json::to_vec(&doc)
            .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
        line.push(b'\n');
        line
    } else {
        emit_report(&doc, ReportFormat::Human)?
    };
    let code = if outcome.exhausted && outcome.meets_known != Some(true) { 3 } else { 0 };
    Ok((bytes, code))
}

pub fn batch(args: &CommonArgs) -> Result<i32> {
    budget_duration(args.budget)?;
    if args.workers == 0 {
        return Err(Error::Input("--workers must be at least 1".into()));
    }
    let table_path = resolve_table_path(&args.input)?;
    let entries = load_table(&table_path)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
    let results: Vec<Result<(Vec<u8>, i32)>> =
        pool.install(|| entries.par_iter().map(|e| batch_entry(args, e)).collect());
    let mut code = 0;
    for r in results {
        let (bytes, entry_code) = r?;
        print_bytes(&bytes)?;
        code = code.max(entry_code);
    }
    Ok(code)
}
