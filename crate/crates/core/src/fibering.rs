use crate::field::Field;
use crate::homsearch::{search_homs, PermHom, SearchOptions};
use crate::invariants::compute_invariants;
use crate::laurent::LaurentPoly;
use crate::presentation::Presentation;
use crate::rep::{build_representation, flavor_dim, RepFlavor};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::Ratio;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FiberingStatus {
    Obstructed,
    NoObstructionFound,
    Inapplicable,
}

impl FiberingStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FiberingStatus::Obstructed => "obstructed",
            FiberingStatus::NoObstructionFound => "no-obstruction-found",
            FiberingStatus::Inapplicable => "inapplicable",
        }
    }
}

/// Witness of a failed fibering equality: one (hom, flavor, prime) whose
/// normalized torsion degree misses the classical side, or whose Δ₁
/// vanishes outright.
#[derive(Clone, Debug)]
pub struct FiberingCertificate {
    pub hom: PermHom,
    pub flavor: RepFlavor,
    pub prime: u64,
    pub deg_d0: Option<i64>,
    pub deg_d1: Option<i64>,
    pub deg_d2: Option<i64>,
    pub delta1_zero: bool,
    /// (1/k)·torsionDegree + 1 + b₃; None when Δ₁ = 0.
    pub twisted_side: Option<Ratio<i64>>,
    pub untwisted_side: Ratio<i64>,
}

/// The abelian precheck: a fibered knot has monic classical polynomial of
/// degree twice the genus.
#[derive(Clone, Debug)]
pub struct NeuwirthCheck {
    pub monic: bool,
    pub degree: i64,
    pub expected_degree: Option<i64>,
    pub passes: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct FiberingVerdict {
    pub status: FiberingStatus,
    pub certificate: Option<FiberingCertificate>,
    pub neuwirth: Option<NeuwirthCheck>,
    pub classical: Option<LaurentPoly>,
    /// Number of (hom, flavor, prime) triples evaluated.
    pub checked: usize,
    pub incomplete: bool,
}

#[derive(Clone, Debug)]
pub enum HomSource {
    Explicit(Vec<PermHom>),
    Search { ks: Vec<usize>, opts: SearchOptions },
}

/// Fibering obstruction sweep. The fibered case forces, for every
/// representation over every field, (1/k)·(deg Δ₁ − deg Δ₀ − deg Δ₂) + 1 +
/// b₃ = deg of the classical polynomial over ℚ, and forces Δ₁ ≠ 0; any
/// violation is a certificate. Absence of violations is reported as
/// no-obstruction-found, never as fibered.
pub fn fibering_check(
    p: &Presentation,
    source: &HomSource,
    flavors: &[RepFlavor],
    primes: &[u64],
    known_genus: Option<i64>,
) -> Result<FiberingVerdict> {
    if !p.phi_is_primitive() {
        return Err(Error::Input("fibering check needs a primitive phi".into()));
    }
    let triv = PermHom::new(1, vec![crate::perm::Perm::identity(1); p.n_gens()])?;
    let classical_rep = build_representation(&triv, RepFlavor::Trivial, Field::Q);
    let classical = compute_invariants(p, &classical_rep)?;
    let Some(untwisted_deg) = classical.delta1.degree() else {
        return Ok(FiberingVerdict {
            status: FiberingStatus::Inapplicable,
            certificate: None,
            neuwirth: None,
            classical: None,
            checked: 0,
            incomplete: false,
        });
    };
    let untwisted_side = Ratio::from_integer(untwisted_deg);
    let b3 = p.kind().b3() as i64;

    let neuwirth = {
        let (_, ints) = classical
            .delta1
            .primitive_integer_coeffs()
            .expect("classical polynomial over Q is nonzero");
        let one = BigInt::from(1);
        let monic = ints.first().map(|c| c.magnitude() == one.magnitude()).unwrap_or(false)
            && ints.last().map(|c| c.magnitude() == one.magnitude()).unwrap_or(false);
        let expected = known_genus.map(|g| 2 * g);
        Some(NeuwirthCheck {
            monic,
            degree: untwisted_deg,
            expected_degree: expected,
            passes: expected.map(|e| monic && untwisted_deg == e),
        })
    };

    let mut incomplete = false;
    let homs: Vec<PermHom> = match source {
        HomSource::Explicit(v) => v.clone(),
        HomSource::Search { ks, opts } => {
            let mut all = Vec::new();
            for &k in ks {
                let out = search_homs(p, k, opts)?;
                incomplete |= out.incomplete;
                all.extend(out.homs);
            }
            all
        }
    };

    let mut checked = 0usize;
    for hom in &homs {
        for &flavor in flavors {
            if flavor_dim(flavor, hom.degree) == 0 {
                continue;
            }
            for &prime in primes {
                checked += 1;
                let rep = build_representation(hom, flavor, Field::Fp(prime));
                let report = compute_invariants(p, &rep)?;
                let k = report.rep_dim as i64;
                let twisted = report
                    .torsion_degree
                    .map(|td| Ratio::new(td, k) + Ratio::from_integer(1 + b3));
                let violated = match twisted {
                    None => true, // Δ₁ = 0 cannot happen for fibered
                    Some(side) => side != untwisted_side,
                };
                if violated {
                    let certificate = FiberingCertificate {
                        hom: hom.clone(),
                        flavor,
                        prime,
                        deg_d0: report.delta0.degree(),
                        deg_d1: report.delta1.degree(),
                        deg_d2: report.delta2.degree(),
                        delta1_zero: report.delta1.is_zero(),
                        twisted_side: twisted,
                        untwisted_side,
                    };
                    return Ok(FiberingVerdict {
                        status: FiberingStatus::Obstructed,
                        certificate: Some(certificate),
                        neuwirth,
                        classical: Some(classical.delta1),
                        checked,
                        incomplete,
                    });
                }
            }
        }
    }
    Ok(FiberingVerdict {
        status: FiberingStatus::NoObstructionFound,
        certificate: None,
        neuwirth,
        classical: Some(classical.delta1),
        checked,
        incomplete,
    })
}

/// Per-field degree data for one prime in a monicity scan.
#[derive(Clone, Debug)]
pub struct PrimeDegrees {
    pub prime: u64,
    pub deg_delta1: Option<i64>,
    pub torsion_degree: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct MonicityReport {
    /// Monicity of the primitive integer form of Δ₁ over ℚ: both extreme
    /// coefficients ±1. None when Δ₁ = 0.
    pub monic: Option<bool>,
    pub integer_coeffs: Option<Vec<BigInt>>,
    pub deg_delta1_q: Option<i64>,
    pub torsion_degree_q: Option<i64>,
    pub per_prime: Vec<PrimeDegrees>,
    /// Non-monic, or a torsion-degree mismatch between ℚ and a sampled
    /// prime, or a vanishing Δ₁ mod p. Evidence, not proof: only finitely
    /// many primes are sampled.
    pub evidence_against_fibering: bool,
    pub caveat: &'static str,
}

/// Degrees of Δ₁ for one integer-entry representation over ℚ and over each
/// sampled prime field. The two can legitimately differ; what fibering
/// forbids is a normalized torsion-degree mismatch.
pub fn monicity_check(
    p: &Presentation,
    h: &PermHom,
    flavor: RepFlavor,
    primes: &[u64],
) -> Result<MonicityReport> {
    let rep_q = build_representation(h, flavor, Field::Q);
    let report_q = compute_invariants(p, &rep_q)?;
    let ints = report_q.delta1.primitive_integer_coeffs().map(|(_, v)| v);
    let monic = ints.as_ref().map(|v| {
        let one = BigInt::from(1);
        v.first().map(|c| c.magnitude() == one.magnitude()).unwrap_or(false)
            && v.last().map(|c| c.magnitude() == one.magnitude()).unwrap_or(false)
    });

    let mut per_prime = Vec::with_capacity(primes.len());
    let mut mismatch = false;
    for &prime in primes {
        let rep_p = build_representation(h, flavor, Field::Fp(prime));
        let report_p = compute_invariants(p, &rep_p)?;
        if report_p.torsion_degree != report_q.torsion_degree {
            mismatch = true;
        }
        per_prime.push(PrimeDegrees {
            prime,
            deg_delta1: report_p.delta1.degree(),
            torsion_degree: report_p.torsion_degree,
        });
    }

    Ok(MonicityReport {
        evidence_against_fibering: monic == Some(false) || mismatch,
        monic,
        integer_coeffs: ints,
        deg_delta1_q: report_q.delta1.degree(),
        torsion_degree_q: report_q.torsion_degree,
        per_prime,
        caveat: "finitely many primes sampled; degrees over F_p may differ from Q without contradicting fibering when torsion degrees agree",
    })
}
