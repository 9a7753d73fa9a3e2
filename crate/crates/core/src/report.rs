//! Serializable result documents. The structured form is a stable schema,
//! byte-identical across runs for identical inputs; the timing block counts
//! elementary Smith operations instead of wall time to keep it that way.

use crate::fibering::{FiberingVerdict, NeuwirthCheck};
use crate::invariants::InvariantReport;
use crate::presentation::Presentation;
use crate::rep::flavor_dim;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

pub const REPORT_VERSION: &str = "talex report v1";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Human,
    Structured,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct InputStamp {
    pub label: String,
    pub kind: String,
    pub sha256: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct DegreeBlock {
    pub d0: Option<i64>,
    pub d1: Option<i64>,
    pub d2: Option<i64>,
    pub d1torsion: Option<i64>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct GenusBound {
    pub rational: String,
    pub rounded: i64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct NeuwirthBlock {
    pub monic: bool,
    pub degree: i64,
    #[serde(rename = "expectedDegree")]
    pub expected_degree: Option<i64>,
    pub passes: Option<bool>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct VerdictBlock {
    pub status: String,
    pub checked: usize,
    pub incomplete: bool,
    pub neuwirth: Option<NeuwirthBlock>,
    #[serde(rename = "classicalDegree")]
    pub classical_degree: Option<i64>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct CertificateBlock {
    pub hom: Vec<String>,
    pub flavor: String,
    pub k: i64,
    pub p: u64,
    #[serde(rename = "degD0")]
    pub deg_d0: Option<i64>,
    #[serde(rename = "degD1")]
    pub deg_d1: Option<i64>,
    #[serde(rename = "degD2")]
    pub deg_d2: Option<i64>,
    #[serde(rename = "delta1Zero")]
    pub delta1_zero: bool,
    #[serde(rename = "twistedSide")]
    pub twisted_side: Option<String>,
    #[serde(rename = "untwistedSide")]
    pub untwisted_side: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct TimingBlock {
    #[serde(rename = "snfOps")]
    pub snf_ops: u64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Debug)]
pub struct ReportDocument {
    pub version: String,
    pub input: InputStamp,
    pub phi: Vec<i64>,
    pub hom: Option<Vec<String>>,
    pub flavor: Option<String>,
    pub field: Option<String>,
    pub degrees: Option<DegreeBlock>,
    #[serde(rename = "torsionDegree")]
    pub torsion_degree: Option<i64>,
    #[serde(rename = "normBound")]
    pub norm_bound: Option<String>,
    #[serde(rename = "genusBound")]
    pub genus_bound: Option<GenusBound>,
    pub delta1: Option<String>,
    pub verdict: Option<VerdictBlock>,
    pub certificate: Option<CertificateBlock>,
    pub options: Vec<String>,
    pub assumptions: Vec<String>,
    pub timings: TimingBlock,
}

pub fn input_stamp(p: &Presentation, source_text: &str) -> InputStamp {
    let mut hasher = Sha256::new();
    hasher.update(source_text.as_bytes());
    InputStamp {
        label: p.label().to_string(),
        kind: p.kind().as_str().to_string(),
        sha256: format!("{:x}", hasher.finalize()),
    }
}

impl ReportDocument {
    pub fn new(p: &Presentation, source_text: &str) -> Self {
        ReportDocument {
            version: REPORT_VERSION.to_string(),
            input: input_stamp(p, source_text),
            phi: p.phi().to_vec(),
            hom: None,
            flavor: None,
            field: None,
            degrees: None,
            torsion_degree: None,
            norm_bound: None,
            genus_bound: None,
            delta1: None,
            verdict: None,
            certificate: None,
            options: Vec::new(),
            assumptions: Vec::new(),
            timings: TimingBlock { snf_ops: 0 },
        }
    }

    pub fn attach_invariants(&mut self, hom: Option<&crate::homsearch::PermHom>, r: &InvariantReport) {
        self.hom = hom.map(|h| h.images.iter().map(|g| g.to_string()).collect());
        self.flavor = Some(r.flavor.as_str().to_string());
        self.field = Some(r.field.to_string());
        self.degrees = Some(DegreeBlock {
            d0: r.delta0.degree(),
            d1: r.delta1.degree(),
            d2: r.delta2.degree(),
            d1torsion: r.delta1_torsion.degree(),
        });
        self.torsion_degree = r.torsion_degree;
        self.norm_bound = r.norm_bound().map(|b| b.to_string());
        self.genus_bound = r.genus_bound().map(|(rational, rounded)| GenusBound {
            rational: rational.to_string(),
            rounded,
        });
        self.delta1 = Some(r.delta1.to_string());
        self.timings.snf_ops += r.snf_ops;
        if r.kind == crate::presentation::ManifoldKind::Closed && !r.delta2_applicable {
            self.assumptions
                .push("closed-case duality for Δ₂ assumed Δ₁ ≠ 0, which failed here".to_string());
        }
    }

    pub fn attach_verdict(&mut self, v: &FiberingVerdict) {
        self.verdict = Some(VerdictBlock {
            status: v.status.as_str().to_string(),
            checked: v.checked,
            incomplete: v.incomplete,
            neuwirth: v.neuwirth.as_ref().map(neuwirth_block),
            classical_degree: v.classical.as_ref().and_then(|c| c.degree()),
        });
        self.certificate = v.certificate.as_ref().map(|c| CertificateBlock {
            hom: c.hom.images.iter().map(|g| g.to_string()).collect(),
            flavor: c.flavor.as_str().to_string(),
            k: flavor_dim(c.flavor, c.hom.degree) as i64,
            p: c.prime,
            deg_d0: c.deg_d0,
            deg_d1: c.deg_d1,
            deg_d2: c.deg_d2,
            delta1_zero: c.delta1_zero,
            twisted_side: c.twisted_side.map(|s| s.to_string()),
            untwisted_side: c.untwisted_side.to_string(),
        });
    }
}

fn neuwirth_block(n: &NeuwirthCheck) -> NeuwirthBlock {
    NeuwirthBlock {
        monic: n.monic,
        degree: n.degree,
        expected_degree: n.expected_degree,
        passes: n.passes,
    }
}

pub fn emit_report(doc: &ReportDocument, format: ReportFormat) -> Result<Vec<u8>> {
    match format {
        ReportFormat::Structured => {
            let mut bytes = serde_json::to_vec_pretty(doc)
                .map_err(|e| Error::Internal(format!("serialization failed: {e}")))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Human => Ok(render_human(doc).into_bytes()),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<ReportDocument> {
    serde_json::from_slice(bytes).map_err(|e| Error::Input(format!("bad report document: {e}")))
}

fn render_human(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", doc.version);
    let _ = writeln!(out, "input: {} ({}) sha256 {}", doc.input.label, doc.input.kind, doc.input.sha256);
    let _ = writeln!(
        out,
        "phi: [{}]",
        doc.phi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
    );
    if !doc.options.is_empty() {
        let _ = writeln!(out, "options: {}", doc.options.join(" "));
    }
    if let Some(hom) = &doc.hom {
        let _ = writeln!(out, "hom: {}", hom.join(" "));
    }
    if let (Some(flavor), Some(field)) = (&doc.flavor, &doc.field) {
        let _ = writeln!(out, "representation: {flavor} over {field}");
    }
    if let Some(d) = &doc.degrees {
        let fmt = |x: Option<i64>| x.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(
            out,
            "degrees: d0 {}  d1 {}  d2 {}  d1torsion {}",
            fmt(d.d0),
            fmt(d.d1),
            fmt(d.d2),
            fmt(d.d1torsion)
        );
    }
    if let Some(p) = &doc.delta1 {
        let _ = writeln!(out, "delta1: {p}");
    }
    if let Some(td) = doc.torsion_degree {
        let _ = writeln!(out, "torsion degree: {td}");
    }
    if let Some(nb) = &doc.norm_bound {
        let _ = writeln!(out, "norm bound: {nb}");
    }
    if let Some(gb) = &doc.genus_bound {
        let _ = writeln!(out, "genus bound: {} (rounded up: {})", gb.rational, gb.rounded);
    }
    if let Some(v) = &doc.verdict {
        let _ = writeln!(
            out,
            "fibering: {} after {} checks{}",
            v.status,
            v.checked,
            if v.incomplete { " (search incomplete)" } else { "" }
        );
        if let Some(n) = &v.neuwirth {
            let _ = writeln!(
                out,
                "  abelian precheck: monic {}, degree {}{}",
                n.monic,
                n.degree,
                match n.expected_degree {
                    Some(e) => format!(", expected {e}"),
                    None => String::new(),
                }
            );
        }
    }
    if let Some(c) = &doc.certificate {
        let _ = writeln!(
            out,
            "certificate: k {} p {} flavor {} degD1 {} degD0 {}",
            c.k,
            c.p,
            c.flavor,
            c.deg_d1.map_or("-".to_string(), |v| v.to_string()),
            c.deg_d0.map_or("-".to_string(), |v| v.to_string())
        );
        let _ = writeln!(
            out,
            "  sides: twisted {} vs classical {}",
            c.twisted_side.as_deref().unwrap_or("-"),
            c.untwisted_side
        );
        let _ = writeln!(out, "  hom: {}", c.hom.join(" "));
    }
    for a in &doc.assumptions {
        let _ = writeln!(out, "assumption: {a}");
    }
    let _ = writeln!(out, "smith ops: {}", doc.timings.snf_ops);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_to_presentation, BraidWord};
    use crate::field::Field;
    use crate::invariants::compute_invariants;
    use crate::rep::{build_representation, RepFlavor};

    fn trefoil_doc() -> ReportDocument {
        let text = "braid 2: 1 1 1";
        let p = braid_to_presentation(&BraidWord::parse(text).unwrap()).unwrap();
        let triv = crate::homsearch::PermHom::new(
            1,
            vec![crate::perm::Perm::identity(1); p.n_gens()],
        )
        .unwrap();
        let rep = build_representation(&triv, RepFlavor::Trivial, Field::Q);
        let inv = compute_invariants(&p, &rep).unwrap();
        let mut doc = ReportDocument::new(&p, text);
        doc.attach_invariants(Some(&triv), &inv);
        doc
    }

    #[test]
    fn structured_reports_are_byte_stable() {
        let a = emit_report(&trefoil_doc(), ReportFormat::Structured).unwrap();
        let b = emit_report(&trefoil_doc(), ReportFormat::Structured).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn structured_round_trip_is_lossless() {
        let doc = trefoil_doc();
        let bytes = emit_report(&doc, ReportFormat::Structured).unwrap();
        let back = parse_report(&bytes).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn schema_keys_present() {
        let bytes = emit_report(&trefoil_doc(), ReportFormat::Structured).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        for key in [
            "\"input\"",
            "\"phi\"",
            "\"degrees\"",
            "\"d1torsion\"",
            "\"torsionDegree\"",
            "\"normBound\"",
            "\"genusBound\"",
            "\"rational\"",
            "\"rounded\"",
            "\"timings\"",
            "\"snfOps\"",
        ] {
            assert!(text.contains(key), "missing {key} in {text}");
        }
        // trefoil over Q: torsion degree 1, genus bound 1/1 -> printed "1"
        assert!(text.contains("\"torsionDegree\": 1"));
    }

    #[test]
    fn human_format_mentions_the_bound() {
        let bytes = emit_report(&trefoil_doc(), ReportFormat::Human).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        assert!(text.contains("genus bound: 1"));
        assert!(text.contains("delta1: 1 - t + t^2"));
    }

    #[test]
    fn no_obstruction_status_serializes() {
        let text = "braid 2: 1 1 1";
        let p = braid_to_presentation(&BraidWord::parse(text).unwrap()).unwrap();
        let verdict = crate::fibering::fibering_check(
            &p,
            &crate::fibering::HomSource::Explicit(vec![]),
            &[RepFlavor::Permutation],
            &[3],
            None,
        )
        .unwrap();
        let mut doc = ReportDocument::new(&p, text);
        doc.attach_verdict(&verdict);
        let bytes = emit_report(&doc, ReportFormat::Structured).unwrap();
        let rendered = String::from_utf8(bytes).unwrap();
        assert!(rendered.contains("\"status\": \"no-obstruction-found\""));
    }
}
