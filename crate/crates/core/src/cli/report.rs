//! Reports emitted by the CLI, as JSON (schema-stable) or text.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::classify::{projective_closure, GeometryKind};
use crate::geometry::SymplecticPoint;
use crate::magic::{
    complement_config, intersection_lines, parity_witness, shared_point, Context,
    ContradictionCertificate, MagicConfiguration,
};
use crate::pauli::{PauliObservable, Sign};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every point in an even number of contexts and the signs multiply to -1.
    ContradictionCertified,
    /// No valuation exists, but the parity argument alone does not show it.
    NoAssignment,
    Consistent,
}

impl Verdict {
    pub fn from_certificate(cert: &ContradictionCertificate) -> Self {
        if cert.certified() {
            Verdict::ContradictionCertified
        } else if !cert.nchv_assignment_exists {
            Verdict::NoAssignment
        } else {
            Verdict::Consistent
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::ContradictionCertified | Verdict::NoAssignment => 0,
            Verdict::Consistent => 1,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ContradictionCertified => "BKS contradiction certified",
            Verdict::NoAssignment => "BKS contradiction (no assignment exists; parity argument does not apply)",
            Verdict::Consistent => "consistent: a non-contextual assignment exists",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureReport {
    /// Every point of the span, canonical order.
    pub points: Vec<SymplecticPoint>,
    /// Span points not in the context.
    pub complement: Vec<SymplecticPoint>,
    pub complement_kind: Option<GeometryKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContextReport {
    pub name: Option<String>,
    pub observables: Vec<PauliObservable>,
    pub sign: Sign,
    pub span_rank: usize,
    pub totally_isotropic: bool,
    pub classification: GeometryKind,
    pub classification_detail: String,
    pub closure: ClosureReport,
}

impl ContextReport {
    pub fn new(c: &Context) -> Result<Self> {
        let points = c.points();
        let span = c.span();
        let (classification, detail, closure) = if points.is_empty() {
            (
                GeometryKind::Generic,
                "identity only".to_string(),
                ClosureReport {
                    points: vec![],
                    complement: vec![],
                    complement_kind: None,
                },
            )
        } else {
            let closure = projective_closure(&points)?;
            (
                closure.label.kind,
                closure.label.detail.clone(),
                ClosureReport {
                    points: closure.span.points(),
                    complement: closure.complement.clone(),
                    complement_kind: closure.complement_label.map(|l| l.kind),
                },
            )
        };
        Ok(Self {
            name: c.name().map(str::to_string),
            observables: c.canonical_observables(),
            sign: c.sign(),
            span_rank: span.rank(),
            totally_isotropic: span.is_totally_isotropic(),
            classification,
            classification_detail: detail,
            closure,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityEntry {
    pub point: SymplecticPoint,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub point: SymplecticPoint,
    pub value: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineReport {
    /// 0-based context indices.
    pub contexts: [usize; 2],
    pub names: [Option<String>; 2],
    pub rank: usize,
    pub points: Vec<SymplecticPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceCheck {
    pub item: String,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub contexts: Vec<ContextReport>,
    pub multiplicity: Vec<MultiplicityEntry>,
    pub sign_product: Sign,
    pub all_multiplicities_even: bool,
    pub verdict: Verdict,
    pub exhaustive: bool,
    pub witness: Option<Vec<WitnessEntry>>,
    pub lines: Vec<LineReport>,
    pub shared_point: Option<SymplecticPoint>,
    pub twin: Option<Vec<ContextReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<ReferenceCheck>>,
}

impl Report {
    pub fn build(m: &MagicConfiguration) -> Result<Self> {
        let contexts = m
            .contexts()
            .iter()
            .map(ContextReport::new)
            .collect::<Result<Vec<_>>>()?;
        let cert = parity_witness(m)?;
        let multiplicity = m
            .multiplicity()
            .into_iter()
            .map(|(point, count)| MultiplicityEntry { point, count })
            .collect();
        let name = |i: usize| m.contexts()[i].name().map(str::to_string);
        let lines = intersection_lines(m)
            .into_iter()
            .map(|((i, j), s)| LineReport {
                contexts: [i, j],
                names: [name(i), name(j)],
                rank: s.rank(),
                points: s.points(),
            })
            .collect();
        let shared = shared_point(m).ok();
        let twin = match shared {
            Some(p) => match complement_config(m, p) {
                Ok(t) => Some(
                    t.contexts()
                        .iter()
                        .map(ContextReport::new)
                        .collect::<Result<Vec<_>>>()?,
                ),
                Err(_) => None,
            },
            None => None,
        };
        Ok(Self {
            contexts,
            multiplicity,
            sign_product: cert.sign_product,
            all_multiplicities_even: cert.all_multiplicities_even,
            verdict: Verdict::from_certificate(&cert),
            exhaustive: cert.exhaustive,
            witness: cert.witness.map(|v| {
                v.0.into_iter()
                    .map(|(point, value)| WitnessEntry { point, value })
                    .collect()
            }),
            lines,
            shared_point: shared,
            twin,
            reference: None,
        })
    }

    /// Counts of each classification, in order of first appearance.
    pub fn classification_summary(&self) -> String {
        let mut counts: Vec<(GeometryKind, usize)> = Vec::new();
        for c in &self.contexts {
            match counts.iter_mut().find(|(k, _)| *k == c.classification) {
                Some((_, n)) => *n += 1,
                None => counts.push((c.classification, 1)),
            }
        }
        counts
            .iter()
            .map(|(k, n)| format!("{k} ×{n}"))
            .collect::<Vec<_>>()
            .join(", ")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let label = |i: usize, c: &ContextReport| c.name.clone().unwrap_or(format!("#{}", i + 1));
        let words = |pts: &[SymplecticPoint]| {
            pts.iter().map(|p| p.word()).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "contexts:");
        for (i, c) in self.contexts.iter().enumerate() {
            render_context(&mut out, &label(i, c), c);
        }
        let _ = writeln!(out, "multiplicities:");
        for e in &self.multiplicity {
            let _ = writeln!(out, "  {} {}", e.point, e.count);
        }
        let _ = writeln!(out, "intersections:");
        for l in &self.lines {
            let kind = if l.rank == 1 { "point" } else if l.rank == 2 { "line" } else { "subspace" };
            let a = self.contexts[l.contexts[0]].name.clone().unwrap_or(format!("#{}", l.contexts[0] + 1));
            let b = self.contexts[l.contexts[1]].name.clone().unwrap_or(format!("#{}", l.contexts[1] + 1));
            let _ = writeln!(out, "  {a} ∩ {b}: {kind} {{{}}}", words(&l.points));
        }
        match self.shared_point {
            Some(p) => {
                let _ = writeln!(out, "shared point: {p}");
            }
            None => {
                let _ = writeln!(out, "shared point: none");
            }
        }
        if let Some(twin) = &self.twin {
            let _ = writeln!(out, "twin (projected from the shared point):");
            for (i, c) in twin.iter().enumerate() {
                render_context(&mut out, &label(i, c), c);
            }
        }
        let _ = writeln!(
            out,
            "sign product: {}, all multiplicities even: {}",
            self.sign_product, self.all_multiplicities_even
        );
        if let Some(w) = &self.witness {
            let values: Vec<String> = w.iter().map(|e| format!("{}={}", e.point, e.value)).collect();
            let _ = writeln!(out, "witness: {}", values.join(" "));
        }
        if let Some(reference) = &self.reference {
            let _ = writeln!(out, "reference checks:");
            for r in reference {
                let _ = writeln!(out, "  [{}] {}", if r.matches { "ok" } else { "MISMATCH" }, r.item);
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}

fn render_context(out: &mut String, name: &str, c: &ContextReport) {
    let obs: Vec<String> = c.observables.iter().map(|o| o.to_string()).collect();
    let _ = writeln!(
        out,
        "  {name} = {{{}}} sign {} rank {} isotropic {} : {}",
        obs.join(", "),
        c.sign,
        c.span_rank,
        c.totally_isotropic,
        c.classification
    );
    let pts: Vec<String> = c.closure.points.iter().map(|p| p.word()).collect();
    let _ = writeln!(out, "    closure ({}): {}", pts.len(), pts.join(" "));
    if let Some(kind) = c.closure.complement_kind {
        let rest: Vec<String> = c.closure.complement.iter().map(|p| p.word()).collect();
        let _ = writeln!(out, "    off-set points ({kind}): {}", rest.join(" "));
    }
}
