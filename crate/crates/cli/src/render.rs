use std::fmt::Write;

use serde::Serialize;

use fibrewise_core::cemodel::total_cohomology;
use fibrewise_core::eulerring::{Certificate, EulerRingReport, Verdict};
use fibrewise_core::gcalg::ElementJson;
use fibrewise_core::spaces::Space;
use fibrewise_core::verify::SuiteReport;
use fibrewise_core::Result;

use crate::Format;

#[derive(Serialize)]
struct GeneratorJson {
    name: String,
    degree: u32,
    role: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    acts_by: Option<String>,
    differential: ElementJson,
    text: String,
}

#[derive(Serialize)]
struct ModelJson {
    space: String,
    fibre_dimension: u32,
    generators: Vec<GeneratorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cohomology: Option<Vec<usize>>,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn model(space: &Space, cohomology_bound: Option<u32>, format: Format) -> Result<String> {
    let um = space.universal_model()?;
    let m = &um.model;
    let total = m.total_algebra();
    let nb = m.n_base();
    let generators: Vec<GeneratorJson> = total
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let d = m.total().image(i);
            GeneratorJson {
                name: g.name.clone(),
                degree: g.degree,
                role: if i < nb { "base" } else { "fibre" },
                acts_by: (i < nb).then(|| um.derivations.lie.names()[um.selected[i]].clone()),
                differential: d.to_json(),
                text: d.to_string(),
            }
        })
        .collect();
    let cohomology = cohomology_bound
        .map(|b| total_cohomology(m, b))
        .transpose()?;
    if format == Format::Json {
        return Ok(to_json(&ModelJson {
            space: space.to_string(),
            fibre_dimension: space.fibre_dimension(),
            generators,
            cohomology,
        }));
    }
    let mut out = String::new();
    writeln!(out, "space: {space}").unwrap();
    writeln!(out, "fibre dimension: {}", space.fibre_dimension()).unwrap();
    let width = generators
        .iter()
        .map(|g| g.name.chars().count())
        .max()
        .unwrap_or(0);
    for (title, role) in [("base", "base"), ("fibre", "fibre")] {
        writeln!(out, "{title} generators:").unwrap();
        for g in generators.iter().filter(|g| g.role == role) {
            let pad = width - g.name.chars().count();
            write!(
                out,
                "  {}{}  degree {:>3}  D({}) = {}",
                g.name,
                " ".repeat(pad),
                g.degree,
                g.name,
                g.text
            )
            .unwrap();
            if let Some(a) = &g.acts_by {
                write!(out, "  [{a}]").unwrap();
            }
            out.push('\n');
        }
    }
    if let Some(h) = cohomology {
        let dims: Vec<String> = h.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "total cohomology dims (degrees 0..={}): {}",
            h.len() - 1,
            dims.join(" ")
        )
        .unwrap();
    }
    Ok(out)
}

fn verdict_text(r: &EulerRingReport) -> Option<String> {
    let c = r.independence.as_ref()?;
    let verdict = match c.verdict {
        Verdict::Independent => "independent",
        Verdict::Dependent => "dependent",
        Verdict::Inconclusive => "inconclusive",
    };
    let detail = match &c.certificate {
        Certificate::Symbolic { determinant } => format!("Jacobian determinant {determinant}"),
        Certificate::Evaluation { seed, point, value } => {
            format!("Jacobian determinant {value} at {point:?} (seed {seed})")
        }
        Certificate::None { seed, attempts } => {
            format!("no certificate found in {attempts} evaluations (seed {seed})")
        }
    };
    Some(format!("{verdict}: {detail}"))
}

pub fn kappa(r: &EulerRingReport, seed: u64, format: Format) -> String {
    if format == Format::Json {
        return to_json(r);
    }
    let mut out = String::new();
    writeln!(out, "space: {}", r.space).unwrap();
    writeln!(out, "d: {}", r.d).unwrap();
    for k in &r.kappas {
        writeln!(out, "κ_{} = {}", k.i, k.text).unwrap();
    }
    if !r.generators.is_empty() {
        writeln!(out, "generators: {}", r.generators.join(", ")).unwrap();
    }
    if !r.relations.is_empty() {
        writeln!(out, "relations:").unwrap();
        for rel in &r.relations {
            writeln!(out, "  {rel}").unwrap();
        }
    }
    writeln!(out, "presentation: {}", r.presentation).unwrap();
    if let Some(v) = verdict_text(r) {
        writeln!(out, "independence: {v}").unwrap();
    }
    for c in &r.leading_terms {
        let mark = if c.passed { "ok" } else { "FAIL" };
        writeln!(
            out,
            "leading term step {} index {}: {} ({mark})",
            c.step, c.index, c.found
        )
        .unwrap();
    }
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    writeln!(out, "seed: {seed}").unwrap();
    out
}

pub fn suite(r: &SuiteReport, format: Format) -> String {
    if format == Format::Json {
        return to_json(r);
    }
    let mut out = String::new();
    for c in &r.checks {
        if c.passed {
            writeln!(out, "ok    {}", c.id).unwrap();
        } else {
            writeln!(out, "FAIL  {}: {}", c.id, c.detail.as_deref().unwrap_or("")).unwrap();
        }
    }
    let (ok, bad) = r.counts();
    writeln!(out, "{ok} passed, {bad} failed (seed {})", r.seed).unwrap();
    out
}
