use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use hdvf_core::explicit_basis::{check_characterizations, hdvf_from_explicit_basis, is_explicit, HomologyBasis};
use hdvf_core::persistence::{
    compute_persistence, format_point, persistence_oracle, Filtration, PersistenceDiagram,
};
use hdvf_core::tripartition::{canonical_cycle_tp, hdvf_to_tripartitions, validate_tripartition};
use hdvf_core::{Chain, ChainComplex, Hdvf};
use serde_json::{json, Value};

use crate::document::{cell_names, chain_names, ResultDocument};

fn betti_map(k: &ChainComplex) -> BTreeMap<usize, usize> {
    if k.is_empty() {
        return BTreeMap::new();
    }
    k.betti_numbers().into_iter().enumerate().collect()
}

/// Betti numbers, a homology basis per dimension and the labels of a
/// perfect field obtained by completion.
pub fn homology(k: &ChainComplex) -> Result<ResultDocument> {
    let x = Hdvf::all_critical(k).complete();
    let mut doc = ResultDocument::default();
    if !k.is_empty() {
        for q in 0..=k.dim() {
            let basis = x.homology_basis(q)?;
            doc.betti.insert(q, basis.len());
            doc.generators
                .insert(q, basis.iter().map(|c| chain_names(k, c)).collect());
        }
    }
    doc.set_hdvf(&x);
    let betti: Vec<String> = doc.betti.values().map(|b| b.to_string()).collect();
    doc.report = format!("{} cells, Betti numbers ({})", k.len(), betti.join(", "));
    Ok(doc)
}

/// Groups basis lines by dimension. An empty file gives one empty basis in
/// dimension `dim`, or 1 when no dimension is given.
fn group_basis(basis: Vec<(usize, Chain)>, dim: Option<usize>) -> Result<BTreeMap<usize, Vec<Chain>>> {
    let mut by_dim: BTreeMap<usize, Vec<Chain>> = BTreeMap::new();
    for (q, chain) in basis {
        if dim.is_some_and(|d| d != q) {
            bail!("basis line in dimension {q} while --dim is {}", dim.unwrap());
        }
        by_dim.entry(q).or_default().push(chain);
    }
    if by_dim.is_empty() {
        by_dim.insert(dim.unwrap_or(1), Vec::new());
    }
    Ok(by_dim)
}

pub fn check_explicit(
    k: &ChainComplex,
    basis: Vec<(usize, Chain)>,
    dim: Option<usize>,
    all_characterizations: bool,
    limit: usize,
) -> Result<ResultDocument> {
    let mut doc = ResultDocument {
        betti: betti_map(k),
        ..Default::default()
    };
    let mut verdicts = serde_json::Map::new();
    let mut private = serde_json::Map::new();
    let mut induced = serde_json::Map::new();
    let mut characterizations = serde_json::Map::new();
    let mut lines = Vec::new();
    for (q, chains) in group_basis(basis, dim)? {
        doc.generators
            .insert(q, chains.iter().map(|c| chain_names(k, c)).collect());
        let b = HomologyBasis::new(k, q, chains).map_err(|e| anyhow!("dimension {q}: {e}"))?;
        let report = is_explicit(&b);
        verdicts.insert(q.to_string(), Value::Bool(report.is_explicit()));
        private.insert(
            q.to_string(),
            json!(report
                .private_cells
                .iter()
                .map(|cells| cell_names(k, cells))
                .collect::<Vec<_>>()),
        );
        induced.insert(q.to_string(), json!(report.induced_betti));
        lines.push(format!("dimension {q}: {report}"));
        if all_characterizations {
            let c = check_characterizations(&b, limit)?;
            characterizations.insert(
                q.to_string(),
                json!({
                    "private_cells_and_injective": c.first,
                    "kernel_in_span": c.second,
                    "private_cells_and_dimension": c.third,
                    "agree": c.agree(),
                }),
            );
            if !c.agree() {
                lines.push(format!("dimension {q}: characterizations disagree"));
            }
        }
    }
    doc.extra.insert("explicit".into(), Value::Object(verdicts));
    doc.extra.insert("private_cells".into(), Value::Object(private));
    doc.extra.insert("induced_betti".into(), Value::Object(induced));
    if all_characterizations {
        doc.extra
            .insert("characterizations".into(), Value::Object(characterizations));
    }
    doc.report = lines.join("\n");
    Ok(doc)
}

pub fn basis_to_hdvf(k: &ChainComplex, basis: Vec<(usize, Chain)>, dim: Option<usize>) -> Result<ResultDocument> {
    let by_dim = group_basis(basis, dim)?;
    if by_dim.len() > 1 {
        bail!(
            "basis mixes dimensions {:?}; give one dimension at a time",
            by_dim.keys().collect::<Vec<_>>()
        );
    }
    let (q, chains) = by_dim.into_iter().next().expect("one dimension");
    let b = HomologyBasis::new(k, q, chains)?;
    let x = hdvf_from_explicit_basis(&b)?;
    let mut back = x.homology_basis(q)?;
    let mut input = b.generators().to_vec();
    back.sort();
    input.sort();
    let round_trip = back == input;
    if !round_trip {
        bail!("constructed field does not reproduce the basis");
    }

    let mut doc = ResultDocument {
        betti: betti_map(k),
        ..Default::default()
    };
    doc.generators.insert(
        q,
        x.homology_basis(q)?.iter().map(|c| chain_names(k, c)).collect(),
    );
    doc.set_hdvf(&x);
    doc.extra.insert("round_trip".into(), Value::Bool(round_trip));
    doc.extra
        .insert("critical".into(), json!(cell_names(k, &x.critical(q))));
    doc.report = format!(
        "perfect field realizing the {q}-basis of {} generators",
        b.len()
    );
    Ok(doc)
}

pub struct PersistenceOutput {
    pub document: ResultDocument,
    pub diagram: PersistenceDiagram,
}

pub fn persistence(f: &Filtration, oracle: bool) -> Result<PersistenceOutput> {
    let run = compute_persistence(f);
    let k = f.complex();
    let diagram = run.diagram().clone();
    if oracle {
        let expected = persistence_oracle(f);
        if expected != diagram {
            let show = |d: &PersistenceDiagram| d.points().iter().map(format_point).collect::<Vec<_>>().join(" ");
            bail!(
                "diagram differs from column reduction\n  field:  {}\n  oracle: {}",
                show(&diagram),
                show(&expected)
            );
        }
    }
    let mut doc = ResultDocument {
        betti: betti_map(k),
        ..Default::default()
    };
    doc.set_diagram(&diagram);
    let mut lifetimes = Vec::new();
    for g in run.generators() {
        doc.generators
            .entry(g.dim)
            .or_default()
            .push(chain_names(k, &g.chain));
        lifetimes.push(json!({
            "cell": k.name(g.cell),
            "dim": g.dim,
            "birth": g.birth,
            "death": g.death,
            "birth_value": f.values().map(|_| f.value(g.birth)),
            "death_value": g.death.and_then(|d| f.value(d)),
        }));
    }
    doc.set_hdvf(&run.final_hdvf());
    doc.extra.insert("lifetimes".into(), Value::Array(lifetimes));
    doc.report = format!("{} cells, {} diagram points", f.len(), diagram.len());
    if oracle {
        doc.extra.insert("oracle".into(), Value::Bool(true));
        doc.report.push_str("; column reduction agrees");
    }
    Ok(PersistenceOutput { document: doc, diagram })
}

/// Layers of a perfect field obtained by completion, for one dimension or all.
pub fn tripartition(k: &ChainComplex, dim: Option<usize>) -> Result<ResultDocument> {
    let x = Hdvf::all_critical(k).complete();
    let stack = hdvf_to_tripartitions(&x)?;
    let mut doc = ResultDocument {
        betti: betti_map(k),
        ..Default::default()
    };
    doc.set_hdvf(&x);
    let mut layers = Vec::new();
    let wanted: Vec<usize> = match dim {
        Some(q) => vec![q],
        None => (0..stack.len()).collect(),
    };
    for q in wanted {
        let Some(t) = stack.get(q) else {
            layers.push(json!({
                "q": q,
                "cotree": [],
                "tree": [],
                "essential": [],
                "valid": true,
            }));
            continue;
        };
        let report = validate_tripartition(k, t)?;
        let cycles = t
            .essential
            .iter()
            .map(|&e| canonical_cycle_tp(k, t, e).map(|c| chain_names(k, &c)))
            .collect::<Result<Vec<_>, _>>()?;
        doc.generators.insert(q, cycles);
        layers.push(json!({
            "q": q,
            "cotree": cell_names(k, &t.cotree),
            "tree": cell_names(k, &t.tree),
            "essential": cell_names(k, &t.essential),
            "valid": report.is_valid(),
        }));
    }
    doc.report = format!("{} tri-partition layer(s)", layers.len());
    doc.extra.insert("layers".into(), Value::Array(layers));
    Ok(doc)
}

pub fn diagram_csv(diagram: &PersistenceDiagram) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["q", "birth", "death"])?;
    for p in diagram.points() {
        let death = p.death.map_or_else(|| "inf".to_string(), |d| d.to_string());
        w.write_record([p.dim.to_string(), p.birth.to_string(), death])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Scatter plot of the diagram: birth step on x, death step on y, the
/// diagonal, and never-dying classes on a band above the plot.
pub fn diagram_svg(diagram: &PersistenceDiagram, steps: usize) -> String {
    const SIZE: f64 = 400.0;
    const MARGIN: f64 = 40.0;
    const BAND: f64 = 20.0;
    const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    let top = MARGIN + BAND;
    let span = (SIZE - MARGIN - top).max(1.0);
    let scale = |step: usize| step as f64 / steps.max(1) as f64 * span;
    let x = |step: usize| MARGIN + scale(step);
    let y = |step: usize| SIZE - MARGIN - scale(step);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    );
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        x(0),
        y(0),
        x(steps),
        y(0)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        x(0),
        y(0),
        x(0),
        y(steps)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n",
        x(0),
        y(0),
        x(steps),
        y(steps)
    ));
    svg.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"lightgray\"/>\n",
        x(0),
        MARGIN + BAND / 2.0,
        x(steps),
        MARGIN + BAND / 2.0
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">inf</text>\n",
        MARGIN - 4.0,
        MARGIN + BAND / 2.0 + 4.0
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">birth</text>\n",
        SIZE / 2.0,
        SIZE - 10.0
    ));
    svg.push_str(&format!(
        "<text x=\"12\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 12 {})\">death</text>\n",
        SIZE / 2.0,
        SIZE / 2.0
    ));
    for p in diagram.points() {
        let cy = match p.death {
            Some(d) => y(d),
            None => MARGIN + BAND / 2.0,
        };
        svg.push_str(&format!(
            "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"{}\"><title>H{} ({}, {})</title></circle>\n",
            x(p.birth),
            cy,
            COLORS[p.dim % COLORS.len()],
            p.dim,
            p.birth,
            p.death.map_or_else(|| "inf".to_string(), |d| d.to_string())
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
