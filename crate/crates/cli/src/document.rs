use std::collections::BTreeMap;

use hdvf_core::persistence::PersistenceDiagram;
use hdvf_core::{Chain, ChainComplex, Hdvf};
use serde::Serialize;
use serde_json::Value;

/// JSON output shared by every command. All keys are always present; a
/// `null` death means the class never dies.
#[derive(Debug, Default, Clone, PartialEq, Serialize)]
pub struct ResultDocument {
    pub betti: BTreeMap<usize, usize>,
    pub generators: BTreeMap<usize, Vec<Vec<String>>>,
    pub diagram: Vec<(usize, usize, Option<usize>)>,
    pub hdvf: BTreeMap<String, String>,
    pub report: String,
    /// Command-specific fields.
    pub extra: BTreeMap<String, Value>,
}

impl ResultDocument {
    pub fn error(message: String) -> Self {
        ResultDocument {
            report: message,
            ..Default::default()
        }
    }

    pub fn set_hdvf(&mut self, x: &Hdvf<'_>) {
        let k = x.complex();
        self.hdvf = k
            .ids()
            .map(|c| (k.name(c).to_string(), x.label(c).as_str().to_string()))
            .collect();
    }

    pub fn set_diagram(&mut self, diagram: &PersistenceDiagram) {
        self.diagram = diagram
            .points()
            .iter()
            .map(|p| (p.dim, p.birth, p.death))
            .collect();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

pub fn chain_names(k: &ChainComplex, chain: &Chain) -> Vec<String> {
    k.names(chain).into_iter().map(String::from).collect()
}

pub fn cell_names(k: &ChainComplex, cells: &[hdvf_core::CellId]) -> Vec<String> {
    cells.iter().map(|&c| k.name(c).to_string()).collect()
}
