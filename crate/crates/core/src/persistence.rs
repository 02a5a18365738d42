//! Persistent homology by completion in filtration order.
//!
//! Cells are inserted one per step (step `i` inserts the cell of index
//! `i - 1`). On insertion of `τ`, if its reduced boundary `d(τ)` is
//! nonzero, `τ` is paired as secondary with the youngest critical cell of
//! `d(τ)`, which dies; otherwise `τ` stays critical and a class is born.
//! The field after step `i` is a perfect field of the prefix `K^i`, and the
//! generator `g^i(γ)` of every living class never changes, so it equals
//! the canonical cycle of `γ` in the final field.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{CellId, Chain, ChainComplex, ComplexError};
use crate::field_linalg::Gf2Vector;
use crate::hdvf::{Hdvf, HdvfError, Label, PairingState};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PersistenceError {
    #[error("cell {cell} is inserted before its face {face}")]
    FaceOrder { cell: String, face: String },
    #[error("filtration value of {cell} decreases ({value} after {previous})")]
    NotMonotone { cell: String, value: f64, previous: f64 },
    #[error("filtration value of {cell} is not a number")]
    NotANumber { cell: String },
    #[error("{found} filtration values for {expected} cells")]
    ValueCount { expected: usize, found: usize },
    #[error("order lists {found} cells, the complex has {expected}")]
    OrderLength { expected: usize, found: usize },
    #[error("cell {0} is listed twice in the order")]
    RepeatedCell(String),
    #[error("step {step} is out of range 0..={last}")]
    StepOutOfRange { step: usize, last: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Hdvf(#[from] HdvfError),
}

/// A complex whose cell order is the insertion order, with optional real
/// values carried along for output.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    complex: ChainComplex,
    values: Option<Vec<f64>>,
}

impl Filtration {
    /// Checks that every face precedes its cofaces and that values, when
    /// given, are monotone.
    pub fn new(complex: ChainComplex, values: Option<Vec<f64>>) -> Result<Self, PersistenceError> {
        for c in complex.ids() {
            if let Some(&face) = complex.faces(c).iter().find(|f| f.0 > c.0) {
                return Err(PersistenceError::FaceOrder {
                    cell: complex.name(c).into(),
                    face: complex.name(face).into(),
                });
            }
        }
        if let Some(values) = &values {
            if values.len() != complex.len() {
                return Err(PersistenceError::ValueCount {
                    expected: complex.len(),
                    found: values.len(),
                });
            }
            for (i, &v) in values.iter().enumerate() {
                let cell = || String::from(complex.name(CellId(i)));
                if v.is_nan() {
                    return Err(PersistenceError::NotANumber { cell: cell() });
                }
                if i > 0 && v < values[i - 1] {
                    return Err(PersistenceError::NotMonotone {
                        cell: cell(),
                        value: v,
                        previous: values[i - 1],
                    });
                }
            }
        }
        Ok(Filtration { complex, values })
    }

    /// Reorders `complex` so that `order[i]` is inserted at step `i + 1`.
    pub fn from_order(complex: &ChainComplex, order: &[CellId]) -> Result<Self, PersistenceError> {
        if order.len() != complex.len() {
            return Err(PersistenceError::OrderLength {
                expected: complex.len(),
                found: order.len(),
            });
        }
        let mut seen = vec![false; complex.len()];
        for &c in order {
            if seen[c.0] {
                return Err(PersistenceError::RepeatedCell(complex.name(c).into()));
            }
            seen[c.0] = true;
        }
        let specs = complex.to_specs();
        let reordered: Vec<_> = order.iter().map(|c| specs[c.0].clone()).collect();
        Self::new(ChainComplex::from_boundary_lists(reordered)?, None)
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// Cell inserted at `step` (1-based).
    pub fn cell_at(&self, step: usize) -> CellId {
        CellId(step - 1)
    }

    pub fn step_of(&self, cell: CellId) -> usize {
        cell.0 + 1
    }

    /// Filtration value of the cell inserted at `step`, if values were given.
    pub fn value(&self, step: usize) -> Option<f64> {
        self.values.as_ref().map(|v| v[step - 1])
    }
}

/// A point `(q, birth, death)`; `death == None` stands for infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
}

/// Multiset of diagram points, kept sorted so equality is multiset equality.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    pub fn new(mut points: Vec<DiagramPoint>) -> Self {
        points.sort_unstable();
        PersistenceDiagram { points }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of infinite points in dimension q.
    pub fn essential_count(&self, q: usize) -> usize {
        self.points
            .iter()
            .filter(|p| p.dim == q && p.death.is_none())
            .count()
    }
}

/// What happened when a cell was inserted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepEvent {
    /// The cell became critical: a class is born.
    Birth,
    /// The cell was paired with `partner`, killing the class born with it.
    Death { partner: CellId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepSummary {
    pub step: usize,
    pub cell: CellId,
    pub event: StepEvent,
}

/// A class with its lifetime and representative cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistentGenerator {
    pub cell: CellId,
    pub dim: usize,
    pub birth: usize,
    pub death: Option<usize>,
    pub chain: Chain,
}

/// The field of the prefix complex `K^i` after step `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepField {
    pub step: usize,
    pub complex: ChainComplex,
    pub labels: Vec<Label>,
}

impl StepField {
    pub fn hdvf(&self) -> Hdvf<'_> {
        Hdvf::new_unchecked(&self.complex, self.labels.clone())
    }
}

/// Result of [`compute_persistence`].
#[derive(Debug, Clone)]
pub struct PersistenceRun<'f> {
    filtration: &'f Filtration,
    labels: Vec<Label>,
    paired_at: Vec<Option<usize>>,
    steps: Vec<StepSummary>,
    diagram: PersistenceDiagram,
    generators: Vec<PersistentGenerator>,
}

pub fn compute_persistence(filtration: &Filtration) -> PersistenceRun<'_> {
    let k = &filtration.complex;
    let mut state = PairingState::all_critical(k);
    let mut paired_at = vec![None; k.len()];
    let mut steps = Vec::with_capacity(k.len());
    for cell in k.ids() {
        let step = filtration.step_of(cell);
        let d = state.reduced_boundary(cell);
        // local indices follow insertion order, so the youngest cell is the last one
        let event = match d.last_one() {
            Some(local) => {
                let partner = k.cells_of_dim(k.cell_dim(cell) - 1)[local];
                state.pair(cell, partner, &d);
                paired_at[cell.0] = Some(step);
                paired_at[partner.0] = Some(step);
                StepEvent::Death { partner }
            }
            None => StepEvent::Birth,
        };
        steps.push(StepSummary { step, cell, event });
    }

    let labels = state.labels;
    let final_field = Hdvf::new_unchecked(k, labels.clone());
    debug_assert!(final_field.is_perfect());
    let mut points = Vec::new();
    let mut generators = Vec::new();
    for s in &steps {
        if s.event != StepEvent::Birth {
            continue;
        }
        let death = match labels[s.cell.0] {
            Label::Critical => None,
            _ => paired_at[s.cell.0],
        };
        let dim = k.cell_dim(s.cell);
        points.push(DiagramPoint {
            dim,
            birth: s.step,
            death,
        });
        let chain = final_field
            .canonical_cycle(&Chain::from_cells(dim, [s.cell]))
            .expect("final field is perfect");
        generators.push(PersistentGenerator {
            cell: s.cell,
            dim,
            birth: s.step,
            death,
            chain,
        });
    }
    PersistenceRun {
        filtration,
        labels,
        paired_at,
        steps,
        diagram: PersistenceDiagram::new(points),
        generators,
    }
}

impl<'f> PersistenceRun<'f> {
    pub fn filtration(&self) -> &'f Filtration {
        self.filtration
    }

    pub fn diagram(&self) -> &PersistenceDiagram {
        &self.diagram
    }

    pub fn steps(&self) -> &[StepSummary] {
        &self.steps
    }

    /// One generator per birth, in birth order.
    pub fn generators(&self) -> &[PersistentGenerator] {
        &self.generators
    }

    /// The perfect field on the whole complex.
    pub fn final_hdvf(&self) -> Hdvf<'f> {
        Hdvf::new_unchecked(&self.filtration.complex, self.labels.clone())
    }

    /// Labels of the cells of `K^step` after that step, rebuilt from the
    /// pairing steps.
    pub fn labels_at(&self, step: usize) -> Result<Vec<Label>, PersistenceError> {
        self.check_step(step)?;
        Ok((0..step)
            .map(|i| match self.paired_at[i] {
                Some(s) if s <= step => self.labels[i],
                _ => Label::Critical,
            })
            .collect())
    }

    pub fn field_at(&self, step: usize) -> Result<StepField, PersistenceError> {
        Ok(StepField {
            step,
            labels: self.labels_at(step)?,
            complex: self.filtration.complex.prefix(step),
        })
    }

    /// `(g^i(γ))_{γ ∈ C^i_q}`, as chains of the whole complex.
    pub fn persistent_basis(&self, step: usize, q: usize) -> Result<Vec<Chain>, PersistenceError> {
        let field = self.field_at(step)?;
        if field.complex.is_empty() || q > field.complex.dim() {
            return Ok(Vec::new());
        }
        // prefix complexes keep cell ids, so chains carry over unchanged
        Ok(field.hdvf().homology_basis(q)?)
    }

    fn check_step(&self, step: usize) -> Result<(), PersistenceError> {
        let last = self.filtration.len();
        if step > last {
            return Err(PersistenceError::StepOutOfRange { step, last });
        }
        Ok(())
    }
}

/// Rebuilds every step field and checks that `g^i(γ)` equals the recorded
/// generator of `γ` at every step of its lifetime.
pub fn check_generator_preservation(run: &PersistenceRun<'_>) -> bool {
    let n = run.filtration.len();
    let mut by_cell: Vec<Option<&PersistentGenerator>> = vec![None; n];
    for g in &run.generators {
        by_cell[g.cell.0] = Some(g);
    }
    for step in 1..=n {
        let Ok(field) = run.field_at(step) else {
            return false;
        };
        let x = field.hdvf();
        if !x.is_perfect() {
            return false;
        }
        let k = &field.complex;
        for q in 0..=k.dim() {
            let Ok(basis) = x.homology_basis(q) else {
                return false;
            };
            for (cell, chain) in x.critical(q).into_iter().zip(basis) {
                match by_cell[cell.0] {
                    Some(g) if g.birth <= step && g.death.is_none_or(|d| step < d) => {
                        if g.chain != chain {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Textbook boundary-matrix column reduction, used as an independent check.
pub fn persistence_oracle(filtration: &Filtration) -> PersistenceDiagram {
    let k = &filtration.complex;
    let n = k.len();
    let mut columns: Vec<Gf2Vector> = k
        .ids()
        .map(|c| Gf2Vector::from_support(n, k.faces(c).iter().map(|f| f.0)))
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut killed = vec![false; n];
    let mut points = Vec::new();
    for j in 0..n {
        while let Some(low) = columns[j].last_one() {
            match owner[low] {
                Some(other) => {
                    let pivot = columns[other].clone();
                    columns[j] += &pivot;
                }
                None => break,
            }
        }
        if let Some(low) = columns[j].last_one() {
            owner[low] = Some(j);
            killed[low] = true;
            points.push(DiagramPoint {
                dim: k.cell_dim(CellId(low)),
                birth: low + 1,
                death: Some(j + 1),
            });
        }
    }
    for j in 0..n {
        if columns[j].is_zero() && !killed[j] {
            points.push(DiagramPoint {
                dim: k.cell_dim(CellId(j)),
                birth: j + 1,
                death: None,
            });
        }
    }
    PersistenceDiagram::new(points)
}

/// Human-readable form of a point, `(q, birth, death)` with `inf`.
pub fn format_point(p: &DiagramPoint) -> String {
    match p.death {
        Some(d) => format!("({}, {}, {})", p.dim, p.birth, d),
        None => format!("({}, {}, inf)", p.dim, p.birth),
    }
}
