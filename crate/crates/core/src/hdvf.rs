//! Homological discrete vector fields.
//!
//! An [`Hdvf`] labels every cell of a complex as primary, secondary or
//! critical such that, in each dimension, the block of `∂` from secondary
//! q-cells to primary (q-1)-cells is square and invertible. Such a labelling
//! induces a reduction `(f, g, h)` onto the critical cells with reduced
//! boundary `d`:
//!
//! ```text
//! H = (∂_SP)^-1    F = ∂_SC·H    G = H·∂_CP    D = ∂_CC + ∂_SC·H·∂_CP
//! ```
//!
//! (signs vanish over GF(2)). The field is perfect when `d = 0`; the images
//! `g(γ)` of critical cells are then a homology basis.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::fmt;

use crate::complex::{CellId, Chain, ChainComplex, ComplexError};
use crate::field_linalg::{Gf2Matrix, Gf2Vector, LinalgError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Primary,
    Secondary,
    Critical,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Primary => "primary",
            Label::Secondary => "secondary",
            Label::Critical => "critical",
        }
    }

    /// Primary and secondary trade places on the dual complex.
    pub fn dual(self) -> Label {
        match self {
            Label::Primary => Label::Secondary,
            Label::Secondary => Label::Primary,
            Label::Critical => Label::Critical,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HdvfError {
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("dimension {dim}: {secondary} secondary cells against {primary} primary cells in dimension {dim}-1")]
    NonSquare {
        dim: usize,
        secondary: usize,
        primary: usize,
    },
    #[error("dimension {dim}: boundary from secondary to primary cells is singular; it kills {witness:?}")]
    Singular { dim: usize, witness: Vec<String> },
    #[error("the vector field is not perfect")]
    NotPerfect,
    #[error("cell `{cell}` is {found}, expected {expected}")]
    WrongLabel {
        cell: String,
        expected: Label,
        found: Label,
    },
    #[error("operation needs equally many cells per dimension; dimension {dim} has {left} against {right}")]
    OperationSize {
        dim: usize,
        left: usize,
        right: usize,
    },
    #[error("invalid operation in dimension {dim}: validity matrix is singular; it kills {witness:?}")]
    InvalidOperation { dim: usize, witness: Vec<String> },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// The blocks and assembled matrices of the reduction in one dimension `q`.
///
/// Row and column orders follow complex order inside each label class, and
/// the `primary`/`secondary`/`critical` lists give the local indices (among
/// the q-cells) of each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionLayer {
    pub primary: Vec<usize>,
    pub secondary: Vec<usize>,
    pub critical: Vec<usize>,
    /// `H_q = (∂_{S_{q+1} P_q})^-1`: rows `S_{q+1}`, columns `P_q`.
    pub h_block: Gf2Matrix,
    /// `F_q`: rows `C_q`, columns `P_q`.
    pub f_block: Gf2Matrix,
    /// `G_q`: rows `S_q`, columns `C_q`.
    pub g_block: Gf2Matrix,
    /// `D_q`: rows `C_{q-1}`, columns `C_q`.
    pub d_block: Gf2Matrix,
    /// `f_q : K_q → Span C_q`.
    pub f: Gf2Matrix,
    /// `g_q : Span C_q → K_q`.
    pub g: Gf2Matrix,
    /// `h_q : K_q → K_{q+1}`.
    pub h: Gf2Matrix,
}

/// The reduction `(f, g, h)` with reduced boundary `d`, one layer per dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    layers: Vec<ReductionLayer>,
}

impl Reduction {
    pub fn layers(&self) -> &[ReductionLayer] {
        &self.layers
    }

    pub fn layer(&self, q: usize) -> &ReductionLayer {
        &self.layers[q]
    }

    pub fn f(&self, q: usize) -> &Gf2Matrix {
        &self.layers[q].f
    }

    pub fn g(&self, q: usize) -> &Gf2Matrix {
        &self.layers[q].g
    }

    pub fn h(&self, q: usize) -> &Gf2Matrix {
        &self.layers[q].h
    }

    pub fn d(&self, q: usize) -> &Gf2Matrix {
        &self.layers[q].d_block
    }

    pub fn is_perfect(&self) -> bool {
        self.layers.iter().all(|l| l.d_block.is_zero())
    }
}

/// A homological discrete vector field on a borrowed complex.
#[derive(Clone)]
pub struct Hdvf<'a> {
    complex: &'a ChainComplex,
    labels: Vec<Label>,
    reduction: OnceCell<Reduction>,
}

impl fmt::Debug for Hdvf<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for c in self.complex.ids() {
            m.entry(&self.complex.name(c), &self.labels[c.0]);
        }
        m.finish()
    }
}

impl PartialEq for Hdvf<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.complex, other.complex) && self.labels == other.labels
    }
}

impl Eq for Hdvf<'_> {}

impl<'a> Hdvf<'a> {
    /// Validates `labels` (indexed by [`CellId`]) as a vector field on `complex`.
    pub fn new(complex: &'a ChainComplex, labels: Vec<Label>) -> Result<Self, HdvfError> {
        if labels.len() != complex.len() {
            return Err(HdvfError::LabelCount {
                expected: complex.len(),
                found: labels.len(),
            });
        }
        let x = Self::new_unchecked(complex, labels);
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn new_unchecked(complex: &'a ChainComplex, labels: Vec<Label>) -> Self {
        Hdvf {
            complex,
            labels,
            reduction: OnceCell::new(),
        }
    }

    /// Every cell critical; always valid.
    pub fn all_critical(complex: &'a ChainComplex) -> Self {
        Self::new_unchecked(complex, vec![Label::Critical; complex.len()])
    }

    /// Labels by cell name; unlisted cells are critical.
    pub fn from_names<S: AsRef<str>>(
        complex: &'a ChainComplex,
        primary: &[S],
        secondary: &[S],
    ) -> Result<Self, HdvfError> {
        let mut labels = vec![Label::Critical; complex.len()];
        for n in primary {
            labels[complex.lookup(n.as_ref())?.0] = Label::Primary;
        }
        for n in secondary {
            labels[complex.lookup(n.as_ref())?.0] = Label::Secondary;
        }
        Self::new(complex, labels)
    }

    pub fn complex(&self) -> &'a ChainComplex {
        self.complex
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, cell: CellId) -> Label {
        self.labels[cell.0]
    }

    /// Cells of dimension `q` carrying `label`, in complex order.
    pub fn cells(&self, label: Label, q: usize) -> Vec<CellId> {
        self.complex
            .cells_of_dim(q)
            .iter()
            .copied()
            .filter(|c| self.labels[c.0] == label)
            .collect()
    }

    pub fn critical(&self, q: usize) -> Vec<CellId> {
        self.cells(Label::Critical, q)
    }

    pub fn critical_counts(&self) -> Vec<usize> {
        (0..=self.complex.dim())
            .map(|q| self.critical(q).len())
            .collect()
    }

    fn local_classes(&self, q: usize) -> [Vec<usize>; 3] {
        let mut out = [Vec::new(), Vec::new(), Vec::new()];
        for (i, c) in self.complex.cells_of_dim(q).iter().enumerate() {
            let slot = match self.labels[c.0] {
                Label::Primary => 0,
                Label::Secondary => 1,
                Label::Critical => 2,
            };
            out[slot].push(i);
        }
        out
    }

    fn local_chain_names(&self, q: usize, local: &[usize], v: &Gf2Vector) -> Vec<String> {
        let cells = self.complex.cells_of_dim(q);
        v.iter_ones()
            .map(|k| self.complex.name(cells[local[k]]).to_string())
            .collect()
    }

    /// Checks that `∂_{S_q P_{q-1}}` is square and invertible in every
    /// dimension. A singular block is reported with a secondary chain whose
    /// boundary has no primary component.
    pub fn validate(&self) -> Result<(), HdvfError> {
        let k = self.complex;
        let n = k.dim();
        for q in 0..=n + 1 {
            let secondary = self.local_classes(q)[1].clone();
            let primary = if q == 0 {
                Vec::new()
            } else {
                self.local_classes(q - 1)[0].clone()
            };
            if secondary.len() != primary.len() {
                return Err(HdvfError::NonSquare {
                    dim: q,
                    secondary: secondary.len(),
                    primary: primary.len(),
                });
            }
            if secondary.is_empty() {
                continue;
            }
            let block = k.boundary_matrix(q).select(&primary, &secondary);
            if let Err(LinalgError::Singular { witness }) = block.invert() {
                return Err(HdvfError::Singular {
                    dim: q,
                    witness: self.local_chain_names(q, &secondary, &witness),
                });
            }
        }
        Ok(())
    }

    /// The induced reduction, computed once and cached.
    pub fn reduction(&self) -> &Reduction {
        self.reduction.get_or_init(|| self.compute_reduction())
    }

    fn compute_reduction(&self) -> Reduction {
        let k = self.complex;
        let n = k.dim();
        let classes: Vec<[Vec<usize>; 3]> = (0..=n + 1).map(|q| self.local_classes(q)).collect();
        let boundaries: Vec<Gf2Matrix> = (0..=n + 1).map(|q| k.boundary_matrix(q)).collect();

        // H_q = (∂_{S_{q+1} P_q})^-1, rows S_{q+1}, columns P_q
        let h_blocks: Vec<Gf2Matrix> = (0..=n)
            .map(|q| {
                let block = boundaries[q + 1].select(&classes[q][0], &classes[q + 1][1]);
                block
                    .invert()
                    .expect("validated vector field has invertible blocks")
            })
            .collect();

        let mut layers = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let [p, s, c] = &classes[q];
            let nq = k.count(q);
            let h_block = h_blocks[q].clone();

            // F_q = ∂_{S_{q+1} C_q} · H_q
            let f_block = boundaries[q + 1]
                .select(c, &classes[q + 1][1])
                .matmul(&h_block)
                .expect("shapes agree");

            // G_q = H_{q-1} · ∂_{C_q P_{q-1}}, D_q = ∂_{C_q C_{q-1}} + ∂_{S_q C_{q-1}} · G_q
            let (g_block, d_block) = if q == 0 {
                (Gf2Matrix::zeros(s.len(), c.len()), Gf2Matrix::zeros(0, c.len()))
            } else {
                let below = &classes[q - 1];
                let g_block = h_blocks[q - 1]
                    .matmul(&boundaries[q].select(&below[0], c))
                    .expect("shapes agree");
                let d_block = boundaries[q]
                    .select(&below[2], c)
                    .add(
                        &boundaries[q]
                            .select(&below[2], s)
                            .matmul(&g_block)
                            .expect("shapes agree"),
                    )
                    .expect("shapes agree");
                (g_block, d_block)
            };

            let mut f = Gf2Matrix::zeros(c.len(), nq);
            for (row, _) in c.iter().enumerate() {
                for (col, &pi) in p.iter().enumerate() {
                    if f_block.get(row, col) {
                        f.set(row, pi, true);
                    }
                }
                f.set(row, c[row], true);
            }

            let mut g = Gf2Matrix::zeros(nq, c.len());
            for (col, &ci) in c.iter().enumerate() {
                g.set(ci, col, true);
                for (row, &si) in s.iter().enumerate() {
                    if g_block.get(row, col) {
                        g.set(si, col, true);
                    }
                }
            }

            let up = &classes[q + 1][1];
            let mut h = Gf2Matrix::zeros(k.count(q + 1), nq);
            for (row, &si) in up.iter().enumerate() {
                for (col, &pi) in p.iter().enumerate() {
                    if h_block.get(row, col) {
                        h.set(si, pi, true);
                    }
                }
            }

            layers.push(ReductionLayer {
                primary: p.clone(),
                secondary: s.clone(),
                critical: c.clone(),
                h_block,
                f_block,
                g_block,
                d_block,
                f,
                g,
                h,
            });
        }
        Reduction { layers }
    }

    pub fn is_perfect(&self) -> bool {
        self.reduction().is_perfect()
    }

    fn require_perfect(&self) -> Result<&Reduction, HdvfError> {
        let r = self.reduction();
        if r.is_perfect() {
            Ok(r)
        } else {
            Err(HdvfError::NotPerfect)
        }
    }

    /// `z_q(x) = x + h_{q-1} ∂_q x`: the unique cycle in `x + Span S`.
    pub fn canonical_cycle(&self, x: &Chain) -> Result<Chain, HdvfError> {
        let r = self.require_perfect()?;
        let q = x.dim();
        let k = self.complex;
        if q == 0 {
            return Ok(x.clone());
        }
        let bx = k.to_vector(&k.boundary_of(x));
        let correction = r.h(q - 1).mul_vec(&bx).expect("shapes agree");
        Ok(x.add(&k.from_vector(q, &correction)))
    }

    /// `z^q(x) = x + h_q^T ∂_{q+1}^T x`: the unique cocycle in `x + Span P`.
    pub fn canonical_cocycle(&self, x: &Chain) -> Result<Chain, HdvfError> {
        let r = self.require_perfect()?;
        let q = x.dim();
        let k = self.complex;
        if q >= k.dim() {
            return Ok(x.clone());
        }
        let cob = k.to_vector(&k.coboundary_of(x));
        let correction = r.h(q).transpose().mul_vec(&cob).expect("shapes agree");
        Ok(x.add(&k.from_vector(q, &correction)))
    }

    /// `g_q(γ)` for each critical q-cell, in complex order.
    pub fn homology_basis(&self, q: usize) -> Result<Vec<Chain>, HdvfError> {
        let r = self.require_perfect()?;
        if q > self.complex.dim() {
            return Ok(Vec::new());
        }
        let g = r.g(q);
        Ok((0..g.cols())
            .map(|j| self.complex.from_vector(q, &g.column(j)))
            .collect())
    }

    /// `f_q^T(γ)` for each critical q-cell, in complex order.
    pub fn cohomology_basis(&self, q: usize) -> Result<Vec<Chain>, HdvfError> {
        let r = self.require_perfect()?;
        if q > self.complex.dim() {
            return Ok(Vec::new());
        }
        let f = r.f(q);
        Ok((0..f.rows())
            .map(|i| self.complex.from_vector(q, f.row(i)))
            .collect())
    }

    fn expect_label(&self, cells: &[CellId], label: Label) -> Result<(), HdvfError> {
        for &c in cells {
            let found = self.labels[c.0];
            if found != label {
                return Err(HdvfError::WrongLabel {
                    cell: self.complex.name(c).to_string(),
                    expected: label,
                    found,
                });
            }
        }
        Ok(())
    }

    fn split_by_dim(&self, cells: &[CellId]) -> Vec<Vec<CellId>> {
        let mut out = vec![Vec::new(); self.complex.dim() + 1];
        for &c in cells {
            out[self.complex.cell_dim(c)].push(c);
        }
        for v in &mut out {
            v.sort_unstable();
            v.dedup();
        }
        out
    }

    /// Checks that the `rows × cols` block of `g` (for W) or `f` (for M) is
    /// invertible in each dimension.
    fn check_swap(&self, rows: &[CellId], cols: &[CellId], map: SwapMap) -> Result<(), HdvfError> {
        let k = self.complex;
        let rows = self.split_by_dim(rows);
        let cols = self.split_by_dim(cols);
        let r = self.reduction();
        for q in 0..rows.len() {
            if rows[q].len() != cols[q].len() {
                return Err(HdvfError::OperationSize {
                    dim: q,
                    left: rows[q].len(),
                    right: cols[q].len(),
                });
            }
            if rows[q].is_empty() {
                continue;
            }
            let layer = r.layer(q);
            let local = |cells: &[CellId]| -> Vec<usize> {
                cells.iter().map(|&c| k.local_index(c)).collect()
            };
            let critical = |cells: &[CellId]| -> Vec<usize> {
                cells
                    .iter()
                    .map(|&c| position(&layer.critical, k.local_index(c)))
                    .collect()
            };
            let block = match map {
                SwapMap::G => layer.g.select(&local(&rows[q]), &critical(&cols[q])),
                SwapMap::F => layer.f.select(&critical(&rows[q]), &local(&cols[q])),
            };
            if let Err(LinalgError::Singular { witness }) = block.invert() {
                return Err(HdvfError::InvalidOperation {
                    dim: q,
                    witness: witness
                        .iter_ones()
                        .map(|j| k.name(cols[q][j]).to_string())
                        .collect(),
                });
            }
        }
        Ok(())
    }

    /// `W_Σ^Γ`: secondary cells `Σ` become critical and critical cells `Γ`
    /// become secondary. Valid iff `proj_Σ ∘ g ∘ inc_Γ` is invertible.
    pub fn op_w(&self, sigma: &[CellId], gamma: &[CellId]) -> Result<Hdvf<'a>, HdvfError> {
        self.expect_label(sigma, Label::Secondary)?;
        self.expect_label(gamma, Label::Critical)?;
        self.check_swap(sigma, gamma, SwapMap::G)?;
        let mut labels = self.labels.clone();
        for &s in sigma {
            labels[s.0] = Label::Critical;
        }
        for &g in gamma {
            labels[g.0] = Label::Secondary;
        }
        let out = Hdvf::new_unchecked(self.complex, labels);
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// `M_Π^Γ`: primary cells `Π` become critical and critical cells `Γ`
    /// become primary. Valid iff `proj_Γ ∘ f ∘ inc_Π` is invertible.
    pub fn op_m(&self, pi: &[CellId], gamma: &[CellId]) -> Result<Hdvf<'a>, HdvfError> {
        self.expect_label(pi, Label::Primary)?;
        self.expect_label(gamma, Label::Critical)?;
        self.check_swap(gamma, pi, SwapMap::F)?;
        let mut labels = self.labels.clone();
        for &p in pi {
            labels[p.0] = Label::Critical;
        }
        for &g in gamma {
            labels[g.0] = Label::Primary;
        }
        let out = Hdvf::new_unchecked(self.complex, labels);
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// Pairs critical cells until the field is perfect.
    ///
    /// Cells are scanned in complex order; each critical cell `γ` with
    /// `d(γ) ≠ 0` becomes secondary and the first critical cell in the
    /// support of `d(γ)` becomes primary. Existing primary and secondary
    /// cells keep their labels.
    pub fn complete(&self) -> Hdvf<'a> {
        let mut state = PairingState::from_hdvf(self);
        for c in self.complex.ids() {
            if state.labels[c.0] != Label::Critical {
                continue;
            }
            let d = state.reduced_boundary(c);
            if let Some(partner) = d.first_one() {
                let partner = self.complex.cells_of_dim(self.complex.cell_dim(c) - 1)[partner];
                state.pair(c, partner, &d);
            }
        }
        let out = Hdvf::new_unchecked(self.complex, state.labels);
        debug_assert!(out.validate().is_ok());
        out
    }

    /// The same labels on a larger complex `bigger ⊇ K`; new cells are critical.
    pub fn extend_to<'b>(&self, bigger: &'b ChainComplex) -> Result<Hdvf<'b>, HdvfError> {
        self.complex.check_subcomplex_of(bigger)?;
        let mut labels = vec![Label::Critical; bigger.len()];
        for c in self.complex.ids() {
            let id = bigger.lookup(self.complex.name(c))?;
            labels[id.0] = self.labels[c.0];
        }
        Ok(Hdvf::new_unchecked(bigger, labels))
    }

    /// Completes this perfect field on `K` to a perfect field on `bigger ⊇ K`
    /// while keeping the critical q-cells `preserved` critical.
    ///
    /// The classes of `g(γ)`, `γ ∈ preserved`, must stay independent in
    /// `H_q(bigger)`. After a plain completion, the preserved cells that
    /// became primary are swapped back with an M operation whose target
    /// cells are picked as the lowest-index rows of a maximal-rank square
    /// submatrix of `f`.
    pub fn complete_preserving<'b>(
        &self,
        bigger: &'b ChainComplex,
        preserved: &[CellId],
    ) -> Result<Hdvf<'b>, HdvfError> {
        let k = self.complex;
        self.require_perfect()?;
        let mut preserved = preserved.to_vec();
        preserved.sort_unstable();
        preserved.dedup();
        self.expect_label(&preserved, Label::Critical)?;
        let Some(&first) = preserved.first() else {
            return Ok(self.extend_to(bigger)?.complete());
        };
        let q = k.cell_dim(first);
        if preserved.iter().any(|&c| k.cell_dim(c) != q) {
            return Err(HdvfError::Precondition(
                "preserved cells must share one dimension".into(),
            ));
        }

        // independence of the preserved classes in H_q(bigger), by rank
        let g = self.reduction().g(q);
        let layer = self.reduction().layer(q);
        let mut columns = Vec::new();
        for &c in &preserved {
            let j = position(&layer.critical, k.local_index(c));
            let chain = k.from_vector(q, &g.column(j));
            let moved = bigger.translate(&chain, k)?;
            columns.push(bigger.to_vector(&moved));
        }
        let boundaries = bigger.boundary_matrix(q + 1);
        let rank_b = boundaries.rank();
        let mut all: Vec<Gf2Vector> = (0..boundaries.cols()).map(|j| boundaries.column(j)).collect();
        all.extend(columns.iter().cloned());
        let joint = Gf2Matrix::from_column_vectors(bigger.count(q), &all).rank();
        if joint - rank_b != preserved.len() {
            return Err(HdvfError::Precondition(
                "preserved generators are not independent in the larger complex".into(),
            ));
        }

        let completed = self.extend_to(bigger)?.complete();
        let preserved_big: Vec<CellId> = preserved
            .iter()
            .map(|&c| bigger.lookup(k.name(c)))
            .collect::<Result<_, _>>()?;
        let became_primary: Vec<CellId> = preserved_big
            .iter()
            .copied()
            .filter(|&c| completed.label(c) == Label::Primary)
            .collect();
        if became_primary.is_empty() {
            return Ok(completed);
        }
        debug_assert!(preserved_big
            .iter()
            .all(|&c| completed.label(c) != Label::Secondary));

        let r = completed.reduction();
        let layer = r.layer(q);
        let candidates: Vec<usize> = layer
            .critical
            .iter()
            .enumerate()
            .filter(|(_, &local)| !preserved_big.contains(&bigger.cells_of_dim(q)[local]))
            .map(|(row, _)| row)
            .collect();
        let cols: Vec<usize> = became_primary
            .iter()
            .map(|&c| bigger.local_index(c))
            .collect();
        let restricted = r.f(q).select(&candidates, &cols);
        let chosen = restricted.independent_rows();
        if chosen.len() != cols.len() {
            return Err(HdvfError::Precondition(
                "no invertible submatrix for the M operation".into(),
            ));
        }
        let gamma: Vec<CellId> = chosen
            .iter()
            .map(|&i| bigger.cells_of_dim(q)[layer.critical[candidates[i]]])
            .collect();
        completed.op_m(&became_primary, &gamma)
    }

    /// The field `(S, P, C)` on the dual complex, which must be `self.complex().dual()`.
    pub fn dual<'b>(&self, dual: &'b ChainComplex) -> Result<Hdvf<'b>, HdvfError> {
        if dual.len() != self.complex.len() {
            return Err(HdvfError::LabelCount {
                expected: dual.len(),
                found: self.complex.len(),
            });
        }
        Hdvf::new(dual, self.labels.iter().map(|l| l.dual()).collect())
    }
}

fn position(list: &[usize], value: usize) -> usize {
    list.iter()
        .position(|&v| v == value)
        .expect("cell belongs to the expected label class")
}

#[derive(Clone, Copy)]
enum SwapMap {
    G,
    F,
}

/// Incremental pairing engine shared by completion and persistence.
///
/// Keeps `f_q(x)` for every cell `x` as a vector over the q-cells (only
/// critical positions are ever set). The reduced boundary of a critical
/// cell is `d(γ) = f(∂γ)`, and pairing a critical q-cell `σ` with a
/// critical (q-1)-cell `π` in the support of `d(σ)` updates `f` by
/// eliminating `π` with `d(σ)` in dimension q-1 and dropping `σ` in
/// dimension q. This is the Schur-complement update of the full recompute.
pub(crate) struct PairingState<'a> {
    complex: &'a ChainComplex,
    pub(crate) labels: Vec<Label>,
    f: Vec<Vec<Gf2Vector>>,
}

impl<'a> PairingState<'a> {
    pub(crate) fn all_critical(complex: &'a ChainComplex) -> Self {
        let f = (0..=complex.dim())
            .map(|q| {
                let n = complex.count(q);
                (0..n).map(|i| Gf2Vector::unit(n, i)).collect()
            })
            .collect();
        PairingState {
            complex,
            labels: vec![Label::Critical; complex.len()],
            f,
        }
    }

    pub(crate) fn from_hdvf(x: &Hdvf<'a>) -> Self {
        let k = x.complex;
        let r = x.reduction();
        let f = (0..=k.dim())
            .map(|q| {
                let layer = r.layer(q);
                let n = k.count(q);
                (0..n)
                    .map(|col| layer.f.column(col).scatter(&layer.critical, n))
                    .collect()
            })
            .collect();
        PairingState {
            complex: k,
            labels: x.labels.clone(),
            f,
        }
    }

    /// `d(γ) = f(∂γ)` over the (q-1)-cells.
    pub(crate) fn reduced_boundary(&self, cell: CellId) -> Gf2Vector {
        let q = self.complex.cell_dim(cell);
        if q == 0 {
            return Gf2Vector::zeros(0);
        }
        let mut d = Gf2Vector::zeros(self.complex.count(q - 1));
        for &face in self.complex.faces(cell) {
            d += &self.f[q - 1][self.complex.local_index(face)];
        }
        d
    }

    pub(crate) fn pair(&mut self, secondary: CellId, primary: CellId, d: &Gf2Vector) {
        let k = self.complex;
        let q = k.cell_dim(secondary);
        let pi = k.local_index(primary);
        debug_assert!(d.get(pi));
        for v in self.f[q - 1].iter_mut() {
            if v.get(pi) {
                *v += d;
            }
        }
        let si = k.local_index(secondary);
        for v in self.f[q].iter_mut() {
            v.set(si, false);
        }
        self.labels[secondary.0] = Label::Secondary;
        self.labels[primary.0] = Label::Primary;
    }
}
