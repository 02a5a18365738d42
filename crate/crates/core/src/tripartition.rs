//! Trees, cotrees and tri-partitions.
//!
//! A q-tree is a set of q-cells spanning no nonzero cycle, a q-cotree one
//! spanning no nonzero cocycle. A q-tri-partition splits the q-cells into a
//! maximal cotree, a maximal tree and `β_q` essential cells. The layers
//! `(P_q, S_q, C_q)` of a perfect vector field are tri-partitions, and any
//! stack of tri-partitions assembles into a perfect vector field.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{CellId, Chain, ChainComplex, ComplexError};
use crate::field_linalg::{Gf2Matrix, Gf2Vector};
use crate::hdvf::{Hdvf, HdvfError, Label};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriPartitionError {
    #[error("cell {cell} is not a {q}-cell")]
    WrongDimension { q: usize, cell: String },
    #[error("cell {cell} appears in more than one part")]
    Overlap { cell: String },
    #[error("{q}-cell {cell} is in no part")]
    Uncovered { q: usize, cell: String },
    #[error("{0}")]
    Precondition(String),
    #[error("layer {q} is not a tri-partition: {report}")]
    InvalidLayer { q: usize, report: TriPartitionReport },
    #[error("stack has {found} layers, the complex needs {expected}")]
    StackSize { expected: usize, found: usize },
    #[error(transparent)]
    Hdvf(#[from] HdvfError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `(cotree, tree, essential)` in one dimension. Each set is kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriPartition {
    pub q: usize,
    pub cotree: Vec<CellId>,
    pub tree: Vec<CellId>,
    pub essential: Vec<CellId>,
}

impl TriPartition {
    pub fn new(q: usize, mut cotree: Vec<CellId>, mut tree: Vec<CellId>, mut essential: Vec<CellId>) -> Self {
        cotree.sort_unstable();
        tree.sort_unstable();
        essential.sort_unstable();
        TriPartition {
            q,
            cotree,
            tree,
            essential,
        }
    }

    pub fn from_names<S: AsRef<str>>(
        complex: &ChainComplex,
        q: usize,
        cotree: &[S],
        tree: &[S],
        essential: &[S],
    ) -> Result<Self, ComplexError> {
        let ids = |names: &[S]| {
            names
                .iter()
                .map(|n| complex.lookup(n.as_ref()))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(Self::new(q, ids(cotree)?, ids(tree)?, ids(essential)?))
    }

    fn check_partition(&self, complex: &ChainComplex) -> Result<(), TriPartitionError> {
        let mut seen = vec![false; complex.len()];
        for &c in self.cotree.iter().chain(&self.tree).chain(&self.essential) {
            if c.0 >= complex.len() || complex.cell_dim(c) != self.q {
                return Err(TriPartitionError::WrongDimension {
                    q: self.q,
                    cell: if c.0 < complex.len() {
                        complex.name(c).into()
                    } else {
                        format!("#{}", c.0)
                    },
                });
            }
            if seen[c.0] {
                return Err(TriPartitionError::Overlap {
                    cell: complex.name(c).into(),
                });
            }
            seen[c.0] = true;
        }
        if let Some(&c) = complex.cells_of_dim(self.q).iter().find(|c| !seen[c.0]) {
            return Err(TriPartitionError::Uncovered {
                q: self.q,
                cell: complex.name(c).into(),
            });
        }
        Ok(())
    }
}

fn local(complex: &ChainComplex, cells: &[CellId]) -> Vec<usize> {
    cells.iter().map(|&c| complex.local_index(c)).collect()
}

fn all(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn check_dim(complex: &ChainComplex, cells: &[CellId], q: usize) -> bool {
    cells
        .iter()
        .all(|&c| c.0 < complex.len() && complex.cell_dim(c) == q)
}

/// `Span cells ∩ ker ∂ = 0`, i.e. the boundary columns of `cells` are independent.
pub fn is_tree(complex: &ChainComplex, cells: &[CellId], q: usize) -> bool {
    debug_assert!(check_dim(complex, cells, q));
    let b = complex.boundary_matrix(q);
    b.select(&all(b.rows()), &local(complex, cells)).rank() == cells.len()
}

/// `Span cells ∩ ker δ = 0`, with `δ` the coboundary (transpose of `∂_{q+1}`).
pub fn is_cotree(complex: &ChainComplex, cells: &[CellId], q: usize) -> bool {
    debug_assert!(check_dim(complex, cells, q));
    let b = complex.boundary_matrix(q + 1);
    b.select(&local(complex, cells), &all(b.cols())).rank() == cells.len()
}

fn is_maximal(
    complex: &ChainComplex,
    cells: &[CellId],
    q: usize,
    test: fn(&ChainComplex, &[CellId], usize) -> bool,
    kind: &str,
) -> Result<bool, TriPartitionError> {
    if !check_dim(complex, cells, q) {
        return Err(TriPartitionError::Precondition(format!("cells are not all {q}-cells")));
    }
    if !test(complex, cells, q) {
        return Err(TriPartitionError::Precondition(format!("not a {q}-{kind}")));
    }
    let mut augmented = cells.to_vec();
    augmented.push(CellId(0));
    for &tau in complex.cells_of_dim(q) {
        if cells.contains(&tau) {
            continue;
        }
        *augmented.last_mut().unwrap() = tau;
        if test(complex, &augmented, q) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// No q-cell can be added while staying a tree.
pub fn is_maximal_tree(complex: &ChainComplex, cells: &[CellId], q: usize) -> Result<bool, TriPartitionError> {
    is_maximal(complex, cells, q, is_tree, "tree")
}

/// No q-cell can be added while staying a cotree.
pub fn is_maximal_cotree(complex: &ChainComplex, cells: &[CellId], q: usize) -> Result<bool, TriPartitionError> {
    is_maximal(complex, cells, q, is_cotree, "cotree")
}

/// Which tri-partition conditions hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriPartitionReport {
    pub tree: bool,
    pub tree_maximal: bool,
    pub cotree: bool,
    pub cotree_maximal: bool,
    pub essential: usize,
    pub betti: usize,
}

impl TriPartitionReport {
    pub fn is_valid(&self) -> bool {
        self.tree && self.tree_maximal && self.cotree && self.cotree_maximal && self.essential == self.betti
    }
}

impl fmt::Display for TriPartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid tri-partition");
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.tree {
            parts.push("tree spans a cycle".into());
        } else if !self.tree_maximal {
            parts.push("tree not maximal".into());
        }
        if !self.cotree {
            parts.push("cotree spans a cocycle".into());
        } else if !self.cotree_maximal {
            parts.push("cotree not maximal".into());
        }
        if self.essential != self.betti {
            parts.push(format!(
                "{} essential cells for Betti number {}",
                self.essential, self.betti
            ));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Checks maximality of both trees and `|essential| = β_q`. Errors only
/// when the three sets do not partition the q-cells.
pub fn validate_tripartition(
    complex: &ChainComplex,
    t: &TriPartition,
) -> Result<TriPartitionReport, TriPartitionError> {
    t.check_partition(complex)?;
    let q = t.q;
    let tree = is_tree(complex, &t.tree, q);
    let cotree = is_cotree(complex, &t.cotree, q);
    Ok(TriPartitionReport {
        tree,
        tree_maximal: tree && is_maximal_tree(complex, &t.tree, q)?,
        cotree,
        cotree_maximal: cotree && is_maximal_cotree(complex, &t.cotree, q)?,
        essential: t.essential.len(),
        betti: complex.betti(q),
    })
}

/// The layers `(P_q, S_q, C_q)` of a perfect field, one per dimension.
pub fn hdvf_to_tripartitions(x: &Hdvf<'_>) -> Result<Vec<TriPartition>, TriPartitionError> {
    if !x.is_perfect() {
        return Err(HdvfError::NotPerfect.into());
    }
    let k = x.complex();
    if k.is_empty() {
        return Ok(Vec::new());
    }
    Ok((0..=k.dim())
        .map(|q| {
            TriPartition::new(
                q,
                x.cells(Label::Primary, q),
                x.cells(Label::Secondary, q),
                x.cells(Label::Critical, q),
            )
        })
        .collect())
}

/// Assembles one tri-partition per dimension into a perfect field:
/// cotrees become primary, trees secondary, essential cells critical.
pub fn tripartitions_to_hdvf<'a>(
    complex: &'a ChainComplex,
    stack: &[TriPartition],
) -> Result<Hdvf<'a>, TriPartitionError> {
    let expected = if complex.is_empty() { 0 } else { complex.dim() + 1 };
    if stack.len() != expected {
        return Err(TriPartitionError::StackSize {
            expected,
            found: stack.len(),
        });
    }
    let mut labels = vec![Label::Critical; complex.len()];
    for (q, t) in stack.iter().enumerate() {
        if t.q != q {
            return Err(TriPartitionError::Precondition(format!(
                "layer {q} is labelled with dimension {}",
                t.q
            )));
        }
        let report = validate_tripartition(complex, t)?;
        if !report.is_valid() {
            return Err(TriPartitionError::InvalidLayer { q, report });
        }
        for &c in &t.cotree {
            labels[c.0] = Label::Primary;
        }
        for &c in &t.tree {
            labels[c.0] = Label::Secondary;
        }
    }
    let x = Hdvf::new(complex, labels)?;
    if !x.is_perfect() {
        return Err(HdvfError::NotPerfect.into());
    }
    Ok(x)
}

/// The unique cycle in `τ + Span(tree)`, for `τ` a cotree or essential cell.
pub fn canonical_cycle_tp(complex: &ChainComplex, t: &TriPartition, tau: CellId) -> Result<Chain, TriPartitionError> {
    if complex.cell_dim(tau) != t.q || t.tree.contains(&tau) {
        return Err(TriPartitionError::Precondition(format!(
            "{} is not a cotree or essential {}-cell",
            complex.name(tau),
            t.q
        )));
    }
    let b = complex.boundary_matrix(t.q);
    let cols = local(complex, &t.tree);
    let rhs = b.column(complex.local_index(tau));
    complete_in_span(complex, t.q, tau, &b.select(&all(b.rows()), &cols), &cols, &rhs, "cycle")
}

/// The unique cocycle in `τ + Span(cotree)`, for `τ` a tree or essential cell.
pub fn canonical_cocycle_tp(complex: &ChainComplex, t: &TriPartition, tau: CellId) -> Result<Chain, TriPartitionError> {
    if complex.cell_dim(tau) != t.q || t.cotree.contains(&tau) {
        return Err(TriPartitionError::Precondition(format!(
            "{} is not a tree or essential {}-cell",
            complex.name(tau),
            t.q
        )));
    }
    let coboundary = complex.boundary_matrix(t.q + 1).transpose();
    let cols = local(complex, &t.cotree);
    let rhs = coboundary.column(complex.local_index(tau));
    complete_in_span(
        complex,
        t.q,
        tau,
        &coboundary.select(&all(coboundary.rows()), &cols),
        &cols,
        &rhs,
        "cocycle",
    )
}

/// Solves `map · y = rhs` and returns `τ + Σ y_j cols_j`.
fn complete_in_span(
    complex: &ChainComplex,
    q: usize,
    tau: CellId,
    map: &Gf2Matrix,
    cols: &[usize],
    rhs: &Gf2Vector,
    kind: &str,
) -> Result<Chain, TriPartitionError> {
    let y = map.solve(rhs).map_err(|_| {
        TriPartitionError::Precondition(format!("no {kind} through {} in the given span", complex.name(tau)))
    })?;
    let mut v = y.scatter(cols, complex.count(q));
    v.flip(complex.local_index(tau));
    Ok(complex.from_vector(q, &v))
}
