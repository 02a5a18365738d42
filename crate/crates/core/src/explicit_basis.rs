//! Explicit homology bases.
//!
//! A q-homology basis `(γ_i)` is explicit when every generator owns a
//! private cell (one appearing in no other generator) and the subcomplex
//! `K^β` induced by the union of the supports has exactly `β` independent
//! q-cycles. These are exactly the bases `(g(γ))_{γ ∈ C_q}` of perfect
//! vector fields; [`hdvf_from_explicit_basis`] builds such a field.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::{CellId, Chain, ChainComplex, ComplexError};
use crate::field_linalg::{Gf2Matrix, Gf2Vector};
use crate::hdvf::{Hdvf, HdvfError, Label};

/// Largest basis size accepted by [`check_characterizations`] unless overridden.
pub const DEFAULT_SUBSET_LIMIT: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("generator {index} has dimension {found}, expected {expected}")]
    WrongDimension {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("generator {index} is not a cycle")]
    NotACycle { index: usize },
    #[error("not a homology basis: {count} generators span {rank} classes, Betti number is {betti}")]
    NotABasis {
        count: usize,
        rank: usize,
        betti: usize,
    },
    #[error("basis has {size} generators, above the subset enumeration limit {limit}; use is_explicit")]
    LimitExceeded { size: usize, limit: usize },
    #[error("basis is not explicit: {0}")]
    NotExplicit(ExplicitReport),
    #[error("chain is not a cycle")]
    ChainNotCycle,
    #[error(transparent)]
    Hdvf(#[from] HdvfError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A validated q-homology basis of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyBasis<'a> {
    complex: &'a ChainComplex,
    q: usize,
    generators: Vec<Chain>,
}

impl<'a> HomologyBasis<'a> {
    /// Checks that the generators are q-cycles whose classes form a basis of
    /// `H_q`, using ranks only.
    pub fn new(complex: &'a ChainComplex, q: usize, generators: Vec<Chain>) -> Result<Self, BasisError> {
        for (i, g) in generators.iter().enumerate() {
            if !g.is_zero() && g.dim() != q {
                return Err(BasisError::WrongDimension {
                    index: i + 1,
                    expected: q,
                    found: g.dim(),
                });
            }
            if !complex.is_cycle(g) {
                return Err(BasisError::NotACycle { index: i + 1 });
            }
        }
        let generators: Vec<Chain> = generators
            .into_iter()
            .map(|g| if g.is_zero() { Chain::zero(q) } else { g })
            .collect();
        let boundaries = complex.boundary_matrix(q + 1);
        let mut columns: Vec<Gf2Vector> = (0..boundaries.cols()).map(|j| boundaries.column(j)).collect();
        columns.extend(generators.iter().map(|g| complex.to_vector(g)));
        let rank = Gf2Matrix::from_column_vectors(complex.count(q), &columns).rank() - boundaries.rank();
        let betti = complex.betti(q);
        if rank != generators.len() || rank != betti {
            return Err(BasisError::NotABasis {
                count: generators.len(),
                rank,
                betti,
            });
        }
        Ok(HomologyBasis {
            complex,
            q,
            generators,
        })
    }

    /// Cell names per generator, in order.
    pub fn from_names<S: AsRef<str>>(
        complex: &'a ChainComplex,
        q: usize,
        generators: &[&[S]],
    ) -> Result<Self, BasisError> {
        let chains = generators
            .iter()
            .map(|names| {
                if names.is_empty() {
                    Ok(Chain::zero(q))
                } else {
                    complex.chain(names)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(complex, q, chains)
    }

    pub fn complex(&self) -> &'a ChainComplex {
        self.complex
    }

    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn generators(&self) -> &[Chain] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Cells of each generator that appear in no other generator.
    pub fn private_cells(&self) -> Vec<Vec<CellId>> {
        let mut count = vec![0usize; self.complex.len()];
        for g in &self.generators {
            for c in g.support() {
                count[c.0] += 1;
            }
        }
        self.generators
            .iter()
            .map(|g| g.support().iter().copied().filter(|c| count[c.0] == 1).collect())
            .collect()
    }

    fn union_of(&self, subset: impl Iterator<Item = usize>) -> Vec<CellId> {
        let mut cells: Vec<CellId> = subset
            .flat_map(|i| self.generators[i].support().iter().copied())
            .collect();
        cells.sort_unstable();
        cells.dedup();
        cells
    }

    /// The subcomplex `K^J` induced by the generators indexed by `subset`.
    pub fn induced_complex(&self, subset: &[usize]) -> ChainComplex {
        self.complex
            .induced_subcomplex(&self.union_of(subset.iter().copied()))
    }
}

/// Outcome of [`is_explicit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitReport {
    pub dim: usize,
    /// Private cells of each generator, in complex order.
    pub private_cells: Vec<Vec<CellId>>,
    /// `dim H_q(K^β)`.
    pub induced_betti: usize,
}

impl ExplicitReport {
    pub fn generators(&self) -> usize {
        self.private_cells.len()
    }

    /// 1-based indices of generators without a private cell.
    pub fn missing_private(&self) -> Vec<usize> {
        self.private_cells
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_empty())
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn has_private_cells(&self) -> bool {
        self.private_cells.iter().all(|p| !p.is_empty())
    }

    pub fn dimension_matches(&self) -> bool {
        self.induced_betti == self.generators()
    }

    pub fn is_explicit(&self) -> bool {
        self.has_private_cells() && self.dimension_matches()
    }
}

impl fmt::Display for ExplicitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_explicit() {
            return write!(f, "explicit {}-homology basis of {} generators", self.dim, self.generators());
        }
        let mut parts: Vec<String> = Vec::new();
        for i in self.missing_private() {
            parts.push(format!("generator {i} has no private cell"));
        }
        if !self.dimension_matches() {
            parts.push(format!(
                "induced complex has {} {}-holes instead of {}",
                self.induced_betti,
                self.dim,
                self.generators()
            ));
        }
        f.write_str(&parts.join("; "))
    }
}

/// Private cells plus `dim H_q(K^β) = β`.
pub fn is_explicit(basis: &HomologyBasis<'_>) -> ExplicitReport {
    let all: Vec<usize> = (0..basis.len()).collect();
    let induced = basis.induced_complex(&all);
    ExplicitReport {
        dim: basis.q,
        private_cells: basis.private_cells(),
        induced_betti: induced.betti(basis.q),
    }
}

/// Verdicts of the three equivalent characterizations of explicit bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterizationReport {
    /// Private cells, and `ι^J : H_q(K^J) → H_q(K)` injective of rank `|J|` for all `J`.
    pub first: bool,
    /// `ker ∂ ∩ K^J_q ⊆ Span(γ_J)` for all `J`.
    pub second: bool,
    /// Private cells and `dim H_q(K^β) = β`.
    pub third: bool,
    /// First subset violating the rank condition, as 1-based indices.
    pub rank_failure: Option<Vec<usize>>,
    /// First subset violating the kernel inclusion, as 1-based indices.
    pub kernel_failure: Option<Vec<usize>>,
}

impl CharacterizationReport {
    pub fn agree(&self) -> bool {
        self.first == self.second && self.second == self.third
    }
}

/// Evaluates all three characterizations by enumerating every subset `J`
/// of generators. Exponential in the basis size, hence `limit`.
pub fn check_characterizations(
    basis: &HomologyBasis<'_>,
    limit: usize,
) -> Result<CharacterizationReport, BasisError> {
    let beta = basis.len();
    if beta > limit {
        return Err(BasisError::LimitExceeded { size: beta, limit });
    }
    let k = basis.complex;
    let q = basis.q;
    let third_report = is_explicit(basis);
    let boundary_q = k.boundary_matrix(q);
    let boundaries = k.boundary_matrix(q + 1);
    let rank_b = boundaries.rank();
    let boundary_columns: Vec<Gf2Vector> = (0..boundaries.cols()).map(|j| boundaries.column(j)).collect();
    let vectors: Vec<Gf2Vector> = basis.generators.iter().map(|g| k.to_vector(g)).collect();

    let mut rank_failure = None;
    let mut kernel_failure = None;
    for mask in 0u64..(1u64 << beta) {
        let subset: Vec<usize> = (0..beta).filter(|i| mask >> i & 1 == 1).collect();
        // K^J has no (q+1)-cells and its q-cells are the union of supports,
        // so H_q(K^J) is the kernel of ∂_q on those columns.
        let cells: Vec<usize> = basis
            .union_of(subset.iter().copied())
            .iter()
            .map(|&c| k.local_index(c))
            .collect();
        let restricted = boundary_q.select(&(0..boundary_q.rows()).collect::<Vec<_>>(), &cells);
        let cycles: Vec<Gf2Vector> = restricted
            .kernel_basis()
            .iter()
            .map(|z| z.scatter(&cells, k.count(q)))
            .collect();

        if rank_failure.is_none() {
            let mut cols = boundary_columns.clone();
            cols.extend(cycles.iter().cloned());
            let image_rank = Gf2Matrix::from_column_vectors(k.count(q), &cols).rank() - rank_b;
            if cycles.len() != subset.len() || image_rank != subset.len() {
                rank_failure = Some(subset.iter().map(|i| i + 1).collect());
            }
        }
        if kernel_failure.is_none() {
            let span: Vec<Gf2Vector> = subset.iter().map(|&i| vectors[i].clone()).collect();
            let span_rank = Gf2Matrix::from_column_vectors(k.count(q), &span).rank();
            let mut with_cycles = span;
            with_cycles.extend(cycles);
            if Gf2Matrix::from_column_vectors(k.count(q), &with_cycles).rank() != span_rank {
                kernel_failure = Some(subset.iter().map(|i| i + 1).collect());
            }
        }
    }
    Ok(CharacterizationReport {
        first: third_report.has_private_cells() && rank_failure.is_none(),
        second: kernel_failure.is_none(),
        third: third_report.is_explicit(),
        rank_failure,
        kernel_failure,
    })
}

/// True iff `cycle` is nonzero and no proper nonempty subset of its
/// support carries a cycle, i.e. the cycles supported inside it form a
/// one-dimensional space.
pub fn is_elementary(complex: &ChainComplex, cycle: &Chain) -> Result<bool, BasisError> {
    if !complex.is_cycle(cycle) {
        return Err(BasisError::ChainNotCycle);
    }
    if cycle.is_zero() {
        return Ok(false);
    }
    let q = cycle.dim();
    let cols: Vec<usize> = cycle.support().iter().map(|&c| complex.local_index(c)).collect();
    let b = complex.boundary_matrix(q);
    let rows: Vec<usize> = (0..b.rows()).collect();
    Ok(b.select(&rows, &cols).kernel_basis().len() == 1)
}

/// Builds a perfect vector field whose q-homology basis is exactly `basis`.
///
/// For each generator the lowest-index private cell `γ_k` is fixed. A
/// perfect field is grown on the induced complexes `K^1 ⊆ K^2 ⊆ … ⊆ K^β`:
/// at step k the previous field is completed on `K^k` keeping its critical
/// q-cells, the single new critical q-cell `τ` is traded for `γ_k` by a W
/// operation when they differ, and the result is finally completed on the
/// whole complex keeping all `γ_k` critical.
pub fn hdvf_from_explicit_basis<'a>(basis: &HomologyBasis<'a>) -> Result<Hdvf<'a>, BasisError> {
    let report = is_explicit(basis);
    if !report.is_explicit() {
        return Err(BasisError::NotExplicit(report));
    }
    let k = basis.complex;
    let q = basis.q;
    let chosen: Vec<&str> = report
        .private_cells
        .iter()
        .map(|cells| k.name(cells[0]))
        .collect();

    let mut sub = ChainComplex::empty();
    let mut labels: Vec<Label> = Vec::new();
    for (step, private) in chosen.iter().enumerate() {
        let next = basis.induced_complex(&(0..=step).collect::<Vec<_>>());
        let current = Hdvf::new_unchecked(&sub, labels);
        let keep = current.critical(q);
        let grown = current.complete_preserving(&next, &keep)?;
        let kept: Vec<&str> = keep.iter().map(|&c| sub.name(c)).collect();
        let fresh: Vec<CellId> = grown
            .critical(q)
            .into_iter()
            .filter(|&c| !kept.contains(&next.name(c)))
            .collect();
        debug_assert_eq!(fresh.len(), 1);
        let tau = fresh[0];
        let target = next.lookup(private)?;
        let grown = if tau == target {
            grown
        } else {
            grown.op_w(&[target], &[tau])?
        };
        labels = grown.labels().to_vec();
        drop(grown);
        sub = next;
    }
    let current = Hdvf::new_unchecked(&sub, labels);
    let keep = current.critical(q);
    Ok(current.complete_preserving(k, &keep)?)
}

/// Explicitness of a q-cohomology basis: the cocycles, read on the dual
/// complex, must form an explicit (n-q)-homology basis.
pub fn is_explicit_cohomology(
    complex: &ChainComplex,
    q: usize,
    cocycles: &[Chain],
) -> Result<ExplicitReport, BasisError> {
    let dual = complex.dual();
    let dq = complex.dim() - q;
    let chains = cocycles.iter().map(|c| c.clone().with_dim(dq)).collect();
    let basis = HomologyBasis::new(&dual, dq, chains)?;
    Ok(is_explicit(&basis))
}

/// A perfect field on `complex` whose q-cohomology basis `(f^T(γ))` is
/// exactly `cocycles`, obtained from the homology construction on the dual.
pub fn hdvf_from_explicit_cohomology_basis<'a>(
    complex: &'a ChainComplex,
    q: usize,
    cocycles: &[Chain],
) -> Result<Hdvf<'a>, BasisError> {
    let dual = complex.dual();
    let dq = complex.dim() - q;
    let chains = cocycles.iter().map(|c| c.clone().with_dim(dq)).collect();
    let basis = HomologyBasis::new(&dual, dq, chains)?;
    let on_dual = hdvf_from_explicit_basis(&basis)?;
    let labels = on_dual.labels().iter().map(|l| l.dual()).collect();
    Ok(Hdvf::new(complex, labels)?)
}
