//! Cell complexes over GF(2): cells, chains, boundary matrices and the
//! derived complexes (induced subcomplexes, prefixes, the dual).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field_linalg::{Gf2Matrix, Gf2Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("duplicate cell id `{0}`")]
    DuplicateId(String),
    #[error("cell `{cell}` references unknown face `{face}`")]
    UnknownFace { cell: String, face: String },
    #[error("cell `{cell}` of dimension {dim} lists face `{face}` of dimension {face_dim}")]
    FaceDimension {
        cell: String,
        dim: usize,
        face: String,
        face_dim: usize,
    },
    #[error("boundary of the boundary of `{0}` is not zero")]
    BoundaryNotCycle(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("chain mixes dimensions {0} and {1}")]
    MixedDimension(usize, usize),
    #[error("grid is empty")]
    EmptyGrid,
    #[error("grid rows have different lengths")]
    RaggedGrid,
    #[error("complex is not a subcomplex: {0}")]
    NotSubcomplex(String),
}

/// Index of a cell inside its complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub usize);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
}

/// Input record for [`ChainComplex::from_boundary_lists`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSpec {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<String>,
}

impl CellSpec {
    pub fn new<S: Into<String>, F: IntoIterator<Item = T>, T: Into<String>>(
        id: S,
        dim: usize,
        faces: F,
    ) -> Self {
        CellSpec {
            id: id.into(),
            dim,
            faces: faces.into_iter().map(Into::into).collect(),
        }
    }
}

/// A homogeneous GF(2) chain, stored as its sorted support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    dim: usize,
    cells: Vec<CellId>,
}

impl Chain {
    pub fn zero(dim: usize) -> Self {
        Chain {
            dim,
            cells: Vec::new(),
        }
    }

    /// Sums the given cells; a cell listed twice cancels.
    pub fn from_cells<I: IntoIterator<Item = CellId>>(dim: usize, cells: I) -> Self {
        let mut v: Vec<CellId> = cells.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<CellId> = Vec::with_capacity(v.len());
        for c in v {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        Chain { dim, cells: out }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// The set of cells with nonzero coefficient.
    pub fn support(&self) -> &[CellId] {
        &self.cells
    }

    pub fn contains(&self, cell: CellId) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// GF(2) sum, i.e. symmetric difference of supports.
    pub fn add(&self, other: &Chain) -> Chain {
        debug_assert_eq!(self.dim, other.dim, "adding chains of different dimension");
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::with_capacity(self.cells.len() + other.cells.len());
        while i < self.cells.len() && j < other.cells.len() {
            match self.cells[i].cmp(&other.cells[j]) {
                core::cmp::Ordering::Less => {
                    out.push(self.cells[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(other.cells[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.cells[i..]);
        out.extend_from_slice(&other.cells[j..]);
        Chain {
            dim: self.dim,
            cells: out,
        }
    }

    pub(crate) fn with_dim(mut self, dim: usize) -> Chain {
        self.dim = dim;
        self
    }
}

/// A finite cell complex with a GF(2) boundary satisfying `∂∘∂ = 0`.
///
/// Cells keep the order in which they were supplied; that order is the
/// tie-breaking order used by every deterministic choice in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    cells: Vec<Cell>,
    boundary: Vec<Vec<CellId>>,
    coboundary: Vec<Vec<CellId>>,
    by_dim: Vec<Vec<CellId>>,
    local: Vec<usize>,
    index: BTreeMap<String, CellId>,
}

impl ChainComplex {
    pub fn empty() -> Self {
        ChainComplex {
            cells: Vec::new(),
            boundary: Vec::new(),
            coboundary: Vec::new(),
            by_dim: vec![Vec::new()],
            local: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Builds a complex from `(id, dim, faces)` records.
    ///
    /// Faces may be listed before or after the cells that use them. A face
    /// listed an even number of times cancels.
    pub fn from_boundary_lists<I>(spec: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = CellSpec>,
    {
        let spec: Vec<CellSpec> = spec.into_iter().collect();
        let mut index = BTreeMap::new();
        for (i, s) in spec.iter().enumerate() {
            if index.insert(s.id.clone(), CellId(i)).is_some() {
                return Err(ComplexError::DuplicateId(s.id.clone()));
            }
        }
        let mut boundary = Vec::with_capacity(spec.len());
        for s in &spec {
            let mut faces = Vec::with_capacity(s.faces.len());
            for face in &s.faces {
                let id = *index.get(face).ok_or_else(|| ComplexError::UnknownFace {
                    cell: s.id.clone(),
                    face: face.clone(),
                })?;
                let face_dim = spec[id.0].dim;
                if face_dim + 1 != s.dim {
                    return Err(ComplexError::FaceDimension {
                        cell: s.id.clone(),
                        dim: s.dim,
                        face: face.clone(),
                        face_dim,
                    });
                }
                faces.push(id);
            }
            boundary.push(Chain::from_cells(s.dim.saturating_sub(1), faces).cells);
        }
        let cells = spec
            .into_iter()
            .map(|s| Cell {
                name: s.id,
                dim: s.dim,
            })
            .collect();
        let k = Self::assemble(cells, boundary, index);
        k.check_boundary_squared()?;
        Ok(k)
    }

    fn assemble(
        cells: Vec<Cell>,
        boundary: Vec<Vec<CellId>>,
        index: BTreeMap<String, CellId>,
    ) -> Self {
        let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top + 1];
        let mut local = Vec::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            local.push(by_dim[c.dim].len());
            by_dim[c.dim].push(CellId(i));
        }
        let mut coboundary = vec![Vec::new(); cells.len()];
        for (i, faces) in boundary.iter().enumerate() {
            for f in faces {
                coboundary[f.0].push(CellId(i));
            }
        }
        ChainComplex {
            cells,
            boundary,
            coboundary,
            by_dim,
            local,
            index,
        }
    }

    fn check_boundary_squared(&self) -> Result<(), ComplexError> {
        for (i, faces) in self.boundary.iter().enumerate() {
            let dd = Chain::from_cells(
                0,
                faces.iter().flat_map(|f| self.boundary[f.0].iter().copied()),
            );
            if !dd.is_zero() {
                return Err(ComplexError::BoundaryNotCycle(self.cells[i].name.clone()));
            }
        }
        Ok(())
    }

    /// Cubical complex of a 2D binary image: every set pixel contributes a
    /// square with its edges and vertices, shared between neighbours.
    ///
    /// Cells are named `v_x_y`, `ex_x_y` (from `v_x_y` to `v_{x+1}_y`),
    /// `ey_x_y` (from `v_x_y` to `v_x_{y+1}`) and `sq_x_y`. Pixels are visited
    /// row by row and each one adds its missing vertices, then edges, then
    /// the square, so the cell order is a valid filtration.
    pub fn cubical(grid: &[Vec<bool>]) -> Result<Self, ComplexError> {
        let width = grid.first().map_or(0, Vec::len);
        if grid.is_empty() || width == 0 {
            return Err(ComplexError::EmptyGrid);
        }
        if grid.iter().any(|r| r.len() != width) {
            return Err(ComplexError::RaggedGrid);
        }
        let mut specs: Vec<CellSpec> = Vec::new();
        let mut seen: BTreeMap<String, ()> = BTreeMap::new();
        let mut push = |spec: CellSpec, specs: &mut Vec<CellSpec>| {
            if seen.insert(spec.id.clone(), ()).is_none() {
                specs.push(spec);
            }
        };
        let v = |x: usize, y: usize| format!("v_{x}_{y}");
        let ex = |x: usize, y: usize| format!("ex_{x}_{y}");
        let ey = |x: usize, y: usize| format!("ey_{x}_{y}");
        for (y, row) in grid.iter().enumerate() {
            for (x, &on) in row.iter().enumerate() {
                if !on {
                    continue;
                }
                for (vx, vy) in [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)] {
                    push(CellSpec::new(v(vx, vy), 0, Vec::<String>::new()), &mut specs);
                }
                push(CellSpec::new(ex(x, y), 1, [v(x, y), v(x + 1, y)]), &mut specs);
                push(CellSpec::new(ey(x, y), 1, [v(x, y), v(x, y + 1)]), &mut specs);
                push(CellSpec::new(ey(x + 1, y), 1, [v(x + 1, y), v(x + 1, y + 1)]), &mut specs);
                push(CellSpec::new(ex(x, y + 1), 1, [v(x, y + 1), v(x + 1, y + 1)]), &mut specs);
                push(
                    CellSpec::new(
                        format!("sq_{x}_{y}"),
                        2,
                        [ex(x, y), ey(x, y), ey(x + 1, y), ex(x, y + 1)],
                    ),
                    &mut specs,
                );
            }
        }
        Self::from_boundary_lists(specs)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Top dimension `n` (zero for the empty complex).
    pub fn dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn name(&self, id: CellId) -> &str {
        &self.cells[id.0].name
    }

    pub fn cell_dim(&self, id: CellId) -> usize {
        self.cells[id.0].dim
    }

    pub fn id(&self, name: &str) -> Option<CellId> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<CellId, ComplexError> {
        self.id(name)
            .ok_or_else(|| ComplexError::UnknownCell(name.to_string()))
    }

    /// Cells of dimension `q` in complex order (empty above the top dimension).
    pub fn cells_of_dim(&self, q: usize) -> &[CellId] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.cells_of_dim(q).len()
    }

    /// Position of a cell among the cells of its dimension.
    #[inline]
    pub fn local_index(&self, id: CellId) -> usize {
        self.local[id.0]
    }

    pub fn faces(&self, id: CellId) -> &[CellId] {
        &self.boundary[id.0]
    }

    pub fn cofaces(&self, id: CellId) -> &[CellId] {
        &self.coboundary[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).map(CellId)
    }

    /// Chain from cell names; all cells must share one dimension.
    pub fn chain<S: AsRef<str>>(&self, names: &[S]) -> Result<Chain, ComplexError> {
        let ids = names
            .iter()
            .map(|n| self.lookup(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        self.chain_of(&ids)
    }

    pub fn chain_of(&self, ids: &[CellId]) -> Result<Chain, ComplexError> {
        let Some(first) = ids.first() else {
            return Ok(Chain::zero(0));
        };
        let dim = self.cell_dim(*first);
        if let Some(other) = ids.iter().find(|c| self.cell_dim(**c) != dim) {
            return Err(ComplexError::MixedDimension(dim, self.cell_dim(*other)));
        }
        Ok(Chain::from_cells(dim, ids.iter().copied()))
    }

    pub fn names(&self, chain: &Chain) -> Vec<&str> {
        chain.support().iter().map(|&c| self.name(c)).collect()
    }

    pub fn boundary_of(&self, chain: &Chain) -> Chain {
        Chain::from_cells(
            chain.dim().saturating_sub(1),
            chain
                .support()
                .iter()
                .flat_map(|c| self.boundary[c.0].iter().copied()),
        )
    }

    pub fn coboundary_of(&self, chain: &Chain) -> Chain {
        Chain::from_cells(
            chain.dim() + 1,
            chain
                .support()
                .iter()
                .flat_map(|c| self.coboundary[c.0].iter().copied()),
        )
    }

    pub fn is_cycle(&self, chain: &Chain) -> bool {
        self.boundary_of(chain).is_zero()
    }

    /// Coordinates of a chain among the cells of its dimension.
    pub fn to_vector(&self, chain: &Chain) -> Gf2Vector {
        Gf2Vector::from_support(
            self.count(chain.dim()),
            chain.support().iter().map(|&c| self.local_index(c)),
        )
    }

    pub fn from_vector(&self, q: usize, v: &Gf2Vector) -> Chain {
        let cells = self.cells_of_dim(q);
        Chain {
            dim: q,
            cells: v.iter_ones().map(|i| cells[i]).collect(),
        }
    }

    /// Matrix of `∂_q`: rows are the (q-1)-cells, columns the q-cells.
    pub fn boundary_matrix(&self, q: usize) -> Gf2Matrix {
        let cols = self.count(q);
        if q == 0 {
            return Gf2Matrix::zeros(0, cols);
        }
        let rows = self.count(q - 1);
        Gf2Matrix::from_entries(
            rows,
            cols,
            self.cells_of_dim(q).iter().enumerate().flat_map(|(j, &c)| {
                self.boundary[c.0]
                    .iter()
                    .map(move |f| (self.local[f.0], j))
            }),
        )
        .expect("boundary entries are in range")
    }

    /// Betti number over GF(2) by rank-nullity: `dim ker ∂_q - rank ∂_{q+1}`.
    pub fn betti(&self, q: usize) -> usize {
        let n_q = self.count(q);
        let kernel = n_q - self.boundary_matrix(q).rank();
        kernel - self.boundary_matrix(q + 1).rank()
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.dim()).map(|q| self.betti(q)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim())
            .map(|q| {
                let c = self.count(q) as i64;
                if q % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum()
    }

    /// Closure of `cells` under the face relation, in complex order.
    pub fn closure(&self, cells: &[CellId]) -> Vec<CellId> {
        let mut keep = vec![false; self.len()];
        let mut stack: Vec<CellId> = cells.to_vec();
        while let Some(c) = stack.pop() {
            if !keep[c.0] {
                keep[c.0] = true;
                stack.extend_from_slice(&self.boundary[c.0]);
            }
        }
        (0..self.len()).filter(|&i| keep[i]).map(CellId).collect()
    }

    /// The smallest subcomplex containing `cells`. Cell order is inherited.
    pub fn induced_subcomplex(&self, cells: &[CellId]) -> ChainComplex {
        self.restrict(&self.closure(cells))
    }

    /// Subcomplex made of the first `len` cells. Valid only when every face
    /// precedes its cofaces; ids are preserved.
    pub fn prefix(&self, len: usize) -> ChainComplex {
        let keep: Vec<CellId> = (0..len).map(CellId).collect();
        debug_assert!(keep
            .iter()
            .all(|c| self.boundary[c.0].iter().all(|f| f.0 < len)));
        self.restrict(&keep)
    }

    /// Restriction to a face-closed, sorted set of cells.
    fn restrict(&self, keep: &[CellId]) -> ChainComplex {
        let mut remap = vec![usize::MAX; self.len()];
        for (new, old) in keep.iter().enumerate() {
            remap[old.0] = new;
        }
        let cells: Vec<Cell> = keep.iter().map(|c| self.cells[c.0].clone()).collect();
        let boundary = keep
            .iter()
            .map(|c| {
                self.boundary[c.0]
                    .iter()
                    .map(|f| CellId(remap[f.0]))
                    .collect()
            })
            .collect();
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), CellId(i)))
            .collect();
        Self::assemble(cells, boundary, index)
    }

    /// The dual complex: a q-cell becomes an (n-q)-cell and the boundary is
    /// the transpose of `∂`. Names gain a leading `*` (or lose one, so the
    /// construction is an involution). Cell order, and therefore every
    /// [`CellId`], is preserved.
    pub fn dual(&self) -> ChainComplex {
        let n = self.dim();
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| Cell {
                name: dual_name(&c.name),
                dim: n - c.dim,
            })
            .collect();
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.name.clone(), CellId(i)))
            .collect();
        let mut k = Self::assemble(cells, self.coboundary.clone(), index);
        // the dual of a complex with an empty top dimension keeps that dimension
        while k.by_dim.len() < n + 1 {
            k.by_dim.push(Vec::new());
        }
        k
    }

    /// Re-expresses a chain of `from` in this complex, matching cells by name.
    pub fn translate(&self, chain: &Chain, from: &ChainComplex) -> Result<Chain, ComplexError> {
        let ids = chain
            .support()
            .iter()
            .map(|&c| self.lookup(from.name(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Chain::from_cells(chain.dim(), ids))
    }

    /// Checks that `self` sits inside `other` with the same dimensions and
    /// boundaries (cells matched by name).
    pub fn check_subcomplex_of(&self, other: &ChainComplex) -> Result<(), ComplexError> {
        for id in self.ids() {
            let name = self.name(id);
            let Some(oid) = other.id(name) else {
                return Err(ComplexError::NotSubcomplex(format!("cell `{name}` missing")));
            };
            if other.cell_dim(oid) != self.cell_dim(id) {
                return Err(ComplexError::NotSubcomplex(format!(
                    "cell `{name}` changes dimension"
                )));
            }
            let mut mine: Vec<&str> = self.faces(id).iter().map(|&f| self.name(f)).collect();
            let mut theirs: Vec<&str> = other.faces(oid).iter().map(|&f| other.name(f)).collect();
            mine.sort_unstable();
            theirs.sort_unstable();
            if mine != theirs {
                return Err(ComplexError::NotSubcomplex(format!(
                    "cell `{name}` has a different boundary"
                )));
            }
        }
        Ok(())
    }

    /// Records that rebuild this complex through [`Self::from_boundary_lists`].
    pub fn to_specs(&self) -> Vec<CellSpec> {
        self.ids()
            .map(|c| CellSpec {
                id: self.name(c).to_string(),
                dim: self.cell_dim(c),
                faces: self.faces(c).iter().map(|&f| self.name(f).to_string()).collect(),
            })
            .collect()
    }
}

fn dual_name(name: &str) -> String {
    match name.strip_prefix('*') {
        Some(rest) => rest.to_string(),
        None => format!("*{name}"),
    }
}
