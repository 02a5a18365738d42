//! Fixtures and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use hdvf_core::{CellId, CellSpec, Chain, ChainComplex, Gf2Matrix, Gf2Vector, Hdvf, Label};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vertex(name: &str) -> CellSpec {
    CellSpec::new(name, 0, Vec::<&str>::new())
}

pub fn appendix_example() -> ChainComplex {
    ChainComplex::from_boundary_lists([
        vertex("A"),
        vertex("B"),
        vertex("C"),
        vertex("D"),
        CellSpec::new("a", 1, ["A", "B"]),
        CellSpec::new("b", 1, ["A", "C"]),
        CellSpec::new("c", 1, ["B", "C"]),
        CellSpec::new("d", 1, ["B", "D"]),
        CellSpec::new("e", 1, ["C", "D"]),
        CellSpec::new("Phi", 2, ["a", "b", "c"]),
    ])
    .unwrap()
}

pub fn hollow_triangle() -> ChainComplex {
    ChainComplex::from_boundary_lists([
        vertex("V1"),
        vertex("V2"),
        vertex("V3"),
        CellSpec::new("e12", 1, ["V1", "V2"]),
        CellSpec::new("e23", 1, ["V2", "V3"]),
        CellSpec::new("e13", 1, ["V1", "V3"]),
    ])
    .unwrap()
}

/// Three squares in a row with holes A, B, C; B optionally filled.
pub fn strip(fill_middle: bool) -> ChainComplex {
    let mut specs: Vec<CellSpec> = ["t0", "t1", "t2", "t3", "b0", "b1", "b2", "b3"]
        .into_iter()
        .map(vertex)
        .collect();
    for (e, u, v) in [
        ("tA", "t0", "t1"),
        ("tB", "t1", "t2"),
        ("tC", "t2", "t3"),
        ("bA", "b0", "b1"),
        ("bB", "b1", "b2"),
        ("bC", "b2", "b3"),
        ("v0", "t0", "b0"),
        ("v1", "t1", "b1"),
        ("v2", "t2", "b2"),
        ("v3", "t3", "b3"),
    ] {
        specs.push(CellSpec::new(e, 1, [u, v]));
    }
    if fill_middle {
        specs.push(CellSpec::new("B", 2, ["tB", "bB", "v1", "v2"]));
    }
    ChainComplex::from_boundary_lists(specs).unwrap()
}

pub const HOLE_A: [&str; 4] = ["v0", "v1", "tA", "bA"];
pub const HOLE_B: [&str; 4] = ["v1", "v2", "tB", "bB"];
pub const HOLE_C: [&str; 4] = ["v2", "v3", "tC", "bC"];
pub const HOLES_AB: [&str; 6] = ["v0", "tA", "tB", "bA", "bB", "v2"];
pub const HOLES_BC: [&str; 6] = ["v1", "tB", "tC", "bB", "bC", "v3"];

/// Four holes in a 2×2 square grid (a 3×3 vertex lattice without faces).
pub fn four_holes() -> ChainComplex {
    let mut specs = Vec::new();
    for j in 0..3 {
        for i in 0..3 {
            specs.push(vertex(&format!("p{i}{j}")));
        }
    }
    for j in 0..3 {
        for i in 0..2 {
            specs.push(CellSpec::new(
                format!("h{i}{j}"),
                1,
                [format!("p{i}{j}"), format!("p{}{j}", i + 1)],
            ));
        }
    }
    for j in 0..2 {
        for i in 0..3 {
            specs.push(CellSpec::new(
                format!("v{i}{j}"),
                1,
                [format!("p{i}{j}"), format!("p{i}{}", j + 1)],
            ));
        }
    }
    ChainComplex::from_boundary_lists(specs).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    Torus,
    KleinBottle,
    ProjectivePlane,
}

/// An n×n square-cell decomposition of a closed surface obtained by
/// identifying the sides of a square.
pub fn surface(kind: Surface, n: usize) -> ChainComplex {
    assert!(n >= 3);
    let vert = |mut i: usize, mut j: usize| -> String {
        match kind {
            Surface::Torus => format!("v{}_{}", i % n, j % n),
            Surface::KleinBottle => {
                loop {
                    if i == n {
                        i = 0;
                    } else if j == n {
                        i = (n - i) % n;
                        j = 0;
                    } else {
                        break;
                    }
                }
                format!("v{i}_{j}")
            }
            Surface::ProjectivePlane => {
                if (i, j) == (n, 0) || (i, j) == (0, n) {
                    return "corner".into();
                }
                if (i, j) == (n, n) {
                    (i, j) = (0, 0);
                } else if j == n {
                    (i, j) = (n - i, 0);
                } else if i == n {
                    (i, j) = (0, n - j);
                }
                format!("v{i}_{j}")
            }
        }
    };
    // horizontal edge from (i,j) to (i+1,j), vertical from (i,j) to (i,j+1)
    let horizontal = |i: usize, j: usize| -> String {
        let (i, j) = match kind {
            Surface::Torus => (i, j % n),
            Surface::KleinBottle | Surface::ProjectivePlane if j == n => (n - 1 - i, 0),
            _ => (i, j),
        };
        format!("h{i}_{j}")
    };
    let vertical = |i: usize, j: usize| -> String {
        let (i, j) = match kind {
            Surface::Torus | Surface::KleinBottle => (i % n, j),
            Surface::ProjectivePlane if i == n => (0, n - 1 - j),
            _ => (i, j),
        };
        format!("u{i}_{j}")
    };
    let mut specs: Vec<CellSpec> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut push = |specs: &mut Vec<CellSpec>, spec: CellSpec| {
        if seen.insert(spec.id.clone()) {
            specs.push(spec);
        }
    };
    for j in 0..=n {
        for i in 0..=n {
            push(&mut specs, vertex(&vert(i, j)));
        }
    }
    for j in 0..=n {
        for i in 0..n {
            push(
                &mut specs,
                CellSpec::new(horizontal(i, j), 1, [vert(i, j), vert(i + 1, j)]),
            );
        }
    }
    for j in 0..n {
        for i in 0..=n {
            push(
                &mut specs,
                CellSpec::new(vertical(i, j), 1, [vert(i, j), vert(i, j + 1)]),
            );
        }
    }
    for j in 0..n {
        for i in 0..n {
            push(
                &mut specs,
                CellSpec::new(
                    format!("s{i}_{j}"),
                    2,
                    [horizontal(i, j), horizontal(i, j + 1), vertical(i, j), vertical(i + 1, j)],
                ),
            );
        }
    }
    ChainComplex::from_boundary_lists(specs).unwrap()
}

/// Closure of random triangles and edges on a few vertices, at most
/// `max_cells` cells.
pub fn random_simplicial(rng: &mut TestRng, max_cells: usize) -> ChainComplex {
    loop {
        let nv = rng.gen_range(3..=7);
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut triangles: Vec<(usize, usize, usize)> = Vec::new();
        let tries = rng.gen_range(1..=10);
        for _ in 0..tries {
            let mut vs: Vec<usize> = (0..nv).collect();
            vs.shuffle(rng);
            if rng.gen_bool(0.4) {
                let mut t = [vs[0], vs[1], vs[2]];
                t.sort_unstable();
                triangles.push((t[0], t[1], t[2]));
                edges.extend([(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]);
            } else {
                edges.push((vs[0].min(vs[1]), vs[0].max(vs[1])));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        triangles.sort_unstable();
        triangles.dedup();
        let mut used: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        used.sort_unstable();
        used.dedup();
        // a few isolated vertices too
        for v in 0..nv {
            if rng.gen_bool(0.1) && !used.contains(&v) {
                used.push(v);
            }
        }
        used.sort_unstable();
        let total = used.len() + edges.len() + triangles.len();
        if total > max_cells {
            continue;
        }
        let mut specs: Vec<CellSpec> = used.iter().map(|v| vertex(&format!("x{v}"))).collect();
        for &(a, b) in &edges {
            specs.push(CellSpec::new(format!("x{a}{b}"), 1, [format!("x{a}"), format!("x{b}")]));
        }
        for &(a, b, c) in &triangles {
            specs.push(CellSpec::new(
                format!("x{a}{b}{c}"),
                2,
                [format!("x{a}{b}"), format!("x{b}{c}"), format!("x{a}{c}")],
            ));
        }
        return ChainComplex::from_boundary_lists(specs).unwrap();
    }
}

/// A random pixel image turned into a cubical complex, with some squares
/// removed so that 1-holes appear. At most `max_cells` cells.
pub fn random_cubical(rng: &mut TestRng, max_cells: usize) -> ChainComplex {
    loop {
        let w = rng.gen_range(1..=4);
        let h = rng.gen_range(1..=3);
        let grid: Vec<Vec<bool>> = (0..h)
            .map(|_| (0..w).map(|_| rng.gen_bool(0.7)).collect())
            .collect();
        let k = ChainComplex::cubical(&grid).unwrap();
        if k.is_empty() {
            continue;
        }
        let keep: Vec<CellId> = k
            .ids()
            .filter(|&c| k.cell_dim(c) < 2 || rng.gen_bool(0.6))
            .collect();
        let sub = k.induced_subcomplex(&keep);
        if sub.len() <= max_cells {
            return sub;
        }
    }
}

/// Either kind of random complex.
pub fn random_complex(rng: &mut TestRng, max_cells: usize) -> ChainComplex {
    if rng.gen_bool(0.5) {
        random_simplicial(rng, max_cells)
    } else {
        random_cubical(rng, max_cells)
    }
}

/// Random cell order respecting faces.
pub fn random_filtration_order(rng: &mut TestRng, k: &ChainComplex) -> Vec<CellId> {
    let mut inserted = vec![false; k.len()];
    let mut order = Vec::with_capacity(k.len());
    while order.len() < k.len() {
        let ready: Vec<CellId> = k
            .ids()
            .filter(|&c| !inserted[c.0] && k.faces(c).iter().all(|f| inserted[f.0]))
            .collect();
        let c = *ready.choose(rng).unwrap();
        inserted[c.0] = true;
        order.push(c);
    }
    order
}

/// Grows a valid field by random pairings: a critical q-cell `σ` is paired
/// with a critical (q-1)-cell `π` when `d(σ)` contains `π`.
pub fn random_hdvf<'a>(rng: &mut TestRng, k: &'a ChainComplex, steps: usize) -> Hdvf<'a> {
    let mut x = Hdvf::all_critical(k);
    for _ in 0..steps {
        let mut candidates = Vec::new();
        for q in 1..=k.dim() {
            let layer = x.reduction().layer(q);
            let d = &layer.d_block;
            for (col, &sigma) in layer.critical.iter().enumerate() {
                for row in 0..d.rows() {
                    if d.get(row, col) {
                        let below = x.reduction().layer(q - 1);
                        candidates.push((k.cells_of_dim(q)[sigma], k.cells_of_dim(q - 1)[below.critical[row]]));
                    }
                }
            }
        }
        let Some(&(sigma, pi)) = candidates.choose(rng) else {
            break;
        };
        let mut labels = x.labels().to_vec();
        labels[sigma.0] = Label::Secondary;
        labels[pi.0] = Label::Primary;
        x = Hdvf::new(k, labels).expect("pairing along d keeps the field valid");
    }
    x
}

/// A perfect field reached by random pairings followed by completion.
pub fn random_perfect_hdvf<'a>(rng: &mut TestRng, k: &'a ChainComplex) -> Hdvf<'a> {
    let steps = rng.gen_range(0..=k.len() / 2);
    random_hdvf(rng, k, steps).complete()
}

/// Completion recomputing the whole reduction after every pairing, with
/// the same scan order and partner rule as `Hdvf::complete`.
pub fn naive_complete<'a>(x: &Hdvf<'a>) -> Hdvf<'a> {
    let k = x.complex();
    let mut x = x.clone();
    for c in k.ids() {
        if x.label(c) != Label::Critical || k.cell_dim(c) == 0 {
            continue;
        }
        let q = k.cell_dim(c);
        let layer = x.reduction().layer(q);
        let col = layer
            .critical
            .iter()
            .position(|&i| k.cells_of_dim(q)[i] == c)
            .unwrap();
        let d = &x.reduction().layer(q).d_block;
        let Some(row) = (0..d.rows()).find(|&r| d.get(r, col)) else {
            continue;
        };
        let pi = k.cells_of_dim(q - 1)[x.reduction().layer(q - 1).critical[row]];
        let mut labels = x.labels().to_vec();
        labels[c.0] = Label::Secondary;
        labels[pi.0] = Label::Primary;
        x = Hdvf::new(k, labels).unwrap();
    }
    x
}

fn zero_or(m: Option<&Gf2Matrix>, rows: usize, cols: usize) -> Gf2Matrix {
    m.cloned().unwrap_or_else(|| Gf2Matrix::zeros(rows, cols))
}

/// Checks the five reduction identities, returning the first failure.
pub fn check_reduction_axioms(x: &Hdvf<'_>) -> Result<(), String> {
    let k = x.complex();
    if k.is_empty() {
        return Ok(());
    }
    let n = k.dim();
    let r = x.reduction();
    let c = |q: usize| if q <= n { r.layer(q).critical.len() } else { 0 };
    let f = |q: usize| r.f(q).clone();
    let g = |q: usize| r.g(q).clone();
    // h_q : K_q → K_{q+1}; h_{-1} = 0
    let h = |q: isize| {
        if q < 0 {
            Gf2Matrix::zeros(k.count(0), 0)
        } else if q as usize > n {
            Gf2Matrix::zeros(0, 0)
        } else {
            r.h(q as usize).clone()
        }
    };
    let d = |q: usize| zero_or(if q <= n { Some(r.d(q)) } else { None }, if q == 0 { 0 } else { c(q - 1) }, c(q));
    let bd = |q: usize| k.boundary_matrix(q);
    let mul = |a: &Gf2Matrix, b: &Gf2Matrix| a.matmul(b).expect("shapes agree");
    let add = |a: &Gf2Matrix, b: &Gf2Matrix| a.add(b).expect("shapes agree");
    for q in 0..=n {
        if q >= 1 && mul(&f(q - 1), &bd(q)) != mul(&d(q), &f(q)) {
            return Err(format!("f∂ ≠ df in dimension {q}"));
        }
        if q >= 1 && mul(&bd(q), &g(q)) != mul(&g(q - 1), &d(q)) {
            return Err(format!("∂g ≠ gd in dimension {q}"));
        }
        if q < n && !mul(&f(q + 1), &h(q as isize)).is_zero() {
            return Err(format!("fh ≠ 0 in dimension {q}"));
        }
        if !mul(&h(q as isize), &g(q)).is_zero() {
            return Err(format!("hg ≠ 0 in dimension {q}"));
        }
        if q < n && !mul(&h(q as isize + 1), &h(q as isize)).is_zero() {
            return Err(format!("hh ≠ 0 in dimension {q}"));
        }
        if !mul(&f(q), &g(q)).is_identity() {
            return Err(format!("fg ≠ id in dimension {q}"));
        }
        let mut rhs = add(&Gf2Matrix::identity(k.count(q)), &mul(&bd(q + 1), &h(q as isize)));
        if q >= 1 {
            rhs = add(&rhs, &mul(&h(q as isize - 1), &bd(q)));
        }
        if mul(&g(q), &f(q)) != rhs {
            return Err(format!("gf ≠ id + ∂h + h∂ in dimension {q}"));
        }
    }
    Ok(())
}

/// All cycles in `x + Span(cells)` by enumerating the subsets of `cells`.
pub fn brute_force_cycles(k: &ChainComplex, x: &Chain, cells: &[CellId]) -> Vec<Chain> {
    let q = x.dim();
    let m = k.count(q.saturating_sub(1));
    let boundary = |c: CellId| -> Gf2Vector {
        if q == 0 {
            Gf2Vector::zeros(0)
        } else {
            Gf2Vector::from_support(m, k.faces(c).iter().map(|&f| k.local_index(f)))
        }
    };
    let parts: Vec<Gf2Vector> = cells.iter().map(|&c| boundary(c)).collect();
    let mut base = if q == 0 { Gf2Vector::zeros(0) } else { Gf2Vector::zeros(m) };
    for &c in x.support() {
        base += &boundary(c);
    }
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << cells.len()) {
        let mut b = base.clone();
        for (i, p) in parts.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b += p;
            }
        }
        if b.is_zero() {
            let extra = Chain::from_cells(q, (0..cells.len()).filter(|i| mask >> i & 1 == 1).map(|i| cells[i]));
            found.push(x.add(&extra));
        }
    }
    found
}

/// Random q-chain, possibly zero.
pub fn random_chain(rng: &mut TestRng, k: &ChainComplex, q: usize) -> Chain {
    Chain::from_cells(
        q,
        k.cells_of_dim(q).iter().copied().filter(|_| rng.gen_bool(0.4)),
    )
}

/// Rank of the classes of `chains` in `H_q`: `rank[chains | ∂_{q+1}] - rank ∂_{q+1}`.
pub fn homology_rank(k: &ChainComplex, q: usize, chains: &[Chain]) -> usize {
    let b = k.boundary_matrix(q + 1);
    let mut cols: Vec<Gf2Vector> = (0..b.cols()).map(|j| b.column(j)).collect();
    cols.extend(chains.iter().map(|c| k.to_vector(c)));
    Gf2Matrix::from_column_vectors(k.count(q), &cols).rank() - b.rank()
}

/// Sorted multiset of `(q, birth, death)` from an index-based column reduction
/// written independently of the library.
pub fn reduction_pairs(k: &ChainComplex) -> Vec<(usize, usize, Option<usize>)> {
    let n = k.len();
    let mut cols: Vec<std::collections::BTreeSet<usize>> =
        k.ids().map(|c| k.faces(c).iter().map(|f| f.0).collect()).collect();
    let mut low_owner: std::collections::HashMap<usize, usize> = Default::default();
    let mut out = Vec::new();
    let mut dead = vec![false; n];
    for j in 0..n {
        while let Some(&low) = cols[j].iter().next_back() {
            let Some(&o) = low_owner.get(&low) else { break };
            let other = cols[o].clone();
            cols[j] = cols[j].symmetric_difference(&other).copied().collect();
        }
        if let Some(&low) = cols[j].iter().next_back() {
            low_owner.insert(low, j);
            dead[low] = true;
            out.push((k.cell_dim(CellId(low)), low + 1, Some(j + 1)));
        }
    }
    for j in 0..n {
        if cols[j].is_empty() && !dead[j] {
            out.push((k.cell_dim(CellId(j)), j + 1, None));
        }
    }
    out.sort_unstable();
    out
}
