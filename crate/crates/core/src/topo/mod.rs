//! Finite cell and simplicial complexes and their cohomology over `Q` or `F_p`.
//!
//! For finite complexes bounded and ordinary cellular cohomology coincide, so
//! the dimensions computed here serve as both.

pub mod mayer_vietoris;
pub mod subdivision;
pub mod volume;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{extend_basis, kernel_basis, sparse_from_entries, Field, SparseVec};

pub use mayer_vietoris::{mayer_vietoris_check, MayerVietorisVerdict, SequenceNode};
pub use subdivision::{barycentric_subdivision, subdivision_norm_check, Subdivision, SubdivisionVerdict};
pub use volume::{na_simplicial_volume, FundamentalCycleCertificate};

/// Integer chain `Σ c_i e_i` as `(cell index, coefficient)` pairs.
pub type IntChain = Vec<(usize, i64)>;

/// Runs `$body` with `$f` bound to `&Rationals` or `&PrimeField` for `$ch`.
macro_rules! over_field {
    ($ch:expr, |$f:ident| $body:expr) => {
        match $ch {
            0 => {
                let $f = &$crate::linalg::Rationals;
                $body
            }
            p => {
                $crate::valuation::require_prime(p)?;
                let $f = &$crate::linalg::PrimeField::new(p);
                $body
            }
        }
    };
}
pub(crate) use over_field;

/// A finite CW complex given by cellular boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    cells: Vec<Vec<String>>,
    /// `boundary[n][j]` is `∂` of the `j`-th `n`-cell; `boundary[0]` is empty.
    boundary: Vec<Vec<IntChain>>,
}

/// `boundary[k]` is the dense matrix of `∂_{k+1}`: rows are `k`-cells, columns `(k+1)`-cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDocument {
    pub cells: Vec<Vec<String>>,
    pub boundary: Vec<Vec<Vec<i64>>>,
}

impl CellComplex {
    /// Checks shapes and `∂∘∂ = 0`.
    pub fn new(cells: Vec<Vec<String>>, boundary: Vec<Vec<IntChain>>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Input("a complex needs at least one dimension of cells".into()));
        }
        if boundary.len() != cells.len() {
            return Err(Error::Input("one boundary list per dimension is required".into()));
        }
        for (n, cols) in boundary.iter().enumerate() {
            if cols.len() != cells[n].len() {
                return Err(Error::Input(format!("dimension {n}: {} cells but {} boundaries", cells[n].len(), cols.len())));
            }
            let below = if n == 0 { 0 } else { cells[n - 1].len() };
            if cols.iter().flatten().any(|&(i, _)| i >= below) {
                return Err(Error::Input(format!("boundary of a {n}-cell refers to a missing {}-cell", n as i64 - 1)));
            }
        }
        let cx = CellComplex {
            cells,
            boundary: boundary.into_iter().map(|cols| cols.into_iter().map(normalize_chain).collect()).collect(),
        };
        for n in 2..cx.cells.len() {
            for (j, col) in cx.boundary[n].iter().enumerate() {
                if !cx.boundary_of_chain(n - 1, col).is_empty() {
                    return Err(Error::Input(format!("∂∂ ≠ 0 on {}-cell {}", n, cx.cells[n][j])));
                }
            }
        }
        Ok(cx)
    }

    pub fn from_document(doc: &CellDocument) -> Result<Self> {
        let mut boundary = vec![vec![Vec::new(); doc.cells[0].len()]];
        if doc.boundary.len() + 1 != doc.cells.len() {
            return Err(Error::Input("need one boundary matrix per positive dimension".into()));
        }
        for (k, matrix) in doc.boundary.iter().enumerate() {
            let (rows, cols) = (doc.cells[k].len(), doc.cells[k + 1].len());
            if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
                return Err(Error::Input(format!("∂_{} must be a {rows}×{cols} matrix", k + 1)));
            }
            boundary.push(
                (0..cols).map(|j| (0..rows).filter(|&i| matrix[i][j] != 0).map(|i| (i, matrix[i][j])).collect()).collect(),
            );
        }
        Self::new(doc.cells.clone(), boundary)
    }

    pub fn to_document(&self) -> CellDocument {
        let boundary = (1..self.cells.len())
            .map(|n| {
                let mut m = vec![vec![0; self.cells[n].len()]; self.cells[n - 1].len()];
                for (j, col) in self.boundary[n].iter().enumerate() {
                    for &(i, c) in col {
                        m[i][j] = c;
                    }
                }
                m
            })
            .collect();
        CellDocument { cells: self.cells.clone(), boundary }
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    /// Number of `n`-cells (zero above the top dimension).
    pub fn size(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, Vec::len)
    }

    pub fn cells(&self, n: usize) -> &[String] {
        self.cells.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, n: usize, cell: usize) -> &IntChain {
        &self.boundary[n][cell]
    }

    /// `∂` of an integer `n`-chain.
    pub fn boundary_of_chain(&self, n: usize, chain: &IntChain) -> IntChain {
        if n == 0 {
            return Vec::new();
        }
        normalize_chain(
            chain.iter().flat_map(|&(j, c)| self.boundary[n][j].iter().map(move |&(i, d)| (i, c * d))).collect(),
        )
    }

    /// Rows of `δ^n : C^n → C^{n+1}`, one per `(n+1)`-cell.
    pub(crate) fn coboundary_rows<F: Field>(&self, field: &F, n: usize) -> Vec<SparseVec<F::Elem>> {
        match self.boundary.get(n + 1) {
            None => Vec::new(),
            Some(cols) => cols.iter().map(|col| int_row(field, col)).collect(),
        }
    }

    /// Cocycles, coboundaries and class representatives in degree `n`.
    pub(crate) fn cohomology_data<F: Field>(&self, field: &F, n: usize) -> CohomologyData<F::Elem> {
        if n > self.dimension() {
            return CohomologyData { coboundaries: Vec::new(), classes: Vec::new() };
        }
        let size = self.size(n);
        let cocycles = kernel_basis(field, self.coboundary_rows(field, n), size);
        let coboundaries = if n == 0 {
            Vec::new()
        } else {
            let mut images = vec![vec![field.zero(); size]; self.size(n - 1)];
            for (sigma, col) in self.boundary[n].iter().enumerate() {
                for &(tau, c) in col {
                    images[tau][sigma] = field.from_i64(c);
                }
            }
            images
        };
        let classes = extend_basis(field, &coboundaries, &cocycles);
        CohomologyData { coboundaries, classes }
    }
}

pub(crate) struct CohomologyData<E> {
    /// Spanning set of `B^n` (not necessarily independent).
    pub coboundaries: Vec<Vec<E>>,
    /// Cocycles whose classes form a basis of `H^n`.
    pub classes: Vec<Vec<E>>,
}

pub(crate) fn int_row<F: Field>(field: &F, chain: &IntChain) -> SparseVec<F::Elem> {
    sparse_from_entries(field, chain.iter().map(|&(i, c)| (i, field.from_i64(c))))
}

pub(crate) fn normalize_chain(chain: IntChain) -> IntChain {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (i, c) in chain {
        *acc.entry(i).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// `dim H^n(X; K)` for `n = 0..=dim X`.
pub fn cellular_cohomology_dims(x: &CellComplex, field_char: u64) -> Result<Vec<usize>> {
    over_field!(field_char, |f| Ok((0..=x.dimension()).map(|n| x.cohomology_data(f, n).classes.len()).collect()))
}

/// An abstract simplicial complex with simplices stored as increasing vertex
/// index tuples; the vertex order fixes the orientations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

/// Vertices and maximal simplices by vertex name; faces are closed automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDocument {
    pub vertices: Vec<String>,
    pub simplices: Vec<Vec<String>>,
}

impl SimplicialComplex {
    pub fn from_maximal(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<Self> {
        let unique: BTreeSet<&String> = vertices.iter().collect();
        if unique.len() != vertices.len() {
            return Err(Error::Input("duplicate vertex names".into()));
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new()];
        for v in 0..vertices.len() {
            by_dim[0].insert(vec![v]);
        }
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            if s.is_empty() || s.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::Input(format!("bad simplex {s:?}")));
            }
            if s.len() > 16 {
                return Err(Error::Budget("simplices of dimension above 15 are not supported".into()));
            }
            // Every nonempty subset is a face.
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        let simplices = by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        Ok(SimplicialComplex { vertices, simplices })
    }

    pub fn from_document(doc: &SimplicialDocument) -> Result<Self> {
        let index: BTreeMap<&str, usize> = doc.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let maximal = doc
            .simplices
            .iter()
            .map(|s| {
                s.iter()
                    .map(|v| index.get(v.as_str()).copied().ok_or_else(|| Error::Input(format!("unknown vertex {v:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_maximal(doc.vertices.clone(), &maximal)
    }

    pub fn to_document(&self) -> SimplicialDocument {
        SimplicialDocument {
            vertices: self.vertices.clone(),
            simplices: self.maximal().into_iter().map(|s| self.names(&s)).collect(),
        }
    }

    /// Simplices not contained in a larger one.
    pub fn maximal(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (d, layer) in self.simplices.iter().enumerate() {
            let above: BTreeSet<&Vec<usize>> = self.simplices.get(d + 1).map_or(BTreeSet::new(), |l| l.iter().collect());
            for s in layer {
                let covered = above.iter().any(|t| s.iter().all(|v| t.contains(v)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        self.simplices.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn names(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Position of a simplex given as an increasing index tuple.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.simplices.get(simplex.len().checked_sub(1)?)?.binary_search_by(|s| s.as_slice().cmp(simplex)).ok()
    }

    /// The cellular chain complex with `∂[v_0..v_n] = Σ (-1)^i [.. v̂_i ..]`.
    pub fn to_cell_complex(&self) -> CellComplex {
        let cells = (0..self.simplices.len())
            .map(|n| self.simplices[n].iter().map(|s| format!("[{}]", self.names(s).join(","))).collect())
            .collect();
        let boundary = (0..self.simplices.len())
            .map(|n| {
                self.simplices[n]
                    .iter()
                    .map(|s| {
                        if n == 0 {
                            return Vec::new();
                        }
                        (0..s.len())
                            .map(|i| {
                                let mut face = s.clone();
                                face.remove(i);
                                let sign = if i % 2 == 0 { 1 } else { -1 };
                                (self.index_of(&face).expect("faces are closed"), sign)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        CellComplex::new(cells, boundary).expect("simplicial boundaries square to zero")
    }

    /// The subcomplex spanned by `maximal` (vertex names), keeping this vertex order.
    pub fn subcomplex(&self, maximal: &[Vec<String>]) -> Result<SimplicialComplex> {
        let index: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut simplices = Vec::new();
        for s in maximal {
            let mut idx = s
                .iter()
                .map(|v| index.get(v.as_str()).copied().ok_or_else(|| Error::Input(format!("unknown vertex {v:?}"))))
                .collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            if self.index_of(&idx).is_none() {
                return Err(Error::Input(format!("{s:?} is not a simplex of the complex")));
            }
            simplices.push(idx);
        }
        self.induced(&simplices)
    }

    /// Subcomplex generated by simplices given in this complex's indices.
    pub(crate) fn induced(&self, maximal: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let used: BTreeSet<usize> = maximal.iter().flatten().copied().collect();
        let renumber: BTreeMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let vertices = used.iter().map(|&v| self.vertices[v].clone()).collect();
        let maximal: Vec<Vec<usize>> = maximal.iter().map(|s| s.iter().map(|v| renumber[v]).collect()).collect();
        SimplicialComplex::from_maximal(vertices, &maximal)
    }
}

/// Named example complexes.
pub fn builtin(name: &str) -> Result<Complex> {
    let simplicial = |vertices: usize, maximal: &[&[usize]]| -> Result<Complex> {
        let names = (0..vertices).map(|v| v.to_string()).collect();
        let maximal: Vec<Vec<usize>> = maximal.iter().map(|s| s.to_vec()).collect();
        SimplicialComplex::from_maximal(names, &maximal).map(Complex::Simplicial)
    };
    let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    match name {
        "point" => simplicial(1, &[&[0]]),
        "edge" => simplicial(2, &[&[0, 1]]),
        "circle3" => simplicial(3, &[&[0, 1], &[1, 2], &[0, 2]]),
        "sphere2" => simplicial(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]),
        "wedge2" => simplicial(5, &[&[0, 1], &[1, 2], &[0, 2], &[0, 3], &[3, 4], &[0, 4]]),
        "torus" => Ok(Complex::Simplicial(torus_grid(4, 3)?)),
        "circle_cw" => CellComplex::new(
            vec![names(&["v"]), names(&["e"])],
            vec![vec![Vec::new()], vec![Vec::new()]],
        )
        .map(Complex::Cell),
        "torus_cw" => CellComplex::new(
            vec![names(&["v"]), names(&["a", "b"]), names(&["f"])],
            vec![vec![Vec::new()], vec![Vec::new(), Vec::new()], vec![Vec::new()]],
        )
        .map(Complex::Cell),
        other => Err(Error::Input(format!(
            "unknown complex {other:?}; built-ins are point, edge, circle3, sphere2, wedge2, torus, circle_cw, torus_cw"
        ))),
    }
}

/// Vertex `(i, j)` of the `w × h` torus grid, named `i.j`.
pub fn torus_vertex(h: usize, i: usize, j: usize) -> usize {
    i * h + j
}

/// The triangles of square `(i, j)` in the `w × h` grid triangulation of the torus.
pub fn torus_square(w: usize, h: usize, i: usize, j: usize) -> [Vec<usize>; 2] {
    let v = |a: usize, b: usize| torus_vertex(h, a % w, b % h);
    [vec![v(i, j), v(i + 1, j), v(i + 1, j + 1)], vec![v(i, j), v(i, j + 1), v(i + 1, j + 1)]]
}

/// Grid triangulation of `S^1 × S^1`; needs `w, h ≥ 3`.
pub fn torus_grid(w: usize, h: usize) -> Result<SimplicialComplex> {
    if w < 3 || h < 3 {
        return Err(Error::Input("the torus grid needs at least 3×3 squares".into()));
    }
    let names = (0..w).flat_map(|i| (0..h).map(move |j| format!("{i}.{j}"))).collect();
    let maximal: Vec<Vec<usize>> = (0..w).flat_map(|i| (0..h).flat_map(move |j| torus_square(w, h, i, j))).collect();
    SimplicialComplex::from_maximal(names, &maximal)
}

/// The standard two-piece covers of the built-in complexes: the two circles of
/// `wedge2`, and for `torus` the cylinders over grid columns `{0,1,2}` and `{2,3,0}`.
pub fn builtin_cover(name: &str) -> Option<[Vec<Vec<String>>; 2]> {
    let named = |x: &SimplicialComplex, simplices: Vec<Vec<usize>>| simplices.iter().map(|s| x.names(s)).collect();
    match name {
        "wedge2" => {
            let Ok(Complex::Simplicial(x)) = builtin(name) else { return None };
            Some([
                named(&x, vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
                named(&x, vec![vec![0, 3], vec![3, 4], vec![0, 4]]),
            ])
        }
        "torus" => {
            let x = torus_grid(4, 3).ok()?;
            let cylinder = |cols: [usize; 3]| -> Vec<Vec<usize>> {
                cols.iter().flat_map(|&i| (0..3).flat_map(move |j| torus_square(4, 3, i, j))).collect()
            };
            Some([named(&x, cylinder([0, 1, 2])), named(&x, cylinder([2, 3, 0]))])
        }
        _ => None,
    }
}

/// Either representation, as read from a document or a built-in name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Complex {
    Cell(CellComplex),
    Simplicial(SimplicialComplex),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexDocument {
    Simplicial(SimplicialDocument),
    Cell(CellDocument),
}

impl Complex {
    pub fn from_document(doc: &ComplexDocument) -> Result<Self> {
        match doc {
            ComplexDocument::Simplicial(d) => SimplicialComplex::from_document(d).map(Complex::Simplicial),
            ComplexDocument::Cell(d) => CellComplex::from_document(d).map(Complex::Cell),
        }
    }

    pub fn cells(&self) -> CellComplex {
        match self {
            Complex::Cell(c) => c.clone(),
            Complex::Simplicial(s) => s.to_cell_complex(),
        }
    }

    pub fn simplicial(&self) -> Result<&SimplicialComplex> {
        match self {
            Complex::Simplicial(s) => Ok(s),
            Complex::Cell(_) => Err(Error::Input("this operation needs a simplicial complex".into())),
        }
    }
}
