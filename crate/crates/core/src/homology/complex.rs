use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::bitmatrix::BitMatrixF2;
use super::ComplexError;

/// Position of a cell: its dimension and its index among cells of that
/// dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub dim: usize,
    pub index: usize,
}

/// Mod-2 Betti numbers, `b[k] = dim H_k(·; Z/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler(&self) -> i64 {
        alternating_sum(&self.0)
    }

    pub fn get(&self, k: usize) -> usize {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Künneth convolution: Betti vector of a product over a field.
    pub fn convolve(&self, other: &BettiVector) -> BettiVector {
        if self.0.is_empty() || other.0.is_empty() {
            return BettiVector::default();
        }
        let mut out = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        BettiVector(out)
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

impl PartialEq<[usize]> for BettiVector {
    fn eq(&self, other: &[usize]) -> bool {
        self.0 == other
    }
}

impl<const N: usize> PartialEq<[usize; N]> for BettiVector {
    fn eq(&self, other: &[usize; N]) -> bool {
        self.0 == other
    }
}

fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// A finite CW complex with mod-2 incidences.
///
/// The boundary of a `k`-cell is the set of `(k-1)`-cells that occur an odd
/// number of times in its attaching map. Named subcomplexes (labels) mark
/// the interfaces used for gluing.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplexF2 {
    cells: Vec<Vec<String>>,
    index: HashMap<String, CellRef>,
    // boundary[k][i]: sorted indices of the faces (in dimension k - 1) of cell i.
    boundary: Vec<Vec<Vec<usize>>>,
    labels: BTreeMap<String, BTreeSet<CellRef>>,
}

impl fmt::Debug for ChainComplexF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplexF2")
            .field("cell_counts", &self.cell_counts())
            .field("labels", &self.labels.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl ChainComplexF2 {
    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn empty() -> Self {
        ComplexBuilder::default().build().expect("empty complex is valid")
    }

    /// Top dimension plus one; zero for the empty complex.
    pub fn num_dims(&self) -> usize {
        self.cells.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells(&self, dim: usize) -> &[String] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell_id(&self, cell: CellRef) -> &str {
        &self.cells[cell.dim][cell.index]
    }

    pub fn lookup(&self, id: &str) -> Option<CellRef> {
        self.index.get(id).copied()
    }

    /// Face indices (in dimension `cell.dim - 1`).
    pub fn faces(&self, cell: CellRef) -> &[usize] {
        &self.boundary[cell.dim][cell.index]
    }

    pub fn face_ids(&self, id: &str) -> Option<Vec<&str>> {
        let c = self.lookup(id)?;
        if c.dim == 0 {
            return Some(Vec::new());
        }
        Some(
            self.faces(c)
                .iter()
                .map(|&f| self.cells[c.dim - 1][f].as_str())
                .collect(),
        )
    }

    /// All cells, dimension by dimension.
    pub fn iter_cells(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(dim, v)| (0..v.len()).map(move |index| CellRef { dim, index }))
    }

    pub fn labels(&self) -> &BTreeMap<String, BTreeSet<CellRef>> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Result<&BTreeSet<CellRef>, ComplexError> {
        self.labels
            .get(name)
            .ok_or_else(|| ComplexError::UnknownLabel(name.to_string()))
    }

    pub fn label_ids(&self, name: &str) -> Result<Vec<&str>, ComplexError> {
        Ok(self.label(name)?.iter().map(|&c| self.cell_id(c)).collect())
    }

    /// Restriction of the complex to a label, as a complex of its own.
    pub fn label_subcomplex(&self, name: &str) -> Result<ChainComplexF2, ComplexError> {
        let cells = self.label(name)?;
        let mut b = ComplexBuilder::default();
        for &c in cells {
            let faces = self.faces_as_ids(c);
            b.add_cell(self.cell_id(c), c.dim, faces);
        }
        b.build()
    }

    pub(crate) fn faces_as_ids(&self, c: CellRef) -> Vec<String> {
        if c.dim == 0 {
            return Vec::new();
        }
        self.faces(c)
            .iter()
            .map(|&f| self.cells[c.dim - 1][f].clone())
            .collect()
    }

    /// Adds a label for an existing set of cells.
    pub fn with_label<S: AsRef<str>>(
        mut self,
        name: &str,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<Self, ComplexError> {
        if self.labels.contains_key(name) {
            return Err(ComplexError::DuplicateLabel(name.to_string()));
        }
        let mut set = BTreeSet::new();
        for id in ids {
            let id = id.as_ref();
            let c = self.lookup(id).ok_or_else(|| ComplexError::LabelUnknownCell {
                label: name.to_string(),
                cell: id.to_string(),
            })?;
            set.insert(c);
        }
        self.labels.insert(name.to_string(), set);
        if let Err(e) = self.check_labels_closed() {
            self.labels.remove(name);
            return Err(e);
        }
        Ok(self)
    }

    /// Same complex without any labels.
    pub fn without_labels(mut self) -> Self {
        self.labels.clear();
        self
    }

    pub fn euler_char(&self) -> i64 {
        alternating_sum(&self.cell_counts())
    }

    /// Boundary matrix of `∂_k`, one row per `k`-cell. `None` when there are
    /// no `k`-cells or `k = 0`.
    pub fn boundary_matrix(&self, k: usize) -> Option<BitMatrixF2> {
        if k == 0 || k >= self.cells.len() {
            return None;
        }
        Some(BitMatrixF2::from_row_supports(
            &self.boundary[k],
            self.cells[k - 1].len(),
        ))
    }

    pub fn boundary_ranks(&self) -> Vec<usize> {
        (0..=self.cells.len())
            .map(|k| self.boundary_matrix(k).map_or(0, |m| m.rank()))
            .collect()
    }

    /// Mod-2 Betti numbers, `b[k] = n_k - rank ∂_k - rank ∂_{k+1}`.
    pub fn betti(&self) -> BettiVector {
        let ranks = self.boundary_ranks();
        BettiVector(
            self.cells
                .iter()
                .enumerate()
                .map(|(k, v)| v.len() - ranks[k] - ranks[k + 1])
                .collect(),
        )
    }

    /// Verifies `∂∂ = 0` for every cell.
    pub fn check_boundary_squared(&self) -> Result<(), ComplexError> {
        for k in 2..self.cells.len() {
            for (i, faces) in self.boundary[k].iter().enumerate() {
                let mut parity: HashMap<usize, bool> = HashMap::new();
                for &f in faces {
                    for &ff in &self.boundary[k - 1][f] {
                        *parity.entry(ff).or_default() ^= true;
                    }
                }
                if parity.values().any(|&odd| odd) {
                    return Err(ComplexError::BoundaryNotCycle {
                        cell: self.cells[k][i].clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Boundary of a `dim`-chain given as a set of cell ids (mod 2).
    pub fn chain_boundary(&self, dim: usize, chain: &[&str]) -> Result<BTreeSet<usize>, ComplexError> {
        let mut out = BTreeSet::new();
        for &id in chain {
            let c = self.lookup(id).ok_or_else(|| ComplexError::UnknownCell(id.to_string()))?;
            if c.dim != dim {
                return Err(ComplexError::FaceDimension {
                    cell: "<chain>".into(),
                    face: id.to_string(),
                    expected: dim,
                    found: c.dim,
                });
            }
            if dim == 0 {
                continue;
            }
            for &f in self.faces(c) {
                if !out.remove(&f) {
                    out.insert(f);
                }
            }
        }
        Ok(out)
    }

    /// Whether the mod-2 `dim`-chain `chain` is a boundary, i.e. represents
    /// the zero class in `H_dim`. Errors unless the chain is a cycle.
    pub fn is_null_homologous(&self, dim: usize, chain: &[&str]) -> Result<bool, ComplexError> {
        if !self.chain_boundary(dim, chain)?.is_empty() {
            return Err(ComplexError::NotACycle);
        }
        let mut support: Vec<usize> = Vec::new();
        for &id in chain {
            let idx = self.lookup(id).expect("checked above").index;
            if let Some(p) = support.iter().position(|&s| s == idx) {
                support.swap_remove(p);
            } else {
                support.push(idx);
            }
        }
        if support.is_empty() {
            return Ok(true);
        }
        let n = self.cells[dim].len();
        let mut m = match self.boundary_matrix(dim + 1) {
            Some(m) => m,
            None => BitMatrixF2::zeros(0, n),
        };
        let before = m.rank();
        m.push_row(&support);
        Ok(m.rank() == before)
    }

    /// Whether the sum of all top-dimensional cells is a mod-2 cycle, i.e.
    /// the complex carries a mod-2 fundamental class.
    pub fn has_fundamental_class(&self) -> bool {
        let Some(top) = self.dim() else {
            return false;
        };
        if top == 0 {
            return self.cells[0].len() == 1;
        }
        let mut parity = vec![false; self.cells[top - 1].len()];
        for faces in &self.boundary[top] {
            for &f in faces {
                parity[f] ^= true;
            }
        }
        !self.cells[top].is_empty() && parity.iter().all(|odd| !odd)
    }

    /// Number of connected components of the 1-skeleton (union-find).
    pub fn components(&self) -> usize {
        let n = self.cells(0).len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = n;
        if self.cells.len() > 1 {
            for faces in &self.boundary[1] {
                if let [a, b] = faces[..] {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        count -= 1;
                    }
                }
            }
        }
        count
    }

    /// Renames every cell `id` to `{prefix}/{id}`. Label names are kept.
    pub fn namespaced(&self, prefix: &str) -> ChainComplexF2 {
        self.renamed(|id| format!("{prefix}/{id}"), |l| l.to_string())
    }

    pub(crate) fn renamed(
        &self,
        cell: impl Fn(&str) -> String,
        label: impl Fn(&str) -> String,
    ) -> ChainComplexF2 {
        let cells: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|v| v.iter().map(|id| cell(id)).collect())
            .collect();
        let mut index = HashMap::with_capacity(self.index.len());
        for (dim, v) in cells.iter().enumerate() {
            for (i, id) in v.iter().enumerate() {
                let prev = index.insert(id.clone(), CellRef { dim, index: i });
                assert!(prev.is_none(), "renaming produced a duplicate id {id}");
            }
        }
        ChainComplexF2 {
            cells,
            index,
            boundary: self.boundary.clone(),
            labels: self
                .labels
                .iter()
                .map(|(k, v)| (label(k), v.clone()))
                .collect(),
        }
    }
}

/// Accumulates cells by identifier; validation happens in [`build`].
///
/// [`build`]: ComplexBuilder::build
#[derive(Debug, Default, Clone)]
pub struct ComplexBuilder {
    cells: Vec<(String, usize, Vec<String>)>,
    labels: Vec<(String, Vec<String>)>,
}

impl ComplexBuilder {
    pub fn add_cell<S: Into<String>>(
        &mut self,
        id: impl Into<String>,
        dim: usize,
        faces: impl IntoIterator<Item = S>,
    ) -> &mut Self {
        self.cells
            .push((id.into(), dim, faces.into_iter().map(Into::into).collect()));
        self
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.add_cell(id, 0, Vec::<String>::new())
    }

    pub fn label<S: Into<String>>(
        &mut self,
        name: impl Into<String>,
        ids: impl IntoIterator<Item = S>,
    ) -> &mut Self {
        self.labels
            .push((name.into(), ids.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(&self) -> Result<ChainComplexF2, ComplexError> {
        let num_dims = self.cells.iter().map(|c| c.1 + 1).max().unwrap_or(0);
        let mut cells: Vec<Vec<String>> = vec![Vec::new(); num_dims];
        let mut index: HashMap<String, CellRef> = HashMap::with_capacity(self.cells.len());
        for (id, dim, _) in &self.cells {
            let r = CellRef {
                dim: *dim,
                index: cells[*dim].len(),
            };
            if index.insert(id.clone(), r).is_some() {
                return Err(ComplexError::DuplicateCell(id.clone()));
            }
            cells[*dim].push(id.clone());
        }

        let mut boundary: Vec<Vec<Vec<usize>>> =
            cells.iter().map(|v| vec![Vec::new(); v.len()]).collect();
        for (id, dim, faces) in &self.cells {
            let me = index[id];
            if *dim == 0 {
                if !faces.is_empty() {
                    return Err(ComplexError::VertexWithBoundary(id.clone()));
                }
                continue;
            }
            let mut out = Vec::with_capacity(faces.len());
            for face in faces {
                let f = index.get(face).ok_or_else(|| ComplexError::UnknownFace {
                    cell: id.clone(),
                    face: face.clone(),
                })?;
                if f.dim + 1 != *dim {
                    return Err(ComplexError::FaceDimension {
                        cell: id.clone(),
                        face: face.clone(),
                        expected: dim - 1,
                        found: f.dim,
                    });
                }
                out.push(f.index);
            }
            out.sort_unstable();
            if *dim == 1 && !(out.is_empty() || out.len() == 2) {
                return Err(ComplexError::EdgeEndpoints {
                    cell: id.clone(),
                    count: out.len(),
                });
            }
            if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
                return Err(ComplexError::RepeatedFace {
                    cell: id.clone(),
                    face: cells[dim - 1][w[0]].clone(),
                });
            }
            boundary[*dim][me.index] = out;
        }

        let mut labels = BTreeMap::new();
        for (name, ids) in &self.labels {
            let mut set = BTreeSet::new();
            for id in ids {
                let c = index.get(id).ok_or_else(|| ComplexError::LabelUnknownCell {
                    label: name.clone(),
                    cell: id.clone(),
                })?;
                set.insert(*c);
            }
            if labels.insert(name.clone(), set).is_some() {
                return Err(ComplexError::DuplicateLabel(name.clone()));
            }
        }

        let complex = ChainComplexF2 {
            cells,
            index,
            boundary,
            labels,
        };
        complex.check_boundary_squared()?;
        complex.check_labels_closed()?;
        Ok(complex)
    }
}

impl ChainComplexF2 {
    fn check_labels_closed(&self) -> Result<(), ComplexError> {
        for (name, set) in &self.labels {
            for &c in set {
                if c.dim == 0 {
                    continue;
                }
                for &f in self.faces(c) {
                    let face = CellRef {
                        dim: c.dim - 1,
                        index: f,
                    };
                    if !set.contains(&face) {
                        return Err(ComplexError::LabelNotClosed {
                            label: name.clone(),
                            cell: self.cell_id(c).to_string(),
                            face: self.cell_id(face).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
