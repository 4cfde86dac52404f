//! Ways of combining complexes: disjoint union, cartesian product, and
//! gluing along labelled subcomplexes.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::complex::{CellRef, ChainComplexF2, ComplexBuilder};
use super::ComplexError;

/// A cell-level identification of the interface of the second complex with
/// that of the first: `b`-cell id -> `a`-cell id.
pub type CellMatching = BTreeMap<String, String>;

fn push_all(builder: &mut ComplexBuilder, c: &ChainComplexF2) {
    for cell in c.iter_cells() {
        builder.add_cell(c.cell_id(cell), cell.dim, c.faces_as_ids(cell));
    }
    for (name, set) in c.labels() {
        builder.label(name.clone(), set.iter().map(|&x| c.cell_id(x).to_string()));
    }
}

/// Disjoint union. Cells and labels of `a` are prefixed `a/`, those of `b`
/// are prefixed `b/`.
pub fn disjoint_union(a: &ChainComplexF2, b: &ChainComplexF2) -> ChainComplexF2 {
    let a = a.renamed(|id| format!("a/{id}"), |l| format!("a/{l}"));
    let b = b.renamed(|id| format!("b/{id}"), |l| format!("b/{l}"));
    let mut builder = ComplexBuilder::default();
    push_all(&mut builder, &a);
    push_all(&mut builder, &b);
    builder.build().expect("prefixes keep the two sides apart")
}

fn wrap(id: &str) -> String {
    if id.contains('×') {
        format!("({id})")
    } else {
        id.to_string()
    }
}

/// Identifier of the product cell `σ×τ`.
pub fn product_id(a: &str, b: &str) -> String {
    format!("{}×{}", wrap(a), wrap(b))
}

/// Cartesian product with cells `σ×τ` and mod-2 boundary `∂σ×τ + σ×∂τ`.
///
/// A label `L` of `a` becomes the label `L×` (that is, `L × b`); a label `M`
/// of `b` becomes `×M`.
pub fn product(a: &ChainComplexF2, b: &ChainComplexF2) -> ChainComplexF2 {
    let mut builder = ComplexBuilder::default();
    let a_cells: Vec<CellRef> = a.iter_cells().collect();
    let b_cells: Vec<CellRef> = b.iter_cells().collect();
    for &s in &a_cells {
        let s_id = a.cell_id(s);
        let s_faces = a.faces_as_ids(s);
        for &t in &b_cells {
            let t_id = b.cell_id(t);
            let t_faces = b.faces_as_ids(t);
            let faces = s_faces
                .iter()
                .map(|f| product_id(f, t_id))
                .chain(t_faces.iter().map(|f| product_id(s_id, f)));
            builder.add_cell(product_id(s_id, t_id), s.dim + t.dim, faces.collect::<Vec<_>>());
        }
    }
    for (name, set) in a.labels() {
        let ids = set.iter().flat_map(|&s| {
            b_cells
                .iter()
                .map(move |&t| product_id(a.cell_id(s), b.cell_id(t)))
        });
        builder.label(format!("{name}×"), ids.collect::<Vec<_>>());
    }
    for (name, set) in b.labels() {
        let ids = a_cells.iter().flat_map(|&s| {
            set.iter()
                .map(move |&t| product_id(a.cell_id(s), b.cell_id(t)))
        });
        builder.label(format!("×{name}"), ids.collect::<Vec<_>>());
    }
    builder
        .build()
        .expect("product of valid complexes is valid")
}

/// Pushout of `a` and `b` identifying the label `lb` of `b` with the label
/// `la` of `a` through `matching`.
///
/// The result keeps `a`'s identifiers. Cells of `b` outside the interface
/// keep theirs too, so callers should [`namespace`] `b` first; a collision
/// is an error. Both interface labels are consumed; all other labels are
/// carried over.
///
/// [`namespace`]: ChainComplexF2::namespaced
pub fn glue(
    a: &ChainComplexF2,
    la: &str,
    b: &ChainComplexF2,
    lb: &str,
    matching: &CellMatching,
) -> Result<ChainComplexF2, ComplexError> {
    let a_side = a.label(la)?;
    let b_side = b.label(lb)?;
    let mismatch = |msg: String| ComplexError::InterfaceMismatch(msg);

    if a_side.len() != b_side.len() || matching.len() != b_side.len() {
        return Err(mismatch(format!(
            "interface sizes differ: {la} has {}, {lb} has {}, matching has {}",
            a_side.len(),
            b_side.len(),
            matching.len()
        )));
    }
    let mut image_set = HashSet::new();
    for &cell in b_side {
        let id = b.cell_id(cell);
        let target = matching
            .get(id)
            .ok_or_else(|| mismatch(format!("interface cell {id} of {lb} is unmatched")))?;
        let t = a
            .lookup(target)
            .filter(|t| a_side.contains(t))
            .ok_or_else(|| mismatch(format!("{id} is sent to {target}, which is not in {la}")))?;
        if t.dim != cell.dim {
            return Err(mismatch(format!(
                "{id} has dimension {} but {target} has dimension {}",
                cell.dim, t.dim
            )));
        }
        if !image_set.insert(target.as_str()) {
            return Err(mismatch(format!("{target} is hit twice")));
        }
    }
    // Chain map check: ∂(m(c)) = m(∂c).
    for &cell in b_side {
        let id = b.cell_id(cell);
        let mapped: BTreeSet<&str> = b
            .faces_as_ids(cell)
            .iter()
            .map(|f| matching[f].as_str())
            .collect();
        let t = a.lookup(&matching[id]).expect("checked");
        let actual: BTreeSet<&str> = a.faces(t).iter().map(|&f| a.cells(t.dim - 1)[f].as_str()).collect();
        if mapped != actual {
            return Err(mismatch(format!(
                "boundary of {id} does not map onto the boundary of {}",
                matching[id]
            )));
        }
    }
    if let Some(extra) = matching.keys().find(|k| b.lookup(k).is_none_or(|c| !b_side.contains(&c))) {
        return Err(mismatch(format!("{extra} is not a cell of {lb}")));
    }

    let resolve = |id: &str| -> String {
        match matching.get(id) {
            Some(t) => t.clone(),
            None => id.to_string(),
        }
    };

    let mut builder = ComplexBuilder::default();
    for cell in a.iter_cells() {
        builder.add_cell(a.cell_id(cell), cell.dim, a.faces_as_ids(cell));
    }
    for cell in b.iter_cells() {
        if b_side.contains(&cell) {
            continue;
        }
        let id = b.cell_id(cell);
        if a.lookup(id).is_some() {
            return Err(ComplexError::CellCollision(id.to_string()));
        }
        let faces: Vec<String> = b.faces_as_ids(cell).iter().map(|f| resolve(f)).collect();
        builder.add_cell(id, cell.dim, faces);
    }
    for (name, set) in a.labels() {
        if name != la {
            builder.label(name.clone(), set.iter().map(|&c| a.cell_id(c).to_string()));
        }
    }
    for (name, set) in b.labels() {
        if name != lb {
            let ids: BTreeSet<String> = set.iter().map(|&c| resolve(b.cell_id(c))).collect();
            builder.label(name.clone(), ids);
        }
    }
    builder.build()
}

/// Splits the `k`-cell `id` into two `k`-cells `id'` and `id''` separated by
/// a new `(k-1)`-cell `id|`, with `∂id' = part + id|` and
/// `∂id'' = (∂id - part) + id|`. Every coface of `id` now sees both halves.
/// The result is chain-homotopy equivalent to the input.
///
/// `part` must be a subset of `∂id` whose boundary is a legal boundary for
/// the new cell: for an edge `part` is exactly one endpoint; for a 2-cell
/// the boundary of `part` must have zero or two vertices.
pub fn split_cell(c: &ChainComplexF2, id: &str, part: &[&str]) -> Result<ChainComplexF2, ComplexError> {
    let cell = c
        .lookup(id)
        .ok_or_else(|| ComplexError::UnknownCell(id.to_string()))?;
    if cell.dim == 0 {
        return Err(ComplexError::InvalidSplit(format!("{id} is a vertex")));
    }
    let faces: BTreeSet<String> = c.faces_as_ids(cell).into_iter().collect();
    let part: BTreeSet<String> = part.iter().map(|s| s.to_string()).collect();
    if !part.is_subset(&faces) {
        return Err(ComplexError::InvalidSplit(format!("part is not inside the boundary of {id}")));
    }
    if cell.dim == 1 && part.len() != 1 {
        return Err(ComplexError::InvalidSplit(format!(
            "edge {id} must be split at exactly one endpoint"
        )));
    }
    let separator = format!("{id}|");
    let first = format!("{id}'");
    let second = format!("{id}''");
    for new in [&separator, &first, &second] {
        if c.lookup(new).is_some() {
            return Err(ComplexError::CellCollision(new.clone()));
        }
    }
    let rest: Vec<String> = faces.difference(&part).cloned().collect();
    let part_refs: Vec<&str> = part.iter().map(String::as_str).collect();
    let separator_faces: Vec<String> = if cell.dim == 1 {
        Vec::new()
    } else {
        let dim = cell.dim - 1;
        c.chain_boundary(dim, &part_refs)?
            .into_iter()
            .map(|f| c.cells(dim - 1)[f].clone())
            .collect()
    };

    let mut builder = ComplexBuilder::default();
    for other in c.iter_cells() {
        if other == cell {
            builder.add_cell(separator.clone(), cell.dim - 1, separator_faces.clone());
            builder.add_cell(
                first.clone(),
                cell.dim,
                part.iter().cloned().chain([separator.clone()]).collect::<Vec<_>>(),
            );
            builder.add_cell(
                second.clone(),
                cell.dim,
                rest.iter().cloned().chain([separator.clone()]).collect::<Vec<_>>(),
            );
            continue;
        }
        let mut f = c.faces_as_ids(other);
        if other.dim == cell.dim + 1 {
            if let Some(p) = f.iter().position(|x| x == id) {
                f.swap_remove(p);
                f.push(first.clone());
                f.push(second.clone());
            }
        }
        builder.add_cell(c.cell_id(other), other.dim, f);
    }
    for (name, set) in c.labels() {
        let mut ids: Vec<String> = Vec::new();
        for &x in set {
            if x == cell {
                ids.extend([separator.clone(), first.clone(), second.clone()]);
            } else {
                ids.push(c.cell_id(x).to_string());
            }
        }
        builder.label(name.clone(), ids);
    }
    builder.build()
}
