//! Cell models of the spaces making up the real loci of `Sym^2(X)` and
//! `Sym^3(X)` for an M-curve `X` of genus `g`.
//!
//! The real curve `X^σ` is `g + 1` circles `C_1, ..., C_{g+1}`, and one half
//! `X_1` of `X - X^σ` is a sphere with `g + 1` holes. The real loci are
//! assembled from `X_1`, the circles, and the symmetric powers of a circle:
//! `Sym^2(S^1)` is a Möbius band whose boundary is the diagonal, and
//! `Sym^3(S^1)` is a solid torus fibred over `S^1` by 2-simplices.

use num_bigint::BigUint;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::genfun::Genus;
use crate::homology::{
    glue, product, product_id, BettiVector, CellMatching, ChainComplexF2, ComplexError, CwFile,
};

fn matching<'a>(pairs: impl IntoIterator<Item = (String, &'a str)>) -> CellMatching {
    pairs.into_iter().map(|(b, a)| (b, a.to_string())).collect()
}

pub fn point() -> ChainComplexF2 {
    let mut b = ChainComplexF2::builder();
    b.vertex("p");
    b.build().expect("point")
}

/// One vertex, one loop.
pub fn circle() -> ChainComplexF2 {
    let mut b = ChainComplexF2::builder();
    b.vertex("v").add_cell("e", 1, Vec::<String>::new());
    b.build().expect("circle")
}

/// Disc with its rim labelled `boundary`.
pub fn disc() -> ChainComplexF2 {
    let mut b = ChainComplexF2::builder();
    b.vertex("v")
        .add_cell("e", 1, Vec::<String>::new())
        .add_cell("D", 2, ["e"])
        .label("boundary", ["v", "e"]);
    b.build().expect("disc")
}

pub fn torus() -> ChainComplexF2 {
    product(&circle(), &circle())
}

pub fn three_torus() -> ChainComplexF2 {
    product(&torus(), &circle())
}

/// Two Möbius bands glued along their boundary circles.
pub fn klein_bottle() -> ChainComplexF2 {
    let m = build_sym2_circle();
    let other = m.namespaced("M2");
    glue(&m, DIAGONAL, &other, DIAGONAL, &mobius_rim_matching("M2", "d", "w"))
        .expect("Möbius rims match")
}

/// A disc glued to a Möbius band along their boundary circles.
pub fn projective_plane() -> ChainComplexF2 {
    let m = build_sym2_circle();
    let d = disc().namespaced("D");
    let pairs = [("D/v".to_string(), "d"), ("D/e".to_string(), "w")];
    glue(&m, DIAGONAL, &d, "boundary", &matching(pairs)).expect("rims match")
}

/// Label of the boundary circle of the Möbius band model.
pub const DIAGONAL: &str = "diagonal";
/// Labels on the boundary torus of the solid torus model.
pub const SOLID_TORUS_BOUNDARY: &str = "boundary";
pub const FIBER_BOUNDARY: &str = "fiber_boundary";
pub const SECTION: &str = "section";

fn mobius_rim_matching(prefix: &str, vertex: &str, edge: &str) -> CellMatching {
    matching([
        (format!("{prefix}/d"), vertex),
        (format!("{prefix}/w"), edge),
    ])
}

/// Half of `X - X^σ`: a planar surface with `g + 1` boundary circles.
#[derive(Debug, Clone)]
pub struct HalfSurface {
    pub g: Genus,
    pub complex: ChainComplexF2,
}

impl HalfSurface {
    /// Label of the `i`-th boundary circle, `1 <= i <= g + 1`.
    pub fn boundary_label(i: u32) -> String {
        format!("C{i}")
    }

    pub fn boundary_vertex(i: u32) -> String {
        format!("v{i}")
    }

    pub fn boundary_edge(i: u32) -> String {
        format!("e{i}")
    }

    pub fn num_boundary_circles(&self) -> u32 {
        self.g.get() + 1
    }
}

/// Sphere with `g + 1` holes as a single polygon.
///
/// Boundary circle `i` is the vertex `v{i}` with the loop `e{i}`; the arcs
/// `a{i}` join `v1` to `v{i}`; the face `F` is attached along
/// `e1 · a2 e2 a2⁻¹ · a3 e3 a3⁻¹ ⋯`, whose mod-2 boundary is every `e{i}`.
pub fn build_half_surface(g: Genus) -> HalfSurface {
    let circles = g.get() + 1;
    let mut b = ChainComplexF2::builder();
    for i in 1..=circles {
        b.vertex(HalfSurface::boundary_vertex(i));
        b.add_cell(HalfSurface::boundary_edge(i), 1, Vec::<String>::new());
        b.label(
            HalfSurface::boundary_label(i),
            [HalfSurface::boundary_vertex(i), HalfSurface::boundary_edge(i)],
        );
    }
    for i in 2..=circles {
        b.add_cell(format!("a{i}"), 1, ["v1".to_string(), HalfSurface::boundary_vertex(i)]);
    }
    b.add_cell("F", 2, (1..=circles).map(HalfSurface::boundary_edge).collect::<Vec<_>>());
    HalfSurface {
        g,
        complex: b.build().expect("half surface"),
    }
}

/// `Sym^2(S^1)` as a Möbius band: the mapping cylinder of the double cover
/// of the core circle.
///
/// Core vertex `c` with loop `z`; boundary vertex `d` with loop `w` (the
/// diagonal); radial edge `r` from `d` to `c`. The face is attached along
/// `w r z z r⁻¹`, so mod 2 its boundary is `w` alone: the diagonal is twice
/// the core and vanishes in `H_1(·; Z/2)`.
pub fn build_sym2_circle() -> ChainComplexF2 {
    let mut b = ChainComplexF2::builder();
    b.vertex("c").vertex("d");
    b.add_cell("z", 1, Vec::<String>::new())
        .add_cell("w", 1, Vec::<String>::new())
        .add_cell("r", 1, ["d", "c"])
        .add_cell("F", 2, ["w"]);
    b.label(DIAGONAL, ["d", "w"]);
    b.build().expect("Möbius band")
}

/// `Sym^3(S^1)` as a solid torus.
///
/// The boundary torus has vertex `u`, meridian `m` (the boundary of a fibre
/// of the product map to `S^1`), longitude `l` (a section), and 2-cell `T`.
/// The meridian disc `D` and the 3-cell `E` fill it in; mod 2, `∂E = T`
/// because `D` is met twice.
pub fn build_sym3_circle() -> ChainComplexF2 {
    let mut b = ChainComplexF2::builder();
    b.vertex("u");
    b.add_cell("m", 1, Vec::<String>::new())
        .add_cell("l", 1, Vec::<String>::new())
        .add_cell("T", 2, Vec::<String>::new())
        .add_cell("D", 2, ["m"])
        .add_cell("E", 3, ["T"]);
    b.label(SOLID_TORUS_BOUNDARY, ["u", "m", "l", "T"])
        .label(FIBER_BOUNDARY, ["u", "m"])
        .label(SECTION, ["u", "l"]);
    b.build().expect("solid torus")
}

/// The closed surface `Y`: the half surface with a Möbius band glued to each
/// boundary circle along the band's diagonal.
pub fn build_y(g: Genus) -> ChainComplexF2 {
    let half = build_half_surface(g);
    let mut acc = half.complex;
    for i in 1..=half.g.get() + 1 {
        let prefix = format!("M{i}");
        let band = build_sym2_circle().namespaced(&prefix);
        let v = HalfSurface::boundary_vertex(i);
        let e = HalfSurface::boundary_edge(i);
        acc = glue(
            &acc,
            &HalfSurface::boundary_label(i),
            &band,
            DIAGONAL,
            &mobius_rim_matching(&prefix, &v, &e),
        )
        .expect("Möbius rim matches boundary circle");
    }
    acc
}

/// `S^1 × X_1`. Its boundary tori carry the labels `×C{i}`; the curves
/// `A1 = {pt} × C_1` and `A2 = S^1 × {pt}` on the first torus are labelled
/// as well.
pub fn circle_times_half(g: Genus) -> ChainComplexF2 {
    let p = product(&circle(), &build_half_surface(g).complex);
    let (v1, e1) = (HalfSurface::boundary_vertex(1), HalfSurface::boundary_edge(1));
    p.with_label(CURVE_A1, [product_id("v", &v1), product_id("v", &e1)])
        .and_then(|p| p.with_label(CURVE_A2, [product_id("v", &v1), product_id("e", &v1)]))
        .expect("curves lie in the product")
}

/// Curve along which the repeated point moves: `{(λ, λ, 1)}`.
pub const CURVE_A1: &str = "A1";
/// Curve along which the single point moves: `{(1, 1, λ)}`.
pub const CURVE_A2: &str = "A2";

fn boundary_torus_label(i: u32) -> String {
    format!("×{}", HalfSurface::boundary_label(i))
}

fn boundary_torus_cells(i: u32) -> [String; 4] {
    let v = HalfSurface::boundary_vertex(i);
    let e = HalfSurface::boundary_edge(i);
    [
        product_id("v", &v),
        product_id("v", &e),
        product_id("e", &v),
        product_id("e", &e),
    ]
}

/// `S^1 × X_1` with `S^1 × M` glued to boundary tori `2..=g+1`, matching the
/// circle factors and sending each `C_j` to the diagonal of the band. The
/// first boundary torus stays open.
pub fn build_b_mobius_stage(g: Genus) -> ChainComplexF2 {
    let circle_mobius = product(&circle(), &build_sym2_circle());
    let rim = format!("×{DIAGONAL}");
    let mut acc = circle_times_half(g);
    for j in 2..=g.get() + 1 {
        let prefix = format!("SM{j}");
        let piece = circle_mobius.namespaced(&prefix);
        let [vv, ve, ev, ee] = boundary_torus_cells(j);
        let m = matching([
            (format!("{prefix}/{}", product_id("v", "d")), vv.as_str()),
            (format!("{prefix}/{}", product_id("v", "w")), ve.as_str()),
            (format!("{prefix}/{}", product_id("e", "d")), ev.as_str()),
            (format!("{prefix}/{}", product_id("e", "w")), ee.as_str()),
        ]);
        acc = glue(&acc, &boundary_torus_label(j), &piece, &rim, &m)
            .expect("S^1 × M rim matches boundary torus");
    }
    acc
}

/// The closed 3-manifold `B`: [`build_b_mobius_stage`] with `Sym^3(S^1)`
/// glued to the first boundary torus. `A1` goes to the fibre boundary
/// (meridian) and `A2` to the section (longitude).
pub fn build_b(g: Genus) -> ChainComplexF2 {
    let stage = build_b_mobius_stage(g);
    let solid = build_sym3_circle().namespaced("S3");
    let [vv, ve, ev, ee] = boundary_torus_cells(1);
    let m = matching([
        ("S3/u".to_string(), vv.as_str()),
        ("S3/m".to_string(), ve.as_str()),
        ("S3/l".to_string(), ev.as_str()),
        ("S3/T".to_string(), ee.as_str()),
    ]);
    glue(&stage, &boundary_torus_label(1), &solid, SOLID_TORUS_BOUNDARY, &m)
        .expect("solid torus boundary matches")
}

/// One named connected piece of a real locus, stored once with its
/// multiplicity.
#[derive(Debug, Clone)]
pub struct Piece {
    pub name: String,
    pub complex: ChainComplexF2,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceBetti {
    pub name: String,
    pub multiplicity: u64,
    pub betti: BettiVector,
}

impl PieceBetti {
    pub fn subtotal(&self) -> BigUint {
        BigUint::from(self.betti.sum()) * BigUint::from(self.multiplicity)
    }
}

/// The real locus of `Sym^n(X)` as a list of pieces with multiplicities.
#[derive(Debug, Clone)]
pub struct RealLocusDecomposition {
    pub g: Genus,
    pub n: u32,
    pub pieces: Vec<Piece>,
}

impl RealLocusDecomposition {
    fn push(&mut self, name: &str, complex: ChainComplexF2, multiplicity: u64) {
        if multiplicity > 0 {
            self.pieces.push(Piece {
                name: name.to_string(),
                complex,
                multiplicity,
            });
        }
    }

    /// Betti vector of each piece, computed by matrix rank.
    pub fn betti_table(&self) -> Vec<PieceBetti> {
        self.pieces
            .iter()
            .map(|p| PieceBetti {
                name: p.name.clone(),
                multiplicity: p.multiplicity,
                betti: p.complex.betti(),
            })
            .collect()
    }

    pub fn total_betti_sum(&self) -> BigUint {
        self.betti_table().iter().map(PieceBetti::subtotal).sum()
    }
}

/// `Y` plus `C(g+1, 2)` tori `C_i × C_j`.
pub fn real_sym2_decomposition(g: Genus) -> RealLocusDecomposition {
    let circles = u64::from(g.get()) + 1;
    let mut d = RealLocusDecomposition { g, n: 2, pieces: Vec::new() };
    d.push("Y", build_y(g), 1);
    d.push("torus", torus(), binomial(circles, 2));
    d
}

/// `C(g+1, 3)` three-tori `C_i × C_j × C_k` plus `g + 1` copies of `B`.
pub fn real_sym3_decomposition(g: Genus) -> RealLocusDecomposition {
    let circles = u64::from(g.get()) + 1;
    let mut d = RealLocusDecomposition { g, n: 3, pieces: Vec::new() };
    d.push("3-torus", three_torus(), binomial(circles, 3));
    d.push("B", build_b(g), circles);
    d
}

pub fn real_decomposition(g: Genus, n: u32) -> Option<RealLocusDecomposition> {
    match n {
        2 => Some(real_sym2_decomposition(g)),
        3 => Some(real_sym3_decomposition(g)),
        _ => None,
    }
}

/// Names accepted by [`model_by_name`].
pub const MODEL_NAMES: [&str; 5] = ["half", "Y", "B", "sym2circle", "sym3circle"];

pub fn model_by_name(name: &str, g: Genus) -> Option<ChainComplexF2> {
    Some(match name {
        "half" => build_half_surface(g).complex,
        "Y" => build_y(g),
        "B" => build_b(g),
        "sym2circle" => build_sym2_circle(),
        "sym3circle" => build_sym3_circle(),
        _ => return None,
    })
}

/// On-disk form of a user-supplied decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionFile {
    pub g: u32,
    pub n: u32,
    pub pieces: Vec<PieceFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub name: String,
    pub multiplicity: u64,
    pub complex: CwFile,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &RealLocusDecomposition) -> Self {
        DecompositionFile {
            g: d.g.get(),
            n: d.n,
            pieces: d
                .pieces
                .iter()
                .map(|p| PieceFile {
                    name: p.name.clone(),
                    multiplicity: p.multiplicity,
                    complex: CwFile::from_complex(&p.complex),
                })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> Result<RealLocusDecomposition, ComplexError> {
        let mut d = RealLocusDecomposition {
            g: Genus::new(self.g),
            n: self.n,
            pieces: Vec::new(),
        };
        for p in &self.pieces {
            if p.multiplicity == 0 {
                return Err(ComplexError::Parse {
                    cell: None,
                    message: format!("piece {:?} has multiplicity 0", p.name),
                });
            }
            let complex = p.complex.to_complex()?;
            d.push(&p.name, complex, p.multiplicity);
        }
        Ok(d)
    }
}
