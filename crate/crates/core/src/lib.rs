//! Mod-2 topology of the real loci of symmetric products of real M-curves.
//!
//! * [`genfun`]: exact Betti numbers of `Sym^n` of a genus-`g` surface.
//! * [`homology`]: CW complexes over GF(2) and bit-packed rank computations.
//! * [`realmodels`]: cell models of the real loci of `Sym^2` and `Sym^3`.
//! * [`fibration`]: the 2-simplex bundle `Sym^3(S^1) -> S^1` in angle coordinates.
//! * [`mcheck`]: comparison of real and complex Betti sums.
//! * [`cli`]: the `msym` command-line front end.

pub mod cli;
pub mod fibration;
pub mod genfun;
pub mod homology;
pub mod mcheck;
pub mod realmodels;
