//! Covers of the projective line whose ramification points all have index
//! three.
//!
//! The crate is layered:
//!
//! - [`field`]: `Q`, prime fields, extensions `K[u]/(m)` and function fields
//!   `K(u)`, with canonical printing and parsing;
//! - [`poly`]: dense polynomials, gcd, squarefree decomposition,
//!   factorization over finite fields, rational roots and resultants;
//! - [`projline`]: points of `P¹`, Möbius transformations and moduli
//!   coordinates of pointed lines;
//! - [`ramification`]: rational maps, exact ramification profiles and a
//!   brute-force oracle over finite fields;
//! - [`constructors`]: triple-only covers with prescribed branch points and
//!   Belyi reduction;
//! - [`weierstrass`]: the cubic family `x³ = y² − ty`;
//! - [`io`]: the JSON formats shared with the command line tool.
//!
//! Elements print canonically as `3/4` in `Q`, `5` in `F7`, an ascending
//! coefficient list `[c0,c1,...]` in an extension, and `[num]|[den]` in a
//! function field. Points of `P¹` print as `inf` or an element.
//!
//! ```
//! use triram::field::Field;
//! use triram::ramification::{is_triple_only, RationalMap};
//!
//! let f5 = Field::parse("F5").unwrap();
//! let f = RationalMap::parse(&f5, "z^3", "z^3+1").unwrap();
//! assert!(is_triple_only(&f).unwrap().verdict);
//! ```

pub mod constructors;
pub mod error;
pub mod field;
pub mod io;
pub mod poly;
pub mod projline;
pub mod ramification;
pub mod weierstrass;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/projective-line.md")]
    mod projective_line {}
    #[doc = include_str!("../../../book/src/ramification.md")]
    mod ramification {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/weierstrass.md")]
    mod weierstrass {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
