//! Exact computations with tilting complexes over finite-dimensional algebras.
//!
//! The crate works bottom-up: [`field`] and [`linalg`] give exact scalars and
//! dense matrices over `F_p` or `Q`; [`algebra`] builds algebras from quivers
//! with relations; [`complexes`] models bounded complexes of projectives and
//! Hom spaces in the homotopy category; [`tilting`] runs the completion
//! iteration and checks tilting; [`recollement`] handles corners `eAe` and
//! quotients `A/AeA`.
//!
//! ```
//! use quivtilt::{corpus, field::Field, algebra::Session};
//!
//! let a = corpus::sn2(Session::new(Field::prime(101).unwrap()));
//! assert_eq!(a.dim(), 6);
//! assert_eq!(a.radical().unwrap().len(), 4);
//! ```

pub mod algebra;
pub mod complexes;
pub mod corpus;
pub mod field;
pub mod recollement;
pub mod linalg;
pub mod sample;
pub mod tilting;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/completion.md")]
    mod completion {}
    #[doc = include_str!("../../../book/src/recollement.md")]
    mod recollement {}
}
