pub mod bessel_eval;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod moments;
pub mod opoly;
pub mod scalar_poly;

pub use error::{Error, Result};
pub use rug::{Float, Integer, Rational};

// The guide's code blocks compile and run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/moments.md")]
    mod moments {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/hankel.md")]
    mod hankel {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
