pub mod arith;
pub mod cocycle;
pub mod error;
pub mod heckebol;
pub mod hp;
pub mod json;
pub mod mock;
pub mod pipeline;
pub mod qexact;
pub mod raexpand;
pub mod scalar;
pub mod svperiods;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/qseries.md")]
    pub mod qseries {}
    #[doc = include_str!("../../../book/src/hecke.md")]
    pub mod hecke {}
    #[doc = include_str!("../../../book/src/periods.md")]
    pub mod periods {}
    #[doc = include_str!("../../../book/src/real-analytic.md")]
    pub mod real_analytic {}
    #[doc = include_str!("../../../book/src/mock.md")]
    pub mod mock {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
