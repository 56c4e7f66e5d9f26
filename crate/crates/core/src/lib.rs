pub mod combinatorics;
pub mod dephasing;
pub mod erasure;
pub mod error;
pub mod oracle;
pub mod probe;
pub mod render;
pub mod sweep;
pub mod verify;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/probe-states.md")]
    mod probe_states {}
    #[doc = include_str!("../../../book/src/erasure.md")]
    mod erasure {}
    #[doc = include_str!("../../../book/src/dephasing.md")]
    mod dephasing {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
