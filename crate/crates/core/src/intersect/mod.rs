//! Bezout ledgers and the numerical intersection oracle.

pub mod elim;
pub mod mpc;
pub mod roots;
pub mod oracle;
pub mod ledger;
pub mod adjudicate;
