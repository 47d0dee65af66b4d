//! Higher-order conjunctive query answering for a set-theoretic
//! description logic with datatypes.

pub mod kb;
pub mod query;
pub mod setcalc;
pub mod translator;
pub mod oracle;
pub mod grounder;
pub mod tableau;
pub mod engine;
pub mod pipeline;
pub mod services;
pub mod frontend;
pub mod gen;
