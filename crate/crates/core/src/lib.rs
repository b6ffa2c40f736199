//! Hyperspace dynamics for group actions.
//!
//! Builds the hyperspace `(Sub_X, Γ̂)` of a finite system, decides
//! transitivity, weak mixing, mixing, dense periodic points, sensitivity and
//! Devaney chaos on finite systems exactly and on subshifts of finite type up
//! to explicit bounds, and replays the transfer results between a system and
//! its hyperspace with their constructive witnesses.

pub mod checkers;
pub mod cli;
pub mod config;
pub mod group;
pub mod hyperspace;
pub mod lattice;
pub mod metric;
pub mod sets;
pub mod systems;
pub mod theorems;
