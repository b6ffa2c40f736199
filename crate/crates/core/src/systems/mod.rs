//! Test systems: finite families and subshifts of finite type.

pub mod families;
pub mod sft;
pub mod shift;

pub use families::{builtin_family, builtin_system, SystemHandle};
pub use sft::{Cylinder, Sft, TransitionMatrix};
pub use shift::{Pattern, PeriodicPoint, ShiftSpace};
