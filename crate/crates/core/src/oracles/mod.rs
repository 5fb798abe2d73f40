//! Reference semantics of finite ground programs.

pub mod bottom_up;
pub mod interp;
pub mod program;
pub mod semantics;

pub use bottom_up::least_model_bottom_up;
pub use interp::{ThreeValuedInterp, Truth3};
pub use program::GroundProgram;
pub use semantics::{
    fitting_fixpoint, fitting_stages, is_stable, least_model, stable_models, well_founded_model,
    FittingResult, DEFAULT_STABLE_CAP,
};
