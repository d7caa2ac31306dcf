//! Vector fields, almost complex structures, hypersurfaces and bracket calculus.

pub mod commute;
pub mod field;
pub mod hypersurface;
pub mod structure;

pub use commute::{
    commute_order, lie_algebra_closure_check, prop1_check, prop2_normal_form, BracketCalculus,
    BracketWord, ClosureReport, Letter, Prop1Report, Prop2Report,
};
pub use field::{iterated_d, lie_bracket, nabla, var_names, Differentiable, VectorField};
pub use hypersurface::{
    in_tjm, levi_form, levi_kernel_at, levi_polar, Hypersurface, LeviKernel, TangencyCheck,
};
pub use structure::{j_from_frame, standard_j_matrix, AlmostComplexStructure, Frame};
