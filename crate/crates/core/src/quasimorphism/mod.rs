//! Quasimorphisms into `Q_p` and `F_p((X))` and their defect groups.

pub mod cyclic;
pub mod laurent;
pub mod prufer;
pub mod table;

pub use cyclic::{cyclic_defect, CyclicQm, StandardSection};
pub use laurent::{laurent_section_check, LaurentTail, LaurentVerdict};
pub use prufer::{project_to_prufer, standard_section, PruferElement};
pub use table::{
    check_generator_bound, fg_quasimorphism_bound, product_combine, qm_to_hom_check, Defect, HomCheck, QmDocument,
    QmTable,
};
