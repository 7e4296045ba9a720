pub mod bottleneck;
pub mod filtration;
pub mod reduction;

pub use bottleneck::{bottleneck, finite_barcode, finite_bottleneck};
pub use filtration::{
    constrained_vr_filtration, constrained_vr_filtration_with_capacity,
    filtration_from_appearances, vr_filtration, FilteredComplex, Simplex, SliceSchedule,
    DEFAULT_CAPACITY,
};
pub use reduction::{persistence_pairs, reduce_all, reduce_and_extract, PersistencePair};
