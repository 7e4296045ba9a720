pub mod barcode;
pub mod cloud;
pub mod drg;
pub mod graph;
pub mod io;
pub mod metric;

pub use barcode::{Barcode, Death, Interval};
pub use cloud::PointCloud;
pub use drg::{DecoratedReebGraph, Decoration, DrgParams, PersistenceImage};
pub use graph::{FunctionGraph, NodeMetric};
pub use metric::{CondensedMatrix, DistanceMatrix, Euclidean, PointMetric, ValueMetric};
