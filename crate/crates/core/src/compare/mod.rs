pub mod correspondence;
pub mod fgw;
pub mod mds;

pub use correspondence::{
    brute_gh, check_rs_correspondence, decorated_gh_barcodes, fit_connectivity, hat_gh_filtration,
    min_max_correspondence, ConnectivityConstants, Correspondence, BRUTE_FORCE_MAX,
};
pub use fgw::{distance_matrix, fgw, fgw_inputs, gw, hungarian, FgwConfig, FgwInput, FgwResult};
pub use mds::mds_embed;
