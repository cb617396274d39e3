//! The out-component exploration process and its abstract counterparts.

mod process;
mod simulate;

pub use process::{certify_component, explore, ExplorationTrace};
pub use simulate::{
    coupled_pair_path, martingale_path, simulate_process_tau, CoupledPath, ProcessVariant, TauEstimate,
};
