pub mod alg;
pub mod config;
pub mod error;
pub mod exact;
pub mod grp;
pub mod gset;
pub mod io;
pub mod par;
pub mod permalg;

pub use config::Config;
pub use error::{Error, Result};
