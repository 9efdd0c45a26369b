pub mod deform;
pub mod error;
pub mod exact;
pub mod lie;
pub mod operad;
pub mod report;
pub mod shleib;
pub mod tables;
pub mod trees;
pub mod verify;

pub use error::{Error, Result};
