pub mod bounds;
pub mod gap;
pub mod reduce;
pub mod simulate;
pub mod threshold;
pub mod verify;
