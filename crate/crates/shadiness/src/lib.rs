pub mod exact;
pub mod lp;
pub mod polytope;
pub mod projection;
pub mod shady;
