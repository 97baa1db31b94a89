//! Information metrics (placeholder).
//! 
pub struct CapacityResult;
