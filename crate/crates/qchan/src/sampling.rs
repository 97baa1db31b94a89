//! Shot sampling (placeholder).
