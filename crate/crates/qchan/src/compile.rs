//! Circuit compilation (placeholder).
