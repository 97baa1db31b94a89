//! QASM emission (placeholder).
