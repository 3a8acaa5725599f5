//! Exact computation of capped descendent vertex generating functions for
//! Hilbert schemes of points on the plane, and checks of the identities that
//! produce them.

pub mod exactalg;
pub mod combinat;
pub mod fock;
pub mod macdonald;
pub mod pipeline;
