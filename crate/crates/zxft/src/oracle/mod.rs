//! Ground-truth verification: exact dense tensor contraction for small
//! diagrams, and stabilizer tableau simulation of circuit readings for
//! larger ones.

pub mod invariance;
pub mod reading;
pub mod tableau;
pub mod tensor;

pub use invariance::{invariance_suite, InvarianceReport};
pub use reading::{CircuitReading, ReadingStep};
pub use tableau::{Pauli, Tableau};
pub use tensor::{dense_contract, equivalent, equivalent_mapped, verify_clifford, DenseTensor};
