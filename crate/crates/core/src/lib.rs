pub mod corpus;
pub mod graded;
pub mod lattice;
pub mod monoid;
pub mod values;
pub mod verifier;
