//! Simple Heffter arrays and the orientable biembeddings they produce.
//!
//! The crate builds simple `3 x n` Heffter arrays for every `n >= 3`,
//! derives compatible row and column orderings, develops the cyclic cycle
//! systems carried by the rows and columns, and certifies the resulting
//! face-two-colourable embedding of `K_{2mn+1}` from first principles. It also
//! searches for column reorderings that make an arbitrary Heffter array simple.

pub mod array;
pub mod cycles;
pub mod embedding;
pub mod error;
pub mod h3;
pub mod io;
pub mod modmath;
pub mod orderings;
pub mod report;
pub mod search;

pub use array::{ColumnPermutation, HeffterArray, VerificationReport};
pub use cycles::{develop_cycles, CycleSystem};
pub use embedding::{
    build_face_set, certify, derive_rotations, genus_closed_form, EmbeddingCertificate, FaceSet,
};
pub use error::{Error, Result};
pub use h3::{construct_raw_h3, simple_h3};
pub use io::{parse_array, serialize_array, ArrayFile};
pub use modmath::Modulus;
pub use orderings::{
    compatible_orderings, compose, is_single_cycle, CompatibleOrderingPair, CyclicOrdering,
};
pub use report::CertReport;
pub use search::{
    brute_force_oracle, find_simple_column_permutation, generate_heffter, SearchConfig,
    SearchOutcome,
};
