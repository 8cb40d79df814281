//! Exact combinatorics around Foulkes characters of symmetric groups:
//! partitions and p-cores, Murnaghan–Nakayama character tables, the
//! plethysm `h_n[h_a]`, set partitions fixed by p-elements, and the
//! decomposition-matrix column bounds that follow from them.

pub mod abacus;
pub mod bounds;
pub mod characters;
pub mod error;
pub mod partition;
pub mod perm;
pub mod plethysm;
pub mod setpart;

pub use abacus::{block_label, p_core, p_weight, BlockLabel};
pub use bounds::{ttt1_report, BoundsReport, FGammaSet, FoulkesData, RowStatus};
pub use characters::{CharacterTable, TableCache};
pub use error::{Error, Result};
pub use partition::{partitions_of, Partition};
pub use perm::{GroupSpec, Permutation};
pub use plethysm::{foulkes_character, FoulkesCharacter, PowerSumPolynomial};
pub use setpart::SetPartition;
