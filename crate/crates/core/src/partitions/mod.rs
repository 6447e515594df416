//! Integer partitions, their Möbius function, and set partitions.

mod partition;
mod set_partition;

pub use partition::{
    decompose2, decompose3, for_each_partition, partitions_of, partitions_up_to, submultisets,
    Partition,
};
pub use set_partition::{set_partitions, SetPartition, MAX_SET_PARTITION_N};
