//! Shared benchmark inputs.

use tetra_core::ScanFilter;

/// `(base, height, digits)` towers of increasing width.
pub const TOWERS: [(u64, u64, usize); 4] =
    [(3, 10, 10), (3, 100, 100), (7, 300, 300), (3, 1000, 1000)];

/// Bases profiled in the speed benchmark.
pub const PROFILE_BASES: [u64; 4] = [3, 7, 15625, 16385];

/// A small sweep.
pub const SCAN_RANGE: (u64, u64, ScanFilter) = (2, 2000, ScanFilter::AllNonMult10);
