//! Exhaustive subset enumeration for desk-scale problems.

use crate::error::{Error, Result};
use crate::set::NodeSet;

/// Largest number of free nodes any exhaustive search will enumerate.
pub const DESK_SCALE_LIMIT: usize = 22;

pub(crate) fn check_desk_scale(free: usize) -> Result<()> {
    if free > DESK_SCALE_LIMIT {
        return Err(Error::DeskScaleLimit {
            free,
            limit: DESK_SCALE_LIMIT,
        });
    }
    Ok(())
}

/// Calls `visit` on every subset of `free` (as a set over `0..n`), the empty
/// set first. Subsets are visited in increasing bitmask order over `free`.
pub(crate) fn for_each_subset<F>(n: usize, free: &[usize], mut visit: F) -> Result<()>
where
    F: FnMut(NodeSet) -> Result<()>,
{
    check_desk_scale(free.len())?;
    for mask in 0u64..(1u64 << free.len()) {
        visit(NodeSet::from_mask(n, free, mask))?;
    }
    Ok(())
}
