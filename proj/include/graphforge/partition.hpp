// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "graphforge/error.hpp"
#include "graphforge/sampling.hpp"

namespace graphforge {

/// Selects one slice of a partitioned generation run. Every generator owns a
/// fixed number of atoms (chunks, cells, bands, blocks) whose randomness is
/// keyed per atom; a Partition maps to a contiguous atom range. Concatenating
/// the outputs of all slices, in index order, is byte-identical to an
/// unpartitioned run for every partition count.
struct Partition {
    std::uint32_t index = 0;
    std::uint32_t count = 1;
};

/// Atom range [lo, hi) owned by this partition out of `atoms` total.
inline IndexRange partition_atoms(std::optional<Partition> part, std::uint64_t atoms) {
    if (!part) return {0, atoms};
    if (part->count == 0 || part->index >= part->count)
        throw InfeasibleError("partition: index must be below count");
    const std::uint64_t lo = atoms * part->index / part->count;
    const std::uint64_t hi = atoms * (part->index + 1) / part->count;
    return {lo, hi};
}

/// Default atom granularity for linear index spaces.
inline constexpr std::uint64_t kDefaultAtoms = 256;

}  // namespace graphforge
