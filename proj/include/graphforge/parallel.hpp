// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>

#include "graphforge/graph.hpp"
#include "graphforge/partition.hpp"

namespace graphforge {

/// Runs `generate` once per partition {i, parts} on `threads` workers and
/// concatenates the pieces in partition order. The result is byte-identical
/// for every thread count because all randomness is keyed per atom.
Graph run_partitioned(const std::function<Graph(Partition)>& generate,
                      std::uint32_t parts, std::uint32_t threads);

}  // namespace graphforge
