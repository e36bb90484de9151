// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

#include "graphforge/graph.hpp"

namespace graphforge {

enum class EdgeFormat { kText, kBinary };

/// Text: optional header "# n=<n> directed=<0|1>", then "u v\n" (plus " w"
/// when weighted), zero-based decimal, one edge per line.
/// Binary: magic "GFG1", n as u64 LE, directed flag byte, then (u,v) u64 LE
/// pairs. Read and write are exact inverses, including edge order.
void write_edge_list(std::ostream& out, const Graph& g, EdgeFormat format);
Graph read_edge_list(std::istream& in, EdgeFormat format);

void write_edge_list_file(const std::string& path, const Graph& g, EdgeFormat format);
Graph read_edge_list_file(const std::string& path, EdgeFormat format);

/// Sniffs the magic bytes to pick the format.
Graph read_edge_list_auto(const std::string& path);

}  // namespace graphforge
