#pragma once

#include <filesystem>

#include "marketgraph/graph.hpp"

namespace marketgraph {

/// Single-file binary snapshot. Byte layout is documented in
/// docs/snapshot_format.md: magic, version, payload size, FNV-1a checksum,
/// then length-prefixed node and edge records (little-endian throughout).
/// Round-trips ids, labels, rel types and property values bit-exactly,
/// floats included.

/// Writes to a temp file in the target directory, then renames.
/// Throws IoFailure.
void persist(const PropertyGraph& g, const std::filesystem::path& path);

/// Throws IoFailure when the file cannot be read, CorruptSnapshot on bad
/// magic, unsupported version, size mismatch or checksum mismatch.
PropertyGraph load(const std::filesystem::path& path);

}  // namespace marketgraph
