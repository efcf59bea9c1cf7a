#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lfrgen/ca/community_assignment.hpp"
#include "lfrgen/graph.hpp"

namespace lfrgen {

enum class FileFormat { text, binary };

/// Binary graph container: magic "EMGR", version 1 (u16 LE), n (u64 LE),
/// m (u64 LE), then m little-endian (u, v) pairs with u <= v in
/// lexicographic order. Readers enforce magic, version and pair ordering.
///
/// Text graphs are `u<TAB>v` per line, 0-based, sorted; readers enforce the
/// same ordering.
void write_graph(std::ostream& out, const EdgeList& edges, node_id n, FileFormat format);
void write_graph(const std::filesystem::path& path, const EdgeList& edges, node_id n,
                 FileFormat format);

struct GraphFile {
    EdgeList edges;
    node_id n = 0;
};
GraphFile read_graph(std::istream& in, FileFormat format);
GraphFile read_graph(const std::filesystem::path& path, FileFormat format);

/// Degree sequences: text is one unsigned integer per line; binary is magic
/// "EMDS", version 1 (u16 LE), n (u64 LE), then n u64 LE values.
void write_degrees(std::ostream& out, const DegreeSequence& degrees, FileFormat format);
void write_degrees(const std::filesystem::path& path, const DegreeSequence& degrees,
                   FileFormat format);
DegreeSequence read_degrees(std::istream& in, FileFormat format);
DegreeSequence read_degrees(const std::filesystem::path& path, FileFormat format);

/// Assignment output: `node<TAB>community` per line, 0-based, sorted by
/// node then community.
void write_assignment(std::ostream& out, const CommunityAssignment& assignment);
void write_assignment(const std::filesystem::path& path,
                      const CommunityAssignment& assignment);

} // namespace lfrgen
