#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgc {

using NodeId = uint32_t;

// The text format is byte-level malformed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The parsed graph violates a structural constraint (successor id out of
// range).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// In-memory adjacency lists. Node ids are dense in [0, n); every list is
// sorted strictly increasing once normalized.
struct AdjacencyGraph {
  std::vector<std::vector<NodeId>> lists;

  size_t node_count() const { return lists.size(); }
  uint64_t edge_count() const;

  // Sorts and deduplicates every list.
  void normalize();

  bool operator==(const AdjacencyGraph&) const = default;
};

// Text form: one line per node, each successor followed by a single
// space, LF line endings, an empty line for an empty list. Parsing is
// streaming with a fixed-size read buffer; any byte other than digits,
// ' ' and '\n' is a ParseError (reported with its line number), and a
// successor id >= n raises ValidationError once n is known from the line
// count. A number pending at end of line (or end of file) is flushed as
// a successor; the last line's trailing newline may be missing. Lists
// are normalized on ingestion.
AdjacencyGraph parse_text_graph(std::istream& in,
                                size_t buffer_bytes = size_t{32} << 20);
AdjacencyGraph load_text_graph(const std::string& path,
                               size_t buffer_bytes = size_t{32} << 20);

// Canonical writer for the format above: `v ` per successor, '\n' per
// node.
void write_text_graph(const AdjacencyGraph& g, std::ostream& out);
void save_text_graph(const AdjacencyGraph& g, const std::string& path);
std::string to_text(const AdjacencyGraph& g);

// Reverses every edge; output lists come out sorted.
AdjacencyGraph transpose(const AdjacencyGraph& g);

// Synthetic web-like graph: node i either copies node i-1's list with
// small perturbations (probability copy_prob) or draws a fresh list of
// roughly avg_deg successors biased towards ids near i, with occasional
// global jumps. Fully deterministic in (n, avg_deg, copy_prob, seed);
// see rng.hpp for the generator. Returned lists are normalized.
AdjacencyGraph generate_graph(size_t n, double avg_deg, double copy_prob,
                              uint64_t seed);

// Reference successor lookup: the plain adjacency list, range checked.
const std::vector<NodeId>& oracle_successors(const AdjacencyGraph& g, NodeId u);

}  // namespace wgc
