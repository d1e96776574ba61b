#include "wgc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wgc/rng.hpp"

namespace wgc {

uint64_t AdjacencyGraph::edge_count() const {
  uint64_t total = 0;
  for (const auto& l : lists) total += l.size();
  return total;
}

void AdjacencyGraph::normalize() {
  for (auto& l : lists) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
}

AdjacencyGraph parse_text_graph(std::istream& in, size_t buffer_bytes) {
  if (buffer_bytes == 0) buffer_bytes = 1;
  std::vector<char> buf(buffer_bytes);
  AdjacencyGraph g;
  std::vector<NodeId> current;
  uint64_t acc = 0;
  bool have_digits = false;
  size_t line = 1;

  auto flush_token = [&] {
    if (!have_digits) return;
    if (acc > 0xFFFFFFFFull)
      throw ValidationError("line " + std::to_string(line) +
                            ": successor id " + std::to_string(acc) +
                            " does not fit 32 bits");
    current.push_back(static_cast<NodeId>(acc));
    acc = 0;
    have_digits = false;
  };

  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const size_t got = static_cast<size_t>(in.gcount());
    for (size_t i = 0; i < got; ++i) {
      const char c = buf[i];
      if (c >= '0' && c <= '9') {
        acc = acc * 10 + static_cast<uint64_t>(c - '0');
        if (acc > 0xFFFFFFFFull)
          throw ValidationError("line " + std::to_string(line) +
                                ": successor id does not fit 32 bits");
        have_digits = true;
      } else if (c == ' ') {
        flush_token();
      } else if (c == '\n') {
        flush_token();
        g.lists.push_back(std::move(current));
        current.clear();
        ++line;
      } else {
        char hex[8];
        std::snprintf(hex, sizeof hex, "0x%02X",
                      static_cast<unsigned>(static_cast<unsigned char>(c)));
        throw ParseError("line " + std::to_string(line) +
                         ": unexpected byte " + hex);
      }
    }
  }
  if (have_digits || !current.empty()) {
    flush_token();
    g.lists.push_back(std::move(current));
  }

  g.normalize();
  const size_t n = g.node_count();
  for (size_t u = 0; u < n; ++u) {
    if (!g.lists[u].empty() && g.lists[u].back() >= n)
      throw ValidationError("node " + std::to_string(u) + ": successor " +
                            std::to_string(g.lists[u].back()) +
                            " out of range (n=" + std::to_string(n) + ")");
  }
  return g;
}

AdjacencyGraph load_text_graph(const std::string& path, size_t buffer_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_text_graph(in, buffer_bytes);
}

void write_text_graph(const AdjacencyGraph& g, std::ostream& out) {
  std::vector<char> buf;
  buf.reserve(size_t{1} << 20);
  char digits[16];
  for (const auto& l : g.lists) {
    for (NodeId v : l) {
      auto res = std::to_chars(digits, digits + sizeof digits, v);
      buf.insert(buf.end(), digits, res.ptr);
      buf.push_back(' ');
    }
    buf.push_back('\n');
    if (buf.size() > (size_t{1} << 20) - 64) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  if (!buf.empty())
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void save_text_graph(const AdjacencyGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_text_graph(g, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string to_text(const AdjacencyGraph& g) {
  std::ostringstream ss;
  write_text_graph(g, ss);
  return ss.str();
}

AdjacencyGraph transpose(const AdjacencyGraph& g) {
  const size_t n = g.node_count();
  std::vector<uint32_t> indeg(n, 0);
  for (const auto& l : g.lists)
    for (NodeId v : l) ++indeg[v];
  AdjacencyGraph t;
  t.lists.resize(n);
  for (size_t v = 0; v < n; ++v) t.lists[v].reserve(indeg[v]);
  for (size_t u = 0; u < n; ++u)
    for (NodeId v : g.lists[u]) t.lists[v].push_back(static_cast<NodeId>(u));
  return t;
}

namespace {

// Draws a successor for node i: mostly ids near i (log-uniform span up to
// ~2^10), sometimes anywhere.
NodeId draw_target(SplitMix64& rng, size_t i, size_t n) {
  const uint64_t r = rng.next();
  if ((r & 0xFF) < 38)  // ~15% global jumps
    return static_cast<NodeId>(rng.next_below(n));
  const unsigned shift = 1 + static_cast<unsigned>((r >> 8) % 10);
  const uint64_t span = uint64_t{1} << shift;
  const uint64_t mag = 1 + rng.next_below(span);
  const bool forward = (r >> 32) & 1;
  int64_t t = forward ? static_cast<int64_t>(i) + static_cast<int64_t>(mag)
                      : static_cast<int64_t>(i) - static_cast<int64_t>(mag);
  if (t < 0 || t >= static_cast<int64_t>(n))
    t = forward ? static_cast<int64_t>(i) - static_cast<int64_t>(mag)
                : static_cast<int64_t>(i) + static_cast<int64_t>(mag);
  if (t < 0) t = 0;
  if (t >= static_cast<int64_t>(n)) t = static_cast<int64_t>(n) - 1;
  return static_cast<NodeId>(t);
}

}  // namespace

AdjacencyGraph generate_graph(size_t n, double avg_deg, double copy_prob,
                              uint64_t seed) {
  if (avg_deg <= 0.0) throw std::invalid_argument("avg_deg must be > 0");
  if (copy_prob < 0.0 || copy_prob > 1.0)
    throw std::invalid_argument("copy_prob must be in [0, 1]");
  SplitMix64 rng(seed);
  AdjacencyGraph g;
  g.lists.resize(n);
  // A copied list keeps each member with probability 0.9 and gains
  // avg_deg/10 new members on average, so copy chains hold the mean
  // degree at avg_deg instead of drifting.
  const double add_mean = avg_deg / 10.0;
  for (size_t i = 0; i < n; ++i) {
    auto& list = g.lists[i];
    if (i > 0 && rng.next_double() < copy_prob) {
      for (NodeId v : g.lists[i - 1])
        if (rng.next_double() < 0.9) list.push_back(v);
      size_t add = static_cast<size_t>(add_mean);
      if (rng.next_double() < add_mean - std::floor(add_mean)) ++add;
      for (size_t a = 0; a < add; ++a)
        list.push_back(draw_target(rng, i, n));
    } else {
      const double x = avg_deg * (0.25 + 1.5 * rng.next_double());
      const size_t deg = static_cast<size_t>(std::llround(x));
      for (size_t d = 0; d < deg; ++d)
        list.push_back(draw_target(rng, i, n));
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return g;
}

const std::vector<NodeId>& oracle_successors(const AdjacencyGraph& g,
                                             NodeId u) {
  if (u >= g.node_count())
    throw std::out_of_range("node " + std::to_string(u) + " out of range");
  return g.lists[u];
}

}  // namespace wgc
