// Command line front end: compress, decompress, query, bench, plot, gen.
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "wgc/bench.hpp"
#include "wgc/graph.hpp"
#include "wgc/lm_graph.hpp"
#include "wgc/stripe_graph.hpp"
#include "wgc/svg_plot.hpp"

namespace {

using namespace wgc;

// Compressed files are told apart by magic, not by extension.
enum class FileKind { Lm, Stripe, Unknown };

FileKind sniff(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (in.gcount() == 4) {
    if (std::string_view(magic, 4) == "LMG1") return FileKind::Lm;
    if (std::string_view(magic, 4) == "S2D1") return FileKind::Stripe;
  }
  return FileKind::Unknown;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int cmd_compress(const std::string& method, const std::string& input,
                 const std::string& output, uint32_t h, uint32_t tile,
                 uint32_t stripes) {
  const AdjacencyGraph g = load_text_graph(input);
  const uint64_t links = g.edge_count();
  const auto t0 = std::chrono::steady_clock::now();
  uint64_t bytes = 0;
  if (method == "lm") {
    const LmGraph lm = lm_compress(g, h);
    lm_save_file(lm, output);
    bytes = lm_file_bytes(lm);
  } else {
    const StripeGraph sg = sg_compress(g, tile, stripes);
    sg_save_file(sg, output);
    bytes = sg_file_bytes(sg);
  }
  const double secs = seconds_since(t0);
  std::printf("%s: %llu nodes, %llu links\n", input.c_str(),
              static_cast<unsigned long long>(g.node_count()),
              static_cast<unsigned long long>(links));
  if (links == 0)
    std::printf("%s: %llu bytes (no links), %.3f s\n", output.c_str(),
                static_cast<unsigned long long>(bytes), secs);
  else
    std::printf("%s: %llu bytes, %.4f bits/link, %.3f s\n", output.c_str(),
                static_cast<unsigned long long>(bytes),
                8.0 * static_cast<double>(bytes) / static_cast<double>(links),
                secs);
  return 0;
}

int cmd_decompress(const std::string& input, const std::string& output) {
  AdjacencyGraph g;
  switch (sniff(input)) {
    case FileKind::Lm:
      g = lm_decompress(lm_load_file(input));
      break;
    case FileKind::Stripe:
      g = sg_decompress(sg_load_file(input));
      break;
    default:
      throw std::runtime_error(input + " is not a recognized compressed graph");
  }
  save_text_graph(g, output);
  std::printf("%s: %llu nodes, %llu links\n", output.c_str(),
              static_cast<unsigned long long>(g.node_count()),
              static_cast<unsigned long long>(g.edge_count()));
  return 0;
}

int cmd_query(const std::string& input, uint64_t node,
              const std::string& mode) {
  QueryCursor cursor;
  const NodeId u = static_cast<NodeId>(node);
  const std::vector<NodeId>* result = nullptr;
  switch (sniff(input)) {
    case FileKind::Lm: {
      static LmGraph lm;  // keep alive for the result reference
      lm = lm_load_file(input);
      if (mode == "pred")
        throw std::runtime_error(
            "predecessor queries are not supported on list-merge files; "
            "compress the transposed graph and query successors instead");
      result = &lm_successors(lm, u, cursor);
      break;
    }
    case FileKind::Stripe: {
      static StripeGraph sg;
      sg = sg_load_file(input);
      result = mode == "pred" ? &sg_predecessors(sg, u, cursor)
                              : &sg_successors(sg, u, cursor);
      break;
    }
    default:
      throw std::runtime_error(input + " is not a recognized compressed graph");
  }
  std::string line;
  for (size_t i = 0; i < result->size(); ++i) {
    if (i) line += ' ';
    line += std::to_string((*result)[i]);
  }
  line += '\n';
  std::fwrite(line.data(), 1, line.size(), stdout);
  return 0;
}

int cmd_bench(const BenchConfig& cfg, const std::string& input,
              const std::string& csv_path) {
  const AdjacencyGraph g = load_text_graph(input);
  const auto records = run_bench(g, cfg, &std::cerr);
  if (csv_path.empty()) {
    write_bench_csv(records, std::cout);
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + csv_path);
    write_bench_csv(records, out);
  }
  return 0;
}

int cmd_plot(const std::string& input, const std::string& output) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + input);
  const auto points = read_bench_csv(in);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + output);
  write_scatter_svg(points, out);
  std::printf("%s: %zu points\n", output.c_str(), points.size());
  return 0;
}

int cmd_gen(uint64_t nodes, double avg_deg, double copy_prob, uint64_t seed,
            const std::string& output) {
  const AdjacencyGraph g = generate_graph(nodes, avg_deg, copy_prob, seed);
  save_text_graph(g, output);
  std::printf("%s: %llu nodes, %llu links\n", output.c_str(),
              static_cast<unsigned long long>(g.node_count()),
              static_cast<unsigned long long>(g.edge_count()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressed web graph toolkit"};
  // long-only help; -h stays free for future use and --h means chunk height
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  const CLI::Validator pow2_check(
      [](std::string& s) -> std::string {
        const uint64_t v = std::stoull(s);
        if (v == 0 || (v & (v - 1))) return s + " is not a power of two";
        return {};
      },
      "POW2");
  const CLI::Validator pow2_or_zero_check(
      [](std::string& s) -> std::string {
        const uint64_t v = std::stoull(s);
        if (v & (v - 1)) return s + " is neither zero nor a power of two";
        return {};
      },
      "POW2|0");

  std::string input, output, method, mode = "succ", csv_path;
  uint32_t h = 32, tile = 512, stripes = 0;
  uint64_t node = 0, nodes = 0, seed = 1;
  double avg_deg = 20.0, copy_prob = 0.5;
  wgc::BenchConfig bench_cfg;

  auto* compress = app.add_subcommand("compress", "compress a text graph");
  compress->add_option("--method", method, "lm or 2d")
      ->required()
      ->check(CLI::IsMember({"lm", "2d"}));
  compress->add_option("--input", input, "text graph")->required();
  compress->add_option("--output", output, "compressed file")->required();
  compress->add_option("--h", h, "chunk height (lm)")->check(pow2_check);
  compress->add_option("--tile", tile, "tile size B (2d)")->check(pow2_check);
  compress->add_option("--stripes", stripes, "stripe count K (2d)")
      ->check(pow2_or_zero_check);

  auto* decompress =
      app.add_subcommand("decompress", "expand a compressed graph to text");
  decompress->add_option("--input", input, ".lmg or .s2d file")->required();
  decompress->add_option("--output", output, "text graph")->required();

  auto* query = app.add_subcommand("query", "print one adjacency list");
  query->add_option("--input", input, ".lmg or .s2d file")->required();
  query->add_option("--node", node, "node id")->required();
  query->add_option("--mode", mode, "succ or pred")
      ->check(CLI::IsMember({"succ", "pred"}));

  auto* bench =
      app.add_subcommand("bench", "sweep a parameter grid and emit CSV");
  bench->add_option("--input", input, "text graph")->required();
  bench->add_option("--method", bench_cfg.method, "lm or 2d")
      ->required()
      ->check(CLI::IsMember({"lm", "2d"}));
  bench->add_option("--mode", bench_cfg.mode, "succ or pred")
      ->check(CLI::IsMember({"succ", "pred"}));
  bench->add_option("--h", bench_cfg.h_grid, "chunk heights (lm)")
      ->delimiter(',')
      ->check(pow2_check);
  bench->add_option("--tile", bench_cfg.tile_grid, "tile sizes (2d)")
      ->delimiter(',')
      ->check(pow2_check);
  bench->add_option("--stripes", bench_cfg.stripe_grid, "stripe counts (2d)")
      ->delimiter(',')
      ->check(pow2_or_zero_check);
  bench->add_option("--samples", bench_cfg.samples, "queries per run");
  bench->add_option("--runs", bench_cfg.runs,
                    "timed passes (0 = method default)");
  bench->add_option("--seed", bench_cfg.seed, "sampling seed");
  bench->add_option("--csv", csv_path, "CSV output path (default stdout)");

  auto* plot = app.add_subcommand("plot", "render a benchmark CSV as SVG");
  plot->add_option("--input", input, "CSV file")->required();
  plot->add_option("--output", output, "SVG file")->required();

  auto* gen = app.add_subcommand("gen", "generate a synthetic graph");
  gen->add_option("--nodes", nodes, "node count")->required();
  gen->add_option("--avg-deg", avg_deg, "average out-degree");
  gen->add_option("--copy-prob", copy_prob, "list copy probability");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--output", output, "text graph")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compress->parsed()) {
      if (method == "lm" && compress->count("--tile"))
        throw CLI::ValidationError("--tile only applies to method 2d");
      return cmd_compress(method, input, output, h, tile, stripes);
    }
    if (decompress->parsed()) return cmd_decompress(input, output);
    if (query->parsed()) return cmd_query(input, node, mode);
    if (bench->parsed()) return cmd_bench(bench_cfg, input, csv_path);
    if (plot->parsed()) return cmd_plot(input, output);
    if (gen->parsed()) return cmd_gen(nodes, avg_deg, copy_prob, seed, output);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
