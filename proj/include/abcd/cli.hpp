#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "abcd/abcd.hpp"
#include "abcd/harness.hpp"

namespace abcd::cli {

namespace detail {

/// Without the generator's weight split, a degree-1 node counts as lucky when its single
/// neighbour sits in another community: its edge must then be a background edge.
inline WeightSplit split_from_communities(const MultiGraph& g, const Partition& communities) {
  WeightSplit split;
  split.y.assign(g.node_count(), 0);
  split.z.assign(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    const bool inside = communities.part_of[e.u] == communities.part_of[e.v];
    auto& side_u = inside ? split.y : split.z;
    ++side_u[e.u];
    ++side_u[e.v];
  }
  return split;
}

inline void print_theory(const std::string& name, const AbcdParams& p, std::ostream& out) {
  const auto ctx = theory_context(p);
  auto emit = [&](const std::string& key, double value) { out << key << '\t' << abcd::detail::format_number(value) << '\n'; };
  const bool all = name == "all";
  bool known = false;
  auto wants = [&](const char* key) {
    const bool hit = all || name == key;
    known = known || hit;
    return hit;
  };
  if (wants("d")) emit("d", ctx.d);
  if (wants("d_hat")) emit("d_hat", ctx.d_hat);
  if (wants("c_hat")) emit("c_hat", ctx.c_hat);
  if (wants("ell_pred")) emit("ell_pred", ctx.ell_pred);
  if (wants("ground_truth_q")) emit("ground_truth_q", predicted_ground_truth_q(p));
  if (wants("tree_q")) {
    if (const auto q = predicted_tree_q(p)) {
      emit("tree_q", *q);
    } else if (!all) {
      throw DomainError("tree_q has a numeric value only when xi * delta >= 3");
    }
  }
  if (wants("lucky_improvement") && (!all || p.delta == 1)) emit("lucky_improvement", predicted_lucky_improvement(p));
  if (wants("xi0") && (!all || p.delta >= 4)) {
    const auto x = xi0(p.delta);
    emit("xi0", x.value);
    emit("xi0_a", static_cast<double>(x.a));
    emit("xi0_b", static_cast<double>(x.b));
  }
  if (wants("background_pmf")) {
    for (const auto& [k, u] : background_pmf(p)) emit("u_" + std::to_string(k), u);
  }
  if (!known) throw CLI::ValidationError("--name", "unknown theory quantity '" + name + "'");
}

}  // namespace detail

/// Entry point of the command-line tool. Exit codes: 0 success, 1 runtime error, 2 usage error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"ABCD random graphs and modularity tools"};
  app.require_subcommand(1);

  std::string config, edges_path, communities_path, partition_path, out_edges, out_communities, out_path;
  std::string algo, name, spec_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool simple = false;

  auto* generate = app.add_subcommand("generate", "generate one graph and its ground-truth communities");
  generate->add_option("--config", config, "parameter file")->required();
  generate->add_option("--seed", seed, "master seed");
  generate->add_option("--out-edges", out_edges, "edge list output")->required();
  generate->add_option("--out-communities", out_communities, "community output")->required();
  generate->add_flag("--simple", simple, "switch edges toward a simple graph");
  generate->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* modularity_cmd = app.add_subcommand("modularity", "print edge contribution, degree tax and q");
  modularity_cmd->add_option("--edges", edges_path)->required();
  modularity_cmd->add_option("--partition", partition_path)->required();

  auto* partition_cmd = app.add_subcommand("partition", "compute a partition");
  partition_cmd->add_option("--algo", algo)->required()->check(CLI::IsMember({"louvain", "ecg", "tree", "lucky"}));
  partition_cmd->add_option("--edges", edges_path)->required();
  partition_cmd->add_option("--communities", communities_path, "ground truth (needed by lucky)");
  partition_cmd->add_option("--seed", seed);
  partition_cmd->add_option("--out", out_path)->required();
  partition_cmd->add_option("--threads", threads)->check(CLI::PositiveNumber);

  auto* theory_cmd = app.add_subcommand("theory", "print predicted constants as name<TAB>value");
  theory_cmd->add_option("--name", name, "d, d_hat, c_hat, ell_pred, ground_truth_q, tree_q, "
                                         "lucky_improvement, xi0, background_pmf or all")
      ->required();
  theory_cmd->add_option("--config", config)->required();

  auto* experiment = app.add_subcommand("experiment", "run an experiment spec and write its CSV");
  experiment->add_option("--spec", spec_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      BuildOptions options;
      options.threads = threads;
      options.simple = simple;
      const auto g = build_abcd(load_config(config), seed, options);
      write_graph(g.graph, g.ground_truth, out_edges, out_communities);
    } else if (modularity_cmd->parsed()) {
      const auto [g, p] = read_graph(edges_path, partition_path);
      const auto r = modularity(g, p);
      out << abcd::detail::format_number(r.edge_contribution) << '\t' << abcd::detail::format_number(r.degree_tax)
          << '\t' << abcd::detail::format_number(r.q) << '\n';
    } else if (partition_cmd->parsed()) {
      Partition result;
      auto rng = make_stream(seed, streams::clustering);
      if (algo == "lucky") {
        if (communities_path.empty()) throw CLI::RequiredError("--communities");
        const auto [g, truth] = read_graph(edges_path, communities_path);
        result = lucky_repartition(g, truth, detail::split_from_communities(g, truth));
      } else {
        std::size_t nodes = 0;
        if (!communities_path.empty()) nodes = read_partition_file(communities_path).node_count();
        const auto g = read_edges_file(edges_path, nodes);
        if (algo == "louvain") {
          result = louvain(g, rng);
        } else if (algo == "ecg") {
          EcgOptions options;
          options.threads = threads;
          result = ecg(g, rng, options);
        } else {
          result = tree_dissect(g, rng);  // throws if the bound is violated
        }
      }
      std::ofstream file(out_path);
      if (!file) throw IoError("cannot write " + out_path);
      write_partition(result.compacted(), file);
    } else if (theory_cmd->parsed()) {
      detail::print_theory(name, load_config(config), out);
    } else if (experiment->parsed()) {
      run_experiment(load_experiment_spec(spec_path));
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace abcd::cli
