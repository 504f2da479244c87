#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "abcd/dissection.hpp"
#include "abcd/ecg.hpp"
#include "abcd/errors.hpp"
#include "abcd/generator.hpp"
#include "abcd/louvain.hpp"
#include "abcd/modularity.hpp"
#include "abcd/params.hpp"
#include "abcd/powerlaw.hpp"
#include "abcd/similarity.hpp"
#include "abcd/theory.hpp"

namespace abcd {

struct Sweep {
  std::string name;  // a parameter key
  std::vector<std::string> values;
};

struct ExperimentSpec {
  std::string name;
  std::string output;
  std::vector<std::uint64_t> seeds{1};
  std::optional<Sweep> sweep;
  bool simple = false;
  std::size_t ecg_k = 16;
  unsigned threads = 1;
  /// Parameter entries as written (key -> value); the sweep overrides one of them.
  std::map<std::string, std::string> param_entries;

  /// One parameter set per sweep point (just one without a sweep), validated.
  std::vector<AbcdParams> parameter_sets() const;
};

inline const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "degree-ccdf",      "volume-scaling", "community-ccdf",   "community-count", "community-volumes",
      "ground-truth-q",   "noise-sweep",    "clustering-table", "tree-bound",      "lucky-delta1"};
  return names;
}

namespace detail {

inline const std::vector<std::string>& param_keys() {
  static const std::vector<std::string> keys{"n", "gamma", "delta", "zeta", "beta", "s", "tau", "xi", "variant"};
  return keys;
}

inline AbcdParams params_from_entries(const std::map<std::string, std::string>& entries) {
  std::ostringstream text;
  for (const auto& [key, value] : entries) text << key << '=' << value << '\n';
  std::istringstream in(text.str());
  return parse_config(in);
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? text.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// "1..30" or "4,8,15".
inline std::vector<std::uint64_t> parse_seeds(const std::string& text, std::size_t line) {
  std::vector<std::uint64_t> seeds;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_number<std::uint64_t>(trim(std::string_view(text).substr(0, dots)));
    const auto hi = parse_number<std::uint64_t>(trim(std::string_view(text).substr(dots + 2)));
    if (!lo || !hi || *hi < *lo) throw ParseError(line, "malformed seed range '" + text + "'");
    for (auto s = *lo; s <= *hi; ++s) seeds.push_back(s);
  } else {
    for (const auto& item : split(text, ',')) {
      const auto s = parse_number<std::uint64_t>(item);
      if (!s) throw ParseError(line, "malformed seed '" + item + "'");
      seeds.push_back(*s);
    }
  }
  if (seeds.empty()) throw ParseError(line, "no seeds");
  return seeds;
}

}  // namespace detail

inline std::vector<AbcdParams> ExperimentSpec::parameter_sets() const {
  std::vector<AbcdParams> out;
  if (!sweep) {
    out.push_back(detail::params_from_entries(param_entries));
    return out;
  }
  for (const auto& value : sweep->values) {
    auto entries = param_entries;
    entries[sweep->name] = value;
    out.push_back(detail::params_from_entries(entries));
  }
  return out;
}

/// Reads an experiment spec: key=value lines with `experiment`, `output`, optional
/// `seeds` (default 1), `sweep=<param>:<v1>,<v2>,...`, `simple`, `ecg_k`, `threads`, and the
/// model parameters. The noise sweep defaults to xi = 0.1, ..., 0.9.
inline ExperimentSpec parse_experiment_spec(std::istream& in) {
  auto entries = detail::parse_key_values(in);
  ExperimentSpec spec;
  auto take = [&](const char* key) -> std::optional<std::pair<std::string, std::size_t>> {
    auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    auto entry = it->second;
    entries.erase(it);
    return entry;
  };

  const auto name = take("experiment");
  if (!name) throw ParseError(0, "missing key 'experiment'");
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name->first) == names.end())
    throw ParseError(name->second, "unknown experiment '" + name->first + "'");
  spec.name = name->first;

  const auto output = take("output");
  if (!output || output->first.empty()) throw ParseError(0, "missing key 'output'");
  spec.output = output->first;

  if (const auto seeds = take("seeds")) spec.seeds = detail::parse_seeds(seeds->first, seeds->second);
  if (const auto simple = take("simple")) {
    if (simple->first != "true" && simple->first != "false")
      throw ParseError(simple->second, "simple must be 'true' or 'false'");
    spec.simple = simple->first == "true";
  }
  if (const auto k = take("ecg_k")) {
    const auto v = detail::parse_number<std::size_t>(k->first);
    if (!v || *v == 0) throw ParseError(k->second, "ecg_k must be a positive integer");
    spec.ecg_k = *v;
  }
  if (const auto threads = take("threads")) {
    const auto v = detail::parse_number<unsigned>(threads->first);
    if (!v || *v == 0) throw ParseError(threads->second, "threads must be a positive integer");
    spec.threads = *v;
  }
  if (const auto sweep = take("sweep")) {
    const auto colon = sweep->first.find(':');
    if (colon == std::string::npos) throw ParseError(sweep->second, "sweep must look like name:v1,v2,...");
    Sweep s;
    s.name = std::string(detail::trim(std::string_view(sweep->first).substr(0, colon)));
    const auto& keys = detail::param_keys();
    if (std::find(keys.begin(), keys.end(), s.name) == keys.end())
      throw ParseError(sweep->second, "cannot sweep unknown parameter '" + s.name + "'");
    s.values = detail::split(std::string_view(sweep->first).substr(colon + 1), ',');
    for (const auto& v : s.values)
      if (v.empty()) throw ParseError(sweep->second, "empty sweep value");
    spec.sweep = std::move(s);
  } else if (spec.name == "noise-sweep") {
    spec.sweep = Sweep{"xi", {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"}};
  }

  for (auto& [key, entry] : entries) spec.param_entries[key] = entry.first;
  // The swept key may be left out of the fixed entries; fill it so validation sees a full set.
  if (spec.sweep && !spec.param_entries.count(spec.sweep->name))
    spec.param_entries[spec.sweep->name] = spec.sweep->values.front();
  spec.parameter_sets();  // validates every sweep point now rather than mid-run
  return spec;
}

inline ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment spec " + path);
  return parse_experiment_spec(in);
}

/// One measured row: group key columns (e.g. K) and numeric value columns. NaN marks a
/// value that does not exist for these parameters; it is written as an empty field.
struct ResultRow {
  std::vector<std::string> key;
  std::vector<double> values;
};

struct ExperimentTable {
  std::string experiment;
  std::vector<std::string> key_columns;
  std::vector<std::string> value_columns;
  struct Entry {
    std::string seed;  // a seed, or "mean" / "std" for summary rows
    AbcdParams params;
    ResultRow row;
  };
  std::vector<Entry> entries;
};

namespace detail {

inline std::vector<std::pair<std::int64_t, double>> empirical_ccdf(std::vector<std::int64_t> values,
                                                                   std::int64_t lo, std::int64_t hi) {
  std::sort(values.begin(), values.end());
  std::vector<std::pair<std::int64_t, double>> out;
  const double total = static_cast<double>(values.size());
  for (auto k = lo; k <= hi; ++k) {
    const auto below = std::lower_bound(values.begin(), values.end(), k) - values.begin();
    out.emplace_back(k, static_cast<double>(static_cast<std::int64_t>(values.size()) - below) / total);
  }
  return out;
}

inline std::vector<ResultRow> ccdf_rows(const std::vector<std::int64_t>& values, const TruncatedPowerLaw& law) {
  std::vector<ResultRow> rows;
  for (const auto& [k, empirical] : empirical_ccdf(values, law.lo(), law.hi())) {
    const double theory = law.ccdf(k);
    rows.push_back({{std::to_string(k)}, {empirical, theory, std::abs(empirical - theory)}});
  }
  return rows;
}

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline std::vector<ResultRow> run_one(const ExperimentSpec& spec, const AbcdParams& p, std::uint64_t seed) {
  const auto& name = spec.name;
  BuildOptions build;
  build.simple = spec.simple;

  if (name == "degree-ccdf") {
    auto rng = make_stream(seed, streams::degrees);
    const auto degrees = degree_sequence(p, rng);
    return ccdf_rows(degrees.degrees, degree_distribution(p));
  }
  if (name == "volume-scaling") {
    auto rng = make_stream(seed, streams::degrees);
    const auto vol = static_cast<double>(degree_sequence(p, rng).total());
    const double nd = static_cast<double>(p.n);
    const double d_hat = mean_degree(p, Variant::discrete);
    const double d = mean_degree(p, Variant::continuous);
    return {{{}, {vol, d_hat * nd, d * nd, vol / (d_hat * nd), vol / (d * nd)}}};
  }
  if (name == "community-ccdf") {
    auto rng = make_stream(seed, streams::community_sizes);
    const auto sizes = community_sizes(p, rng);
    return ccdf_rows(sizes.sizes, community_size_distribution(p));
  }
  if (name == "community-count") {
    auto rng = make_stream(seed, streams::community_sizes);
    const auto ell = static_cast<double>(community_sizes(p, rng).ell());
    const double predicted = predicted_community_count(p);
    const double ratio = ell / predicted;
    return {{{}, {ell, predicted, ratio, ratio - 1.0, c_hat(p.beta, p.s)}}};
  }
  if (name == "community-volumes") {
    const auto g = build_abcd(p, seed, build);
    const double d_hat = mean_degree(p, Variant::discrete);
    std::vector<double> vol(g.sizes.ell(), 0.0);
    for (std::size_t v = 0; v < g.degrees.size(); ++v)
      vol[g.assignment.community_of[v]] += static_cast<double>(g.degrees.degrees[v]);
    std::vector<ResultRow> rows;
    for (std::size_t j = 0; j < vol.size(); ++j) {
      const double size = static_cast<double>(g.sizes.sizes[j]);
      rows.push_back({{std::to_string(j + 1)}, {size, vol[j], d_hat * size, vol[j] / (d_hat * size)}});
    }
    return rows;
  }
  if (name == "ground-truth-q" || name == "noise-sweep") {
    const auto g = build_abcd(p, seed, build);
    const auto r = ground_truth_modularity(g.graph, g.ground_truth, p.xi);
    return {{{},
             {r.report.edge_contribution, r.report.degree_tax, r.report.q, r.prediction, r.report.q - r.prediction}}};
  }
  if (name == "clustering-table") {
    const auto g = build_abcd(p, seed, build);
    const auto truth = modularity(g.graph, g.ground_truth).q;
    auto rng = make_stream(seed, streams::clustering, 0);
    EcgOptions options;
    options.ensemble_size = spec.ecg_k;
    const auto by_ecg = ecg(g.graph, rng, options);
    auto louvain_rng = make_stream(seed, streams::clustering, 1);
    const auto by_louvain = louvain(g.graph, louvain_rng);
    return {{{},
             {truth, modularity(g.graph, by_ecg).q, ami(by_ecg, g.ground_truth), ari(by_ecg, g.ground_truth),
              modularity(g.graph, by_louvain).q, ami(by_louvain, g.ground_truth),
              ari(by_louvain, g.ground_truth), predicted_ground_truth_q(p)}}};
  }
  if (name == "tree-bound") {
    const auto g = build_abcd(p, seed, build);
    const auto background = subgraph_with_provenance(g.graph, kBackground);
    auto rng = make_stream(seed, streams::clustering, 2);
    const auto on_background = tree_dissect_report(background, rng);
    const auto q_background = modularity(g.graph, on_background.partition).q;
    const auto on_full = tree_dissect_report(g.graph, rng);
    const auto predicted = predicted_tree_q(p);
    return {{{},
             {q_background, on_background.bound,
              static_cast<double>(on_background.component_size) / static_cast<double>(p.n), on_full.report.q,
              on_full.bound, predicted.value_or(kMissing), modularity(g.graph, g.ground_truth).q}}};
  }
  if (name == "lucky-delta1") {
    const auto g = build_abcd(p, seed, build);
    const auto truth = modularity(g.graph, g.ground_truth).q;
    const auto moved = lucky_repartition(g.graph, g.ground_truth, g.split);
    const auto lucky = lucky_nodes(g.graph, g.split);
    const double lucky_share =
        static_cast<double>(std::count(lucky.begin(), lucky.end(), 1)) / static_cast<double>(p.n);
    const auto q = modularity(g.graph, moved).q;
    const double predicted = predicted_lucky_improvement(p);
    return {{{}, {truth, q, q - truth, predicted, (q - truth) / predicted - 1.0, lucky_share}}};
  }
  throw PreconditionError("unknown experiment '" + name + "'");
}

inline std::pair<std::vector<std::string>, std::vector<std::string>> columns_of(const std::string& name) {
  if (name == "degree-ccdf" || name == "community-ccdf")
    return {{"K"}, {"empirical_ccdf", "theoretical_ccdf", "abs_gap"}};
  if (name == "volume-scaling")
    return {{}, {"volume", "d_hat_n", "d_n", "ratio_discrete", "ratio_continuous"}};
  if (name == "community-count") return {{}, {"ell", "ell_predicted", "ratio", "relative_error", "c_hat"}};
  if (name == "community-volumes") return {{"community"}, {"size", "volume", "d_hat_size", "ratio"}};
  if (name == "ground-truth-q" || name == "noise-sweep")
    return {{}, {"edge_contribution", "degree_tax", "q", "predicted_q", "q_minus_predicted"}};
  if (name == "clustering-table")
    return {{},
            {"q_ground_truth", "q_ecg", "ami_ecg", "ari_ecg", "q_louvain", "ami_louvain", "ari_louvain",
             "predicted_q"}};
  if (name == "tree-bound")
    return {{},
            {"q_tree", "bound", "component_fraction", "q_tree_full", "bound_full", "predicted_q",
             "q_ground_truth"}};
  if (name == "lucky-delta1")
    return {{},
            {"q_ground_truth", "q_lucky", "improvement", "predicted_improvement", "relative_error",
             "lucky_fraction"}};
  throw PreconditionError("unknown experiment '" + name + "'");
}

inline std::string format_value(double v) { return std::isnan(v) ? std::string() : format_number(v); }

}  // namespace detail

/// Runs every (sweep point, seed) pair, seeds in parallel, and appends mean and std rows
/// (sample standard deviation, 0 for a single seed) for each (parameters, key) group.
/// Rows are ordered by sweep point then seed, so the table does not depend on `threads`.
inline ExperimentTable run_experiment_table(const ExperimentSpec& spec) {
  ExperimentTable table;
  table.experiment = spec.name;
  std::tie(table.key_columns, table.value_columns) = detail::columns_of(spec.name);
  const auto sets = spec.parameter_sets();

  const std::size_t jobs = sets.size() * spec.seeds.size();
  std::vector<std::vector<ResultRow>> results(jobs);
  parallel_for(jobs, spec.threads, [&](std::size_t i) {
    results[i] = detail::run_one(spec, sets[i / spec.seeds.size()], spec.seeds[i % spec.seeds.size()]);
  });

  for (std::size_t set = 0; set < sets.size(); ++set) {
    std::vector<std::vector<std::string>> keys;
    std::map<std::vector<std::string>, std::vector<std::vector<double>>> grouped;
    for (std::size_t s = 0; s < spec.seeds.size(); ++s) {
      for (auto& row : results[set * spec.seeds.size() + s]) {
        auto& samples = grouped[row.key];
        if (samples.empty()) keys.push_back(row.key);
        samples.push_back(row.values);
        table.entries.push_back({std::to_string(spec.seeds[s]), sets[set], std::move(row)});
      }
    }
    for (const auto& key : keys) {
      const auto& samples = grouped[key];
      const std::size_t width = table.value_columns.size();
      ResultRow mean{key, std::vector<double>(width, 0.0)};
      ResultRow sd{key, std::vector<double>(width, 0.0)};
      for (std::size_t c = 0; c < width; ++c) {
        double sum = 0.0;
        for (const auto& v : samples) sum += v[c];
        const double m = sum / static_cast<double>(samples.size());
        double ss = 0.0;
        for (const auto& v : samples) ss += (v[c] - m) * (v[c] - m);
        mean.values[c] = m;
        sd.values[c] = samples.size() > 1 ? std::sqrt(ss / static_cast<double>(samples.size() - 1)) : 0.0;
      }
      table.entries.push_back({"mean", sets[set], std::move(mean)});
      table.entries.push_back({"std", sets[set], std::move(sd)});
    }
  }
  return table;
}

/// Header: experiment, seed, the nine parameters, the key columns, the value columns.
inline std::string render_csv(const ExperimentTable& table) {
  std::ostringstream out;
  out << "experiment,seed";
  for (const auto& k : detail::param_keys()) out << ',' << k;
  for (const auto& k : table.key_columns) out << ',' << k;
  for (const auto& v : table.value_columns) out << ',' << v;
  out << '\n';
  for (const auto& e : table.entries) {
    const auto& p = e.params;
    out << table.experiment << ',' << e.seed << ',' << p.n << ',' << detail::format_number(p.gamma) << ','
        << p.delta << ',' << detail::format_number(p.zeta) << ',' << detail::format_number(p.beta) << ',' << p.s
        << ',' << detail::format_number(p.tau) << ',' << detail::format_number(p.xi) << ','
        << to_string(p.variant);
    for (const auto& k : e.row.key) out << ',' << k;
    for (auto v : e.row.values) out << ',' << detail::format_value(v);
    out << '\n';
  }
  return out.str();
}

inline ExperimentTable run_experiment(const ExperimentSpec& spec) {
  auto table = run_experiment_table(spec);
  std::ofstream out(spec.output, std::ios::binary);
  if (!out) throw IoError("cannot write " + spec.output);
  out << render_csv(table);
  if (!out) throw IoError("failed writing " + spec.output);
  return table;
}

}  // namespace abcd
