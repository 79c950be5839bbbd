// Command-line front end: transform, inverse, score, merge, simulate.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kendall/io.hpp"
#include "kendall/kendall.hpp"

namespace {

using namespace kendall;

struct GlobalOptions {
  std::string log_base = "e";
  std::uint64_t seed = 1;
};

LogBase parse_base(const std::string& s) {
  if (s == "e") return LogBase::nats;
  if (s == "2") return LogBase::bits;
  throw std::invalid_argument("log base must be 'e' or '2', got '" + s + "'");
}

/// Output sink: a file when a path is given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw io::FormatError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

io::TextTable read_table(const std::string& path) {
  auto in = io::detail::open_input(path);
  try {
    return io::read_text_table(in);
  } catch (const io::FormatError& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

io::TransformedSystem read_transformed_file(const std::string& path) {
  auto in = io::detail::open_input(path);
  try {
    return io::read_transformed(in);
  } catch (const io::FormatError& e) {
    throw io::FormatError(path + ": " + e.what());
  }
}

/// Numeric feature columns of a table, expanding categorical ones on request.
std::vector<OrdinalVector> feature_columns(const io::TextTable& t, bool expand, std::optional<std::size_t> skip = {}) {
  std::vector<OrdinalVector> out;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (skip && *skip == c) continue;
    if (io::is_numeric_column(t, c)) {
      out.push_back(io::numeric_column(t, c));
    } else if (expand) {
      for (auto& indicator : expand_categorical(io::categorical_column(t, c))) out.push_back(std::move(indicator));
    } else {
      io::numeric_column(t, c);  // throws, naming the offending row
    }
  }
  return out;
}

Decision decision_column(const io::TextTable& t, std::size_t c) {
  if (io::is_numeric_column(t, c)) return io::numeric_column(t, c);
  return io::categorical_column(t, c);
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string input;
  std::string output;
  std::string jitter;
  bool expand = false;
  double tie_tolerance = 0.0;
};

int run_transform(const TransformArgs& args) {
  const auto table = read_table(args.input);
  auto columns = feature_columns(table, args.expand);
  if (table.rows.size() < 2) {
    throw io::FormatError(args.input + ": need at least 2 rows to transform, found " +
                          std::to_string(table.rows.size()));
  }

  if (!args.jitter.empty()) {
    const auto colon = args.jitter.find(':');
    double scale = 0.0;
    std::uint64_t seed = 0;
    try {
      if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
      seed = std::stoull(args.jitter.substr(0, colon));
      scale = std::stod(args.jitter.substr(colon + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("--jitter expects <seed>:<scale>, got '" + args.jitter + "'");
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      columns[c] = jitter_ties(columns[c], kendall::detail::splitmix64(seed + c), scale);
    }
  }

  io::TransformedSystem sys{table.rows.size(), transform_system(columns, {args.tie_tolerance})};
  Output out(args.output);
  io::write_transformed(out.stream(), sys);
  return 0;
}

struct InverseArgs {
  std::string input;
  std::string output;
  bool weighted = false;
};

int run_inverse(const InverseArgs& args) {
  std::vector<std::string> names;
  std::vector<std::vector<double>> ranks;
  if (args.weighted) {
    auto in = io::detail::open_input(args.input);
    const auto sys = io::read_weights(in);
    names = sys.names;
    for (const auto& v : sys.votes) ranks.push_back(weighted_copeland(v, sys.n).ranks);
  } else {
    const auto sys = read_transformed_file(args.input);
    for (const auto& col : sys.columns) {
      names.push_back(col.name);
      ranks.push_back(copeland_inverse(col.sequence).ranks);
    }
  }
  Output out(args.output);
  io::write_columns(out.stream(), names, ranks);
  return 0;
}

struct ScoreArgs {
  std::vector<std::string> inputs;
  std::string decision;
  std::string method = "kendall";
  std::string base;
  std::string output;
  bool expand = false;
};

/// Transformed inputs are merged as batches; original inputs are either
/// transformed per batch and merged (kendall) or concatenated (binned).
FeatureRanking score_inputs(const ScoreArgs& args) {
  const auto method = ScoringMethod::parse(args.method);
  const bool transformed = io::looks_transformed(args.inputs.front());
  for (const auto& path : args.inputs) {
    if (io::looks_transformed(path) != transformed) {
      throw std::invalid_argument("cannot mix transformed and original inputs");
    }
  }

  if (transformed) {
    if (method.kind != ScoringMethod::Kind::kendall) {
      throw std::invalid_argument("transformed inputs can only be scored with --method kendall");
    }
    std::vector<io::TransformedSystem> batches;
    for (const auto& p : args.inputs) batches.push_back(read_transformed_file(p));
    std::vector<NamedSequence> features;
    std::optional<KendallSequence> target;
    for (std::size_t c = 0; c < batches.front().columns.size(); ++c) {
      const std::string& name = batches.front().columns[c].name;
      std::vector<KendallSequence> parts;
      for (const auto& b : batches) {
        auto it = std::find_if(b.columns.begin(), b.columns.end(), [&](const NamedSequence& s) { return s.name == name; });
        if (it == b.columns.end()) throw std::invalid_argument("column '" + name + "' missing from a batch");
        parts.push_back(it->sequence);
      }
      auto merged = parts.size() == 1 ? parts.front() : merge_transformed(parts);
      if (name == args.decision) {
        target = std::move(merged);
      } else {
        features.push_back({name, std::move(merged)});
      }
    }
    if (!target) throw std::invalid_argument("unknown decision column '" + args.decision + "'");
    return rank_transformed(features, joint_target(std::span<const KendallSequence>(&*target, 1)));
  }

  std::vector<io::TextTable> tables;
  for (const auto& p : args.inputs) tables.push_back(read_table(p));
  for (const auto& t : tables) {
    if (t.header != tables.front().header) throw std::invalid_argument("input batches have different columns");
  }
  const std::size_t dc = tables.front().column_index(args.decision);

  io::TextTable all = tables.front();
  std::vector<std::size_t> sizes{tables.front().rows.size()};
  for (std::size_t k = 1; k < tables.size(); ++k) {
    all.rows.insert(all.rows.end(), tables[k].rows.begin(), tables[k].rows.end());
    sizes.push_back(tables[k].rows.size());
  }
  // categories are expanded over all batches so every batch shares one column set
  const auto columns = feature_columns(all, args.expand, dc);
  const auto decision = decision_column(all, dc);
  if (tables.size() == 1 || method.kind != ScoringMethod::Kind::kendall) {
    return rank_features(columns, decision, method);
  }

  // per-batch transformation, merged with cross-batch pairs missing
  const auto map = BatchMap::from_sizes(sizes);
  auto merge_batches = [&](const OrdinalVector& column) {
    std::vector<KendallSequence> parts;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      const auto first = column.values.begin() + static_cast<std::ptrdiff_t>(map.offsets[k]);
      parts.push_back(kendall_transform(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(sizes[k]))));
    }
    return merge_transformed(parts, map);
  };
  std::vector<NamedSequence> features;
  for (const auto& column : columns) features.push_back({column.name, merge_batches(column)});
  std::vector<KendallSequence> target_parts;
  for (const auto& column : decision_columns(decision)) target_parts.push_back(merge_batches(column));
  return rank_transformed(features, joint_target(target_parts));
}

int run_score(const ScoreArgs& args, const GlobalOptions& global) {
  const LogBase base = parse_base(args.base.empty() ? global.log_base : args.base);
  const auto ranking = score_inputs(args);
  Output out(args.output);
  out.stream() << "feature,score\n";
  for (const auto& e : ranking.entries) out.stream() << e.name << ',' << io::format_number(in_base(e.score, base)) << '\n';
  return 0;
}

struct MergeArgs {
  std::vector<std::string> inputs;
  std::string output;
};

int run_merge(const MergeArgs& args) {
  std::vector<io::TransformedSystem> batches;
  for (const auto& p : args.inputs) batches.push_back(read_transformed_file(p));
  const auto& first = batches.front();

  std::vector<std::size_t> sizes;
  for (const auto& b : batches) {
    if (b.columns.size() != first.columns.size()) throw std::invalid_argument("inputs have different feature sets");
    sizes.push_back(b.n);
  }
  const auto map = BatchMap::from_sizes(sizes);

  io::TransformedSystem merged{map.total, {}};
  for (const auto& col : first.columns) {
    std::vector<KendallSequence> parts;
    for (const auto& b : batches) {
      auto it = std::find_if(b.columns.begin(), b.columns.end(),
                             [&](const NamedSequence& s) { return s.name == col.name; });
      if (it == b.columns.end()) {
        throw std::invalid_argument("inputs have different feature sets: '" + col.name + "' missing");
      }
      parts.push_back(it->sequence);
    }
    merged.columns.push_back({col.name, merge_transformed(parts, map)});
  }
  Output out(args.output);
  io::write_transformed(out.stream(), merged);
  return 0;
}

struct SimulateArgs {
  std::string kind;
  double r = 0.0;
  std::size_t n = 0;
  std::size_t reps = 100;
  double lambda = 0.5;
  std::string interaction = "linear";
  std::string input;
  std::string decision;
  std::size_t objects = 40;
  std::size_t features = 20;
  double scale = 3.0;
  std::string output;
  std::string summary;
};

void write_band_row(std::ostream& out, const std::string& label, const PercentileBand& band, double factor) {
  out << label;
  for (double v : band.values) out << ',' << io::format_number(v * factor);
  out << '\n';
}

int run_simulate(const SimulateArgs& args, const GlobalOptions& global) {
  const double factor = in_base(1.0, parse_base(global.log_base));
  std::ostringstream table;
  std::ostringstream summary;
  summary << "series,p05,p25,p50,p75,p95\n";

  if (args.kind == "bivariate") {
    const auto sim = simulate_bivariate(args.r, args.n ? args.n : 100, args.reps, global.seed);
    table << "replicate,estimator,value\n";
    for (std::size_t rep = 0; rep < args.reps; ++rep) {
      for (std::size_t e = 0; e < sim.estimators.size(); ++e) {
        table << rep << ',' << sim.estimators[e] << ',' << io::format_number(sim.values[e][rep] * factor) << '\n';
      }
    }
    for (std::size_t e = 0; e < sim.estimators.size(); ++e) write_band_row(summary, sim.estimators[e], sim.bands[e], factor);
  } else if (args.kind == "multivariate") {
    InteractionKind kind;
    if (args.interaction == "linear") {
      kind = InteractionKind::linear;
    } else if (args.interaction == "max") {
      kind = InteractionKind::max;
    } else {
      throw std::invalid_argument("--interaction must be linear or max");
    }
    const auto reps = simulate_multivariate_reps(args.lambda, kind, args.n ? args.n : 200, args.reps, global.seed);
    table << "replicate,lambda,score,value\n";
    std::vector<std::vector<double>> series(MultivariateScores::kNames.size());
    for (std::size_t rep = 0; rep < reps.size(); ++rep) {
      const auto values = reps[rep].as_array();
      for (std::size_t s = 0; s < values.size(); ++s) {
        table << rep << ',' << io::format_number(args.lambda) << ',' << MultivariateScores::kNames[s] << ','
              << io::format_number(values[s] * factor) << '\n';
        series[s].push_back(values[s]);
      }
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
      write_band_row(summary, MultivariateScores::kNames[s], percentile_band(series[s]), factor);
    }
  } else if (args.kind == "integration") {
    std::vector<OrdinalVector> features;
    Decision decision;
    if (!args.input.empty()) {
      if (args.decision.empty()) throw std::invalid_argument("integration with --input needs --decision");
      const auto t = read_table(args.input);
      const std::size_t dc = t.column_index(args.decision);
      features = feature_columns(t, false, dc);
      decision = decision_column(t, dc);
    } else {
      auto sys = synthetic_system(args.objects, args.features, global.seed);
      features = std::move(sys.features);
      decision = std::move(sys.decision);
    }
    const auto res = simulate_integration(features, decision, args.scale, args.reps, global.seed);
    table << "replicate,merge,agreement\n";
    for (std::size_t rep = 0; rep < res.transformed_agreement.size(); ++rep) {
      table << rep << ",transformed," << io::format_number(res.transformed_agreement[rep]) << '\n';
      table << rep << ",naive," << io::format_number(res.naive_agreement[rep]) << '\n';
    }
    write_band_row(summary, "transformed", res.transformed_band, 1.0);
    write_band_row(summary, "naive", res.naive_band, 1.0);
  } else {
    throw std::invalid_argument("simulate kind must be bivariate, multivariate or integration");
  }

  Output out(args.output);
  out.stream() << table.str();
  if (args.summary.empty()) {
    std::cout << summary.str();
  } else {
    Output s(args.summary);
    s.stream() << summary.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kendall transformation of ordinal data and information-theoretic analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--log-base", global.log_base, "Logarithm base of reported information: e or 2")
      ->check(CLI::IsMember({"e", "2"}));
  app.add_option("--seed", global.seed, "Seed for simulations");

  TransformArgs transform_args;
  auto* transform = app.add_subcommand("transform", "Kendall-transform every column of a table");
  transform->add_option("input", transform_args.input, "Delimited table, header row, one row per object")->required();
  transform->add_option("-o,--output", transform_args.output, "Output path (default stdout)");
  transform->add_option("--jitter", transform_args.jitter, "Break ties with seeded noise, <seed>:<scale>");
  transform->add_flag("--expand-categorical", transform_args.expand, "Split text columns into one-vs-rest indicators");
  transform->add_option("--tie-tolerance", transform_args.tie_tolerance, "Treat values this close as tied")
      ->check(CLI::NonNegativeNumber);

  InverseArgs inverse_args;
  auto* inverse = app.add_subcommand("inverse", "Recover per-object ranks by Copeland scoring");
  inverse->add_option("input", inverse_args.input, "Transformed table, or weight table with --weighted")->required();
  inverse->add_option("-o,--output", inverse_args.output, "Output path (default stdout)");
  inverse->add_flag("--weighted", inverse_args.weighted, "Input holds per-pair A/D/T weights");

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Rank features by mutual information with a decision");
  score->add_option("inputs", score_args.inputs, "Original or transformed tables; several are treated as batches")
      ->required();
  score->add_option("--decision", score_args.decision, "Decision column name")->required();
  score->add_option("--method", score_args.method, "kendall, width:<k> or freq:<k>");
  score->add_option("--base", score_args.base, "Overrides --log-base for this command")
      ->check(CLI::IsMember({"e", "2"}));
  score->add_flag("--expand-categorical", score_args.expand, "Split text feature columns into indicators");
  score->add_option("-o,--output", score_args.output, "Output path (default stdout)");

  MergeArgs merge_args;
  auto* merge = app.add_subcommand("merge", "Merge independently transformed batches");
  merge->add_option("inputs", merge_args.inputs, "Transformed tables, in batch order")->required();
  merge->add_option("-o,--output", merge_args.output, "Output path (default stdout)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded simulation and write a tidy replicate table");
  simulate->add_option("kind", sim_args.kind, "bivariate, multivariate or integration")
      ->required()
      ->check(CLI::IsMember({"bivariate", "multivariate", "integration"}));
  simulate->add_option("--r", sim_args.r, "Correlation (bivariate)");
  simulate->add_option("--n", sim_args.n, "Sample size (bivariate default 100, multivariate default 200)");
  simulate->add_option("--reps", sim_args.reps, "Replicates");
  simulate->add_option("--lambda", sim_args.lambda, "Mixing weight (multivariate)");
  simulate->add_option("--interaction", sim_args.interaction, "linear or max (multivariate)");
  simulate->add_option("--input", sim_args.input, "Table for the integration experiment (default synthetic)");
  simulate->add_option("--decision", sim_args.decision, "Decision column of --input");
  simulate->add_option("--objects", sim_args.objects, "Synthetic table rows");
  simulate->add_option("--features", sim_args.features, "Synthetic table feature columns");
  simulate->add_option("--scale", sim_args.scale, "Factor applied to one half (integration)");
  simulate->add_option("-o,--output", sim_args.output, "Replicate table path (default stdout)");
  simulate->add_option("--summary", sim_args.summary, "Percentile summary path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*transform) return run_transform(transform_args);
    if (*inverse) return run_inverse(inverse_args);
    if (*score) return run_score(score_args, global);
    if (*merge) return run_merge(merge_args);
    if (*simulate) return run_simulate(sim_args, global);
  } catch (const std::exception& e) {
    std::cerr << "kendall: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
