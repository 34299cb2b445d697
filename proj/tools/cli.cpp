#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcv/errors.hpp"
#include "mcv/io.hpp"
#include "mcv/metrics.hpp"
#include "mcv/properties.hpp"
#include "mcv/sims.hpp"
#include "mcv/spdlinalg.hpp"
#include "mcv/whitening.hpp"

namespace mcv::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::string convention = "population";
  std::vector<std::string> metrics;
  std::vector<double> q{2.0};
  std::optional<std::uint64_t> seed;
  unsigned partitions = 1;
  // whiten
  std::string kind = "zca_cor";
  // verify
  bool all = false;
  // simulate
  std::string experiment;
  std::vector<int> points;
  int samples = 0;
  bool nested_means = false;
  bool include_start = false;
  double ridge = 1e-8;
  // influence
  std::vector<double> point;
  double eps = 0.01;
};

std::string num(double v, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

Json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Vector(m.row(i).transpose())));
  return rows;
}

void print_table(std::ostream& os, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << cells[c];
      if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size() + 2, ' ');
    }
    os << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  line(rule);
  for (const auto& row : rows) line(row);
}

Convention cli_convention(const Options& o) { return parse_convention(o.convention); }

std::vector<MetricSpec> metric_specs(const Options& o, std::vector<std::string> fallback) {
  const auto& names = o.metrics.empty() ? fallback : o.metrics;
  std::vector<MetricSpec> specs;
  for (const auto& name : names) {
    const MetricId id = parse_metric_id(name);
    if (id == MetricId::gq) {
      for (double q : o.q) specs.push_back({id, q});
    } else {
      specs.push_back({id, 2.0});
    }
  }
  return specs;
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("MCV_DEFAULT_SEED"); env && *env) {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw Error(ErrorCode::InvalidArgument, "MCV_DEFAULT_SEED='" + std::string(text) + "' is not an unsigned integer");
    }
    return value;
  }
  return kDefaultSeed;
}

struct Input {
  std::optional<DataSet> data;
  std::optional<MomentSummary> summary;
};

Input load_input(const std::string& path) {
  Input in;
  if (io::looks_like_json(path)) {
    in.summary = io::read_summary_json_file(path);
  } else {
    in.data = io::read_csv_file(path);
  }
  return in;
}

// ---------------------------------------------------------------- compute

Json report_json(const MetricReport& r) {
  Json j;
  j["metric"] = std::string(to_string(r.metric));
  if (r.q) j["q"] = *r.q;
  j["value"] = r.value;
  j["n"] = r.n;
  j["convention"] = std::string(to_string(r.convention));
  j["flags"] = r.flags;
  return j;
}

void cmd_compute(const Options& o, std::ostream& out) {
  const Input in = load_input(o.input);
  const auto specs = metric_specs(o, {"gamma_vn", "gamma_r", "gamma_vv", "gamma_az", "g2"});
  std::vector<MetricReport> reports;
  for (const auto& spec : specs) {
    if (in.summary) {
      reports.push_back(compute(spec, *in.summary));
    } else {
      reports.push_back(compute(spec, *in.data, PairwiseOptions{o.partitions, cli_convention(o)}));
    }
    if (spec.id == MetricId::gq) reports.back().q = spec.q;
  }

  if (o.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    out << arr.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "metric_id,q,value,n,convention\n";
    for (const auto& r : reports) {
      out << to_string(r.metric) << ',' << (r.q ? num(*r.q) : "") << ',' << num(r.value) << ',' << r.n << ','
          << to_string(r.convention) << '\n';
    }
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
      std::string flags;
      for (const auto& f : r.flags) flags += (flags.empty() ? "" : ",") + f;
      rows.push_back({MetricSpec{r.metric, r.q.value_or(2.0)}.label(), num(r.value, 10), std::to_string(r.n),
                      std::string(to_string(r.convention)), flags});
    }
    print_table(out, {"metric", "value", "n", "convention", "flags"}, rows);
  }
}

// ---------------------------------------------------------------- whiten

void cmd_whiten(const Options& o, std::ostream& out, std::ostream& err) {
  const Input in = load_input(o.input);
  const MomentSummary ms = in.summary ? *in.summary : estimate_moments(*in.data, cli_convention(o));
  const WhiteningTransform W = make_whitening(ms, parse_whitening_kind(o.kind));
  const bool ill = W.condition > linalg::kConditionWarning;
  if (ill) err << "warning: condition number " << num(W.condition, 6) << " exceeds " << num(linalg::kConditionWarning, 3) << '\n';
  const Vector white_mean = W.matrix * ms.mean;

  if (o.format == "json") {
    Json j;
    j["kind"] = std::string(to_string(W.kind));
    j["condition"] = W.condition;
    j["flags"] = ill ? Json::array({"ill_conditioned"}) : Json::array();
    j["matrix"] = to_json(W.matrix);
    j["whitened_mean"] = to_json(white_mean);
    try {
      j["component_cvs"] = to_json(component_cvs(W, ms));
    } catch (const Error&) {
      j["component_cvs"] = nullptr;
    }
    if (in.data) j["rows"] = to_json(apply_whitening(W, *in.data).values());
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    if (in.data) {
      io::write_csv(out, apply_whitening(W, *in.data));
    } else {
      io::write_csv(out, DataSet(W.matrix));
    }
  } else {
    out << "kind: " << to_string(W.kind) << "\ncondition: " << num(W.condition, 6) << "\nmatrix:\n";
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header;
    for (Index j = 0; j < W.matrix.cols(); ++j) header.push_back("c" + std::to_string(j + 1));
    for (Index i = 0; i < W.matrix.rows(); ++i) {
      std::vector<std::string> row;
      for (Index j = 0; j < W.matrix.cols(); ++j) row.push_back(num(W.matrix(i, j), 8));
      rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
  }
}

// ---------------------------------------------------------------- verify

constexpr Index kMaxWitnessDim = 8;

Json verdict_json(const MatrixCell& cell) {
  const PropertyVerdict& v = cell.verdict;
  Json j;
  j["metric"] = std::string(to_string(v.metric.id));
  j["property"] = std::string(to_string(v.property));
  j["verdict"] = std::string(to_string(v.verdict));
  j["expected"] = cell.expected ? Json(std::string(to_string(*cell.expected))) : Json(nullptr);
  j["mismatch"] = cell.mismatch;
  j["tolerance"] = v.tolerance;
  if (v.ratio) j["ratio"] = *v.ratio;
  j["note"] = v.note;
  if (v.witness) {
    Json w;
    if (v.witness->input.dim() <= kMaxWitnessDim) {
      w["input"] = {{"mean", to_json(v.witness->input.mean)}, {"cov", to_json(v.witness->input.cov)}};
    } else {
      w["input"] = {{"n", v.witness->input.dim()}};
    }
    w["before"] = v.witness->before;
    w["after"] = v.witness->after;
    w["detail"] = v.witness->detail;
    j["witness"] = std::move(w);
  }
  return j;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const SuiteResult suite = counterexample_suite(resolve_seed(o));

  if (o.format == "json") {
    Json j;
    j["seed"] = suite.seed;
    Json golden = Json::array();
    for (const auto& g : suite.golden) {
      golden.push_back({{"name", g.name}, {"expected", g.expected}, {"actual", g.actual},
                        {"tolerance", g.tolerance}, {"passed", g.passed}});
    }
    j["golden"] = std::move(golden);
    Json matrix = Json::array();
    for (const auto& cell : suite.matrix) matrix.push_back(verdict_json(cell));
    j["matrix"] = std::move(matrix);
    j["golden_failures"] = suite.golden_failures;
    j["mismatches"] = suite.mismatches;
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "metric_id,property,verdict,expected,mismatch\n";
    for (const auto& cell : suite.matrix) {
      out << to_string(cell.verdict.metric.id) << ',' << to_string(cell.verdict.property) << ','
          << to_string(cell.verdict.verdict) << ',' << (cell.expected ? to_string(*cell.expected) : "") << ','
          << (cell.mismatch ? "true" : "false") << '\n';
    }
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& g : suite.golden) {
      rows.push_back({g.name, num(g.expected, 15), num(g.actual, 15), g.passed ? "ok" : "FAIL"});
    }
    print_table(out, {"instance", "expected", "actual", "status"}, rows);
    out << '\n';

    std::vector<std::string> header{"metric"};
    for (PropertyId p : all_property_ids()) header.emplace_back(to_string(p));
    rows.clear();
    std::size_t k = 0;
    for (MetricId id : matrix_metrics()) {
      std::vector<std::string> row{std::string(to_string(id))};
      for (std::size_t p = 0; p < all_property_ids().size(); ++p, ++k) {
        const auto& cell = suite.matrix[k];
        std::string text(to_string(cell.verdict.verdict));
        if (!cell.expected) text += " (unclaimed)";
        if (cell.mismatch) text += " !";
        row.push_back(std::move(text));
      }
      rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
    out << "\nseed: " << suite.seed << "\ngolden failures: " << suite.golden_failures
        << "\nmismatches: " << suite.mismatches << '\n';
  }

  if (suite.golden_failures > 0 || suite.mismatches > 0) {
    err << "verify: " << suite.golden_failures << " golden failure(s), " << suite.mismatches
        << " verdict mismatch(es)\n";
    for (const auto& cell : suite.matrix) {
      if (!cell.mismatch) continue;
      err << "  " << to_string(cell.verdict.metric.id) << " / " << to_string(cell.verdict.property) << ": got "
          << to_string(cell.verdict.verdict) << ", expected " << to_string(*cell.expected);
      if (cell.verdict.witness) {
        err << " (before " << num(cell.verdict.witness->before, 10) << ", after "
            << num(cell.verdict.witness->after, 10) << ')';
      }
      err << '\n';
    }
    return kValidationError;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- simulate

void cmd_simulate(const Options& o, std::ostream& out) {
  ExperimentConfig config = ExperimentConfig::defaults(parse_experiment(o.experiment), *o.seed);
  if (!o.points.empty()) config.points = o.points;
  if (o.samples > 0) config.sample_count = o.samples;
  if (!o.metrics.empty()) {
    config.metrics.clear();
    for (const auto& spec : metric_specs(o, {})) {
      if (spec.id == MetricId::gq && spec.q != 2.0) {
        throw Error(ErrorCode::InvalidArgument, "simulate evaluates gq at q = 2 only");
      }
      config.metrics.push_back(spec.id);
    }
  }
  config.convention = cli_convention(o);
  config.nested_means = o.nested_means;
  config.include_start = o.include_start;
  config.ridge = o.ridge;
  const ExperimentResult result = simulate(config);

  if (o.format == "csv") {
    out << "x_value,metric_id,value\n";
    for (const auto& c : result.cells) out << c.x << ',' << to_string(c.metric) << ',' << num(c.value) << '\n';
  } else if (o.format == "json") {
    Json j;
    j["experiment"] = std::string(to_string(config.experiment));
    j["seed"] = config.seed;
    j["sample_count"] = config.sample_count;
    j["points"] = config.points;
    Json metrics = Json::array();
    for (MetricId id : config.metrics) metrics.push_back(std::string(to_string(id)));
    j["metrics"] = std::move(metrics);
    j["convention"] = std::string(to_string(config.convention));
    j["nested_means"] = config.nested_means;
    j["include_start"] = config.include_start;
    j["ridge"] = config.ridge;
    Json cells = Json::array();
    for (const auto& c : result.cells) {
      cells.push_back({{"x_value", c.x}, {"metric_id", std::string(to_string(c.metric))}, {"value", c.value}});
    }
    j["cells"] = std::move(cells);
    j["seconds"] = result.seconds;
    j["ridge_added"] = result.ridge_added;
    out << j.dump(2) << '\n';
  } else {
    std::vector<std::string> header{"x"};
    for (MetricId id : config.metrics) header.emplace_back(to_string(id));
    std::vector<std::vector<std::string>> rows;
    for (int x : config.points) {
      std::vector<std::string> row{std::to_string(x)};
      for (MetricId id : config.metrics) row.push_back(num(result.value(x, id), 8));
      rows.push_back(std::move(row));
    }
    print_table(out, header, rows);
  }
}

// ---------------------------------------------------------------- influence

void cmd_influence(const Options& o, std::ostream& out) {
  const DataSet data = io::read_csv_file(o.input);
  const Vector x = Eigen::Map<const Vector>(o.point.data(), static_cast<Index>(o.point.size()));
  const MomentSummary ms = estimate_moments(data, Convention::population);
  const double formula = influence_g2(x, ms);
  const InfluenceEstimate fd = influence_fd(x, data, o.eps);

  if (o.format == "json") {
    Json j;
    j["point"] = o.point;
    j["g2"] = g2(ms).value;
    j["formula"] = formula;
    j["finite_difference"] = {{"eps", fd.eps},
                              {"at_eps", fd.at_eps},
                              {"at_half_eps", fd.at_half_eps},
                              {"richardson", fd.richardson},
                              {"relative_change", fd.relative_change}};
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    out << "formula,fd_eps,fd_half_eps,richardson,relative_change\n"
        << num(formula) << ',' << num(fd.at_eps) << ',' << num(fd.at_half_eps) << ',' << num(fd.richardson) << ','
        << num(fd.relative_change) << '\n';
  } else {
    print_table(out, {"estimate", "value"},
                {{"closed form", num(formula, 10)},
                 {"finite difference, eps = " + num(fd.eps, 6), num(fd.at_eps, 10)},
                 {"finite difference, eps = " + num(fd.eps / 2.0, 6), num(fd.at_half_eps, 10)},
                 {"Richardson extrapolation", num(fd.richardson, 10)},
                 {"relative change eps -> eps/2", num(fd.relative_change, 6)}});
  }
}

void add_common(CLI::App* cmd, Options& o, bool needs_input) {
  auto* input = cmd->add_option("--input,-i", o.input, "CSV with a header row, or a moment-summary JSON file");
  input->check(CLI::ExistingFile);
  if (needs_input) input->required();
  cmd->add_option("--output,-o", o.output, "Write results here instead of stdout");
  cmd->add_option("--format,-f", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Multivariate coefficients of variation: metrics, whitening, property checks, simulations"};
  app.name(args.empty() ? "mcv" : args.front());
  app.require_subcommand(1);

  auto* compute_cmd = app.add_subcommand("compute", "Evaluate metrics on data or a moment summary");
  add_common(compute_cmd, o, true);
  compute_cmd->add_option("--metrics,-m", o.metrics, "Comma-separated metric ids")->delimiter(',');
  compute_cmd->add_option("--q", o.q, "Exponents for gq (each >= 1)")->delimiter(',')->check(CLI::Range(1.0, 1e300));
  compute_cmd->add_option("--convention", o.convention, "Covariance estimator for CSV input")
      ->check(CLI::IsMember({"population", "unbiased"}));
  compute_cmd->add_option("--partitions", o.partitions, "Worker threads for pairwise kernels")
      ->check(CLI::Range(1u, 256u));

  auto* whiten_cmd = app.add_subcommand("whiten", "Whitening matrix and whitened data");
  add_common(whiten_cmd, o, true);
  whiten_cmd->add_option("--kind", o.kind, "Whitening flavour")->check(CLI::IsMember({"zca_cor", "zca-cor", "cholesky"}));
  whiten_cmd->add_option("--convention", o.convention, "Covariance estimator for CSV input")
      ->check(CLI::IsMember({"population", "unbiased"}));

  auto* verify_cmd = app.add_subcommand("verify", "Reproduce the counterexample registry and verdict matrix");
  verify_cmd->add_flag("--all", o.all, "Run every registered check (the default)");
  verify_cmd->add_option("--seed", o.seed, "Seed for randomized checks (else MCV_DEFAULT_SEED, else 42)");
  verify_cmd->add_option("--output,-o", o.output, "Write results here instead of stdout");
  verify_cmd->add_option("--format,-f", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));

  auto* simulate_cmd = app.add_subcommand("simulate", "Run the Gaussian or Galton experiment");
  simulate_cmd->add_option("--experiment,-e", o.experiment, "Experiment")
      ->required()
      ->check(CLI::IsMember({"gaussian_constant_mean", "gaussian_uniform_mean", "galton"}));
  simulate_cmd->add_option("--seed", o.seed, "Seed")->required();
  simulate_cmd->add_option("--output,-o", o.output, "Write results here instead of stdout");
  simulate_cmd->add_option("--format,-f", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  simulate_cmd->add_option("--metrics,-m", o.metrics, "Comma-separated metric ids")->delimiter(',');
  simulate_cmd->add_option("--points", o.points, "Dimensions or horizons")->delimiter(',');
  simulate_cmd->add_option("--samples", o.samples, "Samples per dimension or particle count")
      ->check(CLI::Range(2, 100000000));
  simulate_cmd->add_option("--convention", o.convention, "Covariance estimator")
      ->check(CLI::IsMember({"population", "unbiased"}));
  simulate_cmd->add_flag("--nested-means", o.nested_means, "Uniform-mean runs share one mean draw across n");
  simulate_cmd->add_flag("--include-start", o.include_start, "Galton runs record the start position as column 1");
  simulate_cmd->add_option("--ridge", o.ridge, "Galton covariance ridge as a fraction of trace / T")
      ->check(CLI::Range(0.0, 1.0));

  auto* influence_cmd = app.add_subcommand("influence", "Closed-form and finite-difference influence of G2");
  add_common(influence_cmd, o, true);
  influence_cmd->add_option("--point,-x", o.point, "Contamination point, comma-separated")->required()->delimiter(',');
  influence_cmd->add_option("--eps", o.eps, "Contamination weight in (0, 0.1)");

  // Default output format differs for simulate (plot data).
  simulate_cmd->preparse_callback([&o](std::size_t) { o.format = "csv"; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kValidationError;
  }

  try {
    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.output + "'");
    }
    std::ostream& sink = o.output.empty() ? out : file;
    int code = kSuccess;
    if (compute_cmd->parsed()) {
      cmd_compute(o, sink);
    } else if (whiten_cmd->parsed()) {
      cmd_whiten(o, sink, err);
    } else if (verify_cmd->parsed()) {
      code = cmd_verify(o, sink, err);
    } else if (simulate_cmd->parsed()) {
      cmd_simulate(o, sink);
    } else if (influence_cmd->parsed()) {
      cmd_influence(o, sink);
    }
    sink.flush();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
}

}  // namespace mcv::cli
