#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alphaidx/distribution.hpp"
#include "alphaidx/errors.hpp"
#include "alphaidx/ingest.hpp"
#include "alphaidx/metrics.hpp"
#include "alphaidx/ranking.hpp"
#include "alphaidx/synth.hpp"
#include "output.hpp"

namespace alphaidx::cli {

namespace {

using nlohmann::json;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(std::string message) { throw Failure{kExitDomain, std::move(message)}; }
[[noreturn]] void fail_io(std::string message) { throw Failure{kExitIo, std::move(message)}; }

struct Globals {
  std::string format = "table";
  std::string output;
  bool quiet = false;
  bool tab = false;
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out, std::ostream& err)
      : globals_(g), out_(out), err_(err) {}

  Format format() const {
    if (globals_.format == "csv") return Format::csv;
    if (globals_.format == "json") return Format::json;
    return Format::table;
  }
  Delimiter delimiter(const std::string& path) const {
    if (globals_.tab || std::filesystem::path(path).extension() == ".tsv") {
      return Delimiter::tab;
    }
    return Delimiter::comma;
  }
  void warn(const std::string& message) const {
    if (!globals_.quiet) err_ << "warning: " << message << "\n";
  }
  void emit(const std::string& text) const {
    if (globals_.output.empty()) {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream file(globals_.output, std::ios::binary | std::ios::trunc);
    if (!file) fail_io("cannot open output file '" + globals_.output + "'");
    file << text;
    file.flush();
    if (!file) fail_io("failed writing output file '" + globals_.output + "'");
  }
  void emit(const json& doc) const { emit(doc.dump(2) + "\n"); }

 private:
  const Globals& globals_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string read_file(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) fail_io("'" + path + "' is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot read input file '" + path + "'");
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) fail_io("error while reading '" + path + "'");
  return text;
}

bool looks_like_json(const std::string& path, const std::string& text) {
  if (std::filesystem::path(path).extension() == ".json") return true;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

IngestReport ingest(const std::string& path, const Context& ctx) {
  const std::string text = read_file(path);
  if (looks_like_json(path, text)) return read_dataset_text(text);
  std::istringstream in(text);
  return read_tabular(in, ctx.delimiter(path));
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

Dataset load_dataset(const std::string& path, const Context& ctx) {
  IngestReport report = ingest(path, ctx);
  for (const auto& w : report.warnings) ctx.warn(w);
  if (!report.ok()) fail("invalid input '" + path + "':\n  " + join(report.errors, "\n  "));
  if (report.dataset->groups.empty()) fail("input '" + path + "' contains no groups");
  return std::move(*report.dataset);
}

json nullable(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

// ---------------------------------------------------------------------------

struct MetricsArgs {
  std::string input;
};

void cmd_metrics(const MetricsArgs& a, const Context& ctx) {
  const Dataset ds = load_dataset(a.input, ctx);
  std::vector<std::pair<const Group*, GroupMetrics>> results;
  for (const auto& g : ds.groups) results.emplace_back(&g, group_metrics(g));

  if (ctx.format() == Format::json) {
    json groups = json::array();
    for (const auto& [g, m] : results) {
      groups.push_back({{"id", g->id()},
                        {"label", g->label()},
                        {"quality_tag", nullable(g->quality_tag())},
                        {"n", m.n},
                        {"mean_h", m.mean_h},
                        {"stderr_h", m.stderr_h},
                        {"h_group", m.h_group},
                        {"gini", m.gini}});
    }
    ctx.emit(json{{"groups", groups}});
    return;
  }
  const bool csv = ctx.format() == Format::csv;
  std::vector<Cells> rows;
  for (const auto& [g, m] : results) {
    rows.push_back({g->id(), g->quality_tag().value_or(csv ? "" : "-"), std::to_string(m.n),
                    csv ? real(m.mean_h) : fixed(m.mean_h, 2),
                    csv ? real(m.stderr_h) : fixed(m.stderr_h, 2), std::to_string(m.h_group),
                    csv ? real(m.gini) : fixed(m.gini, 4)});
  }
  const Cells header = {"group", "quality", "n", "mean_h", "stderr_h", "h_group", "gini"};
  ctx.emit(csv ? csv_table(header, rows) : text_table(header, rows));
}

// ---------------------------------------------------------------------------

struct RankArgs {
  std::string input;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::optional<std::size_t> ref_size;
  double gini_floor = 1e-3;
  unsigned threads = 1;
  bool precomputed = false;
};

bool parse_real(const std::string& s, double& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<PrecomputedRow> read_precomputed(const std::string& path, const Context& ctx) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  const char delim = ctx.delimiter(path) == Delimiter::tab ? '\t' : ',';
  auto split = [delim](const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream s(line);
    while (std::getline(s, field, delim)) {
      const auto b = field.find_first_not_of(" \r\t");
      const auto e = field.find_last_not_of(" \r\t");
      out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    return out;
  };
  std::string line;
  std::map<std::string, std::size_t> cols;
  std::vector<PrecomputedRow> rows;
  std::vector<std::string> errors;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.starts_with("#")) continue;
    const auto fields = split(line);
    if (cols.empty()) {
      for (std::size_t i = 0; i < fields.size(); ++i) cols[fields[i]] = i;
      for (const char* need : {"group_id", "relative_h_group", "gini"}) {
        if (!cols.contains(need)) fail("precomputed input needs a '" + std::string(need) + "' column");
      }
      continue;
    }
    PrecomputedRow row;
    const auto field = [&](const char* name) -> std::string {
      const auto i = cols.at(name);
      return i < fields.size() ? fields[i] : std::string();
    };
    row.group_id = field("group_id");
    if (row.group_id.empty() || !parse_real(field("relative_h_group"), row.relative_h_group) ||
        !parse_real(field("gini"), row.gini)) {
      errors.push_back("row " + std::to_string(line_no) + ": malformed precomputed row");
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (!errors.empty()) fail("invalid input '" + path + "':\n  " + join(errors, "\n  "));
  if (rows.empty()) fail("input '" + path + "' has no rows");
  return rows;
}

void emit_ranking(const RankingReport& report, const Context& ctx) {
  if (ctx.format() == Format::json) {
    json rows = json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"rank", r.rank},
                      {"group_id", r.group_id},
                      {"gini", r.gini},
                      {"gini_floored", r.gini_floored},
                      {"h_group", r.h_group ? json(*r.h_group) : json(nullptr)},
                      {"relative_h_group", r.relative_h_group},
                      {"alpha", r.alpha}});
    }
    const auto& p = report.provenance;
    ctx.emit(json{
        {"reference_group_id", nullable(report.reference_group_id)},
        {"reference_size", report.reference_size ? json(*report.reference_size) : json(nullptr)},
        {"provenance",
         {{"seed", p.seed ? json(*p.seed) : json(nullptr)},
          {"n_sample", p.n_sample ? json(*p.n_sample) : json(nullptr)},
          {"gini_floor", p.gini_floor},
          {"floored_groups", p.floored_groups}}},
        {"rows", rows}});
    return;
  }
  const bool csv = ctx.format() == Format::csv;
  std::string text;
  if (report.reference_size) {
    text += "# reference group: " + report.reference_group_id.value_or("(override)") +
            "  reference size: " + std::to_string(*report.reference_size) + "\n";
  } else {
    text += "# reference group: (precomputed input)\n";
  }
  const auto& p = report.provenance;
  text += "# seed: " + (p.seed ? std::to_string(*p.seed) : std::string("-")) +
          "  n_sample: " + (p.n_sample ? std::to_string(*p.n_sample) : std::string("-")) +
          "  gini_floor: " + real(p.gini_floor) + "\n";
  if (!p.floored_groups.empty()) {
    text += "# gini floored for: " + join(p.floored_groups, ", ") + "\n";
  }
  std::vector<Cells> rows;
  for (const auto& r : report.rows) {
    const std::string h = r.h_group ? std::to_string(*r.h_group) : (csv ? "" : "-");
    if (csv) {
      rows.push_back({std::to_string(r.rank), r.group_id, real(r.gini),
                      r.gini_floored ? "1" : "0", h, real(r.relative_h_group), real(r.alpha)});
    } else {
      rows.push_back({std::to_string(r.rank), r.group_id,
                      fixed(r.gini, 4) + (r.gini_floored ? "*" : ""), h,
                      fixed(r.relative_h_group, 4), fixed(r.alpha, 5)});
    }
  }
  if (csv) {
    text += csv_table({"rank", "group_id", "gini", "gini_floored", "h_group",
                       "relative_h_group", "alpha"},
                      rows);
  } else {
    text += text_table({"rank", "group", "gini", "h_group", "relative_h_group", "alpha"}, rows);
  }
  ctx.emit(text);
}

void cmd_rank(const RankArgs& a, const Context& ctx) {
  if (a.precomputed) {
    const auto rows = read_precomputed(a.input, ctx);
    emit_ranking(rank_from_precomputed(rows, a.gini_floor), ctx);
    return;
  }
  const Dataset ds = load_dataset(a.input, ctx);
  RankingConfig config;
  config.seed = a.seed;
  config.n_sample = a.samples;
  config.reference_size = a.ref_size;
  config.gini_floor = a.gini_floor;
  config.threads = a.threads;
  emit_ranking(rank(ds.groups, config), ctx);
}

// ---------------------------------------------------------------------------

struct CurveArgs {
  std::string input;
};

void cmd_lorenz(const CurveArgs& a, const Context& ctx) {
  const Dataset ds = load_dataset(a.input, ctx);
  std::vector<std::pair<std::string, LorenzCurve>> curves;
  std::vector<std::string> degenerate;
  for (const auto& g : ds.groups) {
    try {
      curves.emplace_back(g.id(), lorenz_curve(g));
    } catch (const DegenerateGroup&) {
      degenerate.push_back(g.id());
    }
  }
  if (!degenerate.empty()) {
    fail("Lorenz curve undefined (all h-indexes zero) for group(s): " + join(degenerate, ", "));
  }

  if (ctx.format() == Format::json) {
    json groups = json::array();
    for (const auto& [id, curve] : curves) {
      json points = json::array();
      for (const auto& p : curve.points) points.push_back({{"f", p.f}, {"phi", p.phi}});
      groups.push_back({{"id", id}, {"points", points}});
    }
    ctx.emit(json{{"groups", groups}});
    return;
  }
  if (ctx.format() == Format::csv) {
    std::vector<Cells> rows;
    for (const auto& [id, curve] : curves) {
      for (const auto& p : curve.points) rows.push_back({id, real(p.f), real(p.phi), real(p.f)});
    }
    ctx.emit(csv_table({"group_id", "f", "phi", "identity"}, rows));
    return;
  }
  std::string text;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (i) text += "\n\n";
    text += "# group: " + curves[i].first + "\n";
    std::vector<Cells> rows;
    for (const auto& p : curves[i].second.points) rows.push_back({real(p.f), real(p.phi), real(p.f)});
    text += text_table({"f", "phi", "identity"}, rows);
  }
  ctx.emit(text);
}

void cmd_psi(const CurveArgs& a, const Context& ctx) {
  const Dataset ds = load_dataset(a.input, ctx);
  if (ctx.format() == Format::json) {
    json groups = json::array();
    for (const auto& g : ds.groups) {
      json points = json::array();
      for (const auto& p : psi_curve(g)) points.push_back({{"h", p.h}, {"psi", p.psi}});
      groups.push_back({{"id", g.id()}, {"h_group", h_group(g)}, {"points", points}});
    }
    ctx.emit(json{{"groups", groups}});
    return;
  }
  if (ctx.format() == Format::csv) {
    std::vector<Cells> rows;
    for (const auto& g : ds.groups) {
      const auto hg = std::to_string(h_group(g));
      for (const auto& p : psi_curve(g)) {
        rows.push_back({g.id(), std::to_string(p.h), std::to_string(p.psi), hg});
      }
    }
    ctx.emit(csv_table({"group_id", "h", "psi", "h_group"}, rows));
    return;
  }
  std::string text;
  for (std::size_t i = 0; i < ds.groups.size(); ++i) {
    const Group& g = ds.groups[i];
    if (i) text += "\n\n";
    text += "# group: " + g.id() + "  h_group: " + std::to_string(h_group(g)) + "\n";
    std::vector<Cells> rows;
    for (const auto& p : psi_curve(g)) rows.push_back({std::to_string(p.h), std::to_string(p.psi)});
    text += text_table({"h", "psi"}, rows);
  }
  ctx.emit(text);
}

// ---------------------------------------------------------------------------

struct DistfitArgs {
  std::string input;
  std::string analysis;
  std::vector<std::string> groups;
  std::vector<std::string> qualities;
  std::string bin_mode = "linear";
  double bin_width = 1.0;
  double bin_ratio = 2.0;
  bool raw_objective = false;
};

std::vector<const Group*> select_groups(const Dataset& ds, const DistfitArgs& a) {
  std::vector<const Group*> out;
  const std::set<std::string> ids(a.groups.begin(), a.groups.end());
  const std::set<std::string> tags(a.qualities.begin(), a.qualities.end());
  for (const auto& id : ids) {
    const bool known = std::any_of(ds.groups.begin(), ds.groups.end(),
                                   [&](const Group& g) { return g.id() == id; });
    if (!known) fail("unknown group '" + id + "'");
  }
  for (const auto& g : ds.groups) {
    if (!ids.empty() && !ids.contains(g.id())) continue;
    if (!tags.empty() && !(g.quality_tag() && tags.contains(*g.quality_tag()))) continue;
    out.push_back(&g);
  }
  if (out.empty()) fail("no groups match the selection");
  return out;
}

// (h, total citations) for every selected member; fails listing members
// without a citation total.
std::vector<HxPair> citation_pairs(const std::vector<const Group*>& groups) {
  std::vector<HxPair> pairs;
  std::vector<std::string> missing;
  for (const Group* g : groups) {
    for (const auto& m : g->members()) {
      if (!m.total_citations) {
        missing.push_back(g->id() + "/" + m.id);
        continue;
      }
      pairs.push_back({static_cast<double>(m.h_index), static_cast<double>(*m.total_citations)});
    }
  }
  if (!missing.empty()) {
    fail("this analysis needs total_citations; missing for " + std::to_string(missing.size()) +
         " member(s): " + join(missing, ", "));
  }
  return pairs;
}

std::vector<double> h_values(const Group& g) {
  std::vector<double> out;
  for (const auto& m : g.members()) out.push_back(m.h_index);
  return out;
}

void distfit_slope(const std::vector<const Group*>& groups, const Context& ctx) {
  const auto fit = power_law_slope(citation_pairs(groups));
  if (fit.points_dropped > 0) {
    ctx.warn(std::to_string(fit.points_dropped) +
             " member(s) with zero h or zero citations excluded from the log-log fit");
  }
  if (ctx.format() == Format::json) {
    ctx.emit(json{{"analysis", "slope"},
                  {"slope", fit.slope},
                  {"intercept", fit.intercept},
                  {"points_used", fit.points_used},
                  {"points_dropped", fit.points_dropped}});
    return;
  }
  const Cells header = {"slope", "intercept", "points_used", "points_dropped"};
  const std::vector<Cells> rows = {{real(fit.slope), real(fit.intercept),
                                    std::to_string(fit.points_used),
                                    std::to_string(fit.points_dropped)}};
  ctx.emit(ctx.format() == Format::csv ? csv_table(header, rows)
                                       : "# analysis: slope\n" + text_table(header, rows));
}

void distfit_beta(const std::vector<const Group*>& groups, const DistfitArgs& a,
                  const Context& ctx) {
  const auto pairs = citation_pairs(groups);
  std::vector<double> x;
  std::size_t zeros = 0;
  for (const auto& p : pairs) {
    if (p.x > 0.0) {
      x.push_back(p.x);
    } else {
      ++zeros;
    }
  }
  if (zeros > 0) ctx.warn(std::to_string(zeros) + " zero-citation member(s) excluded");
  const auto beta_grid = default_beta_grid();
  const auto k_grid = default_k_grid();
  const auto fit = fit_beta(x, beta_grid, k_grid,
                            a.raw_objective ? ObjectiveSpace::raw : ObjectiveSpace::log);
  std::vector<double> model;
  for (double k : fit.k_grid) model.push_back(theoretical_moment_ratio(k, fit.beta));

  if (ctx.format() == Format::json) {
    json grid = json::array(), ks = json::array();
    for (std::size_t i = 0; i < fit.grid.size(); ++i) {
      grid.push_back({{"beta", fit.grid[i]}, {"objective", fit.objective_per_beta[i]}});
    }
    for (std::size_t i = 0; i < fit.k_grid.size(); ++i) {
      ks.push_back({{"k", fit.k_grid[i]}, {"R_k", fit.empirical_ratios[i]}, {"M_k", model[i]}});
    }
    ctx.emit(json{{"analysis", "beta"},
                  {"beta", fit.beta},
                  {"objective_space", a.raw_objective ? "raw" : "log"},
                  {"n", x.size()},
                  {"excluded_zero", zeros},
                  {"grid", grid},
                  {"moments", ks}});
    return;
  }
  std::vector<Cells> grid_rows, k_rows;
  for (std::size_t i = 0; i < fit.grid.size(); ++i) {
    grid_rows.push_back({real(fit.grid[i]), real(fit.objective_per_beta[i])});
  }
  for (std::size_t i = 0; i < fit.k_grid.size(); ++i) {
    k_rows.push_back({real(fit.k_grid[i]), real(fit.empirical_ratios[i]), real(model[i])});
  }
  if (ctx.format() == Format::csv) {
    ctx.emit(csv_table({"beta", "objective"}, grid_rows) + "\n" +
             csv_table({"k", "R_k", "M_k"}, k_rows));
    return;
  }
  std::string text = "# analysis: beta  beta: " + real(fit.beta) +
                     "  n: " + std::to_string(x.size()) +
                     "  excluded_zero: " + std::to_string(zeros) + "\n";
  text += text_table({"beta", "objective"}, grid_rows) + "\n\n";
  text += text_table({"k", "R_k", "M_k"}, k_rows);
  ctx.emit(text);
}

void distfit_giddings(const std::vector<const Group*>& groups, const DistfitArgs& a,
                      const Context& ctx) {
  std::vector<double> hs;
  for (const Group* g : groups) {
    const auto v = h_values(*g);
    hs.insert(hs.end(), v.begin(), v.end());
  }
  const bool geometric = a.bin_mode == "geometric";
  const Histogram hist = build_histogram(hs, geometric ? BinningMode::geometric : BinningMode::linear,
                                         geometric ? a.bin_ratio : a.bin_width);
  const GiddingsFit fit = fit_giddings(hist);
  const auto centers = hist.centers();
  std::vector<double> fitted;
  for (double c : centers) fitted.push_back(giddings_eval(c, fit.params));

  if (ctx.format() == Format::json) {
    json bins = json::array();
    for (std::size_t i = 0; i < centers.size(); ++i) {
      bins.push_back({{"lower", hist.bin_edges[i]},
                      {"upper", hist.bin_edges[i + 1]},
                      {"center", centers[i]},
                      {"count", hist.counts[i]},
                      {"fitted", fitted[i]}});
    }
    ctx.emit(json{{"analysis", "giddings"},
                  {"H0", fit.params.H0},
                  {"A", fit.params.A},
                  {"w", fit.params.w},
                  {"h_c", fit.params.h_c},
                  {"residual_ss", fit.residual_ss},
                  {"converged", fit.converged},
                  {"bins", bins}});
    return;
  }
  std::vector<Cells> rows;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    rows.push_back({real(centers[i]), real(hist.counts[i]), real(fitted[i])});
  }
  const std::string params = "H0: " + real(fit.params.H0) + "  A: " + real(fit.params.A) +
                             "  w: " + real(fit.params.w) + "  h_c: " + real(fit.params.h_c) +
                             "  residual_ss: " + real(fit.residual_ss) +
                             "  converged: " + (fit.converged ? "true" : "false");
  if (ctx.format() == Format::csv) {
    ctx.emit("# " + params + "\n" + csv_table({"center", "count", "fitted"}, rows));
  } else {
    ctx.emit("# analysis: giddings  " + params + "\n" +
             text_table({"center", "count", "fitted"}, rows));
  }
}

void distfit_normality(const std::vector<const Group*>& groups, const Context& ctx) {
  std::vector<std::pair<const Group*, NormalityReport>> results;
  for (const Group* g : groups) {
    try {
      results.emplace_back(g, shapiro_wilk(h_values(*g)));
    } catch (const Error& e) {
      fail("group '" + g->id() + "': " + e.what());
    }
  }
  if (ctx.format() == Format::json) {
    json rows = json::array();
    for (const auto& [g, r] : results) {
      rows.push_back({{"group_id", g->id()},
                      {"n", g->size()},
                      {"W", r.W},
                      {"p_value", r.p_value},
                      {"kurtosis", r.kurtosis},
                      {"skewness", r.skewness},
                      {"normal_at_5pct", r.normal_at_5pct}});
    }
    ctx.emit(json{{"analysis", "normality"}, {"groups", rows}});
    return;
  }
  const bool csv = ctx.format() == Format::csv;
  std::vector<Cells> rows;
  for (const auto& [g, r] : results) {
    rows.push_back({g->id(), std::to_string(g->size()), csv ? real(r.W) : fixed(r.W, 5),
                    csv ? real(r.p_value) : fixed(r.p_value, 5),
                    csv ? real(r.kurtosis) : fixed(r.kurtosis, 5),
                    csv ? real(r.skewness) : fixed(r.skewness, 5),
                    r.normal_at_5pct ? "normal" : "non-normal"});
  }
  const Cells header = {"group", "n", "W", "p_value", "kurtosis", "skewness", "normality"};
  ctx.emit(csv ? csv_table(header, rows) : text_table(header, rows));
}

void distfit_moments(const std::vector<const Group*>& groups, const Context& ctx) {
  struct Row {
    const Group* g;
    GroupSummary s;
    double kurt, skew;
  };
  std::vector<Row> results;
  for (const Group* g : groups) {
    const auto hs = h_values(*g);
    try {
      results.push_back({g, group_summary(*g), kurtosis(hs), skewness(hs)});
    } catch (const Error& e) {
      fail("group '" + g->id() + "': " + e.what());
    }
  }
  if (ctx.format() == Format::json) {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"group_id", r.g->id()},
                      {"n", r.g->size()},
                      {"mean_h", r.s.mean_h},
                      {"stderr_h", r.s.stderr_h},
                      {"kurtosis", r.kurt},
                      {"skewness", r.skew}});
    }
    ctx.emit(json{{"analysis", "moments"}, {"groups", rows}});
    return;
  }
  const bool csv = ctx.format() == Format::csv;
  std::vector<Cells> rows;
  for (const auto& r : results) {
    rows.push_back({r.g->id(), std::to_string(r.g->size()),
                    csv ? real(r.s.mean_h) : fixed(r.s.mean_h, 2),
                    csv ? real(r.s.stderr_h) : fixed(r.s.stderr_h, 2),
                    csv ? real(r.kurt) : fixed(r.kurt, 5), csv ? real(r.skew) : fixed(r.skew, 5)});
  }
  const Cells header = {"group", "n", "mean_h", "stderr_h", "kurtosis", "skewness"};
  ctx.emit(csv ? csv_table(header, rows) : text_table(header, rows));
}

void cmd_distfit(const DistfitArgs& a, const Context& ctx) {
  const Dataset ds = load_dataset(a.input, ctx);
  const auto groups = select_groups(ds, a);
  if (a.analysis == "slope") return distfit_slope(groups, ctx);
  if (a.analysis == "beta") return distfit_beta(groups, a, ctx);
  if (a.analysis == "giddings") return distfit_giddings(groups, a, ctx);
  if (a.analysis == "normality") return distfit_normality(groups, ctx);
  return distfit_moments(groups, ctx);
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  double beta = 0.28;
  double x0 = 1.0;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  bool round = false;
  std::string form = "density";
  std::string as_dataset;
};

void cmd_synth(const SynthArgs& a, const Context& ctx) {
  if (!(a.beta > 0.0) || !std::isfinite(a.beta)) fail("--beta must be positive");
  if (!(a.x0 > 0.0) || !std::isfinite(a.x0)) fail("--x0 must be positive");
  if (a.n == 0) fail("--n must be at least 1");

  StretchedExpParams params{a.beta, a.x0,
                            a.form == "survival" ? StretchedExpForm::survival
                                                 : StretchedExpForm::density};
  RandomStream stream(a.seed);
  std::vector<double> x = sample_stretched_exp(params, a.n, stream);
  const bool round = a.round || !a.as_dataset.empty();
  if (round) {
    for (double& v : x) v = std::round(v);
  }

  if (!a.as_dataset.empty()) {
    // Each draw is a member's citation total; h follows Hirsch's x ~ h^2.
    std::vector<ResearcherProfile> members;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto total = static_cast<CitationCount>(x[i]);
      auto h = static_cast<HIndex>(std::sqrt(static_cast<double>(total)));
      while (static_cast<CitationCount>(h) * h > total) --h;
      members.push_back(ResearcherProfile::from_summary(
          a.as_dataset + "-" + std::to_string(i + 1), h, total));
    }
    Dataset ds;
    ds.groups.emplace_back(a.as_dataset, a.as_dataset, std::nullopt, std::move(members));
    if (ctx.format() == Format::json) {
      ctx.emit(write_dataset(ds));
      return;
    }
    std::vector<Cells> rows;
    for (const auto& m : ds.groups.front().members()) {
      rows.push_back({a.as_dataset, m.id, std::to_string(m.h_index),
                      std::to_string(*m.total_citations)});
    }
    ctx.emit(csv_table({"group_id", "researcher_id", "h_index", "total_citations"}, rows));
    return;
  }

  if (ctx.format() == Format::json) {
    ctx.emit(json{{"beta", a.beta},
                  {"x0", a.x0},
                  {"form", a.form},
                  {"seed", a.seed},
                  {"rounded", round},
                  {"samples", x}});
    return;
  }
  std::string text = ctx.format() == Format::csv ? "x\n" : "# x\n";
  for (double v : x) text += real(v) + "\n";
  ctx.emit(text);
}

// ---------------------------------------------------------------------------

struct ValidateArgs {
  std::string input;
};

void cmd_validate(const ValidateArgs& a, const Context& ctx) {
  const IngestReport report = ingest(a.input, ctx);
  std::size_t groups = 0, members = 0;
  if (report.dataset) {
    groups = report.dataset->groups.size();
    for (const auto& g : report.dataset->groups) members += g.size();
  }
  if (ctx.format() == Format::json) {
    ctx.emit(json{{"valid", report.ok()},
                  {"groups", groups},
                  {"members", members},
                  {"errors", report.errors},
                  {"warnings", report.warnings}});
  } else {
    std::string text;
    if (report.ok()) {
      text = "valid: " + std::to_string(groups) + " group(s), " + std::to_string(members) +
             " member(s)\n";
    }
    for (const auto& e : report.errors) text += "error: " + e + "\n";
    for (const auto& w : report.warnings) text += "warning: " + w + "\n";
    ctx.emit(text);
  }
  if (!report.ok()) throw Failure{kExitDomain, std::to_string(report.errors.size()) + " error(s)"};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank researcher groups by the alpha-index and analyse h-index distributions",
               "alphaidx"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals globals;
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", globals.output, "Write results to PATH instead of stdout");
  app.add_flag("--quiet", globals.quiet, "Suppress warnings");
  app.add_flag("--tab", globals.tab, "Tabular input is tab-separated");

  Context ctx(globals, out, err);
  std::function<void()> action;

  MetricsArgs metrics;
  auto* sub_metrics = app.add_subcommand("metrics", "Per-group n, mean h, stderr, h-group, Gini");
  sub_metrics->add_option("input", metrics.input, "Dataset (JSON, CSV or TSV)")->required();
  sub_metrics->callback([&] { action = [&] { cmd_metrics(metrics, ctx); }; });

  RankArgs rank_args;
  auto* sub_rank = app.add_subcommand("rank", "Alpha-index ranking of two or more groups");
  sub_rank->add_option("input", rank_args.input, "Dataset, or precomputed rows with --precomputed")
      ->required();
  sub_rank->add_option("--seed", rank_args.seed, "Master random seed")->capture_default_str();
  sub_rank->add_option("--samples", rank_args.samples, "Subsamples per group (n_sample)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub_rank->add_option("--ref-size", rank_args.ref_size, "Override the reference subsample size")
      ->check(CLI::PositiveNumber);
  sub_rank->add_option("--gini-floor", rank_args.gini_floor, "Lower clamp for Gini coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub_rank->add_option("--threads", rank_args.threads, "Sampling threads (0 = all cores)")
      ->capture_default_str();
  sub_rank->add_flag("--precomputed", rank_args.precomputed,
                     "Input holds group_id,relative_h_group,gini rows");
  sub_rank->callback([&] { action = [&] { cmd_rank(rank_args, ctx); }; });

  CurveArgs lorenz;
  auto* sub_lorenz = app.add_subcommand("lorenz", "Lorenz curve points per group");
  sub_lorenz->add_option("input", lorenz.input, "Dataset")->required();
  sub_lorenz->callback([&] { action = [&] { cmd_lorenz(lorenz, ctx); }; });

  CurveArgs psi;
  auto* sub_psi = app.add_subcommand("psi", "psi(h_i) = n - i + 1 curves and h-group");
  sub_psi->add_option("input", psi.input, "Dataset")->required();
  sub_psi->callback([&] { action = [&] { cmd_psi(psi, ctx); }; });

  DistfitArgs dist;
  auto* sub_dist = app.add_subcommand("distfit", "Distribution analyses of h and citations");
  sub_dist->add_option("input", dist.input, "Dataset")->required();
  sub_dist->add_option("--analysis", dist.analysis, "Analysis to run")
      ->required()
      ->check(CLI::IsMember({"slope", "beta", "giddings", "normality", "moments"}));
  sub_dist->add_option("--group", dist.groups, "Restrict to group id (repeatable)");
  sub_dist->add_option("--quality", dist.qualities, "Restrict to quality tag (repeatable)");
  sub_dist->add_option("--bin-mode", dist.bin_mode, "Histogram binning for giddings")
      ->check(CLI::IsMember({"linear", "geometric"}))
      ->capture_default_str();
  sub_dist->add_option("--bin-width", dist.bin_width, "Linear bin width")->capture_default_str();
  sub_dist->add_option("--bin-ratio", dist.bin_ratio, "Geometric bin ratio")->capture_default_str();
  sub_dist->add_flag("--raw-objective", dist.raw_objective,
                     "Fit beta on raw rather than log moment residuals");
  sub_dist->callback([&] { action = [&] { cmd_distfit(dist, ctx); }; });

  SynthArgs synth;
  auto* sub_synth = app.add_subcommand("synth", "Stretched-exponential synthetic samples");
  sub_synth->add_option("--beta", synth.beta, "Shape beta")->capture_default_str();
  sub_synth->add_option("--x0", synth.x0, "Scale x0")->capture_default_str();
  sub_synth->add_option("--n", synth.n, "Number of draws")->capture_default_str();
  sub_synth->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  sub_synth->add_flag("--round", synth.round, "Round draws to integers");
  sub_synth->add_option("--form", synth.form, "Read exp[-(x/x0)^beta] as density or survival")
      ->check(CLI::IsMember({"density", "survival"}))
      ->capture_default_str();
  sub_synth->add_option("--as-dataset", synth.as_dataset,
                        "Emit a one-group summary dataset with this group id");
  sub_synth->callback([&] { action = [&] { cmd_synth(synth, ctx); }; });

  ValidateArgs validate_args;
  auto* sub_validate = app.add_subcommand("validate", "Check a dataset against its invariants");
  sub_validate->add_option("input", validate_args.input, "Dataset")->required();
  sub_validate->callback([&] { action = [&] { cmd_validate(validate_args, ctx); }; });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}

}  // namespace alphaidx::cli
