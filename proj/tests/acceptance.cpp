// Acceptance run: one PASS/FAIL line per criterion with its runtime.
//   acceptance            run every criterion
//   acceptance N [M ...]  run only the listed criteria
// Exit status is non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>
#include <json.hpp>

#include "alphaidx/distribution.hpp"
#include "alphaidx/ingest.hpp"
#include "alphaidx/metrics.hpp"
#include "alphaidx/ranking.hpp"
#include "alphaidx/special_functions.hpp"
#include "alphaidx/synth.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace alphaidx;
using HV = std::vector<HIndex>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_ms;
  std::function<Outcome()> body;
};

HV random_hs(std::mt19937_64& gen, std::size_t max_n, HIndex max_h) {
  HV hs(1 + gen() % max_n);
  for (auto& h : hs) h = static_cast<HIndex>(gen() % (max_h + 1));
  return hs;
}

// --- 1 ----------------------------------------------------------------------
Outcome published_ratios() {
  struct Row {
    const char* id;
    double rel_h, gini, alpha;
  };
  const std::vector<Row> table{{"DOCENG", 7.61, 0.303, 0.14108}, {"CIKM", 9.43, 0.377, 0.14051},
                               {"CAISE", 8.71, 0.367, 0.13333},  {"HSDM", 8.93, 0.381, 0.13166},
                               {"SEKE", 8.10, 0.462, 0.09849},   {"ECDL", 6.95, 0.487, 0.08017},
                               {"EASE", 6.00, 0.548, 0.06150}};
  std::vector<PrecomputedRow> rows;
  for (const auto& r : table) rows.push_back({r.id, r.rel_h, r.gini});
  const auto report = rank_from_precomputed(rows);
  std::map<std::string, double> alpha;
  for (const auto& r : report.rows) alpha[r.group_id] = r.alpha;
  double worst = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = i + 1; j < table.size(); ++j) {
      const double ours = alpha[table[i].id] / alpha[table[j].id];
      const double published = table[i].alpha / table[j].alpha;
      worst = std::max(worst, std::abs(ours / published - 1.0));
      ++pairs;
    }
  }
  const double doc_cikm = alpha["DOCENG"] / alpha["CIKM"];
  return {pairs == 21 && worst < 0.01,
          fmt::format("{} pairs, worst relative deviation {:.3e}, DOCENG/CIKM {:.4f}", pairs, worst,
                      doc_cikm)};
}

// --- 2 ----------------------------------------------------------------------
Outcome gini_oracle() {
  std::mt19937_64 gen(2);
  double worst = 0.0;
  bool constants_zero = true;
  for (int t = 0; t < 1000; ++t) {
    HV hs = random_hs(gen, 50, 100);
    if (std::all_of(hs.begin(), hs.end(), [](HIndex h) { return h == 0; })) hs[0] = 1;
    worst = std::max(worst, std::abs(gini(hs) - static_cast<double>(oracle::gini_lorenz_area(hs))));
  }
  for (int t = 0; t < 200; ++t) {
    const HV flat(1 + gen() % 50, static_cast<HIndex>(1 + gen() % 100));
    constants_zero = constants_zero && gini(flat) == 0.0;
  }
  return {worst <= 1e-12 && constants_zero,
          fmt::format("max |trapezoid - lorenz area| {:.2e}, constant groups exactly 0: {}", worst,
                      constants_zero ? "yes" : "no")};
}

// --- 3 ----------------------------------------------------------------------
Outcome h_group_oracle() {
  std::mt19937_64 gen(3);
  int mismatches = 0;
  for (int t = 0; t < 1000; ++t) {
    const HV hs = random_hs(gen, 50, 100);
    if (h_group(hs) != oracle::h_index(hs)) ++mismatches;
  }
  return {mismatches == 0, fmt::format("{} mismatches in 1000 groups", mismatches)};
}

// --- 4 ----------------------------------------------------------------------
Outcome relative_exactness() {
  std::mt19937_64 gen(4);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const HV hs = random_hs(gen, 60, 80);
    const double v = relative_h_group(hs, hs.size(), 1 + gen() % 20, RandomStream(gen()));
    if (v != static_cast<double>(h_group(hs))) ++mismatches;
  }
  const HV fixture{9, 1, 1, 1};
  const double exact = static_cast<double>(oracle::mean_subset_h_group(fixture, 2));
  const double mc = relative_h_group(fixture, 2, 100000, RandomStream(2024));
  return {mismatches == 0 && std::abs(mc - 1.5) <= 0.02,
          fmt::format("full-size mismatches {}; [9,1,1,1] size 2: Monte Carlo {:.4f}, exhaustive enumeration "
                      "{:.4f}, required 1.5 +/- 0.02",
                      mismatches, mc, exact)};
}

// --- 5 ----------------------------------------------------------------------
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() /
             (std::to_string(::getpid()) + "-" + name)) {
    std::ofstream(path, std::ios::binary) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

struct CliRun {
  int code;
  std::string out;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "alphaidx");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

double stdev(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

Outcome monte_carlo() {
  const TempFile data("acceptance-seven.json", write_dataset(fixtures::seven_group_dataset()).dump());
  const auto a = cli({"rank", data.path.string(), "--seed", "2005"});
  const auto b = cli({"rank", data.path.string(), "--seed", "2005"});
  const auto c = cli({"rank", data.path.string(), "--seed", "2005", "--threads", "4"});
  const bool identical = a.code == 0 && a.out == b.out && a.out == c.out;

  std::mt19937_64 gen(5);
  HV hs(80);
  for (auto& h : hs) h = static_cast<HIndex>(gen() % 40);
  const int seeds = 100;
  std::vector<double> sd;
  for (std::size_t n : {100, 400, 1600}) {
    std::vector<double> est;
    for (int s = 0; s < seeds; ++s) est.push_back(relative_h_group(hs, 16, n, RandomStream(1000 + s)));
    sd.push_back(stdev(est));
  }
  const double r1 = sd[0] / sd[1], r2 = sd[1] / sd[2];
  const bool shrink = r1 >= 1.6 && r1 <= 2.5 && r2 >= 1.6 && r2 <= 2.5;
  return {identical && shrink,
          fmt::format("byte-identical (1 and 4 threads): {}; sd ratios over {} seeds {:.3f}, {:.3f}",
                      identical ? "yes" : "no", seeds, r1, r2)};
}

// --- 6 ----------------------------------------------------------------------
Outcome moments() {
  double m1 = 0.0, quad = 0.0, flat = 0.0;
  for (double b : default_beta_grid()) m1 = std::max(m1, std::abs(theoretical_moment_ratio(1.0, b) - 1.0));
  for (double b : {0.2, 0.28, 0.5, 1.0}) {
    for (double k : {1.5, 2.0, 2.5, 3.0}) {
      const double q = static_cast<double>(oracle::moment_ratio_quadrature(k, b));
      quad = std::max(quad, std::abs(theoretical_moment_ratio(k, b) - q) / q);
    }
  }
  const std::vector<double> c(100, 42.5);
  for (double k : default_k_grid()) flat = std::max(flat, std::abs(empirical_moment_ratio(k, c) - 1.0));
  return {m1 <= 1e-12 && quad <= 1e-6 && flat <= 1e-12,
          fmt::format("|M_1 - 1| {:.1e}, quadrature rel err {:.1e}, constant-data |R_k - 1| {:.1e}", m1,
                      quad, flat)};
}

// --- 7 ----------------------------------------------------------------------
Outcome beta_recovery() {
  const auto bg = default_beta_grid();
  const auto kg = default_k_grid();
  std::string detail;
  bool pass = true;
  for (double beta : {0.28, 0.20}) {
    int hits = 0;
    std::map<double, int> picked;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomStream s(seed);
      const auto x = sample_stretched_exp({beta, 1.0}, 100000, s);
      const double got = fit_beta(x, bg, kg).beta;
      ++picked[std::round(got * 100) / 100];
      if (std::abs(got - beta) < 1e-9) ++hits;
    }
    pass = pass && hits >= 95;
    std::string spread;
    for (const auto& [b, n] : picked) spread += fmt::format(" {:.2f}:{}", b, n);
    detail += fmt::format("{}beta {:.2f}: {}/100 hits (picked{})", detail.empty() ? "" : "; ", beta, hits,
                          spread);
  }
  return {pass, detail};
}

// --- 8 ----------------------------------------------------------------------
Outcome giddings_round_trip() {
  const GiddingsParams truth{0.912, 1118.453, 2.518, 10.44};
  auto worst = [&](const GiddingsParams& p) {
    return std::max({std::abs(p.H0 / truth.H0 - 1), std::abs(p.A / truth.A - 1), std::abs(p.w / truth.w - 1),
                     std::abs(p.h_c / truth.h_c - 1)});
  };
  const auto clean = fit_giddings(fixtures::giddings_histogram(truth, 0.0, 0));
  const auto noisy = fit_giddings(fixtures::giddings_histogram(truth, 0.01, 8));
  const double e0 = worst(clean.params), e1 = worst(noisy.params);
  return {e0 <= 0.01 && e1 <= 0.05,
          fmt::format("worst relative parameter error noiseless {:.2e}, 1% noise {:.2e}", e0, e1)};
}

// --- 9 ----------------------------------------------------------------------
Outcome special_functions() {
  double series = 0.0, integral = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 30.0 * i / 999.0;
    const long double ref = oracle::bessel_i1_series(x);
    const double err = ref == 0 ? std::abs(bessel_i1(x)) : static_cast<double>(std::abs((bessel_i1(x) - ref) / ref));
    series = std::max(series, err);
  }
  for (int i = 0; i <= 200; ++i) {
    const double x = 10.0 * i / 200.0;
    integral = std::max(integral, static_cast<double>(std::abs(bessel_i1(x) - oracle::bessel_i1_integral(x))));
  }
  return {series <= 1e-10 && integral <= 1e-8,
          fmt::format("series rel err {:.1e} on [0,30], Simpson abs err {:.1e} on [0,10]", series, integral)};
}

// --- 10 ---------------------------------------------------------------------
Outcome normality() {
  const auto lin = shapiro_wilk(std::vector<double>{1, 2, 3});
  const auto nrm = shapiro_wilk(fixtures::sw_normal_sample);
  const auto hvy = shapiro_wilk(fixtures::sw_heavy_sample);
  const double err = std::max({std::abs(nrm.W - fixtures::sw_normal_W), std::abs(nrm.p_value - fixtures::sw_normal_p),
                               std::abs(hvy.W - fixtures::sw_heavy_W), std::abs(hvy.p_value - fixtures::sw_heavy_p)});
  const bool pass = std::abs(lin.W - 1.0) <= 1e-9 && err <= 1e-3 && hvy.p_value < 0.05 && !hvy.normal_at_5pct;
  return {pass, fmt::format("W[1,2,3] = {:.12f}; max deviation from reference {:.1e}; heavy-tailed p = {:.2e}", lin.W,
                            err, hvy.p_value)};
}

// --- 11 ---------------------------------------------------------------------
Outcome slope() {
  std::vector<HxPair> pairs;
  for (int h = 1; h <= 20; ++h) pairs.push_back({double(h), double(h) * h});
  const auto fit = power_law_slope(pairs);
  return {std::abs(fit.slope - 2.0) <= 1e-12, fmt::format("slope {:.15f}", fit.slope)};
}

// --- 12 ---------------------------------------------------------------------
Outcome end_to_end() {
  const Dataset ds = fixtures::seven_group_dataset();
  const TempFile data("acceptance-e2e.json", write_dataset(ds).dump());
  const auto r = cli({"--format", "json", "rank", data.path.string(), "--seed", "1"});
  if (r.code != 0) return {false, "rank exited with " + std::to_string(r.code) + ": " + r.out};
  const auto doc = nlohmann::json::parse(r.out);
  std::vector<std::string> order;
  std::vector<double> rel, g;
  for (const auto& row : doc["rows"]) {
    order.push_back(row["group_id"]);
    rel.push_back(row["relative_h_group"]);
    g.push_back(row["gini"]);
  }
  const std::vector<std::string> expected{"DOCENG", "CIKM", "CAISE", "HSDM", "SEKE", "ECDL", "EASE"};
  bool dominance = true;
  for (std::size_t i = 1; i < rel.size(); ++i) dominance = dominance && rel[i] < rel[i - 1] && g[i] > g[i - 1];
  std::string got;
  for (const auto& id : order) got += (got.empty() ? "" : " > ") + id;
  return {order == expected && dominance,
          fmt::format("{} (fixture dominance holds: {})", got, dominance ? "yes" : "no")};
}

// --- 13 ---------------------------------------------------------------------
Outcome ingest_round_trip() {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Dataset ds = fixtures::random_dataset(1000 + seed);
    const auto back = read_dataset_text(write_dataset(ds).dump());
    if (!back.ok() || !(*back.dataset == ds)) ++failures;
  }
  RandomStream s(13);
  int members = 0, mismatches = 0;
  for (int t = 0; t < 100; ++t) {
    std::string csv = "group_id,researcher_id,paper_id,citations\n";
    std::map<std::string, std::vector<CitationCount>> truth;
    const auto rows = 1 + s.below(200);
    for (std::uint64_t row = 0; row < rows; ++row) {
      const std::string gid = "g" + std::to_string(s.below(3));
      const std::string rid = "r" + std::to_string(s.below(10));
      const CitationCount c = s.below(4) == 0 ? 0 : s.below(150);
      truth[gid + "\x1f" + rid].push_back(c);
      csv += gid + "," + rid + ",p" + std::to_string(row) + "," + std::to_string(c) + "\n";
    }
    std::istringstream in(csv);
    const auto rep = read_long_form(in);
    if (!rep.ok()) {
      ++failures;
      continue;
    }
    for (const auto& g : rep.dataset->groups) {
      for (const auto& m : g.members()) {
        ++members;
        if (m.h_index != oracle::h_index(truth[g.id() + "\x1f" + m.id])) ++mismatches;
      }
    }
  }
  return {failures == 0 && mismatches == 0,
          fmt::format("round-trip failures {}/100; long-form h mismatches {}/{}", failures, mismatches, members)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "published alpha ratios", 1, published_ratios},
      {2, "Gini oracle equivalence", 1000, gini_oracle},
      {3, "h-group oracle equivalence", 1000, h_group_oracle},
      {4, "relative h-group exactness", 5000, relative_exactness},
      {5, "Monte Carlo determinism and convergence", 30000, monte_carlo},
      {6, "moment machinery", 1000, moments},
      {7, "beta recovery", 60000, beta_recovery},
      {8, "Giddings round trip", 10000, giddings_round_trip},
      {9, "special functions", 1000, special_functions},
      {10, "normality suite", 1000, normality},
      {11, "slope fit", 1, slope},
      {12, "end-to-end ordering", 10000, end_to_end},
      {13, "ingest round trip", 5000, ingest_round_trip},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms <= c.budget_ms;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %2d  %-40s %10.3f ms (budget %g ms%s)  %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), ms, c.budget_ms, in_time ? "" : ", EXCEEDED", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
