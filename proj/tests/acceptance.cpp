// Acceptance suite: one PASS / FAIL / SKIP line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gcdc/anomaly.hpp"
#include "gcdc/canonical.hpp"
#include "gcdc/coders.hpp"
#include "gcdc/errors.hpp"
#include "gcdc/experiment.hpp"
#include "gcdc/generators.hpp"
#include "gcdc/graph_io.hpp"
#include "gcdc/model.hpp"
#include "oracles.hpp"

using namespace gcdc;

namespace {

// Tolerances and pass bars.
constexpr double kKraftSlack = 1e-9;
constexpr double kLabeledKraftTol = 1e-9;
constexpr double kFidelityConst = 32.0;
constexpr double kFidelitySlope = 0.01;
constexpr double kIidMargin = 0.01;
constexpr double kTableTolerance = 0.10;
constexpr double kEerBaVsEr = 0.05;
constexpr double kEerBaVsBa9 = 0.10;
constexpr double kCalibLo = 0.10;
constexpr double kCalibHi = 0.40;
constexpr double kMonotoneSlack = 0.01;
constexpr double kStirlingBound = 2.0;
constexpr double kOverheadRelTol = 1e-12;
constexpr double kPermutationTol = 1e-6;
constexpr double kKtRelTol = 1e-12;
constexpr double kVandermondeTol = 1e-12;
constexpr double kLimitDecode = 120.0;
constexpr double kLimitFig1 = 300.0;
constexpr double kLimitAnomaly = 900.0;

// Criteria that cannot pass as stated; each is analysed in the decisions notes.
const std::set<int> kKnownRed = {10};

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  enum Kind { Pass, Fail, Skip } kind;
  std::string detail;
};

std::map<int, Verdict::Kind> g_results;

void report(int id, const std::string& name, const Verdict& v) {
  const char* tag = v.kind == Verdict::Pass ? "PASS" : v.kind == Verdict::Fail ? "FAIL" : "SKIP";
  std::printf("[%s] criterion %d: %s -- %s\n", tag, id, name.c_str(), v.detail.c_str());
  std::fflush(stdout);
  g_results[id] = v.kind;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<Graph> make_batch(const GenSpec& spec, std::size_t count, const std::string& label, std::uint64_t master) {
  return generate_batch({label, spec, count}, master);
}

// ---------------------------------------------------------------------------

std::vector<std::pair<double, double>> g_fidelity;  // (ideal incl. header, actual)

Verdict decodability() {
  const auto t0 = Clock::now();
  const std::size_t sizes[] = {10, 50, 100};
  const Family families[] = {Family::ER, Family::BA, Family::NWS, Family::MIX};
  // learned-mode parameters shared by every trial
  std::vector<Graph> training;
  for (std::size_t n : sizes)
    for (Family f : families) {
      GenSpec s{f, n, f == Family::ER ? 0.2 : (f == Family::MIX ? 0.02 : 0.1), std::max<std::size_t>(1, n / 10), 5, 0};
      for (auto& g : make_batch(s, 2, "decode-train", 1)) training.push_back(std::move(g));
    }
  const LearnedParams lp = learned_params(collect_training_stats(training));

  std::size_t ok = 0, total = 0;
  for (CoderId c : kAllCoders) {
    for (std::size_t i = 0; i < 200; ++i) {
      const Family f = families[i % 4];
      const std::size_t n = sizes[(i / 4) % 3];
      GenSpec s{f, n, f == Family::ER ? 0.2 : (f == Family::MIX ? 0.02 : 0.1), std::max<std::size_t>(1, n / 10), 5,
                derive_seed(7, stream_id(coder_name(c)), i)};
      const Graph g = generate(s);
      const CodingMode mode = i % 2 ? CodingMode::Learned : CodingMode::Universal;
      const auto e = encode(g, c, mode, &lp);
      const Graph d = decode(e.stream, n, c, mode, &lp);
      const bool good = c == CoderId::LabeledIid ? d == g : sorted_matrix(d) == sorted_matrix(g);
      ok += good;
      ++total;
      g_fidelity.emplace_back(e.ideal_bits + e.header_bits, static_cast<double>(e.stream.size()));
    }
  }
  const double secs = since(t0);
  const bool pass = ok == total && secs < kLimitDecode;
  return {pass ? Verdict::Pass : Verdict::Fail,
          fmt("%zu/%zu round trips exact, %.1f s (limit %.0f s)", ok, total, secs, kLimitDecode)};
}

Verdict kraft() {
  const auto all = oracle::all_labeled_graphs(4);
  std::map<std::uint64_t, Graph> structures;
  for (const auto& g : all) structures.emplace(oracle::brute_canonical_code(g), g);
  if (all.size() != 64 || structures.size() != 11) return {Verdict::Fail, "enumeration did not give 64 / 11"};

  struct Setting {
    double p;
    std::vector<std::uint64_t> degree_counts;
    double alpha;
    TriangleParams tri;
  };
  const std::vector<Setting> settings = {
      {0.5, {1, 1, 1, 1}, 0.0, {0.5, 0.5}}, {0.2, {5, 3, 1, 0}, 0.5, {0.8, 0.1}}, {0.9, {0, 0, 1, 9}, 0.0, {0.3, 0.6}}};
  double worst_structure = 0.0, worst_labeled = 0.0;
  std::string sums;
  for (const auto& st : settings) {
    LearnedParams lp;
    lp.edge_probability = st.p;
    lp.degree = DegreeModel(st.degree_counts, st.alpha);
    lp.triangle = st.tri;
    double lab = 0.0;
    for (const auto& g : all) lab += std::exp2(-labeled_iid_bits(g, st.p));
    worst_labeled = std::max(worst_labeled, std::abs(lab - 1.0));
    for (CoderId c : kStructureCoders) {
      double sum = 0.0;
      for (const auto& [code, g] : structures) {
        try {
          sum += std::exp2(-ideal_codelength(g, c, CodingMode::Learned, &lp));
        } catch (const InfiniteCodelength&) {
        }
      }
      worst_structure = std::max(worst_structure, sum);
      sums += fmt(" %s=%.6f", std::string(coder_name(c)).c_str(), sum);
    }
  }
  const bool pass = worst_structure <= 1.0 + kKraftSlack && worst_labeled <= kLabeledKraftTol;
  return {pass ? Verdict::Pass : Verdict::Fail,
          fmt("max structure sum %.12f, labeled |sum-1| %.2e;%s", worst_structure, worst_labeled, sums.c_str())};
}

Verdict fidelity() {
  double worst = -1e300;
  std::size_t bad = 0;
  for (auto [ideal, actual] : g_fidelity) {
    const double slack = actual - ideal - (kFidelityConst + kFidelitySlope * ideal);
    worst = std::max(worst, actual - ideal);
    bad += slack > 0;
  }
  return {bad == 0 && !g_fidelity.empty() ? Verdict::Pass : Verdict::Fail,
          fmt("%zu streams, %zu over budget, max actual-ideal %.2f bits", g_fidelity.size(), bad, worst)};
}

// Mean learned-mode ideal bits per structure coder; training on 50 graphs first.
std::array<double, 4> figure_means(const GenSpec& spec, const std::string& label) {
  const auto train = make_batch(spec, 50, label + "-train", 11);
  const auto test = make_batch(spec, 20, label + "-test", 11);
  const LearnedParams lp = learned_params(collect_training_stats(train));
  std::array<double, 4> sum{};
  for (const auto& g : test) {
    const CanonicalGraph cg(g);
    sum[0] += labeled_iid_bits(g, lp.edge_probability);
    for (CoderId c : kStructureCoders)
      sum[static_cast<std::size_t>(c)] += ideal_codelength(cg, c, CodingMode::Learned, &lp);
  }
  for (auto& s : sum) s /= static_cast<double>(test.size());
  return sum;
}

std::string means_text(std::size_t n, const std::array<double, 4>& m) {
  return fmt(" n=%zu[iid %.0f deg %.0f tri %.0f]", n, m[1], m[2], m[3]);
}

Verdict figure1() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (std::size_t n : {100u, 200u, 500u}) {
    GenSpec s{Family::ER, n, std::min(0.5, 100.0 / static_cast<double>(n)), 1, 2, 0};
    const auto m = figure_means(s, "fig1-" + std::to_string(n));
    pass &= m[1] <= m[2] * (1 + kIidMargin) && m[1] <= m[3] * (1 + kIidMargin);
    detail += means_text(n, m);
  }
  const double secs = since(t0);
  pass &= secs < kLimitFig1;
  return {pass ? Verdict::Pass : Verdict::Fail, fmt("%.1f s;", secs) + detail};
}

Verdict ordering(Family f, CoderId expected, const std::string& label) {
  bool pass = true;
  std::string detail;
  for (std::size_t n : {200u, 500u}) {
    GenSpec s = f == Family::BA ? GenSpec{Family::BA, n, 0.0, 20, 2, 0} : GenSpec{Family::NWS, n, 0.1, 1, 5, 0};
    const auto m = figure_means(s, label + std::to_string(n));
    for (CoderId c : kStructureCoders)
      if (c != expected) pass &= m[static_cast<std::size_t>(expected)] < m[static_cast<std::size_t>(c)];
    detail += means_text(n, m);
  }
  return {pass ? Verdict::Pass : Verdict::Fail, detail};
}

Graph largest_component(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> comp(n, -1);
  std::vector<std::size_t> sizes;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(sizes.size());
    std::size_t size = 0;
    std::queue<NodeId> q;
    q.push(s);
    comp[s] = id;
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      ++size;
      g.neighbors(v).for_each_set([&](std::size_t u) {
        if (comp[u] < 0) comp[u] = id, q.push(static_cast<NodeId>(u));
      });
    }
    sizes.push_back(size);
  }
  if (sizes.empty()) return g;
  const int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < n; ++v)
    if (comp[v] == best) keep.push_back(v);
  Graph h(keep.size());
  for (NodeId i = 0; i < keep.size(); ++i)
    for (NodeId j = 0; j < i; ++j)
      if (g.has_edge(keep[i], keep[j])) h.add_edge(i, j);
  return h;
}

Verdict table2() {
  const char* yeast = std::getenv("GCDC_YEAST_GRAPH");
  const char* power = std::getenv("GCDC_POWER_GRAPH");
  if (!yeast || !power)
    return {Verdict::Skip, "set GCDC_YEAST_GRAPH and GCDC_POWER_GRAPH to the dataset files to run"};
  const std::array<double, 5> ref_yeast = {20513, 8796, 7290, 8743, 8369};
  const std::array<double, 5> ref_power = {81077, 32013, 27651, 32586, 26507};
  bool pass = true;
  std::string detail;
  for (auto [path, ref, name] : {std::tuple{yeast, ref_yeast, "yeast"}, std::tuple{power, ref_power, "power"}}) {
    const Graph g = largest_component(load_graph(path, guess_graph_format(path)));
    const CanonicalGraph cg(g);
    const std::uint64_t n = g.node_count();
    const double labeled = ideal_codelength(g, CoderId::LabeledIid, CodingMode::Universal) +
                           universal_overhead(CoderId::LabeledIid, n);
    const double iid = ideal_codelength(cg, CoderId::StructIid, CodingMode::Universal) +
                       universal_overhead(CoderId::StructIid, n);
    const double degree = ideal_codelength(cg, CoderId::StructDegree, CodingMode::Universal);
    const double degree_over = degree + universal_overhead(CoderId::StructDegree, n);
    const double triangle = ideal_codelength(cg, CoderId::StructTriangle, CodingMode::Universal);
    const std::array<double, 5> got = {labeled, iid, degree, degree_over, triangle};
    for (std::size_t i = 0; i < 5; ++i) pass &= std::abs(got[i] - ref[i]) <= kTableTolerance * ref[i];
    pass &= iid > degree && degree_over > degree;
    if (std::string(name) == "power") pass &= triangle < std::min({labeled, iid, degree_over});
    detail += fmt(" %s n=%llu: %.0f/%.0f/%.0f/%.0f/%.0f", name, static_cast<unsigned long long>(n), got[0], got[1],
                  got[2], got[3], got[4]);
  }
  return {pass ? Verdict::Pass : Verdict::Fail, detail};
}

ExperimentConfig base_config(std::size_t n, std::size_t train, std::uint64_t seed) {
  ExperimentConfig c;
  c.seed = seed;
  c.train = {"train", GenSpec{Family::BA, n, 0.0, 10, 2, 0}, train};
  c.reference = "BA10";
  return c;
}

Verdict anomaly_separation() {
  const auto t0 = Clock::now();
  ExperimentConfig c = base_config(100, 100, 2024);
  c.tests = {{"BA10", GenSpec{Family::BA, 100, 0.0, 10, 2, 0}, 500},
             {"BA9", GenSpec{Family::BA, 100, 0.0, 9, 2, 0}, 500},
             {"ER", GenSpec{Family::ER, 100, 0.182, 1, 2, 0}, 500}};
  const auto r = run_experiment(c);
  double eer_er = 1, eer_ba9 = 1;
  for (const auto& cmp : r.comparisons) {
    if (cmp.label == "ER") eer_er = cmp.detection.equal_error_rate;
    if (cmp.label == "BA9") eer_ba9 = cmp.detection.equal_error_rate;
  }
  const double secs = since(t0);
  const bool pass = eer_er <= kEerBaVsEr && eer_ba9 <= kEerBaVsBa9 && secs < kLimitAnomaly;
  return {pass ? Verdict::Pass : Verdict::Fail,
          fmt("typical coder %s; EER vs ER %.3f (bar %.2f), vs BA9 %.3f (bar %.2f); %.1f s",
              std::string(coder_name(r.model.coder)).c_str(), eer_er, kEerBaVsEr, eer_ba9, kEerBaVsBa9, secs)};
}

double mixture_eer(std::size_t n, double p_extra, std::size_t train, std::size_t count, std::uint64_t seed) {
  ExperimentConfig c = base_config(n, train, seed);
  c.tests = {{"BA10", GenSpec{Family::BA, n, 0.0, 10, 2, 0}, count},
             {"MIX", GenSpec{Family::MIX, n, p_extra, 10, 2, 0}, count}};
  return run_experiment(c).comparisons.at(0).detection.equal_error_rate;
}

Verdict size_scaling() {
  // calibrate at n = 100 on smaller batches, aiming for the middle of the band
  const double grid[] = {0.004, 0.006, 0.008, 0.010, 0.012, 0.016, 0.020, 0.024, 0.032};
  double chosen = -1, chosen_eer = 0, best_gap = 1e9;
  std::string calib;
  for (double p : grid) {
    const double e = mixture_eer(100, p, 100, 200, 77);
    calib += fmt(" %.3f:%.3f", p, e);
    if (e >= kCalibLo && e <= kCalibHi && std::abs(e - 0.25) < best_gap) {
      best_gap = std::abs(e - 0.25);
      chosen = p;
      chosen_eer = e;
    }
  }
  if (chosen < 0) return {Verdict::Fail, "no p_extra on the grid gives EER in band at n=100;" + calib};
  double eers[3];
  const std::size_t ns[] = {100, 200, 400};
  for (int i = 0; i < 3; ++i) eers[i] = mixture_eer(ns[i], chosen, 100, 500, 4242);
  bool pass = eers[0] >= kCalibLo && eers[0] <= kCalibHi;
  pass &= eers[1] <= eers[0] + kMonotoneSlack && eers[2] <= eers[1] + kMonotoneSlack;
  return {pass ? Verdict::Pass : Verdict::Fail,
          fmt("p_extra=%.3f (calibration EER %.3f); EER n=100 %.3f, n=200 %.3f, n=400 %.3f; grid", chosen,
              chosen_eer, eers[0], eers[1], eers[2]) +
              calib};
}

Verdict overheads() {
  bool stirling = true;
  std::string detail;
  for (std::uint64_t n : {10u, 100u, 1000u}) {
    const double exact = histogram_header_bits(n);
    const double q = static_cast<double>(n) / static_cast<double>(2 * n - 1);
    const double h = -q * std::log2(q) - (1 - q) * std::log2(1 - q);
    const double tail = 0.5 * std::log2(static_cast<double>(2 * n - 1) / static_cast<double>(n * n));
    const double c_printed = exact - (static_cast<double>(n) * h + tail);
    const double c_expanded = exact - (static_cast<double>(2 * n - 1) * h + tail);
    stirling &= std::abs(c_printed) <= kStirlingBound;
    detail += fmt(" n=%llu c=%.3f (with (2n-1)H: %.3f)", static_cast<unsigned long long>(n), c_printed, c_expanded);
  }
  bool exact = true;
  for (std::uint64_t n : {2u, 10u, 100u, 1000u, 5000u}) {
    const double iid_ref = std::log2(static_cast<double>(n * (n - 1) / 2 + 1));
    const double deg_ref = oracle::log2_big(oracle::exact_binomial(static_cast<unsigned>(2 * n - 1), static_cast<unsigned>(n)));
    for (CoderId c : {CoderId::LabeledIid, CoderId::StructIid})
      exact &= std::abs(universal_overhead(c, n) - iid_ref) <= kOverheadRelTol * iid_ref;
    exact &= std::abs(universal_overhead(CoderId::StructDegree, n) - deg_ref) <= kOverheadRelTol * deg_ref;
    exact &= universal_overhead(CoderId::StructTriangle, n) == 0.0;
  }
  return {stirling && exact ? Verdict::Pass : Verdict::Fail,
          fmt("exact overheads %s; approximation bound |c|<=%.0f %s;", exact ? "match" : "DIFFER", kStirlingBound,
              stirling ? "holds" : "violated") +
              detail};
}

Verdict properties() {
  std::mt19937_64 rng(99);
  std::string failed;
  // permutation invariance
  {
    LearnedParams lp;
    lp.edge_probability = 0.3;
    lp.degree = DegreeModel({2, 4, 3, 1}, 0.5);
    lp.triangle = {0.6, 0.2};
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const std::size_t n = 2 + rng() % 7;
      const Graph g = oracle::random_graph(n, 0.15 + 0.035 * t, rng);
      for (CoderId c : kStructureCoders)
        for (CodingMode m : {CodingMode::Learned, CodingMode::Universal}) {
          const double ref = ideal_codelength(g, c, m, &lp);
          for (int k = 0; k < 50; ++k)
            worst = std::max(worst, std::abs(ideal_codelength(g.permuted(oracle::random_permutation(n, rng)), c, m, &lp) - ref));
        }
    }
    if (worst > kPermutationTol) failed += fmt(" permutation(%.2e)", worst);
  }
  // KT closed form
  {
    double worst = 0.0;
    for (unsigned len = 0; len <= 6; ++len)
      for (unsigned mask = 0; mask < (1u << len); ++mask) {
        KtCounter c;
        double prob = 1.0;
        for (unsigned i = 0; i < len; ++i) {
          const bool one = mask >> i & 1;
          const double p = kt_predict(c);
          prob *= one ? p : 1 - p;
          c.update(one, !one);
        }
        const double ref = oracle::kt_block_probability(static_cast<unsigned>(c.ones), static_cast<unsigned>(c.zeros));
        worst = std::max(worst, std::abs(prob - ref) / ref);
      }
    if (worst > kKtRelTol) failed += fmt(" kt(%.2e)", worst);
  }
  // configuration normalization over all group-size compositions of 6
  {
    double worst = 0.0;
    std::function<void(std::uint64_t, std::vector<std::uint64_t>&)> comp = [&](std::uint64_t left,
                                                                              std::vector<std::uint64_t>& s) {
      if (left == 0) {
        std::map<std::uint64_t, double> mass;
        std::vector<std::uint64_t> k(s.size(), 0);
        while (true) {
          std::uint64_t total = 0;
          for (auto x : k) total += x;
          mass[total] += std::exp2(-configuration_codelength(s, k));
          std::size_t i = 0;
          while (i < k.size() && k[i] == s[i]) k[i++] = 0;
          if (i == k.size()) break;
          ++k[i];
        }
        for (auto [t, m] : mass) worst = std::max(worst, std::abs(m - 1.0));
        return;
      }
      for (std::uint64_t first = 1; first <= left; ++first) {
        s.push_back(first);
        comp(left - first, s);
        s.pop_back();
      }
    };
    std::vector<std::uint64_t> s;
    comp(6, s);
    if (worst > kVandermondeTol) failed += fmt(" configuration(%.2e)", worst);
  }
  // triangle context against the brute-force scan
  {
    std::size_t mismatches = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng() % 8;
      const Graph h = oracle::random_graph(n, 0.45, rng);
      oracle::traverse(h, [&](NodeId v, const oracle::Groups& groups, const std::vector<bool>& coded) {
        DynamicBitset bits(n);
        for (NodeId u = 0; u < n; ++u)
          if (coded[u]) bits.set(u);
        for (const auto& grp : groups)
          for (NodeId member : grp)
            mismatches += triangle_context(h, bits, v, member) != oracle::brute_context(h, coded, v, member);
      });
    }
    if (mismatches) failed += fmt(" triangle-context(%zu mismatches)", mismatches);
  }
  return {failed.empty() ? Verdict::Pass : Verdict::Fail,
          failed.empty() ? "permutation invariance, KT closed form, configuration normalization, triangle context"
                         : "failed:" + failed};
}

void run(int id, const std::string& name, const std::function<Verdict()>& fn) {
  try {
    report(id, name, fn());
  } catch (const std::exception& e) {
    report(id, name, {Verdict::Fail, std::string("exception: ") + e.what()});
  }
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  run(1, "decodability", decodability);
  run(2, "Kraft sums on 4 nodes", kraft);
  run(3, "arithmetic coder fidelity", fidelity);
  run(4, "ER ordering", figure1);
  run(5, "BA ordering", [] { return ordering(Family::BA, CoderId::StructDegree, "fig2-"); });
  run(6, "NWS ordering", [] { return ordering(Family::NWS, CoderId::StructTriangle, "fig3-"); });
  run(7, "real-graph codelengths", table2);
  run(8, "anomaly separation", anomaly_separation);
  run(9, "size scaling", size_scaling);
  run(10, "overhead formulas", overheads);
  run(11, "property suites", properties);

  int pass = 0, fail = 0, skip = 0, unexpected = 0;
  for (auto [id, kind] : g_results) {
    pass += kind == Verdict::Pass;
    skip += kind == Verdict::Skip;
    if (kind == Verdict::Fail) {
      ++fail;
      unexpected += !kKnownRed.count(id);
    }
  }
  std::printf("summary: %d pass, %d fail (%d known red), %d skip; %.1f s\n", pass, fail, fail - unexpected, skip,
              since(t0));
  return unexpected ? 1 : 0;
}
