#include "gcdc/experiment.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gcdc/errors.hpp"
#include "gcdc/parallel.hpp"

namespace gcdc {

std::vector<Graph> generate_batch(const BatchSpec& batch, std::uint64_t master_seed, unsigned threads) {
  batch.spec.validate();
  std::vector<Graph> out(batch.count);
  const std::uint64_t stream = stream_id(batch.label);
  parallel_for(batch.count, threads, [&](std::size_t i) {
    GenSpec s = batch.spec;
    s.seed = derive_seed(master_seed, stream, i);
    out[i] = generate(s);
  });
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

BatchSpec parse_batch(const std::string& label, const std::string& value, std::size_t line) {
  std::istringstream in(value);
  std::string tok, rest;
  BatchSpec b;
  b.label = label;
  bool have_count = false;
  while (in >> tok) {
    if (tok.rfind("count=", 0) == 0) {
      try {
        std::size_t used = 0;
        const long long c = std::stoll(tok.substr(6), &used);
        if (used != tok.size() - 6 || c < 1) throw std::invalid_argument("");
        b.count = static_cast<std::size_t>(c);
      } catch (const std::exception&) {
        throw ParseError("bad count '" + tok.substr(6) + "'", line);
      }
      have_count = true;
    } else {
      rest += tok + ' ';
    }
  }
  if (!have_count) throw ParseError("batch '" + label + "' needs count=", line);
  try {
    b.spec = GenSpec::parse(rest);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), line);
  }
  return b;
}

double parse_double(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used == v.size()) return x;
  } catch (const std::exception&) {
  }
  throw ParseError("bad number '" + v + "'", line);
}

std::uint64_t parse_u64(const std::string& v, std::size_t line) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] != '-') {
      auto x = std::stoull(v, &used);
      if (used == v.size()) return x;
    }
  } catch (const std::exception&) {
  }
  throw ParseError("bad integer '" + v + "'", line);
}

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig c;
  std::string raw;
  std::size_t line = 0;
  bool header = false, have_train = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(std::string_view(raw).substr(0, hash));
    if (text.empty()) continue;
    if (!header) {
      if (text != "gcdc-experiment 1") throw ParseError("expected 'gcdc-experiment 1' header", line);
      header = true;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key == "seed") {
      c.seed = parse_u64(value, line);
    } else if (key == "alpha") {
      c.alpha = parse_double(value, line);
    } else if (key == "train") {
      c.train = parse_batch("train", value, line);
      have_train = true;
    } else if (key.rfind("test.", 0) == 0 && key.size() > 5) {
      c.tests.push_back(parse_batch(key.substr(5), value, line));
    } else if (key == "reference") {
      c.reference = value;
    } else if (key == "tau") {
      std::istringstream ts(value);
      std::string t;
      while (ts >> t) c.taus.push_back(parse_double(t, line));
    } else if (key == "histogram_bins") {
      c.histogram_bins = static_cast<std::size_t>(parse_u64(value, line));
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "threads") {
      c.threads = static_cast<unsigned>(parse_u64(value, line));
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!header) throw ParseError("empty experiment config", line);
  if (!have_train) throw ParseError("missing 'train'", line);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse(in);
}

void ExperimentConfig::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
  if (train.count < 1) throw std::invalid_argument("training count must be at least 1");
  train.spec.validate();
  if (tests.empty()) throw std::invalid_argument("at least one test batch is required");
  std::set<std::string> labels;
  for (const auto& t : tests) {
    if (t.count < 1) throw std::invalid_argument("test count must be at least 1");
    t.spec.validate();
    if (t.spec.n < 2) throw std::invalid_argument("test graphs need at least two nodes");
    if (t.label == "train") throw std::invalid_argument("'train' is reserved as a batch label");
    for (char ch : t.label)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
        throw std::invalid_argument("batch label '" + t.label + "' has characters outside [A-Za-z0-9_.-]");
    if (!labels.insert(t.label).second) throw std::invalid_argument("duplicate test label '" + t.label + "'");
  }
  if (!reference.empty() && !labels.count(reference))
    throw std::invalid_argument("reference '" + reference + "' is not a test batch");
  if (histogram_bins == 0) throw std::invalid_argument("histogram_bins must be positive");
}

std::vector<double> BatchScores::values() const {
  std::vector<double> v;
  v.reserve(scores.size());
  for (const auto& s : scores) v.push_back(s.score);
  return v;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult r;
  const auto training = generate_batch(config.train, config.seed, config.threads);
  r.model = train_typical(training, config.alpha);
  for (const auto& t : config.tests) {
    const auto graphs = generate_batch(t, config.seed, config.threads);
    r.batches.push_back({t, score_batch(r.model, graphs, config.threads)});
  }
  if (!config.reference.empty()) {
    std::vector<double> ref;
    for (const auto& b : r.batches)
      if (b.batch.label == config.reference) ref = b.values();
    for (const auto& b : r.batches) {
      if (b.batch.label == config.reference) continue;
      const auto v = b.values();
      r.comparisons.push_back({b.batch.label, evaluate(ref, v, config.taus),
                               score_histogram(ref, v, config.histogram_bins)});
    }
  }
  return r;
}

void write_scores_csv(std::ostream& out, const std::vector<BatchScores>& batches) {
  out << "graph_id,family,n,L_T,L_A,winning_coder,score\n";
  for (const auto& b : batches) {
    for (std::size_t i = 0; i < b.scores.size(); ++i) {
      const auto& s = b.scores[i];
      out << b.batch.label << '-' << i << ',' << b.batch.label << ',' << b.batch.spec.n << ',' << fmt(s.typical_bits)
          << ',' << fmt(s.atypical_bits) << ',' << coder_name(s.winner) << ',' << fmt(s.score) << '\n';
    }
  }
}

void write_sweep_csv(std::ostream& out, const DetectionResult& d) {
  out << "tau,p_fa,p_miss\n";
  for (const auto& p : d.sweep) out << fmt(p.tau) << ',' << fmt(p.false_alarm) << ',' << fmt(p.miss) << '\n';
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "lo,hi,typical,test\n";
  for (const auto& b : bins) out << fmt(b.lo) << ',' << fmt(b.hi) << ',' << b.typical << ',' << b.test << '\n';
}

void write_experiment(const ExperimentConfig& config, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  auto open = [&](const std::string& name) {
    std::ofstream f(config.out_dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (config.out_dir / name).string());
    return f;
  };
  {
    auto f = open("scores.csv");
    write_scores_csv(f, result.batches);
  }
  {
    auto f = open("model.txt");
    write_model(f, result.model);
  }
  for (const auto& c : result.comparisons) {
    auto s = open("sweep_" + c.label + ".csv");
    write_sweep_csv(s, c.detection);
    auto h = open("histogram_" + c.label + ".csv");
    write_histogram_csv(h, c.histogram);
  }
  auto f = open("summary.txt");
  f << "seed " << config.seed << '\n';
  f << "typical_coder " << coder_name(result.model.coder) << '\n';
  for (std::size_t c = 0; c < kAllCoders.size(); ++c)
    f << "training_bits." << coder_name(kAllCoders[c]) << ' ' << fmt(result.model.training_bits[c]) << '\n';
  for (const auto& b : result.batches) {
    double mean = 0.0;
    for (const auto& s : b.scores) mean += s.score;
    mean /= static_cast<double>(b.scores.size());
    f << "mean_score." << b.batch.label << ' ' << fmt(mean) << '\n';
  }
  for (const auto& c : result.comparisons) {
    f << "eer." << c.label << ' ' << fmt(c.detection.equal_error_rate) << '\n';
    f << "eer_tau." << c.label << ' ' << fmt(c.detection.eer_tau) << '\n';
    f << "p_fa." << c.label << ' ' << fmt(c.detection.false_alarm_rate) << '\n';
    f << "p_miss." << c.label << ' ' << fmt(c.detection.miss_rate) << '\n';
  }
}

}  // namespace gcdc
