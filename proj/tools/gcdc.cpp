#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gcdc/anomaly.hpp"
#include "gcdc/coders.hpp"
#include "gcdc/container.hpp"
#include "gcdc/experiment.hpp"
#include "gcdc/generators.hpp"
#include "gcdc/graph_io.hpp"
#include "gcdc/model.hpp"

namespace fs = std::filesystem;
using namespace gcdc;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

GraphFormat format_for(const std::string& flag, const fs::path& path) {
  return flag.empty() ? guess_graph_format(path) : parse_graph_format(flag);
}

TypicalModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model " + path);
  return read_model(in);
}

CodingMode resolve_mode(const std::string& mode, const std::string& model) {
  CodingMode m = mode.empty() ? (model.empty() ? CodingMode::Universal : CodingMode::Learned) : parse_mode(mode);
  if (m == CodingMode::Learned && model.empty()) throw UsageError("learned mode needs --model");
  return m;
}

std::vector<Graph> load_all(const std::vector<std::string>& paths, const std::string& format) {
  std::vector<Graph> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(load_graph(p, format_for(format, p)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gcdc: structure coding and atypicality scoring for graphs"};
  app.require_subcommand(1);

  std::string coder_flag = "struct-iid", mode_flag, model_path, out_path, format_flag;
  std::uint64_t seed = 0;
  bool seed_given = false;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate random graphs");
  std::string spec_text;
  std::size_t count = 1;
  std::string gen_format;
  gen->add_option("spec", spec_text, "e.g. \"family=BA n=100 m=10\"")->required();
  gen->add_option("--count", count, "Number of graphs")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Master seed");
  gen->add_option("--out", out_path, "Output directory")->required();
  gen->add_option("--format", gen_format, "edgelist|mtx")->default_val("edgelist");

  // encode
  auto* enc = app.add_subcommand("encode", "Encode a graph into a container");
  std::string graph_path;
  enc->add_option("graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  enc->add_option("--coder", coder_flag, "labeled-iid|struct-iid|degree|triangle");
  enc->add_option("--mode", mode_flag, "learned|universal (default: learned iff --model)");
  enc->add_option("--model", model_path, "Model file for learned mode");
  enc->add_option("--out", out_path, "Container path")->required();
  enc->add_option("--format", format_flag, "edgelist|mtx (default: by extension)");

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a container into a graph file");
  std::string container_path;
  dec->add_option("container", container_path, "Container file")->required()->check(CLI::ExistingFile);
  dec->add_option("--model", model_path, "Model file (learned-mode containers)");
  dec->add_option("--out", out_path, "Graph path")->required();
  dec->add_option("--format", format_flag, "edgelist|mtx (default: by extension)");

  // train
  auto* train = app.add_subcommand("train", "Learn a typical model from graph files");
  std::vector<std::string> graph_paths;
  double alpha = kDefaultAlpha;
  train->add_option("graphs", graph_paths, "Training graphs")->required()->check(CLI::ExistingFile);
  train->add_option("--alpha", alpha, "Degree smoothing")->check(CLI::NonNegativeNumber);
  train->add_option("--out", out_path, "Model path")->required();
  train->add_option("--format", format_flag, "edgelist|mtx (default: by extension)");

  // score
  auto* score = app.add_subcommand("score", "Atypicality scores of graph files");
  score->add_option("graphs", graph_paths, "Graphs to score")->required()->check(CLI::ExistingFile);
  score->add_option("--model", model_path, "Typical model")->required();
  score->add_option("--out", out_path, "CSV path (default: stdout)");
  score->add_option("--format", format_flag, "edgelist|mtx (default: by extension)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a detection experiment from a config file");
  std::string config_path;
  exp->add_option("config", config_path, "Experiment config")->required()->check(CLI::ExistingFile);
  exp->add_option("--seed", seed, "Override the master seed")->each([&](const std::string&) { seed_given = true; });
  exp->add_option("--out", out_path, "Override the output directory");

  // compare
  auto* cmp = app.add_subcommand("compare", "Universal codelengths of one graph under every coder");
  cmp->add_option("graph", graph_path, "Graph file")->required()->check(CLI::ExistingFile);
  cmp->add_option("--format", format_flag, "edgelist|mtx (default: by extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen) {
      GenSpec spec = GenSpec::parse(spec_text);
      const GraphFormat fmt = parse_graph_format(gen_format);
      const char* ext = fmt == GraphFormat::MatrixMarket ? ".mtx" : ".edges";
      fs::create_directories(out_path);
      const auto graphs = generate_batch({std::string(family_name(spec.family)), spec, count}, seed);
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04zu%s", std::string(family_name(spec.family)).c_str(), i, ext);
        save_graph(fs::path(out_path) / name, graphs[i], fmt);
      }
      std::cout << "wrote " << graphs.size() << " graphs to " << out_path << '\n';
    } else if (*enc) {
      const CoderId coder = parse_coder(coder_flag);
      const CodingMode mode = resolve_mode(mode_flag, model_path);
      const Graph g = load_graph(graph_path, format_for(format_flag, graph_path));
      std::optional<TypicalModel> model;
      if (mode == CodingMode::Learned) model = load_model_file(model_path);
      const auto e = encode(g, coder, mode, model ? &model->params : nullptr);
      save_container(out_path, {coder, mode, g.node_count(), e.stream});
      std::cout << "coder=" << coder_name(coder) << " mode=" << mode_name(mode) << " n=" << g.node_count()
                << " edges=" << g.edge_count() << " ideal_bits=" << num(e.ideal_bits)
                << " header_bits=" << num(e.header_bits) << " actual_bits=" << e.stream.size() << '\n';
    } else if (*dec) {
      const Container c = load_container(container_path);
      std::optional<TypicalModel> model;
      if (c.mode == CodingMode::Learned) {
        if (model_path.empty()) throw UsageError("learned-mode container needs --model");
        model = load_model_file(model_path);
      }
      const Graph g = decode(c.stream, c.node_count, c.coder, c.mode, model ? &model->params : nullptr);
      save_graph(out_path, g, format_for(format_flag, out_path));
      std::cout << "decoded n=" << g.node_count() << " edges=" << g.edge_count() << " to " << out_path << '\n';
    } else if (*train) {
      const auto graphs = load_all(graph_paths, format_flag);
      const TypicalModel m = train_typical(graphs, alpha);
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      write_model(out, m);
      std::cout << "typical coder " << coder_name(m.coder) << " over " << graphs.size() << " graphs\n";
    } else if (*score) {
      const TypicalModel m = load_model_file(model_path);
      const auto graphs = load_all(graph_paths, format_flag);
      const auto scores = score_batch(m, graphs);
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write " + out_path);
      }
      std::ostream& out = out_path.empty() ? std::cout : file;
      out << "graph_id,family,n,L_T,L_A,winning_coder,score\n";
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& s = scores[i];
        out << graph_paths[i] << ",file," << graphs[i].node_count() << ',' << num(s.typical_bits) << ','
            << num(s.atypical_bits) << ',' << coder_name(s.winner) << ',' << num(s.score) << '\n';
      }
    } else if (*exp) {
      ExperimentConfig config = ExperimentConfig::load(config_path);
      if (seed_given) config.seed = seed;
      if (!out_path.empty()) config.out_dir = out_path;
      const auto result = run_experiment(config);
      write_experiment(config, result);
      std::cout << "typical coder " << coder_name(result.model.coder) << '\n';
      for (const auto& c : result.comparisons)
        std::cout << config.reference << " vs " << c.label << ": EER " << num(c.detection.equal_error_rate)
                  << " at tau " << num(c.detection.eer_tau) << '\n';
      std::cout << "outputs in " << config.out_dir.string() << '\n';
    } else if (*cmp) {
      const Graph g = load_graph(graph_path, format_for(format_flag, graph_path));
      const CanonicalGraph cg(g);
      std::cout << "coder,ideal_bits,overhead_bits,total_bits\n";
      for (CoderId c : kAllCoders) {
        const double body = c == CoderId::LabeledIid ? ideal_codelength(g, c, CodingMode::Universal)
                                                     : ideal_codelength(cg, c, CodingMode::Universal);
        const double over = universal_overhead(c, g.node_count());
        std::cout << coder_name(c) << ',' << num(body) << ',' << num(over) << ',' << num(body + over) << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "gcdc: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gcdc: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
