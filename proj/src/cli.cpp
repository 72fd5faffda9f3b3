#include "pairnet/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pairnet/ensemble.hpp"
#include "pairnet/error.hpp"
#include "pairnet/glyph_gen.hpp"
#include "pairnet/io.hpp"
#include "pairnet/kernels.hpp"
#include "pairnet/training.hpp"

namespace pairnet::cli {

namespace {

enum class ReportFormat { Text, JsonLines };

struct DatasetArgs {
  std::string glyphs;
  std::string idx_images;
  std::string idx_labels;

  bool given() const { return !glyphs.empty() || !idx_images.empty(); }
};

struct TrainArgs {
  std::string kind = "perceptron";
  std::string algorithm;  // empty: derived from kind
  std::optional<double> learning_rate;
  int max_epochs = 1000;
  int hidden_size = kDefaultHiddenSize;
  double init_scale = 0.1;
  int target_errors = 0;
};

struct Globals {
  std::uint64_t seed = 0;
  ReportFormat report = ReportFormat::Text;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& d, const std::string& prefix,
                         const std::string& what) {
  cmd->add_option("--" + prefix + "data", d.glyphs, what + " in glyph text format");
  cmd->add_option("--" + prefix + "idx-images", d.idx_images, what + " IDX image file");
  cmd->add_option("--" + prefix + "idx-labels", d.idx_labels, what + " IDX label file");
}

void add_train_options(CLI::App* cmd, TrainArgs& t) {
  cmd->add_option("--kind", t.kind, "block kind: perceptron | sigmoid")
      ->check(CLI::IsMember({"perceptron", "sigmoid"}));
  cmd->add_option("--algorithm", t.algorithm, "perceptron-rule | gradient-descent")
      ->check(CLI::IsMember({"perceptron-rule", "gradient-descent"}));
  cmd->add_option("--lr", t.learning_rate, "learning rate (default 0.5 rule / 0.1 descent)");
  cmd->add_option("--epochs", t.max_epochs, "max epochs per block")->capture_default_str();
  cmd->add_option("--hidden", t.hidden_size, "hidden units of sigmoid blocks")->capture_default_str();
  cmd->add_option("--init-scale", t.init_scale, "uniform init range")->capture_default_str();
  cmd->add_option("--target-errors", t.target_errors, "stop once train errors reach this")
      ->capture_default_str();
}

Dataset load_dataset(const DatasetArgs& d, double binarize, const std::string& what) {
  if (!d.glyphs.empty() && !d.idx_images.empty()) {
    throw Error(ErrorKind::Config, what + ": give either glyph data or IDX files, not both");
  }
  if (!d.glyphs.empty()) return io::load_glyphs(d.glyphs);
  if (d.idx_images.empty() || d.idx_labels.empty()) {
    throw Error(ErrorKind::Config, what + ": need glyph data or both IDX image and label files");
  }
  Dataset ds = binarize_dataset(io::load_idx(d.idx_images, d.idx_labels), binarize);
  if (ds.items.empty()) throw Error(ErrorKind::Parse, what + ": empty dataset");
  return ds;
}

void require_usable(const Dataset& ds, const std::string& what) {
  const auto issues = validate_dataset(ds);
  for (const auto& issue : issues) {
    if (issue.kind != IssueKind::AllZeroImage) {
      throw Error(ErrorKind::InsufficientData, what + ": " + issue.message);
    }
  }
}

training::PairwiseOptions pairwise_options(const TrainArgs& t, Topology topology,
                                           std::uint64_t seed) {
  training::PairwiseOptions opts;
  opts.kind = block_kind_from_string(t.kind);
  opts.topology = topology;
  const bool descent = t.algorithm.empty() ? opts.kind == BlockKind::SigmoidNet
                                           : t.algorithm == "gradient-descent";
  opts.config = descent ? TrainConfig::gradient_descent_defaults() : TrainConfig::perceptron_defaults();
  if (t.learning_rate) opts.config.learning_rate = *t.learning_rate;
  opts.config.max_epochs = t.max_epochs;
  opts.config.init_scale = t.init_scale;
  opts.config.target_train_errors = t.target_errors;
  opts.hidden_size = t.hidden_size;
  opts.seed = seed;
  return opts;
}

std::string count_formula(Topology t) { return t == Topology::Full ? "(N-1)N" : "N(N-1)/2"; }

std::string key_name(PairKey key) {
  return "(" + std::to_string(key.i) + "," + std::to_string(key.j) + ")";
}

std::string int_list(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + "]";
}

std::string block_count_line(const Ensemble& e) {
  const auto n = static_cast<std::uint64_t>(e.unit_count());
  const auto expected = expected_block_count(n, e.topology());
  const auto actual = e.blocks().size();
  return std::to_string(actual) + " blocks (" + std::string(to_string(e.topology())) + "), " +
         (actual == expected ? "matches " : "VIOLATES ") + count_formula(e.topology()) + " = " +
         std::to_string(expected);
}

void report_block(const Globals& g, const training::BlockReport& r) {
  if (g.report == ReportFormat::JsonLines) {
    nlohmann::ordered_json j;
    j["pair"] = {r.pair.i, r.pair.j};
    j["epochs_run"] = r.report.epochs_run;
    j["final_train_errors"] = r.report.final_train_errors;
    j["converged"] = r.report.converged;
    if (!r.report.loss_trace.empty()) j["final_loss"] = r.report.loss_trace.back();
    *g.out << j.dump() << '\n';
  } else {
    *g.out << "block " << key_name(r.pair) << " epochs=" << r.report.epochs_run
           << " train_errors=" << r.report.final_train_errors
           << " converged=" << (r.report.converged ? "yes" : "no") << '\n';
  }
}

// ---------------------------------------------------------------- commands

struct BuildMetricArgs {
  DatasetArgs data;
  std::string out;
  std::string topology = "compressed";
  double binarize = 0.5;
};

int cmd_build_metric(const Globals& g, const BuildMetricArgs& a) {
  const Dataset ds = load_dataset(a.data, a.binarize, "samples");
  require_usable(ds, "samples");
  std::vector<ImageGrid> samples;
  std::vector<int> classes;
  for (std::size_t k = 0; k < ds.items.size(); ++k) {
    if (ds.items[k].grid.active_count() == 0) {
      throw Error(ErrorKind::DegenerateSample,
                  "sample " + std::to_string(k) + " has no active cells");
    }
    samples.push_back(ds.items[k].grid);
    classes.push_back(ds.items[k].label);
  }
  const Topology topology = topology_from_string(a.topology);
  io::ModelFile model{build_metric_ensemble(samples, classes, topology), a.binarize, samples};
  io::save_model(model, a.out);
  const Ensemble& e = model.ensemble;
  *g.out << "metric network: N=" << e.unit_count() << " units, "
         << e.class_groups().size() << " class groups, B=" << e.unit_threshold() << '\n';
  *g.out << block_count_line(e) << '\n';
  return 0;
}

struct TrainCmdArgs {
  DatasetArgs data;
  std::string out;
  std::string topology = "compressed";
  double binarize = 0.5;
  TrainArgs train;
};

int cmd_train(const Globals& g, const TrainCmdArgs& a) {
  const Dataset ds = load_dataset(a.data, a.binarize, "dataset");
  if (ds.class_count < 2) throw Error(ErrorKind::Config, "need at least 2 classes");
  require_usable(ds, "dataset");
  const auto opts = pairwise_options(a.train, topology_from_string(a.topology), g.seed);
  const auto trained = training::train_pairwise(ds, opts);
  int unconverged = 0;
  for (const auto& r : trained.reports) {
    report_block(g, r);
    unconverged += r.report.converged ? 0 : 1;
  }
  io::save_model(io::ModelFile{trained.ensemble, a.binarize, {}}, a.out);
  if (g.report == ReportFormat::Text) *g.out << block_count_line(trained.ensemble) << '\n';
  if (unconverged > 0) {
    *g.err << "warning: " << unconverged << " block(s) did not converge\n";
  }
  return 0;
}

struct PredictArgs {
  std::string model;
  std::string input;
  std::string idx_images;
  bool fallback = false;
};

std::vector<ImageGrid> load_inputs(const PredictArgs& a, double binarize) {
  std::vector<ImageGrid> out;
  if (!a.input.empty()) {
    for (auto& item : io::load_glyphs(a.input).items) out.push_back(std::move(item.grid));
  } else if (!a.idx_images.empty()) {
    for (const auto& gray : io::parse_idx_images(io::read_file(a.idx_images)).images) {
      out.push_back(binarize_grid(gray, binarize));
    }
  } else {
    throw Error(ErrorKind::Config, "predict needs --input or --idx-images");
  }
  return out;
}

int cmd_predict(const Globals& g, const PredictArgs& a) {
  const io::ModelFile model = io::load_model(a.model);
  const Ensemble& e = model.ensemble;
  const auto inputs = load_inputs(a, model.binarize_threshold);
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (inputs[k].dims() != e.dims()) {
      throw Error(ErrorKind::Dimension, "input " + std::to_string(k) + " dims " +
                                            to_string(inputs[k].dims()) + ", model " +
                                            to_string(e.dims()));
    }
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    nlohmann::ordered_json j;
    j["record"] = k;
    std::ostringstream line;
    line << "record " << k << ": ";
    if (a.fallback) {
      const auto d = predict_max_vote(e, inputs[k]);
      j["outcome"] = "Class";
      j["class"] = d.class_id;
      j["tie"] = d.tie;
      j["votes"] = d.votes;
      line << "Class " << d.class_id << " tie=" << (d.tie ? "true" : "false")
           << " votes=" << int_list(d.votes);
    } else {
      const auto d = predict(e, inputs[k]);
      switch (d.outcome) {
        case Outcome::Class:
          j["outcome"] = "Class";
          j["class"] = d.class_id;
          line << "Class " << d.class_id;
          break;
        case Outcome::NoDecision:
          j["outcome"] = "NoDecision";
          line << "NoDecision";
          break;
        case Outcome::Ambiguous:
          j["outcome"] = "Ambiguous";
          j["classes"] = d.classes;
          line << "Ambiguous classes=" << int_list(d.classes);
          break;
      }
      j["votes"] = d.votes;
      line << " votes=" << int_list(d.votes);
    }
    *g.out << (g.report == ReportFormat::JsonLines ? j.dump() : line.str()) << '\n';
  }
  return 0;
}

struct EvalArgs {
  std::string model;
  DatasetArgs data;
};

int cmd_eval(const Globals& g, const EvalArgs& a) {
  const io::ModelFile model = io::load_model(a.model);
  const Ensemble& e = model.ensemble;
  const Dataset ds = load_dataset(a.data, model.binarize_threshold, "dataset");
  if (ds.items.empty()) throw Error(ErrorKind::Parse, "dataset: empty dataset");
  if (ds.dims != e.dims()) {
    throw Error(ErrorKind::Dimension, "dataset dims " + to_string(ds.dims) + ", model " +
                                          to_string(e.dims()));
  }
  std::vector<ImageGrid> inputs;
  for (const auto& item : ds.items) inputs.push_back(item.grid);
  const auto decisions = kernels::omp::predict_batch(e, inputs);

  std::size_t correct = 0, wrong = 0, no_decision = 0, ambiguous = 0, fallback_correct = 0;
  for (std::size_t k = 0; k < decisions.size(); ++k) {
    const auto& d = decisions[k];
    const int label = ds.items[k].label;
    switch (d.outcome) {
      case Outcome::Class: (d.class_id == label ? correct : wrong) += 1; break;
      case Outcome::NoDecision: ++no_decision; break;
      case Outcome::Ambiguous: ++ambiguous; break;
    }
    const auto best = std::max_element(d.votes.begin(), d.votes.end());
    const int unit = static_cast<int>(best - d.votes.begin());
    fallback_correct += e.class_of_unit(unit) == label ? 1 : 0;
  }
  const double total = static_cast<double>(decisions.size());
  const double strict_acc = static_cast<double>(correct) / total;
  const double fallback_acc = static_cast<double>(fallback_correct) / total;
  if (g.report == ReportFormat::JsonLines) {
    nlohmann::ordered_json j;
    j["total"] = decisions.size();
    j["correct"] = correct;
    j["no_decision"] = no_decision;
    j["ambiguous"] = ambiguous;
    j["strict_acc"] = strict_acc;
    j["fallback_acc"] = fallback_acc;
    *g.out << j.dump() << '\n';
  } else {
    *g.out << "total=" << decisions.size() << " correct=" << correct << " wrong=" << wrong
           << " no_decision=" << no_decision << " ambiguous=" << ambiguous << '\n'
           << std::fixed << std::setprecision(4) << "strict_acc=" << strict_acc
           << " fallback_acc=" << fallback_acc << '\n';
  }
  return 0;
}

struct AddClassArgs {
  std::string model;
  std::string out;
  DatasetArgs data;
  DatasetArgs old_data;
  std::optional<int> class_id;
  TrainArgs train;
  bool hidden_given = false;
};

int cmd_add_class(const Globals& g, AddClassArgs a) {
  const io::ModelFile model = io::load_model(a.model);
  const Ensemble& before = model.ensemble;
  const Dataset fresh = load_dataset(a.data, model.binarize_threshold, "new-class data");
  if (fresh.dims != before.dims()) {
    throw Error(ErrorKind::Dimension, "new-class data dims " + to_string(fresh.dims) + ", model " +
                                          to_string(before.dims()));
  }
  int class_id = 0;
  if (a.class_id) {
    class_id = *a.class_id;
  } else {
    std::set<int> labels;
    for (const auto& item : fresh.items) labels.insert(item.label);
    if (labels.size() != 1) {
      throw Error(ErrorKind::Config, "new-class data holds several labels; pass --class-id");
    }
    class_id = *labels.begin();
  }
  std::vector<ImageGrid> new_examples;
  for (const auto& item : fresh.items) {
    if (item.label == class_id) new_examples.push_back(item.grid);
  }
  if (new_examples.empty()) {
    throw Error(ErrorKind::InsufficientData, "no examples of class " + std::to_string(class_id));
  }

  std::set<BlockKind> kinds;
  for (const auto& [key, block] : before.blocks()) kinds.insert(block.kind());
  if (kinds.size() != 1) throw Error(ErrorKind::Config, "model mixes block kinds; cannot grow it");
  const BlockKind kind = *kinds.begin();

  Ensemble grown = before;
  std::vector<ImageGrid> samples = model.unit_samples;
  if (kind == BlockKind::Metric) {
    if (samples.size() != static_cast<std::size_t>(before.unit_count())) {
      throw Error(ErrorKind::Growth, "metric model carries no unit samples; cannot derive new weights");
    }
    auto fields = kernels::omp::distance_fields(samples);
    for (const auto& sample : new_examples) {
      const int n = grown.unit_count();
      const auto field = kernels::omp::distance_field(sample);
      std::map<PairKey, PairBlock> blocks;
      for (const auto& key : growth_pairs(n, grown.topology())) {
        const auto& fi = key.i == n ? field : fields[static_cast<std::size_t>(key.i)];
        const auto& fj = key.j == n ? field : fields[static_cast<std::size_t>(key.j)];
        blocks.emplace(key, make_metric_block(key, fi, fj));
      }
      const std::size_t added = blocks.size();
      grown = add_class(grown, std::move(blocks), class_id);
      *g.out << "added " << added << " blocks; threshold " << grown.unit_threshold() - 1 << " -> "
             << grown.unit_threshold() << '\n';
      fields.push_back(field);
      samples.push_back(sample);
    }
  } else {
    if (!a.old_data.given()) {
      throw Error(ErrorKind::InsufficientData,
                  "trained blocks need examples of the existing classes (--old-data)");
    }
    const Dataset old = load_dataset(a.old_data, model.binarize_threshold, "existing-class data");
    if (old.dims != before.dims()) {
      throw Error(ErrorKind::Dimension, "existing-class data dims " + to_string(old.dims));
    }
    const int n = before.unit_count();
    const auto by_label = training::examples_by_label(old);
    training::UnitExamples examples;
    std::vector<PairKey> untrainable;
    const auto keys = growth_pairs(n, before.topology());
    for (int u = 0; u < n; ++u) {
      const auto it = by_label.find(before.class_of_unit(u));
      if (it != by_label.end()) examples[u] = it->second;
    }
    examples[n] = new_examples;
    for (const auto& key : keys) {
      if (!examples.contains(key.i) || !examples.contains(key.j)) untrainable.push_back(key);
    }
    if (!untrainable.empty()) {
      std::string msg = "cannot train pairs";
      for (const auto& key : untrainable) msg += " " + key_name(key);
      throw Error(ErrorKind::InsufficientData, msg + ": existing-class data lacks their examples");
    }
    TrainArgs targs = a.train;
    targs.kind = std::string(to_string(kind));
    if (kind == BlockKind::SigmoidNet && !a.hidden_given) {
      targs.hidden_size = std::get<SigmoidParams>(before.blocks().begin()->second.params).hidden_size;
    }
    const auto opts = pairwise_options(targs, before.topology(), g.seed);
    auto trained = training::train_blocks(keys, examples, before.dims(), opts);
    std::map<PairKey, PairBlock> blocks;
    int unconverged = 0;
    for (auto& [key, result] : trained) {
      report_block(g, {key, result.report});
      unconverged += result.report.converged ? 0 : 1;
      blocks.emplace(key, std::move(result.block));
    }
    const std::size_t added = blocks.size();
    grown = add_class(before, std::move(blocks), class_id);
    *g.out << "added " << added << " blocks; threshold " << before.unit_threshold() << " -> "
           << grown.unit_threshold() << '\n';
    if (unconverged > 0) *g.err << "warning: " << unconverged << " block(s) did not converge\n";
  }

  io::save_model(io::ModelFile{grown, model.binarize_threshold,
                               kind == BlockKind::Metric ? samples : std::vector<ImageGrid>{}},
                 a.out);
  // Re-read what was written and compare every pre-existing block byte for byte.
  const io::ModelFile reloaded = io::load_model(a.out);
  bool unchanged = true;
  for (const auto& [key, block] : before.blocks()) {
    const auto it = reloaded.ensemble.blocks().find(key);
    unchanged = unchanged && it != reloaded.ensemble.blocks().end() &&
                io::serialize_block(it->second) == io::serialize_block(block);
  }
  *g.out << "previous parameters unchanged: " << (unchanged ? "OK" : "FAILED") << '\n';
  *g.out << block_count_line(reloaded.ensemble) << '\n';
  return unchanged ? 0 : 1;
}

struct GenGlyphsArgs {
  std::string out;
  int classes = 3;
  int samples = 1;
  int noise = 0;
};

int cmd_gen_glyphs(const Globals& g, const GenGlyphsArgs& a) {
  const Dataset ds = glyphs::generate(a.classes, a.samples, a.noise, g.seed);
  io::write_file(a.out, io::format_glyphs(ds));
  *g.out << "wrote " << ds.items.size() << " glyph records (" << a.classes << " classes, noise "
         << a.noise << ") to " << a.out << '\n';
  return 0;
}

int cmd_inspect(const Globals& g, const std::string& path) {
  const io::ModelFile model = io::load_model(path);
  const Ensemble& e = model.ensemble;
  const auto n = static_cast<std::uint64_t>(e.unit_count());
  const auto expected = expected_block_count(n, e.topology());
  std::string topo(to_string(e.topology()));
  topo[0] = static_cast<char>(std::toupper(topo[0]));
  *g.out << topo << ", N=" << e.unit_count() << ", B=" << e.unit_threshold()
         << ", blocks=" << e.blocks().size() << " ("
         << (e.blocks().size() == expected ? "matches " : "violates ") << count_formula(e.topology())
         << ")\n";
  *g.out << "dims=" << to_string(e.dims()) << " binarize_threshold=" << model.binarize_threshold
         << " samples=" << model.unit_samples.size() << '\n';
  for (const auto& [key, block] : e.blocks()) {
    *g.out << "block " << key_name(key) << " kind=" << to_string(block.kind()) << '\n';
  }
  for (const auto& [cls, units] : e.class_groups()) {
    *g.out << "class " << cls << ": units " << int_list(units) << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise image-recognition networks: metric construction, pairwise training, growth"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  g.out = &out;
  g.err = &err;
  std::string report = "text";
  app.add_option("--seed", g.seed, "global seed; all randomness derives from it")->capture_default_str();
  app.add_option("--report", report, "report format: text | jsonl")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();

  BuildMetricArgs build;
  auto* build_cmd = app.add_subcommand("build-metric", "construct the analytic nearest-sample network");
  add_dataset_options(build_cmd, build.data, "", "samples");
  build_cmd->add_option("--out", build.out, "model file to write")->required();
  build_cmd->add_option("--topology", build.topology, "compressed | full")
      ->check(CLI::IsMember({"compressed", "full"}));
  build_cmd->add_option("--binarize", build.binarize, "gray threshold for IDX input");

  TrainCmdArgs train;
  auto* train_cmd = app.add_subcommand("train", "train one block per class pair");
  add_dataset_options(train_cmd, train.data, "", "training set");
  train_cmd->add_option("--out", train.out, "model file to write")->required();
  train_cmd->add_option("--topology", train.topology, "compressed | full")
      ->check(CLI::IsMember({"compressed", "full"}));
  train_cmd->add_option("--binarize", train.binarize, "gray threshold for IDX input");
  add_train_options(train_cmd, train.train);

  PredictArgs pred;
  auto* predict_cmd = app.add_subcommand("predict", "classify images with a model");
  predict_cmd->add_option("--model", pred.model, "model file")->required();
  predict_cmd->add_option("--input", pred.input, "glyph file with images to classify");
  predict_cmd->add_option("--idx-images", pred.idx_images, "IDX image file to classify");
  predict_cmd->add_flag("--fallback", pred.fallback, "use max-vote instead of the all-wins rule");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "accuracy of a model on a labeled dataset");
  eval_cmd->add_option("--model", eval.model, "model file")->required();
  add_dataset_options(eval_cmd, eval.data, "", "labeled dataset");

  AddClassArgs add;
  auto* add_cmd = app.add_subcommand("add-class", "grow a model by one class without touching old blocks");
  add_cmd->add_option("--model", add.model, "model file to grow")->required();
  add_cmd->add_option("--out", add.out, "grown model file")->required();
  add_dataset_options(add_cmd, add.data, "", "new-class examples");
  add_dataset_options(add_cmd, add.old_data, "old-", "existing-class examples");
  add_cmd->add_option("--class-id", add.class_id, "class id of the new unit");
  add_train_options(add_cmd, add.train);

  GenGlyphsArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-glyphs", "write noisy 5x7 letter glyphs");
  gen_cmd->add_option("--out", gen.out, "glyph file to write")->required();
  gen_cmd->add_option("--classes", gen.classes, "letters A.. (2-26)")->capture_default_str();
  gen_cmd->add_option("--samples", gen.samples, "records per class")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "cells flipped per record")->capture_default_str();

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "print model structure");
  inspect_cmd->add_option("--model", inspect_path, "model file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: usage: " << e.what() << '\n';
    return 2;
  }
  g.report = report == "jsonl" ? ReportFormat::JsonLines : ReportFormat::Text;
  add.hidden_given = add_cmd->count("--hidden") > 0;

  try {
    if (*build_cmd) return cmd_build_metric(g, build);
    if (*train_cmd) return cmd_train(g, train);
    if (*predict_cmd) return cmd_predict(g, pred);
    if (*eval_cmd) return cmd_eval(g, eval);
    if (*add_cmd) return cmd_add_class(g, add);
    if (*gen_cmd) return cmd_gen_glyphs(g, gen);
    if (*inspect_cmd) return cmd_inspect(g, inspect_path);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace pairnet::cli
