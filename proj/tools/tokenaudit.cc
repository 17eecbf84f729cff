//
// Copyright 2026 The TokenAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line wiring for the audit toolkit. Subcommands:
//   synth       generate a synthetic annotated corpus plus companion files
//   train       train the binary or three-way surrogate classifier
//   eval        evaluate a checkpoint, optionally dumping saliency maps
//   attack      run the ablation suite and emit CSV/text reports
//   build-sie   construct the three-class entailment dataset
//   mine-pairs  mine saliency-correlated word pairs from the train split
//   report      merge run artifacts from the output directory
//
// Every seeded stage receives a seed derived from the single global seed
// with a fixed per-stage offset, so one number reproduces a full pipeline.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tokenaudit/attacks.h"
#include "tokenaudit/checkpoint.h"
#include "tokenaudit/classifier.h"
#include "tokenaudit/corpus.h"
#include "tokenaudit/embeddings.h"
#include "tokenaudit/ngram_lm.h"
#include "tokenaudit/rng.h"
#include "tokenaudit/saliency.h"
#include "tokenaudit/sie_builder.h"
#include "tokenaudit/synthetic.h"
#include "tokenaudit/wordpair.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace tokenaudit;

// Stage offsets for derive_seed; shared by every subcommand.
constexpr std::uint64_t kStageSplit = 2;
constexpr std::uint64_t kStageHsTrain = 3;
constexpr std::uint64_t kStageSieBuild = 4;
constexpr std::uint64_t kStageSieTrain = 5;

struct MissingPathError {
  std::string path;
};

void require_file(const std::string& path) {
  if (!fs::exists(path)) throw MissingPathError{path};
}

CorpusFormat detect_format(const std::string& path, const std::string& flag) {
  if (flag == "csv") return CorpusFormat::kCsv;
  if (flag == "jsonl") return CorpusFormat::kJsonl;
  std::string ext = fs::path(path).extension().string();
  if (ext == ".csv") return CorpusFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return CorpusFormat::kJsonl;
  throw std::runtime_error(
      "cannot infer corpus format from extension; pass --format");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_json_file(const std::string& path, const ordered_json& value) {
  write_text_file(path, value.dump(2) + "\n");
}

// Options shared by commands that reconstruct the corpus-derived state. The
// split and the vocabulary are recomputed deterministically from these, so
// train/eval/attack agree on them as long as the flags agree; checkpoint
// vocabulary hashes catch any drift.
struct CorpusArgs {
  std::string corpus_path;
  std::string format = "auto";
  double test_frac = 0.25;
  int min_freq = 2;
};

void add_corpus_args(CLI::App* cmd, CorpusArgs* args) {
  cmd->add_option("--corpus", args->corpus_path, "annotated corpus file")
      ->required();
  cmd->add_option("--format", args->format,
                  "corpus format: csv, jsonl, auto (default auto)")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  cmd->add_option("--test-frac", args->test_frac,
                  "held-out fraction per class (default 0.25)");
  cmd->add_option("--min-freq", args->min_freq,
                  "vocabulary frequency cutoff (default 2)");
}

struct HsBundle {
  std::vector<AnnotatedPost> train_posts;
  std::vector<AnnotatedPost> test_posts;
  Vocab vocab;
  std::vector<HsExample> train;
  std::vector<HsExample> test;
};

HsBundle load_hs_bundle(const CorpusArgs& args, std::uint64_t global_seed) {
  require_file(args.corpus_path);
  LoadReport report;
  std::vector<AnnotationRow> rows =
      load_rows(args.corpus_path, detect_format(args.corpus_path, args.format),
                &report);
  if (report.n_rejected > 0) {
    std::cerr << "warning: rejected " << report.n_rejected
              << " corpus records:\n";
    for (const auto& msg : report.messages) std::cerr << "  " << msg << "\n";
  }
  HsBundle bundle;
  std::vector<AnnotatedPost> posts = aggregate(rows);
  std::tie(bundle.train_posts, bundle.test_posts) =
      split(posts, args.test_frac, derive_seed(global_seed, kStageSplit));

  std::vector<std::vector<std::string>> train_docs;
  for (const auto& post : bundle.train_posts) {
    train_docs.push_back(tokenize(post.text));
  }
  bundle.vocab = build_vocab(train_docs, args.min_freq);
  for (const auto& post : bundle.train_posts) {
    bundle.train.push_back({make_doc(post.text, bundle.vocab), post.hs_label});
  }
  for (const auto& post : bundle.test_posts) {
    bundle.test.push_back({make_doc(post.text, bundle.vocab), post.hs_label});
  }
  return bundle;
}

struct SieBundle {
  std::vector<SiePair> pairs;
  Vocab vocab;
  std::vector<SieExample> train;
  std::vector<SieExample> test;
};

SieBundle load_sie_bundle(const std::string& dataset_path, int min_freq) {
  require_file(dataset_path);
  SieBundle bundle;
  bundle.pairs = load_sie_jsonl(dataset_path);
  if (bundle.pairs.empty()) {
    throw std::runtime_error("dataset file holds no pairs: " + dataset_path);
  }
  std::vector<std::vector<std::string>> train_docs;
  for (const auto& pair : bundle.pairs) {
    if (pair.split == "train") {
      train_docs.push_back(tokenize(pair.premise));
      train_docs.push_back(tokenize(pair.hypothesis));
    }
  }
  if (train_docs.empty()) {
    throw std::runtime_error(
        "dataset has no train-split pairs; rebuild it before training");
  }
  bundle.vocab = build_vocab(train_docs, min_freq);
  for (const auto& pair : bundle.pairs) {
    SieExample ex;
    ex.premise = make_doc(pair.premise, bundle.vocab);
    ex.hypothesis = make_doc(pair.hypothesis, bundle.vocab);
    ex.label = static_cast<int>(pair.label);
    if (pair.split == "test") {
      bundle.test.push_back(std::move(ex));
    } else {
      bundle.train.push_back(std::move(ex));
    }
  }
  return bundle;
}

ordered_json metrics_json(const Metrics& metrics) {
  ordered_json j;
  j["accuracy"] = metrics.accuracy;
  j["f1"] = metrics.f1;
  j["confusion"] = metrics.confusion;
  return j;
}

int run_synth(const std::string& out_dir, std::uint64_t seed, int n_posts,
              double hs_fraction, double p_spur) {
  fs::create_directories(out_dir);
  SyntheticSpec spec = default_synthetic_spec();
  spec.n_posts = n_posts;
  spec.hs_fraction = hs_fraction;
  spec.p_spur = p_spur;
  std::vector<AnnotationRow> rows = generate_synthetic_corpus(spec, seed);
  const std::string corpus_path = out_dir + "/corpus.csv";
  save_rows(corpus_path, rows, CorpusFormat::kCsv);
  write_synthetic_aux_files(spec, out_dir + "/antonyms.tsv",
                            out_dir + "/embeddings.txt",
                            out_dir + "/spurious_pool.txt");
  std::cout << "wrote " << rows.size() << " rows to " << corpus_path << "\n";
  return 0;
}

int run_train(const std::string& task, const CorpusArgs& corpus_args,
              const std::string& dataset_path, const std::string& out_dir,
              std::uint64_t seed, TrainConfig config, int dim, int hidden) {
  fs::create_directories(out_dir);
  if (task == "hs") {
    HsBundle bundle = load_hs_bundle(corpus_args, seed);
    config.seed = derive_seed(seed, kStageHsTrain);
    Metrics train_metrics;
    HsModel model = train_hs(bundle.train, bundle.vocab.size(), dim, hidden,
                             config, &train_metrics);
    Metrics test_metrics = evaluate_hs(model, bundle.test);
    save_hs_checkpoint(out_dir + "/hs_model.bin", model, bundle.vocab.hash());
    ordered_json j;
    j["task"] = "hs";
    j["n_train"] = bundle.train.size();
    j["n_test"] = bundle.test.size();
    j["vocab_size"] = bundle.vocab.size();
    j["train"] = metrics_json(train_metrics);
    j["test"] = metrics_json(test_metrics);
    write_json_file(out_dir + "/hs_metrics.json", j);
    std::cout << "hs test accuracy " << test_metrics.accuracy << ", f1 "
              << test_metrics.f1 << "\n";
  } else {
    SieBundle bundle = load_sie_bundle(dataset_path, corpus_args.min_freq);
    config.seed = derive_seed(seed, kStageSieTrain);
    Metrics train_metrics;
    SieModel model = train_sie(bundle.train, bundle.vocab.size(), dim, hidden,
                               config, &train_metrics);
    Metrics test_metrics = evaluate_sie(model, bundle.test);
    save_sie_checkpoint(out_dir + "/sie_model.bin", model,
                        bundle.vocab.hash());
    ordered_json j;
    j["task"] = "sie";
    j["n_train"] = bundle.train.size();
    j["n_test"] = bundle.test.size();
    j["vocab_size"] = bundle.vocab.size();
    j["train"] = metrics_json(train_metrics);
    j["test"] = metrics_json(test_metrics);
    write_json_file(out_dir + "/sie_metrics.json", j);
    std::cout << "sie test accuracy " << test_metrics.accuracy << ", macro f1 "
              << test_metrics.f1 << "\n";
  }
  return 0;
}

int run_eval(const std::string& task, const CorpusArgs& corpus_args,
             const std::string& dataset_path, const std::string& out_dir,
             std::uint64_t seed, const std::string& checkpoint,
             bool dump_saliency) {
  fs::create_directories(out_dir);
  require_file(checkpoint);
  if (task == "hs") {
    HsBundle bundle = load_hs_bundle(corpus_args, seed);
    HsModel model = load_hs_checkpoint(checkpoint, bundle.vocab.hash());
    Metrics metrics = evaluate_hs(model, bundle.test);
    ordered_json j;
    j["task"] = "hs";
    j["n_test"] = bundle.test.size();
    j["test"] = metrics_json(metrics);
    write_json_file(out_dir + "/hs_eval.json", j);
    if (dump_saliency) {
      std::vector<SaliencyMap> maps;
      for (const auto& ex : bundle.test) {
        maps.push_back(input_x_gradient_hs(model, ex.doc));
      }
      save_saliency_maps(out_dir + "/hs_saliency.jsonl", maps);
    }
    std::cout << "hs test accuracy " << metrics.accuracy << ", f1 "
              << metrics.f1 << "\n";
  } else {
    SieBundle bundle = load_sie_bundle(dataset_path, corpus_args.min_freq);
    SieModel model = load_sie_checkpoint(checkpoint, bundle.vocab.hash());
    Metrics metrics = evaluate_sie(model, bundle.test);
    ordered_json j;
    j["task"] = "sie";
    j["n_test"] = bundle.test.size();
    j["test"] = metrics_json(metrics);
    write_json_file(out_dir + "/sie_eval.json", j);
    if (dump_saliency) {
      std::vector<SaliencyMap> maps;
      for (const auto& ex : bundle.test) {
        auto [p, h] = input_x_gradient_sie(model, ex.premise, ex.hypothesis);
        maps.push_back(std::move(p));
        maps.push_back(std::move(h));
      }
      save_saliency_maps(out_dir + "/sie_saliency.jsonl", maps);
    }
    std::cout << "sie test accuracy " << metrics.accuracy << ", macro f1 "
              << metrics.f1 << "\n";
  }
  return 0;
}

std::vector<AttackKind> parse_attack_kinds(const std::string& csv) {
  std::vector<AttackKind> kinds;
  std::stringstream in(csv);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (name == "loo") {
      kinds.push_back(AttackKind::kLoo);
    } else if (name == "loo-s") {
      kinds.push_back(AttackKind::kLooS);
    } else if (name == "aa-s") {
      kinds.push_back(AttackKind::kAaS);
    } else if (name == "aa-r") {
      kinds.push_back(AttackKind::kAaR);
    } else if (name == "aa-q") {
      kinds.push_back(AttackKind::kAaQ);
    } else {
      throw std::runtime_error("unknown attack name: " + name);
    }
  }
  if (kinds.empty()) throw std::runtime_error("empty attack list");
  return kinds;
}

int run_attack(const CorpusArgs& corpus_args, const std::string& dataset_path,
               const std::string& out_dir, std::uint64_t seed,
               const std::string& hs_checkpoint,
               const std::string& sie_checkpoint, const std::string& attacks,
               int pool_size, std::int64_t rarity_threshold,
               const std::string& rare_pool_path) {
  fs::create_directories(out_dir);
  if (hs_checkpoint.empty() && sie_checkpoint.empty()) {
    throw std::runtime_error("attack needs at least one checkpoint");
  }
  SuiteOptions options;
  options.kinds = parse_attack_kinds(attacks);
  options.pool_size = pool_size;
  options.rarity_threshold = rarity_threshold;
  if (!rare_pool_path.empty()) {
    require_file(rare_pool_path);
    std::vector<std::string> pool = load_pool(rare_pool_path);
    options.hs_rare_pool_override = pool;
    options.sie_rare_pool_override = pool;
  }

  AblationReport report;
  if (!hs_checkpoint.empty()) {
    require_file(hs_checkpoint);
    HsBundle bundle = load_hs_bundle(corpus_args, seed);
    HsModel model = load_hs_checkpoint(hs_checkpoint, bundle.vocab.hash());
    report.hs_clean_accuracy = evaluate_hs(model, bundle.test).accuracy;
    report.hs = run_hs_attacks(model, bundle.vocab, bundle.train, bundle.test,
                               options, &report.notes);
  }
  if (!sie_checkpoint.empty()) {
    require_file(sie_checkpoint);
    SieBundle bundle = load_sie_bundle(dataset_path, corpus_args.min_freq);
    SieModel model = load_sie_checkpoint(sie_checkpoint, bundle.vocab.hash());
    report.sie_clean_accuracy = evaluate_sie(model, bundle.test).accuracy;
    report.sie = run_sie_attacks(model, bundle.vocab, bundle.train,
                                 bundle.test, options, &report.notes);
  }
  write_text_file(out_dir + "/attack_report.csv", format_report_csv(report));
  write_text_file(out_dir + "/attack_report.txt", format_report_text(report));
  std::cout << format_report_text(report);
  return 0;
}

int run_build_sie(const CorpusArgs& corpus_args, const std::string& lexicon_path,
                  const std::string& embeddings_path,
                  const std::string& out_dir, std::uint64_t seed,
                  double sim_threshold, int lm_order, double lm_add_k) {
  fs::create_directories(out_dir);
  require_file(corpus_args.corpus_path);
  require_file(lexicon_path);
  require_file(embeddings_path);

  LoadReport load_report;
  std::vector<AnnotationRow> rows = load_rows(
      corpus_args.corpus_path,
      detect_format(corpus_args.corpus_path, corpus_args.format), &load_report);
  std::vector<AnnotatedPost> posts = aggregate(rows);
  AntonymLexicon lexicon = AntonymLexicon::load(lexicon_path);
  EmbeddingTable embeddings = EmbeddingTable::load(embeddings_path);

  std::vector<StereotypeEntry> bank = build_stereotype_bank(posts);
  if (bank.empty()) {
    throw std::runtime_error("corpus carries no stereotypes; cannot build");
  }
  NgramLm lm(lm_order, lm_add_k);
  std::vector<std::vector<std::string>> stereotype_sentences;
  for (const auto& entry : bank) {
    stereotype_sentences.push_back(tokenize(entry.text));
  }
  lm.fit(stereotype_sentences);

  const std::uint64_t build_seed = derive_seed(seed, kStageSieBuild);
  std::vector<SiePair> entail = build_entailment(posts);
  std::int64_t neutral_skipped = 0;
  std::vector<SiePair> neutral =
      build_neutral(posts, bank, embeddings, sim_threshold,
                    derive_seed(build_seed, 1), &neutral_skipped);
  std::int64_t contradict_skipped = 0;
  std::vector<SiePair> contradict =
      build_contradiction(posts, lm, lexicon, &contradict_skipped);
  std::vector<SiePair> dataset =
      assemble_dataset(entail, neutral, contradict, derive_seed(build_seed, 2),
                       corpus_args.test_frac);

  const std::string dataset_path = out_dir + "/sie.jsonl";
  save_sie_jsonl(dataset_path, dataset);

  std::array<std::int64_t, 3> final_counts = {0, 0, 0};
  std::array<std::int64_t, 3> train_counts = {0, 0, 0};
  for (const auto& pair : dataset) {
    final_counts[static_cast<std::size_t>(pair.label)] += 1;
    if (pair.split == "train") {
      train_counts[static_cast<std::size_t>(pair.label)] += 1;
    }
  }
  ordered_json stats;
  stats["raw"] = {{"entail", entail.size()},
                  {"neutral", neutral.size()},
                  {"contradict", contradict.size()}};
  stats["skipped"] = {{"hostile_without_low_similarity", neutral_skipped},
                      {"stereotypes_without_antonym", contradict_skipped}};
  stats["final"] = {{"entail", final_counts[0]},
                    {"neutral", final_counts[1]},
                    {"contradict", final_counts[2]}};
  stats["final_train"] = {{"entail", train_counts[0]},
                          {"neutral", train_counts[1]},
                          {"contradict", train_counts[2]}};
  stats["n_pairs"] = dataset.size();
  write_json_file(out_dir + "/sie_build_stats.json", stats);
  std::cout << "wrote " << dataset.size() << " pairs to " << dataset_path
            << " (entail " << final_counts[0] << ", neutral "
            << final_counts[1] << ", contradict " << final_counts[2] << ")\n";
  return 0;
}

int run_mine_pairs(const std::string& dataset_path, int min_freq,
                   const std::string& checkpoint, const std::string& out_dir,
                   std::int64_t min_support, double min_r, int top_n) {
  fs::create_directories(out_dir);
  require_file(checkpoint);
  SieBundle bundle = load_sie_bundle(dataset_path, min_freq);
  SieModel model = load_sie_checkpoint(checkpoint, bundle.vocab.hash());
  PairObservations observations = collect_observations(model, bundle.train);
  MineResult result = mine(observations, min_support, min_r);
  write_text_file(out_dir + "/pairs.csv", format_pairs_csv(result.stats));
  write_text_file(out_dir + "/pairs_summary.txt",
                  format_pairs_summary(result, top_n));
  std::cout << format_pairs_summary(result, top_n);
  return 0;
}

int run_report(const std::string& out_dir) {
  std::ostringstream out;
  bool any = false;
  for (const char* name :
       {"hs_metrics.json", "sie_metrics.json", "sie_build_stats.json",
        "hs_eval.json", "sie_eval.json"}) {
    const std::string path = out_dir + "/" + name;
    if (!fs::exists(path)) continue;
    std::ifstream in(path);
    out << "== " << name << " ==\n" << in.rdbuf() << "\n";
    any = true;
  }
  for (const char* name : {"attack_report.txt", "pairs_summary.txt"}) {
    const std::string path = out_dir + "/" + name;
    if (!fs::exists(path)) continue;
    std::ifstream in(path);
    out << "== " << name << " ==\n" << in.rdbuf() << "\n";
    any = true;
  }
  if (!any) {
    throw std::runtime_error("no run artifacts under " + out_dir);
  }
  write_text_file(out_dir + "/combined_report.txt", out.str());
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"token-level robustness audit toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "configuration file with per-command sections");

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  app.add_option("--out-dir", out_dir,
                 "output directory (env TOKENAUDIT_OUT overrides the default)")
      ->envname("TOKENAUDIT_OUT");
  app.add_option("--seed", seed, "global seed fanned out to every stage");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  int synth_posts = 2000;
  double synth_hs_fraction = 0.4;
  double synth_p_spur = 0.8;
  synth->add_option("--n-posts", synth_posts, "rows to generate");
  synth->add_option("--hs-fraction", synth_hs_fraction,
                    "fraction of hostile posts");
  synth->add_option("--p-spur", synth_p_spur,
                    "probability a hostile post carries a planted token");

  // shared train/eval/attack state
  CorpusArgs corpus_args;
  std::string dataset_path;
  std::string task = "hs";
  TrainConfig train_config;
  int dim = 64;
  int hidden = 64;

  auto add_task_option = [&task](CLI::App* cmd) {
    cmd->add_option("--task", task, "hs or sie")
        ->required()
        ->check(CLI::IsMember({"hs", "sie"}));
  };
  auto add_dataset_option = [&dataset_path](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--dataset", dataset_path,
                                "built three-class dataset (JSONL)");
    if (required) opt->required();
  };

  // train
  auto* train = app.add_subcommand("train", "train a surrogate classifier");
  add_task_option(train);
  CorpusArgs train_corpus_args;
  train->add_option("--corpus", train_corpus_args.corpus_path,
                    "annotated corpus file (hs task)");
  train->add_option("--format", train_corpus_args.format,
                    "corpus format: csv, jsonl, auto")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  train->add_option("--test-frac", train_corpus_args.test_frac,
                    "held-out fraction per class");
  train->add_option("--min-freq", train_corpus_args.min_freq,
                    "vocabulary frequency cutoff");
  add_dataset_option(train, false);
  train->add_option("--dim", dim, "embedding width");
  train->add_option("--hidden", hidden, "hidden layer width");
  train->add_option("--lr", train_config.learning_rate, "learning rate");
  train->add_option("--epochs", train_config.epochs, "training epochs");
  train->add_option("--batch-size", train_config.batch_size, "batch size");
  train->add_option("--l2", train_config.l2, "l2 penalty strength");
  train->add_option("--init-scale", train_config.init_scale,
                    "uniform init half-width");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  add_task_option(eval);
  CorpusArgs eval_corpus_args;
  eval->add_option("--corpus", eval_corpus_args.corpus_path,
                   "annotated corpus file (hs task)");
  eval->add_option("--format", eval_corpus_args.format,
                   "corpus format: csv, jsonl, auto")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  eval->add_option("--test-frac", eval_corpus_args.test_frac,
                   "held-out fraction per class");
  eval->add_option("--min-freq", eval_corpus_args.min_freq,
                   "vocabulary frequency cutoff");
  add_dataset_option(eval, false);
  std::string eval_checkpoint;
  bool dump_saliency = false;
  eval->add_option("--checkpoint", eval_checkpoint, "model checkpoint")
      ->required();
  eval->add_flag("--dump-saliency", dump_saliency,
                 "write per-document saliency maps for the test split");

  // attack
  auto* attack = app.add_subcommand("attack", "run the ablation suite");
  CorpusArgs attack_corpus_args;
  attack->add_option("--corpus", attack_corpus_args.corpus_path,
                     "annotated corpus file (hs row)");
  attack->add_option("--format", attack_corpus_args.format,
                     "corpus format: csv, jsonl, auto")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  attack->add_option("--test-frac", attack_corpus_args.test_frac,
                     "held-out fraction per class");
  attack->add_option("--min-freq", attack_corpus_args.min_freq,
                     "vocabulary frequency cutoff");
  add_dataset_option(attack, false);
  std::string hs_checkpoint;
  std::string sie_checkpoint;
  std::string attack_list = "loo,loo-s,aa-s,aa-r,aa-q";
  int pool_size = 5;
  std::int64_t rarity_threshold = 2;
  std::string rare_pool_path;
  attack->add_option("--hs-checkpoint", hs_checkpoint,
                     "binary-task checkpoint");
  attack->add_option("--sie-checkpoint", sie_checkpoint,
                     "three-way-task checkpoint");
  attack->add_option("--attacks", attack_list,
                     "comma list from loo,loo-s,aa-s,aa-r,aa-q");
  attack->add_option("--pool-size", pool_size, "insertion pool size");
  attack->add_option("--rarity-threshold", rarity_threshold,
                     "max train frequency for the rare-word pool");
  attack->add_option("--rare-pool", rare_pool_path,
                     "file with one word per line replacing the mined "
                     "rare-word pool");

  // build-sie
  auto* build_sie = app.add_subcommand(
      "build-sie", "construct the three-class entailment dataset");
  CorpusArgs sie_corpus_args;
  build_sie
      ->add_option("--corpus", sie_corpus_args.corpus_path,
                   "annotated corpus file")
      ->required();
  build_sie
      ->add_option("--format", sie_corpus_args.format,
                   "corpus format: csv, jsonl, auto")
      ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
  build_sie->add_option("--test-frac", sie_corpus_args.test_frac,
                        "held-out fraction per class");
  std::string lexicon_path;
  std::string embeddings_path;
  double sim_threshold = 0.3;
  int lm_order = 3;
  double lm_add_k = 1.0;
  build_sie->add_option("--antonyms", lexicon_path, "antonym lexicon (TSV)")
      ->required();
  build_sie
      ->add_option("--embeddings", embeddings_path, "group embedding file")
      ->required();
  build_sie->add_option("--sim-threshold", sim_threshold,
                        "max group similarity for neutral assignment");
  build_sie->add_option("--lm-order", lm_order, "language model order");
  build_sie->add_option("--lm-add-k", lm_add_k,
                        "language model smoothing constant");

  // mine-pairs
  auto* mine_pairs = app.add_subcommand(
      "mine-pairs", "mine saliency-correlated word pairs");
  std::string mine_checkpoint;
  std::int64_t min_support = 3;
  double min_r = 0.7;
  int top_n = 20;
  int mine_min_freq = 2;
  add_dataset_option(mine_pairs, true);
  mine_pairs
      ->add_option("--checkpoint", mine_checkpoint,
                   "three-way-task checkpoint")
      ->required();
  mine_pairs->add_option("--min-freq", mine_min_freq,
                         "vocabulary frequency cutoff");
  mine_pairs->add_option("--min-support", min_support,
                         "strict lower bound on pair support");
  mine_pairs->add_option("--min-r", min_r, "minimum |r| to keep a pair");
  mine_pairs->add_option("--top-n", top_n, "pairs shown in the summary");

  // report
  auto* report_cmd =
      app.add_subcommand("report", "merge run artifacts from the output dir");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      return run_synth(out_dir, seed, synth_posts, synth_hs_fraction,
                       synth_p_spur);
    }
    if (train->parsed()) {
      if (task == "hs" && train_corpus_args.corpus_path.empty()) {
        throw std::runtime_error("train --task hs needs --corpus");
      }
      if (task == "sie" && dataset_path.empty()) {
        throw std::runtime_error("train --task sie needs --dataset");
      }
      return run_train(task, train_corpus_args, dataset_path, out_dir, seed,
                       train_config, dim, hidden);
    }
    if (eval->parsed()) {
      if (task == "hs" && eval_corpus_args.corpus_path.empty()) {
        throw std::runtime_error("eval --task hs needs --corpus");
      }
      if (task == "sie" && dataset_path.empty()) {
        throw std::runtime_error("eval --task sie needs --dataset");
      }
      return run_eval(task, eval_corpus_args, dataset_path, out_dir, seed,
                      eval_checkpoint, dump_saliency);
    }
    if (attack->parsed()) {
      if (!hs_checkpoint.empty() && attack_corpus_args.corpus_path.empty()) {
        throw std::runtime_error("attack with --hs-checkpoint needs --corpus");
      }
      if (!sie_checkpoint.empty() && dataset_path.empty()) {
        throw std::runtime_error(
            "attack with --sie-checkpoint needs --dataset");
      }
      return run_attack(attack_corpus_args, dataset_path, out_dir, seed,
                        hs_checkpoint, sie_checkpoint, attack_list, pool_size,
                        rarity_threshold, rare_pool_path);
    }
    if (build_sie->parsed()) {
      return run_build_sie(sie_corpus_args, lexicon_path, embeddings_path,
                           out_dir, seed, sim_threshold, lm_order, lm_add_k);
    }
    if (mine_pairs->parsed()) {
      return run_mine_pairs(dataset_path, mine_min_freq, mine_checkpoint,
                            out_dir, min_support, min_r, top_n);
    }
    if (report_cmd->parsed()) {
      return run_report(out_dir);
    }
  } catch (const MissingPathError& e) {
    std::cerr << "error: missing input file: " << e.path << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
