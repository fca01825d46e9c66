// Copyright 2026 The regctx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// regctx: build REG corpora, run generators and score their output.

#include <charconv>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "regctx/app.h"

namespace {

using regctx::RunConfig;
using regctx::UsageError;

template <typename T, typename Parser>
T ParseOrThrow(const std::string& value, std::string_view flag, Parser parse) {
  auto parsed = parse(value);
  if (!parsed) throw UsageError("invalid value for " + std::string(flag) + ": " + value);
  return *parsed;
}

std::optional<regctx::ContextLength> ParseK(const std::string& value) {
  if (value.empty()) return std::nullopt;
  const std::string v = regctx::ToLower(value);
  if (v == "inf" || v == "all" || v == "none") return regctx::ContextLength{};
  std::size_t k = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), k);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw UsageError("invalid value for --k: " + value + " (expected an integer or inf)");
  }
  return regctx::ContextLength{k};
}

// Raw flag values; enums are parsed after CLI11 is done.
struct Flags {
  std::string k;
  std::string system = "rreg-s";
  std::string split = "test";
  std::string dataset = "webnlg";
  std::string pronouns = "train";
  std::string classifier = "gbdt";
  std::string sed = "character";
  std::string prf = "binary";
  bool cased = false;
  bool sentence_accuracy = false;
};

void Finish(RunConfig& config, const Flags& flags) {
  config.k = ParseK(flags.k);
  config.system = ParseOrThrow<regctx::SystemKind>(flags.system, "--system", regctx::ParseSystemKind);
  config.split = ParseOrThrow<regctx::Split>(flags.split, "--split", regctx::ParseSplit);
  config.dataset = ParseOrThrow<regctx::Dataset>(flags.dataset, "--dataset", regctx::ParseDataset);
  if (flags.pronouns == "train") {
    config.pronoun_source = regctx::PronounSource::kTrain;
  } else if (flags.pronouns == "registry") {
    config.pronoun_source = regctx::PronounSource::kRegistry;
  } else {
    throw UsageError("invalid value for --pronouns: " + flags.pronouns);
  }
  config.classifier.kind = ParseOrThrow<regctx::ClassifierKind>(flags.classifier, "--classifier",
                                                                regctx::ParseClassifierKind);
  if (flags.sed == "character") {
    config.metrics.sed_level = regctx::SedLevel::kCharacter;
  } else if (flags.sed == "token") {
    config.metrics.sed_level = regctx::SedLevel::kToken;
  } else {
    throw UsageError("invalid value for --sed: " + flags.sed);
  }
  if (flags.prf == "binary") {
    config.metrics.prf_average = regctx::PrfAverage::kBinary;
  } else if (flags.prf == "macro") {
    config.metrics.prf_average = regctx::PrfAverage::kMacro;
  } else {
    throw UsageError("invalid value for --prf: " + flags.prf);
  }
  config.metrics.lowercase = !flags.cased;
  config.text_level = flags.sentence_accuracy ? regctx::TextAccuracyLevel::kSentence
                                              : regctx::TextAccuracyLevel::kDocument;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"REG-in-context toolkit"};
  app.set_config("--config", "", "TOML/INI file with flag values (command-line flags win)");
  app.require_subcommand(1);

  RunConfig config;
  Flags flags;
  app.add_option("--threads", config.threads, "Worker threads (0 = all cores)");

  auto* build = app.add_subcommand("build-corpus", "Delexicalize coreference-annotated documents");
  build->add_option("--input", config.input, "Annotated documents (JSONL)")->required();
  build->add_option("--registry", config.registry, "Entity registry to extend (JSON)");
  build->add_option("--registry-out", config.registry_out, "Write the extended registry here");
  build->add_option("-o,--output", config.output, "Corpus JSONL (default stdout)");
  build->add_option("--k", flags.k, "Context sentences per side; omitted = whole document");
  build->add_flag("--middle-initial-names", config.delex.middle_initial_is_firstname_lastname,
                  "Treat \"Ronald B. Koenig\" as a firstname-lastname mention");

  auto* convert = app.add_subcommand("convert-webnlg", "Convert local WebNLG XML files");
  convert->add_option("--input", config.input, "Directory with train/ dev/ test/")->required();
  convert->add_option("-o,--output", config.output, "Corpus JSONL (default stdout)");
  convert->add_flag("--good-only", config.webnlg.good_only, "Keep comment=\"good\" lexicalizations");

  auto* train = app.add_subcommand("train", "Train an ML-S or ML-L generator");
  train->add_option("--corpus", config.corpus, "Corpus JSONL")->required();
  train->add_option("--registry", config.registry, "Entity registry (JSON)");
  train->add_option("--schema", flags.system, "ml-s or ml-l")->required();
  train->add_option("--dataset", flags.dataset, "Feature variant: webnlg or wsj");
  train->add_option("--seed", config.seed, "Seed for permutation importance");
  train->add_option("--model,-o,--output", config.model, "Model file")->required();
  train->add_option("--classifier", flags.classifier, "gbdt or naive-bayes");
  train->add_option("--rounds", config.classifier.gbdt.rounds, "Boosting rounds");
  train->add_option("--depth", config.classifier.gbdt.max_depth, "Tree depth");
  train->add_option("--learning-rate", config.classifier.gbdt.learning_rate, "Shrinkage");
  train->add_option("--importance-repeats", config.classifier.importance_repeats,
                    "Shuffles per feature in permutation importance");
  train->add_option("--k", flags.k, "Override the corpus context length");

  auto* generate = app.add_subcommand("generate", "Produce REs for every slot of a split");
  generate->add_option("--corpus", config.corpus, "Corpus JSONL")->required();
  generate->add_option("--registry", config.registry, "Entity registry (JSON)");
  generate->add_option("--system", flags.system, "rreg-s, rreg-l, ml-s, ml-l or external");
  generate->add_option("--model", config.model, "Model file (ml-s, ml-l)");
  generate->add_option("--predictions", config.predictions, "Input predictions (external)");
  generate->add_option("--split", flags.split, "train, dev or test");
  generate->add_option("--pronouns", flags.pronouns, "Pronoun table source: train or registry");
  generate->add_option("-o,--output", config.output, "Predictions JSONL (default stdout)");
  generate->add_option("--decisions", config.decisions, "Rule decisions JSONL");
  generate->add_option("--k", flags.k, "Override the corpus context length");

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold REs");
  evaluate->add_option("--corpus", config.corpus, "Corpus JSONL")->required();
  evaluate->add_option("--predictions", config.predictions, "Predictions JSONL")->required();
  evaluate->add_option("--split", flags.split, "train, dev or test");
  evaluate->add_option("-o,--output", config.output, "Report JSON (default stdout)");
  evaluate->add_option("--table", config.table, "Also write the text table here");
  evaluate->add_option("--label", config.label, "System name recorded in the report");
  evaluate->add_option("--seed", config.seed, "Seed of the run, recorded in the report");
  evaluate->add_option("--sed", flags.sed, "character or token");
  evaluate->add_flag("--cased", flags.cased, "Compare REs without lowercasing");
  evaluate->add_flag("--bleu-smoothing", config.metrics.bleu_smoothing, "Add-one BLEU smoothing");
  evaluate->add_option("--prf", flags.prf, "binary or macro");
  evaluate->add_flag("--sentence-accuracy", flags.sentence_accuracy,
                     "Table shows sentence-level accuracy");

  auto* report = app.add_subcommand("report", "Render report JSON files as one table");
  report->add_option("reports", config.reports, "Report files, optionally name=path")->required();
  report->add_option("-o,--output", config.output, "Table (default stdout)");
  report->add_flag("--sentence-accuracy", flags.sentence_accuracy,
                   "Show sentence-level accuracy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Finish(config, flags);
    if (*build) regctx::CmdBuildCorpus(config, std::cout, std::cerr);
    if (*convert) regctx::CmdConvertWebnlg(config, std::cout, std::cerr);
    if (*train) regctx::CmdTrain(config, std::cout, std::cerr);
    if (*generate) regctx::CmdGenerate(config, std::cout, std::cerr);
    if (*evaluate) regctx::CmdEvaluate(config, std::cout, std::cerr);
    if (*report) regctx::CmdReport(config, std::cout, std::cerr);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const regctx::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
