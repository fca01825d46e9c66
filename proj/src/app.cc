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

#include "regctx/app.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "regctx/realization.h"
#include "regctx/rules.h"

namespace regctx {
namespace {

std::ifstream OpenInput(const std::string& path, std::string_view what) {
  if (path.empty()) throw UsageError(std::string("missing ") + std::string(what) + " path");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + std::string(what) + " " + path);
  return in;
}

void WriteOutput(const std::string& path, std::ostream& out,
                 const std::function<void(std::ostream&)>& write) {
  if (path.empty() || path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot write " + path);
  write(file);
  if (!file) throw DataError("write failed: " + path);
}

// Prefixes data errors with the file they came from.
template <typename Fn>
auto WithSource(const std::string& path, Fn fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what(), e.line());
  }
}

EntityRegistry LoadRegistry(const RunConfig& config) {
  if (config.registry.empty()) return {};
  auto in = OpenInput(config.registry, "registry");
  return WithSource(config.registry, [&] { return ParseRegistry(in); });
}

Corpus LoadCorpus(const RunConfig& config) {
  auto in = OpenInput(config.corpus, "corpus");
  Corpus corpus = WithSource(config.corpus, [&] { return ParseCorpus(in); });
  corpus.registry = LoadRegistry(config);
  return corpus;
}

PronounTable LoadPronounTable(const RunConfig& config, const Corpus& corpus) {
  if (config.pronoun_source == PronounSource::kRegistry) return PronounTable(corpus.registry);
  return BuildPronounTable(corpus.InSplit(Split::kTrain), corpus.registry);
}

std::vector<Instance> InstancesOf(std::span<const Document* const> documents,
                                  const std::optional<ContextLength>& k) {
  std::vector<Instance> out;
  for (const Document* doc : documents) {
    for (auto& inst : InstancesFor(*doc, k)) out.push_back(std::move(inst));
  }
  return out;
}

SchemaKind SchemaFor(SystemKind system) {
  if (system == SystemKind::kMlS) return SchemaKind::kMlS;
  if (system == SystemKind::kMlL) return SchemaKind::kMlL;
  throw UsageError("system " + std::string(ToString(system)) + " has no feature schema");
}

struct PerDocument {
  std::vector<Prediction> predictions;
  std::vector<DecisionRecord> decisions;
};

Generation Merge(std::vector<PerDocument> parts) {
  Generation out;
  for (auto& part : parts) {
    for (auto& p : part.predictions) out.predictions.push_back(std::move(p));
    for (auto& d : part.decisions) out.decisions.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::string_view ToString(SystemKind system) {
  switch (system) {
    case SystemKind::kRregS: return "rreg-s";
    case SystemKind::kRregL: return "rreg-l";
    case SystemKind::kMlS: return "ml-s";
    case SystemKind::kMlL: return "ml-l";
    case SystemKind::kExternal: return "external";
  }
  return "";
}

std::optional<SystemKind> ParseSystemKind(std::string_view s) {
  for (SystemKind k : {SystemKind::kRregS, SystemKind::kRregL, SystemKind::kMlS, SystemKind::kMlL,
                       SystemKind::kExternal}) {
    if (ToLower(s) == ToString(k)) return k;
  }
  return std::nullopt;
}

std::vector<Instance> InstancesFor(const Document& doc, const std::optional<ContextLength>& k) {
  return k ? ExtractInstances(doc, *k) : ExtractInstances(doc);
}

Generation GenerateWithRules(std::span<const Document* const> documents, SystemKind system,
                             const PronounTable& table, const std::optional<ContextLength>& k,
                             std::size_t threads) {
  if (system != SystemKind::kRregS && system != SystemKind::kRregL) {
    throw UsageError("not a rule system: " + std::string(ToString(system)));
  }
  auto parts = ParallelMap<PerDocument>(documents.size(), threads, [&](std::size_t d) {
    PerDocument part;
    for (const Instance& inst : InstancesFor(*documents[d], k)) {
      const FormDecision decision =
          system == SystemKind::kRregS ? ApplyRregS(inst, table) : ApplyRregL(inst, table);
      const RealizedRE re = Realize(decision, inst, table);
      part.predictions.push_back(
          {inst.doc_id, inst.slot_index, re.tokens, std::string(ToString(decision.form))});
      part.decisions.push_back({inst.doc_id, inst.slot_index, decision});
    }
    return part;
  });
  return Merge(std::move(parts));
}

Generation GenerateWithModel(std::span<const Document* const> documents,
                             const MlGenerator& generator, const PronounTable& table,
                             const EntityRegistry& registry,
                             const std::optional<ContextLength>& k, std::size_t threads) {
  auto parts = ParallelMap<PerDocument>(documents.size(), threads, [&](std::size_t d) {
    PerDocument part;
    for (const Instance& inst : InstancesFor(*documents[d], k)) {
      const FeatureVector features = generator.model.Featurize(inst, registry);
      const Form form = PredictForm(generator.model, features);
      const ContentSelection selection =
          SelectContent(generator.model, inst, form, features, generator.index, table);
      part.predictions.push_back(
          {inst.doc_id, inst.slot_index, selection.re.tokens, std::string(ToString(form))});
    }
    return part;
  });
  return Merge(std::move(parts));
}

EvalReport EvaluatePredictions(std::span<const Document* const> documents,
                               std::span<const Prediction> predictions,
                               const EvalOptions& options, std::size_t threads) {
  if (documents.empty()) throw DataError("no documents to evaluate");
  const auto aligned = AlignPredictions(documents, predictions);
  const auto counts = ParallelMap<EvalCounts>(documents.size(), threads, [&](std::size_t d) {
    return EvaluateDocument(*documents[d], aligned[d], options);
  });
  return AssembleReport(documents, counts, options);
}

void CmdBuildCorpus(const RunConfig& config, std::ostream& out, std::ostream& log) {
  auto in = OpenInput(config.input, "annotated input");
  const auto annotated = WithSource(config.input, [&] { return ParseAnnotatedDocuments(in); });
  Corpus corpus;
  corpus.registry = LoadRegistry(config);
  const ContextLength k = config.k.value_or(std::nullopt);
  std::size_t slots = 0;
  for (const auto& doc : annotated) {
    BuildResult built = WithSource(config.input, [&] {
      return BuildInstances(doc, corpus.registry, k, config.delex);
    });
    for (const auto& d : built.diagnostics) log << "warning: " << d << "\n";
    slots += built.document.slots.size();
    corpus.documents.push_back(std::move(built.document));
  }
  WriteOutput(config.output, out, [&](std::ostream& o) { WriteCorpus(o, corpus); });
  if (!config.registry_out.empty()) {
    WriteOutput(config.registry_out, out, [&](std::ostream& o) { WriteRegistry(o, corpus.registry); });
  }
  log << "built " << corpus.documents.size() << " documents, " << slots << " slots\n";
}

void CmdConvertWebnlg(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (config.input.empty()) throw UsageError("missing WebNLG directory");
  if (!std::filesystem::is_directory(config.input)) {
    throw DataError("not a directory: " + config.input);
  }
  const Corpus corpus = ConvertWebnlgDirectory(config.input, config.webnlg);
  WriteOutput(config.output, out, [&](std::ostream& o) { WriteCorpus(o, corpus); });
  log << "converted " << corpus.documents.size() << " documents\n";
}

void CmdTrain(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const SchemaKind kind = SchemaFor(config.system);
  const Corpus corpus = LoadCorpus(config);
  const auto train_docs = corpus.InSplit(Split::kTrain);
  if (train_docs.empty()) throw DataError(config.corpus + ": no train documents");
  const auto training = InstancesOf(train_docs, config.k);
  const auto dev = InstancesOf(corpus.InSplit(Split::kDev), config.k);
  const FeatureSchema schema = FeatureSchema::Make(kind, config.dataset);
  const MlGenerator generator = WithSource(config.corpus, [&] {
    return TrainMlGenerator(training, dev, schema, corpus.registry, config.classifier, config.seed);
  });
  const std::string path = config.model.empty() ? config.output : config.model;
  WriteOutput(path, out, [&](std::ostream& o) { WriteModel(o, generator); });
  log << "trained " << schema.Name() << " on " << training.size() << " instances; importance:";
  for (const auto& f : generator.model.feature_importance) log << " " << f;
  log << " (" << generator.model.importance_method << ")\n";
}

void CmdGenerate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (config.system == SystemKind::kExternal && config.predictions.empty()) {
    throw UsageError("system external requires --predictions");
  }
  if ((config.system == SystemKind::kMlS || config.system == SystemKind::kMlL) &&
      config.model.empty()) {
    throw UsageError("system " + std::string(ToString(config.system)) + " requires --model");
  }
  const Corpus corpus = LoadCorpus(config);
  const auto documents = corpus.InSplit(config.split);
  Generation generation;
  switch (config.system) {
    case SystemKind::kRregS:
    case SystemKind::kRregL: {
      const PronounTable table = LoadPronounTable(config, corpus);
      generation = GenerateWithRules(documents, config.system, table, config.k, config.threads);
      break;
    }
    case SystemKind::kMlS:
    case SystemKind::kMlL: {
      auto in = OpenInput(config.model, "model");
      const MlGenerator generator = WithSource(config.model, [&] { return ReadModel(in); });
      if (generator.model.schema.kind != SchemaFor(config.system)) {
        throw UsageError("model " + config.model + " holds a " + generator.model.schema.Name() +
                         " model, not " + std::string(ToString(config.system)));
      }
      const PronounTable table = LoadPronounTable(config, corpus);
      generation = GenerateWithModel(documents, generator, table, corpus.registry, config.k,
                                     config.threads);
      break;
    }
    case SystemKind::kExternal: {
      auto in = OpenInput(config.predictions, "predictions");
      const auto predictions = WithSource(config.predictions, [&] { return ReadPredictions(in); });
      const auto aligned = WithSource(config.predictions, [&] {
        return AlignPredictions(documents, predictions);
      });
      for (const auto& doc : aligned) {
        generation.predictions.insert(generation.predictions.end(), doc.begin(), doc.end());
      }
      break;
    }
  }
  WriteOutput(config.output, out,
              [&](std::ostream& o) { WritePredictions(o, generation.predictions); });
  if (!config.decisions.empty()) {
    WriteOutput(config.decisions, out,
                [&](std::ostream& o) { WriteDecisions(o, generation.decisions); });
  }
  log << ToString(config.system) << ": " << generation.predictions.size() << " predictions for "
      << documents.size() << " " << ToString(config.split) << " documents\n";
}

void CmdEvaluate(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const Corpus corpus = LoadCorpus(config);
  auto in = OpenInput(config.predictions, "predictions");
  const auto predictions = WithSource(config.predictions, [&] { return ReadPredictions(in); });
  const auto documents = corpus.InSplit(config.split);
  EvalReport report = WithSource(config.predictions, [&] {
    return EvaluatePredictions(documents, predictions, config.metrics, config.threads);
  });
  if (!config.label.empty()) report.metadata["system"] = config.label;
  report.metadata["split"] = std::string(ToString(config.split));
  report.metadata["seed"] = std::to_string(config.seed);
  WriteOutput(config.output, out,
              [&](std::ostream& o) { o << ReportToJson(report).dump(2) << "\n"; });
  const std::string name = config.label.empty() ? "system" : config.label;
  const std::string table = RenderTable({{name, report}}, config.text_level);
  if (!config.table.empty()) {
    WriteOutput(config.table, out, [&](std::ostream& o) { o << table; });
  } else if (config.output != "-" && !config.output.empty()) {
    out << table;
  }
  log << "normalization: " << config.metrics.Describe() << "\n";
}

void CmdReport(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (config.reports.empty()) throw UsageError("report needs at least one report file");
  std::vector<std::pair<std::string, EvalReport>> rows;
  for (const std::string& arg : config.reports) {
    std::string name;
    std::string path = arg;
    if (const auto eq = arg.find('='); eq != std::string::npos) {
      name = arg.substr(0, eq);
      path = arg.substr(eq + 1);
    }
    auto in = OpenInput(path, "report");
    EvalReport report = WithSource(path, [&] {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("invalid JSON: ") + e.what());
      }
      return ReportFromJson(j);
    });
    if (name.empty()) {
      auto it = report.metadata.find("system");
      name = it != report.metadata.end() ? it->second
                                         : std::filesystem::path(path).stem().string();
    }
    rows.emplace_back(std::move(name), std::move(report));
  }
  WriteOutput(config.output, out,
              [&](std::ostream& o) { o << RenderTable(rows, config.text_level); });
  log << "normalization: " << rows.front().second.options.Describe() << "\n";
}

}  // namespace regctx
