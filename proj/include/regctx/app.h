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

#ifndef REGCTX_APP_H_
#define REGCTX_APP_H_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "regctx/corpus.h"
#include "regctx/delex.h"
#include "regctx/features.h"
#include "regctx/metrics.h"
#include "regctx/ml_reg.h"
#include "regctx/predictions.h"
#include "regctx/pronouns.h"
#include "regctx/webnlg.h"

namespace regctx {

// Bad flag combinations and other caller mistakes (exit code 1).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { kRregS, kRregL, kMlS, kMlL, kExternal };
std::string_view ToString(SystemKind system);
std::optional<SystemKind> ParseSystemKind(std::string_view s);

enum class PronounSource { kTrain, kRegistry };

struct RunConfig {
  std::string input;
  std::string corpus;
  std::string registry;
  std::string registry_out;
  std::string model;
  std::string predictions;
  // "-" writes to the command's output stream.
  std::string output = "-";
  std::string decisions;
  std::string table;
  std::vector<std::string> reports;
  std::string label;

  SystemKind system = SystemKind::kRregS;
  // Context length override; unset keeps each document's own.
  std::optional<ContextLength> k;
  std::uint64_t seed = 0;
  Split split = Split::kTest;
  Dataset dataset = Dataset::kWebnlg;
  PronounSource pronoun_source = PronounSource::kTrain;
  ClassifierConfig classifier;
  EvalOptions metrics;
  TextAccuracyLevel text_level = TextAccuracyLevel::kDocument;
  DelexOptions delex;
  WebnlgOptions webnlg;
  // 0 uses the hardware concurrency.
  std::size_t threads = 0;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results land at
// their own index; the exception of the lowest failing index is rethrown.
template <typename T, typename Fn>
std::vector<T> ParallelMap(std::size_t n, std::size_t threads, Fn fn) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < n; i += threads) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

struct Generation {
  std::vector<Prediction> predictions;
  // Filled by the rule systems only.
  std::vector<DecisionRecord> decisions;
};

std::vector<Instance> InstancesFor(const Document& doc, const std::optional<ContextLength>& k);

Generation GenerateWithRules(std::span<const Document* const> documents, SystemKind system,
                             const PronounTable& table, const std::optional<ContextLength>& k,
                             std::size_t threads = 1);
Generation GenerateWithModel(std::span<const Document* const> documents,
                             const MlGenerator& generator, const PronounTable& table,
                             const EntityRegistry& registry,
                             const std::optional<ContextLength>& k, std::size_t threads = 1);

EvalReport EvaluatePredictions(std::span<const Document* const> documents,
                               std::span<const Prediction> predictions,
                               const EvalOptions& options, std::size_t threads = 1);

// Subcommands. Each reads and writes the files named in the config; `out`
// receives "-" outputs and `log` diagnostics. DataError and UsageError
// propagate to the caller.
void CmdBuildCorpus(const RunConfig& config, std::ostream& out, std::ostream& log);
void CmdConvertWebnlg(const RunConfig& config, std::ostream& out, std::ostream& log);
void CmdTrain(const RunConfig& config, std::ostream& out, std::ostream& log);
void CmdGenerate(const RunConfig& config, std::ostream& out, std::ostream& log);
void CmdEvaluate(const RunConfig& config, std::ostream& out, std::ostream& log);
void CmdReport(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace regctx

#endif  // REGCTX_APP_H_
