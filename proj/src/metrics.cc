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

#include "regctx/metrics.h"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "regctx/pronouns.h"

namespace regctx {
namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts CountNgrams(const TokenList& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

TokenList LowerTokens(const TokenList& tokens, bool lowercase) {
  if (!lowercase) return tokens;
  TokenList out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(ToLower(t));
  return out;
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

nlohmann::ordered_json CountsToJson(const EvalCounts& c) {
  nlohmann::ordered_json j;
  j["slots"] = c.slots;
  j["re_correct"] = c.re_correct;
  j["sed_total"] = c.sed_total;
  j["documents"] = c.documents;
  j["documents_correct"] = c.documents_correct;
  j["sentences"] = c.sentences;
  j["sentences_correct"] = c.sentences_correct;
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  j["tn"] = c.tn;
  j["bleu_matches"] = c.bleu.matches;
  j["bleu_totals"] = c.bleu.totals;
  j["candidate_length"] = c.bleu.candidate_length;
  j["reference_length"] = c.bleu.reference_length;
  return j;
}

EvalCounts CountsFromJson(const nlohmann::json& j) {
  EvalCounts c;
  c.slots = j.at("slots").get<std::size_t>();
  c.re_correct = j.at("re_correct").get<std::size_t>();
  c.sed_total = j.at("sed_total").get<std::size_t>();
  c.documents = j.at("documents").get<std::size_t>();
  c.documents_correct = j.at("documents_correct").get<std::size_t>();
  c.sentences = j.at("sentences").get<std::size_t>();
  c.sentences_correct = j.at("sentences_correct").get<std::size_t>();
  c.tp = j.at("tp").get<std::size_t>();
  c.fp = j.at("fp").get<std::size_t>();
  c.fn = j.at("fn").get<std::size_t>();
  c.tn = j.at("tn").get<std::size_t>();
  c.bleu.matches = j.at("bleu_matches").get<std::array<std::size_t, kBleuOrder>>();
  c.bleu.totals = j.at("bleu_totals").get<std::array<std::size_t, kBleuOrder>>();
  c.bleu.candidate_length = j.at("candidate_length").get<std::size_t>();
  c.bleu.reference_length = j.at("reference_length").get<std::size_t>();
  return c;
}

nlohmann::ordered_json MetricsToJson(const EvalMetrics& m) {
  nlohmann::ordered_json j;
  j["re_accuracy"] = m.re_accuracy;
  j["sed_mean"] = m.sed_mean;
  j["bleu"] = m.bleu;
  j["text_accuracy"] = m.text_accuracy;
  j["sentence_accuracy"] = m.sentence_accuracy;
  j["pronom_precision"] = m.precision;
  j["pronom_recall"] = m.recall;
  j["pronom_f1"] = m.f1;
  return j;
}

nlohmann::ordered_json SplitToJson(const SplitReport& s) {
  nlohmann::ordered_json j = MetricsToJson(s.metrics);
  j["counts"] = CountsToJson(s.counts);
  return j;
}

// (sentences holding a slot, those with every slot correct)
std::pair<std::size_t, std::size_t> SentenceTally(const DocumentOutcome& doc) {
  std::map<std::size_t, bool> sentences;
  for (std::size_t i = 0; i < doc.slot_correct.size(); ++i) {
    auto [it, inserted] = sentences.emplace(doc.slot_sentence.at(i), true);
    it->second = it->second && doc.slot_correct[i];
  }
  std::size_t correct = 0;
  for (const auto& [s, ok] : sentences) correct += ok ? 1 : 0;
  return {sentences.size(), correct};
}

std::string Fixed(double value, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << value;
  return os.str();
}

}  // namespace

std::string EvalOptions::Describe() const {
  std::string out = lowercase ? "lowercase" : "cased";
  out += ", single-space tokens, sed=";
  out += sed_level == SedLevel::kCharacter ? "character" : "token";
  out += ", bleu smoothing=";
  out += bleu_smoothing ? "add-one" : "off";
  out += ", prf=";
  out += prf_average == PrfAverage::kBinary ? "binary" : "macro";
  return out;
}

std::string NormalizeRe(const TokenList& tokens, bool lowercase) {
  std::string joined = JoinTokens(tokens);
  return lowercase ? ToLower(joined) : joined;
}

std::size_t Sed(std::string_view pred, std::string_view gold) { return Levenshtein(pred, gold); }

std::size_t Sed(const TokenList& pred, const TokenList& gold, const EvalOptions& options) {
  if (options.sed_level == SedLevel::kToken) {
    return Levenshtein(LowerTokens(pred, options.lowercase), LowerTokens(gold, options.lowercase));
  }
  return Sed(NormalizeRe(pred, options.lowercase), NormalizeRe(gold, options.lowercase));
}

double ReAccuracy(std::span<const TokenList> predictions, std::span<const TokenList> golds,
                  bool lowercase) {
  if (predictions.size() != golds.size()) {
    throw std::invalid_argument("re_accuracy: " + std::to_string(predictions.size()) +
                                " predictions for " + std::to_string(golds.size()) + " golds");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    if (NormalizeRe(predictions[i], lowercase) == NormalizeRe(golds[i], lowercase)) ++correct;
  }
  return Ratio(correct, golds.size());
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  candidate_length += other.candidate_length;
  reference_length += other.reference_length;
  return *this;
}

double BleuStats::Score(bool smoothing) const {
  if (candidate_length == 0) return 0.0;
  double log_sum = 0.0;
  std::size_t orders = 0;
  for (std::size_t n = 0; n < kBleuOrder; ++n) {
    double m = static_cast<double>(matches[n]);
    double t = static_cast<double>(totals[n]);
    if (smoothing) {
      m += 1.0;
      t += 1.0;
    } else if (totals[n] == 0) {
      continue;
    }
    if (m == 0.0) return 0.0;
    log_sum += std::log(m / t);
    ++orders;
  }
  double bp = 1.0;
  if (candidate_length < reference_length) {
    bp = std::exp(1.0 - static_cast<double>(reference_length) /
                            static_cast<double>(candidate_length));
  }
  return 100.0 * bp * std::exp(log_sum / static_cast<double>(orders));
}

BleuStats ComputeBleuStats(const TokenList& candidate, const TokenList& reference) {
  BleuStats stats;
  stats.candidate_length = candidate.size();
  stats.reference_length = reference.size();
  for (std::size_t n = 1; n <= kBleuOrder; ++n) {
    const NgramCounts cand = CountNgrams(candidate, n);
    const NgramCounts ref = CountNgrams(reference, n);
    for (const auto& [gram, count] : cand) {
      stats.totals[n - 1] += count;
      auto it = ref.find(gram);
      if (it != ref.end()) stats.matches[n - 1] += std::min(count, it->second);
    }
  }
  return stats;
}

double CorpusBleu(std::span<const TokenList> candidates, std::span<const TokenList> references,
                  bool smoothing) {
  if (candidates.empty()) throw std::invalid_argument("corpus_bleu: empty corpus");
  if (candidates.size() != references.size()) {
    throw std::invalid_argument("corpus_bleu: " + std::to_string(candidates.size()) +
                                " candidates for " + std::to_string(references.size()) +
                                " references");
  }
  BleuStats stats;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    stats += ComputeBleuStats(candidates[i], references[i]);
  }
  return stats.Score(smoothing);
}

double TextAccuracy(std::span<const DocumentOutcome> documents) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& doc : documents) {
    if (doc.slot_correct.empty()) continue;
    ++total;
    if (std::all_of(doc.slot_correct.begin(), doc.slot_correct.end(), [](bool b) { return b; })) {
      ++correct;
    }
  }
  return Ratio(correct, total);
}

double SentenceAccuracy(std::span<const DocumentOutcome> documents) {
  std::size_t total = 0;
  std::size_t correct = 0;
  for (const auto& doc : documents) {
    const auto [n, ok] = SentenceTally(doc);
    total += n;
    correct += ok;
  }
  return Ratio(correct, total);
}

Prf PrfFromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  Prf out;
  out.precision = Ratio(tp, tp + fp);
  out.recall = Ratio(tp, tp + fn);
  const double sum = out.precision + out.recall;
  out.f1 = sum == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / sum;
  return out;
}

namespace {

Prf AveragePrf(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn,
               PrfAverage average) {
  const Prf pos = PrfFromCounts(tp, fp, fn);
  if (average == PrfAverage::kBinary) return pos;
  const Prf neg = PrfFromCounts(tn, fn, fp);
  return {(pos.precision + neg.precision) / 2.0, (pos.recall + neg.recall) / 2.0,
          (pos.f1 + neg.f1) / 2.0};
}

}  // namespace

Prf PronominalizationPrf(std::span<const bool> predicted, std::span<const bool> gold,
                         PrfAverage average) {
  if (predicted.size() != gold.size()) {
    throw std::invalid_argument("pronominalization_prf: length mismatch");
  }
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (predicted[i] && gold[i]) ++tp;
    else if (predicted[i]) ++fp;
    else if (gold[i]) ++fn;
    else ++tn;
  }
  return AveragePrf(tp, fp, fn, tn, average);
}

EvalCounts& EvalCounts::operator+=(const EvalCounts& o) {
  slots += o.slots;
  re_correct += o.re_correct;
  sed_total += o.sed_total;
  documents += o.documents;
  documents_correct += o.documents_correct;
  sentences += o.sentences;
  sentences_correct += o.sentences_correct;
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
  bleu += o.bleu;
  return *this;
}

EvalMetrics MetricsFromCounts(const EvalCounts& c, const EvalOptions& options) {
  EvalMetrics m;
  m.re_accuracy = Ratio(c.re_correct, c.slots);
  m.sed_mean = Ratio(c.sed_total, c.slots);
  m.bleu = c.bleu.Score(options.bleu_smoothing);
  m.text_accuracy = Ratio(c.documents_correct, c.documents);
  m.sentence_accuracy = Ratio(c.sentences_correct, c.sentences);
  const Prf prf = AveragePrf(c.tp, c.fp, c.fn, c.tn, options.prf_average);
  m.precision = prf.precision;
  m.recall = prf.recall;
  m.f1 = prf.f1;
  return m;
}

bool PredictedPronoun(const Prediction& prediction) {
  if (prediction.form) {
    const std::string form = ToLower(*prediction.form);
    if (form == "pronominal" || form == "pronoun") return true;
    if (form == "non-pronominal" || form == "non_pronominal" || ParseForm(form)) return false;
  }
  return IsPronoun(prediction.re);
}

bool GoldPronoun(const SlotAnnotation& slot) {
  if (slot.gold_form) return *slot.gold_form == Form::kPronoun;
  return IsPronoun(slot.gold_re_tokens);
}

EvalCounts EvaluateDocument(const Document& doc, std::span<const Prediction> predictions,
                            const EvalOptions& options) {
  if (predictions.size() != doc.slots.size()) {
    throw DataError("document " + doc.doc_id + ": " + std::to_string(predictions.size()) +
                    " predictions for " + std::to_string(doc.slots.size()) + " slots");
  }
  EvalCounts c;
  DocumentOutcome outcome;
  std::vector<TokenList> realized;
  std::vector<TokenList> golds;
  for (std::size_t i = 0; i < doc.slots.size(); ++i) {
    const SlotAnnotation& slot = doc.slots[i];
    const Prediction& pred = predictions[i];
    const bool correct = NormalizeRe(pred.re, options.lowercase) ==
                         NormalizeRe(slot.gold_re_tokens, options.lowercase);
    ++c.slots;
    c.re_correct += correct ? 1 : 0;
    c.sed_total += Sed(pred.re, slot.gold_re_tokens, options);
    const bool p = PredictedPronoun(pred);
    const bool g = GoldPronoun(slot);
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
    else ++c.tn;
    outcome.slot_correct.push_back(correct);
    outcome.slot_sentence.push_back(slot.sentence);
    realized.push_back(pred.re);
    golds.push_back(slot.gold_re_tokens);
  }
  if (!doc.slots.empty()) {
    c.documents = 1;
    c.documents_correct = c.re_correct == c.slots ? 1 : 0;
  }
  std::tie(c.sentences, c.sentences_correct) = SentenceTally(outcome);
  c.bleu = ComputeBleuStats(LowerTokens(RelexicalizeTokens(doc, realized).tokens, options.lowercase),
                            LowerTokens(RelexicalizeTokens(doc, golds).tokens, options.lowercase));
  return c;
}

EvalReport AssembleReport(std::span<const Document* const> documents,
                          std::span<const EvalCounts> counts, const EvalOptions& options) {
  if (documents.size() != counts.size()) throw std::invalid_argument("AssembleReport: size mismatch");
  EvalReport report;
  report.options = options;
  std::map<std::string, EvalCounts> by_domain;
  bool any_label = false;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    report.overall.counts += counts[i];
    any_label = any_label || documents[i]->domain_label.has_value();
    by_domain[documents[i]->domain_label.value_or("unlabeled")] += counts[i];
  }
  report.overall.metrics = MetricsFromCounts(report.overall.counts, options);
  if (any_label) {
    for (const auto& [label, c] : by_domain) {
      report.by_domain[label] = {c, MetricsFromCounts(c, options)};
    }
  }
  return report;
}

EvalReport Evaluate(std::span<const Document* const> documents,
                    const std::vector<std::vector<Prediction>>& predictions,
                    const EvalOptions& options) {
  if (documents.empty()) throw DataError("no documents to evaluate");
  if (predictions.size() != documents.size()) {
    throw DataError("predictions cover " + std::to_string(predictions.size()) +
                    " documents, corpus has " + std::to_string(documents.size()));
  }
  std::vector<EvalCounts> counts;
  counts.reserve(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    counts.push_back(EvaluateDocument(*documents[i], predictions[i], options));
  }
  return AssembleReport(documents, counts, options);
}

nlohmann::ordered_json ReportToJson(const EvalReport& report) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json opts;
  opts["sed_level"] = report.options.sed_level == SedLevel::kCharacter ? "character" : "token";
  opts["lowercase"] = report.options.lowercase;
  opts["bleu_smoothing"] = report.options.bleu_smoothing;
  opts["prf_average"] = report.options.prf_average == PrfAverage::kBinary ? "binary" : "macro";
  opts["normalization"] = report.options.Describe();
  j["options"] = opts;
  if (!report.metadata.empty()) {
    nlohmann::ordered_json meta;
    for (const auto& [k, v] : report.metadata) meta[k] = v;
    j["metadata"] = meta;
  }
  j["overall"] = SplitToJson(report.overall);
  if (!report.by_domain.empty()) {
    nlohmann::ordered_json dom;
    for (const auto& [label, split] : report.by_domain) dom[label] = SplitToJson(split);
    j["by_domain"] = dom;
  }
  return j;
}

EvalReport ReportFromJson(const nlohmann::json& j) {
  EvalReport report;
  try {
    const auto& o = j.at("options");
    report.options.sed_level =
        o.at("sed_level").get<std::string>() == "token" ? SedLevel::kToken : SedLevel::kCharacter;
    report.options.lowercase = o.at("lowercase").get<bool>();
    report.options.bleu_smoothing = o.at("bleu_smoothing").get<bool>();
    report.options.prf_average =
        o.at("prf_average").get<std::string>() == "macro" ? PrfAverage::kMacro : PrfAverage::kBinary;
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) report.metadata[k] = v.get<std::string>();
    }
    report.overall.counts = CountsFromJson(j.at("overall").at("counts"));
    report.overall.metrics = MetricsFromCounts(report.overall.counts, report.options);
    if (j.contains("by_domain")) {
      for (const auto& [label, s] : j.at("by_domain").items()) {
        const EvalCounts c = CountsFromJson(s.at("counts"));
        report.by_domain[label] = {c, MetricsFromCounts(c, report.options)};
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string RenderTable(const std::vector<std::pair<std::string, EvalReport>>& rows,
                        TextAccuracyLevel level) {
  const std::vector<std::string> header = {
      "System", "RE Acc", "SED", "BLEU",
      level == TextAccuracyLevel::kDocument ? "Text Acc" : "Sent Acc", "Precision", "Recall", "F1"};
  auto cells = [&](const EvalMetrics& m) {
    const double text = level == TextAccuracyLevel::kDocument ? m.text_accuracy : m.sentence_accuracy;
    return std::vector<std::string>{Fixed(100.0 * m.re_accuracy, 2), Fixed(m.sed_mean, 2),
                                    Fixed(m.bleu, 2),                Fixed(100.0 * text, 2),
                                    Fixed(100.0 * m.precision, 2),   Fixed(100.0 * m.recall, 2),
                                    Fixed(100.0 * m.f1, 2)};
  };
  std::vector<std::vector<std::string>> table = {header};
  for (const auto& [name, report] : rows) {
    std::vector<std::string> row = {name};
    if (report.by_domain.empty()) {
      for (auto& c : cells(report.overall.metrics)) row.push_back(std::move(c));
    } else {
      std::vector<std::vector<std::string>> parts;
      for (const auto& [label, split] : report.by_domain) parts.push_back(cells(split.metrics));
      for (std::size_t col = 0; col + 1 < header.size(); ++col) {
        std::string cell;
        for (std::size_t p = 0; p < parts.size(); ++p) {
          if (p > 0) cell += "/";
          cell += parts[p][col];
        }
        row.push_back(std::move(cell));
      }
    }
    table.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream os;
  if (!rows.empty() && !rows.front().second.by_domain.empty()) {
    os << "# cells:";
    for (const auto& [label, split] : rows.front().second.by_domain) os << " " << label;
    os << "\n";
  }
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        os << std::left << std::setw(static_cast<int>(widths[c])) << row[c];
      } else {
        os << "  " << std::right << std::setw(static_cast<int>(widths[c])) << row[c];
      }
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace regctx
