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

#include "regctx/webnlg.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace regctx {
namespace {

namespace pt = boost::property_tree;

constexpr std::array<std::string_view, 10> kSeenCategories = {
    "Airport", "Astronaut", "Building", "City",       "ComicsCharacter",
    "Food",    "Monument",  "SportsTeam", "University", "WrittenWork"};

constexpr std::array<std::string_view, 3> kPlaceholderRoles = {"AGENT-", "PATIENT-", "BRIDGE-"};

// Length of a placeholder at the start of `s`, 0 if none.
std::size_t PlaceholderPrefix(std::string_view s) {
  for (std::string_view role : kPlaceholderRoles) {
    if (s.substr(0, role.size()) != role) continue;
    std::size_t n = role.size();
    while (n < s.size() && std::isdigit(static_cast<unsigned char>(s[n]))) ++n;
    if (n > role.size()) return n;
  }
  return 0;
}

void PushWord(std::string_view word, TokenList& out) {
  std::vector<std::string> trailing;
  while (word.size() > 1 && std::string_view(",;:!?").find(word.back()) != std::string_view::npos) {
    trailing.emplace_back(1, word.back());
    word.remove_suffix(1);
  }
  // "U.S." keeps its period; "Kerala." loses it.
  if (word.size() > 1 && word.back() == '.' &&
      word.substr(0, word.size() - 1).find('.') == std::string_view::npos) {
    trailing.emplace_back(".");
    word.remove_suffix(1);
  }
  if (!word.empty()) out.emplace_back(word);
  out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

struct Reference {
  int number = 0;
  std::string tag;
  std::string entity;
  std::string type;
  std::string text;
};

std::optional<Form> FormFromType(std::string_view type) {
  const std::string t = ToLower(type);
  if (t == "name") return Form::kProperName;
  if (t == "pronoun") return Form::kPronoun;
  if (t == "description" || t == "demonstrative") return Form::kDescription;
  return std::nullopt;
}

std::string EntityTag(std::string entity) {
  std::replace_if(entity.begin(), entity.end(),
                  [](unsigned char c) { return std::isspace(c) != 0; }, '_');
  return entity;
}

std::string Attr(const pt::ptree& node, const std::string& name) {
  return node.get<std::string>("<xmlattr>." + name, "");
}

bool IsSentenceEnd(std::string_view token) { return token == "." || token == "!" || token == "?"; }

}  // namespace

bool IsSeenCategory(std::string_view category) {
  return std::find(kSeenCategories.begin(), kSeenCategories.end(), category) !=
         kSeenCategories.end();
}

bool IsWebnlgPlaceholder(std::string_view token) {
  const std::size_t n = PlaceholderPrefix(token);
  return n > 0 && n == token.size();
}

TokenList TokenizeWebnlg(std::string_view text) {
  TokenList out;
  for (const std::string& piece : SplitWhitespace(text)) {
    std::string_view rest = piece;
    if (const std::size_t n = PlaceholderPrefix(rest); n > 0) {
      out.emplace_back(rest.substr(0, n));
      rest.remove_prefix(n);
      if (rest.empty()) continue;
      if (rest.size() == 1 && std::string_view(",;:!?.").find(rest[0]) != std::string_view::npos) {
        out.emplace_back(rest);
        continue;
      }
    }
    PushWord(rest, out);
  }
  return out;
}

std::vector<Document> ConvertWebnlgXml(std::istream& in, Split split, std::string_view source,
                                       const WebnlgOptions& options) {
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw DataError(std::string(source) + ": invalid XML: " + e.what(), e.line());
  }
  const auto entries = tree.get_child_optional("benchmark.entries");
  if (!entries) throw DataError(std::string(source) + ": missing benchmark/entries");

  std::vector<Document> out;
  for (const auto& [name, entry] : *entries) {
    if (name != "entry") continue;
    const std::string category = Attr(entry, "category");
    const std::string eid = Attr(entry, "eid");
    for (const auto& [lex_name, lex] : entry) {
      if (lex_name != "lex") continue;
      if (options.good_only && Attr(lex, "comment") != "good") continue;
      const auto tmpl = lex.get_optional<std::string>("template");
      if (!tmpl) continue;
      const std::string where = std::string(source) + " entry " + eid + " lex " + Attr(lex, "lid");

      std::vector<Reference> refs;
      if (const auto references = lex.get_child_optional("references")) {
        for (const auto& [ref_name, ref] : *references) {
          if (ref_name != "reference") continue;
          Reference r;
          r.number = ref.get<int>("<xmlattr>.number", 0);
          r.tag = Attr(ref, "tag");
          r.entity = Attr(ref, "entity");
          r.type = Attr(ref, "type");
          r.text = ref.get_value<std::string>();
          refs.push_back(std::move(r));
        }
      }
      std::stable_sort(refs.begin(), refs.end(),
                       [](const Reference& a, const Reference& b) { return a.number < b.number; });

      Document doc;
      doc.doc_id = std::string(source) + "_" + eid + "_" + Attr(lex, "lid");
      doc.split = split;
      if (options.label_domains && split == Split::kTest) {
        doc.domain_label = IsSeenCategory(category) ? "seen" : "unseen";
      }
      std::size_t next_ref = 0;
      Sentence sentence;
      for (const std::string& token : TokenizeWebnlg(*tmpl)) {
        if (IsWebnlgPlaceholder(token)) {
          if (next_ref >= refs.size()) {
            throw DataError(where + ": more placeholders than references");
          }
          const Reference& ref = refs[next_ref++];
          if (ref.tag != token) {
            throw DataError(where + ": placeholder " + token + " does not match reference " +
                            std::to_string(ref.number) + " (" + ref.tag + ")");
          }
          SlotAnnotation slot;
          slot.sentence = doc.sentences.size();
          slot.token = sentence.size();
          slot.entity_tag = EntityTag(ref.entity);
          if (slot.entity_tag.empty()) throw DataError(where + ": reference without entity");
          slot.gold_re_tokens = TokenizeWebnlg(ref.text);
          if (slot.gold_re_tokens.empty()) slot.gold_re_tokens = {slot.entity_tag};
          slot.gold_form = FormFromType(ref.type);
          slot.chain_id = slot.entity_tag;
          sentence.push_back(Token{slot.entity_tag, true});
          doc.slots.push_back(std::move(slot));
          continue;
        }
        sentence.push_back(Token{token, false});
        if (IsSentenceEnd(token)) {
          doc.sentences.push_back(std::move(sentence));
          sentence.clear();
        }
      }
      if (!sentence.empty()) doc.sentences.push_back(std::move(sentence));
      if (next_ref != refs.size()) throw DataError(where + ": unused references");
      try {
        ValidateDocument(doc);
      } catch (const DataError& e) {
        throw DataError(where + ": " + e.what());
      }
      out.push_back(std::move(doc));
    }
  }
  return out;
}

Corpus ConvertWebnlgDirectory(const std::filesystem::path& root, const WebnlgOptions& options) {
  namespace fs = std::filesystem;
  Corpus corpus;
  std::set<std::string> ids;
  for (const auto& [dir, split] : {std::pair{"train", Split::kTrain},
                                   std::pair{"dev", Split::kDev},
                                   std::pair{"test", Split::kTest}}) {
    const fs::path base = root / dir;
    if (!fs::is_directory(base)) continue;
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(base)) {
      if (e.is_regular_file() && e.path().extension() == ".xml") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      std::ifstream in(file);
      if (!in) throw DataError("cannot open " + file.string());
      std::string source = fs::relative(file, root).replace_extension().generic_string();
      std::replace(source.begin(), source.end(), '/', '_');
      for (auto& doc : ConvertWebnlgXml(in, split, source, options)) {
        if (!ids.insert(doc.doc_id).second) throw DataError("duplicate doc_id " + doc.doc_id);
        corpus.documents.push_back(std::move(doc));
      }
    }
  }
  if (corpus.documents.empty()) {
    throw DataError("no WebNLG documents under " + root.string() + " (expected train/ dev/ test/)");
  }
  return corpus;
}

}  // namespace regctx
