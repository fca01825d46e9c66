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

#ifndef REGCTX_WEBNLG_H_
#define REGCTX_WEBNLG_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "regctx/corpus.h"

namespace regctx {

// Thematic categories present in the WebNLG training data. Test entries of
// any other category are labeled "unseen".
bool IsSeenCategory(std::string_view category);

// Whitespace tokenization of a template or reference string. Placeholders
// (AGENT-1, PATIENT-2, BRIDGE-1) become separate tokens, and trailing
// , ; : ! ? as well as a final period are split off other tokens.
TokenList TokenizeWebnlg(std::string_view text);
bool IsWebnlgPlaceholder(std::string_view token);

struct WebnlgOptions {
  // Keep only lexicalizations marked comment="good".
  bool good_only = false;
  // Set domain_label to seen/unseen on test documents.
  bool label_domains = true;
};

// One document per <lex>. `source` prefixes the doc_id. Throws DataError on
// malformed XML or when references and placeholders disagree.
std::vector<Document> ConvertWebnlgXml(std::istream& in, Split split, std::string_view source,
                                       const WebnlgOptions& options = {});

// Reads every *.xml below root/train, root/dev and root/test (sorted by path).
Corpus ConvertWebnlgDirectory(const std::filesystem::path& root,
                              const WebnlgOptions& options = {});

}  // namespace regctx

#endif  // REGCTX_WEBNLG_H_
