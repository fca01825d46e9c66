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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include "regctx/corpus.h"
#include "testing.h"

namespace regctx {
namespace {

using testing::ReadFile;
using testing::TempDir;
using testing::WriteFile;

class CliTest : public ::testing::Test {
 protected:
  int Run(const std::string& args) {
    const std::string cmd = std::string(REGCTX_CLI) + " " + args + " >" + (dir_ / "stdout") +
                            " 2>" + (dir_ / "stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string Out() { return ReadFile(dir_ / "stdout"); }
  std::string Err() { return ReadFile(dir_ / "stderr"); }

  void WriteCollege() {
    Corpus corpus;
    corpus.documents.push_back(testing::CollegeDocument());
    std::ostringstream out;
    WriteCorpus(out, corpus);
    WriteFile(dir_ / "t1.jsonl", out.str());
  }

  TempDir dir_;
};

TEST_F(CliTest, HelpAndUsageExitCodes) {
  EXPECT_EQ(Run("--help"), 0);
  EXPECT_NE(Out().find("build-corpus"), std::string::npos);
  EXPECT_EQ(Run(""), 1);
  EXPECT_EQ(Run("frobnicate"), 1);
  EXPECT_EQ(Run("evaluate --corpus x"), 1);
  WriteCollege();
  EXPECT_EQ(Run("generate --corpus " + (dir_ / "t1.jsonl") + " --system neural"), 1);
  EXPECT_EQ(Run("generate --corpus " + (dir_ / "t1.jsonl") + " --k abc"), 1);
  EXPECT_EQ(Run("generate --corpus " + (dir_ / "t1.jsonl") + " --system ml-l"), 1);
  EXPECT_NE(Err().find("--model"), std::string::npos);
}

TEST_F(CliTest, DataErrorsExitTwoWithLineNumber) {
  WriteFile(dir_ / "bad.jsonl", "{\"doc_id\":\"a\",\"split\":\"train\",\"sentences\":[]}\n{oops\n");
  EXPECT_EQ(Run("build-corpus --input " + (dir_ / "bad.jsonl")), 2);
  EXPECT_NE(Err().find("line 2"), std::string::npos) << Err();
  EXPECT_EQ(Run("generate --corpus " + (dir_ / "missing.jsonl")), 2);
}

TEST_F(CliTest, GenerateCollegeWithRregS) {
  WriteCollege();
  ASSERT_EQ(Run("generate --corpus " + (dir_ / "t1.jsonl") + " --system rreg-s --decisions " +
                (dir_ / "dec.jsonl")),
            0)
      << Err();
  std::istringstream lines(Out());
  std::string line;
  for (int i = 0; i <= 4; ++i) std::getline(lines, line);
  EXPECT_NE(line.find(R"("slot_index":4,"re":["AWH","Engineering","College"])"), std::string::npos)
      << line;
  EXPECT_NE(ReadFile(dir_ / "dec.jsonl").find("competitor_present"), std::string::npos);
}

TEST_F(CliTest, ConfigFileFlagsWin) {
  WriteCollege();
  WriteFile(dir_ / "run.toml", "[generate]\nsystem = \"rreg-l\"\ncorpus = \"" + (dir_ / "t1.jsonl") +
                                   "\"\n");
  ASSERT_EQ(Run("--config " + (dir_ / "run.toml") + " generate"), 0) << Err();
  EXPECT_NE(Err().find("rreg-l"), std::string::npos);
  ASSERT_EQ(Run("--config " + (dir_ / "run.toml") + " generate --system rreg-s"), 0) << Err();
  EXPECT_NE(Err().find("rreg-s"), std::string::npos);
}

TEST_F(CliTest, EvaluateAndReport) {
  WriteCollege();
  const std::string corpus = dir_ / "t1.jsonl";
  ASSERT_EQ(Run("generate --corpus " + corpus + " -o " + (dir_ / "p.jsonl")), 0) << Err();
  ASSERT_EQ(Run("evaluate --corpus " + corpus + " --predictions " + (dir_ / "p.jsonl") +
                " --label RREG-S -o " + (dir_ / "r.json")),
            0)
      << Err();
  EXPECT_NE(ReadFile(dir_ / "r.json").find("\"re_accuracy\""), std::string::npos);
  ASSERT_EQ(Run("report " + (dir_ / "r.json")), 0) << Err();
  EXPECT_NE(Out().find("RREG-S"), std::string::npos);
  EXPECT_EQ(Run("evaluate --corpus " + corpus + " --predictions " + (dir_ / "p.jsonl") +
                " --sed bytes"),
            1);
}

}  // namespace
}  // namespace regctx
