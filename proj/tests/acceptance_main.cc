// Copyright 2026 The dpdsg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the full acceptance suite and prints one line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "dpdsg/verify.h"

int main(int argc, char** argv) {
  dpdsg::VerifyOptions options;
  options.level = dpdsg::VerifyLevel::kFull;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  options.on_result = [](const dpdsg::CriterionResult& r) {
    dpdsg::VerifyReport one;
    one.criteria.push_back(r);
    std::printf("%s\n", one.Lines()[0].c_str());
    std::fflush(stdout);
  };
  const dpdsg::VerifyReport report = dpdsg::RunVerifySuite(options);
  for (const std::string& note : report.notes) {
    std::printf("note: %s\n", note.c_str());
  }
  std::printf("%s\n", report.AllPassed() ? "ALL PASS" : "SOME FAILED");
  return report.AllPassed() ? 0 : 1;
}
