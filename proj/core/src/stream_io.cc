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

#include "dpdsg/stream_io.h"

#include <fstream>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"

namespace dpdsg {

absl::StatusOr<EdgeStream> ReadEdgeStream(std::istream& in) {
  EdgeStream stream;
  bool have_header = false;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      int n = 0;
      if (!absl::StartsWith(line, "n=") ||
          !absl::SimpleAtoi(line.substr(2), &n) || n < 1) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "line %d: expected header 'n=<count>', got '%s'", line_no, line));
      }
      stream.n = n;
      have_header = true;
      continue;
    }
    if (line == "-") {
      stream.updates.push_back(Update::Noop());
      continue;
    }
    std::vector<absl::string_view> parts =
        absl::StrSplit(line, ' ', absl::SkipEmpty());
    int u = 0;
    int v = 0;
    if (parts.size() != 2 || !absl::SimpleAtoi(parts[0], &u) ||
        !absl::SimpleAtoi(parts[1], &v)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: expected 'u v' or '-', got '%s'", line_no,
                          line));
    }
    absl::StatusOr<Edge> e = Edge::Create(u, v, stream.n);
    if (!e.ok()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("line %d: %s", line_no, e.status().message()));
    }
    stream.updates.push_back(Update::Insert(*e));
  }
  if (!have_header) {
    return absl::InvalidArgumentError("stream has no 'n=<count>' header");
  }
  return stream;
}

absl::StatusOr<EdgeStream> ReadEdgeStreamFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrFormat("cannot open '%s'", path));
  }
  absl::StatusOr<EdgeStream> stream = ReadEdgeStream(in);
  if (!stream.ok()) {
    return absl::Status(stream.status().code(),
                        absl::StrFormat("%s: %s", path,
                                        stream.status().message()));
  }
  return stream;
}

void WriteEdgeStream(const EdgeStream& stream, std::ostream& out) {
  out << "n=" << stream.n << '\n';
  for (const Update& u : stream.updates) {
    if (u.is_noop()) {
      out << "-\n";
    } else {
      out << u.edge().u() << ' ' << u.edge().v() << '\n';
    }
  }
}

absl::Status WriteEdgeStreamFile(const EdgeStream& stream,
                                 const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrFormat("cannot write '%s'", path));
  }
  WriteEdgeStream(stream, out);
  out.flush();
  if (!out) {
    return absl::DataLossError(absl::StrFormat("write to '%s' failed", path));
  }
  return absl::OkStatus();
}

}  // namespace dpdsg
