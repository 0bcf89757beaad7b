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

#ifndef DPDSG_STREAM_IO_H_
#define DPDSG_STREAM_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpdsg/graph.h"

namespace dpdsg {

// Text format, one item per line:
//
//   # comment
//   n=<count>        header, must precede any update
//   <u> <v>          insertion of edge {u, v}
//   -                empty update
//
// Blank lines and lines starting with '#' are ignored.
absl::StatusOr<EdgeStream> ReadEdgeStream(std::istream& in);
absl::StatusOr<EdgeStream> ReadEdgeStreamFile(const std::string& path);

void WriteEdgeStream(const EdgeStream& stream, std::ostream& out);
absl::Status WriteEdgeStreamFile(const EdgeStream& stream,
                                 const std::string& path);

}  // namespace dpdsg

#endif  // DPDSG_STREAM_IO_H_
