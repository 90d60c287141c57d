// Copyright 2026 The sdrgrid Authors
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

#include "sdrgrid/diagnostic.h"

#include <algorithm>

namespace sdrgrid {
namespace {

std::string with_location(const std::string& message, SourceLocation loc) {
  if (!loc.known()) return message;
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
         message;
}

}  // namespace

std::string_view severity_name(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.is_error(); });
}

std::string format_diagnostic(std::string_view file,
                              const Diagnostic& diagnostic) {
  std::string out(file);
  out += ':' + std::to_string(diagnostic.location.line);
  out += ':' + std::to_string(diagnostic.location.column);
  out += ": ";
  out += severity_name(diagnostic.severity);
  out += ": ";
  out += diagnostic.message;
  return out;
}

ParseError::ParseError(std::string message, SourceLocation location)
    : std::runtime_error(with_location(message, location)),
      message_(std::move(message)),
      location_(location) {}

}  // namespace sdrgrid
