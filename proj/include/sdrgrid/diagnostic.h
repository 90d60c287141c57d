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

#ifndef SDRGRID_DIAGNOSTIC_H_
#define SDRGRID_DIAGNOSTIC_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sdrgrid {

// Line/column are 1-based; zero means "unknown".
struct SourceLocation {
  int line = 0;
  int column = 0;

  bool known() const { return line > 0; }
};

enum class Severity { kError, kWarning };

std::string_view severity_name(Severity severity);

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  // Identifier the diagnostic is about, used to attach a source location.
  std::string subject;
  SourceLocation location;

  bool is_error() const { return severity == Severity::kError; }
};

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Renders "file:line:col: severity: message".
std::string format_diagnostic(std::string_view file, const Diagnostic& diagnostic);

// Raised by every text/JSON reader in the library. The message excludes the
// location so callers can format it themselves.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceLocation location = {});

  const std::string& message() const { return message_; }
  const SourceLocation& location() const { return location_; }

 private:
  std::string message_;
  SourceLocation location_;
};

}  // namespace sdrgrid

#endif  // SDRGRID_DIAGNOSTIC_H_
