// Copyright 2026 The scqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCQKD_ERROR_HPP
#define SCQKD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace scqkd {

enum class ErrorKind {
    InvalidState,
    UndefinedConditional,
    InvalidParameter,
    UnsupportedKind,
    InvalidIndex,
    InvalidAnnouncement,
    InvalidTranscript,
    InvalidDistribution,
    NoThreshold,
};

const char *to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

inline const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidState: return "invalid state";
    case ErrorKind::UndefinedConditional: return "undefined conditional";
    case ErrorKind::InvalidParameter: return "invalid parameter";
    case ErrorKind::UnsupportedKind: return "unsupported kind";
    case ErrorKind::InvalidIndex: return "invalid index";
    case ErrorKind::InvalidAnnouncement: return "invalid announcement";
    case ErrorKind::InvalidTranscript: return "invalid transcript";
    case ErrorKind::InvalidDistribution: return "invalid distribution";
    case ErrorKind::NoThreshold: return "no threshold";
    }
    return "unknown";
}

}  // namespace scqkd

#endif  // SCQKD_ERROR_HPP
