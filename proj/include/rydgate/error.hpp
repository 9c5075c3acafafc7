// Copyright 2026 The rydgate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rydgate {

enum class ErrorKind {
    MissingParameter,
    InvalidParameter,
    InvalidSeparation,
    ModelMismatch,
    OutOfSchedule,
    GapClosure,
    PhaseUnreachable,
    StiffFailure,
    QuadratureUnconverged,
    InfeasibleProblem,
};

// Stable identifier for an error kind, e.g. "missing-parameter".
std::string_view kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

// Configuration errors map to exit code 2 in the CLI; everything else is numerical.
inline bool is_config_error(ErrorKind kind)
{
    return kind == ErrorKind::MissingParameter || kind == ErrorKind::InvalidParameter;
}

} // namespace rydgate
