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

#include "rydgate/error.hpp"

namespace rydgate {

std::string_view kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MissingParameter: return "missing-parameter";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidSeparation: return "invalid-separation";
    case ErrorKind::ModelMismatch: return "model-mismatch";
    case ErrorKind::OutOfSchedule: return "out-of-schedule";
    case ErrorKind::GapClosure: return "gap-closure";
    case ErrorKind::PhaseUnreachable: return "phase-unreachable";
    case ErrorKind::StiffFailure: return "stiff-failure";
    case ErrorKind::QuadratureUnconverged: return "quadrature-unconverged";
    case ErrorKind::InfeasibleProblem: return "infeasible-problem";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + detail), kind_(kind), detail_(detail)
{
}

} // namespace rydgate
