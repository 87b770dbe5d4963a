// Copyright 2026 The Regret Manager Authors
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

#include "regret_manager/error.h"

namespace regret_manager {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kAssumptionViolation:
      return "assumption_violation";
    case ErrorCode::kTooLarge:
      return "too_large";
    case ErrorCode::kProtocol:
      return "protocol";
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kNotFound:
      return "not_found";
    case ErrorCode::kWrongPhase:
      return "wrong_phase";
    case ErrorCode::kIllegalAction:
      return "illegal_action";
    case ErrorCode::kDuplicateSubmission:
      return "duplicate_submission";
  }
  return "unknown";
}

}  // namespace regret_manager
