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

#ifndef REGRET_MANAGER_ERROR_H_
#define REGRET_MANAGER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace regret_manager {

enum class ErrorCode {
  kInvalidInput,
  // The game definition breaks a standing assumption (e.g. a utility out of
  // [0, u_max]); the caller is not at fault.
  kAssumptionViolation,
  kTooLarge,
  kProtocol,
  kSchema,
  kNotFound,
  kWrongPhase,
  kIllegalAction,
  kDuplicateSubmission,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regret_manager

#endif  // REGRET_MANAGER_ERROR_H_
