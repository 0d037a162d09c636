// Copyright 2026 The cvpv-sim Authors

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

namespace cvpv {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CausalityViolation : Error { using Error::Error; };
struct UnknownEvent : Error { using Error::Error; };
struct UnknownParty : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct SeedTooShort : Error { using Error::Error; };
struct TooManyQubits : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NoTestRounds : Error { using Error::Error; };
struct UnknownKind : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct CommModeViolation : Error { using Error::Error; };
struct EmptyString : Error { using Error::Error; };
struct EmptyAcceptanceSet : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };

} // namespace cvpv
