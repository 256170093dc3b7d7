// Copyright 2026 The mms-toolkit Authors
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

#ifndef MMS__ERROR_HPP_
#define MMS__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mms
{

enum class ErrorCode {
  // trajectory containers and validation
  kTooShort,
  kWrongLength,
  kWrongSampling,
  kNonFiniteCoordinate,
  kPastNotAnchoredAtOrigin,
  kIndexOutOfRange,
  kDegenerateChord,
  kCheckpointOutOfRange,
  kShapeMismatch,
  // scoring
  kUnsupportedCheckpoint,
  kEmptyReferenceSet,
  kDuplicateExpert,
  kDegenerateVariance,
  // action taxonomy
  kIntervalOutOfRange,
  // reference augmentation
  kFilterDivergence,
  kDegeneratePath,
  kInvalidSpeedFactor,
  // embedding / coherence
  kProviderUnavailable,
  kDimensionMismatch,
  kZeroVector,
  kLengthMismatch,
  kTooFewPhrases,
  // prompt rendering and parsing
  kWrongExampleCount,
  kMissingRequiredField,
  kTagNotFound,
  kMalformedPair,
  kMissingField,
  kUnknownCommand,
  // dataset
  kSchemaViolation,
  kDuplicateId,
  kUnknownScenarioType,
  kMalformedRecord,
  kIoFailure,
  // harness
  kJoinTooSmall,
  kUnknownModeString,
  kMissingActions,
  kMissingTraces,
};

inline const char * error_code_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kWrongLength: return "WrongLength";
    case ErrorCode::kWrongSampling: return "WrongSampling";
    case ErrorCode::kNonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::kPastNotAnchoredAtOrigin: return "PastNotAnchoredAtOrigin";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDegenerateChord: return "DegenerateChord";
    case ErrorCode::kCheckpointOutOfRange: return "CheckpointOutOfRange";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kUnsupportedCheckpoint: return "UnsupportedCheckpoint";
    case ErrorCode::kEmptyReferenceSet: return "EmptyReferenceSet";
    case ErrorCode::kDuplicateExpert: return "DuplicateExpert";
    case ErrorCode::kDegenerateVariance: return "DegenerateVariance";
    case ErrorCode::kIntervalOutOfRange: return "IntervalOutOfRange";
    case ErrorCode::kFilterDivergence: return "FilterDivergence";
    case ErrorCode::kDegeneratePath: return "DegeneratePath";
    case ErrorCode::kInvalidSpeedFactor: return "InvalidSpeedFactor";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFewPhrases: return "TooFewPhrases";
    case ErrorCode::kWrongExampleCount: return "WrongExampleCount";
    case ErrorCode::kMissingRequiredField: return "MissingRequiredField";
    case ErrorCode::kTagNotFound: return "TagNotFound";
    case ErrorCode::kMalformedPair: return "MalformedPair";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kUnknownCommand: return "UnknownCommand";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownScenarioType: return "UnknownScenarioType";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kJoinTooSmall: return "JoinTooSmall";
    case ErrorCode::kUnknownModeString: return "UnknownModeString";
    case ErrorCode::kMissingActions: return "MissingActions";
    case ErrorCode::kMissingTraces: return "MissingTraces";
  }
  return "Unknown";
}

// All library-level contract violations throw this one exception type;
// code() tells callers what went wrong, what() carries the details.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace mms

#endif  // MMS__ERROR_HPP_
