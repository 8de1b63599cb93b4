// Copyright 2026 The mubkit Authors
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

#include "mubkit/error.h"

namespace mubkit {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotPositive:
            return "NotPositive";
        case ErrorCode::NotAState:
            return "NotAState";
        case ErrorCode::DimMismatch:
            return "DimMismatch";
        case ErrorCode::SpectrumOutOfRange:
            return "SpectrumOutOfRange";
        case ErrorCode::NotAnEffect:
            return "NotAnEffect";
        case ErrorCode::SumNotIdentity:
            return "SumNotIdentity";
        case ErrorCode::DuplicateLabel:
            return "DuplicateLabel";
        case ErrorCode::LabelMismatch:
            return "LabelMismatch";
        case ErrorCode::InvalidDim:
            return "InvalidDim";
        case ErrorCode::InvalidParams:
            return "InvalidParams";
        case ErrorCode::NotAtomic:
            return "NotAtomic";
        case ErrorCode::BadPartition:
            return "BadPartition";
        case ErrorCode::ParseError:
            return "ParseError";
        case ErrorCode::IoError:
            return "IoError";
        case ErrorCode::InternalInconsistency:
            return "InternalInconsistency";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

void raise(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

}  // namespace mubkit
