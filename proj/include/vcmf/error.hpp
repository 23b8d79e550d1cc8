/*
Copyright 2026 The VCMF Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vcmf {

// Every failure the library reports carries one of these codes so callers
// (and the CLI exit-status mapping) can tell them apart without parsing text.
enum class ErrorCode {
  // image-io
  kUnsupportedFormat,
  kMalformedHeader,
  kUnsupportedMaxValue,
  kTruncatedPayload,
  kIo,
  // vector parameter stream
  kUnknownMarker,
  kVarintOverflow,
  kTruncatedParams,
  kCoordinateOutOfBounds,
  kInvalidDrawing,
  // entropy coder
  kTruncatedStream,
  // container
  kBadMagic,
  kUnsupportedVersion,
  kLengthMismatch,
  kTruncatedContainer,
  kInvalidHeader,
  kCorruptEnhancement,
  // generic argument / shape checks
  kShapeMismatch,
  kInvalidArgument,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupportedFormat: return "unsupported-format";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kUnsupportedMaxValue: return "unsupported-max-value";
    case ErrorCode::kTruncatedPayload: return "truncated-payload";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUnknownMarker: return "unknown-marker";
    case ErrorCode::kVarintOverflow: return "varint-overflow";
    case ErrorCode::kTruncatedParams: return "truncated-params";
    case ErrorCode::kCoordinateOutOfBounds: return "coordinate-out-of-bounds";
    case ErrorCode::kInvalidDrawing: return "invalid-drawing";
    case ErrorCode::kTruncatedStream: return "truncated-stream";
    case ErrorCode::kBadMagic: return "bad-magic";
    case ErrorCode::kUnsupportedVersion: return "unsupported-version";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kTruncatedContainer: return "truncated-container";
    case ErrorCode::kInvalidHeader: return "invalid-header";
    case ErrorCode::kCorruptEnhancement: return "corrupt-enhancement";
    case ErrorCode::kShapeMismatch: return "shape-mismatch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_io() const noexcept { return code_ == ErrorCode::kIo; }

 private:
  ErrorCode code_;
};

}  // namespace vcmf
