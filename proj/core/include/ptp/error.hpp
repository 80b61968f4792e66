// Copyright 2026 The ptp-toolkit Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptp {

/// Structured failure categories surfaced by the toolkit. The CLI maps
/// io_error to exit code 2 and everything else to exit code 1.
enum class errc {
    malformed_json,
    schema_violation,
    invariant_violation,
    malformed_line,
    out_of_range_coordinate,
    unknown_slice_file,
    missing_prediction,
    empty_input,
    zero_total_support,
    no_tumor_samples,
    insufficient_patients,
    insufficient_normal_pool,
    no_tumor_slices,
    invalid_spec,
    unsupported_pixel_format,
    io_error,
};

std::string_view to_string(errc code) noexcept;

/// Exception carrying an error category, the module that raised it, and a
/// message naming the offending field / line / value.
class Error : public std::runtime_error {
public:
    Error(errc code, std::string_view module, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code),
          module_(module) {}

    errc code() const noexcept { return code_; }
    const std::string& module() const noexcept { return module_; }

    /// Process exit code the CLI should use for this failure.
    int exit_code() const noexcept { return code_ == errc::io_error ? 2 : 1; }

private:
    errc code_;
    std::string module_;
};

}  // namespace ptp
