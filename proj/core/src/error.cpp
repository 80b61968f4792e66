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

#include "ptp/error.hpp"

namespace ptp {

std::string_view to_string(errc code) noexcept {
    switch (code) {
        case errc::malformed_json: return "MalformedJson";
        case errc::schema_violation: return "SchemaViolation";
        case errc::invariant_violation: return "InvariantViolation";
        case errc::malformed_line: return "MalformedLine";
        case errc::out_of_range_coordinate: return "OutOfRangeCoordinate";
        case errc::unknown_slice_file: return "UnknownSliceFile";
        case errc::missing_prediction: return "MissingPrediction";
        case errc::empty_input: return "EmptyInput";
        case errc::zero_total_support: return "ZeroTotalSupport";
        case errc::no_tumor_samples: return "NoTumorSamples";
        case errc::insufficient_patients: return "InsufficientPatients";
        case errc::insufficient_normal_pool: return "InsufficientNormalPool";
        case errc::no_tumor_slices: return "NoTumorSlices";
        case errc::invalid_spec: return "InvalidSpec";
        case errc::unsupported_pixel_format: return "UnsupportedPixelFormat";
        case errc::io_error: return "IoError";
    }
    return "UnknownError";
}

}  // namespace ptp
