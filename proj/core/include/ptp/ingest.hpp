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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ptp/cohort.hpp"

namespace ptp {

// Parsers for cohort manifests, per-slice prediction files, and prediction
// directory trees. Everything returned here has already passed the cohort
// invariant checks.

struct PredictionFileFormat {
    enum class Style { YOLO_TXT, JSON };
    Style style = Style::YOLO_TXT;
    bool conf_required = true;
};

/// Parses and validates a canonical manifest JSON document.
CohortManifest parse_manifest(std::string_view document);

/// Parses one per-image prediction file. YOLO_TXT lines are
/// `class cx cy w h conf` (conf optional when !conf_required); the JSON style
/// is an array of DetectionBox objects. A blank file is an empty prediction.
SlicePrediction parse_prediction_file(std::string_view slice_id, std::string_view text,
                                      const PredictionFileFormat& format = {});

/// Text form of a prediction in the YOLO grammar; parse_prediction_file of
/// the output reproduces the input exactly (shortest round-trip decimals).
std::string prediction_to_text(const SlicePrediction& pred);

/// Prediction file location for a slice: relative_path with the image
/// extension replaced by .txt.
std::string prediction_relative_path(const SliceRecord& slice);

using PredictionMap = std::map<std::string, SlicePrediction>;

struct ScanResult {
    PredictionMap predictions;               // one entry per manifest slice
    std::vector<std::string> unknown_files;  // .txt files matching no slice
};

/// Reads every slice's prediction from `root`. Slices with no file on disk
/// map to an empty prediction (the detector emitted nothing). Stray .txt
/// files are collected into unknown_files, or raise UnknownSliceFile when
/// strict. Result is independent of directory traversal order.
ScanResult scan_prediction_dir(const std::filesystem::path& root, const CohortManifest& cohort,
                               bool strict = false);

/// Cohort with every patient's archive_bytes recomputed as the sum of its
/// slice byte sizes. Idempotent.
CohortManifest compute_archive_sizes(CohortManifest cohort);

}  // namespace ptp
