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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ptp {

// Domain vocabulary shared by every pipeline stage: patients, slices, boxes,
// labels, verdicts. All types are plain immutable-by-convention values, safe
// to share across concurrent readers; validation happens at construction
// boundaries (parsers, generators) through validate_* below.

enum class Modality { MRI_T1, MRI_T2, MRI_DWI, PET, CT, UNKNOWN };

enum class PatientLabel { Tumor, Normal };

std::string_view to_string(Modality m) noexcept;
std::string_view to_string(PatientLabel l) noexcept;
std::optional<Modality> modality_from_string(std::string_view s) noexcept;
std::optional<PatientLabel> label_from_string(std::string_view s) noexcept;

/// Center-format normalized box. Confidence is absent on ground-truth boxes.
struct DetectionBox {
    int class_id = 0;
    double cx = 0.0;
    double cy = 0.0;
    double w = 0.0;
    double h = 0.0;
    std::optional<double> confidence;

    friend bool operator==(const DetectionBox&, const DetectionBox&) = default;
};

struct SliceRecord {
    std::string slice_id;
    std::string patient_id;
    std::string relative_path;
    Modality modality = Modality::UNKNOWN;
    std::uint64_t byte_size = 0;
    std::vector<DetectionBox> gt_boxes;  // empty for normal slices

    friend bool operator==(const SliceRecord&, const SliceRecord&) = default;
};

struct PatientRecord {
    std::string patient_id;
    PatientLabel label = PatientLabel::Normal;
    std::vector<SliceRecord> slices;
    std::uint64_t archive_bytes = 0;  // sum of slice byte sizes

    friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

struct CohortManifest {
    std::string cohort_id;
    std::vector<PatientRecord> patients;
    std::string created_at;  // ISO-8601 UTC

    friend bool operator==(const CohortManifest&, const CohortManifest&) = default;

    std::size_t slice_count() const noexcept;
};

/// Detector output for one image.
struct SlicePrediction {
    std::string slice_id;
    std::vector<DetectionBox> boxes;  // may be empty (normal prediction)

    friend bool operator==(const SlicePrediction&, const SlicePrediction&) = default;
};

struct PatientVerdict {
    std::string patient_id;
    double pstt = 0.0;
    double gtt_used = 0.0;
    PatientLabel decision = PatientLabel::Normal;  // Tumor iff pstt > gtt_used

    friend bool operator==(const PatientVerdict&, const PatientVerdict&) = default;
};

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t tn = 0;
    std::uint64_t fn = 0;

    std::uint64_t total() const noexcept { return tp + fp + tn + fn; }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

// Invariant checks. Each throws Error{invariant_violation} with a message
// naming the offending field; `path` prefixes the field path in messages.
void validate_box(const DetectionBox& box, const std::string& path);
void validate_slice(const SliceRecord& slice, const std::string& path);
void validate_patient(const PatientRecord& patient, const std::string& path);
void validate_manifest(const CohortManifest& cohort);
void validate_verdict(const PatientVerdict& verdict);

/// Canonical manifest document (sorted keys, 2-space indent).
std::string manifest_to_json(const CohortManifest& cohort);

/// Restriction of a cohort to the given modalities. Patients left with no
/// slices are dropped; archive sizes are recomputed over the kept slices.
CohortManifest filter_by_modality(const CohortManifest& cohort, const std::set<Modality>& keep);

}  // namespace ptp
