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

#include "ptp/cohort.hpp"

#include <unordered_set>

#include <json.hpp>

#include "ptp/error.hpp"

namespace ptp {

namespace {

constexpr std::string_view kModule = "cohort";

[[noreturn]] void fail(const std::string& message) {
    throw Error(errc::invariant_violation, kModule, message);
}

}  // namespace

std::string_view to_string(Modality m) noexcept {
    switch (m) {
        case Modality::MRI_T1: return "MRI_T1";
        case Modality::MRI_T2: return "MRI_T2";
        case Modality::MRI_DWI: return "MRI_DWI";
        case Modality::PET: return "PET";
        case Modality::CT: return "CT";
        case Modality::UNKNOWN: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string_view to_string(PatientLabel l) noexcept {
    return l == PatientLabel::Tumor ? "Tumor" : "Normal";
}

std::optional<Modality> modality_from_string(std::string_view s) noexcept {
    if (s == "MRI_T1") return Modality::MRI_T1;
    if (s == "MRI_T2") return Modality::MRI_T2;
    if (s == "MRI_DWI") return Modality::MRI_DWI;
    if (s == "PET") return Modality::PET;
    if (s == "CT") return Modality::CT;
    if (s == "UNKNOWN") return Modality::UNKNOWN;
    return std::nullopt;
}

std::optional<PatientLabel> label_from_string(std::string_view s) noexcept {
    if (s == "Tumor") return PatientLabel::Tumor;
    if (s == "Normal") return PatientLabel::Normal;
    return std::nullopt;
}

std::size_t CohortManifest::slice_count() const noexcept {
    std::size_t n = 0;
    for (const auto& p : patients) n += p.slices.size();
    return n;
}

void validate_box(const DetectionBox& box, const std::string& path) {
    if (box.class_id < 0) fail(path + ".class_id must be non-negative");
    if (box.cx < 0.0 || box.cx > 1.0) fail(path + ".cx out of [0,1]");
    if (box.cy < 0.0 || box.cy > 1.0) fail(path + ".cy out of [0,1]");
    if (box.w <= 0.0 || box.w > 1.0) fail(path + ".w out of (0,1]");
    if (box.h <= 0.0 || box.h > 1.0) fail(path + ".h out of (0,1]");
    if (box.confidence && (*box.confidence < 0.0 || *box.confidence > 1.0))
        fail(path + ".confidence out of [0,1]");
}

void validate_slice(const SliceRecord& slice, const std::string& path) {
    if (slice.slice_id.empty()) fail(path + ".slice_id is empty");
    if (slice.patient_id.empty()) fail(path + ".patient_id is empty");
    if (slice.relative_path.empty()) fail(path + ".relative_path is empty");
    for (std::size_t b = 0; b < slice.gt_boxes.size(); ++b)
        validate_box(slice.gt_boxes[b], path + ".gt_boxes[" + std::to_string(b) + "]");
}

void validate_patient(const PatientRecord& patient, const std::string& path) {
    if (patient.patient_id.empty()) fail(path + ".patient_id is empty");
    if (patient.slices.empty()) fail(path + ".slices is empty (a patient needs at least one slice)");
    std::uint64_t total = 0;
    for (std::size_t s = 0; s < patient.slices.size(); ++s) {
        const auto& slice = patient.slices[s];
        const std::string slice_path = path + ".slices[" + std::to_string(s) + "]";
        validate_slice(slice, slice_path);
        if (slice.patient_id != patient.patient_id)
            fail(slice_path + ".patient_id '" + slice.patient_id + "' does not match patient '" +
                 patient.patient_id + "'");
        if (patient.label == PatientLabel::Normal && !slice.gt_boxes.empty())
            fail(slice_path + ": Normal patient '" + patient.patient_id + "' has ground-truth boxes");
        total += slice.byte_size;
    }
    if (patient.archive_bytes != total)
        fail(path + ".archive_bytes " + std::to_string(patient.archive_bytes) +
             " does not equal slice byte total " + std::to_string(total));
}

void validate_manifest(const CohortManifest& cohort) {
    std::unordered_set<std::string> patient_ids;
    std::unordered_set<std::string> slice_ids;
    for (std::size_t p = 0; p < cohort.patients.size(); ++p) {
        const auto& patient = cohort.patients[p];
        const std::string path = "patients[" + std::to_string(p) + "]";
        validate_patient(patient, path);
        if (!patient_ids.insert(patient.patient_id).second)
            fail(path + ".patient_id duplicate '" + patient.patient_id + "'");
        for (const auto& slice : patient.slices) {
            if (!slice_ids.insert(slice.slice_id).second)
                fail(path + ": duplicate slice_id '" + slice.slice_id + "'");
        }
    }
}

void validate_verdict(const PatientVerdict& verdict) {
    if (verdict.pstt < 0.0 || verdict.pstt > 1.0) fail("verdict.pstt out of [0,1]");
    if (verdict.gtt_used < 0.0 || verdict.gtt_used > 1.0) fail("verdict.gtt_used out of [0,1]");
    const bool should_be_tumor = verdict.pstt > verdict.gtt_used;
    if ((verdict.decision == PatientLabel::Tumor) != should_be_tumor)
        fail("verdict.decision inconsistent with pstt/gtt comparison for '" + verdict.patient_id + "'");
}

namespace {

nlohmann::json box_to_json(const DetectionBox& box) {
    nlohmann::json j{{"class_id", box.class_id}, {"cx", box.cx}, {"cy", box.cy},
                     {"w", box.w},               {"h", box.h}};
    if (box.confidence) j["confidence"] = *box.confidence;
    return j;
}

}  // namespace

std::string manifest_to_json(const CohortManifest& cohort) {
    nlohmann::json j;
    j["cohort_id"] = cohort.cohort_id;
    j["created_at"] = cohort.created_at;
    auto patients = nlohmann::json::array();
    for (const auto& patient : cohort.patients) {
        nlohmann::json pj;
        pj["patient_id"] = patient.patient_id;
        pj["label"] = to_string(patient.label);
        pj["archive_bytes"] = patient.archive_bytes;
        auto slices = nlohmann::json::array();
        for (const auto& slice : patient.slices) {
            nlohmann::json sj;
            sj["slice_id"] = slice.slice_id;
            sj["patient_id"] = slice.patient_id;
            sj["relative_path"] = slice.relative_path;
            sj["modality"] = to_string(slice.modality);
            sj["byte_size"] = slice.byte_size;
            auto boxes = nlohmann::json::array();
            for (const auto& box : slice.gt_boxes) boxes.push_back(box_to_json(box));
            sj["gt_boxes"] = std::move(boxes);
            slices.push_back(std::move(sj));
        }
        pj["slices"] = std::move(slices);
        patients.push_back(std::move(pj));
    }
    j["patients"] = std::move(patients);
    return j.dump(2) + "\n";
}

CohortManifest filter_by_modality(const CohortManifest& cohort, const std::set<Modality>& keep) {
    CohortManifest out;
    out.cohort_id = cohort.cohort_id;
    out.created_at = cohort.created_at;
    for (const auto& patient : cohort.patients) {
        PatientRecord kept;
        kept.patient_id = patient.patient_id;
        kept.label = patient.label;
        for (const auto& slice : patient.slices) {
            if (keep.contains(slice.modality)) {
                kept.slices.push_back(slice);
                kept.archive_bytes += slice.byte_size;
            }
        }
        if (!kept.slices.empty()) out.patients.push_back(std::move(kept));
    }
    return out;
}

}  // namespace ptp
