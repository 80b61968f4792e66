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

#include "ptp/splitter.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ptp/error.hpp"
#include "ptp/rng.hpp"

namespace ptp {

namespace {

constexpr std::string_view kModule = "splitter";

std::vector<const PatientRecord*> sorted_by_size(const CohortManifest& cohort, PatientLabel label) {
    std::vector<const PatientRecord*> patients;
    for (const auto& p : cohort.patients)
        if (p.label == label) patients.push_back(&p);
    std::sort(patients.begin(), patients.end(), [](const PatientRecord* a, const PatientRecord* b) {
        if (a->archive_bytes != b->archive_bytes) return a->archive_bytes < b->archive_bytes;
        return a->patient_id < b->patient_id;
    });
    return patients;
}

}  // namespace

std::vector<std::string> select_test_patients(const CohortManifest& cohort, const SplitConfig& cfg) {
    const auto normals = sorted_by_size(cohort, PatientLabel::Normal);
    const auto tumors = sorted_by_size(cohort, PatientLabel::Tumor);
    if (normals.size() < cfg.test_normal_count)
        throw Error(errc::insufficient_patients, kModule,
                    "need " + std::to_string(cfg.test_normal_count) + " Normal patients, have " +
                        std::to_string(normals.size()));
    if (tumors.size() < cfg.test_tumor_count)
        throw Error(errc::insufficient_patients, kModule,
                    "need " + std::to_string(cfg.test_tumor_count) + " Tumor patients, have " +
                        std::to_string(tumors.size()));

    std::vector<std::string> selected;
    selected.reserve(cfg.test_normal_count + cfg.test_tumor_count);
    for (std::uint32_t i = 0; i < cfg.test_normal_count; ++i) selected.push_back(normals[i]->patient_id);
    for (std::uint32_t i = 0; i < cfg.test_tumor_count; ++i) selected.push_back(tumors[i]->patient_id);
    return selected;
}

SplitPlan build_training_set(const CohortManifest& cohort, const std::vector<std::string>& test_ids,
                             const SplitConfig& cfg) {
    std::unordered_set<std::string> test_set(test_ids.begin(), test_ids.end());
    std::unordered_map<std::string, const PatientRecord*> by_id;
    for (const auto& p : cohort.patients) by_id[p.patient_id] = &p;
    for (const auto& id : test_ids)
        if (!by_id.contains(id))
            throw Error(errc::invariant_violation, kModule, "test patient '" + id + "' is not in the cohort");

    // Train patients in ascending id order so the plan does not depend on
    // manifest ordering.
    std::vector<const PatientRecord*> train_patients;
    for (const auto& p : cohort.patients)
        if (!test_set.contains(p.patient_id)) train_patients.push_back(&p);
    std::sort(train_patients.begin(), train_patients.end(),
              [](const PatientRecord* a, const PatientRecord* b) { return a->patient_id < b->patient_id; });

    SplitPlan plan;
    plan.seed = cfg.seed;
    plan.test_patients = test_ids;

    std::vector<std::string> normal_pool;
    for (const PatientRecord* patient : train_patients) {
        for (const auto& slice : patient->slices) {
            const bool positive = !slice.gt_boxes.empty();
            if (patient->label == PatientLabel::Tumor) {
                if (positive)
                    plan.train_tumor_slices.push_back(slice.slice_id);
                else if (cfg.include_tumor_free_slices)
                    normal_pool.push_back(slice.slice_id);
            } else {
                normal_pool.push_back(slice.slice_id);
            }
        }
    }
    if (plan.train_tumor_slices.empty())
        throw Error(errc::no_tumor_slices, kModule, "no gt-positive slices among non-test patients");

    const std::size_t need = plan.train_tumor_slices.size() * cfg.ratio_normal_per_tumor;
    if (normal_pool.size() < need)
        throw Error(errc::insufficient_normal_pool, kModule,
                    "need " + std::to_string(need) + " normal slices, pool has " +
                        std::to_string(normal_pool.size()));

    // Canonical pool order before sampling; the draw is then a pure function
    // of the seed.
    std::sort(normal_pool.begin(), normal_pool.end());
    Rng rng(cfg.seed);
    const auto picks = rng.sample_indices(normal_pool.size(), need);
    plan.train_normal_slices.reserve(need);
    for (const std::size_t idx : picks) plan.train_normal_slices.push_back(normal_pool[idx]);
    return plan;
}

SplitPlan make_split(const CohortManifest& cohort, const SplitConfig& cfg) {
    return build_training_set(cohort, select_test_patients(cohort, cfg), cfg);
}

bool verify_ratio(const SplitPlan& plan, const SplitConfig& cfg) {
    if (plan.train_normal_slices.size() !=
        plan.train_tumor_slices.size() * static_cast<std::size_t>(cfg.ratio_normal_per_tumor))
        return false;
    return plan.test_patients.size() ==
           static_cast<std::size_t>(cfg.test_normal_count) + cfg.test_tumor_count;
}

bool verify_ratio(const SplitPlan& plan, const CohortManifest& cohort, const SplitConfig& cfg) {
    if (!verify_ratio(plan, cfg)) return false;
    std::unordered_map<std::string, PatientLabel> labels;
    for (const auto& p : cohort.patients) labels.emplace(p.patient_id, p.label);
    std::uint32_t normals = 0;
    std::uint32_t tumors = 0;
    for (const auto& id : plan.test_patients) {
        const auto it = labels.find(id);
        if (it == labels.end()) return false;
        if (it->second == PatientLabel::Tumor) ++tumors;
        else ++normals;
    }
    return normals == cfg.test_normal_count && tumors == cfg.test_tumor_count;
}

std::string split_plan_to_json(const SplitPlan& plan) {
    nlohmann::json j;
    j["seed"] = plan.seed;
    j["test_patients"] = plan.test_patients;
    j["train_tumor_slices"] = plan.train_tumor_slices;
    j["train_normal_slices"] = plan.train_normal_slices;
    return j.dump(2) + "\n";
}

SplitPlan split_plan_from_json(std::string_view document) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(errc::malformed_json, kModule,
                    "plan is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    const auto require = [&](const char* key) -> const nlohmann::json& {
        const auto it = root.find(key);
        if (it == root.end())
            throw Error(errc::schema_violation, kModule, std::string("plan.") + key + " is missing");
        return *it;
    };
    SplitPlan plan;
    plan.seed = require("seed").get<std::uint64_t>();
    plan.test_patients = require("test_patients").get<std::vector<std::string>>();
    plan.train_tumor_slices = require("train_tumor_slices").get<std::vector<std::string>>();
    plan.train_normal_slices = require("train_normal_slices").get<std::vector<std::string>>();
    return plan;
}

}  // namespace ptp
