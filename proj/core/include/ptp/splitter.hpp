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
#include <string>
#include <vector>

#include "ptp/cohort.hpp"

namespace ptp {

// Clinically realistic train/test partition: whole-patient test selection by
// smallest archive size, slice-level 1:9 tumor-to-normal pairing for the
// training set. Plans are a pure function of (cohort, config); the sampling
// generator is std::mt19937_64 with in-repo integer draws, so a seed fixes
// the plan bit-for-bit across platforms.

struct SplitConfig {
    std::uint32_t ratio_normal_per_tumor = 9;
    std::uint32_t test_normal_count = 27;
    std::uint32_t test_tumor_count = 3;
    std::uint64_t seed = 0;
    /// Admit tumor patients' tumor-free slices into the training normal pool.
    bool include_tumor_free_slices = false;
};

struct SplitPlan {
    std::vector<std::string> test_patients;
    std::vector<std::string> train_tumor_slices;
    std::vector<std::string> train_normal_slices;
    std::uint64_t seed = 0;

    friend bool operator==(const SplitPlan&, const SplitPlan&) = default;
};

/// The test_normal_count Normal and test_tumor_count Tumor patients with the
/// smallest archive_bytes, ties broken by ascending patient_id. Returned as
/// selected normals then selected tumors, each group in (bytes, id) order.
std::vector<std::string> select_test_patients(const CohortManifest& cohort, const SplitConfig& cfg);

/// Training set over the non-test patients: every gt-positive slice of tumor
/// patients, paired with ratio x as many normal slices sampled uniformly
/// without replacement from the eligible pool (Normal patients' slices, plus
/// tumor patients' tumor-free slices when configured).
SplitPlan build_training_set(const CohortManifest& cohort, const std::vector<std::string>& test_ids,
                             const SplitConfig& cfg);

/// select_test_patients + build_training_set in one call.
SplitPlan make_split(const CohortManifest& cohort, const SplitConfig& cfg);

/// Count arithmetic only: |train_normal| = ratio x |train_tumor| and
/// |test_patients| = test_normal_count + test_tumor_count.
bool verify_ratio(const SplitPlan& plan, const SplitConfig& cfg);

/// Label-aware check: additionally verifies the test set holds exactly the
/// configured number of Normal and Tumor patients of the cohort.
bool verify_ratio(const SplitPlan& plan, const CohortManifest& cohort, const SplitConfig& cfg);

std::string split_plan_to_json(const SplitPlan& plan);
SplitPlan split_plan_from_json(std::string_view document);

}  // namespace ptp
