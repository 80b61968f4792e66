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

#include <optional>
#include <string>
#include <vector>

#include "ptp/cohort.hpp"
#include "ptp/ingest.hpp"

namespace ptp {

// Slice-level classification of detector predictions into tumor-indicative /
// normal, and the confusion-derived metrics. A ratio with an empty
// denominator is NotApplicable — an explicit reportable value distinct from
// zero, carried as an empty optional.

using MetricValue = std::optional<double>;

struct SliceEvalConfig {
    double conf_threshold = 0.25;
    unsigned min_boxes = 1;
};

struct ClassMetrics {
    MetricValue precision;
    MetricValue recall;
    MetricValue f1;
    std::uint64_t support = 0;

    friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

/// True iff at least cfg.min_boxes boxes reach cfg.conf_threshold.
bool is_tumor_indicative(const SlicePrediction& pred, const SliceEvalConfig& cfg);

/// Slice-level confusion over the whole cohort: ground truth is positive iff
/// gt_boxes is non-empty, the prediction is positive per is_tumor_indicative.
ConfusionCounts confusion(const PredictionMap& preds, const CohortManifest& cohort,
                          const SliceEvalConfig& cfg);

MetricValue precision(const ConfusionCounts& c);
MetricValue recall(const ConfusionCounts& c);

/// Harmonic mean; 0 when p + r = 0; NotApplicable propagates.
MetricValue f1(MetricValue p, MetricValue r);

/// Support-weighted average of per-class rows; support is summed. Rows with
/// zero support carry no weight; a NotApplicable metric in any weighted row
/// makes the averaged metric NotApplicable.
ClassMetrics weighted_average(const std::vector<ClassMetrics>& rows);

struct ClassMetricsRow {
    std::string class_name;
    ClassMetrics metrics;

    friend bool operator==(const ClassMetricsRow&, const ClassMetricsRow&) = default;
};

/// Tumor and Normal rows (Normal treats the negative class as positive),
/// ready for the report table.
std::vector<ClassMetricsRow> per_class_rows(const ConfusionCounts& c);

}  // namespace ptp
