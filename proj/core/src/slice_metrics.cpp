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

#include "ptp/slice_metrics.hpp"

#include "ptp/error.hpp"
#include "ptp/parallel.hpp"

namespace ptp {

namespace {
constexpr std::string_view kModule = "slice-metrics";
}

bool is_tumor_indicative(const SlicePrediction& pred, const SliceEvalConfig& cfg) {
    unsigned hits = 0;
    for (const auto& box : pred.boxes) {
        if (box.confidence && *box.confidence >= cfg.conf_threshold) {
            if (++hits >= cfg.min_boxes) return true;
        }
    }
    return false;
}

ConfusionCounts confusion(const PredictionMap& preds, const CohortManifest& cohort,
                          const SliceEvalConfig& cfg) {
    std::vector<const SliceRecord*> slices;
    slices.reserve(cohort.slice_count());
    for (const auto& patient : cohort.patients)
        for (const auto& slice : patient.slices) slices.push_back(&slice);

    // Per-slice outcomes land in fixed slots, so the tally is independent of
    // how the work is partitioned.
    enum class Outcome : unsigned char { TP, FP, TN, FN };
    std::vector<Outcome> outcomes(slices.size());
    std::vector<const SlicePrediction*> looked_up(slices.size());
    for (std::size_t i = 0; i < slices.size(); ++i) {
        const auto it = preds.find(slices[i]->slice_id);
        if (it == preds.end())
            throw Error(errc::missing_prediction, kModule,
                        "no prediction for slice '" + slices[i]->slice_id + "'");
        looked_up[i] = &it->second;
    }
    parallel_for(slices.size(), [&](std::size_t i) {
        const bool gt_positive = !slices[i]->gt_boxes.empty();
        const bool predicted = is_tumor_indicative(*looked_up[i], cfg);
        outcomes[i] = gt_positive ? (predicted ? Outcome::TP : Outcome::FN)
                                  : (predicted ? Outcome::FP : Outcome::TN);
    });

    ConfusionCounts counts;
    for (const Outcome o : outcomes) {
        switch (o) {
            case Outcome::TP: ++counts.tp; break;
            case Outcome::FP: ++counts.fp; break;
            case Outcome::TN: ++counts.tn; break;
            case Outcome::FN: ++counts.fn; break;
        }
    }
    return counts;
}

MetricValue precision(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fp;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

MetricValue recall(const ConfusionCounts& c) {
    const std::uint64_t denom = c.tp + c.fn;
    if (denom == 0) return std::nullopt;
    return static_cast<double>(c.tp) / static_cast<double>(denom);
}

MetricValue f1(MetricValue p, MetricValue r) {
    if (!p || !r) return std::nullopt;
    const double sum = *p + *r;
    if (sum == 0.0) return 0.0;
    return 2.0 * (*p) * (*r) / sum;
}

ClassMetrics weighted_average(const std::vector<ClassMetrics>& rows) {
    if (rows.empty()) throw Error(errc::empty_input, kModule, "weighted_average of no rows");
    std::uint64_t total_support = 0;
    for (const auto& row : rows) total_support += row.support;
    if (total_support == 0)
        throw Error(errc::zero_total_support, kModule, "weighted_average with zero total support");

    const auto average = [&](MetricValue ClassMetrics::* field) -> MetricValue {
        double acc = 0.0;
        for (const auto& row : rows) {
            if (row.support == 0) continue;
            const MetricValue& v = row.*field;
            if (!v) return std::nullopt;
            acc += *v * static_cast<double>(row.support);
        }
        return acc / static_cast<double>(total_support);
    };

    ClassMetrics out;
    out.precision = average(&ClassMetrics::precision);
    out.recall = average(&ClassMetrics::recall);
    out.f1 = average(&ClassMetrics::f1);
    out.support = total_support;
    return out;
}

std::vector<ClassMetricsRow> per_class_rows(const ConfusionCounts& c) {
    ClassMetrics tumor;
    tumor.precision = precision(c);
    tumor.recall = recall(c);
    tumor.f1 = f1(tumor.precision, tumor.recall);
    tumor.support = c.tp + c.fn;

    // The Normal row scores the same predictions with Normal as the positive
    // class, which swaps tp<->tn and fp<->fn.
    const ConfusionCounts swapped{c.tn, c.fn, c.tp, c.fp};
    ClassMetrics normal;
    normal.precision = precision(swapped);
    normal.recall = recall(swapped);
    normal.f1 = f1(normal.precision, normal.recall);
    normal.support = swapped.tp + swapped.fn;

    return {{"Tumor", tumor}, {"Normal", normal}};
}

}  // namespace ptp
