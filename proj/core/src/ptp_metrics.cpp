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

#include "ptp/ptp_metrics.hpp"

#include <algorithm>

#include <json.hpp>

#include "ptp/error.hpp"
#include "ptp/parallel.hpp"
#include "ptp/stats.hpp"

namespace ptp {

namespace {
constexpr std::string_view kModule = "ptp-metrics";
}

double pstt(const PatientRecord& patient, const PredictionMap& preds, const SliceEvalConfig& cfg) {
    std::size_t indicative = 0;
    for (const auto& slice : patient.slices) {
        const auto it = preds.find(slice.slice_id);
        if (it == preds.end())
            throw Error(errc::missing_prediction, kModule,
                        "no prediction for slice '" + slice.slice_id + "'");
        if (is_tumor_indicative(it->second, cfg)) ++indicative;
    }
    return static_cast<double>(indicative) / static_cast<double>(patient.slices.size());
}

std::vector<PsttSample> pstt_samples(const CohortManifest& cohort, const PredictionMap& preds,
                                     const SliceEvalConfig& cfg) {
    std::vector<PsttSample> samples(cohort.patients.size());
    parallel_for(cohort.patients.size(), [&](std::size_t i) {
        const auto& patient = cohort.patients[i];
        samples[i] = PsttSample{patient.patient_id, pstt(patient, preds, cfg), patient.label};
    });
    return samples;
}

GttCalibration calibrate_gtt(const std::vector<PsttSample>& samples) {
    std::vector<double> tumor_pstt;
    for (const auto& s : samples)
        if (s.label == PatientLabel::Tumor) tumor_pstt.push_back(s.pstt);
    if (tumor_pstt.empty())
        throw Error(errc::no_tumor_samples, kModule, "calibration needs at least one Tumor-labeled sample");

    std::sort(tumor_pstt.begin(), tumor_pstt.end());
    GttCalibration calibration;
    calibration.q1 = quantile_linear_sorted(tumor_pstt, 0.25);
    calibration.median = quantile_linear_sorted(tumor_pstt, 0.5);
    calibration.gtt = (calibration.q1 + calibration.median) / 2.0;
    calibration.sample_pstt = samples;
    return calibration;
}

PatientLabel classify_patient(double pstt_value, double gtt) {
    return pstt_value > gtt ? PatientLabel::Tumor : PatientLabel::Normal;
}

PtpReport ptp_evaluate(const CohortManifest& cohort, const PredictionMap& preds, double gtt,
                       const SliceEvalConfig& cfg) {
    std::vector<PatientVerdict> verdicts(cohort.patients.size());
    std::vector<PatientLabel> labels(cohort.patients.size());
    parallel_for(cohort.patients.size(), [&](std::size_t i) {
        const auto& patient = cohort.patients[i];
        const double value = pstt(patient, preds, cfg);
        verdicts[i] = PatientVerdict{patient.patient_id, value, gtt, classify_patient(value, gtt)};
        labels[i] = patient.label;
    });

    PtpReport report;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const bool actual = labels[i] == PatientLabel::Tumor;
        const bool predicted = verdicts[i].decision == PatientLabel::Tumor;
        if (actual && predicted) ++report.patient_confusion.tp;
        else if (actual) ++report.patient_confusion.fn;
        else if (predicted) ++report.patient_confusion.fp;
        else ++report.patient_confusion.tn;
    }

    const auto& c = report.patient_confusion;
    if (c.total() > 0)
        report.ptp_accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.total());
    report.ptp_precision = precision(c);
    report.ptp_recall = recall(c);
    // F1 stays totally ordered for dashboards: NotApplicable inputs yield 0,
    // with the null precision/recall fields as the annotation.
    if (!report.ptp_precision || !report.ptp_recall)
        report.ptp_f1 = 0.0;
    else
        report.ptp_f1 = f1(report.ptp_precision, report.ptp_recall);

    std::sort(verdicts.begin(), verdicts.end(),
              [](const PatientVerdict& a, const PatientVerdict& b) { return a.patient_id < b.patient_id; });
    report.verdicts = std::move(verdicts);
    return report;
}

namespace {

using nlohmann::json;

json sample_to_json(const PsttSample& sample) {
    return json{{"patient_id", sample.patient_id},
                {"pstt", sample.pstt},
                {"label", to_string(sample.label)}};
}

}  // namespace

std::string gtt_to_json(const GttCalibration& calibration) {
    json j;
    j["gtt"] = calibration.gtt;
    j["q1"] = calibration.q1;
    j["median"] = calibration.median;
    auto samples = json::array();
    for (const auto& s : calibration.sample_pstt) samples.push_back(sample_to_json(s));
    j["sample_pstt"] = std::move(samples);
    return j.dump(2) + "\n";
}

GttCalibration gtt_from_json(std::string_view document) {
    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(errc::malformed_json, kModule,
                    "calibration is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    const auto require = [&](const json& obj, const char* key) -> const json& {
        const auto it = obj.find(key);
        if (it == obj.end())
            throw Error(errc::schema_violation, kModule, std::string("calibration.") + key + " is missing");
        return *it;
    };
    GttCalibration calibration;
    calibration.gtt = require(root, "gtt").get<double>();
    calibration.q1 = require(root, "q1").get<double>();
    calibration.median = require(root, "median").get<double>();
    if (const auto it = root.find("sample_pstt"); it != root.end()) {
        for (const auto& sj : *it) {
            PsttSample sample;
            sample.patient_id = require(sj, "patient_id").get<std::string>();
            sample.pstt = require(sj, "pstt").get<double>();
            const auto label = label_from_string(require(sj, "label").get<std::string>());
            if (!label)
                throw Error(errc::schema_violation, kModule, "sample label must be Tumor|Normal");
            sample.label = *label;
            calibration.sample_pstt.push_back(std::move(sample));
        }
    }
    if (calibration.gtt < 0.0 || calibration.gtt > 1.0)
        throw Error(errc::invariant_violation, kModule, "calibration.gtt out of [0,1]");
    return calibration;
}

}  // namespace ptp
