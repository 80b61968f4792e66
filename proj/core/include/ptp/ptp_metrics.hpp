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

#include <string>
#include <vector>

#include "ptp/cohort.hpp"
#include "ptp/slice_metrics.hpp"

namespace ptp {

// Patient-level evaluation: the per-patient tumor-slice ratio (PSTT), the
// global threshold (GTT) calibrated from it, and the four patient-to-patient
// metrics computed over the resulting verdicts.

/// The GTT used when no calibration is supplied.
inline constexpr double kDefaultGtt = 0.04;

struct PsttSample {
    std::string patient_id;
    double pstt = 0.0;
    PatientLabel label = PatientLabel::Normal;

    friend bool operator==(const PsttSample&, const PsttSample&) = default;
};

struct GttCalibration {
    double gtt = 0.0;  // (q1 + median) / 2
    double q1 = 0.0;
    double median = 0.0;
    std::vector<PsttSample> sample_pstt;  // the samples calibration saw

    friend bool operator==(const GttCalibration&, const GttCalibration&) = default;
};

struct PtpReport {
    MetricValue ptp_accuracy;
    MetricValue ptp_precision;
    MetricValue ptp_recall;
    MetricValue ptp_f1;
    ConfusionCounts patient_confusion;
    std::vector<PatientVerdict> verdicts;  // ordered by patient_id

    friend bool operator==(const PtpReport&, const PtpReport&) = default;
};

/// Ratio of tumor-indicative slices to total slices for one patient.
double pstt(const PatientRecord& patient, const PredictionMap& preds, const SliceEvalConfig& cfg);

/// PSTT for every patient of the cohort (computed concurrently, emitted in
/// cohort order).
std::vector<PsttSample> pstt_samples(const CohortManifest& cohort, const PredictionMap& preds,
                                     const SliceEvalConfig& cfg);

/// GTT as the mean of the first quartile and the median of the Tumor-labeled
/// samples' PSTT distribution (linear interpolation of order statistics).
/// Normal-labeled samples are carried through but do not enter the quantiles.
GttCalibration calibrate_gtt(const std::vector<PsttSample>& samples);

/// Tumor iff pstt_value > gtt, strictly; equality is Normal.
PatientLabel classify_patient(double pstt_value, double gtt);

/// Verdicts, patient confusion (positive = Tumor) and the four PTP metrics.
/// PTP-F1 is reported as 0 when precision or recall is NotApplicable; the
/// null inputs are the annotation.
PtpReport ptp_evaluate(const CohortManifest& cohort, const PredictionMap& preds, double gtt,
                       const SliceEvalConfig& cfg);

std::string gtt_to_json(const GttCalibration& calibration);
GttCalibration gtt_from_json(std::string_view document);

}  // namespace ptp
