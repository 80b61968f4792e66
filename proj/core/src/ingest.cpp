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

#include "ptp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include <json.hpp>

#include "ptp/error.hpp"
#include "ptp/io.hpp"

namespace ptp {

namespace {

constexpr std::string_view kModule = "ingest";

using nlohmann::json;

const json& require_field(const json& obj, const char* key, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw Error(errc::schema_violation, kModule, path + "." + key + " is missing");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& field = require_field(obj, key, path);
    if (!field.is_string())
        throw Error(errc::schema_violation, kModule, path + "." + key + " must be a string");
    return field.get<std::string>();
}

std::uint64_t require_uint(const json& obj, const char* key, const std::string& path) {
    const json& field = require_field(obj, key, path);
    if (!field.is_number_unsigned())
        throw Error(errc::schema_violation, kModule, path + "." + key + " must be a non-negative integer");
    return field.get<std::uint64_t>();
}

double require_number(const json& obj, const char* key, const std::string& path) {
    const json& field = require_field(obj, key, path);
    if (!field.is_number())
        throw Error(errc::schema_violation, kModule, path + "." + key + " must be a number");
    return field.get<double>();
}

DetectionBox box_from_json(const json& j, const std::string& path, bool conf_required) {
    if (!j.is_object()) throw Error(errc::schema_violation, kModule, path + " must be an object");
    DetectionBox box;
    const json& cls = require_field(j, "class_id", path);
    if (!cls.is_number_integer() || cls.get<std::int64_t>() < 0)
        throw Error(errc::schema_violation, kModule, path + ".class_id must be a non-negative integer");
    box.class_id = cls.get<int>();
    box.cx = require_number(j, "cx", path);
    box.cy = require_number(j, "cy", path);
    box.w = require_number(j, "w", path);
    box.h = require_number(j, "h", path);
    if (const auto it = j.find("confidence"); it != j.end()) {
        if (!it->is_number())
            throw Error(errc::schema_violation, kModule, path + ".confidence must be a number");
        box.confidence = it->get<double>();
    } else if (conf_required) {
        throw Error(errc::schema_violation, kModule, path + ".confidence is missing");
    }
    return box;
}

}  // namespace

CohortManifest parse_manifest(std::string_view document) {
    json root;
    try {
        root = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(errc::malformed_json, kModule,
                    "manifest is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!root.is_object())
        throw Error(errc::schema_violation, kModule, "manifest root must be an object");

    CohortManifest cohort;
    cohort.cohort_id = require_string(root, "cohort_id", "manifest");
    cohort.created_at = require_string(root, "created_at", "manifest");

    const json& patients = require_field(root, "patients", "manifest");
    if (!patients.is_array())
        throw Error(errc::schema_violation, kModule, "manifest.patients must be an array");

    for (std::size_t p = 0; p < patients.size(); ++p) {
        const json& pj = patients[p];
        const std::string ppath = "patients[" + std::to_string(p) + "]";
        if (!pj.is_object()) throw Error(errc::schema_violation, kModule, ppath + " must be an object");

        PatientRecord patient;
        patient.patient_id = require_string(pj, "patient_id", ppath);
        const std::string label = require_string(pj, "label", ppath);
        const auto parsed_label = label_from_string(label);
        if (!parsed_label)
            throw Error(errc::schema_violation, kModule,
                        ppath + ".label '" + label + "' is not one of Tumor|Normal");
        patient.label = *parsed_label;

        const json& slices = require_field(pj, "slices", ppath);
        if (!slices.is_array())
            throw Error(errc::schema_violation, kModule, ppath + ".slices must be an array");
        std::uint64_t byte_total = 0;
        for (std::size_t s = 0; s < slices.size(); ++s) {
            const json& sj = slices[s];
            const std::string spath = ppath + ".slices[" + std::to_string(s) + "]";
            if (!sj.is_object()) throw Error(errc::schema_violation, kModule, spath + " must be an object");
            SliceRecord slice;
            slice.slice_id = require_string(sj, "slice_id", spath);
            slice.patient_id = require_string(sj, "patient_id", spath);
            slice.relative_path = require_string(sj, "relative_path", spath);
            const std::string modality = require_string(sj, "modality", spath);
            const auto parsed_modality = modality_from_string(modality);
            if (!parsed_modality)
                throw Error(errc::schema_violation, kModule,
                            spath + ".modality '" + modality + "' is not a known modality");
            slice.modality = *parsed_modality;
            slice.byte_size = require_uint(sj, "byte_size", spath);
            byte_total += slice.byte_size;
            if (const auto it = sj.find("gt_boxes"); it != sj.end()) {
                if (!it->is_array())
                    throw Error(errc::schema_violation, kModule, spath + ".gt_boxes must be an array");
                for (std::size_t b = 0; b < it->size(); ++b)
                    slice.gt_boxes.push_back(box_from_json(
                        (*it)[b], spath + ".gt_boxes[" + std::to_string(b) + "]", /*conf_required=*/false));
            }
            patient.slices.push_back(std::move(slice));
        }
        // archive_bytes may be omitted, in which case it is derived from the
        // slice sum; a present-but-wrong value is an invariant violation.
        if (const auto it = pj.find("archive_bytes"); it != pj.end()) {
            if (!it->is_number_unsigned())
                throw Error(errc::schema_violation, kModule,
                            ppath + ".archive_bytes must be a non-negative integer");
            patient.archive_bytes = it->get<std::uint64_t>();
        } else {
            patient.archive_bytes = byte_total;
        }
        cohort.patients.push_back(std::move(patient));
    }

    validate_manifest(cohort);
    return cohort;
}

namespace {

double parse_coordinate(std::string_view token, std::size_t line_no, bool is_extent) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw Error(errc::malformed_line, kModule,
                    "line " + std::to_string(line_no) + ": '" + std::string(token) + "' is not a number");
    if (value < 0.0 || value > 1.0 || (is_extent && value == 0.0))
        throw Error(errc::out_of_range_coordinate, kModule,
                    "line " + std::to_string(line_no) + ": value " + std::string(token) +
                        " outside " + (is_extent ? "(0,1]" : "[0,1]"));
    return value;
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

SlicePrediction parse_yolo_text(std::string_view slice_id, std::string_view text, bool conf_required) {
    SlicePrediction pred;
    pred.slice_id = std::string(slice_id);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 6 && !(tokens.size() == 5 && !conf_required))
            throw Error(errc::malformed_line, kModule,
                        "line " + std::to_string(line_no) + ": expected " +
                            (conf_required ? "6" : "5 or 6") + " fields, got " +
                            std::to_string(tokens.size()));

        DetectionBox box;
        unsigned cls = 0;
        const auto [ptr, ec] = std::from_chars(tokens[0].data(), tokens[0].data() + tokens[0].size(), cls);
        if (ec != std::errc{} || ptr != tokens[0].data() + tokens[0].size())
            throw Error(errc::malformed_line, kModule,
                        "line " + std::to_string(line_no) + ": class '" + std::string(tokens[0]) +
                            "' is not a non-negative integer");
        box.class_id = static_cast<int>(cls);
        box.cx = parse_coordinate(tokens[1], line_no, false);
        box.cy = parse_coordinate(tokens[2], line_no, false);
        box.w = parse_coordinate(tokens[3], line_no, true);
        box.h = parse_coordinate(tokens[4], line_no, true);
        if (tokens.size() == 6) box.confidence = parse_coordinate(tokens[5], line_no, false);
        pred.boxes.push_back(box);
    }
    return pred;
}

SlicePrediction parse_json_prediction(std::string_view slice_id, std::string_view text,
                                      bool conf_required) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(errc::malformed_json, kModule,
                    "prediction is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!root.is_array())
        throw Error(errc::schema_violation, kModule, "prediction root must be an array of boxes");
    SlicePrediction pred;
    pred.slice_id = std::string(slice_id);
    for (std::size_t b = 0; b < root.size(); ++b) {
        DetectionBox box = box_from_json(root[b], "boxes[" + std::to_string(b) + "]", conf_required);
        validate_box(box, "boxes[" + std::to_string(b) + "]");
        pred.boxes.push_back(box);
    }
    return pred;
}

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

}  // namespace

SlicePrediction parse_prediction_file(std::string_view slice_id, std::string_view text,
                                      const PredictionFileFormat& format) {
    if (format.style == PredictionFileFormat::Style::JSON)
        return parse_json_prediction(slice_id, text, format.conf_required);
    return parse_yolo_text(slice_id, text, format.conf_required);
}

std::string prediction_to_text(const SlicePrediction& pred) {
    std::string out;
    for (const auto& box : pred.boxes) {
        out += std::to_string(box.class_id);
        out += ' ';
        out += format_double(box.cx);
        out += ' ';
        out += format_double(box.cy);
        out += ' ';
        out += format_double(box.w);
        out += ' ';
        out += format_double(box.h);
        if (box.confidence) {
            out += ' ';
            out += format_double(*box.confidence);
        }
        out += '\n';
    }
    return out;
}

std::string prediction_relative_path(const SliceRecord& slice) {
    const std::string& rel = slice.relative_path;
    const std::size_t slash = rel.find_last_of('/');
    const std::size_t dot = rel.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return rel + ".txt";
    return rel.substr(0, dot) + ".txt";
}

ScanResult scan_prediction_dir(const std::filesystem::path& root, const CohortManifest& cohort,
                               bool strict) {
    namespace fs = std::filesystem;
    if (!fs::exists(root))
        throw Error(errc::io_error, kModule, "prediction directory '" + root.string() + "' does not exist");

    std::unordered_map<std::string, const SliceRecord*> expected;
    for (const auto& patient : cohort.patients)
        for (const auto& slice : patient.slices) expected[prediction_relative_path(slice)] = &slice;

    ScanResult result;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), root).generic_string();
        const auto it = expected.find(rel);
        if (it == expected.end()) {
            if (entry.path().extension() == ".txt") {
                if (strict)
                    throw Error(errc::unknown_slice_file, kModule,
                                "'" + rel + "' matches no slice in the manifest");
                result.unknown_files.push_back(rel);
            }
            continue;
        }
        const std::string text = read_text_file(entry.path());
        try {
            result.predictions[it->second->slice_id] = parse_prediction_file(it->second->slice_id, text);
        } catch (const Error& e) {
            throw Error(e.code(), kModule, "'" + rel + "': " + e.what());
        }
    }

    // Slices with no file on disk are empty predictions.
    for (const auto& patient : cohort.patients)
        for (const auto& slice : patient.slices)
            if (!result.predictions.contains(slice.slice_id))
                result.predictions[slice.slice_id] = SlicePrediction{slice.slice_id, {}};

    std::sort(result.unknown_files.begin(), result.unknown_files.end());
    return result;
}

CohortManifest compute_archive_sizes(CohortManifest cohort) {
    for (auto& patient : cohort.patients) {
        std::uint64_t total = 0;
        for (const auto& slice : patient.slices) total += slice.byte_size;
        patient.archive_bytes = total;
    }
    return cohort;
}

}  // namespace ptp
