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
#include <filesystem>
#include <vector>

namespace ptp {

/// 8-bit interleaved pixel buffer, grayscale (1 channel) or RGB (3 channels),
/// row-major from the top-left.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> pixels;

    static ImageBuffer make(int width, int height, int channels, std::uint8_t fill = 0);

    std::uint8_t& at(int x, int y, int c) {
        return pixels[static_cast<std::size_t>((y * width + x) * channels + c)];
    }
    std::uint8_t at(int x, int y, int c) const {
        return pixels[static_cast<std::size_t>((y * width + x) * channels + c)];
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

/// PNG decode; palette/alpha/16-bit inputs are converted to 8-bit gray or RGB.
ImageBuffer read_png(const std::filesystem::path& path);

/// PNG encode of a gray or RGB buffer.
void write_png(const std::filesystem::path& path, const ImageBuffer& image);

}  // namespace ptp
