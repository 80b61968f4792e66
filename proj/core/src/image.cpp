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

#include "ptp/image.hpp"

#include <png.h>

#include "ptp/error.hpp"

namespace ptp {

namespace {
constexpr std::string_view kModule = "image";
}

ImageBuffer ImageBuffer::make(int width, int height, int channels, std::uint8_t fill) {
    if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
        throw Error(errc::unsupported_pixel_format, kModule,
                    "buffers must be positive-sized with 1 or 3 channels");
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.pixels.assign(static_cast<std::size_t>(width) * height * channels, fill);
    return img;
}

ImageBuffer read_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str()))
        throw Error(errc::io_error, kModule,
                    "cannot read PNG '" + path.string() + "': " + png.message);

    const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    ImageBuffer img = ImageBuffer::make(static_cast<int>(png.width), static_cast<int>(png.height),
                                        color ? 3 : 1);
    if (!png_image_finish_read(&png, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&png);
        throw Error(errc::io_error, kModule,
                    "cannot decode PNG '" + path.string() + "': " + png.message);
    }
    return img;
}

void write_png(const std::filesystem::path& path, const ImageBuffer& image) {
    if (image.channels != 1 && image.channels != 3)
        throw Error(errc::unsupported_pixel_format, kModule,
                    "PNG output supports 1 or 3 channels, got " + std::to_string(image.channels));
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec)
            throw Error(errc::io_error, kModule,
                        "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = image.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.pixels.data(), 0, nullptr))
        throw Error(errc::io_error, kModule,
                    "cannot write PNG '" + path.string() + "': " + png.message);
}

}  // namespace ptp
