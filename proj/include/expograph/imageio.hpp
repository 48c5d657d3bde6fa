#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace expograph {

/// Row-major 8-bit RGB.
struct ImageBuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    ImageBuffer() = default;
    ImageBuffer(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0) {}

    bool valid() const noexcept
    {
        return width >= 0 && height >= 0 && pixels.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3;
    }

    std::uint8_t* at(int x, int y) { return pixels.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3; }
    const std::uint8_t* at(int x, int y) const { return pixels.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3; }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

/// Binary PPM: "P6\n<w> <h>\n255\n" then the raw bytes, row 0 first.
std::vector<std::uint8_t> encode_ppm(const ImageBuffer& img);
void write_ppm(const ImageBuffer& img, std::ostream& out);
ImageBuffer decode_ppm(std::span<const std::uint8_t> bytes);

/// 8-bit RGB PNG with fixed encoder settings.
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);
void write_png(const ImageBuffer& img, std::ostream& out);
ImageBuffer decode_png(std::span<const std::uint8_t> bytes);

/// Writes to a file, picking the encoder by `format` ("ppm" or "png").
void write_image_file(const ImageBuffer& img, const std::string& path, const std::string& format);

} // namespace expograph
