#include "expograph/imageio.hpp"

#include "expograph/errors.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include <png.h>

namespace expograph {

namespace {

void require_valid(const ImageBuffer& img)
{
    if (!img.valid())
        throw InvalidParameter("image buffer size does not match its dimensions");
}

void write_bytes(std::ostream& out, const std::vector<std::uint8_t>& bytes)
{
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out)
        throw IoFailure("failed to write image stream");
}

} // namespace

std::vector<std::uint8_t> encode_ppm(const ImageBuffer& img)
{
    require_valid(img);
    const std::string header = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

void write_ppm(const ImageBuffer& img, std::ostream& out)
{
    write_bytes(out, encode_ppm(img));
}

ImageBuffer decode_ppm(std::span<const std::uint8_t> bytes)
{
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < bytes.size() && std::isspace(bytes[pos]))
            ++pos;
        std::string t;
        while (pos < bytes.size() && !std::isspace(bytes[pos]))
            t.push_back(static_cast<char>(bytes[pos++]));
        return t;
    };
    if (token() != "P6")
        throw IoFailure("not a binary PPM");
    int w = 0, h = 0, maxval = 0;
    try {
        w = std::stoi(token());
        h = std::stoi(token());
        maxval = std::stoi(token());
    } catch (const std::exception&) {
        throw IoFailure("malformed PPM header");
    }
    if (maxval != 255 || w < 0 || h < 0)
        throw IoFailure("unsupported PPM header");
    ++pos;  // single whitespace after maxval
    ImageBuffer img(w, h);
    if (bytes.size() < pos + img.pixels.size())
        throw IoFailure("truncated PPM data");
    std::memcpy(img.pixels.data(), bytes.data() + pos, img.pixels.size());
    return img;
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img)
{
    require_valid(img);
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width);
    image.height = static_cast<png_uint_32>(img.height);
    image.format = PNG_FORMAT_RGB;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels.data(), 0, nullptr))
        throw IoFailure(std::string("PNG sizing failed: ") + image.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&image, out.data(), &size, 0, img.pixels.data(), 0, nullptr))
        throw IoFailure(std::string("PNG encoding failed: ") + image.message);
    out.resize(size);
    return out;
}

void write_png(const ImageBuffer& img, std::ostream& out)
{
    write_bytes(out, encode_png(img));
}

ImageBuffer decode_png(std::span<const std::uint8_t> bytes)
{
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()))
        throw IoFailure(std::string("PNG decoding failed: ") + image.message);
    image.format = PNG_FORMAT_RGB;
    ImageBuffer img(static_cast<int>(image.width), static_cast<int>(image.height));
    if (!png_image_finish_read(&image, nullptr, img.pixels.data(), 0, nullptr)) {
        png_image_free(&image);
        throw IoFailure(std::string("PNG decoding failed: ") + image.message);
    }
    return img;
}

void write_image_file(const ImageBuffer& img, const std::string& path, const std::string& format)
{
    std::vector<std::uint8_t> bytes;
    if (format == "ppm")
        bytes = encode_ppm(img);
    else if (format == "png")
        bytes = encode_png(img);
    else
        throw InvalidParameter("unknown image format '" + format + "'");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoFailure("cannot open '" + path + "' for writing");
    write_bytes(out, bytes);
}

} // namespace expograph
