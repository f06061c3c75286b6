#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rsh/image.hpp"

namespace rsh {

enum class ImageFormat { png, jpeg, ppm, pgm };

/// Sniffs the content, not the extension. PNG, JPEG and binary PNM with
/// maxval <= 255 are accepted; 16-bit data is rejected with UnsupportedDepth.
Image decode_image(std::span<const std::uint8_t> bytes);
Image load_image(const std::filesystem::path& path);

/// Lossless encoders only. JPEG is refused with UnsupportedFormat.
std::vector<std::uint8_t> encode_image(const Image& img, ImageFormat format);

/// Format from the extension (.png, .ppm, .pgm; case-insensitive).
ImageFormat output_format_for(const std::filesystem::path& path);

/// Encodes by extension and writes the file, creating parent directories.
void save_image(const Image& img, const std::filesystem::path& path);

/// Recursive listing of supported image files relative to `root`, sorted by
/// byte order of the generic path. Symlinks are not followed.
std::vector<std::string> list_dataset(const std::filesystem::path& root);

bool has_supported_extension(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace rsh
