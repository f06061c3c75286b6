#include "rsh/imgio.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

// jpeglib.h expects size_t and FILE to be declared first.
#include <jpeglib.h>

#include "rsh/error.hpp"

namespace fs = std::filesystem;

namespace rsh {
namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

// ---------------------------------------------------------------------------
// PNG

Image decode_png(std::span<const std::uint8_t> bytes) {
  // IHDR is always the first chunk: signature(8) length(4) type(4) w(4) h(4) depth(1) color(1)
  if (bytes.size() < 33 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
    throw Error(ErrorCode::CorruptFile, "PNG header is truncated or malformed");
  }
  const int bit_depth = bytes[24];
  const int color_type = bytes[25];
  if (bit_depth == 16) {
    throw Error(ErrorCode::UnsupportedDepth, "16-bit PNG images are not supported");
  }
  if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA || color_type == PNG_COLOR_TYPE_RGB_ALPHA) {
    throw Error(ErrorCode::UnsupportedFormat, "PNG images with an alpha channel are not supported");
  }

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (png_image_begin_read_from_memory(&image, bytes.data(), bytes.size()) == 0) {
    throw Error(ErrorCode::CorruptFile, std::string("PNG decode failed: ") + image.message);
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const int channels = color ? 3 : 1;
  if (image.width > static_cast<png_uint_32>(1 << 20) ||
      image.height > static_cast<png_uint_32>(1 << 20)) {
    png_image_free(&image);
    throw Error(ErrorCode::CorruptFile, "PNG dimensions are implausibly large");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  const png_uint_32 width = image.width;
  const png_uint_32 height = image.height;
  if (png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr) == 0) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::CorruptFile, "PNG decode failed: " + message);
  }
  return Image(static_cast<int>(width), static_cast<int>(height), channels, std::move(pixels));
}

std::vector<std::uint8_t> encode_png(const Image& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = img.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  png_alloc_size_t size = 0;
  if (png_image_write_to_memory(&image, nullptr, &size, 0, img.data().data(), 0, nullptr) == 0) {
    throw Error(ErrorCode::IoFailure, std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (png_image_write_to_memory(&image, out.data(), &size, 0, img.data().data(), 0, nullptr) ==
      0) {
    throw Error(ErrorCode::IoFailure, std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

// ---------------------------------------------------------------------------
// JPEG (decode only)

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

void jpeg_silence(j_common_ptr, int) {}

// Only trivially destructible locals live between setjmp and the last libjpeg
// call; `pixels` is constructed before setjmp so the jump never skips it.
bool decode_jpeg_raw(std::span<const std::uint8_t> bytes, std::vector<std::uint8_t>& pixels,
                     int& width, int& height, int& channels, char* message) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = jpeg_error_exit;
  err.base.emit_message = jpeg_silence;
  err.message[0] = '\0';

  if (setjmp(err.jump)) {
    std::strncpy(message, err.message, JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
    std::strncpy(message, "CMYK JPEG images are not supported", JMSG_LENGTH_MAX);
    jpeg_destroy_decompress(&cinfo);
    return false;
  }
  cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);
  width = static_cast<int>(cinfo.output_width);
  height = static_cast<int>(cinfo.output_height);
  channels = cinfo.output_components;
  pixels.resize(static_cast<std::size_t>(width) * height * channels);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = pixels.data() + stride * cinfo.output_scanline;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return true;
}

Image decode_jpeg(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> pixels;
  int width = 0, height = 0, channels = 0;
  char message[JMSG_LENGTH_MAX] = {};
  if (!decode_jpeg_raw(bytes, pixels, width, height, channels, message)) {
    const std::string text = message;
    if (text.find("CMYK") != std::string::npos) {
      throw Error(ErrorCode::UnsupportedFormat, text);
    }
    throw Error(ErrorCode::CorruptFile, "JPEG decode failed: " + text);
  }
  return Image(width, height, channels, std::move(pixels));
}

// ---------------------------------------------------------------------------
// Binary PNM (P5 / P6)

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Whitespace and '#' comments may precede each header integer.
  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "PNM header is malformed");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > (1L << 24)) throw Error(ErrorCode::CorruptFile, "PNM header value too large");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "PNM header is not terminated");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  const int channels = bytes[1] == '6' ? 3 : 1;
  PnmHeaderReader reader(bytes);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (width < 1 || height < 1) throw Error(ErrorCode::CorruptFile, "PNM has empty dimensions");
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::CorruptFile, "PNM maxval is invalid");
  if (maxval > 255) {
    throw Error(ErrorCode::UnsupportedDepth, "16-bit PNM images are not supported");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  if (bytes.size() - offset < count) {
    throw Error(ErrorCode::CorruptFile, "PNM raster is truncated");
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + count));
  if (maxval != 255) {
    for (auto& v : pixels) {
      if (v > maxval) throw Error(ErrorCode::CorruptFile, "PNM sample exceeds maxval");
      v = quantize(v * 255.0 / static_cast<double>(maxval));
    }
  }
  return Image(static_cast<int>(width), static_cast<int>(height), channels, std::move(pixels));
}

std::vector<std::uint8_t> encode_pnm(const Image& img, ImageFormat format) {
  const int expected = format == ImageFormat::ppm ? 3 : 1;
  if (img.channels() != expected) {
    throw Error(ErrorCode::UnsupportedFormat,
                std::string(format == ImageFormat::ppm ? "PPM" : "PGM") + " output needs " +
                    std::to_string(expected) + " channel(s), image has " +
                    std::to_string(img.channels()));
  }
  const std::string header = std::string(format == ImageFormat::ppm ? "P6" : "P5") + "\n" +
                             std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.data().begin(), img.data().end());
  return out;
}

}  // namespace

Image decode_image(std::span<const std::uint8_t> bytes) {
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) {
    return decode_png(bytes);
  }
  if (bytes.size() >= 3 && bytes[0] == 0xFF && bytes[1] == 0xD8 && bytes[2] == 0xFF) {
    return decode_jpeg(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') {
    throw Error(ErrorCode::UnsupportedFormat, "only binary PPM (P6) and PGM (P5) are supported");
  }
  throw Error(ErrorCode::UnsupportedFormat, "unrecognized image format");
}

Image load_image(const fs::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode_image(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.generic_string() + ": " + e.what(), e.field());
  }
}

std::vector<std::uint8_t> encode_image(const Image& img, ImageFormat format) {
  switch (format) {
    case ImageFormat::png: return encode_png(img);
    case ImageFormat::ppm:
    case ImageFormat::pgm: return encode_pnm(img, format);
    case ImageFormat::jpeg: break;
  }
  throw Error(ErrorCode::UnsupportedFormat,
              "JPEG output is not supported: lossy encoding would break digest replay; "
              "write .png, .ppm or .pgm instead");
}

ImageFormat output_format_for(const fs::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") return ImageFormat::png;
  if (ext == ".ppm") return ImageFormat::ppm;
  if (ext == ".pgm") return ImageFormat::pgm;
  if (ext == ".jpg" || ext == ".jpeg") {
    throw Error(ErrorCode::UnsupportedFormat,
                "JPEG output is not supported: lossy encoding would break digest replay; "
                "write .png, .ppm or .pgm instead");
  }
  throw Error(ErrorCode::UnsupportedFormat,
              "cannot infer output format from extension '" + ext + "'");
}

void save_image(const Image& img, const fs::path& path) {
  write_file(path, encode_image(img, output_format_for(path)));
}

bool has_supported_extension(const fs::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".ppm" || ext == ".pgm";
}

std::vector<std::string> list_dataset(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw Error(ErrorCode::IoFailure, "input root is not a directory: " + root.string());
  }
  std::vector<std::string> paths;
  fs::recursive_directory_iterator it(root, fs::directory_options::none, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot list " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) throw Error(ErrorCode::IoFailure, "cannot list " + root.string() + ": " + ec.message());
    const auto& entry = *it;
    if (entry.is_symlink(ec)) {
      continue;
    }
    if (entry.is_regular_file(ec) && has_supported_extension(entry.path())) {
      paths.push_back(entry.path().lexically_relative(root).generic_string());
    }
  }
  // std::string comparison is byte order.
  std::sort(paths.begin(), paths.end());
  return paths;
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  return bytes;
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw Error(ErrorCode::IoFailure,
                  "cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
}

}  // namespace rsh
