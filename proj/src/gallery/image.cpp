#include "planesearch/gallery/image.hpp"

#include <png.h>
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstring>

namespace planesearch::gallery {

std::array<std::uint8_t, 3> Image::pixel(int x, int y) const {
  if (x < 0 || y < 0 || x >= width || y >= height) throw std::out_of_range("Image::pixel: outside the image");
  const std::size_t k = 3 * (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x));
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

namespace {

void check_dimensions(std::uint64_t width, std::uint64_t height) {
  if (width < 1 || height < 1) throw ImageDecodeError("image has zero size");
  if (width * height > max_image_pixels)
    throw ImageDecodeError("image exceeds " + std::to_string(max_image_pixels) + " pixels");
}

Image decode_png(const std::string& bytes) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()))
    throw ImageDecodeError(std::string("invalid PNG: ") + png.message);
  try {
    check_dimensions(png.width, png.height);
  } catch (...) {
    png_image_free(&png);
    throw;
  }
  png.format = PNG_FORMAT_RGB;
  Image out;
  out.width = static_cast<int>(png.width);
  out.height = static_cast<int>(png.height);
  out.rgb.resize(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, out.rgb.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw ImageDecodeError("invalid PNG: " + message);
  }
  return out;
}

struct JpegError {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegError*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

// Returns an empty message on success. Only `out` (owned by the caller) and
// libjpeg state change after setjmp, so nothing here is left indeterminate.
std::string read_jpeg(const std::string& bytes, Image& out) {
  jpeg_decompress_struct cinfo;
  JpegError err;
  cinfo.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_error_exit;
  err.message[0] = '\0';
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    return std::string("invalid JPEG: ") + err.message;
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  const std::uint64_t width = cinfo.image_width, height = cinfo.image_height;
  if (width < 1 || height < 1 || width * height > max_image_pixels) {
    jpeg_destroy_decompress(&cinfo);
    return width * height > max_image_pixels ? "image exceeds " + std::to_string(max_image_pixels) + " pixels"
                                             : "image has zero size";
  }
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  out.width = static_cast<int>(cinfo.output_width);
  out.height = static_cast<int>(cinfo.output_height);
  out.rgb.resize(static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height) * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * out.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return {};
}

Image decode_jpeg(const std::string& bytes) {
  Image out;
  const std::string failure = read_jpeg(bytes, out);
  if (!failure.empty()) throw ImageDecodeError(failure);
  return out;
}

}  // namespace

Image decode_image(const std::string& bytes) {
  static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), png_sig, 8) == 0) return decode_png(bytes);
  if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xff &&
      static_cast<unsigned char>(bytes[1]) == 0xd8 && static_cast<unsigned char>(bytes[2]) == 0xff)
    return decode_jpeg(bytes);
  throw ImageDecodeError("unsupported image format (expected PNG or JPEG)");
}

std::string encode_png(const Image& image) {
  check_dimensions(static_cast<std::uint64_t>(image.width), static_cast<std::uint64_t>(image.height));
  if (image.rgb.size() != static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height) * 3)
    throw std::invalid_argument("encode_png: pixel buffer does not match dimensions");
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.rgb.data(), 0, nullptr))
    throw std::runtime_error(std::string("encode_png: ") + png.message);
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.rgb.data(), 0, nullptr))
    throw std::runtime_error(std::string("encode_png: ") + png.message);
  out.resize(size);
  return out;
}

std::uint8_t quantize(double value) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(value, 0.0, 1.0) * 255.0));
}

Image render(const Image& image, const EnhanceParams& params) {
  Image out = image;
  for (std::size_t k = 0; k + 2 < image.rgb.size(); k += 3) {
    const Rgb in{image.rgb[k] / 255.0, image.rgb[k + 1] / 255.0, image.rgb[k + 2] / 255.0};
    const Rgb c = apply_enhancement(in, params);
    for (std::size_t ch = 0; ch < 3; ++ch) out.rgb[k + ch] = quantize(c[ch]);
  }
  return out;
}

}  // namespace planesearch::gallery
