// Copyright 2026 The aisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aisim/dataset.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "aisim/errors.hpp"

namespace aisim {
namespace {

// Fashion-MNIST training-set pixel statistics on the [0, 1] scale.
constexpr double kPixelMean = 0.2860;
constexpr double kPixelStd = 0.3530;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  if (offset + 4 > bytes.size()) throw ParseError("idx: truncated header", bytes.size());
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void check_magic(std::span<const std::uint8_t> bytes, std::uint32_t expected) {
  const std::uint32_t magic = read_be32(bytes, 0);
  if (magic != expected) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "idx: magic 0x%08x, expected 0x%08x", magic, expected);
    throw ParseError(buf, 0);
  }
}

void check_payload(std::span<const std::uint8_t> bytes, std::size_t header, std::size_t payload) {
  if (bytes.size() < header + payload) {
    throw ParseError("idx: payload truncated, need " + std::to_string(payload) + " bytes",
                     bytes.size());
  }
  if (bytes.size() > header + payload) {
    throw ParseError("idx: trailing bytes after payload", header + payload);
  }
}

}  // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
  check_magic(bytes, kIdxImageMagic);
  IdxImages out;
  out.count = read_be32(bytes, 4);
  out.rows = read_be32(bytes, 8);
  out.cols = read_be32(bytes, 12);
  const std::size_t payload = out.count * out.rows * out.cols;
  check_payload(bytes, 16, payload);
  out.bytes.assign(bytes.begin() + 16, bytes.end());
  return out;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes,
                                           std::size_t num_classes) {
  check_magic(bytes, kIdxLabelMagic);
  const std::size_t count = read_be32(bytes, 4);
  check_payload(bytes, 8, count);
  std::vector<std::uint8_t> labels(bytes.begin() + 8, bytes.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_classes) {
      throw ParseError("idx: label " + std::to_string(labels[i]) + " out of range", 8 + i);
    }
  }
  return labels;
}

std::vector<std::uint8_t> serialize_idx_images(const IdxImages& images) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + images.bytes.size());
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(images.count));
  write_be32(out, static_cast<std::uint32_t>(images.rows));
  write_be32(out, static_cast<std::uint32_t>(images.cols));
  out.insert(out.end(), images.bytes.begin(), images.bytes.end());
  return out;
}

std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels) {
  std::vector<std::uint8_t> out;
  out.reserve(8 + labels.size());
  write_be32(out, kIdxLabelMagic);
  write_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

Dataset::Dataset(IdxImages images, std::vector<std::uint8_t> labels, Split split,
                 PixelScaling scaling)
    : images_(std::move(images)), labels_(std::move(labels)), split_(split), scaling_(scaling) {
  if (images_.count != labels_.size()) {
    throw ConfigError("dataset: " + std::to_string(images_.count) + " images but " +
                      std::to_string(labels_.size()) + " labels");
  }
}

std::vector<std::filesystem::path> Dataset::expected_files(const std::filesystem::path& dir,
                                                           Split split) {
  const std::string prefix = split == Split::Train ? "train" : "t10k";
  return {dir / (prefix + "-images-idx3-ubyte"), dir / (prefix + "-labels-idx1-ubyte")};
}

Dataset Dataset::load(const std::filesystem::path& dir, Split split, PixelScaling scaling) {
  const auto files = expected_files(dir, split);
  for (const auto& f : files) {
    if (!std::filesystem::exists(f)) {
      throw ConfigError("dataset file missing: expected " + files[0].string() + " and " +
                        files[1].string());
    }
  }
  IdxImages images = parse_idx_images(read_file(files[0]));
  std::vector<std::uint8_t> labels = parse_idx_labels(read_file(files[1]));
  return Dataset(std::move(images), std::move(labels), split, scaling);
}

void Dataset::pixels(std::size_t i, std::span<double> out) const {
  const auto img = images_.image(i);
  if (out.size() != img.size()) throw ConfigError("dataset: pixel buffer size mismatch");
  for (std::size_t p = 0; p < img.size(); ++p) {
    const double v = normalize_pixel(img[p]);
    out[p] = scaling_ == PixelScaling::Unit ? v : (v - kPixelMean) / kPixelStd;
  }
}

LabeledImage Dataset::image(std::size_t i) const {
  LabeledImage li;
  li.height = height();
  li.width = width();
  li.pixels.resize(pixels_per_image());
  pixels(i, li.pixels);
  li.label = label(i);
  return li;
}

Dataset Dataset::head(std::size_t n) const {
  if (n == 0 || n >= size()) return *this;
  IdxImages imgs;
  imgs.count = n;
  imgs.rows = images_.rows;
  imgs.cols = images_.cols;
  imgs.bytes.assign(images_.bytes.begin(),
                    images_.bytes.begin() + static_cast<std::ptrdiff_t>(n * pixels_per_image()));
  return Dataset(std::move(imgs),
                 std::vector<std::uint8_t>(labels_.begin(),
                                           labels_.begin() + static_cast<std::ptrdiff_t>(n)),
                 split_, scaling_);
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  IdxImages imgs;
  imgs.count = indices.size();
  imgs.rows = images_.rows;
  imgs.cols = images_.cols;
  std::vector<std::uint8_t> labels;
  for (std::size_t i : indices) {
    const auto img = images_.image(i);
    imgs.bytes.insert(imgs.bytes.end(), img.begin(), img.end());
    labels.push_back(labels_.at(i));
  }
  return Dataset(std::move(imgs), std::move(labels), split_, scaling_);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(in.tellg()));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!in) throw std::runtime_error("read failed: " + path.string());
  return bytes;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("AISIM_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "data/fashion-mnist";
}

}  // namespace aisim
