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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aisim/config.hpp"

namespace aisim {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Images of an IDX file: `count` row-major rows x cols byte arrays, back to back.
struct IdxImages {
  std::size_t count = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> bytes;

  std::span<const std::uint8_t> image(std::size_t i) const {
    return std::span(bytes).subspan(i * rows * cols, rows * cols);
  }
};

/// Throws ParseError (with byte offset) on bad magic, truncation or trailing bytes.
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);
/// Labels must be < num_classes.
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes,
                                           std::size_t num_classes = 10);

std::vector<std::uint8_t> serialize_idx_images(const IdxImages& images);
std::vector<std::uint8_t> serialize_idx_labels(std::span<const std::uint8_t> labels);

/// Byte -> [0, 1]; 0 -> 0.0 and 255 -> 1.0 exactly.
inline double normalize_pixel(std::uint8_t v) { return static_cast<double>(v) / 255.0; }

struct LabeledImage {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> pixels;  // row-major
  int label = 0;
};

enum class Split { Train, Test };

/// Labeled images held as raw bytes; scaled to doubles on access.
class Dataset {
 public:
  Dataset() = default;
  Dataset(IdxImages images, std::vector<std::uint8_t> labels, Split split,
          PixelScaling scaling = PixelScaling::Unit);

  /// Reads `train-*` or `t10k-*` IDX files from `dir`. Missing files raise
  /// ConfigError listing the expected paths.
  static Dataset load(const std::filesystem::path& dir, Split split,
                      PixelScaling scaling = PixelScaling::Unit);
  static std::vector<std::filesystem::path> expected_files(const std::filesystem::path& dir,
                                                           Split split);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t height() const noexcept { return images_.rows; }
  std::size_t width() const noexcept { return images_.cols; }
  std::size_t pixels_per_image() const noexcept { return images_.rows * images_.cols; }
  Split split() const noexcept { return split_; }
  int label(std::size_t i) const { return labels_.at(i); }

  /// Writes the scaled pixels of image i into out (size height*width).
  void pixels(std::size_t i, std::span<double> out) const;
  LabeledImage image(std::size_t i) const;

  /// First n items (all when n == 0 or n >= size()).
  Dataset head(std::size_t n) const;
  /// Items at the given indices, in that order.
  Dataset subset(std::span<const std::size_t> indices) const;

  const IdxImages& raw_images() const noexcept { return images_; }
  std::span<const std::uint8_t> raw_labels() const noexcept { return labels_; }

 private:
  IdxImages images_;
  std::vector<std::uint8_t> labels_;
  Split split_ = Split::Train;
  PixelScaling scaling_ = PixelScaling::Unit;
};

/// Reads a whole file. Throws std::runtime_error when it cannot be opened.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

/// Default data directory: $AISIM_DATA_DIR, else "data/fashion-mnist".
std::filesystem::path default_data_dir();

}  // namespace aisim
