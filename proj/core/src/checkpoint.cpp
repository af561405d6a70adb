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

#include "aisim/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>

#include "aisim/dataset.hpp"
#include "aisim/errors.hpp"

namespace aisim {
namespace {

constexpr char kMagic[8] = {'A', 'I', 'S', 'I', 'M', 'C', 'K', 'P'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    std::uint8_t buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out_.insert(out_.end(), buf, buf + sizeof(T));
  }
  void put_string(const std::string& s) {
    put(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void put_bytes(const char* p, std::size_t n) { out_.insert(out_.end(), p, p + n); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint8_t buf[sizeof(T)];
    std::memcpy(buf, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
  }
  std::string get_string() {
    const auto n = get<std::uint32_t>();
    need(n);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  void expect_bytes(const char* p, std::size_t n, const char* what) {
    need(n);
    if (std::memcmp(bytes_.data() + pos_, p, n) != 0) throw ParseError(what, pos_);
    pos_ += n;
  }
  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (bytes_.size() - pos_ < n) throw ParseError("checkpoint: truncated", pos_);
  }
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize_checkpoint(const Checkpoint& ckpt) {
  Writer w;
  w.put_bytes(kMagic, sizeof kMagic);
  w.put(kCheckpointVersion);
  w.put_string(format_config(ckpt.run));
  w.put_string(ckpt.rng_id);
  const auto fields = ckpt.params.fields();
  w.put(static_cast<std::uint32_t>(fields.size()));
  for (const auto& f : fields) {
    w.put_string(f.name);
    w.put(static_cast<std::uint8_t>(f.kind));
    w.put(static_cast<std::uint64_t>(f.rows));
    w.put(static_cast<std::uint64_t>(f.cols));
    w.put(static_cast<std::uint64_t>(f.values.size()));
  }
  for (const auto& f : fields)
    for (double v : f.values) w.put(v);
  return w.take();
}

Checkpoint parse_checkpoint(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  r.expect_bytes(kMagic, sizeof kMagic, "checkpoint: bad magic");
  const auto version_pos = r.pos();
  if (r.get<std::uint32_t>() != kCheckpointVersion) {
    throw ParseError("checkpoint: unsupported version", version_pos);
  }
  Checkpoint ckpt;
  ckpt.run = parse_config(r.get_string());
  ckpt.rng_id = r.get_string();
  ckpt.params = ModelParams::zeros(ckpt.run.experiment);
  auto fields = ckpt.params.fields();
  const auto table_pos = r.pos();
  if (r.get<std::uint32_t>() != fields.size()) {
    throw ParseError("checkpoint: field count differs from this build", table_pos);
  }
  for (auto& f : fields) {
    const auto entry_pos = r.pos();
    const std::string name = r.get_string();
    const auto kind = r.get<std::uint8_t>();
    const auto rows = r.get<std::uint64_t>();
    const auto cols = r.get<std::uint64_t>();
    const auto count = r.get<std::uint64_t>();
    if (name != f.name || kind != static_cast<std::uint8_t>(f.kind)) {
      throw ParseError("checkpoint: unexpected field '" + name + "'", entry_pos);
    }
    if (rows != f.rows || cols != f.cols || count != f.values.size()) {
      throw ConfigError("checkpoint: field " + name + " is " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " but the stored config implies " +
                        std::to_string(f.rows) + "x" + std::to_string(f.cols));
    }
  }
  for (auto& f : fields)
    for (double& v : f.values) v = r.get<double>();
  if (!r.done()) throw ParseError("checkpoint: trailing bytes", r.pos());
  return ckpt;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  const auto bytes = serialize_checkpoint(ckpt);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(read_file(path));
}

}  // namespace aisim
