// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#include "didm/util/file.hpp"

#include <fstream>
#include <iterator>

namespace didm {

Bytes read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open " + p.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::filesystem::path& p) {
  const Bytes b = read_file(p);
  return {b.begin(), b.end()};
}

void write_file_atomic(const std::filesystem::path& p, std::span<const std::uint8_t> data) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, p, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

void write_text_atomic(const std::filesystem::path& p, std::string_view text) {
  write_file_atomic(p, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

void write_section(ByteWriter& w, std::string_view tag, std::span<const std::uint8_t> body) {
  if (tag.size() != kSectionTagSize) throw std::invalid_argument("section tags are 8 bytes");
  w.raw(tag);
  w.prefixed(body);
}

std::span<const std::uint8_t> read_section(ByteReader& r, std::string_view tag) {
  const auto t = r.take(kSectionTagSize);
  if (!std::equal(t.begin(), t.end(), tag.begin(), tag.end())) {
    throw DecodeError("expected section " + std::string(tag.substr(0, tag.find('\0'))));
  }
  return r.prefixed();
}

std::string peek_tag(std::span<const std::uint8_t> data) {
  if (data.size() < kSectionTagSize) throw DecodeError("file too short for a section tag");
  return {data.begin(), data.begin() + kSectionTagSize};
}

}  // namespace didm
