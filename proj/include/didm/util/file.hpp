// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "didm/util/bytes.hpp"

namespace didm {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Bytes read_file(const std::filesystem::path& p);
std::string read_text(const std::filesystem::path& p);

/// Writes to a sibling temporary and renames over the target.
void write_file_atomic(const std::filesystem::path& p, std::span<const std::uint8_t> data);
void write_text_atomic(const std::filesystem::path& p, std::string_view text);

inline constexpr std::size_t kSectionTagSize = 8;

/// 8-byte ASCII tag, u32 length, body.
void write_section(ByteWriter& w, std::string_view tag, std::span<const std::uint8_t> body);
/// Throws DecodeError unless the next section carries `tag`.
std::span<const std::uint8_t> read_section(ByteReader& r, std::string_view tag);
/// Tag of the first section without consuming it.
std::string peek_tag(std::span<const std::uint8_t> data);

}  // namespace didm
