// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "didm/crypto/curve.hpp"
#include "didm/util/bytes.hpp"

namespace didm::crypto {

// Field-order wire helpers: points are u32-length-prefixed compressed
// encodings, scalars are 32 bytes little-endian.

inline void write_scalar(ByteWriter& w, const Fr& s) { w.raw(s.to_bytes_le()); }

inline Fr read_scalar(ByteReader& r) {
  auto s = Fr::from_bytes_le(r.take(32));
  if (!s) throw EncodingError("scalar not reduced");
  return *s;
}

inline void write_g1(ByteWriter& w, const G1& p) { w.prefixed(encode_g1(p)); }
inline G1 read_g1(ByteReader& r) { return decode_g1(r.prefixed()); }
inline void write_g2(ByteWriter& w, const G2& p) { w.prefixed(encode_g2(p)); }
inline G2 read_g2(ByteReader& r) { return decode_g2(r.prefixed()); }

}  // namespace didm::crypto
