// Copyright 2026 The didm-audit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "didm/crypto/curve.hpp"

namespace didm::crypto {

/// sum s_i P_i by bucketed windows; windows run in parallel under OpenMP.
G1 msm(std::span<const G1> points, std::span<const Fr> scalars);

/// Reference: independent scalar multiplications, summed in order.
G1 msm_serial(std::span<const G1> points, std::span<const Fr> scalars);

}  // namespace didm::crypto
