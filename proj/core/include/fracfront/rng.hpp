#pragma once

#include <array>
#include <cstdint>

namespace fracfront {

// Philox4x32-10 counter-based block cipher (Salmon et al. 2011).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

// Two independent N(0, 1) draws from one Philox block by Box-Muller.
std::array<double, 2> normal_pair(const PhiloxCounter& ctr, const PhiloxKey& key);

}  // namespace fracfront
