#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dismed {

inline constexpr std::string_view kStreamName = "mt19937_64/seed_seq(seed,stream,index)";

// Independent engine for (seed, stream, index). Every draw gets its own
// engine, so results do not depend on evaluation order or thread count.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace dismed
