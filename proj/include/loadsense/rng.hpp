#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace loadsense {

inline constexpr std::uint64_t kDefaultSeed = 7;

/// Purposes of derived random streams; part of the stream key.
enum class Stream : std::uint64_t { Split = 1, Synth = 2 };

/// Independent generator keyed by (root seed, purpose, path...). Identical keys
/// give identical streams regardless of scheduling.
inline std::mt19937_64 derived_stream(std::uint64_t root, Stream purpose,
                                      std::initializer_list<std::uint64_t> path = {}) {
  std::vector<std::uint32_t> words;
  auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(root);
  push(static_cast<std::uint64_t>(purpose));
  for (auto p : path) push(p);
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

}  // namespace loadsense
