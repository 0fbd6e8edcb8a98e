#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "gcdc/arithmetic_coder.hpp"
#include "gcdc/coders.hpp"

namespace gcdc {

inline constexpr std::uint8_t kContainerVersion = 1;

/// "GCDC", version, coder, n (u64 LE), mode, then the bitstream.
/// Learned parameters are not stored; decoding them needs the model file.
struct Container {
  CoderId coder = CoderId::LabeledIid;
  CodingMode mode = CodingMode::Universal;
  std::uint64_t node_count = 0;
  Bitstream stream;

  friend bool operator==(const Container&, const Container&) = default;
};

void write_container(std::ostream& out, const Container& c);
Container read_container(std::istream& in);

void save_container(const std::string& path, const Container& c);
Container load_container(const std::string& path);

}  // namespace gcdc
