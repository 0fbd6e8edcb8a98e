#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace gcdc {

/// Append-only bit sequence. Bits are packed MSB-first within each byte.
class Bitstream {
 public:
  void push_back(bool bit);
  bool operator[](std::uint64_t i) const { return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u; }
  std::uint64_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

  /// 8-byte little-endian bit count, then the packed bits zero-padded to a byte.
  void write(std::ostream& out) const;
  static Bitstream read(std::istream& in);
  static Bitstream from_bytes(std::vector<std::uint8_t> bytes, std::uint64_t bit_count);

  friend bool operator==(const Bitstream&, const Bitstream&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t size_ = 0;
};

/// Integer frequency table over symbols 0..size()-1 with total <= 2^32 - 1.
class FrequencyTable {
 public:
  static constexpr std::uint64_t kMaxTotal = 0xFFFFFFFFull;

  /// Uniform over [0, total) without materializing a table.
  static FrequencyTable uniform(std::uint64_t total);

  /// Quantizes a (not necessarily normalized) distribution given as log2
  /// weights. Every finite weight gets frequency >= 1; -inf means "outside
  /// the support" and gets frequency 0.
  static FrequencyTable from_log2_weights(std::span<const double> log2_weights);

  /// Explicit integer frequencies (mostly for tests).
  static FrequencyTable from_counts(std::span<const std::uint32_t> counts);

  std::size_t size() const noexcept { return uniform_ ? static_cast<std::size_t>(total_) : cumulative_.size() - 1; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t low(std::size_t symbol) const noexcept { return uniform_ ? symbol : cumulative_[symbol]; }
  std::uint64_t frequency(std::size_t symbol) const noexcept {
    return uniform_ ? 1 : cumulative_[symbol + 1] - cumulative_[symbol];
  }
  /// Symbol whose interval [low, low + frequency) contains target.
  std::size_t find(std::uint64_t target) const;

 private:
  bool uniform_ = false;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> cumulative_;
};

/// Binary arithmetic coder (Witten-Neal-Cleary renormalization) with 62-bit
/// state and 128-bit interval arithmetic, so any table with total <= 2^32 - 1
/// is coded with negligible rounding loss. A finished stream costs at most two
/// bits beyond the information content of the coded symbols.
class ArithmeticEncoder {
 public:
  /// Throws std::invalid_argument if symbol is out of range or has frequency 0.
  void encode(const FrequencyTable& table, std::size_t symbol);
  void encode_range(std::uint64_t low, std::uint64_t frequency, std::uint64_t total);
  Bitstream finish();

 private:
  void emit(bool bit);

  std::uint64_t low_ = 0;
  std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
  std::uint64_t pending_ = 0;
  Bitstream out_;
};

class ArithmeticDecoder {
 public:
  explicit ArithmeticDecoder(const Bitstream& in);

  /// Throws DecodeError when the stream is exhausted or inconsistent.
  std::size_t decode(const FrequencyTable& table);

  /// Bits consumed past the end of the stream (zero padding).
  std::uint64_t overrun() const noexcept { return position_ > in_->size() ? position_ - in_->size() : 0; }

 private:
  bool next_bit();

  const Bitstream* in_;
  std::uint64_t position_ = 0;
  std::uint64_t low_ = 0;
  std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
  std::uint64_t value_ = 0;
};

}  // namespace gcdc
