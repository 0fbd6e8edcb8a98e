#include "gcdc/arithmetic_coder.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "gcdc/errors.hpp"

namespace gcdc {
namespace {

constexpr int kPrecision = 62;
constexpr std::uint64_t kTop = (std::uint64_t{1} << kPrecision) - 1;
constexpr std::uint64_t kHalf = std::uint64_t{1} << (kPrecision - 1);
constexpr std::uint64_t kQuarter = std::uint64_t{1} << (kPrecision - 2);
constexpr std::uint64_t kThreeQuarters = kHalf + kQuarter;

using u128 = unsigned __int128;

}  // namespace

// ---------------------------------------------------------------------------
// Bitstream

void Bitstream::push_back(bool bit) {
  if ((size_ & 7) == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (size_ & 7));
  ++size_;
}

void Bitstream::write(std::ostream& out) const {
  std::uint8_t header[8];
  for (int i = 0; i < 8; ++i) header[i] = static_cast<std::uint8_t>(size_ >> (8 * i));
  out.write(reinterpret_cast<const char*>(header), 8);
  out.write(reinterpret_cast<const char*>(bytes_.data()), static_cast<std::streamsize>(bytes_.size()));
}

Bitstream Bitstream::read(std::istream& in) {
  std::uint8_t header[8];
  if (!in.read(reinterpret_cast<char*>(header), 8)) throw ParseError("bitstream: missing length header");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= std::uint64_t{header[i]} << (8 * i);
  if (bits > (std::numeric_limits<std::uint64_t>::max() - 7)) throw ParseError("bitstream: invalid length");
  const std::uint64_t nbytes = (bits + 7) / 8;
  std::vector<std::uint8_t> bytes;
  // Grow in chunks so a lying header cannot force a huge allocation.
  constexpr std::uint64_t kChunk = 1 << 20;
  while (bytes.size() < nbytes) {
    const std::uint64_t want = std::min<std::uint64_t>(kChunk, nbytes - bytes.size());
    const std::size_t old = bytes.size();
    bytes.resize(old + want);
    if (!in.read(reinterpret_cast<char*>(bytes.data() + old), static_cast<std::streamsize>(want)))
      throw ParseError("bitstream: truncated (declared " + std::to_string(bits) + " bits)");
  }
  return from_bytes(std::move(bytes), bits);
}

Bitstream Bitstream::from_bytes(std::vector<std::uint8_t> bytes, std::uint64_t bit_count) {
  if (bytes.size() != (bit_count + 7) / 8) throw ParseError("bitstream: byte count does not match bit count");
  Bitstream s;
  s.bytes_ = std::move(bytes);
  s.size_ = bit_count;
  if (bit_count & 7) s.bytes_.back() &= static_cast<std::uint8_t>(0xFF00u >> (bit_count & 7));
  return s;
}

// ---------------------------------------------------------------------------
// FrequencyTable

FrequencyTable FrequencyTable::uniform(std::uint64_t total) {
  if (total == 0 || total > kMaxTotal) throw std::invalid_argument("FrequencyTable::uniform: total out of range");
  FrequencyTable t;
  t.uniform_ = true;
  t.total_ = total;
  return t;
}

FrequencyTable FrequencyTable::from_log2_weights(std::span<const double> log2_weights) {
  double peak = -std::numeric_limits<double>::infinity();
  std::uint64_t support = 0;
  for (double w : log2_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("FrequencyTable: invalid weight");
    if (w > -std::numeric_limits<double>::infinity()) {
      ++support;
      peak = std::max(peak, w);
    }
  }
  if (support == 0) throw std::invalid_argument("FrequencyTable: empty support");
  if (support > kMaxTotal / 2) throw std::invalid_argument("FrequencyTable: too many symbols");

  double norm = 0.0;
  for (double w : log2_weights)
    if (w > -std::numeric_limits<double>::infinity()) norm += std::exp2(w - peak);

  const double scale = static_cast<double>(kMaxTotal - support) / norm;
  FrequencyTable t;
  t.cumulative_.resize(log2_weights.size() + 1);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < log2_weights.size(); ++i) {
    t.cumulative_[i] = acc;
    const double w = log2_weights[i];
    if (w > -std::numeric_limits<double>::infinity())
      acc += 1 + static_cast<std::uint64_t>(std::floor(std::exp2(w - peak) * scale));
  }
  t.cumulative_.back() = acc;
  t.total_ = acc;
  return t;
}

FrequencyTable FrequencyTable::from_counts(std::span<const std::uint32_t> counts) {
  FrequencyTable t;
  t.cumulative_.resize(counts.size() + 1);
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    t.cumulative_[i] = acc;
    acc += counts[i];
  }
  t.cumulative_.back() = acc;
  if (acc == 0 || acc > kMaxTotal) throw std::invalid_argument("FrequencyTable: total out of range");
  t.total_ = acc;
  return t;
}

std::size_t FrequencyTable::find(std::uint64_t target) const {
  if (target >= total_) throw DecodeError("frequency target out of range");
  if (uniform_) return static_cast<std::size_t>(target);
  // Last index whose cumulative start is <= target.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end() - 1, target);
  return static_cast<std::size_t>(std::distance(cumulative_.begin(), it) - 1);
}

// ---------------------------------------------------------------------------
// Encoder

void ArithmeticEncoder::emit(bool bit) {
  out_.push_back(bit);
  for (; pending_ > 0; --pending_) out_.push_back(!bit);
}

void ArithmeticEncoder::encode(const FrequencyTable& table, std::size_t symbol) {
  if (symbol >= table.size()) throw std::invalid_argument("ArithmeticEncoder: symbol out of range");
  const std::uint64_t f = table.frequency(symbol);
  if (f == 0) throw std::invalid_argument("ArithmeticEncoder: symbol has zero frequency");
  encode_range(table.low(symbol), f, table.total());
}

void ArithmeticEncoder::encode_range(std::uint64_t low, std::uint64_t frequency, std::uint64_t total) {
  if (frequency == 0 || total == 0 || total > FrequencyTable::kMaxTotal || low + frequency > total)
    throw std::invalid_argument("ArithmeticEncoder: invalid interval");
  if (frequency == total) return;
  const u128 range = u128{high_ - low_} + 1;
  high_ = low_ + static_cast<std::uint64_t>(range * (low + frequency) / total) - 1;
  low_ = low_ + static_cast<std::uint64_t>(range * low / total);
  for (;;) {
    if (high_ < kHalf) {
      emit(false);
    } else if (low_ >= kHalf) {
      emit(true);
      low_ -= kHalf;
      high_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      ++pending_;
      low_ -= kQuarter;
      high_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
  }
}

Bitstream ArithmeticEncoder::finish() {
  // Two more bits select a point inside [low, high] given zero padding.
  ++pending_;
  emit(low_ >= kQuarter);
  Bitstream out = std::move(out_);
  *this = ArithmeticEncoder{};
  return out;
}

// ---------------------------------------------------------------------------
// Decoder

ArithmeticDecoder::ArithmeticDecoder(const Bitstream& in) : in_(&in) {
  for (int i = 0; i < kPrecision; ++i) value_ = (value_ << 1) | (next_bit() ? 1u : 0u);
}

bool ArithmeticDecoder::next_bit() {
  const std::uint64_t i = position_++;
  if (i < in_->size()) return (*in_)[i];
  if (i - in_->size() >= static_cast<std::uint64_t>(kPrecision) + 2)
    throw DecodeError("arithmetic decoder: stream exhausted");
  return false;
}

std::size_t ArithmeticDecoder::decode(const FrequencyTable& table) {
  const std::uint64_t total = table.total();
  if (table.size() == 0) throw std::invalid_argument("ArithmeticDecoder: empty table");
  // A symbol owning the whole interval is implied, matching encode_range.
  if (table.size() == 1 || table.frequency(table.find(0)) == total) return table.find(0);
  if (value_ < low_ || value_ > high_) throw DecodeError("arithmetic decoder: inconsistent state");
  const u128 range = u128{high_ - low_} + 1;
  const std::uint64_t target = static_cast<std::uint64_t>(((u128{value_ - low_} + 1) * total - 1) / range);
  const std::size_t symbol = table.find(target);
  const std::uint64_t lo = table.low(symbol);
  const std::uint64_t f = table.frequency(symbol);
  high_ = low_ + static_cast<std::uint64_t>(range * (lo + f) / total) - 1;
  low_ = low_ + static_cast<std::uint64_t>(range * lo / total);
  for (;;) {
    if (high_ < kHalf) {
    } else if (low_ >= kHalf) {
      low_ -= kHalf;
      high_ -= kHalf;
      value_ -= kHalf;
    } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
      low_ -= kQuarter;
      high_ -= kQuarter;
      value_ -= kQuarter;
    } else {
      break;
    }
    low_ <<= 1;
    high_ = (high_ << 1) | 1;
    value_ = (value_ << 1) | (next_bit() ? 1u : 0u);
  }
  return symbol;
}

}  // namespace gcdc
