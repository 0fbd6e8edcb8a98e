#include "gcdc/container.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "gcdc/errors.hpp"

namespace gcdc {

namespace {
constexpr std::array<char, 4> kMagic = {'G', 'C', 'D', 'C'};
}

void write_container(std::ostream& out, const Container& c) {
  out.write(kMagic.data(), kMagic.size());
  out.put(static_cast<char>(kContainerVersion));
  out.put(static_cast<char>(c.coder));
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((c.node_count >> (8 * i)) & 0xFF));
  out.put(static_cast<char>(c.mode));
  c.stream.write(out);
  if (!out) throw std::runtime_error("failed to write container");
}

Container read_container(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw ParseError("not a gcdc container (bad magic)", 0);
  std::array<unsigned char, 11> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  if (!in) throw ParseError("truncated container header", 0);
  if (head[0] != kContainerVersion) throw ParseError("unsupported container version " + std::to_string(head[0]), 0);
  if (head[1] > static_cast<unsigned char>(CoderId::StructTriangle))
    throw ParseError("unknown coder id " + std::to_string(head[1]), 0);
  if (head[10] > static_cast<unsigned char>(CodingMode::Universal))
    throw ParseError("unknown coding mode " + std::to_string(head[10]), 0);
  Container c;
  c.coder = static_cast<CoderId>(head[1]);
  for (int i = 0; i < 8; ++i) c.node_count |= static_cast<std::uint64_t>(head[2 + i]) << (8 * i);
  c.mode = static_cast<CodingMode>(head[10]);
  c.stream = Bitstream::read(in);
  return c;
}

void save_container(const std::string& path, const Container& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_container(out, c);
}

Container load_container(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_container(in);
}

}  // namespace gcdc
