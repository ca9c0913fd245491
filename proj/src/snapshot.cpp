#include "fst/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fst {

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  os.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& is, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!is.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw std::runtime_error("snapshot " + path.string() + ": truncated file");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const RealField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write("FSTF", 4);
  put_le<std::uint32_t>(os, kSnapshotVersion);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.d));
  for (int a = 0; a < f.grid.d; ++a) put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.grid.n));
  for (Eigen::Index i = 0; i < f.values.size(); ++i) put_le<double>(os, f.values(i));
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

RealField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot " + path.string());
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FSTF", 4) != 0) {
    throw std::runtime_error("snapshot " + path.string() + ": bad magic");
  }
  const auto version = get_le<std::uint32_t>(is, path);
  if (version != kSnapshotVersion) {
    throw std::runtime_error("snapshot " + path.string() + ": unsupported version " +
                             std::to_string(version));
  }
  const auto d = get_le<std::uint32_t>(is, path);
  if (d < 2 || d > static_cast<std::uint32_t>(kMaxDim)) {
    throw std::runtime_error("snapshot " + path.string() + ": bad dimension");
  }
  std::vector<std::uint32_t> ns;
  for (std::uint32_t a = 0; a < d; ++a) ns.push_back(get_le<std::uint32_t>(is, path));
  for (auto n : ns) {
    if (n != ns.front()) throw std::runtime_error("snapshot " + path.string() + ": anisotropic grid");
  }
  const Grid grid(static_cast<int>(d), static_cast<int>(ns.front()));
  RealField f(grid);
  for (Eigen::Index i = 0; i < f.values.size(); ++i) f.values(i) = get_le<double>(is, path);
  if (is.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("snapshot " + path.string() + ": trailing bytes");
  }
  return f;
}

}  // namespace fst
