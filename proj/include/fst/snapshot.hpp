#pragma once

#include <filesystem>

#include "fst/field.hpp"

namespace fst {

// Snapshot layout, all little-endian:
//   "FSTF" | u32 version (= 1) | u32 d | d x u32 n | n^d x f64, row-major.
inline constexpr unsigned kSnapshotVersion = 1;

void write_snapshot(const std::filesystem::path& path, const RealField& f);
RealField read_snapshot(const std::filesystem::path& path);

}  // namespace fst
