#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "toricgw/toric_data.hpp"

namespace toricgw {

struct DiskClass {
  enum class Kind { Ray, Box };
  Kind kind = Kind::Ray;
  int index = 0;  // vector index in the fan (ray i0 or extra vector j0)

  static DiskClass ray(int i) { return {Kind::Ray, i}; }
  static DiskClass box(int j) { return {Kind::Box, j}; }
  static DiskClass parse(std::string_view text);  // "ray:0", "box:3"
  std::string to_string() const;
  bool operator==(const DiskClass&) const = default;
  bool operator<(const DiskClass& o) const {
    return kind != o.kind ? kind < o.kind : index < o.index;
  }
};

// Checks the selector against the fan's index ranges.
void check_disk(const ToricData& data, const DiskClass& disk);

struct CompactifiedData {
  ToricData base;
  ToricData bar;  // indices: base rays, infinity ray, base extra vectors
  DiskClass disk;
  std::vector<int> bar_index;  // base vector index -> bar vector index
  int infinity_vector = -1;    // bar index of b_inf
  EffClass d_infinity;         // e_{i0} + e_inf
  EffClass beta_bar;           // d_inf for ray disks, d_inf - D_{j0}^dual for box disks

  int infinity_divisor() const { return infinity_vector; }
  QVector pad(const QVector& base_pairings) const;
};

// The bar fan lists the base rays (any order) plus -b_disk, and optionally the base
// extra vectors; it is re-indexed canonically.
CompactifiedData validate_compactification(const ToricData& base, const StackyFan& bar_fan, const DiskClass& disk);

}  // namespace toricgw
