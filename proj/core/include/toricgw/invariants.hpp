#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricgw/compactification.hpp"
#include "toricgw/mirror_map.hpp"

namespace toricgw {

struct DiskPotential {
  DiskClass disk;
  Series series;              // in q_a and tau_j
  std::string normalization;  // "1+delta" or "tau+delta"
};

DiskPotential disk_potential(const ToricData& data, const DiskClass& disk, const Rational& order);
// Shares one mirror map between several disk classes.
std::vector<DiskPotential> disk_potentials(const ToricData& data, const std::vector<DiskClass>& disks,
                                           const Rational& order);
// Every ray and every extra vector.
std::vector<DiskClass> all_disk_classes(const ToricData& data);

struct InvariantEntry {
  std::vector<Rational> alpha;                // per h2 direction; rational for orbifold classes
  std::vector<std::pair<int, long>> insertions;  // extra vector index, multiplicity
  Rational value;
};

struct InvariantTable {
  DiskClass disk;
  std::vector<InvariantEntry> entries;  // sorted by (alpha, insertions)
  const InvariantEntry* find(const std::vector<Rational>& alpha, const std::vector<std::pair<int, long>>& ins) const;
};

InvariantTable extract_invariants(const ToricData& data, const DiskPotential& dp);

// y^{d_inf} q^{-beta-bar'} through the relative mirror map; throws unless it equals disk_potential.
Series oracle_potential(const CompactifiedData& cd, const Rational& order);

struct OracleComparison {
  Series disk;
  Series oracle;
  bool match = false;
  std::optional<Monomial> first_difference;
  Rational disk_coefficient, oracle_coefficient;
};

OracleComparison compare_with_oracle(const CompactifiedData& cd, const Rational& order);

nlohmann::json to_json(const DiskPotential& dp);
nlohmann::json to_json(const ToricData& data, const InvariantTable& table);
nlohmann::json to_json(const OracleComparison& c);

}  // namespace toricgw
