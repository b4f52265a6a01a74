// Copyright 2026 The mcvqe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file resources.hpp
 * @brief Lowering to the {rz, sx, x, cnot} basis and circuit cost reports.
 */

#pragma once

#include <mcvqe/sim.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace mcvqe {

/**
 * Equivalent circuit (up to global phase) over {rz, sx, x, cnot}. Pauli
 * rotations become basis changes around a CNOT ladder. Peepholes: adjacent
 * rz merge (constant, or same parameter slot), constant rz with angle 0 mod
 * 2 pi dropped, adjacent identical cnot or x pairs cancelled.
 */
[[nodiscard]] Circuit transpile_basis(const Circuit& c);

/// Peephole passes only.
[[nodiscard]] Circuit simplify(const Circuit& c);

/// ASAP depth over disjoint-qubit layers.
[[nodiscard]] int circuit_depth(const Circuit& c);

struct ResourceReport {
  std::map<std::string, int> counts;  // per gate kind
  int total = 0;
  int depth = 0;
  int width = 0;
  double epsilon = 0.0;
  double dw = 0.0;           // depth * width
  double feasibility = 0.0;  // depth * width * epsilon
  bool feasible = true;      // feasibility < 1
  /// Two-qubit gates between qubits that are not neighbours on the line.
  int non_adjacent_two_qubit = 0;
};

/// Throws std::invalid_argument unless 0 < epsilon < 1.
[[nodiscard]] ResourceReport report(const Circuit& c, double epsilon);

/// Aligned text table and CSV over named reports.
[[nodiscard]] std::string report_table(const std::vector<std::pair<std::string, ResourceReport>>& rows);
[[nodiscard]] std::string report_csv(const std::vector<std::pair<std::string, ResourceReport>>& rows);

}  // namespace mcvqe
