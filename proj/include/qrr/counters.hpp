#pragma once

#include <cstdint>

namespace qrr {

// Monotone per-run oracle accounting.  Never global: each pipeline run owns
// one instance; concurrent runs use disjoint objects.
struct OracleCounters {
  std::uint64_t o_x = 0;       // O_X entry queries
  std::uint64_t o_y = 0;       // O_y entry queries
  std::uint64_t o_x_inv = 0;   // inverse O_X queries
  std::uint64_t ham_steps = 0; // Hamiltonian-simulation step invocations

  OracleCounters snapshot() const { return *this; }

  std::uint64_t total() const { return o_x + o_y + o_x_inv + ham_steps; }
};

}  // namespace qrr
