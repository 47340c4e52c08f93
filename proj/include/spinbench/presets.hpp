#pragma once

// Named ready-made chains for every family treated explicitly in the
// paper-scale examples, each carrying the specialized printed form of its
// Bethe equations as a redundant cross-check against the general form.

#include <functional>
#include <optional>
#include <string>

#include "spinbench/bethe.hpp"

namespace spinbench {

struct Preset {
  std::string name;
  ChainSpec spec;
  std::vector<int> default_counts;
  // the family-specific equation block, stated per (level, root) in the
  // same LHS - RHS residual convention as bethe_residual_general
  std::function<std::vector<Complex>(const ChainSpec&, const BetheRootSet&)>
      specialized_residual;
  std::string notes;
};

// Known names: gl2, gl11, uq-gl2, uq-gl11, gl21, uq-gl21, gl22, uq-gl22,
// gl44, uq-gl44.
Preset preset(const std::string& name);

const std::vector<std::string>& preset_names();

// Max |specialized - general| residual discrepancy over `trials` random
// off-shell root configurations (0 when no specialized form is attached).
double cross_check_preset(const std::string& name, int trials,
                          std::uint64_t rng_seed = 20240);

}  // namespace spinbench
