#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trigbeta {

struct IdentityCheck {
  std::string name;
  int samples = 0;
  double max_rel_err = 0.0;
};

/// Seeded randomized checks of the gamma identities the reduction engine
/// relies on: Legendre duplication, reflection, the recurrence
/// Gamma(x+1) = x*Gamma(x), beta symmetry, and the half-integer closed form
/// against Gamma(m + 1/2). Deterministic for a fixed seed.
std::vector<IdentityCheck> run_identity_suite(std::uint64_t seed, int samples);

/// Fixed-format text report; byte-identical for identical (seed, samples).
std::string identity_suite_text(const std::vector<IdentityCheck>& checks, std::uint64_t seed,
                                double pass_threshold);

}  // namespace trigbeta
