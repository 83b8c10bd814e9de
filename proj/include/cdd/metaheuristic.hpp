#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cdd/core.hpp"
#include "cdd/random.hpp"

namespace cdd {

enum class AnnealMode { single, parallel };

/// Annealing parameters. Zero-valued sizes mean "derive from n" and are
/// filled in by resolved().
struct AnnealConfig {
  std::size_t ensemble_size = 0;   // default floor(4 + n/10) chains
  std::size_t max_iterations = 0;  // per chain, default 500 * n
  double cooling_rate = 0.999;     // T <- cooling_rate * T every iteration
  double constant_accept = 0.07;   // fallback acceptance after a Metropolis reject
  std::size_t temperature_samples = 100;
  std::uint64_t seed = 0;
  // Without a global improvement for this many iterations, the worst chain
  // restarts from the global best.
  std::size_t reinjection_interval = 1000;
  std::size_t threads = 1;  // chains run concurrently when > 1

  // Copy with defaults filled in for an n-job instance; throws
  // std::invalid_argument for out-of-range parameters.
  AnnealConfig resolved(std::size_t n) const;
};

struct AnnealResult {
  JobSequence best_sequence;
  Schedule best_schedule;
  Cost best_total = 0;
  // Chain iteration at which best_total was first reached (0 = initial state).
  std::size_t iterations_used = 0;
  std::vector<std::pair<std::size_t, Cost>> history;  // (iteration, new best)
  double initial_temperature = 0;
  AnnealConfig config;  // as resolved
};

/// Number of positions rearranged per move: 2 + floor(sqrt(n / 10)),
/// capped at n.
std::size_t perturbation_size(std::size_t n);

/// Places `sequence[positions[permutation[i]]]` at `positions[i]`.
JobSequence apply_rearrangement(const JobSequence& sequence, std::span<const std::size_t> positions,
                                std::span<const std::size_t> permutation);

/// Picks perturbation_size(n) distinct positions uniformly and rearranges
/// their jobs by a uniformly drawn non-identity permutation. Needs n >= 2.
JobSequence perturb_sequence(const JobSequence& sequence, Rng& rng);

/// Metropolis acceptance min(1, exp(-delta / T)); a Metropolis reject is
/// still accepted with probability `constant_accept`.
bool accept_candidate(Cost delta, double temperature, double constant_accept, Rng& rng);

/// Twice the sample standard deviation of the optimized totals of
/// `samples` uniformly random sequences.
double estimate_initial_temperature(const Instance& instance, std::size_t samples, Rng& rng,
                                    AnnealMode mode = AnnealMode::single);

/// Ensemble simulated annealing over job sequences; every candidate is
/// scored exactly by the logsearch single-machine optimizer (or the
/// parallel assignment in AnnealMode::parallel). Deterministic for a given
/// seed, independent of `threads`.
AnnealResult anneal(const Instance& instance, const AnnealConfig& config,
                    AnnealMode mode = AnnealMode::single);

}  // namespace cdd
