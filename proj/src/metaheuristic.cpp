#include "cdd/metaheuristic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <tuple>

#include "cdd/parallel.hpp"
#include "cdd/single_machine.hpp"

namespace cdd {

namespace {

constexpr std::uint64_t kTemperatureStream = std::numeric_limits<std::uint64_t>::max();

// Exact objective of an order of job indices, with per-owner scratch space.
class Scorer {
 public:
  Scorer(const Instance& instance, AnnealMode mode) : single_(instance) {
    if (mode == AnnealMode::parallel) parallel_.emplace(instance);
  }

  Cost operator()(std::span<const std::size_t> order) {
    return parallel_ ? parallel_->by_index(order) : single_.by_index(order);
  }

 private:
  SequenceScorer single_;
  std::optional<ParallelScorer> parallel_;
};

struct PerturbScratch {
  std::vector<std::size_t> positions;
  std::vector<std::size_t> permutation;
};

template <class T>
void perturb_in_place(std::vector<T>& seq, Rng& rng, PerturbScratch& scratch, std::vector<T>& held) {
  const std::size_t n = seq.size();
  if (n < 2) throw std::invalid_argument("perturbation needs at least two jobs");
  const std::size_t k = perturbation_size(n);

  auto& positions = scratch.positions;
  positions.clear();
  while (positions.size() < k) {
    auto p = static_cast<std::size_t>(rng.below(n));
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) positions.push_back(p);
  }

  auto& perm = scratch.permutation;
  perm.resize(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  auto is_identity = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      if (perm[i] != i) return false;
    }
    return true;
  };
  do {
    rng.shuffle(std::span<std::size_t>(perm));
  } while (is_identity());

  held.resize(k);
  for (std::size_t i = 0; i < k; ++i) held[i] = seq[positions[i]];
  for (std::size_t i = 0; i < k; ++i) seq[positions[i]] = held[perm[i]];
}

struct Improvement {
  std::size_t iteration;
  std::size_t chain;
  Cost total;
};

struct Chain {
  explicit Chain(Rng r) : rng(std::move(r)) {}

  Rng rng;
  std::vector<std::size_t> current;
  Cost current_total = 0;
  double temperature = 0;

  // Filled by run_epoch: strict improvements over the global best known at
  // the start of the epoch, and the last (best) such candidate.
  std::vector<Improvement> improvements;
  std::vector<std::size_t> epoch_best;

  PerturbScratch scratch;
  std::vector<std::size_t> candidate;
  std::vector<std::size_t> held;
};

void run_epoch(Chain& chain, std::size_t chain_index, std::size_t first_iteration,
               std::size_t iterations, Cost global_best, const AnnealConfig& config, Scorer& score) {
  chain.improvements.clear();
  Cost threshold = global_best;
  for (std::size_t it = 0; it < iterations; ++it) {
    chain.candidate = chain.current;
    perturb_in_place(chain.candidate, chain.rng, chain.scratch, chain.held);
    const Cost total = score(chain.candidate);
    if (total < threshold) {
      threshold = total;
      chain.improvements.push_back({first_iteration + it + 1, chain_index, total});
      chain.epoch_best = chain.candidate;
    }
    if (accept_candidate(total - chain.current_total, chain.temperature, config.constant_accept,
                         chain.rng)) {
      chain.current.swap(chain.candidate);
      chain.current_total = total;
    }
    chain.temperature *= config.cooling_rate;
  }
}

JobSequence to_ids(const Instance& instance, std::span<const std::size_t> order) {
  JobSequence seq;
  seq.order.reserve(order.size());
  for (std::size_t idx : order) seq.order.push_back(instance.jobs()[idx].id);
  return seq;
}

}  // namespace

AnnealConfig AnnealConfig::resolved(std::size_t n) const {
  AnnealConfig out = *this;
  if (out.ensemble_size == 0) out.ensemble_size = 4 + n / 10;
  if (out.max_iterations == 0) out.max_iterations = 500 * n;
  if (out.threads == 0) out.threads = 1;
  if (!(out.cooling_rate > 0.0 && out.cooling_rate < 1.0)) {
    throw std::invalid_argument("cooling rate must lie in (0, 1)");
  }
  if (!(out.constant_accept >= 0.0 && out.constant_accept <= 1.0)) {
    throw std::invalid_argument("constant acceptance probability must lie in [0, 1]");
  }
  if (out.temperature_samples < 2) throw std::invalid_argument("need at least 2 temperature samples");
  if (out.reinjection_interval == 0) throw std::invalid_argument("reinjection interval must be positive");
  return out;
}

std::size_t perturbation_size(std::size_t n) {
  // floor(sqrt(n / 10)) == floor(sqrt(floor(n / 10))) for integer n.
  std::size_t tenth = n / 10;
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(tenth)));
  while (root * root > tenth) --root;
  while ((root + 1) * (root + 1) <= tenth) ++root;
  return std::min(n, 2 + root);
}

JobSequence apply_rearrangement(const JobSequence& sequence, std::span<const std::size_t> positions,
                                std::span<const std::size_t> permutation) {
  if (positions.size() != permutation.size()) {
    throw std::invalid_argument("positions and permutation differ in length");
  }
  JobSequence out = sequence;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (positions[i] >= sequence.size() || permutation[i] >= positions.size()) {
      throw std::out_of_range("rearrangement index out of range");
    }
    out.order[positions[i]] = sequence.order[positions[permutation[i]]];
  }
  return out;
}

JobSequence perturb_sequence(const JobSequence& sequence, Rng& rng) {
  JobSequence out = sequence;
  PerturbScratch scratch;
  std::vector<JobId> held;
  perturb_in_place(out.order, rng, scratch, held);
  return out;
}

bool accept_candidate(Cost delta, double temperature, double constant_accept, Rng& rng) {
  if (delta <= 0) return true;
  double p = temperature > 0 ? std::exp(-static_cast<double>(delta) / temperature) : 0.0;
  if (rng.unit() < p) return true;
  return rng.unit() < constant_accept;
}

double estimate_initial_temperature(const Instance& instance, std::size_t samples, Rng& rng,
                                    AnnealMode mode) {
  if (samples < 2) throw std::invalid_argument("need at least 2 samples to estimate a deviation");
  Scorer score(instance, mode);
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Welford's running mean/variance.
  double mean = 0;
  double m2 = 0;
  for (std::size_t i = 1; i <= samples; ++i) {
    rng.shuffle(std::span<std::size_t>(order));
    auto x = static_cast<double>(score(order));
    double d = x - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (x - mean);
  }
  return 2.0 * std::sqrt(m2 / static_cast<double>(samples - 1));
}

AnnealResult anneal(const Instance& instance, const AnnealConfig& config, AnnealMode mode) {
  const std::size_t n = instance.size();
  AnnealResult result;
  result.config = config.resolved(n);
  const AnnealConfig& cfg = result.config;

  Rng temperature_rng = Rng::stream(cfg.seed, kTemperatureStream);
  result.initial_temperature =
      estimate_initial_temperature(instance, cfg.temperature_samples, temperature_rng, mode);

  std::vector<Chain> chains;
  std::vector<Scorer> scorers;
  chains.reserve(cfg.ensemble_size);
  scorers.reserve(cfg.ensemble_size);
  for (std::size_t c = 0; c < cfg.ensemble_size; ++c) {
    chains.emplace_back(Rng::stream(cfg.seed, c));
    scorers.emplace_back(instance, mode);
    Chain& chain = chains.back();
    chain.current.resize(n);
    std::iota(chain.current.begin(), chain.current.end(), std::size_t{0});
    chain.rng.shuffle(std::span<std::size_t>(chain.current));
    chain.current_total = scorers.back()(chain.current);
    chain.temperature = result.initial_temperature;
  }

  std::size_t best_chain = 0;
  for (std::size_t c = 1; c < chains.size(); ++c) {
    if (chains[c].current_total < chains[best_chain].current_total) best_chain = c;
  }
  std::vector<std::size_t> best = chains[best_chain].current;
  Cost best_total = chains[best_chain].current_total;
  result.history.emplace_back(0, best_total);

  const std::size_t iterations = n >= 2 ? cfg.max_iterations : 0;
  for (std::size_t done = 0; done < iterations;) {
    const std::size_t epoch = std::min(cfg.reinjection_interval, iterations - done);
    auto run_slice = [&](std::size_t worker) {
      for (std::size_t c = worker; c < chains.size(); c += cfg.threads) {
        run_epoch(chains[c], c, done, epoch, best_total, cfg, scorers[c]);
      }
    };
    if (cfg.threads > 1 && chains.size() > 1) {
      std::vector<std::future<void>> workers;
      for (std::size_t w = 0; w < std::min(cfg.threads, chains.size()); ++w) {
        workers.push_back(std::async(std::launch::async, run_slice, w));
      }
      for (auto& w : workers) w.get();
    } else {
      run_slice(0);
    }
    done += epoch;

    // Deterministic reduction: replay improvements in (iteration, chain) order.
    std::vector<Improvement> events;
    for (const Chain& chain : chains) {
      events.insert(events.end(), chain.improvements.begin(), chain.improvements.end());
    }
    std::sort(events.begin(), events.end(), [](const Improvement& a, const Improvement& b) {
      return std::tie(a.iteration, a.chain) < std::tie(b.iteration, b.chain);
    });
    bool improved = false;
    for (const Improvement& e : events) {
      if (e.total < best_total) {
        best_total = e.total;
        best = chains[e.chain].epoch_best;
        result.iterations_used = e.iteration;
        result.history.emplace_back(e.iteration, e.total);
        improved = true;
      }
    }
    // A chain's epoch_best is its last improvement, which is the one that
    // survives the replay whenever that chain holds the new global best.

    if (!improved && chains.size() > 1) {
      std::size_t worst = 0;
      for (std::size_t c = 1; c < chains.size(); ++c) {
        if (chains[c].current_total > chains[worst].current_total) worst = c;
      }
      chains[worst].current = best;
      chains[worst].current_total = best_total;
    }
  }

  result.best_sequence = to_ids(instance, best);
  result.best_total = best_total;
  if (mode == AnnealMode::parallel) {
    result.best_schedule = optimize_parallel(instance, result.best_sequence).schedule;
  } else {
    result.best_schedule = optimize_sequence_logsearch(instance, result.best_sequence).schedule;
  }
  return result;
}

}  // namespace cdd
