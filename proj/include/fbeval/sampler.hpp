#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fbeval/types.hpp"

namespace fbeval::sampler {

struct TrainBudget {
    TaskKind task = TaskKind::C2C;
    long batch_size = 1;  // samples per optimizer step
    long steps = 1;

    long exposure() const { return batch_size * steps; }
};

// Normalized per-task sampling weights; sum to 1, all positive.
using TaskWeights = std::map<TaskKind, double>;

// weight_i = exposure_i / sum_j exposure_j, so a fused run feeds each task as
// many samples as its single-task run did.
TaskWeights derive_weights(const std::vector<TrainBudget>& budgets);

// Bumped if the stream algorithm ever changes; identical
// (weights, seed, n) must replay bit-identically forever.
inline constexpr int kStreamAlgorithmVersion = 1;

// I.i.d. categorical draws using a splitmix64 counter generator: stateless in
// the seed, identical on every platform.
class TaskStream {
public:
    TaskStream(const TaskWeights& weights, std::uint64_t seed);

    TaskKind next();

private:
    std::vector<std::pair<double, TaskKind>> cumulative_;
    std::uint64_t state_;
};

std::vector<TaskKind> sample_stream(const TaskWeights& weights,
                                    std::uint64_t seed, std::size_t n);

}  // namespace fbeval::sampler
