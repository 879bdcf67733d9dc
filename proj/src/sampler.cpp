#include "fbeval/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace fbeval::sampler {

TaskWeights derive_weights(const std::vector<TrainBudget>& budgets) {
    if (budgets.size() < 2)
        throw std::invalid_argument("derive_weights: need at least two budgets");
    double total = 0.0;
    TaskWeights weights;
    for (const TrainBudget& b : budgets) {
        if (b.batch_size < 1 || b.steps < 1)
            throw std::invalid_argument("derive_weights: non-positive budget");
        if (!weights.emplace(b.task, static_cast<double>(b.exposure())).second)
            throw std::invalid_argument(std::string("derive_weights: duplicate task ") +
                                        task_name(b.task));
        total += static_cast<double>(b.exposure());
    }
    for (auto& [task, w] : weights) w /= total;
    return weights;
}

namespace {

// splitmix64: the counter sequence is fully specified by these constants,
// which is what makes the stream portable.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

TaskStream::TaskStream(const TaskWeights& weights, std::uint64_t seed)
    : state_(seed) {
    if (weights.empty())
        throw std::invalid_argument("sample_stream: empty weights");
    double acc = 0.0;
    for (const auto& [task, w] : weights) {
        if (!(w > 0.0))
            throw std::invalid_argument("sample_stream: non-positive weight");
        acc += w;
        cumulative_.emplace_back(acc, task);
    }
    if (std::abs(acc - 1.0) > 1e-9)
        throw std::invalid_argument("sample_stream: weights must sum to 1");
    cumulative_.back().first = 1.0;  // absorb the rounding slack
}

TaskKind TaskStream::next() {
    double u = uniform01(state_);
    for (const auto& [edge, task] : cumulative_)
        if (u < edge) return task;
    return cumulative_.back().second;
}

std::vector<TaskKind> sample_stream(const TaskWeights& weights,
                                    std::uint64_t seed, std::size_t n) {
    TaskStream stream(weights, seed);
    std::vector<TaskKind> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(stream.next());
    return out;
}

}  // namespace fbeval::sampler
