#include <doctest.h>

#include <random>

#include "fbeval/kernels/ctc.hpp"
#include "oracles.hpp"

using namespace fbeval::kernels;

namespace {

Eigen::MatrixXd random_log_probs(std::mt19937_64& rng, int t_len, int vocab) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    Eigen::MatrixXd lp(t_len, vocab);
    for (int t = 0; t < t_len; ++t) {
        Eigen::VectorXd row(vocab);
        for (int v = 0; v < vocab; ++v) row(v) = unif(rng);
        lp.row(t) = (row / row.sum()).array().log().transpose();
    }
    return lp;
}

}  // namespace

TEST_CASE("single timestep, single label") {
    Eigen::MatrixXd lp(1, 2);
    double q = 0.7;
    lp << std::log(1 - q), std::log(q);
    CtcResult r = ctc_loss(lp, {1});
    CHECK(r.loss == doctest::Approx(-std::log(q)));
}

TEST_CASE("uniform two-step instance sums its three paths") {
    // T=2, V=3 (blank, a, b), uniform rows: paths (a,a), (a,-), (-,a)
    Eigen::MatrixXd lp = Eigen::MatrixXd::Constant(2, 3, std::log(1.0 / 3.0));
    CtcResult r = ctc_loss(lp, {1});
    CHECK(r.loss == doctest::Approx(std::log(3.0)));
}

TEST_CASE("loss equals exhaustive path enumeration on random instances") {
    std::mt19937_64 rng(53);
    int tested = 0;
    while (tested < 250) {
        int t_len = 1 + static_cast<int>(rng() % 6);
        int vocab = 2 + static_cast<int>(rng() % 3);
        std::vector<int> labels;
        int l_len = static_cast<int>(rng() % 4);
        for (int i = 0; i < l_len; ++i)
            labels.push_back(1 + static_cast<int>(rng() % (vocab - 1)));
        int min_t = static_cast<int>(labels.size());
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] == labels[i - 1]) ++min_t;
        if (min_t > t_len) continue;
        Eigen::MatrixXd lp = random_log_probs(rng, t_len, vocab);
        double expected = oracles::ctc_enumeration_loss(lp, labels, 0);
        double got = ctc_loss(lp, labels).loss;
        CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
        ++tested;
    }
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(59);
    int tested = 0;
    while (tested < 25) {
        int t_len = 2 + static_cast<int>(rng() % 4);
        int vocab = 2 + static_cast<int>(rng() % 3);
        std::vector<int> labels;
        int l_len = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < l_len; ++i)
            labels.push_back(1 + static_cast<int>(rng() % (vocab - 1)));
        int min_t = static_cast<int>(labels.size());
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] == labels[i - 1]) ++min_t;
        if (min_t > t_len) continue;
        Eigen::MatrixXd lp = random_log_probs(rng, t_len, vocab);
        CtcResult r = ctc_loss(lp, labels);
        for (int t = 0; t < t_len; ++t)
            for (int v = 0; v < vocab; ++v) {
                double numeric = oracles::central_difference(
                    [&](double x) {
                        Eigen::MatrixXd p = lp;
                        p(t, v) = x;
                        return ctc_loss(p, labels).loss;
                    },
                    lp(t, v));
                CHECK(oracles::gradient_close(r.grad(t, v), numeric, 1e-4));
            }
        ++tested;
    }
}

TEST_CASE("probabilities over all label sequences sum to one") {
    // every path collapses to exactly one label sequence, so exp(-loss)
    // summed over all feasible sequences must be 1 for normalized rows
    std::mt19937_64 rng(61);
    const int t_len = 3, vocab = 3;
    Eigen::MatrixXd lp = random_log_probs(rng, t_len, vocab);
    REQUIRE(rows_are_normalized(lp));

    double total = 0.0;
    std::function<void(std::vector<int>&)> visit = [&](std::vector<int>& prefix) {
        int min_t = static_cast<int>(prefix.size());
        for (std::size_t i = 1; i < prefix.size(); ++i)
            if (prefix[i] == prefix[i - 1]) ++min_t;
        if (min_t <= t_len)
            total += std::exp(-ctc_loss(lp, prefix).loss);
        if (static_cast<int>(prefix.size()) >= t_len) return;
        for (int v = 1; v < vocab; ++v) {
            prefix.push_back(v);
            if (static_cast<int>(prefix.size()) <= t_len) visit(prefix);
            prefix.pop_back();
        }
    };
    std::vector<int> empty;
    visit(empty);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("loss is positive for non-degenerate inputs") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 50; ++i) {
        Eigen::MatrixXd lp = random_log_probs(rng, 4, 3);
        CHECK(ctc_loss(lp, {1, 2}).loss > 0.0);
    }
}

TEST_CASE("infeasible and invalid label sequences are rejected") {
    Eigen::MatrixXd lp = Eigen::MatrixXd::Constant(2, 3, std::log(1.0 / 3.0));
    CHECK_THROWS_AS(ctc_loss(lp, {1, 2, 1}), std::invalid_argument);  // too long
    CHECK_THROWS_AS(ctc_loss(lp, {1, 1}), std::invalid_argument);  // repeat needs blank
    CHECK_THROWS_AS(ctc_loss(lp, {0}), std::invalid_argument);     // blank label
    CHECK_THROWS_AS(ctc_loss(lp, {5}), std::invalid_argument);     // out of range
}

TEST_CASE("greedy decode collapses repeats and drops blanks") {
    auto lp_from_path = [](const std::vector<int>& path, int vocab) {
        Eigen::MatrixXd lp = Eigen::MatrixXd::Constant(
            static_cast<Eigen::Index>(path.size()), vocab, std::log(0.1));
        for (std::size_t t = 0; t < path.size(); ++t)
            lp(static_cast<Eigen::Index>(t), path[t]) = std::log(0.8);
        return lp;
    };
    CHECK(ctc_greedy_decode(lp_from_path({1, 1, 0, 2}, 3)) ==
          std::vector<int>{1, 2});
    CHECK(ctc_greedy_decode(lp_from_path({0, 0, 0}, 3)).empty());
    CHECK(ctc_greedy_decode(lp_from_path({1, 0, 1}, 3)) ==
          std::vector<int>{1, 1});
}

TEST_CASE("row normalization check") {
    Eigen::MatrixXd good = Eigen::MatrixXd::Constant(2, 4, std::log(0.25));
    CHECK(rows_are_normalized(good));
    Eigen::MatrixXd bad = good;
    bad(0, 0) = std::log(0.5);
    CHECK_FALSE(rows_are_normalized(bad));
}
