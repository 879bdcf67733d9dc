#include "fbeval/kernels/ctc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbeval::kernels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

CtcResult ctc_loss(const Eigen::MatrixXd& log_probs,
                   const std::vector<int>& labels, int blank) {
    const Eigen::Index T = log_probs.rows();
    const Eigen::Index V = log_probs.cols();
    if (T < 1 || V < 1) throw std::invalid_argument("ctc_loss: empty matrix");
    if (blank < 0 || blank >= V)
        throw std::invalid_argument("ctc_loss: blank outside vocabulary");

    Eigen::Index min_t = static_cast<Eigen::Index>(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == blank)
            throw std::invalid_argument("ctc_loss: labels contain blank");
        if (labels[i] < 0 || labels[i] >= V)
            throw std::invalid_argument("ctc_loss: label outside vocabulary");
        if (i > 0 && labels[i] == labels[i - 1]) ++min_t;  // repeat needs a blank
    }
    if (min_t > T)
        throw std::invalid_argument(
            "ctc_loss: label sequence infeasible for " + std::to_string(T) +
            " timesteps (needs " + std::to_string(min_t) + ")");

    // Extended sequence: blanks interleaved around every label.
    const Eigen::Index S = 2 * static_cast<Eigen::Index>(labels.size()) + 1;
    auto ext = [&](Eigen::Index s) -> int {
        return (s % 2 == 0) ? blank : labels[static_cast<std::size_t>(s / 2)];
    };
    auto can_skip = [&](Eigen::Index s) {
        // A diagonal jump s-2 -> s is legal unless s is a blank or repeats
        // the label two slots back.
        return s >= 2 && ext(s) != blank && ext(s) != ext(s - 2);
    };

    // alpha(t,s) / beta(t,s) both include the emission at t, so the posterior
    // through (t,s) is alpha*beta / p(t,s emission), Graves' convention.
    Eigen::MatrixXd alpha = Eigen::MatrixXd::Constant(T, S, kNegInf);
    Eigen::MatrixXd beta = Eigen::MatrixXd::Constant(T, S, kNegInf);

    alpha(0, 0) = log_probs(0, blank);
    if (S > 1) alpha(0, 1) = log_probs(0, ext(1));
    for (Eigen::Index t = 1; t < T; ++t) {
        for (Eigen::Index s = 0; s < S; ++s) {
            double acc = alpha(t - 1, s);
            if (s >= 1) acc = log_add(acc, alpha(t - 1, s - 1));
            if (can_skip(s)) acc = log_add(acc, alpha(t - 1, s - 2));
            if (acc != kNegInf) alpha(t, s) = acc + log_probs(t, ext(s));
        }
    }

    beta(T - 1, S - 1) = log_probs(T - 1, ext(S - 1));
    if (S > 1) beta(T - 1, S - 2) = log_probs(T - 1, ext(S - 2));
    for (Eigen::Index t = T - 2; t >= 0; --t) {
        for (Eigen::Index s = 0; s < S; ++s) {
            double acc = beta(t + 1, s);
            if (s + 1 < S) acc = log_add(acc, beta(t + 1, s + 1));
            if (s + 2 < S && can_skip(s + 2)) acc = log_add(acc, beta(t + 1, s + 2));
            if (acc != kNegInf) beta(t, s) = acc + log_probs(t, ext(s));
        }
    }

    double log_p = alpha(T - 1, S - 1);
    if (S > 1) log_p = log_add(log_p, alpha(T - 1, S - 2));
    if (log_p == kNegInf)
        throw std::invalid_argument("ctc_loss: zero-probability instance");

    CtcResult result;
    result.loss = -log_p;
    result.grad = Eigen::MatrixXd::Zero(T, V);
    for (Eigen::Index t = 0; t < T; ++t) {
        // Group extended slots by symbol: grad[t][k] = -P(path passes k at t).
        Eigen::VectorXd acc = Eigen::VectorXd::Constant(V, kNegInf);
        for (Eigen::Index s = 0; s < S; ++s) {
            double ab = alpha(t, s) + beta(t, s);
            if (ab == kNegInf) continue;
            int k = ext(s);
            acc(k) = log_add(acc(k), ab - log_probs(t, k));
        }
        for (Eigen::Index k = 0; k < V; ++k)
            if (acc(k) != kNegInf) result.grad(t, k) = -std::exp(acc(k) - log_p);
    }
    return result;
}

std::vector<int> ctc_greedy_decode(const Eigen::MatrixXd& log_probs, int blank) {
    std::vector<int> out;
    int prev = blank;
    for (Eigen::Index t = 0; t < log_probs.rows(); ++t) {
        Eigen::Index arg;
        log_probs.row(t).maxCoeff(&arg);
        int sym = static_cast<int>(arg);
        if (sym != blank && sym != prev) out.push_back(sym);
        prev = sym;
    }
    return out;
}

bool rows_are_normalized(const Eigen::MatrixXd& log_probs, double tol) {
    for (Eigen::Index t = 0; t < log_probs.rows(); ++t) {
        double hi = log_probs.row(t).maxCoeff();
        double lse = hi + std::log((log_probs.row(t).array() - hi).exp().sum());
        if (std::abs(lse) > tol) return false;
    }
    return true;
}

}  // namespace fbeval::kernels
