#include "fbeval/emissions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace fbeval::emissions {

double estimate_co2(double hours, const HardwareProfile& profile) {
    if (!(hours > 0.0))
        throw std::invalid_argument("estimate_co2: hours must be positive");
    if (profile.gpu_count < 1 || !(profile.power_per_gpu > 0.0) ||
        !(profile.pue >= 1.0) || !(profile.carbon_intensity > 0.0))
        throw std::invalid_argument("estimate_co2: invalid hardware profile");
    return profile.kg_per_hour() * hours;
}

CoefficientFit fit_coefficient(const std::vector<RunRecord>& runs) {
    std::vector<std::pair<double, double>> pairs;
    for (const RunRecord& r : runs) {
        if (!r.reported_co2) continue;
        if (!(r.hours > 0.0))
            throw std::invalid_argument("fit_coefficient: non-positive hours");
        pairs.emplace_back(r.hours, *r.reported_co2);
    }
    if (pairs.size() < 2)
        throw std::invalid_argument(
            "fit_coefficient: need at least two runs with reported CO2");

    Eigen::VectorXd h(pairs.size()), y(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        h(static_cast<Eigen::Index>(i)) = pairs[i].first;
        y(static_cast<Eigen::Index>(i)) = pairs[i].second;
    }

    CoefficientFit fit;
    fit.kg_per_hour = h.dot(y) / h.dot(h);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        double rel = std::abs(fit.kg_per_hour * h(i) - y(i)) / y(i);
        fit.residuals.push_back(rel);
        fit.max_relative_residual = std::max(fit.max_relative_residual, rel);
    }
    return fit;
}

}  // namespace fbeval::emissions
