#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fbeval::emissions {

// Linear power model in the style of the ML CO2 calculator: kg CO2eq per hour
// is gpu_count * power_per_gpu * pue * carbon_intensity.
struct HardwareProfile {
    int gpu_count = 1;
    double power_per_gpu = 0.0;     // kW
    double pue = 1.0;               // datacenter overhead, >= 1
    double carbon_intensity = 0.0;  // kg CO2eq per kWh

    double kg_per_hour() const {
        return gpu_count * power_per_gpu * pue * carbon_intensity;
    }
};

struct RunRecord {
    std::string label;
    double hours = 0.0;
    std::optional<double> reported_co2;  // kg CO2eq
};

double estimate_co2(double hours, const HardwareProfile& profile);

struct CoefficientFit {
    double kg_per_hour = 0.0;
    double max_relative_residual = 0.0;
    std::vector<double> residuals;  // relative, per run with a reported value
};

// Least squares through the origin over (hours, reported_co2) pairs.
CoefficientFit fit_coefficient(const std::vector<RunRecord>& runs);

}  // namespace fbeval::emissions
