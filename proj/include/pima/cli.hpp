#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace pima::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_parse = 2;
inline constexpr int exit_config = 3;
inline constexpr int exit_invariant = 4;

/// Percent change of `value` relative to `base`; negative values are
/// improvements. Empty when base is zero and value differs.
std::optional<double> percent_delta(double value, double base);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Sample standard deviation (n - 1 denominator; 0 for fewer than 2 values).
MeanStd mean_std(const std::vector<double>& values);

double median(std::vector<double> values);

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

int run(int argc, char** argv);

}  // namespace pima::cli
