#pragma once

#include <vector>

namespace randattr {

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F1(x) - F2(x)|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// Critical value c(alpha) * sqrt((n+m)/(n*m)); supports alpha in {0.01, 0.05}.
double ks_critical(int n, int m, double alpha);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Wilson score interval for a binomial proportion (default 95%).
WilsonInterval wilson(int successes, int trials, double z = 1.959963984540054);

}  // namespace randattr
