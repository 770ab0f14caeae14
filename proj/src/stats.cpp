#include "randattr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randattr {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double stat = 0.0;
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    while (i < a.size() && j < b.size()) {
        // evaluate the ECDF gap just after the next distinct data value, so
        // tied observations in both samples never produce a spurious gap
        const double d = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == d) ++i;
        while (j < b.size() && b[j] == d) ++j;
        stat = std::max(stat, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return stat;
}

double ks_critical(int n, int m, double alpha) {
    double c;
    if (alpha == 0.01)
        c = 1.628;
    else if (alpha == 0.05)
        c = 1.358;
    else
        c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

WilsonInterval wilson(int successes, int trials, double z) {
    if (trials <= 0) throw std::invalid_argument("wilson: trials must be positive");
    const double n = trials;
    const double p = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace randattr
