#include "shehu/special_functions.hpp"

#include <cmath>

namespace shehu {

namespace {

constexpr long double kSeriesLimit = 12.0L;

// sum_k sign^k (x^2/4)^k / (k!)^2 for k < 30
long double bessel_series(long double x, long double sign) {
    long double q = x * x / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 30; ++k) {
        term *= sign * q / (static_cast<long double>(k) * static_cast<long double>(k));
        sum += term;
    }
    return sum;
}

}  // namespace

long double bessel_j0(long double x) {
    if (std::fabs(x) <= kSeriesLimit) return bessel_series(x, -1.0L);
    return std::cyl_bessel_j(0.0L, std::fabs(x));
}

long double bessel_i0(long double x) {
    if (std::fabs(x) <= kSeriesLimit) return bessel_series(x, 1.0L);
    return std::cyl_bessel_i(0.0L, std::fabs(x));
}

}  // namespace shehu
