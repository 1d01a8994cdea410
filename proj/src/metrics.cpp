#include "daqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace daqc {

double r99(double success_p) {
    if (!(success_p >= 0.0 && success_p <= 1.0))
        throw std::invalid_argument("r99: success probability must be in [0, 1]");
    if (success_p == 0.0) return std::numeric_limits<double>::infinity();
    if (success_p == 1.0) return 1.0;
    const double reps = std::log(0.01) / std::log1p(-success_p);
    return std::max(1.0, reps);
}

double tts_ns(double success_p, double t_ss_ns) {
    if (t_ss_ns <= 0.0) throw std::invalid_argument("tts_ns: schedule time must be positive");
    return r99(success_p) * t_ss_ns;
}

namespace {

// values must be sorted; infinities land at the end, so a window with more
// than half its mass infinite yields an infinite median.
double median_of(const std::vector<double>& v, std::size_t begin, std::size_t end) {
    const std::size_t len = end - begin;
    const std::size_t mid = begin + len / 2;
    if (len % 2 == 1) return v[mid];
    return 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

Aggregate aggregate(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("aggregate: no values");
    for (double x : values)
        if (std::isnan(x)) throw std::invalid_argument("aggregate: NaN value");
    std::sort(values.begin(), values.end());

    Aggregate agg;
    agg.count = static_cast<int>(values.size());
    agg.median = median_of(values, 0, values.size());
    const std::size_t half = values.size() / 2;
    if (half == 0) {
        agg.q1 = agg.q3 = values[0];
    } else {
        agg.q1 = median_of(values, 0, half);
        agg.q3 = median_of(values, values.size() - half, values.size());
    }
    std::size_t finite = 0;
    for (double x : values)
        if (std::isfinite(x)) ++finite;
    agg.finite_fraction = static_cast<double>(finite) / static_cast<double>(values.size());
    return agg;
}

}  // namespace daqc
