#include "facewall/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "facewall/error.hpp"

namespace facewall {

namespace {

std::vector<double> normalized(std::span<const double> weights) {
    double sum = 0.0;
    for (const double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            fail(ErrorKind::kInternal, "negative-mass", "distribution weights must be finite and >= 0");
        }
        sum += w;
    }
    if (sum <= 0.0) fail(ErrorKind::kInternal, "empty-distribution");
    std::vector<double> out(weights.begin(), weights.end());
    for (auto& w : out) w /= sum;
    return out;
}

double term(double x, double m) { return x > 0.0 ? x * std::log2(x / m) : 0.0; }

}  // namespace

double jsd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) fail(ErrorKind::kInternal, "size-mismatch", "distributions differ in length");
    const auto pn = normalized(p);
    const auto qn = normalized(q);
    double sum = 0.0;
    for (std::size_t i = 0; i < pn.size(); ++i) {
        const double m = (pn[i] + qn[i]) / 2.0;
        // Summing the pair per index keeps jsd(p, q) == jsd(q, p) bit for bit.
        sum += term(pn[i], m) + term(qn[i], m);
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

}  // namespace facewall
