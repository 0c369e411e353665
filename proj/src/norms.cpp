#include "cliffpde/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace cliffpde {

namespace {

std::vector<double> pointwise_magnitude(const MultivectorField& f) {
    const std::size_t n = f.npoints();
    std::vector<double> mag(n, 0.0);
    for (int c = 0; c < f.ncomp(); ++c) {
        const double* d = f.comp(c);
        for (std::size_t i = 0; i < n; ++i) mag[i] += d[i] * d[i];
    }
    for (double& v : mag) v = std::sqrt(v);
    return mag;
}

}  // namespace

double lp_norm(const MultivectorField& f, double p) {
    if (p < 1.0 || !std::isfinite(p)) throw std::invalid_argument("lp_norm requires finite p >= 1");
    const std::vector<double> mag = pointwise_magnitude(f);
    double s = 0;
    for (double v : mag) s += std::pow(v, p);
    return std::pow(s * f.spec().cell_volume(), 1.0 / p);
}

double lorentz_norm(const MultivectorField& f, double p, double q) {
    if (p <= 1.0) throw std::invalid_argument("lorentz_norm requires p > 1");
    std::vector<double> mag = pointwise_magnitude(f);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    const double vol = f.spec().cell_volume();
    if (std::isinf(q)) {
        double best = 0;
        for (std::size_t k = 0; k < mag.size(); ++k) {
            const double t = double(k + 1) * vol;
            best = std::max(best, std::pow(t, 1.0 / p) * mag[k]);
        }
        return best;
    }
    if (q < 1.0) throw std::invalid_argument("lorentz_norm requires q >= 1 or q = inf");
    double s = 0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        if (mag[k] == 0.0) break;
        const double t = double(k + 1) * vol;
        s += std::pow(std::pow(t, 1.0 / p) * mag[k], q) * vol / t;
    }
    return std::pow(s, 1.0 / q);
}

}  // namespace cliffpde
