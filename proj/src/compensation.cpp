#include "cliffpde/compensation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "cliffpde/kernels.hpp"
#include "cliffpde/norms.hpp"
#include "cliffpde/spectral.hpp"

namespace cliffpde {

namespace {

// L^p / Lorentz norms of the pointwise Euclidean magnitude over a stack of
// scalar grids.
std::vector<double> stack_magnitude(const std::vector<const MultivectorField*>& fields) {
    const std::size_t n = fields.at(0)->npoints();
    std::vector<double> mag(n, 0.0);
    for (const MultivectorField* f : fields)
        for (int c = 0; c < f->ncomp(); ++c) {
            const double* v = f->comp(c);
            for (std::size_t i = 0; i < n; ++i) mag[i] += v[i] * v[i];
        }
    for (double& v : mag) v = std::sqrt(v);
    return mag;
}

double lp_of_magnitude(std::vector<double> mag, double cellvol, double p) {
    double s = 0;
    for (double v : mag) s += std::pow(v, p);
    return std::pow(s * cellvol, 1.0 / p);
}

double weak_lp_of_magnitude(std::vector<double> mag, double cellvol, double p) {
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double best = 0;
    for (std::size_t k = 0; k < mag.size(); ++k)
        best = std::max(best, std::pow(double(k + 1) * cellvol, 1.0 / p) * mag[k]);
    return best;
}

// Signed wavenumber vector per FFT bin, so a field transformed once can feed
// several multiplier operators without extra FFT round trips.
struct Modes {
    std::vector<std::array<int, 4>> k;
    explicit Modes(const GridSpec& spec) : k(spec.npoints()) {
        std::vector<int> x(std::size_t(spec.d));
        for (std::size_t i = 0; i < k.size(); ++i) {
            spec.coords(i, x.data());
            for (int a = 0; a < spec.d; ++a)
                k[i][std::size_t(a)] = spec.wavenumber(x[std::size_t(a)]);
        }
    }
};

MultivectorField deriv_phys(const SpectralField& F, int axis, const Modes& mo) {
    SpectralField G = F;
    for (int c = 0; c < G.ncomp(); ++c) {
        std::complex<double>* d = G.comp(c);
        for (std::size_t i = 0; i < G.npoints(); ++i)
            d[i] *= std::complex<double>(0.0, double(mo.k[i][std::size_t(axis)]));
    }
    return to_physical(G);
}

}  // namespace

DifferentialForm wedge_1forms(const DifferentialForm& da, const DifferentialForm& db) {
    da.require_compatible(db);
    if (da.degree() != 1) throw std::invalid_argument("wedge_1forms expects 1-forms");
    DifferentialForm w(da.spec(), 2, da.m());
    for (int c = 0; c < w.ncomp(); ++c) {
        const std::vector<int>& ij = w.indices(c);
        const int i = ij[0], j = ij[1];
        w.comp(c) = field_sub(field_mul(da.comp(i), db.comp(j)),
                              field_mul(da.comp(j), db.comp(i)));
    }
    return w;
}

CompensationRecord compensation_ratio(const MultivectorField& a, const MultivectorField& b,
                                      double p) {
    if (p <= 1.0 || !std::isfinite(p))
        throw std::invalid_argument("compensation_ratio requires finite p > 1");
    const GridSpec& spec = a.spec();
    const Modes mo(spec);

    // One forward transform per field; every derivative is a multiplier on it.
    const SpectralField Ah = to_spectral(a);
    const SpectralField Bh = to_spectral(b);
    DifferentialForm da(spec, 1, a.m());
    DifferentialForm db(spec, 1, a.m());
    for (int ax = 0; ax < spec.d; ++ax) {
        da.comp(ax) = deriv_phys(Ah, ax, mo);
        db.comp(ax) = deriv_phys(Bh, ax, mo);
    }
    DifferentialForm w = wedge_1forms(da, db);

    // -Lap u = w componentwise; collect every partial of every component.
    std::vector<MultivectorField> grads;
    for (int c = 0; c < w.ncomp(); ++c) {
        SpectralField Uh = to_spectral(w.comp(c));
        for (int cc = 0; cc < Uh.ncomp(); ++cc) {
            std::complex<double>* d = Uh.comp(cc);
            if (std::abs(d[0]) > 1e-10)
                throw std::domain_error("compensation_ratio: wedge component has nonzero mean");
            for (std::size_t i = 0; i < Uh.npoints(); ++i) {
                double k2 = 0;
                for (int ax = 0; ax < spec.d; ++ax)
                    k2 += double(mo.k[i][std::size_t(ax)]) * double(mo.k[i][std::size_t(ax)]);
                d[i] = k2 == 0.0 ? 0.0 : d[i] / k2;
            }
        }
        for (int ax = 0; ax < spec.d; ++ax) grads.push_back(deriv_phys(Uh, ax, mo));
    }

    CompensationRecord rec;
    rec.N = spec.N;
    rec.p = p;
    const double vol = spec.cell_volume();
    {
        std::vector<const MultivectorField*> ptrs;
        for (const auto& g : grads) ptrs.push_back(&g);
        rec.grad_u_lp = lp_of_magnitude(stack_magnitude(ptrs), vol, p);
    }
    {
        std::vector<const MultivectorField*> ptrs;
        for (int c = 0; c < da.ncomp(); ++c) ptrs.push_back(&da.comp(c));
        rec.da_weak = weak_lp_of_magnitude(stack_magnitude(ptrs), vol, double(spec.d));
    }
    {
        std::vector<const MultivectorField*> ptrs;
        for (int c = 0; c < db.ncomp(); ++c) ptrs.push_back(&db.comp(c));
        rec.db_lp = lp_of_magnitude(stack_magnitude(ptrs), vol, p);
    }
    const double denom = rec.da_weak * rec.db_lp;
    if (rec.grad_u_lp > 0.0 && denom == 0.0)
        throw std::domain_error("compensation_ratio: degenerate input (zero denominator)");
    rec.ratio = denom == 0.0 ? 0.0 : rec.grad_u_lp / denom;
    return rec;
}

}  // namespace cliffpde
