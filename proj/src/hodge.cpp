#include "cliffpde/hodge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "cliffpde/dirac.hpp"
#include "cliffpde/kernels.hpp"
#include "cliffpde/norms.hpp"
#include "cliffpde/spectral.hpp"

namespace cliffpde {

namespace {

void enumerate_subsets(int d, int k, int start, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < d; ++i) {
        cur.push_back(i);
        enumerate_subsets(d, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// Sign of the permutation sorting the concatenation of two disjoint
// increasing index sets.
int shuffle_sign(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> perm = a;
    perm.insert(perm.end(), b.begin(), b.end());
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

}  // namespace

DifferentialForm::DifferentialForm(const GridSpec& spec, int k, int m) : spec_(spec), k_(k), m_(m) {
    if (k < 0 || k > spec.d) throw std::invalid_argument("form degree out of range");
    const auto& sets = index_sets(spec.d, k);
    comp_.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) comp_.emplace_back(spec, m);
}

const std::vector<std::vector<int>>& DifferentialForm::index_sets(int d, int k) {
    static std::map<std::pair<int, int>, std::vector<std::vector<int>>> cache;
    auto it = cache.find({d, k});
    if (it == cache.end()) {
        std::vector<std::vector<int>> sets;
        std::vector<int> cur;
        enumerate_subsets(d, k, 0, cur, sets);
        it = cache.emplace(std::make_pair(d, k), std::move(sets)).first;
    }
    return it->second;
}

const std::vector<int>& DifferentialForm::indices(int i) const {
    return index_sets(spec_.d, k_).at(std::size_t(i));
}

int DifferentialForm::index_of(const std::vector<int>& idx) const {
    const auto& sets = index_sets(spec_.d, k_);
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i] == idx) return int(i);
    throw std::invalid_argument("multi-index not found");
}

void DifferentialForm::require_compatible(const DifferentialForm& o) const {
    if (!(spec_ == o.spec_) || k_ != o.k_ || m_ != o.m_)
        throw std::invalid_argument("differential form mismatch");
}

DifferentialForm form_add(const DifferentialForm& a, const DifferentialForm& b) {
    a.require_compatible(b);
    DifferentialForm r = a;
    for (int i = 0; i < r.ncomp(); ++i) r.comp(i) = field_add(a.comp(i), b.comp(i));
    return r;
}

DifferentialForm form_sub(const DifferentialForm& a, const DifferentialForm& b) {
    a.require_compatible(b);
    DifferentialForm r = a;
    for (int i = 0; i < r.ncomp(); ++i) r.comp(i) = field_sub(a.comp(i), b.comp(i));
    return r;
}

DifferentialForm form_scale(const DifferentialForm& a, double c) {
    DifferentialForm r = a;
    for (int i = 0; i < r.ncomp(); ++i) r.comp(i) = field_scale(a.comp(i), c);
    return r;
}

double form_l2(const DifferentialForm& a) {
    double s = 0;
    for (int i = 0; i < a.ncomp(); ++i) {
        const double n = field_l2(a.comp(i));
        s += n * n;
    }
    return std::sqrt(s);
}

DifferentialForm form_inv_laplacian(const DifferentialForm& a) {
    DifferentialForm r = a;
    for (int i = 0; i < r.ncomp(); ++i) r.comp(i) = inv_laplacian(a.comp(i));
    return r;
}

std::vector<Multivector> form_mean(const DifferentialForm& a) {
    std::vector<Multivector> means;
    means.reserve(std::size_t(a.ncomp()));
    for (int i = 0; i < a.ncomp(); ++i) {
        Multivector mv(a.m());
        for (int c = 0; c < a.comp(i).ncomp(); ++c) mv[BladeMask(c)] = component_mean(a.comp(i), c);
        means.push_back(mv);
    }
    return means;
}

DifferentialForm form_sub_const(const DifferentialForm& a, const std::vector<Multivector>& c) {
    if (c.size() != std::size_t(a.ncomp())) throw std::invalid_argument("constant form mismatch");
    DifferentialForm r = a;
    for (int i = 0; i < r.ncomp(); ++i) {
        MultivectorField& f = r.comp(i);
        for (int cc = 0; cc < f.ncomp(); ++cc) {
            const double v = c[std::size_t(i)][BladeMask(cc)];
            if (v == 0.0) continue;
            double* d = f.comp(cc);
            for (std::size_t p = 0; p < f.npoints(); ++p) d[p] -= v;
        }
    }
    return r;
}

DifferentialForm exterior_d(const DifferentialForm& w) {
    const int d = w.spec().d, k = w.degree();
    if (k >= d) throw std::invalid_argument("exterior_d: form already of top degree");
    DifferentialForm r(w.spec(), k + 1, w.m());
    for (int i = 0; i < r.ncomp(); ++i) {
        const std::vector<int>& J = r.indices(i);
        MultivectorField acc(w.spec(), w.m());
        for (std::size_t t = 0; t < J.size(); ++t) {
            std::vector<int> rest = J;
            rest.erase(rest.begin() + std::ptrdiff_t(t));
            MultivectorField term = partial_derivative(w.comp(w.index_of(rest)), J[t]);
            kernels::axpy(t % 2 == 0 ? 1.0 : -1.0, term.raw().data(), acc.raw().data(),
                          acc.raw().size());
        }
        r.comp(i) = std::move(acc);
    }
    return r;
}

DifferentialForm hodge_star(const DifferentialForm& w) {
    const int d = w.spec().d, k = w.degree();
    DifferentialForm r(w.spec(), d - k, w.m());
    for (int i = 0; i < w.ncomp(); ++i) {
        const std::vector<int>& I = w.indices(i);
        std::vector<int> Ic;
        for (int a = 0; a < d; ++a)
            if (std::find(I.begin(), I.end(), a) == I.end()) Ic.push_back(a);
        const int sgn = shuffle_sign(I, Ic);
        r.comp(r.index_of(Ic)) = field_scale(w.comp(i), double(sgn));
    }
    return r;
}

DifferentialForm codifferential(const DifferentialForm& w) {
    const int d = w.spec().d, k = w.degree();
    if (k < 1) throw std::invalid_argument("codifferential: degree must be >= 1");
    const int sgn = (d * (k - 1) + 1) % 2 == 0 ? 1 : -1;
    return form_scale(hodge_star(exterior_d(hodge_star(w))), double(sgn));
}

DifferentialForm gradient_form(const MultivectorField& f) {
    DifferentialForm r(f.spec(), 1, f.m());
    for (int a = 0; a < f.spec().d; ++a) r.comp(a) = partial_derivative(f, a);
    return r;
}

HodgeSplit linear_hodge_decompose(const DifferentialForm& omega) {
    if (omega.degree() != 1) throw std::invalid_argument("linear decomposition expects a 1-form");
    DifferentialForm dstar = codifferential(omega);  // 0-form
    HodgeSplit split;
    split.gamma = inv_laplacian(dstar.comp(0));
    split.Y = form_inv_laplacian(exterior_d(omega));
    split.harmonic = form_mean(omega);

    DifferentialForm rec = form_add(gradient_form(split.gamma), codifferential(split.Y));
    DifferentialForm resid = form_sub_const(form_sub(omega, rec), split.harmonic);
    split.reconstruction_residual = form_l2(resid);
    split.dY_residual = omega.spec().d > 2 ? form_l2(exterior_d(split.Y)) : 0.0;
    return split;
}

namespace {

// --- Band-compact spectral calculus used by the nonlinear iteration --------
//
// The defect-correction loop only needs physical space for the two pointwise
// gauge products per pass; everything else (d, d*, inverse Laplacian, band
// projection, norms, means) is a Fourier multiplier supported on the kept
// band |k|_inf <= K, so the iteration stores its state compactly on those
// modes and scatters to the full grid only around the FFTs.

struct BandSpace {
    GridSpec spec;
    int m = 4;
    int nc = 16;                              // blade components
    std::vector<std::size_t> idx;             // full-grid position per slot
    std::vector<std::array<int, 4>> k;        // signed wavenumbers per slot
    std::vector<double> k2;                   // |k|^2 per slot
    std::size_t slot0 = 0;                    // slot of the zero mode

    BandSpace(const GridSpec& s, int m_, int K) : spec(s), m(m_), nc(1 << m_) {
        std::vector<int> x(std::size_t(s.d));
        for (std::size_t i = 0; i < s.npoints(); ++i) {
            s.coords(i, x.data());
            std::array<int, 4> kk{};
            bool ok = true;
            double sq = 0;
            for (int a = 0; a < s.d; ++a) {
                kk[std::size_t(a)] = s.wavenumber(x[std::size_t(a)]);
                ok = ok && kk[std::size_t(a)] <= K && kk[std::size_t(a)] >= -K;
                sq += double(kk[std::size_t(a)]) * double(kk[std::size_t(a)]);
            }
            if (!ok) continue;
            if (sq == 0.0) slot0 = idx.size();
            idx.push_back(i);
            k.push_back(kk);
            k2.push_back(sq);
        }
    }
    std::size_t n() const { return idx.size(); }
};

// One band-compact multivector field: blade-component-major, nc * nband.
using BandField = std::vector<std::complex<double>>;
// Form components in DifferentialForm::index_sets order; degree kept by caller.
using BandForm = std::vector<BandField>;

BandField band_gather(const MultivectorField& f, const BandSpace& bs) {
    SpectralField F = to_spectral(f);
    const std::size_t nb = bs.n();
    BandField r(std::size_t(bs.nc) * nb);
    for (int c = 0; c < bs.nc; ++c) {
        const std::complex<double>* src = F.comp(c);
        std::complex<double>* dst = r.data() + std::size_t(c) * nb;
        for (std::size_t s = 0; s < nb; ++s) dst[s] = src[bs.idx[s]];
    }
    return r;
}

MultivectorField band_scatter(const BandField& f, const BandSpace& bs) {
    SpectralField F(bs.spec, bs.m);
    const std::size_t nb = bs.n();
    for (int c = 0; c < bs.nc; ++c) {
        const std::complex<double>* src = f.data() + std::size_t(c) * nb;
        std::complex<double>* dst = F.comp(c);
        for (std::size_t s = 0; s < nb; ++s) dst[bs.idx[s]] = src[s];
    }
    return to_physical(F);
}

int band_index_of(const std::vector<std::vector<int>>& sets, const std::vector<int>& idx) {
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (sets[i] == idx) return int(i);
    throw std::logic_error("multi-index not found");
}

BandForm band_exterior_d(const BandForm& w, int deg, const BandSpace& bs) {
    const auto& in_sets = DifferentialForm::index_sets(bs.spec.d, deg);
    const auto& out_sets = DifferentialForm::index_sets(bs.spec.d, deg + 1);
    const std::size_t nb = bs.n();
    BandForm r;
    for (const auto& J : out_sets) {
        BandField acc(std::size_t(bs.nc) * nb);
        for (std::size_t t = 0; t < J.size(); ++t) {
            std::vector<int> rest = J;
            rest.erase(rest.begin() + std::ptrdiff_t(t));
            const BandField& src = w[std::size_t(band_index_of(in_sets, rest))];
            const double sgn = t % 2 == 0 ? 1.0 : -1.0;
            const std::size_t axis = std::size_t(J[t]);
            for (int c = 0; c < bs.nc; ++c) {
                std::complex<double>* a = acc.data() + std::size_t(c) * nb;
                const std::complex<double>* s = src.data() + std::size_t(c) * nb;
                for (std::size_t p = 0; p < nb; ++p)
                    a[p] += std::complex<double>(0.0, sgn * double(bs.k[p][axis])) * s[p];
            }
        }
        r.push_back(std::move(acc));
    }
    return r;
}

BandForm band_star(const BandForm& w, int deg, const BandSpace& bs) {
    const auto& in_sets = DifferentialForm::index_sets(bs.spec.d, deg);
    const auto& out_sets = DifferentialForm::index_sets(bs.spec.d, bs.spec.d - deg);
    BandForm r(out_sets.size());
    for (std::size_t i = 0; i < in_sets.size(); ++i) {
        const std::vector<int>& I = in_sets[i];
        std::vector<int> Ic;
        for (int a = 0; a < bs.spec.d; ++a)
            if (std::find(I.begin(), I.end(), a) == I.end()) Ic.push_back(a);
        const double sgn = shuffle_sign(I, Ic);
        BandField dst = w[i];
        if (sgn < 0)
            for (auto& z : dst) z = -z;
        r[std::size_t(band_index_of(out_sets, Ic))] = std::move(dst);
    }
    return r;
}

BandForm band_codiff(const BandForm& w, int deg, const BandSpace& bs) {
    const int d = bs.spec.d;
    const double sgn = (d * (deg - 1) + 1) % 2 == 0 ? 1.0 : -1.0;
    BandForm s = band_star(band_exterior_d(band_star(w, deg, bs), d - deg, bs), d - deg + 1, bs);
    if (sgn < 0)
        for (auto& f : s)
            for (auto& z : f) z = -z;
    return s;
}

void band_inv_neg_lap(BandField& f, const BandSpace& bs) {
    const std::size_t nb = bs.n();
    for (int c = 0; c < bs.nc; ++c) {
        std::complex<double>* d = f.data() + std::size_t(c) * nb;
        for (std::size_t p = 0; p < nb; ++p) d[p] = bs.k2[p] == 0.0 ? 0.0 : d[p] / bs.k2[p];
    }
}

double band_form_l2(const BandForm& w, const BandSpace& bs) {
    double s = 0;
    for (const auto& f : w)
        for (const auto& z : f) s += std::norm(z);
    return std::sqrt(bs.spec.volume() * s);
}

}  // namespace

double gradient_lp_norm(const MultivectorField& q, double p) {
    // Stack all partial derivatives into one field so the pointwise magnitude
    // covers every component of grad q.
    const int d = q.spec().d;
    std::vector<MultivectorField> grads;
    grads.reserve(std::size_t(d));
    for (int a = 0; a < d; ++a) grads.push_back(partial_derivative(q, a));
    const std::size_t n = q.npoints();
    std::vector<double> mag(n, 0.0);
    for (const auto& g : grads)
        for (int c = 0; c < g.ncomp(); ++c) {
            const double* v = g.comp(c);
            for (std::size_t i = 0; i < n; ++i) mag[i] += v[i] * v[i];
        }
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::sqrt(mag[i]), p);
    return std::pow(s * q.spec().cell_volume(), 1.0 / p);
}

NonlinearHodge nonlinear_hodge_decompose(const DifferentialForm& F, const MultivectorField& q,
                                         const MultivectorField& qinv, int max_iter, double tol) {
    if (F.degree() != 1) throw std::invalid_argument("nonlinear decomposition expects a 1-form");
    NonlinearHodge nh;
    nh.dq_l4 = gradient_lp_norm(q, 4.0);
    const GridSpec& spec = F.spec();
    const int m = F.m();

    // Galerkin truncation: keep modes with |k|_inf <= K = (N-1)/3.  On that
    // band d d* + d* d = -Lap composes exactly (no Nyquist asymmetry) and
    // projected pointwise products are alias-free, so the corrections below
    // contract all the way to the tolerance instead of stalling at the
    // aliasing floor of the raw grid operators.
    const int K = (spec.N - 1) / 3;
    const BandSpace bs(spec, m, K);
    const std::size_t nb = bs.n();

    BandForm Fs;
    for (int a = 0; a < F.ncomp(); ++a) Fs.push_back(band_gather(F.comp(a), bs));
    const double fnorm = band_form_l2(Fs, bs);

    BandField A(std::size_t(bs.nc) * nb);
    BandForm B(DifferentialForm::index_sets(spec.d, 2).size(),
               BandField(std::size_t(bs.nc) * nb));
    nh.H.assign(std::size_t(F.ncomp()), Multivector(m));

    int bad_streak = 0;
    for (int it = 0; it < max_iter; ++it) {
        // q d*B via a physical-space product, regathered onto the band.
        BandForm qdB = band_codiff(B, 2, bs);
        for (auto& comp : qdB) comp = band_gather(field_mul(q, band_scatter(comp, bs)), bs);

        // Residual F - dA - q d*B - H (H lives in the zero-mode slot).
        BandForm resid = Fs;
        for (std::size_t a = 0; a < resid.size(); ++a)
            for (int c = 0; c < bs.nc; ++c) {
                std::complex<double>* d = resid[a].data() + std::size_t(c) * nb;
                const std::complex<double>* av = A.data() + std::size_t(c) * nb;
                const std::complex<double>* qv = qdB[a].data() + std::size_t(c) * nb;
                for (std::size_t p = 0; p < nb; ++p)
                    d[p] -= std::complex<double>(0.0, double(bs.k[p][a])) * av[p] + qv[p];
                d[bs.slot0] -= nh.H[a][BladeMask(c)];
            }
        const double r = band_form_l2(resid, bs);
        if (!nh.history.empty()) {
            const double ratio = r / nh.history.back();
            nh.ratios.push_back(ratio);
            bad_streak = ratio >= 1.0 ? bad_streak + 1 : 0;
            if (bad_streak >= 3)
                throw std::runtime_error(
                    "nonlinear_hodge_decompose: iteration is not contracting (||dq||_L4 = " +
                    std::to_string(nh.dq_l4) + ")");
        }
        nh.history.push_back(r);
        nh.residual = r;
        nh.iterations = it;
        if (r <= tol * (fnorm > 0 ? fnorm : 1.0)) break;

        // Defect corrections: split the residual r = dg + d* Y + mean and push
        // each piece into the matching unknown.
        for (std::size_t a = 0; a < resid.size(); ++a)
            for (int c = 0; c < bs.nc; ++c) {
                std::complex<double>& bin0 = resid[a][std::size_t(c) * nb + bs.slot0];
                nh.H[a][BladeMask(c)] += bin0.real();
                bin0 = 0.0;
            }

        BandForm dstar_r = band_codiff(resid, 1, bs);
        band_inv_neg_lap(dstar_r[0], bs);
        for (std::size_t p = 0; p < A.size(); ++p) A[p] += dstar_r[0][p];

        for (auto& comp : resid) comp = band_gather(field_mul(qinv, band_scatter(comp, bs)), bs);
        BandForm dB = band_exterior_d(resid, 1, bs);
        for (std::size_t a = 0; a < B.size(); ++a) {
            band_inv_neg_lap(dB[a], bs);
            for (std::size_t p = 0; p < B[a].size(); ++p) B[a][p] += dB[a][p];
        }
        nh.iterations = it + 1;
    }

    nh.A = band_scatter(A, bs);
    nh.B = DifferentialForm(spec, 2, m);
    for (std::size_t a = 0; a < B.size(); ++a) nh.B.comp(int(a)) = band_scatter(B[a], bs);
    return nh;
}

BComponents recover_b_components(const MultivectorField& f, const MultivectorField& q,
                                 const MultivectorField& qinv, const NonlinearHodge& nh) {
    (void)q;  // the identities below only need the inverse gauge
    const GridSpec& spec = f.spec();
    if (spec.d != 4) throw std::invalid_argument("recover_b_components requires d = 4");
    DifferentialForm dstarB = codifferential(nh.B);
    BComponents bc;
    for (int a = 0; a < 4; ++a) bc.b.push_back(dstarB.comp(a));

    // sum_a da b_a = -d* d* B = 0.
    MultivectorField div(spec, f.m());
    for (int a = 0; a < 4; ++a) {
        MultivectorField t = partial_derivative(bc.b[std::size_t(a)], a);
        kernels::axpy(1.0, t.raw().data(), div.raw().data(), div.raw().size());
    }
    bc.div_residual = field_l2(div);

    // s_a = q^{-1}(da A + H_a); then f = b0 + s0 and f = e_i (b_i + s_i).
    std::vector<MultivectorField> s;
    for (int a = 0; a < 4; ++a) {
        MultivectorField dA = partial_derivative(nh.A, a);
        const Multivector& Ha = nh.H[std::size_t(a)];
        for (int c = 0; c < dA.ncomp(); ++c) {
            const double v = Ha[BladeMask(c)];
            if (v == 0.0) continue;
            double* dptr = dA.comp(c);
            for (std::size_t p = 0; p < dA.npoints(); ++p) dptr[p] += v;
        }
        s.push_back(field_mul(qinv, dA));
    }

    double worst = field_l2(field_sub(f, field_add(bc.b[0], s[0])));
    for (int i = 1; i < 4; ++i) {
        MultivectorField t = field_add(bc.b[std::size_t(i)], s[std::size_t(i)]);
        MultivectorField eit = blade_multiply(t, BladeMask(1u << (i - 1)), DiracSide::left);
        worst = std::max(worst, field_l2(field_sub(f, eit)));
    }
    bc.bi_residual = worst;

    // First-order identity: dL b0 = sum_i di (e_i s0 + s_i).
    MultivectorField lhs = dirac(bc.b[0], {DiracSide::left, false, 4});
    MultivectorField rhs(spec, f.m());
    for (int i = 1; i < 4; ++i) {
        MultivectorField term =
            field_add(blade_multiply(s[0], BladeMask(1u << (i - 1)), DiracSide::left),
                      s[std::size_t(i)]);
        MultivectorField dterm = partial_derivative(term, i);
        kernels::axpy(1.0, dterm.raw().data(), rhs.raw().data(), rhs.raw().size());
    }
    bc.dirac_residual = field_l2(field_sub(lhs, rhs));
    return bc;
}

}  // namespace cliffpde
