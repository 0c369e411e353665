#include "cliffpde/random_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cliffpde/spectral.hpp"

namespace cliffpde {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

double to_unit(std::uint64_t z) {
    // (0, 1]: never returns 0, safe inside log.
    return double((z >> 11) + 1) * 0x1.0p-53;
}

// Standard-normal pair derived deterministically from one 64-bit key.
std::pair<double, double> gaussian_pair(std::uint64_t key) {
    const double u1 = to_unit(splitmix64(key));
    const double u2 = to_unit(splitmix64(key ^ 0xd6e8feb86659fd93ULL));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

// Enumerates integer modes with 0 < |k|_inf <= B, one representative per
// conjugate pair (first nonzero coordinate positive).
void canonical_modes(int d, int B, std::vector<std::vector<int>>& out) {
    std::vector<int> k(std::size_t(d), -B);
    while (true) {
        bool canonical = false, zero = true;
        for (int a = 0; a < d; ++a) {
            if (k[std::size_t(a)] != 0) {
                canonical = k[std::size_t(a)] > 0;
                zero = false;
                break;
            }
        }
        if (!zero && canonical) out.push_back(k);
        int a = d - 1;
        while (a >= 0 && ++k[std::size_t(a)] > B) k[std::size_t(a--)] = -B;
        if (a < 0) break;
    }
}

}  // namespace

MultivectorField generate_field(const GridSpec& spec, int m, std::uint64_t seed, double amplitude,
                                int bandwidth, std::span<const BladeMask> support) {
    if (bandwidth < 1 || bandwidth >= spec.N / 2)
        throw std::invalid_argument("bandwidth must satisfy 1 <= B < N/2");
    SpectralField F(spec, m);
    if (amplitude != 0.0) {
        std::vector<std::vector<int>> modes;
        canonical_modes(spec.d, bandwidth, modes);
        const double scale = amplitude / std::sqrt(2.0 * double(modes.size()));
        std::vector<int> idx(std::size_t(spec.d));
        for (BladeMask c : support) {
            for (const auto& k : modes) {
                std::uint64_t h = hash_combine(splitmix64(seed), std::uint64_t(c));
                for (int a = 0; a < spec.d; ++a)
                    h = hash_combine(h, std::uint64_t(std::int64_t(k[std::size_t(a)]) + (1 << 20)));
                auto [g1, g2] = gaussian_pair(h);
                const std::complex<double> z(scale * g1, scale * g2);
                std::vector<int> neg(std::size_t(spec.d));
                for (int a = 0; a < spec.d; ++a) {
                    idx[std::size_t(a)] = (k[std::size_t(a)] + spec.N) % spec.N;
                    neg[std::size_t(a)] = (spec.N - k[std::size_t(a)]) % spec.N;
                }
                F.at(c, spec.index(idx.data())) = z;
                F.at(c, spec.index(neg.data())) = std::conj(z);
            }
        }
    }
    return to_physical(F);
}

MultivectorField generate_scalar_field(const GridSpec& spec, std::uint64_t seed, double amplitude,
                                       int bandwidth) {
    static constexpr BladeMask scalar_blade[] = {0};
    return generate_field(spec, 0, seed, amplitude, bandwidth, scalar_blade);
}

}  // namespace cliffpde
