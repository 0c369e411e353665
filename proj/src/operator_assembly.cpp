#include "cliffpde/operator_assembly.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <stdexcept>

#include "cliffpde/spectral.hpp"
#include "cliffpde/subspaces.hpp"

namespace cliffpde {

namespace {

// Left-multiplication matrix of a (complex-coefficient) multivector in Cl_4.
using CMat16 = Eigen::Matrix<std::complex<double>, 16, 16>;

CMat16 left_mult_matrix(const std::array<std::complex<double>, 16>& g) {
    CMat16 L = CMat16::Zero();
    for (int a = 0; a < 16; ++a) {
        if (g[std::size_t(a)] == std::complex<double>(0.0)) continue;
        for (int c = 0; c < 16; ++c) {
            const int s = blade_product_sign(BladeMask(a), BladeMask(c));
            L(a ^ c, c) += double(s) * g[std::size_t(a)];
        }
    }
    return L;
}

}  // namespace

AssembledOperator assemble_operator(const GaugePotential& beta, int K) {
    if (beta.d != 4) throw std::invalid_argument("assemble_operator requires d = 4");
    if (K < 0) throw std::invalid_argument("assemble_operator: K must be >= 0");
    const int W = 2 * K + 1;
    const long nmodes = long(W) * W * W * W;
    const long dimc = 16 * nmodes;
    if (dimc > 10000) throw std::invalid_argument("assemble_operator: size cap 10^4 exceeded");

    // Fourier coefficients of the multiplier field beta e4.
    SpectralField bhat = to_spectral(beta.times_ed(4));
    const GridSpec& spec = beta.spec();

    auto mode_of = [&](long idx, int* k) {
        for (int a = 3; a >= 0; --a) {
            k[a] = int(idx % W) - K;
            idx /= W;
        }
    };

    // Complex left-mult matrices L(e_i) for the derivative part.
    std::array<std::complex<double>, 16> unit{};
    std::array<CMat16, 3> Le;
    for (int i = 0; i < 3; ++i) {
        unit.fill(0.0);
        unit[std::size_t(1 << i)] = 1.0;
        Le[std::size_t(i)] = left_mult_matrix(unit);
    }

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dimc, dimc);
    std::vector<int> kr(4), kc(4), idx(4);
    for (long r = 0; r < nmodes; ++r) {
        mode_of(r, kr.data());
        // Derivative part, diagonal in the mode index:
        // i (k0 I - sum_i k_i L(e_i)).
        CMat16 blk = CMat16::Identity() * double(kr[0]);
        for (int i = 0; i < 3; ++i) blk -= double(kr[std::size_t(i) + 1]) * Le[std::size_t(i)];
        M.block<16, 16>(16 * r, 16 * r) += std::complex<double>(0.0, 1.0) * blk;

        // Multiplier part: row k couples column k' through -L(bhat(k - k')).
        for (long c = 0; c < nmodes; ++c) {
            mode_of(c, kc.data());
            bool in_range = true;
            for (int a = 0; a < 4; ++a) {
                const int eta = kr[std::size_t(a)] - kc[std::size_t(a)];
                if (eta < -spec.N / 2 || eta >= spec.N / 2) in_range = false;
                idx[std::size_t(a)] = (eta + spec.N) % spec.N;
            }
            if (!in_range) continue;
            const std::size_t pt = spec.index(idx.data());
            std::array<std::complex<double>, 16> g;
            bool nonzero = false;
            for (int cc = 0; cc < 16; ++cc) {
                g[std::size_t(cc)] = bhat.at(cc, pt);
                if (std::abs(g[std::size_t(cc)]) > 1e-15) nonzero = true;
            }
            if (!nonzero) continue;
            M.block<16, 16>(16 * r, 16 * c) -= left_mult_matrix(g);
        }
    }

    AssembledOperator op;
    op.dim_complex = int(dimc);
    const long dr = 2 * dimc;
    op.mat.assign(std::size_t(dr) * std::size_t(dr), 0.0);
    for (long r = 0; r < dimc; ++r)
        for (long c = 0; c < dimc; ++c) {
            const std::complex<double> z = M(r, c);
            if (z == std::complex<double>(0.0)) continue;
            op.mat[std::size_t((2 * r) * dr + 2 * c)] = z.real();
            op.mat[std::size_t((2 * r) * dr + 2 * c + 1)] = -z.imag();
            op.mat[std::size_t((2 * r + 1) * dr + 2 * c)] = z.imag();
            op.mat[std::size_t((2 * r + 1) * dr + 2 * c + 1)] = z.real();
        }
    return op;
}

KernelDiagnostic kernel_diagnostic(const AssembledOperator& op, double threshold) {
    const long dr = 2 * long(op.dim_complex);
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> A(
        op.mat.data(), dr, dr);
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A);
    KernelDiagnostic diag;
    const auto& sv = svd.singularValues();
    diag.singular_values.assign(sv.data(), sv.data() + sv.size());
    for (double s : diag.singular_values) {
        if (s < threshold)
            ++diag.kernel_dim_real;
        else
            diag.smallest_nonzero = s;  // list is descending; last above threshold wins
    }
    diag.kernel_dim = diag.kernel_dim_real / 2;
    return diag;
}

}  // namespace cliffpde
