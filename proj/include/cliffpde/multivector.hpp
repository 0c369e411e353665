#ifndef CLIFFPDE_MULTIVECTOR_HPP
#define CLIFFPDE_MULTIVECTOR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cliffpde {

// Basis blade of Cl_m encoded as a bitmask over the generators e_1..e_m.
// Bit (i-1) set means e_i participates; mask 0 is the scalar e_0.
using BladeMask = std::uint16_t;

inline int popcount16(BladeMask m) { return __builtin_popcount(m); }

// Sign picked up when reordering the concatenation e_A e_B into the
// canonical increasing product: (-1)^{#transpositions}.
inline int reorder_sign(BladeMask a, BladeMask b) {
    int swaps = 0;
    a >>= 1;
    while (a) {
        swaps += popcount16(static_cast<BladeMask>(a & b));
        a >>= 1;
    }
    return (swaps & 1) ? -1 : 1;
}

// Product sign of two basis blades with the metric e_i^2 = -1:
// reordering sign times (-1) per generator shared by both blades.
inline int blade_product_sign(BladeMask a, BladeMask b) {
    int s = reorder_sign(a, b);
    if (popcount16(static_cast<BladeMask>(a & b)) & 1) s = -s;
    return s;
}

/// Element of the universal Clifford algebra Cl_m, m <= 8, stored as
/// 2^m real coefficients indexed by blade mask.
class Multivector {
public:
    Multivector() : m_(0), coeffs_(1, 0.0) {}
    explicit Multivector(int m) : m_(check_dim(m)), coeffs_(std::size_t(1) << m, 0.0) {}

    static Multivector blade(int m, BladeMask mask, double c = 1.0) {
        Multivector r(m);
        r.at(mask) = c;
        return r;
    }
    static Multivector scalar(int m, double c) { return blade(m, 0, c); }
    static Multivector basis_vector(int m, int i) {  // e_i, 1 <= i <= m
        if (i < 1 || i > m) throw std::invalid_argument("generator index out of range");
        return blade(m, BladeMask(1u << (i - 1)));
    }

    int dim() const { return m_; }
    std::size_t size() const { return coeffs_.size(); }
    double& at(BladeMask mask) { return coeffs_.at(mask); }
    double at(BladeMask mask) const { return coeffs_.at(mask); }
    double& operator[](BladeMask mask) { return coeffs_[mask]; }
    double operator[](BladeMask mask) const { return coeffs_[mask]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    Multivector& operator+=(const Multivector& o) {
        require_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    Multivector& operator-=(const Multivector& o) {
        require_same(o);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    Multivector& operator*=(double c) {
        for (double& x : coeffs_) x *= c;
        return *this;
    }

    friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
    friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
    friend Multivector operator*(Multivector a, double c) { return a *= c; }
    friend Multivector operator*(double c, Multivector a) { return a *= c; }

    double norm2() const {
        double s = 0;
        for (double x : coeffs_) s += x * x;
        return s;
    }
    double norm() const;

    void require_same(const Multivector& o) const {
        if (m_ != o.m_) throw std::invalid_argument("multivector dimension mismatch");
    }

private:
    static int check_dim(int m) {
        if (m < 0 || m > 8) throw std::invalid_argument("Cl_m supported only for 0 <= m <= 8");
        return m;
    }
    int m_;
    std::vector<double> coeffs_;
};

/// Geometric product under e_i^2 = -1, e_i e_j = -e_j e_i.
Multivector mv_mul(const Multivector& a, const Multivector& b);

/// Principal automorphism: sigma(e_i) = -e_i, extended multiplicatively.
Multivector grade_involution(const Multivector& a);

double mv_dot(const Multivector& a, const Multivector& b);

}  // namespace cliffpde

#endif
