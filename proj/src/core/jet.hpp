#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace pherm {

using cplx = std::complex<double>;

// Monomial bookkeeping for truncated Taylor polynomials in `vars` real
// variables up to total degree `max_order`. Monomials are stored in graded
// order so that the coefficients of a jet of order K form a prefix.
class JetSpace {
public:
    static std::shared_ptr<const JetSpace> get(int vars, int max_order);

    int vars() const { return vars_; }
    int max_order() const { return max_order_; }

    std::size_t size(int order) const { return order < 0 ? 0 : prefix_[order]; }
    int degree(std::size_t idx) const { return degree_[idx]; }
    std::span<const std::uint8_t> exponents(std::size_t idx) const;

    // Index of the monomial with the given exponent vector; throws if absent.
    std::size_t index_of(std::span<const int> exps) const;

    // Index of monomial idx * x_r, valid when degree(idx) < max_order.
    std::size_t raise(std::size_t idx, int r) const { return raise_[r][idx]; }

    // product_row(i)[j] is the index of monomial_i * monomial_j, defined for
    // j < size(max_order - degree(i)).
    const std::vector<std::uint32_t>& product_row(std::size_t i) const { return product_[i]; }

    JetSpace(int vars, int max_order);

private:
    int vars_;
    int max_order_;
    std::vector<std::size_t> prefix_;
    std::vector<std::uint8_t> exps_;  // flattened, vars_ per monomial
    std::vector<int> degree_;
    std::vector<std::vector<std::uint32_t>> raise_;
    std::vector<std::vector<std::uint32_t>> product_;
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

// A complex-valued function known through its Taylor coefficients at a base
// point, exact up to total degree order(). Arithmetic truncates to the lower
// order of the operands; differentiation lowers the order by one.
class Jet {
public:
    Jet() = default;
    Jet(JetSpacePtr space, int order);

    static Jet constant(JetSpacePtr space, cplx value);
    // The coordinate function x_r around base value `value`.
    static Jet variable(JetSpacePtr space, int r, double value);

    const JetSpacePtr& space() const { return space_; }
    int order() const { return order_; }
    bool valid() const { return space_ != nullptr; }

    cplx value() const { return c_.empty() ? cplx{} : c_[0]; }
    cplx coeff(std::size_t idx) const { return c_[idx]; }
    std::span<const cplx> coeffs() const { return c_; }
    std::span<cplx> coeffs() { return c_; }

    // Mixed partial derivative at the base point; `indices` lists the
    // variables differentiated (with repetition), in any order.
    cplx partial(std::span<const int> indices) const;

    Jet diff(int r) const;
    Jet conj() const;
    Jet real() const;
    Jet imag() const;
    Jet truncated(int order) const;
    Jet inverse() const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(cplx s);
    Jet operator-() const;

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, cplx s) { return a *= s; }
    friend Jet operator*(cplx s, Jet a) { return a *= s; }
    friend Jet operator*(Jet a, double s) { return a *= cplx(s); }
    friend Jet operator*(double s, Jet a) { return a *= cplx(s); }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
    friend Jet operator/(Jet a, cplx s) { return a *= (1.0 / s); }
    friend Jet operator/(Jet a, double s) { return a *= cplx(1.0 / s); }
    friend Jet operator+(Jet a, cplx s);
    friend Jet operator+(cplx s, Jet a) { return std::move(a) + s; }
    friend Jet operator-(Jet a, cplx s) { return std::move(a) + (-s); }
    friend Jet operator-(cplx s, const Jet& a) { return (-a) + s; }

private:
    JetSpacePtr space_;
    int order_ = 0;
    std::vector<cplx> c_;
};

Jet pow(const Jet& base, int exponent);

// Solves A x = b column-by-column by Gaussian elimination with partial
// pivoting on base-point magnitudes. A is row-major n*n; B is n*m.
// Throws GeometryError when a pivot vanishes at the base point.
std::vector<Jet> solve(std::vector<Jet> a, std::vector<Jet> b, int n, int m);

}  // namespace pherm
