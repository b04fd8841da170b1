#pragma once

#include "jet.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pherm {

// Real coordinate indexing on C^{N}: index 2j is x^j = Re z^j, index 2j+1 is
// y^j = Im z^j.
inline int x_index(int j) { return 2 * j; }
inline int y_index(int j) { return 2 * j + 1; }

// Immutable expression tree over the ambient coordinates z^j, conj(z^j).
// Construction runs a light simplifier: constant folding, zero/one
// elimination, flattening of nested sums and products, and pushing conj()
// down to the leaves.
class Expr {
public:
    enum class Kind { Constant, Coord, ConjCoord, Sum, Product, Power, Re, Im };

    Expr();  // the zero constant

    static Expr constant(cplx value);
    static Expr coord(int j);
    static Expr conj_coord(int j);

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, int exponent);
    friend Expr re(const Expr& e);
    friend Expr im(const Expr& e);
    friend Expr conj(const Expr& e);

    Kind kind() const;
    cplx constant_value() const;  // Constant only
    int coord_index() const;      // Coord / ConjCoord only
    int exponent() const;         // Power only
    std::span<const Expr> children() const;

    bool is_zero() const;
    bool is_constant() const { return kind() == Kind::Constant; }

    // Largest coordinate index appearing, or -1.
    int max_coordinate() const;
    std::size_t node_count() const;

    // Evaluation at a point given as 2N real coordinates.
    cplx evaluate(std::span<const double> point) const;
    // Forward-mode Taylor evaluation: exact coefficients up to space->max_order().
    Jet jet(const JetSpacePtr& space, std::span<const double> point) const;

    std::string to_string() const;

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Kind k, cplx v, int index, std::vector<Expr> children);
    static Expr make_sum(const std::vector<Expr>& terms);
    static Expr make_product(const std::vector<Expr>& factors);

    std::shared_ptr<const Node> node_;
};

// Exact partial derivative with respect to real coordinate r.
Expr differentiate(const Expr& e, int r);
// Mixed partial over a multi-index of real coordinates (length <= 5). The
// multi-index is sorted first, so permutations give identical trees.
Expr differentiate(const Expr& e, std::span<const int> multi_index);
// Wirtinger derivatives d/dz^j = (d/dx - i d/dy)/2 and d/dzbar^j.
Expr d_dz(const Expr& e, int j);
Expr d_dzbar(const Expr& e, int j);

// Grammar: identifiers z0..zN, conj(), re(), im(), + - * ^ with nonnegative
// integer exponents, decimal constants, parentheses. Throws InputError.
Expr parse_expression(std::string_view text);

// All mixed real partials of a scalar expression at a point, up to order 5.
class DerivativeTower {
public:
    static constexpr int kMaxOrder = 5;

    DerivativeTower(const Expr& e, std::span<const double> point, int order);

    int order() const { return jet_.order(); }
    std::span<const double> point() const { return point_; }
    cplx value() const { return jet_.value(); }
    cplx at(std::span<const int> multi_index) const { return jet_.partial(multi_index); }
    const Jet& jet() const { return jet_; }

private:
    std::vector<double> point_;
    Jet jet_;
};

}  // namespace pherm
