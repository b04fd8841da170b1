#include "jet.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace pherm {

namespace {

void enumerate(int vars, int remaining, std::vector<std::uint8_t>& cur, int pos,
               std::vector<std::vector<std::uint8_t>>& out) {
    if (pos == vars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[pos] = static_cast<std::uint8_t>(e);
        enumerate(vars, remaining - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

std::uint64_t encode(std::span<const std::uint8_t> e, int base) {
    std::uint64_t key = 0;
    for (auto v : e) key = key * static_cast<std::uint64_t>(base) + v;
    return key;
}

}  // namespace

JetSpace::JetSpace(int vars, int max_order) : vars_(vars), max_order_(max_order) {
    std::vector<std::vector<std::uint8_t>> monos;
    std::vector<std::uint8_t> cur(vars, 0);
    enumerate(vars, max_order, cur, 0, monos);
    auto deg = [](const std::vector<std::uint8_t>& m) {
        return std::accumulate(m.begin(), m.end(), 0);
    };
    std::stable_sort(monos.begin(), monos.end(), [&](const auto& a, const auto& b) {
        int da = deg(a), db = deg(b);
        if (da != db) return da < db;
        return a > b;
    });

    const std::size_t count = monos.size();
    exps_.reserve(count * vars);
    degree_.reserve(count);
    prefix_.assign(max_order + 1, 0);
    std::map<std::uint64_t, std::uint32_t> lookup;
    for (std::size_t i = 0; i < count; ++i) {
        exps_.insert(exps_.end(), monos[i].begin(), monos[i].end());
        const int d = deg(monos[i]);
        degree_.push_back(d);
        for (int k = d; k <= max_order; ++k) prefix_[k] = i + 1;
        lookup.emplace(encode(monos[i], max_order + 1), static_cast<std::uint32_t>(i));
    }

    std::vector<std::uint8_t> tmp(vars);
    raise_.assign(vars, std::vector<std::uint32_t>(count, 0));
    for (int r = 0; r < vars; ++r) {
        for (std::size_t i = 0; i < count; ++i) {
            if (degree_[i] >= max_order) continue;
            std::copy_n(&exps_[i * vars], vars, tmp.begin());
            ++tmp[r];
            raise_[r][i] = lookup.at(encode(tmp, max_order + 1));
        }
    }

    product_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t lim = size(max_order - degree_[i]);
        auto& row = product_[i];
        row.resize(lim);
        for (std::size_t j = 0; j < lim; ++j) {
            for (int v = 0; v < vars; ++v) tmp[v] = exps_[i * vars + v] + exps_[j * vars + v];
            row[j] = lookup.at(encode(tmp, max_order + 1));
        }
    }
}

std::shared_ptr<const JetSpace> JetSpace::get(int vars, int max_order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{vars, max_order}];
    if (!slot) slot = std::make_shared<const JetSpace>(vars, max_order);
    return slot;
}

std::span<const std::uint8_t> JetSpace::exponents(std::size_t idx) const {
    return {exps_.data() + idx * vars_, static_cast<std::size_t>(vars_)};
}

std::size_t JetSpace::index_of(std::span<const int> exps) const {
    const int d = std::accumulate(exps.begin(), exps.end(), 0);
    if (static_cast<int>(exps.size()) != vars_ || d > max_order_)
        throw std::out_of_range("monomial outside jet space");
    for (std::size_t i = (d == 0 ? 0 : prefix_[d - 1]); i < prefix_[d]; ++i) {
        auto e = exponents(i);
        if (std::equal(e.begin(), e.end(), exps.begin(),
                       [](std::uint8_t a, int b) { return a == b; }))
            return i;
    }
    throw std::out_of_range("monomial not found");
}

Jet::Jet(JetSpacePtr space, int order)
    : space_(std::move(space)), order_(order), c_(space_->size(order)) {}

Jet Jet::constant(JetSpacePtr space, cplx value) {
    const int k = space->max_order();
    Jet j(std::move(space), k);
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(JetSpacePtr space, int r, double value) {
    Jet j = constant(space, value);
    if (j.order_ >= 1) j.c_[space->raise(0, r)] = 1.0;
    return j;
}

cplx Jet::partial(std::span<const int> indices) const {
    if (static_cast<int>(indices.size()) > order_)
        throw std::out_of_range("derivative order exceeds jet order");
    std::vector<int> e(space_->vars(), 0);
    for (int r : indices) ++e.at(r);
    double factorial = 1.0;
    for (int v : e)
        for (int k = 2; k <= v; ++k) factorial *= k;
    return factorial * c_[space_->index_of(e)];
}

Jet Jet::diff(int r) const {
    if (order_ == 0) throw std::logic_error("cannot differentiate an order-0 jet");
    Jet out(space_, order_ - 1);
    for (std::size_t i = 0; i < out.c_.size(); ++i) {
        const std::size_t up = space_->raise(i, r);
        out.c_[i] = c_[up] * static_cast<double>(space_->exponents(up)[r]);
    }
    return out;
}

Jet Jet::conj() const {
    Jet out = *this;
    for (auto& v : out.c_) v = std::conj(v);
    return out;
}

Jet Jet::real() const {
    Jet out = *this;
    for (auto& v : out.c_) v = v.real();
    return out;
}

Jet Jet::imag() const {
    Jet out = *this;
    for (auto& v : out.c_) v = v.imag();
    return out;
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet out(space_, order);
    std::copy_n(c_.begin(), out.c_.size(), out.c_.begin());
    return out;
}

Jet Jet::inverse() const {
    const cplx f0 = value();
    if (std::abs(f0) == 0.0) throw GeometryError("jet inverse of a function vanishing at the base point");
    // 1/f = (1/f0) * sum_k (-h)^k with h = f/f0 - 1, h(0) = 0.
    Jet h = *this * (1.0 / f0);
    h.c_[0] = 0.0;
    Jet g = constant(space_, 1.0).truncated(order_);
    for (int k = 0; k < order_; ++k) {
        g = -(h * g);
        g.c_[0] += 1.0;
    }
    return g * (1.0 / f0);
}

Jet& Jet::operator+=(const Jet& o) {
    if (o.order_ < order_) {
        order_ = o.order_;
        c_.resize(o.c_.size());
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    if (o.order_ < order_) {
        order_ = o.order_;
        c_.resize(o.c_.size());
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Jet& Jet::operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
}

Jet Jet::operator-() const {
    Jet out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    const int k = std::min(a.order_, b.order_);
    const auto& sp = *a.space_;
    Jet out(a.space_, k);
    const std::size_t n = out.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx ai = a.c_[i];
        if (ai == cplx{}) continue;
        const std::size_t lim = sp.size(k - sp.degree(i));
        const auto& row = sp.product_row(i);
        for (std::size_t j = 0; j < lim; ++j) out.c_[row[j]] += ai * b.c_[j];
    }
    return out;
}

Jet operator+(Jet a, cplx s) {
    if (!a.c_.empty()) a.c_[0] += s;
    return a;
}

Jet pow(const Jet& base, int exponent) {
    if (exponent < 0) return pow(base, -exponent).inverse();
    Jet result = Jet::constant(base.space(), 1.0).truncated(base.order());
    Jet sq = base;
    while (exponent > 0) {
        if (exponent & 1) result = result * sq;
        exponent >>= 1;
        if (exponent) sq = sq * sq;
    }
    return result;
}

std::vector<Jet> solve(std::vector<Jet> a, std::vector<Jet> b, int n, int m) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(a[col * n + col].value());
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + col].value());
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-14) throw GeometryError("singular jet linear system");
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            for (int c = 0; c < m; ++c) std::swap(b[col * m + c], b[piv * m + c]);
        }
        const Jet inv = a[col * n + col].inverse();
        for (int r = col + 1; r < n; ++r) {
            const Jet f = a[r * n + col] * inv;
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            for (int c = 0; c < m; ++c) b[r * m + c] -= f * b[col * m + c];
        }
    }
    for (int col = n - 1; col >= 0; --col) {
        const Jet inv = a[col * n + col].inverse();
        for (int c = 0; c < m; ++c) {
            Jet acc = b[col * m + c];
            for (int k = col + 1; k < n; ++k) acc -= a[col * n + k] * b[k * m + c];
            b[col * m + c] = acc * inv;
        }
    }
    return b;
}

}  // namespace pherm
