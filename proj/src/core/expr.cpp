#include "expr.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace pherm {

struct Expr::Node {
    Kind kind = Kind::Constant;
    cplx value{};
    int index = 0;  // coordinate index or exponent
    std::vector<Expr> children;
};

Expr Expr::make(Kind k, cplx v, int index, std::vector<Expr> children) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->value = v;
    n->index = index;
    n->children = std::move(children);
    return Expr(std::move(n));
}

Expr::Expr() : Expr(make(Kind::Constant, {}, 0, {})) {}

Expr Expr::constant(cplx value) { return make(Kind::Constant, value, 0, {}); }
Expr Expr::coord(int j) { return make(Kind::Coord, {}, j, {}); }
Expr Expr::conj_coord(int j) { return make(Kind::ConjCoord, {}, j, {}); }

Expr::Kind Expr::kind() const { return node_->kind; }
cplx Expr::constant_value() const { return node_->value; }
int Expr::coord_index() const { return node_->index; }
int Expr::exponent() const { return node_->index; }
std::span<const Expr> Expr::children() const { return node_->children; }

bool Expr::is_zero() const { return kind() == Kind::Constant && node_->value == cplx{}; }

Expr Expr::make_sum(const std::vector<Expr>& terms) {
    std::vector<Expr> flat;
    cplx acc{};
    auto take = [&](const Expr& t) {
        if (t.is_constant())
            acc += t.constant_value();
        else
            flat.push_back(t);
    };
    for (const auto& t : terms) {
        if (t.kind() == Kind::Sum)
            for (const auto& c : t.children()) take(c);
        else
            take(t);
    }
    if (acc != cplx{}) flat.insert(flat.begin(), constant(acc));
    if (flat.empty()) return constant(0.0);
    if (flat.size() == 1) return flat.front();
    return make(Kind::Sum, {}, 0, std::move(flat));
}

Expr Expr::make_product(const std::vector<Expr>& factors) {
    std::vector<Expr> flat;
    cplx acc{1.0};
    auto take = [&](const Expr& f) {
        if (f.is_constant())
            acc *= f.constant_value();
        else
            flat.push_back(f);
    };
    for (const auto& f : factors) {
        if (f.kind() == Kind::Product)
            for (const auto& c : f.children()) take(c);
        else
            take(f);
    }
    if (acc == cplx{}) return constant(0.0);
    if (acc != cplx{1.0}) flat.insert(flat.begin(), constant(acc));
    if (flat.empty()) return constant(acc);
    if (flat.size() == 1) return flat.front();
    return make(Kind::Product, {}, 0, std::move(flat));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::make_sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make_sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make_product({a, b}); }
Expr operator-(const Expr& a) { return Expr::make_product({Expr::constant(-1.0), a}); }

Expr pow(const Expr& base, int exponent) {
    if (exponent < 0) throw InputError("negative exponents are not part of the grammar");
    if (exponent == 0) return Expr::constant(1.0);
    if (exponent == 1) return base;
    if (base.is_constant()) return Expr::constant(std::pow(base.constant_value(), exponent));
    if (base.kind() == Expr::Kind::Power)
        return pow(base.children()[0], base.exponent() * exponent);
    return Expr::make(Expr::Kind::Power, {}, exponent, {base});
}

Expr re(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return Expr::constant(e.constant_value().real());
        case Expr::Kind::Re:
        case Expr::Kind::Im: return e;
        default: return Expr::make(Expr::Kind::Re, {}, 0, {e});
    }
}

Expr im(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return Expr::constant(e.constant_value().imag());
        case Expr::Kind::Re:
        case Expr::Kind::Im: return Expr::constant(0.0);
        default: return Expr::make(Expr::Kind::Im, {}, 0, {e});
    }
}

Expr conj(const Expr& e) {
    switch (e.kind()) {
        case Expr::Kind::Constant: return Expr::constant(std::conj(e.constant_value()));
        case Expr::Kind::Coord: return Expr::conj_coord(e.coord_index());
        case Expr::Kind::ConjCoord: return Expr::coord(e.coord_index());
        case Expr::Kind::Sum: {
            std::vector<Expr> c;
            for (const auto& ch : e.children()) c.push_back(conj(ch));
            return Expr::make_sum(c);
        }
        case Expr::Kind::Product: {
            std::vector<Expr> c;
            for (const auto& ch : e.children()) c.push_back(conj(ch));
            return Expr::make_product(c);
        }
        case Expr::Kind::Power: return pow(conj(e.children()[0]), e.exponent());
        case Expr::Kind::Re:
        case Expr::Kind::Im: return e;
    }
    return e;
}

int Expr::max_coordinate() const {
    if (kind() == Kind::Coord || kind() == Kind::ConjCoord) return coord_index();
    int m = -1;
    for (const auto& c : children()) m = std::max(m, c.max_coordinate());
    return m;
}

std::size_t Expr::node_count() const {
    std::size_t n = 1;
    for (const auto& c : children()) n += c.node_count();
    return n;
}

cplx Expr::evaluate(std::span<const double> p) const {
    switch (kind()) {
        case Kind::Constant: return node_->value;
        case Kind::Coord: return {p[x_index(node_->index)], p[y_index(node_->index)]};
        case Kind::ConjCoord: return {p[x_index(node_->index)], -p[y_index(node_->index)]};
        case Kind::Sum: {
            cplx s{};
            for (const auto& c : children()) s += c.evaluate(p);
            return s;
        }
        case Kind::Product: {
            cplx s{1.0};
            for (const auto& c : children()) s *= c.evaluate(p);
            return s;
        }
        case Kind::Power: {
            const cplx b = children()[0].evaluate(p);
            cplx s{1.0};
            for (int k = 0; k < exponent(); ++k) s *= b;
            return s;
        }
        case Kind::Re: return children()[0].evaluate(p).real();
        case Kind::Im: return children()[0].evaluate(p).imag();
    }
    return {};
}

Jet Expr::jet(const JetSpacePtr& space, std::span<const double> p) const {
    switch (kind()) {
        case Kind::Constant: return Jet::constant(space, node_->value);
        case Kind::Coord:
        case Kind::ConjCoord: {
            const int j = node_->index;
            const cplx s = kind() == Kind::Coord ? cplx(0, 1) : cplx(0, -1);
            return Jet::variable(space, x_index(j), p[x_index(j)]) +
                   s * Jet::variable(space, y_index(j), p[y_index(j)]);
        }
        case Kind::Sum: {
            Jet acc = children()[0].jet(space, p);
            for (std::size_t i = 1; i < children().size(); ++i) acc += children()[i].jet(space, p);
            return acc;
        }
        case Kind::Product: {
            Jet acc = children()[0].jet(space, p);
            for (std::size_t i = 1; i < children().size(); ++i) acc = acc * children()[i].jet(space, p);
            return acc;
        }
        case Kind::Power: return pherm::pow(children()[0].jet(space, p), exponent());
        case Kind::Re: return children()[0].jet(space, p).real();
        case Kind::Im: return children()[0].jet(space, p).imag();
    }
    return Jet::constant(space, 0.0);
}

std::string Expr::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind()) {
        case Kind::Constant: {
            const cplx v = node_->value;
            if (v.imag() == 0.0)
                os << v.real();
            else
                os << "(" << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i)";
            break;
        }
        case Kind::Coord: os << "z" << node_->index; break;
        case Kind::ConjCoord: os << "conj(z" << node_->index << ")"; break;
        case Kind::Sum:
        case Kind::Product: {
            const char* sep = kind() == Kind::Sum ? "+" : "*";
            os << "(";
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i) os << sep;
                os << children()[i].to_string();
            }
            os << ")";
            break;
        }
        case Kind::Power: os << children()[0].to_string() << "^" << exponent(); break;
        case Kind::Re: os << "re(" << children()[0].to_string() << ")"; break;
        case Kind::Im: os << "im(" << children()[0].to_string() << ")"; break;
    }
    return os.str();
}

Expr differentiate(const Expr& e, int r) {
    using K = Expr::Kind;
    switch (e.kind()) {
        case K::Constant: return Expr::constant(0.0);
        case K::Coord:
        case K::ConjCoord: {
            const int j = e.coord_index();
            if (r == x_index(j)) return Expr::constant(1.0);
            if (r == y_index(j)) return Expr::constant(e.kind() == K::Coord ? cplx(0, 1) : cplx(0, -1));
            return Expr::constant(0.0);
        }
        case K::Sum: {
            Expr acc = Expr::constant(0.0);
            for (const auto& c : e.children()) acc = acc + differentiate(c, r);
            return acc;
        }
        case K::Product: {
            auto ch = e.children();
            Expr acc = Expr::constant(0.0);
            for (std::size_t i = 0; i < ch.size(); ++i) {
                Expr d = differentiate(ch[i], r);
                if (d.is_zero()) continue;
                Expr term = d;
                for (std::size_t k = 0; k < ch.size(); ++k)
                    if (k != i) term = term * ch[k];
                acc = acc + term;
            }
            return acc;
        }
        case K::Power: {
            const Expr& b = e.children()[0];
            Expr d = differentiate(b, r);
            if (d.is_zero()) return d;
            return Expr::constant(static_cast<double>(e.exponent())) * pow(b, e.exponent() - 1) * d;
        }
        case K::Re: return re(differentiate(e.children()[0], r));
        case K::Im: return im(differentiate(e.children()[0], r));
    }
    return Expr::constant(0.0);
}

Expr differentiate(const Expr& e, std::span<const int> multi_index) {
    if (multi_index.size() > static_cast<std::size_t>(DerivativeTower::kMaxOrder))
        throw InputError("multi-index longer than 5");
    std::vector<int> idx(multi_index.begin(), multi_index.end());
    std::sort(idx.begin(), idx.end());
    Expr out = e;
    for (int r : idx) out = differentiate(out, r);
    return out;
}

Expr d_dz(const Expr& e, int j) {
    return Expr::constant(0.5) * differentiate(e, x_index(j)) +
           Expr::constant(cplx(0, -0.5)) * differentiate(e, y_index(j));
}

Expr d_dzbar(const Expr& e, int j) {
    return Expr::constant(0.5) * differentiate(e, x_index(j)) +
           Expr::constant(cplx(0, 0.5)) * differentiate(e, y_index(j));
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("expression parse error at column " + std::to_string(pos_ + 1) + ": " + what +
                         " in \"" + std::string(s_) + "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Expr term() {
        Expr acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    Expr unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Expr power() {
        Expr base = primary();
        if (accept('^')) {
            skip();
            int k = 0;
            const char* first = s_.data() + pos_;
            auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), k);
            if (ec != std::errc() || ptr == first) fail("expected a nonnegative integer exponent");
            pos_ += static_cast<std::size_t>(ptr - first);
            if (k < 0) fail("expected a nonnegative integer exponent");
            return pow(base, k);
        }
        return base;
    }

    Expr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = pos_;
            while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.'))
                ++end;
            if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
                std::size_t k = end + 1;
                if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
                if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                    end = k;
                    while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
                }
            }
            const std::string num(s_.substr(pos_, end - pos_));
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(num, &used);
            } catch (const std::exception&) {
                fail("bad number '" + num + "'");
            }
            if (used != num.size()) fail("bad number '" + num + "'");
            pos_ = end;
            return Expr::constant(v);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
            const std::string id(s_.substr(pos_, end - pos_));
            pos_ = end;
            if (id == "conj" || id == "re" || id == "im") {
                expect('(');
                Expr arg = expr();
                expect(')');
                if (id == "conj") return conj(arg);
                if (id == "re") return re(arg);
                return im(arg);
            }
            if (id.size() >= 2 && id[0] == 'z' &&
                std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                return Expr::coord(std::stoi(id.substr(1)));
            fail("unknown identifier '" + id + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(text).parse(); }

DerivativeTower::DerivativeTower(const Expr& e, std::span<const double> point, int order)
    : point_(point.begin(), point.end()) {
    if (order < 0 || order > kMaxOrder) throw InputError("derivative tower order must be in [0, 5]");
    jet_ = e.jet(JetSpace::get(static_cast<int>(point.size()), order), point);
}

}  // namespace pherm
