#include "pseudohermitian.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pherm {

namespace {

const cplx I{0.0, 1.0};

std::string format_point(const Point& p) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
    os << ")";
    return os.str();
}

double max_abs(const Field& v) {
    double m = 0;
    for (const auto& c : v) m = std::max(m, std::abs(c.value()));
    return m;
}

Field difference(const Field& a, const Field& b) {
    Field out = a;
    for (std::size_t r = 0; r < out.size(); ++r) out[r] -= b[r];
    return out;
}

}  // namespace

LocalStructure::LocalStructure(const Hypersurface& surface, const Point& p, std::optional<int> chart,
                               Conventions conv)
    : surface_(&surface),
      point_(p),
      n_(surface.n),
      dim_(surface.real_dim()),
      chart_(chart.value_or(-1)),
      conv_(conv),
      space_(JetSpace::get(surface.real_dim(), kJetOrder)) {
    if (static_cast<int>(p.size()) != dim_) throw InputError("point has wrong dimension");
    phi_ = surface.phi.jet(space_, p);
    if (std::abs(phi_.value().imag()) > 1e-9)
        throw InputError("defining function is not real-valued at " + format_point(p));
    phi_ = phi_.real();
    dphi_.reserve(dim_);
    for (int r = 0; r < dim_; ++r) dphi_.push_back(phi_.diff(r));

    double grad = 0;
    for (const auto& d : dphi_) grad += std::norm(d.value());
    if (grad < 1e-20) throw GeometryError("surface singular (d phi = 0) at " + format_point(p));
    if (std::abs(phi_.value().real()) > 1e-8 * std::max(1.0, std::sqrt(grad)))
        throw InputError("point " + format_point(p) + " is not on the surface (phi = " +
                         std::to_string(phi_.value().real()) + ")");

    theta_.assign(dim_, zero());
    for (int j = 0; j <= n_; ++j) {
        theta_[x_index(j)] = -0.5 * dphi_[y_index(j)];
        theta_[y_index(j)] = 0.5 * dphi_[x_index(j)];
    }
    omega2_.assign(dim_ * dim_, zero());
    std::vector<std::vector<Jet>> dth(dim_);
    for (int r = 0; r < dim_; ++r)
        for (int s = 0; s < dim_; ++s) dth[r].push_back(theta_[s].diff(r));
    for (int r = 0; r < dim_; ++r)
        for (int s = 0; s < dim_; ++s) omega2_[r * dim_ + s] = conv_.d_factor * (dth[r][s] - dth[s][r]);

    build_frame();
    build_reeb();
    build_coframe();
    build_levi();
    build_connection();
    build_curvature();
}

Jet LocalStructure::derive(const Field& v, const Jet& f) const {
    Jet acc = v[0] * f.diff(0);
    for (int r = 1; r < dim_; ++r) acc += v[r] * f.diff(r);
    return acc;
}

Field LocalStructure::bracket(const Field& u, const Field& w) const {
    Field out(dim_);
    for (int r = 0; r < dim_; ++r) out[r] = derive(u, w[r]) - derive(w, u[r]);
    return out;
}

Field LocalStructure::conj(const Field& v) const {
    Field out(dim_);
    for (int r = 0; r < dim_; ++r) out[r] = v[r].conj();
    return out;
}

Field LocalStructure::zero_field() const { return Field(dim_, zero()); }

Field LocalStructure::combine(std::span<const Jet> coeffs, std::span<const Field> fields) const {
    Field out = zero_field();
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (int r = 0; r < dim_; ++r) out[r] += coeffs[k] * fields[k][r];
    return out;
}

Jet LocalStructure::wedge(const Jet& a_u, const Jet& a_w, const Jet& b_u, const Jet& b_w) const {
    return conv_.d_factor * (a_u * b_w - a_w * b_u);
}

Jet LocalStructure::theta(const Field& v) const {
    Jet acc = theta_[0] * v[0];
    for (int r = 1; r < dim_; ++r) acc += theta_[r] * v[r];
    return acc;
}

Jet LocalStructure::dtheta(const Field& u, const Field& w) const {
    Jet acc = zero();
    for (int r = 0; r < dim_; ++r) {
        Jet row = zero();
        for (int s = 0; s < dim_; ++s)
            if (r != s) row += omega2_[r * dim_ + s] * w[s];
        acc += u[r] * row;
    }
    return acc;
}

void LocalStructure::build_frame() {
    std::vector<Jet> wirt;
    for (int j = 0; j <= n_; ++j) wirt.push_back(0.5 * dphi_[x_index(j)] + cplx(0, -0.5) * dphi_[y_index(j)]);
    if (chart_ < 0) {
        double best = -1;
        for (int j = 0; j <= n_; ++j)
            if (std::abs(wirt[j].value()) > best + 1e-15) {
                best = std::abs(wirt[j].value());
                chart_ = j;
            }
    }
    if (chart_ > n_ || std::abs(wirt[chart_].value()) <= 1e-6)
        throw GeometryError("no admissible chart j0 = " + std::to_string(chart_) + " at " + format_point(point_));

    const Jet inv = wirt[chart_].inverse();
    frame_.clear();
    for (int j = 0; j <= n_; ++j) {
        if (j == chart_) continue;
        Field t = zero_field();
        t[x_index(j)] = Jet::constant(space_, 0.5);
        t[y_index(j)] = Jet::constant(space_, cplx(0, -0.5));
        const Jet ratio = wirt[j] * inv;
        t[x_index(chart_)] = -0.5 * ratio;
        t[y_index(chart_)] = cplx(0, 0.5) * ratio;
        frame_.push_back(std::move(t));
    }
    for (int a = 0; a < n_; ++a) frame_.push_back(conj(frame_[a]));
}

void LocalStructure::build_reeb() {
    std::vector<Jet> a(dim_ * dim_, zero());
    std::vector<Jet> b(dim_, zero());
    for (int r = 0; r < dim_; ++r) {
        a[0 * dim_ + r] = dphi_[r];
        a[1 * dim_ + r] = theta_[r];
    }
    b[1] = one();
    for (int al = 0; al < n_; ++al) {
        for (int r = 0; r < dim_; ++r) {
            Jet c = zero();
            for (int s = 0; s < dim_; ++s)
                if (r != s) c += omega2_[r * dim_ + s] * frame_[al][s];
            a[(2 + 2 * al) * dim_ + r] = c.real();
            a[(3 + 2 * al) * dim_ + r] = c.imag();
        }
    }
    std::vector<Jet> t = solve(std::move(a), std::move(b), dim_, 1);
    Field reeb(dim_);
    for (int r = 0; r < dim_; ++r) reeb[r] = t[r].real();
    frame_.push_back(std::move(reeb));
}

void LocalStructure::build_coframe() {
    // Columns: the complex frame followed by the transversal grad phi.
    std::vector<Jet> m(dim_ * dim_, zero());
    std::vector<Jet> id(dim_ * dim_, zero());
    for (int col = 0; col < dim_; ++col) {
        for (int r = 0; r < dim_; ++r) m[r * dim_ + col] = col < dim_ - 1 ? frame_[col][r] : dphi_[r];
        id[col * dim_ + col] = one();
    }
    std::vector<Jet> inv = solve(std::move(m), std::move(id), dim_, dim_);
    coframe_.assign(dim_ - 1, {});
    for (int b = 0; b < dim_ - 1; ++b) coframe_[b].assign(inv.begin() + b * dim_, inv.begin() + (b + 1) * dim_);
}

Jet LocalStructure::coframe(int b, const Field& v) const {
    const auto& row = coframe_[b];
    Jet acc = row[0] * v[0];
    for (int r = 1; r < dim_; ++r) acc += row[r] * v[r];
    return acc;
}

Field LocalStructure::real_frame(int a) const {
    const auto fi = index();
    if (a < n_) {
        Field out = frame_[fi.holo(a)];
        for (int r = 0; r < dim_; ++r) out[r] += frame_[fi.anti(a)][r];
        return out;
    }
    Field out = difference(frame_[fi.holo(a - n_)], frame_[fi.anti(a - n_)]);
    for (auto& c : out) c = I * c;
    return out;
}

Field LocalStructure::J(const Field& v) const {
    const auto fi = index();
    Field out = zero_field();
    for (int a = 0; a < n_; ++a) {
        const Jet ca = I * coframe(fi.holo(a), v);
        const Jet cb = -I * coframe(fi.anti(a), v);
        for (int r = 0; r < dim_; ++r) out[r] += ca * frame_[fi.holo(a)][r] + cb * frame_[fi.anti(a)][r];
    }
    return out;
}

void LocalStructure::build_levi() {
    const auto fi = index();
    levi_.assign(n_ * n_, zero());
    CMatrix g(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            levi_[a * n_ + b] = -I * dtheta(frame_[fi.holo(a)], frame_[fi.anti(b)]);
            g(a, b) = levi_[a * n_ + b].value();
        }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()));
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-8 || es.eigenvalues().minCoeff() <= surface_->strictness_tol)
        throw GeometryError("not strictly pseudoconvex at " + format_point(point_) + " (min Levi eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()) + ")");
    std::vector<Jet> id(n_ * n_, zero());
    for (int a = 0; a < n_; ++a) id[a * n_ + a] = one();
    std::vector<Jet> ginv = solve(levi_, std::move(id), n_, n_);
    levi_inv_.assign(n_ * n_, zero());
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) levi_inv_[a * n_ + b] = ginv[b * n_ + a];
}

void LocalStructure::build_connection() {
    const auto fi = index();
    const int nb = fi.size();
    gamma_.assign(nb * n_ * n_, zero());
    gamma_bar_.assign(nb * n_ * n_, zero());
    torsion_mixed_.assign(n_ * n_, zero());
    torsion_.assign(n_ * n_, zero());
    auto G = [&](int b, int a, int c) -> Jet& { return gamma_[(b * n_ + a) * n_ + c]; };

    // nabla_{Wbar} Z = [Wbar, Z]_{1,0} and nabla_T Z = [T, Z]_{1,0}.
    for (int a = 0; a < n_; ++a) {
        const Field tz = bracket(frame_[fi.reeb()], frame_[fi.holo(a)]);
        for (int c = 0; c < n_; ++c) {
            G(fi.reeb(), a, c) = coframe(fi.holo(c), tz);
            torsion_mixed_[a * n_ + c] = -coframe(fi.anti(c), tz);
        }
        for (int b = 0; b < n_; ++b) {
            const Field bz = bracket(frame_[fi.anti(b)], frame_[fi.holo(a)]);
            for (int c = 0; c < n_; ++c) G(fi.anti(b), a, c) = coframe(fi.holo(c), bz);
        }
    }
    // nabla_{T_b} from metric compatibility along T_b.
    for (int b = 0; b < n_; ++b) {
        for (int a = 0; a < n_; ++a) {
            std::vector<Jet> rhs(n_);
            for (int m = 0; m < n_; ++m) {
                Jet r = derive(frame_[fi.holo(b)], levi(a, m));
                for (int g = 0; g < n_; ++g) r -= levi(a, g) * G(fi.anti(b), m, g).conj();
                rhs[m] = r;
            }
            for (int c = 0; c < n_; ++c) {
                Jet acc = zero();
                for (int m = 0; m < n_; ++m) acc += rhs[m] * levi_inv(c, m);
                G(fi.holo(b), a, c) = acc;
            }
        }
    }
    for (int b = 0; b < nb; ++b)
        for (int a = 0; a < n_; ++a)
            for (int c = 0; c < n_; ++c)
                gamma_bar_[(b * n_ + a) * n_ + c] = G(fi.conj(b), a, c).conj();

    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            Jet acc = zero();
            for (int c = 0; c < n_; ++c) acc += torsion_mixed(a, c) * levi(b, c);
            torsion_[a * n_ + b] = acc;
        }
}

void LocalStructure::build_curvature() {
    const auto fi = index();
    const int nb = fi.size();
    ricci_.assign(n_ * n_, zero());
    // R_{a bbar} = trace{X -> R(X, T_a) T_bbar}; only X = T_gbar contributes.
    for (int a = 0; a < n_; ++a) {
        for (int g = 0; g < n_; ++g) {
            const int B = fi.anti(g);
            const Field w = bracket(frame_[B], frame_[fi.holo(a)]);
            std::vector<Jet> wc(nb);
            for (int C = 0; C < nb; ++C) wc[C] = coframe(C, w);
            for (int b = 0; b < n_; ++b) {
                Jet comp = derive(frame_[B], gamma_bar(fi.holo(a), b, g)) - derive(frame_[fi.holo(a)], gamma_bar(B, b, g));
                for (int m = 0; m < n_; ++m) {
                    comp += gamma_bar(fi.holo(a), b, m) * gamma_bar(B, m, g);
                    comp -= gamma_bar(B, b, m) * gamma_bar(fi.holo(a), m, g);
                }
                for (int C = 0; C < nb; ++C) comp -= wc[C] * gamma_bar(C, b, g);
                ricci_[a * n_ + b] += comp;
            }
        }
    }
    rho_ = zero();
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) rho_ += levi_inv(a, b) * ricci(a, b);
}

Jet LocalStructure::omega(int a, int c, const Field& v) const {
    Jet acc = zero();
    for (int b = 0; b < index().size(); ++b) acc += coframe(b, v) * gamma(b, a, c);
    return acc;
}

Jet LocalStructure::omega_bar(int a, int c, const Field& v) const {
    Jet acc = zero();
    for (int b = 0; b < index().size(); ++b) acc += coframe(b, v) * gamma_bar(b, a, c);
    return acc;
}

Jet LocalStructure::omega_trace(const Field& v) const {
    Jet acc = zero();
    for (int b = 0; b < index().size(); ++b) {
        const Jet vb = coframe(b, v);
        for (int a = 0; a < n_; ++a) acc += vb * gamma(b, a, a);
    }
    return acc;
}

Field LocalStructure::covariant(const Field& x, const Field& y) const {
    const auto fi = index();
    const int nb = fi.size();
    std::vector<Jet> xc(nb), yc(nb);
    for (int b = 0; b < nb; ++b) {
        xc[b] = coframe(b, x);
        yc[b] = coframe(b, y);
    }
    std::vector<Jet> out(nb, zero());
    for (int c = 0; c < n_; ++c) {
        Jet hol = derive(x, yc[fi.holo(c)]);
        Jet ant = derive(x, yc[fi.anti(c)]);
        for (int a = 0; a < n_; ++a) {
            Jet w = zero(), wb = zero();
            for (int b = 0; b < nb; ++b) {
                w += xc[b] * gamma(b, a, c);
                wb += xc[b] * gamma_bar(b, a, c);
            }
            hol += yc[fi.holo(a)] * w;
            ant += yc[fi.anti(a)] * wb;
        }
        out[fi.holo(c)] = hol;
        out[fi.anti(c)] = ant;
    }
    out[fi.reeb()] = derive(x, yc[fi.reeb()]);
    return combine(out, frame_);
}

Field LocalStructure::torsion_tensor(const Field& x, const Field& y) const {
    return difference(difference(covariant(x, y), covariant(y, x)), bracket(x, y));
}

Jet LocalStructure::levi_pairing(const Field& u, const Field& w) const {
    const auto fi = index();
    std::vector<Jet> uh(n_), ua(n_), wh(n_), wa(n_);
    for (int a = 0; a < n_; ++a) {
        uh[a] = coframe(fi.holo(a), u);
        ua[a] = coframe(fi.anti(a), u);
        wh[a] = coframe(fi.holo(a), w);
        wa[a] = coframe(fi.anti(a), w);
    }
    Jet acc = zero();
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) acc += levi(a, b) * (uh[a] * wa[b] + wh[a] * ua[b]);
    return acc;
}

Jet LocalStructure::webster_metric(const Field& u, const Field& w) const {
    return levi_pairing(u, w) + theta(u) * theta(w);
}

Jet LocalStructure::beta(const Field& v) const {
    Jet acc = I * omega_trace(v);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) acc -= (0.5 * I) * levi_inv(a, b) * derive(v, levi(a, b));
    acc -= rho_ * theta(v) / (4.0 * (n_ + 1));
    return acc;
}

Jet LocalStructure::dbeta(const Field& u, const Field& w) const {
    return conv_.d_factor * (derive(u, beta(w)) - derive(w, beta(u)) - beta(bracket(u, w)));
}

Jet LocalStructure::d_omega_trace(const Field& u, const Field& w) const {
    return conv_.d_factor * (derive(u, omega_trace(w)) - derive(w, omega_trace(u)) - omega_trace(bracket(u, w)));
}

AdaptedFramePoint LocalStructure::frame_snapshot() const {
    const auto fi = index();
    AdaptedFramePoint f;
    f.point = point_;
    f.chart = chart_;
    auto values = [&](const Field& v) {
        Eigen::VectorXcd out(dim_);
        for (int r = 0; r < dim_; ++r) out(r) = v[r].value();
        return out;
    };
    for (int a = 0; a < n_; ++a) f.holo_frame.push_back(values(frame_[fi.holo(a)]));
    f.reeb = values(frame_[fi.reeb()]).real();
    f.theta.resize(dim_);
    for (int r = 0; r < dim_; ++r) f.theta(r) = theta_[r].value().real();
    f.levi.resize(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) f.levi(a, b) = levi(a, b).value();
    for (int a = 0; a < 2 * n_; ++a) f.real_frame.push_back(values(real_frame(a)).real());
    // J in the real frame: coefficient of X_b is Re v^b, of J X_b is Im v^b.
    f.j_action = RMatrix::Zero(2 * n_, 2 * n_);
    for (int a = 0; a < 2 * n_; ++a) {
        const Field jv = J(real_frame(a));
        for (int b = 0; b < n_; ++b) {
            const cplx vb = coframe(fi.holo(b), jv).value();
            f.j_action(b, a) = vb.real();
            f.j_action(b + n_, a) = vb.imag();
        }
    }
    return f;
}

TWData LocalStructure::tw_snapshot() const {
    const auto fi = index();
    const int nb = fi.size();
    TWData tw;
    tw.n = n_;
    for (int b = 0; b < nb; ++b) {
        CMatrix m(n_, n_);
        for (int a = 0; a < n_; ++a)
            for (int c = 0; c < n_; ++c) m(a, c) = gamma(b, a, c).value();
        tw.gamma.push_back(m);
    }
    tw.torsion_mixed.resize(n_, n_);
    tw.torsion.resize(n_, n_);
    tw.ricci.resize(n_, n_);
    tw.levi.resize(n_, n_);
    CMatrix ginv(n_, n_);  // ginv(s, c) = g^{c sbar}
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            tw.levi(a, b) = levi(a, b).value();
            ginv(b, a) = levi_inv(a, b).value();
            tw.torsion_mixed(a, b) = torsion_mixed(a, b).value();
            tw.torsion(a, b) = torsion(a, b).value();
            tw.ricci(a, b) = ricci(a, b).value();
        }
    tw.ricci_raised = tw.ricci * ginv;
    tw.rho = rho_.value().real();
    tw.rho_d.resize(n_);
    for (int b = 0; b < n_; ++b) tw.rho_d(b) = derive(frame_[fi.holo(b)], rho_).value();

    // W^b_{al} = g^{sbar b} nabla_sbar A_{al}
    // W^b_{a mbar} = g^{sbar b} nabla_a A_{mbar sbar}
    std::vector<CMatrix> nab_anti(n_, CMatrix::Zero(n_, n_));  // [s](a,l)
    std::vector<CMatrix> nab_holo(n_, CMatrix::Zero(n_, n_));  // [a](m,s)
    for (int s = 0; s < n_; ++s)
        for (int a = 0; a < n_; ++a)
            for (int l = 0; l < n_; ++l) {
                Jet v = derive(frame_[fi.anti(s)], torsion(a, l));
                for (int m = 0; m < n_; ++m) {
                    v -= gamma(fi.anti(s), a, m) * torsion(m, l);
                    v -= gamma(fi.anti(s), l, m) * torsion(a, m);
                }
                nab_anti[s](a, l) = v.value();
            }
    for (int a = 0; a < n_; ++a)
        for (int m = 0; m < n_; ++m)
            for (int s = 0; s < n_; ++s) {
                Jet v = derive(frame_[fi.holo(a)], torsion(m, s).conj());
                for (int k = 0; k < n_; ++k) {
                    v -= gamma_bar(fi.holo(a), m, k) * torsion(k, s).conj();
                    v -= gamma_bar(fi.holo(a), s, k) * torsion(m, k).conj();
                }
                nab_holo[a](m, s) = v.value();
            }
    tw.w_holo.assign(n_, CMatrix::Zero(n_, n_));
    tw.w_anti.assign(n_, CMatrix::Zero(n_, n_));
    for (int b = 0; b < n_; ++b)
        for (int a = 0; a < n_; ++a)
            for (int l = 0; l < n_; ++l)
                for (int s = 0; s < n_; ++s) {
                    const cplx gi = levi_inv(b, s).value();
                    tw.w_holo[b](a, l) += gi * nab_anti[s](a, l);
                    tw.w_anti[b](a, l) += gi * nab_holo[a](l, s);
                }
    return tw;
}

AdaptedFramePoint adapted_frame(const Hypersurface& surface, const Point& p, std::optional<int> chart) {
    return LocalStructure(surface, p, chart).frame_snapshot();
}

TWData tanaka_webster(const LocalStructure& local) { return local.tw_snapshot(); }

ClassificationReport classify(std::span<const TWData> samples, std::span<const CMatrix> levi, double tol) {
    if (samples.size() < 2) throw InputError("classification needs at least 2 samples");
    ClassificationReport r;
    r.tol = tol;
    r.samples = static_cast<int>(samples.size());
    double sum = 0;
    r.rho_min = samples[0].rho;
    r.rho_max = samples[0].rho;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const auto& tw = samples[k];
        sum += tw.rho;
        r.rho_min = std::min(r.rho_min, tw.rho);
        r.rho_max = std::max(r.rho_max, tw.rho);
        const CMatrix dev = tw.ricci - (tw.rho / tw.n) * levi[k];
        r.pseudo_einstein_residual = std::max(r.pseudo_einstein_residual, dev.cwiseAbs().maxCoeff());
        r.torsion_max = std::max(r.torsion_max, tw.torsion.cwiseAbs().maxCoeff());
    }
    r.rho_mean = sum / static_cast<double>(samples.size());
    for (const auto& tw : samples) r.rho_deviation = std::max(r.rho_deviation, std::abs(tw.rho - r.rho_mean));
    r.pseudo_einstein = r.pseudo_einstein_residual < tol;
    r.rho_constant = r.rho_deviation < tol * (1.0 + std::abs(r.rho_mean));
    r.torsion_zero = r.torsion_max < tol;
    return r;
}

cplx webster_rhs(const LocalStructure& local, const TWData& tw, const Field& u, const Field& w) {
    const auto fi = local.index();
    const int n = local.n();
    const int nb = fi.size();
    const double c = local.conventions().d_factor;
    std::vector<cplx> cu(nb), cw(nb);
    for (int b = 0; b < nb; ++b) {
        cu[b] = local.coframe(b, u).value();
        cw[b] = local.coframe(b, w).value();
    }
    auto wedge = [&](int p, int q) { return c * (cu[p] * cw[q] - cw[p] * cu[q]); };
    cplx rhs = 0;
    for (int l = 0; l < n; ++l) {
        cplx wl = 0, wm = 0;
        for (int a = 0; a < n; ++a) {
            wl += tw.w_holo[a](a, l);
            wm += tw.w_anti[a](a, l);
        }
        for (int m = 0; m < n; ++m) rhs += tw.ricci(l, m) * wedge(fi.holo(l), fi.anti(m));
        rhs += wl * wedge(fi.holo(l), fi.reeb());
        rhs -= wm * wedge(fi.anti(l), fi.reeb());
    }
    return rhs;
}

double webster_identity_residual(const LocalStructure& local, const TWData& tw) {
    const int nb = local.index().size();
    double worst = 0;
    for (int u = 0; u < nb; ++u)
        for (int w = u + 1; w < nb; ++w) {
            const Field& U = local.frame(u);
            const Field& W = local.frame(w);
            const cplx lhs = local.d_omega_trace(U, W).value();
            worst = std::max(worst, std::abs(lhs - webster_rhs(local, tw, U, W)));
        }
    return worst;
}

double pseudo_einstein_w_identity(const TWData& tw, const ClassificationReport& report) {
    if (!report.pseudo_einstein)
        throw std::invalid_argument("W-trace identity only holds for pseudo-Einstein contact forms");
    const int n = tw.n;
    if (n < 2) throw std::invalid_argument("W-trace identity needs n >= 2; pseudo-Einstein is vacuous for n = 1");
    double worst = 0;
    for (int b = 0; b < n; ++b) {
        cplx tr = 0;
        for (int a = 0; a < n; ++a) tr += tw.w_holo[a](a, b);
        worst = std::max(worst, std::abs(tr + cplx(0, 1.0 / (2.0 * n)) * tw.rho_d(b)));
    }
    return worst;
}

double AxiomResiduals::max() const {
    return std::max({purity_holo, purity_mixed, metric, tau_j, tau_type, torsion_symmetry, ricci_hermitian, frame});
}

AxiomResiduals axiom_residuals(const LocalStructure& L) {
    const auto fi = L.index();
    const int n = L.n();
    const int nb = fi.size();
    AxiomResiduals r;
    const Field& T = L.frame(fi.reeb());

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            r.purity_holo = std::max(r.purity_holo, max_abs(L.torsion_tensor(L.frame(fi.holo(a)), L.frame(fi.holo(b)))));
            Field mixed = L.torsion_tensor(L.frame(fi.holo(a)), L.frame(fi.anti(b)));
            const Jet s = 2.0 * I * L.levi(a, b);
            for (int k = 0; k < L.dim(); ++k) mixed[k] -= s * T[k];
            r.purity_mixed = std::max(r.purity_mixed, max_abs(mixed));
        }

    for (int x = 0; x < nb; ++x) {
        const Field& X = L.frame(x);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Jet v = L.derive(X, L.levi(a, b));
                for (int g = 0; g < n; ++g) {
                    v -= L.levi(a, g) * L.omega_bar(b, g, X);
                    v -= L.omega(a, g, X) * L.levi(g, b);
                }
                r.metric = std::max(r.metric, std::abs(v.value()));
            }
    }

    for (int a = 0; a < 2 * n; ++a) {
        const Field X = L.real_frame(a);
        Field lhs = L.tau(L.J(X));
        const Field jt = L.J(L.tau(X));
        for (int k = 0; k < L.dim(); ++k) lhs[k] += jt[k];
        r.tau_j = std::max(r.tau_j, max_abs(lhs));
    }
    for (int a = 0; a < n; ++a) {
        const Field t = L.tau(L.frame(fi.holo(a)));
        for (int c = 0; c < n; ++c) r.tau_type = std::max(r.tau_type, std::abs(L.coframe(fi.holo(c), t).value()));
        r.tau_type = std::max(r.tau_type, std::abs(L.coframe(fi.reeb(), t).value()));
        for (int b = 0; b < n; ++b) {
            r.torsion_symmetry = std::max(r.torsion_symmetry, std::abs((L.torsion(a, b) - L.torsion(b, a)).value()));
            r.ricci_hermitian =
                std::max(r.ricci_hermitian, std::abs(L.ricci(a, b).value() - std::conj(L.ricci(b, a).value())));
        }
    }

    auto frame_res = [&](double v) { r.frame = std::max(r.frame, std::abs(v)); };
    for (int a = 0; a < n; ++a) {
        const Field& Ta = L.frame(fi.holo(a));
        frame_res(std::abs(L.theta(Ta).value()));
        Jet dp = L.zero();
        for (int k = 0; k < L.dim(); ++k) dp += L.dphi(k) * Ta[k];
        frame_res(std::abs(dp.value()));
    }
    frame_res(std::abs(L.theta(T).value() - 1.0));
    for (int a = 0; a < 2 * n; ++a) {
        frame_res(std::abs(L.dtheta(T, L.real_frame(a)).value()));
        Field jj = L.J(L.J(L.real_frame(a)));
        const Field x = L.real_frame(a);
        for (int k = 0; k < L.dim(); ++k) jj[k] += x[k];
        frame_res(max_abs(jj));
    }
    return r;
}

}  // namespace pherm
