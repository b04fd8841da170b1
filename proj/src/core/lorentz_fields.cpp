#include "lorentz_fields.hpp"

#include "errors.hpp"

#include <algorithm>
#include <cmath>

namespace pherm {

namespace {

const cplx I{0.0, 1.0};

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

LeviCivita::LeviCivita(const FeffermanStructure& fs) : fs_(&fs), size_(fs.size()) {
    const auto& L = fs.local();
    const int dim = L.dim();
    eliminated_ = 0;
    for (int r = 1; r < dim; ++r)
        if (std::abs(L.dphi(r).value()) > std::abs(L.dphi(eliminated_).value())) eliminated_ = r;
    const Jet inv = L.dphi(eliminated_).inverse();
    for (int r = 0; r < dim; ++r) {
        if (r == eliminated_) continue;
        Field e = L.zero_field();
        e[r] = L.one();
        e[eliminated_] = -(L.dphi(r) * inv);
        ambient_.push_back(r);
        coord_.push_back({std::move(e), L.zero()});
    }
    coord_.push_back(fs.d_gamma());

    const int m = size_;
    std::vector<Jet> fj;
    fj.reserve(m * m);
    f_.resize(m, m);
    for (int l = 0; l < m; ++l)
        for (int k = 0; k < m; ++k) {
            fj.push_back(fs.metric(coord_[l], coord_[k]));
            f_(l, k) = fj.back().value().real();
        }
    df_.assign(m, RMatrix::Zero(m, m));
    for (int j = 0; j + 1 < m; ++j)
        for (int l = 0; l < m; ++l)
            for (int k = 0; k < m; ++k) df_[j](l, k) = L.derive(coord_[j].base, fj[l * m + k]).value().real();

    Eigen::FullPivLU<RMatrix> lu(f_);
    if (!lu.isInvertible()) throw GeometryError("Fefferman metric is degenerate");
    const RMatrix finv = lu.inverse();
    gamma_.assign(m * m * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = j; k < m; ++k) {
                double acc = 0;
                for (int l = 0; l < m; ++l) acc += finv(i, l) * (df_[j](l, k) + df_[k](j, l) - df_[l](j, k));
                gamma_[(i * m + j) * m + k] = 0.5 * acc;
                gamma_[(i * m + k) * m + j] = 0.5 * acc;
            }
}

Eigen::VectorXd LeviCivita::components(const CircleField& v) const {
    Eigen::VectorXd out(size_);
    for (int i = 0; i + 1 < size_; ++i) out(i) = v.base[ambient_[i]].value().real();
    out(size_ - 1) = v.fibre.value().real();
    return out;
}

Eigen::VectorXd LeviCivita::covariant(const CircleField& x, const CircleField& y) const {
    const auto& L = fs_->local();
    const Eigen::VectorXd xc = components(x);
    const Eigen::VectorXd yc = components(y);
    Eigen::VectorXd out(size_);
    for (int i = 0; i < size_; ++i) {
        const Jet& yi = i + 1 < size_ ? y.base[ambient_[i]] : y.fibre;
        double acc = L.derive(x.base, yi).value().real();
        for (int j = 0; j < size_; ++j)
            for (int k = 0; k < size_; ++k) acc += christoffel(i, j, k) * xc(j) * yc(k);
        out(i) = acc;
    }
    return out;
}

double LeviCivita::symmetry_residual() const {
    double worst = 0;
    for (int i = 0; i < size_; ++i)
        for (int j = 0; j < size_; ++j)
            for (int k = 0; k < size_; ++k)
                worst = std::max(worst, std::abs(christoffel(i, j, k) - christoffel(i, k, j)));
    return worst;
}

double LeviCivita::compatibility_residual() const {
    double worst = 0;
    for (int j = 0; j < size_; ++j)
        for (int l = 0; l < size_; ++l)
            for (int k = 0; k < size_; ++k) {
                double acc = df_[j](l, k);
                for (int m = 0; m < size_; ++m)
                    acc -= christoffel(m, j, l) * f_(m, k) + christoffel(m, j, k) * f_(l, m);
                worst = std::max(worst, std::abs(acc));
            }
    return worst;
}

bool ResidualReport::pass() const {
    for (const auto& [key, value] : residuals)
        if (!(value < tol)) return false;
    return true;
}

double ResidualReport::max() const {
    double worst = 0;
    for (const auto& [key, value] : residuals) worst = std::max(worst, value);
    return worst;
}

void ResidualReport::merge(const ResidualReport& other) {
    for (const auto& [key, value] : other.residuals) {
        auto [it, fresh] = residuals.emplace(key, value);
        if (!fresh) it->second = std::max(it->second, value);
    }
    samples += other.samples;
}

ResidualReport lifted_connection_residuals(const LeviCivita& lc, const FeffermanStructure& fs, const FeffermanPointData& fd,
                                double tol) {
    const auto& L = fs.local();
    const int n = L.n();
    const Field& T = L.frame(L.index().reeb());
    const CircleField& Tu = fs.basis(2 * n);
    const CircleField Su = fs.S();
    const Eigen::VectorXd t_c = lc.components(Tu);
    const Eigen::VectorXd s_c = lc.components(Su);

    std::vector<Field> X;
    for (int a = 0; a < 2 * n; ++a) X.push_back(L.real_frame(a));
    auto constant_combination = [&](const Eigen::VectorXd& coeffs) {
        std::vector<Jet> c;
        for (int a = 0; a < 2 * n; ++a) c.push_back(Jet::constant(L.space(), coeffs(a)));
        return L.combine(c, X);
    };
    auto sum = [&](const Field& u, const Field& w) {
        Field out = u;
        for (std::size_t r = 0; r < out.size(); ++r) out[r] += w[r];
        return out;
    };
    auto lifted = [&](const Field& v) { return lc.components(fs.lift(v)); };

    double eq3 = 0, eq4 = 0, eq5 = 0, eq6 = 0;
    for (int a = 0; a < 2 * n; ++a) {
        const CircleField& Xa = fs.basis(a);
        const Field phi_x = constant_combination(fd.phi_real.col(a));
        for (int b = 0; b < 2 * n; ++b) {
            const CircleField& Xb = fs.basis(b);
            const double dth = L.dtheta(X[a], X[b]).value().real();
            const double A = L.webster_metric(L.tau(X[a]), X[b]).value().real();
            const double ds = fs.dsigma(Xa, Xb).value().real();
            const Eigen::VectorXd rhs = lifted(L.covariant(X[a], X[b])) - dth * t_c - (A + ds) * s_c;
            eq3 = std::max(eq3, max_abs(lc.covariant(Xa, Xb) - rhs));
        }
        eq4 = std::max(eq4, max_abs(lc.covariant(Xa, Tu) - lifted(sum(L.tau(X[a]), phi_x))));
        const double ds_xt = fs.dsigma(Xa, Tu).value().real();
        const Eigen::VectorXd rhs5 = lifted(sum(L.covariant(T, X[a]), phi_x)) + 2.0 * ds_xt * s_c;
        eq5 = std::max(eq5, max_abs(lc.covariant(Tu, Xa) - rhs5));
        const Eigen::VectorXd jx = lifted(L.J(X[a]));
        eq6 = std::max({eq6, max_abs(lc.covariant(Xa, Su) - jx), max_abs(lc.covariant(Su, Xa) - jx)});
    }
    const double eq7 = std::max(max_abs(lc.covariant(Tu, Tu) - lifted(constant_combination(fd.v_real))),
                                max_abs(lc.covariant(Su, Su)));
    const double eq8 = std::max(max_abs(lc.covariant(Su, Tu)), max_abs(lc.covariant(Tu, Su)));

    ResidualReport r;
    r.tol = tol;
    r.samples = 1;
    r.residuals = {{"eq3", eq3}, {"eq4", eq4}, {"eq5", eq5}, {"eq6", eq6}, {"eq7", eq7}, {"eq8", eq8}};
    return r;
}

CircleField candidate(const FeffermanStructure& fs, const CandidateField& field) {
    const auto& L = fs.local();
    const int n = L.n();
    const Jet g = -field.amplitude * L.rho() / (4.0 * n * (n + 1));
    CircleField out = cplx(field.amplitude) * fs.basis(2 * n) + g * fs.S();
    if (field.perturbation != 0) out = out + cplx(field.perturbation) * fs.basis(0);
    return out;
}

ParallelCheck parallel_check(const LeviCivita& lc, const FeffermanStructure& fs, const CandidateField& field) {
    const CircleField x = candidate(fs, field);
    ParallelCheck out;
    for (int i = 0; i < fs.size(); ++i) out.residual = std::max(out.residual, max_abs(lc.covariant(fs.basis(i), x)));
    const int m = lc.size();
    RMatrix nabla(m, m);
    for (int j = 0; j < m; ++j) nabla.col(j) = lc.covariant(lc.coordinate_field(j), x);
    out.lambda = nabla.trace() / m;
    out.conformal = (nabla - out.lambda * RMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
    return out;
}

ResidualReport conformal_system_residuals(const FeffermanStructure& fs, const FeffermanPointData& fd,
                                          const TWData& tw, const CandidateField& field, double tol) {
    const auto& L = fs.local();
    const int n = L.n();
    const double a = field.amplitude;
    const Jet f = Jet::constant(L.space(), a);
    const Jet g = -a * L.rho() / (4.0 * n * (n + 1));
    auto along = [&](const CircleField& v, const Jet& h) {
        // gamma-independent functions: only the base part acts.
        return std::abs(L.derive(v.base, h).value());
    };
    double xf = 0, xg = 0;
    for (int i = 0; i < 2 * n; ++i) {
        xf = std::max(xf, along(fs.basis(i), f));
        xg = std::max(xg, along(fs.basis(i), g));
    }
    const CircleField& Tu = fs.basis(2 * n);
    const CircleField Su = fs.S();
    const cplx gv = g.value();
    const CMatrix phi_eq = a * fd.phi + I * gv * CMatrix::Identity(n, n);
    const CMatrix trace_free = tw.ricci_raised - (tw.rho / n) * CMatrix::Identity(n, n);

    ResidualReport r;
    r.tol = tol;
    r.samples = 1;
    r.residuals = {
        {"s_f", along(Su, f)},
        {"s_g", along(Su, g)},
        {"x_f", xf},
        {"x_g", xg},
        {"t_f", along(Tu, f)},
        {"t_g", along(Tu, g)},
        {"f_torsion", std::abs(a) * tw.torsion_mixed.cwiseAbs().maxCoeff()},
        {"f_phi_ig", phi_eq.cwiseAbs().maxCoeff()},
        {"f_v", std::abs(a) * (fd.v.size() ? fd.v.cwiseAbs().maxCoeff() : 0.0)},
        {"ricci_trace_free", std::abs(a) * trace_free.cwiseAbs().maxCoeff()},
    };
    return r;
}

}  // namespace pherm
