#include "fefferman.hpp"

#include "errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pherm {

namespace {

const cplx I{0.0, 1.0};

}  // namespace

CircleField operator+(const CircleField& a, const CircleField& b) {
    CircleField out = a;
    for (std::size_t r = 0; r < out.base.size(); ++r) out.base[r] += b.base[r];
    out.fibre += b.fibre;
    return out;
}

CircleField operator-(const CircleField& a, const CircleField& b) {
    CircleField out = a;
    for (std::size_t r = 0; r < out.base.size(); ++r) out.base[r] -= b.base[r];
    out.fibre -= b.fibre;
    return out;
}

CircleField operator*(const Jet& f, const CircleField& a) {
    CircleField out = a;
    for (auto& c : out.base) c = f * c;
    out.fibre = f * out.fibre;
    return out;
}

CircleField operator*(cplx c, const CircleField& a) {
    CircleField out = a;
    for (auto& x : out.base) x *= c;
    out.fibre *= c;
    return out;
}

FeffermanStructure::FeffermanStructure(const LocalStructure& local, double gamma, std::optional<double> fibre_scale)
    : local_(&local),
      gamma_(std::fmod(std::fmod(gamma, 2 * std::numbers::pi) + 2 * std::numbers::pi, 2 * std::numbers::pi)),
      scale_(fibre_scale.value_or(local.n() + 2.0)) {
    const int n = local.n();
    for (int a = 0; a < 2 * n; ++a) basis_.push_back(lift(local.real_frame(a)));
    basis_.push_back(lift(local.frame(local.index().reeb())));
    basis_.push_back(S());
}

CircleField FeffermanStructure::lift(const Field& x) const { return {x, -local_->beta(x)}; }

CircleField FeffermanStructure::S() const { return {local_->zero_field(), Jet::constant(local_->space(), scale_)}; }

CircleField FeffermanStructure::d_gamma() const { return {local_->zero_field(), local_->one()}; }

CircleField FeffermanStructure::zero() const { return {local_->zero_field(), local_->zero()}; }

Jet FeffermanStructure::sigma(const CircleField& v) const {
    return (v.fibre + local_->beta(v.base)) / (n() + 2.0);
}

Jet FeffermanStructure::dsigma(const CircleField& u, const CircleField& w) const {
    return local_->dbeta(u.base, w.base) / (n() + 2.0);
}

Jet FeffermanStructure::metric(const CircleField& u, const CircleField& w) const {
    const auto& L = *local_;
    return L.levi_pairing(u.base, w.base) + L.theta(u.base) * sigma(w) + sigma(u) * L.theta(w.base);
}

FeffermanPointData FeffermanStructure::snapshot(const TWData& tw) const {
    const auto& L = *local_;
    const auto fi = L.index();
    const int n = this->n();
    const int m = size();
    FeffermanPointData d;
    d.n = n;
    d.gamma = gamma_;
    d.sigma.resize(m);
    d.dsigma.resize(m, m);
    d.metric.resize(m, m);
    for (int i = 0; i < m; ++i) {
        d.sigma(i) = sigma(basis_[i]).value().real();
        for (int j = 0; j < m; ++j) {
            d.dsigma(i, j) = dsigma(basis_[i], basis_[j]).value().real();
            d.metric(i, j) = metric(basis_[i], basis_[j]).value().real();
        }
    }
    d.sigma_dgamma = sigma(d_gamma()).value().real();

    Eigen::SelfAdjointEigenSolver<RMatrix> eig(0.5 * (d.metric + d.metric.transpose()), Eigen::EigenvaluesOnly);
    d.eigenvalues = eig.eigenvalues();
    const double floor = 1e-12 * std::max(1.0, d.eigenvalues.cwiseAbs().maxCoeff());
    int degenerate = 0;
    for (int i = 0; i < m; ++i) {
        d.negative_eigenvalues += d.eigenvalues(i) < -floor ? 1 : 0;
        degenerate += std::abs(d.eigenvalues(i)) <= floor ? 1 : 0;
    }
    if (d.negative_eigenvalues != 1 || degenerate)
        throw ConventionError("convention breach: Fefferman metric has " + std::to_string(d.negative_eigenvalues) +
                              " negative and " + std::to_string(degenerate) + " vanishing eigenvalues");

    std::vector<CircleField> holo, anti;
    for (int a = 0; a < n; ++a) {
        holo.push_back(lift(L.frame(fi.holo(a))));
        anti.push_back(lift(L.frame(fi.anti(a))));
    }
    const CircleField reeb = basis_[2 * n];

    CMatrix mixed(n, n), pure(n, n);
    d.v_pairing.resize(n);
    Eigen::VectorXcd v_anti(n);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            mixed(a, b) = dsigma(holo[a], anti[b]).value();
            pure(a, b) = dsigma(holo[a], holo[b]).value();
        }
        d.v_pairing(a) = 2.0 * dsigma(reeb, holo[a]).value();
        v_anti(a) = 2.0 * dsigma(reeb, anti[a]).value();
    }
    CMatrix ginv(n, n);  // ginv(b, c) = g^{c bbar}
    for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) ginv(b, c) = L.levi_inv(c, b).value();
    d.phi = mixed * ginv;
    d.phi_mixed = pure * ginv.transpose();
    d.phi_formula = phi_from_curvature(tw);
    d.phi_trace = d.phi.trace();
    d.v = ginv.transpose() * v_anti;

    d.phi_real = RMatrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        // Holomorphic coordinates of X_i: 1 at a for X_a, i at a for J X_a.
        const int a = i % n;
        const cplx x = i < n ? cplx(1) : I;
        for (int c = 0; c < n; ++c) {
            const cplx w = x * d.phi(a, c) + std::conj(x) * std::conj(d.phi_mixed(a, c));
            d.phi_real(c, i) = w.real();
            d.phi_real(n + c, i) = w.imag();
        }
    }
    d.v_real.resize(2 * n);
    for (int c = 0; c < n; ++c) {
        d.v_real(c) = d.v(c).real();
        d.v_real(n + c) = d.v(c).imag();
    }
    return d;
}

CMatrix phi_from_curvature(const TWData& tw) {
    const int n = tw.n;
    CMatrix out = tw.ricci_raised - tw.rho / (2.0 * (n + 1)) * CMatrix::Identity(n, n);
    return (I / (2.0 * (n + 2))) * out;
}

Eigen::VectorXcd v_closed_form(const TWData& tw, const ClassificationReport& report) {
    if (!report.pseudo_einstein)
        throw std::invalid_argument("closed-form V only holds for pseudo-Einstein contact forms");
    if (tw.n < 2) throw std::invalid_argument("closed-form V needs n >= 2; pseudo-Einstein is vacuous for n = 1");
    return -tw.rho_d / (4.0 * tw.n * (tw.n + 1));
}

double dsigma_consistency(const FeffermanStructure& fs, const TWData& tw) {
    const auto& L = fs.local();
    const int nb = L.index().size();
    const int n = L.n();
    const double c = L.conventions().d_factor;
    const Jet& rho = L.rho();
    auto rho_theta = [&](const Field& v) { return rho * L.theta(v); };
    double worst = 0;
    for (int u = 0; u < nb; ++u)
        for (int w = u + 1; w < nb; ++w) {
            const Field& U = L.frame(u);
            const Field& W = L.frame(w);
            const cplx d_rho_theta =
                (c * (L.derive(U, rho_theta(W)) - L.derive(W, rho_theta(U)) - rho_theta(L.bracket(U, W)))).value();
            const cplx rhs = (I * webster_rhs(L, tw, U, W) - d_rho_theta / (4.0 * (n + 1))) / (n + 2.0);
            const cplx lhs = fs.dsigma(fs.lift(U), fs.lift(W)).value();
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    return worst;
}

}  // namespace pherm
