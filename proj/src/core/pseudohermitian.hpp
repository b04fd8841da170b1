#pragma once

#include "surface.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace pherm {

// Normalization of the exterior derivative and of the wedge product:
// d eta(X,Y) = c (X eta(Y) - Y eta(X) - eta([X,Y])) and
// (a ^ b)(X,Y) = c (a(X) b(Y) - a(Y) b(X)). c = 1/2 is the convention under
// which torsion purity T(Z, Wbar) = 2i L(Z, Wbar) T holds; c = 1 is only
// kept as a negative-test switch.
struct Conventions {
    double d_factor = 0.5;
};

// Ambient vector field: complex jets of the components along d/dx^j, d/dy^j.
using Field = std::vector<Jet>;

using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

// Indices into the complex frame {T_1..T_n, T_1bar..T_nbar, T}.
struct FrameIndex {
    int n;
    int holo(int a) const { return a; }
    int anti(int a) const { return n + a; }
    int reeb() const { return 2 * n; }
    int size() const { return 2 * n + 1; }
    int conj(int b) const { return b < n ? b + n : (b < 2 * n ? b - n : b); }
};

// Value snapshot of the adapted frame at a point.
struct AdaptedFramePoint {
    Point point;
    int chart = 0;
    std::vector<Eigen::VectorXcd> holo_frame;  // T_alpha, ambient real-basis components
    Eigen::VectorXd reeb;                      // T
    Eigen::VectorXd theta;                     // contact form components
    CMatrix levi;                              // g_{alpha betabar}
    std::vector<Eigen::VectorXd> real_frame;   // X_alpha, J X_alpha
    RMatrix j_action;                          // J on H(M) in the real frame
};

// Value snapshot of the Tanaka-Webster data at a point.
struct TWData {
    int n = 0;
    // gamma[B](a, c) = omega_a^c(T_B), B over the complex frame.
    std::vector<CMatrix> gamma;
    CMatrix torsion_mixed;  // A_a^{cbar}
    CMatrix torsion;        // A_{ab}
    CMatrix levi;           // g_{a bbar}
    CMatrix ricci;          // R_{a bbar}
    CMatrix ricci_raised;   // R_a^c = R_{a sbar} g^{c sbar}
    double rho = 0;
    Eigen::VectorXcd rho_d;  // rho_beta = T_beta(rho)
    // w_holo[b](a, l) = W^b_{a l}, w_anti[b](a, m) = W^b_{a mbar}
    std::vector<CMatrix> w_holo;
    std::vector<CMatrix> w_anti;
};

// All pseudohermitian data around one point of M, carried as truncated
// Taylor expansions of ambient functions. Every object is built from phi
// pointwise, so it restricts to the corresponding object of each level set
// and tangential derivatives are exact.
class LocalStructure {
public:
    static constexpr int kJetOrder = 5;

    // chart: index j0 of the dominant holomorphic coordinate; nullopt picks
    // the argmax of |d phi / d z^j|. Throws GeometryError on a singular point,
    // a chart with |d phi/dz^j0| <= 1e-6, or a Levi form that is not
    // positive definite.
    LocalStructure(const Hypersurface& surface, const Point& p, std::optional<int> chart = {},
                   Conventions conv = {});

    int n() const { return n_; }
    int dim() const { return dim_; }
    int chart() const { return chart_; }
    const Point& point() const { return point_; }
    const Hypersurface& surface() const { return *surface_; }
    const JetSpacePtr& space() const { return space_; }
    const Conventions& conventions() const { return conv_; }
    FrameIndex index() const { return {n_}; }

    // Calculus on ambient fields.
    Jet derive(const Field& v, const Jet& f) const;
    Field bracket(const Field& u, const Field& w) const;
    Field conj(const Field& v) const;
    Field combine(std::span<const Jet> coeffs, std::span<const Field> fields) const;
    Field zero_field() const;
    Jet zero() const { return Jet::constant(space_, 0.0); }
    Jet one() const { return Jet::constant(space_, 1.0); }
    Jet wedge(const Jet& a_u, const Jet& a_w, const Jet& b_u, const Jet& b_w) const;

    const Jet& phi() const { return phi_; }
    const Jet& dphi(int r) const { return dphi_[r]; }

    Jet theta(const Field& v) const;
    Jet dtheta(const Field& u, const Field& w) const;

    // Complex frame {T_a, T_abar, T} and its dual coframe.
    const Field& frame(int b) const { return frame_[b]; }
    Jet coframe(int b, const Field& v) const;
    Field real_frame(int a) const;  // a < n: T_a + T_abar; else i(T_a - T_abar)
    Field J(const Field& v) const;

    const Jet& levi(int a, int b) const { return levi_[a * n_ + b]; }
    const Jet& levi_inv(int a, int b) const { return levi_inv_[a * n_ + b]; }

    // omega_a^c(T_B) and omega_abar^cbar(T_B).
    const Jet& gamma(int b, int a, int c) const { return gamma_[(b * n_ + a) * n_ + c]; }
    const Jet& gamma_bar(int b, int a, int c) const { return gamma_bar_[(b * n_ + a) * n_ + c]; }
    Jet omega(int a, int c, const Field& v) const;
    Jet omega_bar(int a, int c, const Field& v) const;
    Jet omega_trace(const Field& v) const;

    // Tanaka-Webster covariant derivative nabla_x y of tangent fields.
    Field covariant(const Field& x, const Field& y) const;
    Field torsion_tensor(const Field& x, const Field& y) const;
    Field tau(const Field& x) const { return torsion_tensor(frame(index().reeb()), x); }

    const Jet& torsion_mixed(int a, int c) const { return torsion_mixed_[a * n_ + c]; }
    const Jet& torsion(int a, int b) const { return torsion_[a * n_ + b]; }
    const Jet& ricci(int a, int b) const { return ricci_[a * n_ + b]; }
    const Jet& rho() const { return rho_; }

    // Webster metric g_theta and its horizontal part G~_theta, complex bilinear.
    Jet levi_pairing(const Field& u, const Field& w) const;
    Jet webster_metric(const Field& u, const Field& w) const;

    // The M-part of (n+2) sigma: i omega_a^a - (i/2) g^{a bbar} d g_{a bbar}
    // - rho theta / (4(n+1)).
    Jet beta(const Field& v) const;
    Jet dbeta(const Field& u, const Field& w) const;

    // Exterior derivative of the 1-form omega_a^a, by exact differentiation.
    Jet d_omega_trace(const Field& u, const Field& w) const;

    AdaptedFramePoint frame_snapshot() const;
    TWData tw_snapshot() const;

private:
    void build_frame();
    void build_reeb();
    void build_coframe();
    void build_levi();
    void build_connection();
    void build_curvature();

    const Hypersurface* surface_;
    Point point_;
    int n_;
    int dim_;
    int chart_;
    Conventions conv_;
    JetSpacePtr space_;

    Jet phi_;
    std::vector<Jet> dphi_;
    std::vector<Jet> theta_;   // components
    std::vector<Jet> omega2_;  // d theta components, dim x dim
    std::vector<Field> frame_;
    std::vector<std::vector<Jet>> coframe_;  // rows of the inverse frame matrix
    std::vector<Jet> levi_;
    std::vector<Jet> levi_inv_;
    std::vector<Jet> gamma_;
    std::vector<Jet> gamma_bar_;
    std::vector<Jet> torsion_mixed_;
    std::vector<Jet> torsion_;
    std::vector<Jet> ricci_;
    Jet rho_;
};

// Sample construction with an adapted frame per point.
AdaptedFramePoint adapted_frame(const Hypersurface& surface, const Point& p, std::optional<int> chart = {});
TWData tanaka_webster(const LocalStructure& local);

struct ClassificationReport {
    bool pseudo_einstein = false;
    bool rho_constant = false;
    bool torsion_zero = false;
    double pseudo_einstein_residual = 0;  // max |R_{a bbar} - (rho/n) g_{a bbar}|
    double rho_deviation = 0;             // max |rho - mean rho|
    double torsion_max = 0;               // max |A_{ab}|
    double rho_mean = 0;
    double rho_min = 0;
    double rho_max = 0;
    double tol = 1e-6;
    int samples = 0;

    bool positive() const { return pseudo_einstein && rho_constant; }
};

// pre: >= 2 samples.
ClassificationReport classify(std::span<const TWData> samples, std::span<const CMatrix> levi, double tol);

// Max component residual of
// d omega_a^a = R_{l mbar} theta^l ^ theta^mbar + (W^a_{al} theta^l - W^a_{a mbar} theta^mbar) ^ theta
// on all pairs of the complex frame.
double webster_identity_residual(const LocalStructure& local, const TWData& tw);
// Right-hand side of that identity evaluated on (u, w).
cplx webster_rhs(const LocalStructure& local, const TWData& tw, const Field& u, const Field& w);

// max |W^a_{ab} + (i/2n) rho_b|; throws std::invalid_argument unless the
// report is pseudo-Einstein and n >= 2.
double pseudo_einstein_w_identity(const TWData& tw, const ClassificationReport& report);

// Axiom residuals of the Tanaka-Webster connection at one point.
struct AxiomResiduals {
    double purity_holo = 0;      // T(Z, W) = 0
    double purity_mixed = 0;     // T(Z, Wbar) = 2i L(Z, Wbar) T
    double metric = 0;           // d g = g omegabar + omega g, all frame directions
    double tau_j = 0;            // tau J + J tau = 0 on H(M)
    double tau_type = 0;         // tau(T_{1,0}) in T_{0,1}
    double torsion_symmetry = 0; // A_{ab} = A_{ba}
    double ricci_hermitian = 0;  // R_{a bbar} = conj R_{b abar}
    double frame = 0;            // theta(T_a), dphi(T_a), theta(T)-1, T _| d theta, J^2 + 1
    double max() const;
};

AxiomResiduals axiom_residuals(const LocalStructure& local);

}  // namespace pherm
