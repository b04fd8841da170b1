#pragma once

#include "pseudohermitian.hpp"

#include <Eigen/Dense>

namespace pherm {

// Vector field on C(M) = M x S^1 in the local gauge: a field tangent to M
// plus its d/dgamma component. Nothing below depends on gamma.
struct CircleField {
    Field base;
    Jet fibre;
};

CircleField operator+(const CircleField& a, const CircleField& b);
CircleField operator-(const CircleField& a, const CircleField& b);
CircleField operator*(const Jet& f, const CircleField& a);
CircleField operator*(cplx c, const CircleField& a);

struct FeffermanPointData {
    int n = 0;
    double gamma = 0;
    Eigen::VectorXd sigma;   // on the basis {X_a^, T^, S}
    double sigma_dgamma = 0; // sigma(d/dgamma)
    RMatrix dsigma;          // on basis pairs
    RMatrix metric;          // F on the basis
    Eigen::VectorXd eigenvalues;
    int negative_eigenvalues = 0;
    // From G(phi X, Y) = dsigma(X^, Y^).
    CMatrix phi;             // phi_a^c
    CMatrix phi_mixed;       // phi_a^{cbar}
    CMatrix phi_formula;     // phi_a^c from Ricci and rho
    cplx phi_trace = 0;
    RMatrix phi_real;        // phi on H(M) in the real frame, columns are images
    Eigen::VectorXcd v;      // V = V^a T_a + conj
    Eigen::VectorXcd v_pairing;  // G(V, T_b) = 2 dsigma(T^, T_b^)
    Eigen::VectorXd v_real;  // V in the real frame
};

class FeffermanStructure {
public:
    // fibre_scale: S = fibre_scale * d/dgamma. The default n+2 makes
    // sigma(S) = 1.
    explicit FeffermanStructure(const LocalStructure& local, double gamma = 0.0,
                                std::optional<double> fibre_scale = {});

    const LocalStructure& local() const { return *local_; }
    int n() const { return local_->n(); }
    int size() const { return 2 * n() + 2; }
    double gamma() const { return gamma_; }
    double fibre_scale() const { return scale_; }

    CircleField lift(const Field& x) const;
    CircleField S() const;
    CircleField d_gamma() const;
    CircleField zero() const;

    Jet sigma(const CircleField& v) const;
    Jet dsigma(const CircleField& u, const CircleField& w) const;
    Jet metric(const CircleField& u, const CircleField& w) const;

    // {X_1^ .. X_2n^, T^, S}
    const CircleField& basis(int i) const { return basis_[i]; }

    // Throws ConventionError unless F has exactly one negative eigenvalue.
    FeffermanPointData snapshot(const TWData& tw) const;

private:
    const LocalStructure* local_;
    double gamma_;
    double scale_;
    std::vector<CircleField> basis_;
};

// phi_a^c = (i / (2(n+2))) (R_a^c - rho delta / (2(n+1))).
CMatrix phi_from_curvature(const TWData& tw);

// G(V, T_b) = -rho_b / (4n(n+1)); throws std::invalid_argument unless the
// report is pseudo-Einstein and n >= 2.
Eigen::VectorXcd v_closed_form(const TWData& tw, const ClassificationReport& report);

// Max difference between d sigma and
// (i dw_a^a - d(rho theta)/(4(n+1))) / (n+2) on all pairs of the complex frame.
double dsigma_consistency(const FeffermanStructure& fs, const TWData& tw);

}  // namespace pherm
