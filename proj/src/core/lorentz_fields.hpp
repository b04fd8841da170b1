#pragma once

#include "fefferman.hpp"

#include <map>
#include <string>

namespace pherm {

// Levi-Civita connection of F in the graph chart of M (all ambient real
// coordinates but the one with the largest d phi component) times gamma.
class LeviCivita {
public:
    explicit LeviCivita(const FeffermanStructure& fs);

    int size() const { return size_; }
    int eliminated() const { return eliminated_; }
    const CircleField& coordinate_field(int i) const { return coord_[i]; }
    const RMatrix& metric() const { return f_; }
    double christoffel(int i, int j, int k) const { return gamma_[(i * size_ + j) * size_ + k]; }

    Eigen::VectorXd components(const CircleField& v) const;
    // nabla_x y in the coordinate basis.
    Eigen::VectorXd covariant(const CircleField& x, const CircleField& y) const;

    double symmetry_residual() const;
    // max |d_j F_lk - Gamma^m_jl F_mk - Gamma^m_jk F_lm|
    double compatibility_residual() const;

private:
    const FeffermanStructure* fs_;
    int size_;
    int eliminated_;
    std::vector<int> ambient_;  // ambient index of coordinate i < size-1
    std::vector<CircleField> coord_;
    RMatrix f_;
    std::vector<RMatrix> df_;  // df_[j](l, k) = d_j F_lk
    std::vector<double> gamma_;
};

struct ResidualReport {
    std::map<std::string, double> residuals;
    int samples = 0;
    double tol = 1e-6;

    bool pass() const;
    double max() const;
    // Keywise max; samples add. Associative.
    void merge(const ResidualReport& other);
};

// Christoffel-path minus formula-path covariant derivatives of the lifted
// frame, keyed eq3 .. eq8.
ResidualReport lifted_connection_residuals(const LeviCivita& lc, const FeffermanStructure& fs, const FeffermanPointData& fd,
                                double tol);

// a (T^ - rho S / (4n(n+1))) + epsilon X_1^
struct CandidateField {
    double amplitude = 1.0;
    double perturbation = 0.0;
};

CircleField candidate(const FeffermanStructure& fs, const CandidateField& field);

struct ParallelCheck {
    double residual = 0;      // max |nabla_B X| over B in {X_a^, T^, S}
    double lambda = 0;        // trace(nabla X) / (2n+2)
    double conformal = 0;     // max |nabla X - lambda I|
};

ParallelCheck parallel_check(const LeviCivita& lc, const FeffermanStructure& fs, const CandidateField& field);

// The scalar equations of the conformal system for the candidate with
// lambda = 0; one entry per family.
ResidualReport conformal_system_residuals(const FeffermanStructure& fs, const FeffermanPointData& fd,
                                          const TWData& tw, const CandidateField& field, double tol);

}  // namespace pherm
