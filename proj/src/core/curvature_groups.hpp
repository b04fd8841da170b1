#pragma once

#include "pseudohermitian.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pherm {

// Betti numbers b_0 .. b_{2n+1} of M.
struct BettiVector {
    int n = 1;
    std::vector<int> b;
};

BettiVector betti_registry(const std::string& name, int n);
std::vector<std::string> betti_registry_names();
// "1,0,0,1" -> BettiVector; length must be 2n+2.
BettiVector parse_betti(const std::string& text, int n);
// b_0 >= 1 and Poincare duality; warnings only.
std::vector<std::string> betti_warnings(const BettiVector& betti);

// dims[k-1] = dim H^k(C(M), Gamma), k = 1 .. 2n+2.
struct CurvatureGroupTable {
    int n = 1;
    std::vector<int> dims;
    bool positive = false;
    bool tau_ambiguous = false;
    std::string reason;
    std::vector<std::string> warnings;
};

CurvatureGroupTable curvature_group_dims(const ClassificationReport& report, const BettiVector& betti);

// Sum of h_k computed from b directly: 2 sum b_k - b_0.
int kunneth_total(const BettiVector& betti);

// h_1 = 1 when n >= 2 and all three flags hold; nullopt otherwise.
std::optional<int> rumin_rule(const ClassificationReport& report, int n);

}  // namespace pherm
