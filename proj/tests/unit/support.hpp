#pragma once

#include <Eigen/Dense>

#include <string>

namespace test {

template <class D>
double max_abs(const Eigen::MatrixBase<D>& m) {
    return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

inline std::string ellipsoid(int n) {
    std::string s = "ellipsoid:";
    for (int j = 0; j <= n; ++j) s += (j ? "," : "") + std::to_string(1 + j);
    return s;
}

}  // namespace test
