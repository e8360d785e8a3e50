#ifndef PRODFN_LINALG_HPP
#define PRODFN_LINALG_HPP

#include <string>
#include <vector>

namespace prodfn::linalg {

// Least-squares solution of y = X b with X given column-wise. Rank detection
// flags singular values below rank_tol times the largest one; a deficient
// design throws RankDeficient naming the columns loading on the null space.
struct LstsqResult {
    std::vector<double> coef;
    std::vector<double> xtx_inv_diag;  // diagonal of (X'X)^-1
    std::vector<double> fitted;
    std::vector<double> residuals;
    double ssr = 0.0;
};

LstsqResult lstsq(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
                  const std::vector<std::string>& column_names = {}, double rank_tol = 1e-10);

// Numerical rank under the same relative threshold.
int rank(const std::vector<std::vector<double>>& columns, double rank_tol = 1e-10);

// Condition number (sigma_max / sigma_min) after scaling every column to unit
// Euclidean norm.
double scaled_condition_number(const std::vector<std::vector<double>>& columns);

}  // namespace prodfn::linalg

#endif  // PRODFN_LINALG_HPP
