#include "linalg.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "prodfn/errors.hpp"
#include <limits>

namespace prodfn::linalg {

namespace {

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& columns) {
    if (columns.empty() || columns.front().empty()) {
        throw InvalidParams("design matrix must have at least one column and one row");
    }
    const auto n = static_cast<Eigen::Index>(columns.front().size());
    const auto k = static_cast<Eigen::Index>(columns.size());
    Eigen::MatrixXd x(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (static_cast<Eigen::Index>(columns[static_cast<std::size_t>(j)].size()) != n) {
            throw InvalidParams("design columns have unequal lengths");
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            x(i, j) = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }
    return x;
}

}  // namespace

LstsqResult lstsq(const std::vector<std::vector<double>>& columns, const std::vector<double>& y,
                  const std::vector<std::string>& column_names, double rank_tol) {
    Eigen::MatrixXd x = to_matrix(columns);
    if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
        throw InvalidParams("response length does not match design rows");
    }
    // Equilibrate columns to unit norm so the relative rank threshold is
    // meaningful for designs mixing levels, logs, and products.
    Eigen::VectorXd scale(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double norm = x.col(j).norm();
        scale(j) = norm > 0.0 ? norm : 1.0;
        x.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = rank_tol * sv(0);
    int numerical_rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++numerical_rank;
    }
    if (numerical_rank < x.cols()) {
        // Name the columns loading on the null-space directions.
        std::string involved;
        const auto& v = svd.matrixV();
        for (Eigen::Index dir = numerical_rank; dir < x.cols(); ++dir) {
            const double peak = v.col(dir).cwiseAbs().maxCoeff();
            for (Eigen::Index j = 0; j < x.cols(); ++j) {
                if (std::fabs(v(j, dir)) > 0.3 * peak) {
                    const auto idx = static_cast<std::size_t>(j);
                    std::string name = idx < column_names.size() ? column_names[idx]
                                                                 : "#" + std::to_string(j);
                    if (involved.find(name) == std::string::npos) {
                        if (!involved.empty()) involved += ", ";
                        involved += name;
                    }
                }
            }
        }
        throw RankDeficient("design is rank deficient (rank " + std::to_string(numerical_rank) +
                            " of " + std::to_string(x.cols()) + "); columns involved: " +
                            involved);
    }

    const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    const Eigen::VectorXd b_scaled = svd.solve(yv);
    const Eigen::VectorXd fitted = x * b_scaled;
    const Eigen::VectorXd resid = yv - fitted;

    // Undo the equilibration: b_j = b_scaled_j / s_j, and the (X'X)^-1
    // diagonal picks up 1/s_j^2.
    const auto& v = svd.matrixV();
    LstsqResult out;
    out.coef.resize(static_cast<std::size_t>(x.cols()));
    out.xtx_inv_diag.resize(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out.coef[static_cast<std::size_t>(j)] = b_scaled(j) / scale(j);
        double acc = 0.0;
        for (Eigen::Index r = 0; r < sv.size(); ++r) {
            const double vr = v(j, r) / sv(r);
            acc += vr * vr;
        }
        out.xtx_inv_diag[static_cast<std::size_t>(j)] = acc / (scale(j) * scale(j));
    }
    out.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    out.residuals.assign(resid.data(), resid.data() + resid.size());
    out.ssr = resid.squaredNorm();
    return out;
}

int rank(const std::vector<std::vector<double>>& columns, double rank_tol) {
    Eigen::MatrixXd x = to_matrix(columns);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double norm = x.col(j).norm();
        if (norm > 0.0) x.col(j) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    const double cutoff = rank_tol * sv(0);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff) ++r;
    }
    return r;
}

double scaled_condition_number(const std::vector<std::vector<double>>& columns) {
    Eigen::MatrixXd x = to_matrix(columns);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        const double norm = x.col(j).norm();
        if (norm > 0.0) x.col(j) /= norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

}  // namespace prodfn::linalg
