#include "cpilink/johansen.hpp"

#include <cmath>

#include "cpilink/errors.hpp"

namespace cpilink {
namespace {

struct TraceCv {
    double cv10, cv5, cv1;
};

// Asymptotic trace critical values by number of remaining common trends.
TraceCv trace_table(JohansenDet det, int m) {
    switch (det) {
        case JohansenDet::none:
            if (m == 1) return {2.98, 4.13, 6.94};
            return {10.47, 12.32, 16.36};
        case JohansenDet::constant:
            if (m == 1) return {2.69, 3.76, 6.65};
            return {13.33, 15.41, 20.04};
        case JohansenDet::restricted_constant:
            if (m == 1) return {7.52, 9.24, 12.97};
            return {17.85, 19.96, 24.60};
    }
    return {2.69, 3.76, 6.65};
}

Eigen::MatrixXd partial_out(const Eigen::MatrixXd& z, const Eigen::MatrixXd& on) {
    if (on.cols() == 0) return z;
    return z - on * on.colPivHouseholderQr().solve(z);
}

}  // namespace

double johansen_trace_cv(JohansenDet det, int m, int level_percent) {
    if (m < 1 || m > 2) throw Error("johansen: critical values embedded for 1 or 2 common trends");
    TraceCv t = trace_table(det, m);
    switch (level_percent) {
        case 10: return t.cv10;
        case 5: return t.cv5;
        case 1: return t.cv1;
    }
    throw Error("johansen: significance level must be 1, 5 or 10");
}

int JohansenReport::rank_at(int level_percent) const {
    const int k = static_cast<int>(trace_stats.size());
    for (int r = 0; r < k; ++r) {
        if (trace_stats[static_cast<std::size_t>(r)] <
            critical_values[static_cast<std::size_t>(r)].at(level_percent))
            return r;
    }
    return k;
}

JohansenReport johansen_test(const MonthlySeries& y1, const MonthlySeries& y2, int vecm_lag,
                             JohansenDet det) {
    if (vecm_lag < 0) throw Error("johansen: vecm_lag must be >= 0");
    auto [window, y] = align({y1, y2});
    const int total = window.count();
    if (total < 30 + vecm_lag)
        throw SeriesTooShort("johansen: need at least " + std::to_string(30 + vecm_lag) +
                             " aligned months, got " + std::to_string(total));

    constexpr int k = 2;
    const int p = vecm_lag;
    const int t_eff = total - 1 - p;

    // dy_t regressed against y_{t-1} after partialling out lagged differences
    // and any unrestricted deterministic terms.
    Eigen::MatrixXd dy(total - 1, k);
    for (int t = 1; t < total; ++t) dy.row(t - 1) = y.row(t) - y.row(t - 1);

    const bool restricted = det == JohansenDet::restricted_constant;
    const int z1_cols = restricted ? k + 1 : k;
    const int z2_cols = k * p + (det == JohansenDet::constant ? 1 : 0);

    Eigen::MatrixXd z0(t_eff, k), z1(t_eff, z1_cols), z2(t_eff, z2_cols);
    for (int r = 0; r < t_eff; ++r) {
        const int s = p + r;  // index into dy; dy.row(s) = y(s+1) - y(s)
        z0.row(r) = dy.row(s);
        z1.row(r).head(k) = y.row(s);
        if (restricted) z1(r, k) = 1.0;
        int col = 0;
        for (int lag = 1; lag <= p; ++lag) {
            z2.row(r).segment(col, k) = dy.row(s - lag);
            col += k;
        }
        if (det == JohansenDet::constant) z2(r, col) = 1.0;
    }

    Eigen::MatrixXd r0 = partial_out(z0, z2);
    Eigen::MatrixXd r1 = partial_out(z1, z2);

    Eigen::MatrixXd s00 = r0.transpose() * r0 / t_eff;
    Eigen::MatrixXd s11 = r1.transpose() * r1 / t_eff;
    Eigen::MatrixXd s01 = r0.transpose() * r1 / t_eff;

    Eigen::LLT<Eigen::MatrixXd> llt00(s00);
    Eigen::LLT<Eigen::MatrixXd> llt11(s11);
    if (llt00.info() != Eigen::Success || llt11.info() != Eigen::Success)
        throw SingularMoment("johansen: singular product-moment matrix");

    // Eigenvalues of S11^-1 S10 S00^-1 S01 via the symmetric form
    // L^-1 (S10 S00^-1 S01) L^-T with S11 = L L'.
    Eigen::MatrixXd b = s01.transpose() * llt00.solve(s01);
    Eigen::MatrixXd l = llt11.matrixL();
    Eigen::MatrixXd c = l.triangularView<Eigen::Lower>().solve(b);
    Eigen::MatrixXd m =
        l.triangularView<Eigen::Lower>().solve(c.transpose()).transpose();
    m = ((m + m.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw SingularMoment("johansen: eigensolver failed");

    JohansenReport report;
    report.t_effective = t_eff;
    report.vecm_lag = p;
    // Largest k eigenvalues, descending. The restricted-constant problem has
    // one extra structurally-zero root which is dropped.
    for (int i = 0; i < k; ++i) {
        double lambda = es.eigenvalues()(es.eigenvalues().size() - 1 - i);
        if (lambda < 0.0) lambda = 0.0;
        if (lambda > 1.0 - 1e-12) {
            lambda = 1.0 - 1e-12;
            report.degenerate = true;
        }
        report.eigenvalues.push_back(lambda);
    }

    for (int r = 0; r < k; ++r) {
        double sum = 0.0;
        for (int i = r; i < k; ++i) sum += std::log(1.0 - report.eigenvalues[static_cast<std::size_t>(i)]);
        report.trace_stats.push_back(-t_eff * sum);
        const int m_trends = k - r;
        report.critical_values.push_back({{1, johansen_trace_cv(det, m_trends, 1)},
                                          {5, johansen_trace_cv(det, m_trends, 5)},
                                          {10, johansen_trace_cv(det, m_trends, 10)}});
    }
    report.rank = report.rank_at(5);
    return report;
}

}  // namespace cpilink
