#include "hmortar/mortar.hpp"
#include "hmortar/errors.hpp"

#include <cmath>
#include <numbers>

namespace hmortar {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double min_panel = 1e-14;  // rad; shorter panels are skipped

// Closed-form integral of cos(n*theta) * (p*theta + q) over [t0, t1].
double integral_cos_linear(int n, double p, double q, double t0, double t1) {
    if (n == 0) return p * 0.5 * (t1 * t1 - t0 * t0) + q * (t1 - t0);
    const double dn = n;
    auto primitive = [&](double t) {
        return (p * t + q) * std::sin(dn * t) / dn + p * std::cos(dn * t) / (dn * dn);
    };
    return primitive(t1) - primitive(t0);
}

// Same for sin(n*theta) * (p*theta + q), n >= 1.
double integral_sin_linear(int n, double p, double q, double t0, double t1) {
    const double dn = n;
    auto primitive = [&](double t) {
        return -(p * t + q) * std::cos(dn * t) / dn + p * std::sin(dn * t) / (dn * dn);
    };
    return primitive(t1) - primitive(t0);
}

// Accumulate the contribution of one linear panel hat(theta) = p*theta + q
// on [t0, t1] into column j for all 2N+1 modes.
void accumulate_panel(Eigen::MatrixXd& entries, int col, int degree, double r_gamma,
                      double t0, double t1, double p, double q) {
    if (t1 - t0 < min_panel) return;
    entries(0, col) += r_gamma * integral_cos_linear(0, p, q, t0, t1);
    for (int n = 1; n <= degree; ++n) {
        entries(2 * n - 1, col) += r_gamma * integral_cos_linear(n, p, q, t0, t1);
        entries(2 * n, col) += r_gamma * integral_sin_linear(n, p, q, t0, t1);
    }
}

} // namespace

Eigen::VectorXd CouplingMatrix::apply(const Eigen::VectorXd& free_vec) const {
    Eigen::VectorXd trace_vals(entries.cols());
    for (Eigen::Index j = 0; j < trace_vals.size(); ++j)
        trace_vals[j] = free_vec[cols_free[static_cast<size_t>(j)]];
    return entries * trace_vals;
}

void CouplingMatrix::add_transposed(const Eigen::VectorXd& mu, double scale,
                                    Eigen::VectorXd& free_vec) const {
    const Eigen::VectorXd trace_vals = entries.transpose() * mu;
    for (Eigen::Index j = 0; j < trace_vals.size(); ++j)
        free_vec[cols_free[static_cast<size_t>(j)]] += scale * trace_vals[j];
}

Eigen::MatrixXd CouplingMatrix::scatter(int n_free) const {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(entries.rows(), n_free);
    for (Eigen::Index j = 0; j < entries.cols(); ++j)
        dense.col(cols_free[static_cast<size_t>(j)]) = entries.col(j);
    return dense;
}

CouplingMatrix assemble_coupling(const InterfaceTrace& trace, const DofMap& dofs,
                                 int degree, double r_gamma) {
    const int K = static_cast<int>(trace.angles.size());
    if (K < 3) throw AssemblyError("coupling assembly needs at least 3 trace nodes");
    if (degree < 0) throw AssemblyError("multiplier degree must be non-negative");

    CouplingMatrix B;
    B.degree = degree;
    B.r_gamma = r_gamma;
    B.entries = Eigen::MatrixXd::Zero(multiplier_dim(degree), K);
    B.cols_free.reserve(static_cast<size_t>(K));
    for (int j = 0; j < K; ++j) {
        const int free = dofs.free_of_node[static_cast<size_t>(trace.node_ids[static_cast<size_t>(j)])];
        if (free < 0) throw AssemblyError("interface node is a Dirichlet node");
        B.cols_free.push_back(free);
    }

    // hat_j rises on [theta_{j-1}, theta_j] and falls on [theta_j, theta_{j+1}];
    // the wrap-around panels are integrated in an extended angle coordinate,
    // which is fine since the trig factors are 2*pi-periodic.
    for (int j = 0; j < K; ++j) {
        const double tj = trace.angles[static_cast<size_t>(j)];
        double t_prev = trace.angles[static_cast<size_t>((j + K - 1) % K)];
        double t_next = trace.angles[static_cast<size_t>((j + 1) % K)];
        if (j == 0) t_prev -= 2.0 * pi;
        if (j == K - 1) t_next += 2.0 * pi;

        // rising: (theta - t_prev) / (tj - t_prev)
        if (tj - t_prev >= min_panel) {
            const double slope = 1.0 / (tj - t_prev);
            accumulate_panel(B.entries, j, degree, r_gamma, t_prev, tj, slope, -slope * t_prev);
        }
        // falling: (t_next - theta) / (t_next - tj)
        if (t_next - tj >= min_panel) {
            const double slope = -1.0 / (t_next - tj);
            accumulate_panel(B.entries, j, degree, r_gamma, tj, t_next, slope, -slope * t_next);
        }
    }
    return B;
}

Eigen::MatrixXd rotation_blocks(double alpha, int degree) {
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(multiplier_dim(degree), multiplier_dim(degree));
    R(0, 0) = 1.0;
    for (int n = 1; n <= degree; ++n) {
        const double c = std::cos(n * alpha);
        const double s = std::sin(n * alpha);
        R(2 * n - 1, 2 * n - 1) = c;
        R(2 * n - 1, 2 * n) = -s;
        R(2 * n, 2 * n - 1) = s;
        R(2 * n, 2 * n) = c;
    }
    return R;
}

Eigen::MatrixXd rotation_derivative(double alpha, int degree) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(multiplier_dim(degree), multiplier_dim(degree));
    for (int n = 1; n <= degree; ++n) {
        const double c = std::cos(n * alpha);
        const double s = std::sin(n * alpha);
        D(2 * n - 1, 2 * n - 1) = -n * s;
        D(2 * n - 1, 2 * n) = -n * c;
        D(2 * n, 2 * n - 1) = n * c;
        D(2 * n, 2 * n) = -n * s;
    }
    return D;
}

Eigen::VectorXd derivative_coeffs(const Eigen::VectorXd& coeffs) {
    const int degree = (static_cast<int>(coeffs.size()) - 1) / 2;
    Eigen::VectorXd d = Eigen::VectorXd::Zero(coeffs.size());
    for (int n = 1; n <= degree; ++n) {
        d[2 * n - 1] = n * coeffs[2 * n];    // cos coefficient of the derivative
        d[2 * n] = -n * coeffs[2 * n - 1];   // sin coefficient
    }
    return d;
}

Eigen::VectorXd to_fourier_coeffs(const Eigen::VectorXd& internal) {
    Eigen::VectorXd fourier = internal;
    fourier[0] *= 2.0;
    return fourier;
}

Eigen::VectorXd from_fourier_coeffs(const Eigen::VectorXd& fourier) {
    Eigen::VectorXd internal = fourier;
    internal[0] *= 0.5;
    return internal;
}

double eval_multiplier(const Eigen::VectorXd& fourier_coeffs, double theta) {
    const int degree = (static_cast<int>(fourier_coeffs.size()) - 1) / 2;
    double value = 0.5 * fourier_coeffs[0];
    for (int n = 1; n <= degree; ++n)
        value += fourier_coeffs[2 * n - 1] * std::cos(n * theta) +
                 fourier_coeffs[2 * n] * std::sin(n * theta);
    return value;
}

} // namespace hmortar
