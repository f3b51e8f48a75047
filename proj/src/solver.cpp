#include "hmortar/solver.hpp"
#include "hmortar/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <atomic>
#include <limits>
#include <string>

namespace hmortar {

namespace {
std::atomic<long> g_factorizations{0};
} // namespace

long factorization_count() { return g_factorizations.load(); }
void reset_factorization_count() { g_factorizations.store(0); }

AssembledSystem assemble_system(const MachineConfig& cfg, int degree_override) {
    AssembledSystem sys;
    sys.cfg = cfg;
    sys.degree = degree_override >= 0 ? degree_override : cfg.multiplier_degree;
    sys.cfg.multiplier_degree = sys.degree;
    sys.meshes = build_meshes(cfg);
    sys.dofs_S = make_dof_map(sys.meshes.stator);
    sys.dofs_R = make_dof_map(sys.meshes.rotor);
    sys.K_S = assemble_stiffness(sys.meshes.stator, cfg, sys.dofs_S);
    sys.K_R = assemble_stiffness(sys.meshes.rotor, cfg, sys.dofs_R);
    sys.j_e = assemble_current_load(sys.meshes.stator, cfg, sys.dofs_S);
    sys.j_M = assemble_magnet_load(sys.meshes.rotor, cfg, sys.dofs_R);

    const InterfaceTrace trace_S = extract_trace(sys.meshes.stator);
    const InterfaceTrace trace_R = extract_trace(sys.meshes.rotor);
    sys.B_S = assemble_coupling(trace_S, sys.dofs_S, sys.degree, cfg.r_gamma);
    sys.B_R0 = assemble_coupling(trace_R, sys.dofs_R, sys.degree, cfg.r_gamma);

    using LDLT = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;
    sys.fact_S = std::make_shared<LDLT>();
    sys.fact_S->compute(sys.K_S);
    ++g_factorizations;
    if (sys.fact_S->info() != Eigen::Success)
        throw AssemblyError("factorization of the stator stiffness matrix failed");
    sys.fact_R = std::make_shared<LDLT>();
    sys.fact_R->compute(sys.K_R);
    ++g_factorizations;
    if (sys.fact_R->info() != Eigen::Success)
        throw AssemblyError("factorization of the rotor stiffness matrix failed");
    return sys;
}

SolutionState solve_monolithic(const AssembledSystem& sys, double alpha) {
    const int nS = sys.dofs_S.n_free();
    const int nR = sys.dofs_R.n_free();
    const int nL = multiplier_dim(sys.degree);
    const int n = nS + nR + nL;

    const Eigen::MatrixXd R = rotation_blocks(alpha, sys.degree);
    const Eigen::MatrixXd BRa = R * sys.B_R0.entries;  // rows x rotor trace cols

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(sys.K_S.nonZeros() + sys.K_R.nonZeros()) +
                 2 * static_cast<size_t>(nL) *
                     (sys.B_S.cols_free.size() + sys.B_R0.cols_free.size()));
    for (int k = 0; k < sys.K_S.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.K_S, k); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int k = 0; k < sys.K_R.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.K_R, k); it; ++it)
            trip.emplace_back(nS + static_cast<int>(it.row()), nS + static_cast<int>(it.col()),
                              it.value());
    for (int mode = 0; mode < nL; ++mode) {
        for (size_t j = 0; j < sys.B_S.cols_free.size(); ++j) {
            const double v = sys.B_S.entries(mode, static_cast<Eigen::Index>(j));
            const int col = sys.B_S.cols_free[j];
            trip.emplace_back(col, nS + nR + mode, v);       // +B_S^T
            trip.emplace_back(nS + nR + mode, col, v);       // +B_S
        }
        for (size_t j = 0; j < sys.B_R0.cols_free.size(); ++j) {
            const double v = BRa(mode, static_cast<Eigen::Index>(j));
            const int col = nS + sys.B_R0.cols_free[j];
            trip.emplace_back(col, nS + nR + mode, -v);      // -B_R(alpha)^T
            trip.emplace_back(nS + nR + mode, col, -v);      // -B_R(alpha)
        }
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs.head(nS) = sys.j_e;
    rhs.segment(nS, nR) = sys.j_M;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw InstabilityError("monolithic saddle-point matrix is numerically singular",
                               std::numeric_limits<double>::infinity());
    const Eigen::VectorXd x = lu.solve(rhs);

    SolutionState state;
    state.alpha = alpha;
    state.a_S = x.head(nS);
    state.a_R = x.segment(nS, nR);
    state.lambda = x.tail(nL);

    const double scale = std::max({sys.j_e.norm(), sys.j_M.norm(), 1e-300});
    if ((A * x - rhs).norm() > 1e-6 * scale)
        throw InstabilityError("monolithic solve residual too large; system ill-conditioned",
                               std::numeric_limits<double>::infinity());
    return state;
}

SchurPrecomputation precompute_schur(const AssembledSystem& sys) {
    SchurPrecomputation pre;
    pre.degree = sys.degree;
    const int nL = multiplier_dim(sys.degree);
    const int nS = sys.dofs_S.n_free();
    const int nR = sys.dofs_R.n_free();

    const Eigen::MatrixXd BS_dense = sys.B_S.scatter(nS);
    const Eigen::MatrixXd BR_dense = sys.B_R0.scatter(nR);

    pre.X_S.resize(nS, nL);
    pre.X_R.resize(nR, nL);
    for (int k = 0; k < nL; ++k) {
        pre.X_S.col(k) = sys.fact_S->solve(BS_dense.row(k).transpose());
        pre.X_R.col(k) = sys.fact_R->solve(BR_dense.row(k).transpose());
    }
    pre.y_S = sys.fact_S->solve(sys.j_e);
    pre.y_R = sys.fact_R->solve(sys.j_M);

    pre.G_S = BS_dense * pre.X_S;
    pre.G_R = BR_dense * pre.X_R;
    pre.g_S = BS_dense * pre.y_S;
    pre.g_R = BR_dense * pre.y_R;
    return pre;
}

Eigen::MatrixXd interface_matrix(const SchurPrecomputation& pre, double alpha) {
    const Eigen::MatrixXd R = rotation_blocks(alpha, pre.degree);
    return pre.G_S + R * pre.G_R * R.transpose();
}

namespace {

struct InterfaceEigen {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    double condition;
};

InterfaceEigen interface_eigensystem(const SchurPrecomputation& pre, double alpha) {
    InterfaceEigen ie{Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(interface_matrix(pre, alpha)),
                      0.0};
    const Eigen::VectorXd& ev = ie.es.eigenvalues();
    const double max_ev = ev.cwiseAbs().maxCoeff();
    const double min_ev = ev.cwiseAbs().minCoeff();
    ie.condition = min_ev > 0.0 ? max_ev / min_ev : std::numeric_limits<double>::infinity();
    return ie;
}

} // namespace

double interface_condition(const SchurPrecomputation& pre, double alpha) {
    return interface_eigensystem(pre, alpha).condition;
}

Eigen::VectorXd solve_interface_rhs(const SchurPrecomputation& pre, double alpha,
                                    const Eigen::VectorXd& rhs) {
    const InterfaceEigen ie = interface_eigensystem(pre, alpha);
    if (!(ie.condition < instability_condition_limit))
        throw InstabilityError(
            "interface system unstable (condition estimate " + std::to_string(ie.condition) +
                "); the multiplier space is too large for the interface trace",
            ie.condition);
    return ie.es.eigenvectors() *
           (ie.es.eigenvalues().cwiseInverse().asDiagonal() *
            (ie.es.eigenvectors().transpose() * rhs));
}

Eigen::VectorXd solve_interface(const SchurPrecomputation& pre, double alpha) {
    const Eigen::MatrixXd R = rotation_blocks(alpha, pre.degree);
    return solve_interface_rhs(pre, alpha, pre.g_S - R * pre.g_R);
}

SolutionState reconstruct(const SchurPrecomputation& pre, const Eigen::VectorXd& lambda,
                          double alpha) {
    SolutionState state;
    state.alpha = alpha;
    state.lambda = lambda;
    const Eigen::MatrixXd R = rotation_blocks(alpha, pre.degree);
    state.a_S = pre.y_S - pre.X_S * lambda;
    state.a_R = pre.y_R + pre.X_R * (R.transpose() * lambda);
    return state;
}

Eigen::Vector3d block_residuals(const AssembledSystem& sys, const SolutionState& state) {
    const Eigen::MatrixXd R = rotation_blocks(state.alpha, sys.degree);

    Eigen::VectorXd r1 = sys.K_S * state.a_S - sys.j_e;
    sys.B_S.add_transposed(state.lambda, 1.0, r1);
    const double s1 = std::max({(sys.K_S * state.a_S).norm(), sys.j_e.norm(), 1e-300});

    Eigen::VectorXd r2 = sys.K_R * state.a_R - sys.j_M;
    sys.B_R0.add_transposed(R.transpose() * state.lambda, -1.0, r2);
    const double s2 = std::max({(sys.K_R * state.a_R).norm(), sys.j_M.norm(), 1e-300});

    const Eigen::VectorXd bs = sys.B_S.apply(state.a_S);
    const Eigen::VectorXd br = R * sys.B_R0.apply(state.a_R);
    const double s3 = std::max({bs.norm(), br.norm(), 1e-300});

    return {r1.norm() / s1, r2.norm() / s2, (bs - br).norm() / s3};
}

} // namespace hmortar
