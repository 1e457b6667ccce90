#include "ternassert/oracle.hpp"

#include <string>
#include <unsupported/Eigen/KroneckerProduct>
#include <vector>

#include "overloaded.hpp"
#include "ternassert/errors.hpp"
#include "ternassert/simulator.hpp"

namespace ternassert {
namespace {

using detail::Overloaded;
using Eigen::Matrix3cd;
using Eigen::MatrixXcd;

Matrix3cd to_eigen(const Matrix3& m) {
    Matrix3cd out;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out(r, c) = m[r][c];
    return out;
}

Matrix3cd projector(int d) {
    Matrix3cd p = Matrix3cd::Zero();
    p(d, d) = 1.0;
    return p;
}

// Kronecker product of one 3x3 factor per qutrit, qutrit 0 leftmost.
MatrixXcd kron_all(const std::vector<Matrix3cd>& factors) {
    MatrixXcd acc = MatrixXcd::Identity(1, 1);
    for (const auto& f : factors) {
        MatrixXcd next = Eigen::kroneckerProduct(acc, f).eval();
        acc = std::move(next);
    }
    return acc;
}

// sum over control digits d of |d><d|_control (x) U_d on target, identity elsewhere.
MatrixXcd controlled_sum(int n, int control, int target, const std::array<Matrix3cd, 3>& per_digit) {
    const auto dim = static_cast<Eigen::Index>(pow3(n));
    MatrixXcd total = MatrixXcd::Zero(dim, dim);
    for (int d = 0; d < 3; ++d) {
        std::vector<Matrix3cd> factors(static_cast<std::size_t>(n), Matrix3cd::Identity());
        factors[static_cast<std::size_t>(control)] = projector(d);
        factors[static_cast<std::size_t>(target)] = per_digit[static_cast<std::size_t>(d)];
        total += kron_all(factors);
    }
    return total;
}

Matrix3cd shift(int k) {
    Matrix3cd s = Matrix3cd::Zero();
    for (int t = 0; t < 3; ++t) s((t + k) % 3, t) = 1.0;
    return s;
}

}  // namespace

MatrixXcd expand_op(const GateOp& op, int n) {
    return std::visit(
        Overloaded{
            [&](const SingleOp& s) {
                std::vector<Matrix3cd> factors(static_cast<std::size_t>(n), Matrix3cd::Identity());
                factors[static_cast<std::size_t>(s.qutrit)] = to_eigen(s.gate.matrix);
                return kron_all(factors);
            },
            [&](const ControlledOp& c) {
                return controlled_sum(n, c.control, c.target,
                                      {Matrix3cd::Identity(), Matrix3cd::Identity(), to_eigen(c.gate.matrix)});
            },
            [&](const CompositeOp& c) {
                const int m = composite_multiplier(c.kind);
                return controlled_sum(n, c.control, c.target, {shift(0), shift(m), shift(2 * m)});
            },
            [](const MeasureOp&) -> MatrixXcd { throw InputError("measurements have no unitary"); },
        },
        op);
}

MatrixXcd dense_unitary(const Circuit& circuit) {
    const int n = circuit.num_qutrits();
    if (n > kDenseMaxQutrits)
        throw ResourceError("dense unitary limited to " + std::to_string(kDenseMaxQutrits) + " qutrits, circuit has " +
                            std::to_string(n));
    const auto dim = static_cast<Eigen::Index>(pow3(n));
    MatrixXcd u = MatrixXcd::Identity(dim, dim);
    const std::size_t unitary = circuit.unitary_length();
    for (std::size_t i = 0; i < unitary; ++i) u = (expand_op(circuit.ops()[i], n) * u).eval();
    return u;
}

Eigen::VectorXcd to_eigen(const StateVector& state) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(state.size()));
    for (std::size_t i = 0; i < state.size(); ++i) v(static_cast<Eigen::Index>(i)) = state[i];
    return v;
}

double oracle_fidelity(const Circuit& circuit) {
    const Eigen::VectorXcd expected = dense_unitary(circuit) * to_eigen(StateVector::basis(circuit.init_digits()));
    const Eigen::VectorXcd actual = to_eigen(simulate(circuit).final_state);
    return std::norm(expected.dot(actual));
}

}  // namespace ternassert
