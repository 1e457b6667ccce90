#pragma once

#include <Eigen/Dense>

#include "ternassert/circuit.hpp"
#include "ternassert/state_vector.hpp"

namespace ternassert {

inline constexpr int kDenseMaxQutrits = 6;

/// Full 3^n x 3^n unitary of the circuit's unitary part, built by Kronecker-expanding
/// every op to the whole register. Composites use their semantic permutation, not the
/// M-S sequence. Throws ResourceError above kDenseMaxQutrits.
Eigen::MatrixXcd dense_unitary(const Circuit& circuit);

/// Single op expanded to the full register.
Eigen::MatrixXcd expand_op(const GateOp& op, int num_qutrits);

Eigen::VectorXcd to_eigen(const StateVector& state);

/// fidelity(simulate(c).final_state, dense_unitary(c) * |init>).
double oracle_fidelity(const Circuit& circuit);

}  // namespace ternassert
