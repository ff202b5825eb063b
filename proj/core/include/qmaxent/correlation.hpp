#pragma once

// Three-qubit irreducible three-party correlation C_3 and its GHZ-type
// discontinuities. Qubits are ordered A, B, C with A the leftmost factor.

#include <string>
#include <vector>

#include "qmaxent/inference.hpp"

namespace qmaxent {

struct PauliWord {
  std::string label;  // e.g. "XIZ"
  CMatrix matrix;
};

/// The 36 Pauli words with one or two non-identity factors: first the
/// weight-one words (site A, B, C; Pauli index 1..3), then the weight-two
/// words for the site pairs AB, AC, BC with Pauli indices ascending
/// lexicographically.
std::vector<PauliWord> two_local_basis();
ObservableSet two_local_observables();

struct MarginalTriple {
  DensityMatrix ab;
  DensityMatrix ac;
  DensityMatrix bc;
};

MarginalTriple marginal_triple(const DensityMatrix& rho);

/// Solver settings used for the 36-observable problem.
SolverOptions two_local_solver_options();

struct C3Evaluation {
  double value = 0.0;
  double maxent_entropy = 0.0;
  double state_entropy = 0.0;
  MaxEntSolution solution;
};

/// C_3(rho) = S(rho*(rho^(2))) - S(rho).
C3Evaluation c3_evaluate(const DensityMatrix& rho);
double c3(const DensityMatrix& rho);

/// |000> amplitude a, |111> amplitude sqrt(1 - |a|^2).
CVector ghz_vector(Complex a);
/// a|000> + cos(g) b|111> + sin(g) b|001> with b = sqrt(1 - |a|^2).
CVector tilted_ghz_vector(Complex a, double gamma);

/// (p + x X + y Y + z Z) / 2 on span{|000>, |111>}, with X, Y, Z the Pauli
/// matrices in that two-dimensional basis.
DensityMatrix ghz_fiber_state(double x, double y, double z);

struct HEpsilonModel {
  double eps = 0.0;
  CMatrix hamiltonian;       // H0 + eps H1
  double lambda = 0.0;       // 1 + eps + 2 sqrt(1 - eps + eps^2)
  double lambda_numeric = 0.0;
  double s = 0.0;            // (lambda - 3) / (3 eps)
  CVector eigenvector;       // top eigenvector from the eigensolver
  DensityMatrix ground_state;  // w w* / (2 + 6 s^2), w = (1, s, s, s, s, s, s, 1)
  DensityMatrix marginal_ab;
  CMatrix marginal_ab_closed_form;
  RVector marginal_nonzero_eigenvalues;  // closed form, ascending
};

CMatrix h0_hamiltonian();
CMatrix h1_hamiltonian();
HEpsilonModel h_epsilon_model(double eps);

struct C3ProbeReport {
  Complex a;
  double closed_form = 0.0;      // H(|a|^2)
  double c3_ghz = 0.0;           // solver value at the GHZ-type state
  std::vector<double> gammas;
  std::vector<double> c3_tilted;
  double gap = 0.0;              // c3_ghz - c3 at the smallest gamma
  std::string note;
};

/// Default gamma schedule {0.3, 0.1, 0.03, 0.01}.
std::vector<double> default_gamma_schedule();

C3ProbeReport c3_discontinuity_probe(Complex a, const std::vector<double>& gammas);

}  // namespace qmaxent
