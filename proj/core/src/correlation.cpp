#include "qmaxent/correlation.hpp"

#include <algorithm>
#include <cmath>

namespace qmaxent {

namespace {

constexpr char kPauliLetter[] = {'I', 'X', 'Y', 'Z'};

CMatrix local_pauli(int index) { return index == 0 ? CMatrix(CMatrix::Identity(2, 2)) : pauli(index); }

PauliWord make_word(int a, int b, int c) {
  PauliWord w;
  w.label = {kPauliLetter[a], kPauliLetter[b], kPauliLetter[c]};
  w.matrix = tensor({local_pauli(a), local_pauli(b), local_pauli(c)});
  return w;
}

}  // namespace

std::vector<PauliWord> two_local_basis() {
  std::vector<PauliWord> out;
  for (int site = 0; site < 3; ++site) {
    for (int i = 1; i <= 3; ++i) {
      int idx[3] = {0, 0, 0};
      idx[site] = i;
      out.push_back(make_word(idx[0], idx[1], idx[2]));
    }
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) {
        int idx[3] = {0, 0, 0};
        idx[pr[0]] = i;
        idx[pr[1]] = j;
        out.push_back(make_word(idx[0], idx[1], idx[2]));
      }
    }
  }
  return out;
}

ObservableSet two_local_observables() {
  std::vector<CMatrix> m;
  for (auto& w : two_local_basis()) m.push_back(std::move(w.matrix));
  return ObservableSet(std::move(m));
}

MarginalTriple marginal_triple(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw ValidationError("marginal_triple needs a three-qubit state");
  const SystemDims dims{2, 2, 2};
  return {partial_trace(rho, dims, {0, 1}), partial_trace(rho, dims, {0, 2}),
          partial_trace(rho, dims, {1, 2})};
}

SolverOptions two_local_solver_options() {
  SolverOptions o;
  o.tol = 1e-9;
  return o;
}

C3Evaluation c3_evaluate(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw ValidationError("C3 needs a three-qubit state");
  static const ObservableSet u = two_local_observables();
  const RVector alpha = expected_values(u, rho);
  MaxEntSolution sol = maxent(u, alpha, two_local_solver_options());
  const double s_max = von_neumann_entropy(sol.state);
  const double s_rho = von_neumann_entropy(rho);
  return C3Evaluation{s_max - s_rho, s_max, s_rho, std::move(sol)};
}

double c3(const DensityMatrix& rho) { return c3_evaluate(rho).value; }

CVector ghz_vector(Complex a) {
  const double na = std::norm(a);
  if (na > 1.0 + 1e-12) throw ValidationError("|a| must not exceed 1");
  CVector v = CVector::Zero(8);
  v(0) = a;
  v(7) = std::sqrt(std::max(0.0, 1.0 - na));
  return v;
}

CVector tilted_ghz_vector(Complex a, double gamma) {
  CVector v = ghz_vector(a);
  const Complex b = v(7);
  v(7) = std::cos(gamma) * b;
  v(1) = std::sin(gamma) * b;
  return v;
}

DensityMatrix ghz_fiber_state(double x, double y, double z) {
  if (x * x + y * y + z * z > 1.0 + 1e-12) throw ValidationError("(x, y, z) lies outside the unit ball");
  CMatrix s = CMatrix::Zero(8, 8);
  s(0, 0) = 0.5 * (1.0 + z);
  s(7, 7) = 0.5 * (1.0 - z);
  s(0, 7) = 0.5 * Complex(x, -y);
  s(7, 0) = 0.5 * Complex(x, y);
  return DensityMatrix::from_numerical(s);
}

CMatrix h0_hamiltonian() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix z = pauli(3);
  return tensor({id, z, z}) + tensor({z, id, z}) + tensor({z, z, id});
}

CMatrix h1_hamiltonian() {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix x = pauli(1);
  return tensor({x, id, id}) + tensor({id, x, id}) + tensor({id, id, x});
}

HEpsilonModel h_epsilon_model(double eps) {
  if (!(eps > 0.0)) throw ValidationError("h_epsilon_model needs eps > 0");
  HEpsilonModel m;
  m.eps = eps;
  m.hamiltonian = h0_hamiltonian() + eps * h1_hamiltonian();
  m.lambda = 1.0 + eps + 2.0 * std::sqrt(1.0 - eps + eps * eps);
  const auto eig = hermitian_eig(m.hamiltonian);
  m.lambda_numeric = eig.values(7);
  m.eigenvector = eig.vectors.col(7);
  m.s = (m.lambda - 3.0) / (3.0 * eps);
  const double s = m.s;

  CVector w(8);
  w << 1, s, s, s, s, s, s, 1;
  const double norm2 = 2.0 + 6.0 * s * s;
  m.ground_state = DensityMatrix::from_numerical(w * w.adjoint() / norm2);
  m.marginal_ab = partial_trace(m.ground_state, {2, 2, 2}, {0, 1});

  RMatrix upper(4, 4);
  upper << -2 * s * s, s * s + s, s * s + s, 2 * s,  //
      0, 2 * s * s, 2 * s * s, s * s + s,            //
      0, 0, 2 * s * s, s * s + s,                    //
      0, 0, 0, -2 * s * s;
  RMatrix sym = upper.triangularView<Eigen::Upper>();
  sym += upper.triangularView<Eigen::StrictlyUpper>().transpose();
  RMatrix closed = sym / norm2;
  closed(0, 0) += 0.5;
  closed(3, 3) += 0.5;
  m.marginal_ab_closed_form = closed.cast<Complex>();

  const double den = 2.0 * (3.0 * s * s + 1.0);
  m.marginal_nonzero_eigenvalues.resize(2);
  m.marginal_nonzero_eigenvalues << (s - 1) * (s - 1) / den, (5 * s * s + 2 * s + 1) / den;
  std::sort(m.marginal_nonzero_eigenvalues.data(), m.marginal_nonzero_eigenvalues.data() + 2);
  return m;
}

std::vector<double> default_gamma_schedule() { return {0.3, 0.1, 0.03, 0.01}; }

C3ProbeReport c3_discontinuity_probe(Complex a, const std::vector<double>& gammas) {
  const double na = std::norm(a);
  if (!(na > 0.0 && na < 1.0)) throw ValidationError("c3 probe needs 0 < |a| < 1");
  if (gammas.empty()) throw ValidationError("c3 probe needs at least one gamma");
  C3ProbeReport rep;
  rep.a = a;
  rep.closed_form = binary_entropy(na);
  rep.c3_ghz = c3(density_from_vector(ghz_vector(a)));
  rep.gammas = gammas;
  for (double g : gammas) rep.c3_tilted.push_back(c3(density_from_vector(tilted_ghz_vector(a, g))));
  rep.gap = rep.c3_ghz - rep.c3_tilted.back();
  rep.note =
      "tilted states are determined by their two-party marginals, so C3 vanishes along the "
      "approach while the limit keeps C3 = H(|a|^2); very small gamma pushes the face "
      "detection tolerances";
  return rep;
}

}  // namespace qmaxent
