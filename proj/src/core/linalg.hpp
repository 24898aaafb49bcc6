#ifndef COMMSPLIT_LINALG_HPP
#define COMMSPLIT_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <random>
#include <vector>

namespace commsplit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);
Matrix anticommutator(const Matrix& a, const Matrix& b);

/// Rank-1 projector |w><w| onto a computational basis state.
Matrix basis_projector(int dim, int index);
/// Rank-1 projector onto the uniform superposition (1/sqrt(n)) sum_x |x>.
Matrix plus_projector(int dim);

bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_anti_hermitian(const Matrix& m, double tol = 1e-10);
bool is_unitary(const Matrix& m, double tol = 1e-10);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Matrix exponential by scaling-and-squaring with a (13,13) diagonal Pade
/// approximant.  Inputs whose square is a multiple of the identity or of the
/// input itself (Pauli strings, rank-1 projectors) take an exact closed form.
Matrix expm(const Matrix& m);

/// Binding of formula slots to concrete matrices.  lambda <= 0 means
/// "compute 2 * max_j ||A_j|| on demand".
struct OperatorSet {
  int k = 1;
  std::map<int, Matrix> ops;
  double lambda = 0.0;

  int dim() const;
  double effective_lambda() const;
};

/// Z_k = [A_k,[A_{k-1},...,[A_1,A_0]...]] over the populated slots.
Matrix nested_z(const OperatorSet& ops);

/// (A (x) sigma_y, B (x) sigma_x); satisfies [A',B'] = -i{A,B} (x) sigma_z.
std::pair<Matrix, Matrix> dilate_anticomm(const Matrix& a, const Matrix& b);

/// Dilated operator set for a product of powers of commuting Hermitian
/// matrices: slot 0 gets A_0 (x) sigma_x, slots j>0 get A_j (x) sigma_y.
/// The nested commutator of the result is -i 2^k prod A (x) sigma_z for k
/// odd and 2^k prod A (x) sigma_x for k even.
OperatorSet dilate_product(const std::vector<std::pair<Matrix, int>>& factors);

Matrix random_hermitian(int dim, std::mt19937_64& rng);
/// Random anti-Hermitian matrix with spectral norm 1.
Matrix random_antihermitian(int dim, std::mt19937_64& rng);

}  // namespace commsplit

#endif
