#include "linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace commsplit {

namespace {
const Complex kI{0.0, 1.0};

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  require_square(a, who);
  require_square(b, who);
  if (a.rows() != b.rows()) {
    std::ostringstream os;
    os << who << ": dimension mismatch (" << a.rows() << " vs " << b.rows() << ")";
    throw std::invalid_argument(os.str());
  }
}

// sinh(s)/s, stable near s = 0.
Complex sinhc(Complex s) {
  if (std::abs(s) < 1e-8) {
    return 1.0 + s * s / 6.0;
  }
  return std::sinh(s) / s;
}
}  // namespace

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

Matrix anticommutator(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

Matrix basis_projector(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw std::invalid_argument("basis_projector: index out of range");
  }
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return m;
}

Matrix plus_projector(int dim) {
  if (dim < 1) {
    throw std::invalid_argument("plus_projector: dim must be positive");
  }
  return Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));
}

bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_anti_hermitian(const Matrix& m, double tol) {
  return (m + m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  Matrix g = m.adjoint() * m;
  g -= Matrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

double spectral_norm(const Matrix& m) {
  require_square(m, "spectral_norm");
  if (m.rows() == 0) return 0.0;
  // Largest eigenvalue of M^H M; adequate to ~1e-10 relative accuracy.
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  double top = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, top));
}

Matrix expm(const Matrix& m) {
  require_square(m, "expm");
  if (!m.allFinite()) {
    throw std::invalid_argument("expm: non-finite entries");
  }
  const Eigen::Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);
  const double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return id;

  Matrix m2 = m * m;

  // Closed form when M^2 = c I (e.g. anti-Hermitian Pauli strings).
  {
    Complex c = m2.trace() / static_cast<double>(n);
    if ((m2 - c * id).cwiseAbs().maxCoeff() <= 1e-14 * scale * scale + 1e-300) {
      Complex s = std::sqrt(c);
      return std::cosh(s) * id + sinhc(s) * m;
    }
  }
  // Closed form when M^2 = c M (scaled projectors).
  {
    Complex denom = (m.adjoint() * m).trace();
    if (std::abs(denom) > 0) {
      Complex c = (m.adjoint() * m2).trace() / denom;
      if ((m2 - c * m).cwiseAbs().maxCoeff() <= 1e-14 * scale * scale + 1e-300) {
        Complex f = std::abs(c) < 1e-12 ? Complex(1.0) + c / 2.0 : (std::exp(c) - 1.0) / c;
        return id + f * m;
      }
    }
  }

  // Scaling and squaring with the (13,13) diagonal Pade approximant.
  const double theta13 = 5.371920351148152;
  double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = m;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    a = m / std::pow(2.0, squarings);
    m2 = a * a;
  }
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const Matrix m4 = m2 * m2;
  const Matrix m6 = m4 * m2;
  Matrix u = a * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 + b[5] * m4 +
                  b[3] * m2 + b[1] * id);
  Matrix v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 + b[4] * m4 +
             b[2] * m2 + b[0] * id;
  Matrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

int OperatorSet::dim() const {
  if (ops.empty()) throw std::invalid_argument("OperatorSet: no operators");
  return static_cast<int>(ops.begin()->second.rows());
}

double OperatorSet::effective_lambda() const {
  if (lambda > 0.0) return lambda;
  double top = 0.0;
  for (const auto& [slot, m] : ops) top = std::max(top, spectral_norm(m));
  return 2.0 * top;
}

Matrix nested_z(const OperatorSet& ops) {
  if (ops.ops.empty()) throw std::invalid_argument("nested_z: empty operator set");
  int max_slot = ops.ops.rbegin()->first;
  auto it = ops.ops.find(0);
  if (it == ops.ops.end()) throw std::invalid_argument("nested_z: missing slot 0");
  Matrix z = it->second;
  for (int j = 1; j <= max_slot; ++j) {
    auto jt = ops.ops.find(j);
    if (jt == ops.ops.end()) {
      throw std::invalid_argument("nested_z: missing slot " + std::to_string(j));
    }
    z = commutator(jt->second, z);
  }
  return z;
}

std::pair<Matrix, Matrix> dilate_anticomm(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "dilate_anticomm");
  return {kron(a, pauli_y()), kron(b, pauli_x())};
}

OperatorSet dilate_product(const std::vector<std::pair<Matrix, int>>& factors) {
  if (factors.empty()) {
    throw std::invalid_argument("dilate_product: no factors");
  }
  std::vector<Matrix> expanded;
  for (const auto& [m, mult] : factors) {
    if (mult < 1) throw std::invalid_argument("dilate_product: multiplicity must be >= 1");
    if (!is_hermitian(m, 1e-10)) {
      throw std::invalid_argument("dilate_product: factors must be Hermitian");
    }
    for (int i = 0; i < mult; ++i) expanded.push_back(m);
  }
  for (size_t i = 0; i < factors.size(); ++i) {
    for (size_t j = i + 1; j < factors.size(); ++j) {
      const Matrix& a = factors[i].first;
      const Matrix& b = factors[j].first;
      double resid = spectral_norm(commutator(a, b));
      double ref = spectral_norm(a) * spectral_norm(b);
      if (resid > 1e-10 * std::max(ref, 1.0)) {
        std::ostringstream os;
        os << "dilate_product: factors " << i << " and " << j
           << " do not commute (residual norm " << resid << ")";
        throw std::invalid_argument(os.str());
      }
    }
  }
  OperatorSet out;
  out.k = static_cast<int>(expanded.size()) - 1;
  for (size_t j = 0; j < expanded.size(); ++j) {
    out.ops[static_cast<int>(j)] =
        kron(expanded[j], j == 0 ? pauli_x() : pauli_y());
  }
  return out;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return 0.5 * (m + Matrix(m.adjoint()));
}

Matrix random_antihermitian(int dim, std::mt19937_64& rng) {
  Matrix m = kI * random_hermitian(dim, rng);
  return m / spectral_norm(m);
}

}  // namespace commsplit
