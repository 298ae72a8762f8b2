#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

// Fixed-size semi-Euclidean vector/matrix algebra for the ambient spaces
// E^5, R^{4,1} and R^{5,1}.  Dimensions are 5 or 6 at runtime; storage is
// a fixed array so everything lives on the stack.

namespace spaceform {

inline constexpr int kMaxDim = 6;

/// Ambient metric selector.  dim 5 carries the diagonal metric
/// (+1,+1,+1,eps,eps*c) in the frame order (e0,e1,e2,e3,e4); dim 6 is
/// R^5 x R_time with the time-like slot last: (+1,+1,+1,+1,+1,-1).
struct Signature {
  int dim = 5;
  int c = 1;
  int eps = 1;

  Signature() = default;
  Signature(int dim_, int c_, int eps_) : dim(dim_), c(c_), eps(eps_) {
    if (dim != 5 && dim != 6) throw std::invalid_argument("Signature: dim must be 5 or 6");
    if (c != 1 && c != -1) throw std::invalid_argument("Signature: c must be +-1");
    if (eps != 1 && eps != -1) throw std::invalid_argument("Signature: eps must be +-1");
    if (c == 1 && eps != 1) throw std::invalid_argument("Signature: c=+1 forces eps=+1");
  }

  /// Diagonal entry J_ii of the metric.
  double metric(int i) const {
    if (dim == 6) return i == 5 ? -1.0 : 1.0;
    if (i == 3) return static_cast<double>(eps);
    if (i == 4) return static_cast<double>(eps * c);
    return 1.0;
  }

  static Signature sphere5() { return {5, 1, 1}; }
  static Signature lorentz5() { return {5, -1, 1}; }
  static Signature lorentz6() { return {6, -1, 1}; }

  bool operator==(const Signature&) const = default;
};

/// Dense vector of runtime dimension n <= 6.
struct Vec {
  int n = 5;
  std::array<double, kMaxDim> a{};

  Vec() = default;
  explicit Vec(int n_) : n(n_) {}
  Vec(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) a[i++] = x;
  }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }

  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }
  Vec& operator*=(double s) {
    for (int i = 0; i < n; ++i) a[i] *= s;
    return *this;
  }
  friend Vec operator+(Vec u, const Vec& v) { return u += v; }
  friend Vec operator-(Vec u, const Vec& v) { return u -= v; }
  friend Vec operator*(double s, Vec u) { return u *= s; }
  friend Vec operator*(Vec u, double s) { return u *= s; }
};

/// Dense square matrix of runtime dimension n <= 6, row-major.
struct Mat {
  int n = 5;
  std::array<double, kMaxDim * kMaxDim> a{};

  Mat() = default;
  explicit Mat(int n_) : n(n_) {}

  double& operator()(int i, int j) { return a[i * kMaxDim + j]; }
  double operator()(int i, int j) const { return a[i * kMaxDim + j]; }

  static Mat identity(int n_) {
    Mat m(n_);
    for (int i = 0; i < n_; ++i) m(i, i) = 1.0;
    return m;
  }

  Mat& operator+=(const Mat& o) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) += o(i, j);
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) -= o(i, j);
    return *this;
  }
  Mat& operator*=(double s) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) (*this)(i, j) *= s;
    return *this;
  }
  friend Mat operator+(Mat u, const Mat& v) { return u += v; }
  friend Mat operator-(Mat u, const Mat& v) { return u -= v; }
  friend Mat operator*(double s, Mat u) { return u *= s; }
  friend Mat operator*(Mat u, double s) { return u *= s; }

  friend Mat operator*(const Mat& A, const Mat& B) {
    Mat r(A.n);
    for (int i = 0; i < A.n; ++i)
      for (int k = 0; k < A.n; ++k) {
        const double aik = A(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < A.n; ++j) r(i, j) += aik * B(k, j);
      }
    return r;
  }
  friend Vec operator*(const Mat& A, const Vec& v) {
    Vec r(A.n);
    for (int i = 0; i < A.n; ++i) {
      double s = 0;
      for (int j = 0; j < A.n; ++j) s += A(i, j) * v[j];
      r[i] = s;
    }
    return r;
  }

  Mat transposed() const {
    Mat r(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  Vec col(int j) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r[i] = (*this)(i, j);
    return r;
  }
  void set_col(int j, const Vec& v) {
    for (int i = 0; i < n; ++i) (*this)(i, j) = v[i];
  }
};

/// Semi-Euclidean inner product u^T J v.
double inner(const Vec& u, const Vec& v, const Signature& sig);

/// Euclidean 2-norm (no signature weights).
double norm2(const Vec& u);

/// Max-entry absolute value.
double max_abs(const Mat& m);
double max_abs(const Vec& v);

/// Frobenius norm.
double frobenius(const Mat& m);

/// 1-norm (max column sum), used by the exponential scaling heuristic.
double norm1(const Mat& m);

/// Determinant via partial-pivot LU.
double det(const Mat& m);

/// General small-matrix inverse (partial-pivot Gauss-Jordan).
Mat inverse(const Mat& m);

/// Matrix exponential by scaling-and-squaring with a [13/13] Pade
/// approximant.  Accurate to ~1e-13 relative for ||X|| <= 50.
Mat expm(const Mat& x);

/// Element of SO_c(n): columns are the moving frame e_0..e_{n-1}.
struct FrameMatrix {
  Mat m;
  Signature sig;

  FrameMatrix() = default;
  /// Checks G^T J G = J and det G = +1 within tau_group = 1e-9.
  FrameMatrix(const Mat& g, const Signature& s, bool validate = true);

  static FrameMatrix identity(const Signature& s) { return {Mat::identity(s.dim), s, false}; }

  Vec frame_vector(int i) const { return m.col(i); }
  /// Group inverse J G^T J (cheaper and exact compared to LU).
  FrameMatrix inverted() const;
};

/// Element of so_c(n): X^T J + J X = 0 is enforced exactly on construction
/// by averaging the defect away.
struct AlgebraElement {
  Mat m;
  Signature sig;

  AlgebraElement() = default;
  AlgebraElement(const Mat& x, const Signature& s);

  /// Max-norm of X^T J + J X (should be ~0 by construction).
  double algebra_residual() const;
};

/// Max-norm of G^T J G - J: certifies group membership.
double group_residual(const Mat& g, const Signature& sig);
inline double group_residual(const FrameMatrix& g) { return group_residual(g.m, g.sig); }

/// exp of an algebra element lands in the group.
FrameMatrix expm(const AlgebraElement& x);

/// Right-translate: G * exp(X).  Preserves the group up to expm roundoff.
FrameMatrix advance(const FrameMatrix& g, const AlgebraElement& x);

/// Eigenvalues of a symmetric matrix (n <= 6) by cyclic Jacobi sweeps,
/// returned in ascending order.  2x2 is handled in closed form.
void sym_eigenvalues(const Mat& s, double* out);

inline constexpr double kTauGroup = 1e-9;

}  // namespace spaceform
