#include "spaceform/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace spaceform {

double inner(const Vec& u, const Vec& v, const Signature& sig) {
  if (u.n != sig.dim || v.n != sig.dim)
    throw std::invalid_argument("inner: dimension mismatch");
  double s = 0;
  for (int i = 0; i < sig.dim; ++i) s += sig.metric(i) * u[i] * v[i];
  return s;
}

double norm2(const Vec& u) {
  double s = 0;
  for (int i = 0; i < u.n; ++i) s += u[i] * u[i];
  return std::sqrt(s);
}

double max_abs(const Mat& m) {
  double r = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r = std::max(r, std::fabs(m(i, j)));
  return r;
}

double max_abs(const Vec& v) {
  double r = 0;
  for (int i = 0; i < v.n; ++i) r = std::max(r, std::fabs(v[i]));
  return r;
}

double frobenius(const Mat& m) {
  double s = 0;
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double norm1(const Mat& m) {
  double r = 0;
  for (int j = 0; j < m.n; ++j) {
    double s = 0;
    for (int i = 0; i < m.n; ++i) s += std::fabs(m(i, j));
    r = std::max(r, s);
  }
  return r;
}

double det(const Mat& m) {
  Mat lu = m;
  const int n = m.n;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(piv, k))) piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      d = -d;
    }
    if (lu(k, k) == 0.0) return 0.0;
    d *= lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      for (int j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return d;
}

Mat inverse(const Mat& m) {
  const int n = m.n;
  Mat a = m;
  Mat inv = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
    if (std::fabs(a(piv, k)) < 1e-300) throw std::runtime_error("inverse: singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(piv, j));
        std::swap(inv(k, j), inv(piv, j));
      }
    const double d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = a(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

namespace {

// [13/13] Pade coefficients (Higham, "The scaling and squaring method
// for the matrix exponential revisited").
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

Mat pade13(const Mat& a) {
  const int n = a.n;
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a2 * a4;
  const double* b = kPade13;

  Mat u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u_inner = a6 * u_inner;
  Mat u = u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * Mat::identity(n);
  u = a * u;

  Mat v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v_inner = a6 * v_inner;
  Mat v = v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * Mat::identity(n);

  // (v - u)^{-1} (v + u)
  return inverse(v - u) * (v + u);
}

}  // namespace

Mat expm(const Mat& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (!std::isfinite(x(i, j))) throw std::invalid_argument("expm: non-finite entry");

  const double theta13 = 5.371920351148152;
  const double nrm = norm1(x);
  int s = 0;
  Mat a = x;
  if (nrm > theta13) {
    s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    const double f = std::ldexp(1.0, -s);
    a *= f;
  }
  Mat e = pade13(a);
  for (int k = 0; k < s; ++k) e = e * e;
  return e;
}

FrameMatrix::FrameMatrix(const Mat& g, const Signature& s, bool validate) : m(g), sig(s) {
  if (m.n != sig.dim) throw std::invalid_argument("FrameMatrix: dimension mismatch");
  if (validate) {
    const double r = group_residual(m, sig);
    if (r > kTauGroup)
      throw std::invalid_argument("FrameMatrix: group residual " + std::to_string(r));
    if (std::fabs(det(m) - 1.0) > kTauGroup)
      throw std::invalid_argument("FrameMatrix: determinant is not +1");
  }
}

FrameMatrix FrameMatrix::inverted() const {
  // G^{-1} = J G^T J for G in O(J).
  Mat r(sig.dim);
  for (int i = 0; i < sig.dim; ++i)
    for (int j = 0; j < sig.dim; ++j)
      r(i, j) = sig.metric(i) * m(j, i) * sig.metric(j);
  return {r, sig, false};
}

AlgebraElement::AlgebraElement(const Mat& x, const Signature& s) : m(x), sig(s) {
  if (m.n != sig.dim) throw std::invalid_argument("AlgebraElement: dimension mismatch");
  // Project onto the algebra: X <- (X - J X^T J)/2.  Exact for exact input,
  // kills roundoff asymmetry otherwise.
  Mat p(sig.dim);
  for (int i = 0; i < sig.dim; ++i)
    for (int j = 0; j < sig.dim; ++j)
      p(i, j) = 0.5 * (m(i, j) - sig.metric(i) * m(j, i) * sig.metric(j));
  m = p;
}

double AlgebraElement::algebra_residual() const {
  double r = 0;
  for (int i = 0; i < sig.dim; ++i)
    for (int j = 0; j < sig.dim; ++j)
      r = std::max(r, std::fabs(m(j, i) * sig.metric(j) + sig.metric(i) * m(i, j)));
  return r;
}

double group_residual(const Mat& g, const Signature& sig) {
  double r = 0;
  for (int i = 0; i < sig.dim; ++i)
    for (int j = 0; j < sig.dim; ++j) {
      double s = 0;
      for (int k = 0; k < sig.dim; ++k) s += g(k, i) * sig.metric(k) * g(k, j);
      const double target = (i == j) ? sig.metric(i) : 0.0;
      r = std::max(r, std::fabs(s - target));
    }
  return r;
}

FrameMatrix expm(const AlgebraElement& x) { return {expm(x.m), x.sig, false}; }

FrameMatrix advance(const FrameMatrix& g, const AlgebraElement& x) {
  return {g.m * expm(x.m), g.sig, false};
}

void sym_eigenvalues(const Mat& s, double* out) {
  const int n = s.n;
  if (n == 2) {
    const double tr = s(0, 0) + s(1, 1);
    const double dd = s(0, 0) - s(1, 1);
    const double disc = std::sqrt(dd * dd / 4.0 + s(0, 1) * s(1, 0));
    out[0] = tr / 2 - disc;
    out[1] = tr / 2 + disc;
    return;
  }
  Mat a = s;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double cth = 1.0 / std::sqrt(t * t + 1.0);
        const double sth = t * cth;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cth * akp - sth * akq;
          a(k, q) = sth * akp + cth * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cth * apk - sth * aqk;
          a(q, k) = sth * apk + cth * aqk;
        }
      }
  }
  for (int i = 0; i < n; ++i) out[i] = a(i, i);
  std::sort(out, out + n);
}

}  // namespace spaceform
