#include <cmath>

#include "doctest.h"
#include "spaceform/linalg.hpp"
#include "spaceform/parallel.hpp"

using namespace spaceform;

namespace {
AlgebraElement random_algebra(Rng& rng, const Signature& sig, double scale) {
  Mat x(sig.dim);
  for (int i = 0; i < sig.dim; ++i)
    for (int j = 0; j < sig.dim; ++j) x(i, j) = rng.uniform(-scale, scale);
  return {x, sig};  // constructor projects onto the algebra
}
}  // namespace

TEST_CASE("signature metric layout") {
  const Signature s5 = Signature::sphere5();
  for (int i = 0; i < 5; ++i) CHECK(s5.metric(i) == 1.0);
  const Signature l5 = Signature::lorentz5();
  CHECK(l5.metric(3) == 1.0);
  CHECK(l5.metric(4) == -1.0);
  const Signature l6 = Signature::lorentz6();
  CHECK(l6.metric(4) == 1.0);
  CHECK(l6.metric(5) == -1.0);
  CHECK_THROWS_AS(Signature(5, 1, -1), std::invalid_argument);
}

TEST_CASE("inner product examples") {
  const Signature sig = Signature::lorentz5();
  CHECK(inner({1, 0, 0, 0, 0}, {1, 0, 0, 0, 0}, sig) == 1.0);
  CHECK(inner({0, 0, 0, 0, 1}, {0, 0, 0, 0, 1}, sig) == -1.0);
  CHECK(inner({1, 0, 0, 0, 1}, {1, 0, 0, 0, 1}, sig) == 0.0);  // null vector
  CHECK_THROWS_AS(inner(Vec(4), Vec(4), sig), std::invalid_argument);
}

TEST_CASE("inner product is bilinear and symmetric") {
  Rng rng(11);
  for (const Signature& sig : {Signature::sphere5(), Signature::lorentz5(), Signature::lorentz6()}) {
    for (int k = 0; k < 50; ++k) {
      Vec u(sig.dim), v(sig.dim), w(sig.dim);
      for (int i = 0; i < sig.dim; ++i) {
        u[i] = rng.uniform(-2, 2);
        v[i] = rng.uniform(-2, 2);
        w[i] = rng.uniform(-2, 2);
      }
      const double a = rng.uniform(-2, 2);
      CHECK(inner(u, v, sig) == doctest::Approx(inner(v, u, sig)).epsilon(1e-14));
      CHECK(inner(u + a * w, v, sig) ==
            doctest::Approx(inner(u, v, sig) + a * inner(w, v, sig)).epsilon(1e-13));
    }
  }
}

TEST_CASE("group residual examples") {
  const Signature sig = Signature::sphere5();
  CHECK(group_residual(Mat::identity(5), sig) == 0.0);
  Mat g = Mat::identity(5);
  g(0, 0) = 2.0;
  CHECK(group_residual(g, sig) == 3.0);
}

TEST_CASE("expm basics") {
  CHECK(max_abs(expm(Mat(5)) - Mat::identity(5)) < 1e-15);

  // 2x2 rotation generator embedded in a 5x5 block
  Mat x(5);
  x(1, 2) = -M_PI / 2;
  x(2, 1) = M_PI / 2;
  const Mat e = expm(x);
  CHECK(e(1, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(e(1, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e(2, 1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e(3, 3) == doctest::Approx(1.0).epsilon(1e-14));

  Mat bad(5);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(expm(bad), std::invalid_argument);
}

TEST_CASE("exp of algebra elements lands in the group") {
  Rng rng(7);
  for (const Signature& sig : {Signature::sphere5(), Signature::lorentz5(), Signature::lorentz6()}) {
    for (int k = 0; k < 25; ++k) {
      const AlgebraElement x = random_algebra(rng, sig, 2.0);
      CHECK(x.algebra_residual() <= 1e-15);
      const double s = rng.uniform(-1, 1) * 20.0 / std::max(1.0, norm1(x.m));
      const AlgebraElement sx(s * x.m, sig);
      // Non-compact groups have elements of size cosh||X||, so the residual
      // of the quadratic form scales with ||G||^2 in double precision.
      const FrameMatrix g = expm(sx);
      const double scale = (sig.c == 1 && sig.dim == 5) ? 1.0 : 1.0 + norm1(g.m) * norm1(g.m);
      CHECK(group_residual(g) <= 1e-11 * scale);
      // exp(X) exp(-X) = id
      const AlgebraElement nx(-1.0 * x.m, sig);
      CHECK(max_abs(expm(x).m * expm(nx).m - Mat::identity(sig.dim)) <= 1e-11);
    }
  }
}

TEST_CASE("frame matrix validation and inverse") {
  const Signature sig = Signature::lorentz5();
  Rng rng(3);
  const AlgebraElement x = random_algebra(rng, sig, 0.7);
  const FrameMatrix g = expm(x);
  CHECK_NOTHROW(FrameMatrix(g.m, sig));
  CHECK(max_abs(g.inverted().m * g.m - Mat::identity(5)) <= 1e-12);

  Mat bad = Mat::identity(5);
  bad(2, 2) = 1.5;
  CHECK_THROWS_AS(FrameMatrix(bad, sig), std::invalid_argument);
}

TEST_CASE("symmetric eigenvalues") {
  Mat s(3);
  s(0, 0) = 2;
  s(1, 1) = 2;
  s(0, 1) = s(1, 0) = 1;
  s(2, 2) = -1;
  double ev[3];
  sym_eigenvalues(s, ev);
  CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("expm stays accurate at large norms") {
  // closed-form reference: block rotation by a large angle
  {
    const double th = 47.0;  // ||X|| ~ 47
    Mat x(5);
    x(0, 1) = -th;
    x(1, 0) = th;
    const Mat e = expm(x);
    CHECK(e(0, 0) == doctest::Approx(std::cos(th)).epsilon(1e-13));
    CHECK(e(0, 1) == doctest::Approx(-std::sin(th)).epsilon(1e-13));
    CHECK(e(2, 2) == doctest::Approx(1.0).epsilon(1e-13));
  }
  // scaling consistency: exp(X) = exp(X/2)^2 to relative 1e-12 at ||X|| ~ 50
  Rng rng(77);
  for (int k = 0; k < 20; ++k) {
    Mat x(5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) x(i, j) = rng.uniform(-1, 1);
    x *= 50.0 / norm1(x);
    const Mat full = expm(x);
    const Mat half = expm(0.5 * x);
    CHECK(max_abs(full - half * half) / std::max(1.0, max_abs(full)) < 1e-12);
  }
}
