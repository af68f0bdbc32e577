#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orbcat/matrix.hpp"

using namespace orbcat;

TEST_CASE("rational arithmetic normalizes") {
    Rational a(2, 4), b(1, 3);
    CHECK(a == Rational(1, 2));
    CHECK((a + b) == Rational(5, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a / b) == Rational(3, 2));
    CHECK((-a) == Rational(-1, 2));
    CHECK_THROWS_AS(a / Rational(0), Error);
}

TEST_CASE("rationalize recovers simple fractions from doubles") {
    CHECK(rationalize(0.5) == Rational(1, 2));
    CHECK(rationalize(-1.0) == Rational(-1));
    CHECK(rationalize(1.0 / 3.0) == Rational(1, 3));
    CHECK(rationalize(0.0) == Rational(0));
    CHECK_THROWS_AS(rationalize(std::sqrt(2.0) / 2.0), Error);
}

TEST_CASE("gaussian rational field ops") {
    GaussRational i{Rational(0), Rational(1)};
    GaussRational one = ScalarOps<GaussRational>::one();
    CHECK((i * i) == -one);
    CHECK(ScalarOps<GaussRational>::inv(i) == -i);
    CHECK(ScalarOps<GaussRational>::from_complex({0.25, -0.5}) ==
          GaussRational{Rational(1, 4), Rational(-1, 2)});
}

template <class K>
static Matrix<K> from_rows(int r, int c, std::vector<double> vals) {
    Matrix<K> m(r, c);
    for (int i = 0; i < r * c; ++i) m.a[i] = ScalarOps<K>::from_complex({vals[size_t(i)], 0.0});
    return m;
}

TEST_CASE_TEMPLATE("rank, null space, column space", K, Cplx, GaussRational) {
    // rank-2 matrix with a known kernel
    Matrix<K> m = from_rows<K>(3, 3, {1, 2, 3, 2, 4, 6, 1, 0, 1});
    CHECK(rank_of(m, 1e-9) == 2);
    Matrix<K> n = null_space(m, 1e-9);
    CHECK(n.cols == 1);
    CHECK((m * n).sup_norm() <= 1e-12);
    Matrix<K> c = column_space(m, 1e-9);
    CHECK(c.cols == 2);
    Matrix<K> ln = left_null_space(m, 1e-9);
    CHECK(ln.rows == 1);
    CHECK((ln * m).sup_norm() <= 1e-12);
}

TEST_CASE_TEMPLATE("linear solve and inverse", K, Cplx, GaussRational) {
    Matrix<K> A = from_rows<K>(2, 2, {1, 1, 0, 2});
    Matrix<K> B = from_rows<K>(2, 1, {3, 4});
    auto s = solve_right(A, B, 1e-9);
    CHECK(s.nullity == 0);
    CHECK(s.residual <= 1e-12);
    CHECK(distance(A * s.x, B) <= 1e-12);

    Matrix<K> Ainv = inverse(A, 1e-9);
    CHECK(distance(Ainv * A, Matrix<K>::identity(2)) <= 1e-12);

    // inconsistent system has a nonzero residual
    Matrix<K> A2 = from_rows<K>(2, 1, {1, 1});
    Matrix<K> B2 = from_rows<K>(2, 1, {1, 2});
    auto s2 = solve_right(A2, B2, 1e-9);
    CHECK(s2.residual > 0.4);

    // underdetermined system reports positive nullity
    Matrix<K> A3 = from_rows<K>(1, 2, {1, 1});
    Matrix<K> B3 = from_rows<K>(1, 1, {2});
    auto s3 = solve_right(A3, B3, 1e-9);
    CHECK(s3.nullity == 1);
    CHECK(s3.residual <= 1e-12);

    // left solve: X A = B
    auto s4 = solve_left(A, B.transposed(), 1e-9);
    CHECK(distance(s4.x * A, B.transposed()) <= 1e-12);
}

TEST_CASE("zero-dimensional matrices are fine") {
    Matrix<Cplx> z(0, 3);
    CHECK(rank_of(z, 1e-9) == 0);
    Matrix<Cplx> n = null_space(z, 1e-9);
    CHECK(n.cols == 3);
    Matrix<Cplx> z2(3, 0);
    CHECK(column_space(z2, 1e-9).cols == 0);
    CHECK(left_null_space(z2, 1e-9).rows == 3);
}
