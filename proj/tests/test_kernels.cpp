#include "sepnmf/kernels.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace sepnmf;
using sepnmf::testing::random_matrix;

TEST_CASE("serial and parallel kernels are bit-identical") {
  for (auto [rows, cols] : {std::pair<Index, Index>{3, 1}, {50, 200}, {10, 777}}) {
    const Eigen::MatrixXd s = random_matrix(rows, cols, 100 + cols);
    Vector a, b;
    kernels::column_sq_norms_serial(s, a);
    kernels::column_sq_norms_parallel(s, b);
    CHECK(a == b);

    Vector q = random_matrix(rows, 1, 7).col(0);
    q.normalize();
    Eigen::MatrixXd s1 = s, s2 = s;
    kernels::deflate_serial(s1, q);
    kernels::deflate_parallel(s2, q);
    CHECK(s1 == s2);

    const Eigen::MatrixXd m = random_matrix(rows, rows, 9);
    const Eigen::MatrixXd sym = m * m.transpose();
    kernels::quadratic_forms_serial(s, sym, a);
    kernels::quadratic_forms_parallel(s, sym, b);
    CHECK(a == b);

    kernels::column_dots_serial(s, q, a);
    kernels::column_dots_parallel(s, q, b);
    CHECK(a == b);
  }
}

TEST_CASE("kernels agree with dense expressions") {
  const Eigen::MatrixXd s = random_matrix(20, 30, 1);
  Vector out;
  kernels::column_sq_norms_serial(s, out);
  CHECK((out - s.colwise().squaredNorm().transpose()).cwiseAbs().maxCoeff() <= 1e-12);

  Vector q = random_matrix(20, 1, 2).col(0);
  q.normalize();
  Eigen::MatrixXd d = s;
  kernels::deflate_serial(d, q);
  const Eigen::MatrixXd expect = s - q * (q.transpose() * s);
  CHECK((d - expect).cwiseAbs().maxCoeff() <= 1e-12);

  const Eigen::MatrixXd m = random_matrix(20, 20, 3);
  const Eigen::MatrixXd sym = m * m.transpose();
  kernels::quadratic_forms_serial(s, sym, out);
  const Vector ref = (s.transpose() * sym * s).diagonal();
  CHECK((out - ref).cwiseAbs().maxCoeff() <= 1e-10 * ref.cwiseAbs().maxCoeff());
}
