#pragma once

#include <gtest/gtest.h>

#include "schur_dilate/linalg.hpp"
#include "schur_dilate/random.hpp"

namespace schur_dilate::testing {

inline double frob(const ComplexMatrix& a) { return a.norm(); }

inline ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = zeros(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

// Expects a schur_dilate::Error of the given kind.
#define EXPECT_ERROR_KIND(stmt, k)                          \
  do {                                                      \
    try {                                                   \
      stmt;                                                 \
      ADD_FAILURE() << "no exception from " #stmt;          \
    } catch (const ::schur_dilate::Error& e) {              \
      EXPECT_EQ(e.kind(), (k)) << e.what();                 \
    }                                                       \
  } while (0)

}  // namespace schur_dilate::testing
