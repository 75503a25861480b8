// Copyright 2026 The lindet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/SVD>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "lindet/doubled_basis.hpp"
#include "lindet/models.hpp"
#include "lindet/statespace.hpp"
#include "lindet/tf_core.hpp"

namespace lindet::ss {
namespace {

Index numerical_rank(const Mat& m, double tol) {
    Eigen::JacobiSVD<Mat> svd(m);
    const auto& sv = svd.singularValues();
    Index r = 0;
    for (Index k = 0; k < sv.size(); ++k) {
        r += sv(k) > tol * sv(0) ? 1 : 0;
    }
    return r;
}

// [B, AB, ..., A^(n-1) B].
Mat kalman_matrix(const Mat& a, const Mat& b) {
    const Index n = a.rows();
    Mat k(n, n * b.cols());
    Mat block = b;
    for (Index j = 0; j < n; ++j) {
        k.middleCols(j * b.cols(), b.cols()) = block;
        block = a * block;
    }
    return k;
}

StateSpace scalar(double a, double b, double c, double d) {
    StateSpace s;
    s.a = Mat::Constant(1, 1, a);
    s.b = Mat::Constant(1, 1, b);
    s.c = Mat::Constant(1, 1, c);
    s.d = Mat::Constant(1, 1, d);
    return s;
}

TEST(StateSpace, ValidateCatchesShapeMismatch) {
    StateSpace s = scalar(-1.0, 1.0, 1.0, 0.0);
    EXPECT_NO_THROW(s.validate());
    s.b = Mat::Zero(2, 1);
    EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(FrequencyResponse, TunedCavityReflection) {
    const double gamma = 0.6;
    const StateSpace cav = models::tuned_cavity(gamma);
    for (double w : {0.0, 0.2, 1.0, 9.0}) {
        const Mat h = frequency_response(cav, w);
        EXPECT_LT(std::abs(h(0, 0) - fixtures::cavity_reflection(gamma, w)), 1e-14);
        EXPECT_LT(std::abs(h(0, 1)), 1e-15);
        EXPECT_NEAR(std::abs(h(0, 0)), 1.0, 1e-14);
    }
}

TEST(FrequencyResponse, ThrowsAtPole) {
    // xdot = i x has its pole at W = -1 under exp(-iWt).
    StateSpace s;
    s.a = Mat::Constant(1, 1, kI);
    s.b = Mat::Ones(1, 1);
    s.c = Mat::Ones(1, 1);
    s.d = Mat::Zero(1, 1);
    EXPECT_THROW(frequency_response(s, -1.0), SingularResolvent);
    EXPECT_NO_THROW(frequency_response(s, 1.0));
}

TEST(QuadratureResponse, IsDirectConjugationOfSideband) {
    const StateSpace sq = models::internal_squeezer(1.0, 0.4);
    const Mat2& v = quadrature_basis();
    for (double w : {0.1, 1.3}) {
        const Mat sb = frequency_response(sq, w);
        EXPECT_LT((quadrature_response(sq, w) - v * sb * v.adjoint()).norm(), 1e-14);
    }
}

TEST(PictureConversion, RoundTripPreservesResponse) {
    const StateSpace sq = models::internal_squeezer(1.0, 0.4);
    const StateSpace q = to_quadrature(sq);
    EXPECT_EQ(q.picture, Picture::quadrature);
    const StateSpace back = to_sideband(q);
    for (double w : {0.0, 0.7, 4.0}) {
        EXPECT_LT((frequency_response(q, w) - quadrature_response(sq, w)).norm(), 1e-14);
        EXPECT_LT((frequency_response(back, w) - frequency_response(sq, w)).norm(), 1e-14);
    }
}

TEST(CanonicalRealization, ReproducesScalarResponse) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.3, 2.0);
    for (int order = 1; order <= 4; ++order) {
        tf::RationalFunction rf;
        for (int k = 0; k < order; ++k) {
            rf.poles.push_back(u(rng) + 0.01 * k);
            rf.zeros.push_back(-u(rng) - 0.01 * k);
        }
        rf.gain = -u(rng);
        const StateSpace s = canonical_realization(rf);
        EXPECT_EQ(s.states(), order);
        for (double w : {0.0, 0.5, 3.0}) {
            EXPECT_LT(std::abs(frequency_response(s, w)(0, 0) - tf::evaluate_rational(rf, w)),
                      1e-11);
        }
    }
}

TEST(CanonicalRealization, QuadratureMatrixHasDiagonalResponse) {
    const auto g = tf::build_quadrature_tf(models::first_order_tf(0.5, 2.0));
    const StateSpace s = canonical_realization(g);
    EXPECT_EQ(s.picture, Picture::quadrature);
    const tf::FrequencyGrid grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 30);
    EXPECT_LT(tf_distance(s, g, grid), 1e-12);
}

TEST(MinimalRealization, DropsUncontrollableAndUnobservableStates) {
    const auto g = tf::build_quadrature_tf(models::second_order_tf(-0.5, -0.3, 1.2, 0.4));
    const StateSpace s = canonical_realization(g);
    // Pad with one state the input cannot reach and one the output cannot see.
    const Index n = s.states();
    StateSpace padded;
    padded.picture = s.picture;
    padded.a = Mat::Zero(n + 2, n + 2);
    padded.a.topLeftCorner(n, n) = s.a;
    padded.a(n, n) = -3.0;
    padded.a(n + 1, n + 1) = -7.0;
    padded.a(n, 0) = 0.4;  // driven by the plant, invisible at the output
    padded.b = Mat::Zero(n + 2, s.inputs());
    padded.b.topRows(n) = s.b;
    padded.c = Mat::Zero(s.outputs(), n + 2);
    padded.c.leftCols(n) = s.c;
    padded.c(0, n + 1) = 1.0;  // seen at the output, never driven
    padded.d = s.d;

    const StateSpace m = minimal_realization(padded);
    EXPECT_EQ(m.states(), n);
    EXPECT_EQ(numerical_rank(kalman_matrix(m.a, m.b), 1e-9), m.states());
    EXPECT_EQ(numerical_rank(kalman_matrix(m.a.adjoint(), m.c.adjoint()), 1e-9), m.states());
    const tf::FrequencyGrid grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 30);
    EXPECT_LT(tf_distance(m, padded, grid), 1e-10);
}

TEST(Stability, HurwitzAndGrowthBound) {
    Mat a(2, 2);
    a << -1.0, 5.0, 0.0, -0.25;
    EXPECT_TRUE(is_hurwitz(a));
    EXPECT_NEAR(growth_bound(a), -0.25, 1e-14);
    a(1, 1) = 0.0;
    EXPECT_FALSE(is_hurwitz(a));
    EXPECT_TRUE(is_hurwitz(Mat()));
    // Lossless oscillation sits on the boundary.
    EXPECT_FALSE(is_hurwitz(fixtures::expander_drift(0.0, 0.0, 1.0)));
}

TEST(TimeResponse, FirstOrderLagClosedForm) {
    const StateSpace s = scalar(-1.0, 1.0, 1.0, 0.0);
    Vec x0 = Vec::Ones(1);
    const TimeResponse step = time_response(
        s, x0, [](double) { return Vec::Ones(1); }, 5.0, 0.05);
    ASSERT_EQ(step.times.size(), 101u);
    for (size_t k = 0; k < step.times.size(); ++k) {
        const double t = step.times[k];
        EXPECT_NEAR(step.natural(k, 0).real(), std::exp(-t), 1e-12);
        EXPECT_NEAR(step.forced(k, 0).real(), 1.0 - std::exp(-t), 1e-12);
    }
    EXPECT_NEAR(step.growth_bound, -1.0, 1e-14);
}

TEST(TimeResponse, FirstOrderHoldIsExactForRamps) {
    const StateSpace s = scalar(-2.0, 1.0, 1.0, 0.5);
    const TimeResponse r = time_response(
        s, Vec::Zero(1), [](double t) { return Vec::Constant(1, t); }, 3.0, 0.1);
    for (size_t k = 0; k < r.times.size(); ++k) {
        const double t = r.times[k];
        // x = t/2 - 1/4 + e^{-2t}/4, y = x + u/2.
        const double x = 0.5 * t - 0.25 + 0.25 * std::exp(-2.0 * t);
        EXPECT_NEAR(r.forced(k, 0).real(), x + 0.5 * t, 1e-12);
    }
}

TEST(TimeResponse, RejectsBadArguments) {
    const StateSpace s = scalar(-1.0, 1.0, 1.0, 0.0);
    auto u = [](double) { return Vec::Ones(1); };
    EXPECT_THROW(time_response(s, Vec::Ones(1), u, 1.0, 0.0), InvalidArgument);
    EXPECT_THROW(time_response(s, Vec::Ones(2), u, 1.0, 0.1), InvalidArgument);
    EXPECT_THROW(time_response(s, Vec::Ones(1), [](double) { return Vec::Ones(3); }, 1.0, 0.1),
                 InvalidArgument);
}

TEST(SimilarityTransform, PreservesResponse) {
    const StateSpace e = models::quantum_expander(1.0, 0.3, 0.8);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n;
    Mat t(4, 4);
    for (Index i = 0; i < 4; ++i) {
        for (Index j = 0; j < 4; ++j) {
            t(i, j) = cplx(n(rng), n(rng));
        }
    }
    const StateSpace moved = similarity_transform(e, t);
    const tf::FrequencyGrid grid = tf::FrequencyGrid::logarithmic(1e-2, 1e2, 40);
    EXPECT_LT(tf_distance(moved, e, grid), 1e-11);
    EXPECT_LT((moved.a - t.inverse() * e.a * t).norm(), 1e-11);
}

TEST(SimilarityTransform, RejectsSingularAndMisshapen) {
    const StateSpace e = models::quantum_expander(1.0, 0.3, 0.8);
    Mat t = Mat::Identity(4, 4);
    t(3, 3) = 0.0;
    EXPECT_THROW(similarity_transform(e, t), SingularTransform);
    EXPECT_THROW(similarity_transform(e, Mat::Identity(3, 3)), InvalidArgument);
}

TEST(TfDistance, IgnoresOverallSign) {
    StateSpace s = models::internal_squeezer(1.0, 0.2);
    StateSpace neg = s;
    neg.c = -neg.c;
    neg.d = -neg.d;
    const tf::FrequencyGrid grid = tf::FrequencyGrid::linear(0.0, 5.0, 20);
    EXPECT_LT(tf_distance(s, neg, grid), 1e-15);
    StateSpace other = models::internal_squeezer(1.0, 0.3);
    EXPECT_GT(tf_distance(s, other, grid), 1e-3);
}

TEST(OrthonormalRange, SpansColumnsWithOrthonormalBasis) {
    Mat m(3, 3);
    m << 1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 1.0, 2.0, 3.0;
    const Mat q = orthonormal_range(m, 1e-12);
    ASSERT_EQ(q.cols(), 1);
    EXPECT_LT((q.adjoint() * q - Mat::Identity(1, 1)).norm(), 1e-14);
    EXPECT_LT((m - q * q.adjoint() * m).norm(), 1e-13);
}

}  // namespace
}  // namespace lindet::ss
