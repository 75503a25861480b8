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

#include <cmath>
#include <random>

#include "lindet/doubled_basis.hpp"

namespace lindet {
namespace {

cplx random_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return {n(rng), n(rng)};
}

TEST(DoubledBasis, JMatrixAlternatesSigns) {
    const Mat j = j_matrix(3);
    ASSERT_EQ(j.rows(), 6);
    for (Index k = 0; k < 6; ++k) {
        EXPECT_EQ(j(k, k), cplx(k % 2 == 0 ? 1.0 : -1.0));
    }
    EXPECT_NEAR((j - Mat(j.diagonal().asDiagonal())).norm(), 0.0, 0.0);
}

TEST(DoubledBasis, CommutatorMatrixOfLadderPairs) {
    // [a, a^dag] = 1, [a^dag, a] = -1, different modes commute.
    const Mat k = commutator_matrix(2);
    Mat expected = Mat::Zero(4, 4);
    expected(0, 1) = 1.0;
    expected(1, 0) = -1.0;
    expected(2, 3) = 1.0;
    expected(3, 2) = -1.0;
    EXPECT_LT((k - expected).norm(), 1e-15);
    EXPECT_LT((k + k.transpose()).norm(), 1e-15);
}

TEST(DoubledBasis, QuadratureBasisIsUnitaryAndMatchesDefinition) {
    const Mat2& v = quadrature_basis();
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_LT(std::abs(v(0, 0) - r), 1e-15);
    EXPECT_LT(std::abs(v(0, 1) - r), 1e-15);
    EXPECT_LT(std::abs(v(1, 0) - (-kI * r)), 1e-15);
    EXPECT_LT(std::abs(v(1, 1) - (kI * r)), 1e-15);
    EXPECT_LT((v * v.adjoint() - Mat2::Identity()).norm(), 1e-15);

    const Mat big = quadrature_basis(3);
    EXPECT_LT((big * big.adjoint() - Mat::Identity(6, 6)).norm(), 1e-14);
    EXPECT_LT((big.block(2, 2, 2, 2) - v).norm(), 1e-15);
    EXPECT_EQ(big.block(0, 2, 2, 2).norm(), 0.0);
}

TEST(DoubledBasis, QuadraturesCommuteToI) {
    // [X, Y] = i with (X, Y) = V (a, a^dag).
    const Mat2& v = quadrature_basis();
    const Mat k = commutator_matrix(1);
    const cplx xy = (v.row(0) * k * v.row(1).transpose())(0, 0);
    EXPECT_LT(std::abs(xy - kI), 1e-15);
}

TEST(DoubledBasis, AdjointCoefficientsSwapAndConjugate) {
    std::mt19937_64 rng(7);
    RowVec w(4);
    for (Index k = 0; k < 4; ++k) {
        w(k) = random_complex(rng);
    }
    const RowVec wd = adjoint_coefficients(w);
    EXPECT_EQ(wd(0), std::conj(w(1)));
    EXPECT_EQ(wd(1), std::conj(w(0)));
    EXPECT_EQ(wd(2), std::conj(w(3)));
    EXPECT_EQ(wd(3), std::conj(w(2)));
    EXPECT_EQ((adjoint_coefficients(wd) - w).norm(), 0.0);
}

TEST(QuadraticHamiltonian, NumberOperatorGivesRotation) {
    // H = w a^dag a: adot = -i w a.
    const double w = 1.7;
    QuadraticHamiltonian h(1);
    h.add(0.5 * w, cre(0), ann(0));
    Mat expected = Mat::Zero(2, 2);
    expected(0, 0) = -kI * w;
    expected(1, 1) = kI * w;
    EXPECT_LT((h.drift() - expected).norm(), 1e-14);
}

TEST(QuadraticHamiltonian, BeamSplitterExchangesModes) {
    // H = g (a b^dag + a^dag b): adot = -i g b, bdot = -i g a.
    const double g = 0.8;
    QuadraticHamiltonian h(2);
    h.add(g, ann(0), cre(1));
    const Mat d = h.drift();
    EXPECT_LT(std::abs(d(0, 2) - (-kI * g)), 1e-15);
    EXPECT_LT(std::abs(d(2, 0) - (-kI * g)), 1e-15);
    EXPECT_LT(std::abs(d(1, 3) - (kI * g)), 1e-15);
    EXPECT_LT(std::abs(d(3, 1) - (kI * g)), 1e-15);
    EXPECT_LT(std::abs(d(0, 0)), 1e-15);
}

TEST(QuadraticHamiltonian, SqueezerCouplesToConjugate) {
    // H = (c a a + c* a^dag a^dag): adot = -i [a, H] = -2i c* a^dag.
    const cplx c(0.3, -0.4);
    QuadraticHamiltonian h(1);
    h.add(c, ann(0), ann(0));
    const Mat d = h.drift();
    EXPECT_LT(std::abs(d(0, 1) - (-2.0 * kI * std::conj(c))), 1e-15);
    EXPECT_LT(std::abs(d(1, 0) - (2.0 * kI * c)), 1e-15);
}

TEST(QuadraticHamiltonian, MatrixStaysHermitianAndCoefficientsRoundTrip) {
    std::mt19937_64 rng(11);
    QuadraticHamiltonian h(3);
    const std::vector<std::pair<LadderOp, LadderOp>> terms = {
        {ann(0), cre(1)}, {cre(0), cre(2)}, {ann(1), ann(1)}, {ann(2), cre(1)}};
    std::vector<cplx> coeffs;
    for (const auto& [x, y] : terms) {
        coeffs.push_back(random_complex(rng));
        h.add(coeffs.back(), x, y);
    }
    EXPECT_LT((h.matrix() - h.matrix().adjoint()).norm(), 1e-14);
    for (size_t k = 0; k < terms.size(); ++k) {
        EXPECT_LT(std::abs(h.coefficient(terms[k].first, terms[k].second) - coeffs[k]), 1e-14)
            << "term " << k;
    }
}

TEST(QuadraticHamiltonian, DriftPreservesCommutators) {
    // Closed dynamics are symplectic: D K + K D^T = 0.
    std::mt19937_64 rng(5);
    QuadraticHamiltonian h(2);
    h.add(random_complex(rng), ann(0), cre(1));
    h.add(random_complex(rng), cre(0), cre(1));
    h.add(random_complex(rng), ann(0), ann(0));
    h.add(random_complex(rng).real(), cre(1), ann(1));
    const Mat d = h.drift();
    const Mat k = commutator_matrix(2);
    EXPECT_LT((d * k + k * d.transpose()).norm(), 1e-13);
}

TEST(QuadraticHamiltonian, RejectsBadInput) {
    EXPECT_THROW(QuadraticHamiltonian(1, Mat::Zero(3, 3)), InvalidArgument);
    QuadraticHamiltonian h(1);
    EXPECT_THROW(h.add(1.0, ann(0), cre(1)), InvalidArgument);
}

TEST(SpectralNorm, MatchesLargestSingularValue) {
    Mat m(2, 2);
    m << 3.0, 0.0, 0.0, -4.0;
    EXPECT_NEAR(spectral_norm(m), 4.0, 1e-14);
    EXPECT_EQ(spectral_norm(Mat()), 0.0);
}

}  // namespace
}  // namespace lindet
