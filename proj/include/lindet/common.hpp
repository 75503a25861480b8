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

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace lindet {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};

// Error hierarchy. Every failure that a caller might want to distinguish gets
// its own type; the CLI maps them onto exit codes.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Bad input: malformed specs, dimension mismatches, violated preconditions.
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

// Physical inadmissibility of an input (exit code 2 at the CLI).
class NotRealizable : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};
class NotPhysical : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};
class ImproperTransferFunction : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};
class UnsupportedDimension : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};
class BasisMismatch : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};
class InvalidNetwork : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

// Numerical failures (exit code 3 at the CLI).
class NumericalError : public Error {
   public:
    using Error::Error;
};
class PoleHit : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class SingularResolvent : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class SingularTransform : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class NoSolution : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class WrongInertia : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class IntegrationFailure : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class ChainResonance : public NumericalError {
   public:
    using NumericalError::NumericalError;
};
class OnResonance : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

// Largest singular value.
double spectral_norm(const Mat& m);

}  // namespace lindet
