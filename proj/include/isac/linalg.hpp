// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace isac
{
using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using rvec = Eigen::VectorXd;

// Eigen-data of a Hermitian matrix. Values are sorted in descending order and
// every column of `vectors` is phase-normalized (first non-negligible entry
// real and positive).
struct EigenData
{
    rvec values;
    cmat vectors;

    bool empty() const { return values.size() == 0; }
    double max_value() const { return values.size() > 0 ? values(0) : 0.0; }
};

// Eigenvalue gap under which two eigenvalues are treated as tied.
inline constexpr double kEigenTieGap = 1e-8;

// Rotate v by a unit phase so that its first entry with |v_k| > 1e-8 * ||v||_inf
// becomes real and positive.
void phase_normalize(cvec &v);

// Lexicographic order on phase-normalized vectors (real part, then imaginary
// part, entry by entry). Used to break ties between degenerate eigenvectors.
bool lexicographic_less(const cvec &a, const cvec &b);

// Largest absolute entry of H - H^H.
double hermitian_asymmetry(const cmat &h);

cmat hermitian_part(const cmat &h);

// Descending eigendecomposition with phase normalization. Eigenvectors whose
// eigenvalues lie within kEigenTieGap * max(1, |lambda_max|) of each other are
// ordered by descending lexicographic_less, so the output is reproducible.
EigenData hermitian_eigen(const cmat &h);

// Number of eigenvalues above rel_threshold * lambda_max.
int numerical_rank(const rvec &descending_values, double rel_threshold);

// x^H A x for Hermitian A (real part only).
double quadratic_form(const cmat &a, const cvec &x);

// Re Tr[A B] for Hermitian A and B, without forming the product.
double trace_product(const cmat &a, const cmat &b);

} // namespace isac
