// SPDX-License-Identifier: Apache-2.0

#include "isac/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace isac
{

void phase_normalize(cvec &v)
{
    if (v.size() == 0)
        return;
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return;
    for (Eigen::Index k = 0; k < v.size(); ++k)
    {
        const double mag = std::abs(v(k));
        if (mag > 1e-8 * scale)
        {
            v *= std::conj(v(k)) / mag;
            v(k) = cplx(mag, 0.0);
            return;
        }
    }
}

bool lexicographic_less(const cvec &a, const cvec &b)
{
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index k = 0; k < n; ++k)
    {
        if (a(k).real() != b(k).real())
            return a(k).real() < b(k).real();
        if (a(k).imag() != b(k).imag())
            return a(k).imag() < b(k).imag();
    }
    return a.size() < b.size();
}

double hermitian_asymmetry(const cmat &h)
{
    if (h.size() == 0)
        return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

cmat hermitian_part(const cmat &h)
{
    return 0.5 * (h + h.adjoint());
}

EigenData hermitian_eigen(const cmat &h)
{
    const Eigen::Index n = h.rows();
    Eigen::SelfAdjointEigenSolver<cmat> solver(hermitian_part(h));

    // Eigen returns ascending values; flip to descending.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());

    EigenData out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        out.values(k) = solver.eigenvalues()(order[static_cast<std::size_t>(k)]);
        cvec v = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
        phase_normalize(v);
        out.vectors.col(k) = v;
    }

    // Within each cluster of tied eigenvalues, order the vectors lexicographically.
    const double gap = kEigenTieGap * std::max(1.0, n > 0 ? std::abs(out.values(0)) : 0.0);
    Eigen::Index start = 0;
    while (start < n)
    {
        Eigen::Index stop = start + 1;
        while (stop < n && out.values(stop - 1) - out.values(stop) < gap)
            ++stop;
        if (stop - start > 1)
        {
            std::vector<cvec> cluster;
            for (Eigen::Index k = start; k < stop; ++k)
                cluster.emplace_back(out.vectors.col(k));
            std::stable_sort(cluster.begin(), cluster.end(),
                             [](const cvec &a, const cvec &b) { return lexicographic_less(b, a); });
            for (Eigen::Index k = start; k < stop; ++k)
                out.vectors.col(k) = cluster[static_cast<std::size_t>(k - start)];
        }
        start = stop;
    }
    return out;
}

int numerical_rank(const rvec &descending_values, double rel_threshold)
{
    if (descending_values.size() == 0)
        return 0;
    const double top = descending_values(0);
    if (top <= 0.0)
        return 0;
    int rank = 0;
    for (Eigen::Index k = 0; k < descending_values.size(); ++k)
        if (descending_values(k) > rel_threshold * top)
            ++rank;
    return rank;
}

double quadratic_form(const cmat &a, const cvec &x)
{
    return x.dot(a * x).real();
}

double trace_product(const cmat &a, const cmat &b)
{
    // Tr[A B] = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
    return (a.array() * b.conjugate().array()).sum().real();
}

} // namespace isac
