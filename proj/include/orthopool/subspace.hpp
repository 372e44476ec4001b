#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "orthopool/linalg.hpp"

namespace orthopool {

// Covariance estimation, symmetric eigendecomposition, orthogonal domain
// construction, projection/pooling/reconstruction and cross-epoch basis
// alignment. Pure functions over immutable inputs.

struct Moments {
    Vec mean;        // length D
    Mat covariance;  // D x D, symmetric, biased (1/N) normalization
};

struct EigenBasis {
    Vec eigenvalues;   // length D, descending
    Mat eigenvectors;  // D rows, row i is the unit eigenvector of eigenvalues[i]
};

// M orthonormal axes carved out of a latent space of dimension D, plus the
// binding from concept index to axis row. The default binding is the
// identity (variance rank order).
struct OrthogonalDomain {
    Vec mean;                     // length D
    Mat axes;                     // M x D, row i is axis i
    Vec eigenvalues;              // length M, variance along each axis
    std::vector<int> assignment;  // concept m -> axis row

    int latent_dim() const { return axes.cols; }
    int concept_count() const { return axes.rows; }
    std::span<const double> axis_for_concept(int m) const {
        return axes.row(assignment[static_cast<size_t>(m)]);
    }
};

struct Projection {
    int concept_index = 0;
    double coefficient = 0.0;  // signed length along the concept's axis
    Vec vector;                // coefficient * axis
};

Moments estimate_moments(const Mat& features);

// Cyclic Jacobi sweeps on the symmetrized input; stops when the off-diagonal
// Frobenius norm drops below 1e-11 or after 100 sweeps. Each eigenvector is
// sign-fixed so that its largest-magnitude component is positive; ties in
// eigenvalues keep the original column order.
EigenBasis eig_symmetric(const Mat& matrix);

OrthogonalDomain build_domain(const EigenBasis& basis, const Vec& mean, int m_concepts,
                              const std::vector<int>* assignment = nullptr);

Projection project(const OrthogonalDomain& domain, int m, const Vec& f);

std::vector<Projection> orthogonal_pool(const OrthogonalDomain& domain, const Vec& f);

Vec reconstruct(const OrthogonalDomain& domain, const std::vector<Projection>& projections);

// (f - mean) minus every axis component; orthogonal to all axes.
Vec residual(const OrthogonalDomain& domain, const Vec& f);

struct AlignResult {
    OrthogonalDomain domain;  // next, permuted and sign-fixed to match previous
    Vec similarity;           // per-axis cos(previous_i, aligned_i), all >= 0
};

// Permutes the new axes via a minimum-cost assignment on 1 - |cos| and flips
// signs so every aligned axis has non-negative cosine with its predecessor.
// The concept binding of `previous` carries over.
AlignResult align_basis(const OrthogonalDomain& previous, const OrthogonalDomain& next);

// Convenience: coefficient of f along every axis row (not concept order).
Vec axis_coefficients(const OrthogonalDomain& domain, const Vec& f);

// Largest |v_i . v_j - delta_ij| over all axis pairs.
double orthonormality_error(const OrthogonalDomain& domain);

}  // namespace orthopool
