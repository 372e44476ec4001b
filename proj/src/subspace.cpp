#include "orthopool/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "orthopool/hungarian.hpp"

namespace orthopool {

Moments estimate_moments(const Mat& features) {
    if (features.rows < 1) throw std::invalid_argument("empty feature set");
    const int n = features.rows;
    const int d = features.cols;

    Moments mom;
    mom.mean.assign(d, 0.0);
    for (int i = 0; i < n; ++i) axpy(1.0, features.row(i), mom.mean);
    for (double& v : mom.mean) v /= n;

    mom.covariance = Mat(d, d, 0.0);
    Vec centered(d);
    for (int i = 0; i < n; ++i) {
        auto r = features.row(i);
        for (int j = 0; j < d; ++j) centered[j] = r[j] - mom.mean[j];
        for (int j = 0; j < d; ++j) {
            const double cj = centered[j];
            for (int k = j; k < d; ++k) mom.covariance(j, k) += cj * centered[k];
        }
    }
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) {
            const double v = mom.covariance(j, k) / n;
            mom.covariance(j, k) = v;
            mom.covariance(k, j) = v;
        }
    return mom;
}

namespace {

void jacobi_rotate(Mat& a, Mat& v, int p, int q, double c, double s) {
    const int n = a.rows;
    const double app = a(p, p), aqq = a(q, q), apq = a(p, q);
    a(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
    a(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == p || i == q) continue;
        const double aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip - s * aiq;
        a(p, i) = a(i, p);
        a(i, q) = s * aip + c * aiq;
        a(q, i) = a(i, q);
    }
    for (int i = 0; i < n; ++i) {
        const double vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip - s * viq;
        v(i, q) = s * vip + c * viq;
    }
}

double offdiag_frobenius(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = i + 1; j < a.cols; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

}  // namespace

EigenBasis eig_symmetric(const Mat& matrix) {
    if (matrix.rows != matrix.cols)
        throw std::invalid_argument("eig_symmetric: matrix must be square");
    const int n = matrix.rows;
    if (n == 0) throw std::invalid_argument("eig_symmetric: empty matrix");
    if (!all_finite(matrix.a))
        throw std::invalid_argument("eig_symmetric: non-finite entry");

    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (matrix(i, j) + matrix(j, i));

    Mat v(n, n, 0.0);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;

    constexpr double kOffTol = 1e-11;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (offdiag_frobenius(a) <= kOffTol) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                jacobi_rotate(a, v, p, q, c, s);
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&a](int i, int j) { return a(i, i) > a(j, j); });

    EigenBasis basis;
    basis.eigenvalues.resize(n);
    basis.eigenvectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        const int col = order[k];
        basis.eigenvalues[k] = a(col, col);
        // Column `col` of v, sign-fixed: largest-magnitude component positive.
        int arg = 0;
        double best = 0.0;
        for (int i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, col));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        const double flip = v(arg, col) < 0.0 ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) basis.eigenvectors(k, i) = flip * v(i, col);
    }
    return basis;
}

OrthogonalDomain build_domain(const EigenBasis& basis, const Vec& mean, int m_concepts,
                              const std::vector<int>* assignment) {
    const int d = basis.eigenvectors.cols;
    if (m_concepts > d) throw std::invalid_argument("domain larger than latent dimension");
    if (m_concepts < 1) throw std::invalid_argument("build_domain: need at least one concept");
    if (static_cast<int>(mean.size()) != d)
        throw std::invalid_argument("build_domain: mean length mismatch");

    OrthogonalDomain dom;
    dom.mean = mean;
    dom.axes = Mat(m_concepts, d);
    dom.eigenvalues.resize(m_concepts);
    for (int i = 0; i < m_concepts; ++i) {
        dom.axes.set_row(i, basis.eigenvectors.row(i));
        dom.eigenvalues[i] = basis.eigenvalues[i];
    }

    if (assignment) {
        if (static_cast<int>(assignment->size()) != m_concepts)
            throw std::invalid_argument("build_domain: assignment size mismatch");
        std::vector<char> seen(m_concepts, 0);
        for (int axis : *assignment) {
            if (axis < 0 || axis >= m_concepts || seen[axis])
                throw std::invalid_argument("build_domain: assignment is not a permutation");
            seen[axis] = 1;
        }
        dom.assignment = *assignment;
    } else {
        dom.assignment.resize(m_concepts);
        std::iota(dom.assignment.begin(), dom.assignment.end(), 0);
    }
    return dom;
}

Projection project(const OrthogonalDomain& domain, int m, const Vec& f) {
    if (m < 0 || m >= domain.concept_count())
        throw std::out_of_range("project: concept index out of range");
    if (static_cast<int>(f.size()) != domain.latent_dim())
        throw std::invalid_argument("project: feature length mismatch");

    const auto axis = domain.axis_for_concept(m);
    double coeff = 0.0;
    for (int j = 0; j < domain.latent_dim(); ++j) coeff += axis[j] * (f[j] - domain.mean[j]);

    Projection proj;
    proj.concept_index = m;
    proj.coefficient = coeff;
    proj.vector = scaled(coeff, axis);
    return proj;
}

std::vector<Projection> orthogonal_pool(const OrthogonalDomain& domain, const Vec& f) {
    std::vector<Projection> out;
    out.reserve(domain.concept_count());
    for (int m = 0; m < domain.concept_count(); ++m) out.push_back(project(domain, m, f));
    return out;
}

Vec reconstruct(const OrthogonalDomain& domain, const std::vector<Projection>& projections) {
    if (static_cast<int>(projections.size()) != domain.concept_count())
        throw std::invalid_argument("reconstruct: expected one projection per concept");
    Vec out = domain.mean;
    for (const Projection& p : projections) {
        if (static_cast<int>(p.vector.size()) != domain.latent_dim())
            throw std::invalid_argument("reconstruct: projection length mismatch");
        axpy(1.0, p.vector, out);
    }
    return out;
}

Vec residual(const OrthogonalDomain& domain, const Vec& f) {
    Vec r = sub(f, domain.mean);
    for (int i = 0; i < domain.concept_count(); ++i) {
        const auto axis = domain.axes.row(i);
        const double coeff = dot(axis, r);
        axpy(-coeff, axis, r);
    }
    return r;
}

AlignResult align_basis(const OrthogonalDomain& previous, const OrthogonalDomain& next) {
    const int m = previous.concept_count();
    if (next.concept_count() != m || next.latent_dim() != previous.latent_dim())
        throw std::invalid_argument("align_basis: dimension mismatch");

    Mat cost(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            cost(i, j) = 1.0 - std::abs(cosine(previous.axes.row(i), next.axes.row(j)));
    const std::vector<int> perm = hungarian_assignment(cost);

    AlignResult res;
    res.domain.mean = next.mean;
    res.domain.axes = Mat(m, next.latent_dim());
    res.domain.eigenvalues.resize(m);
    res.domain.assignment = previous.assignment;
    res.similarity.resize(m);
    for (int i = 0; i < m; ++i) {
        const int j = perm[i];
        const double cs = cosine(previous.axes.row(i), next.axes.row(j));
        const double flip = cs < 0.0 ? -1.0 : 1.0;
        res.domain.axes.set_row(i, scaled(flip, next.axes.row(j)));
        res.domain.eigenvalues[i] = next.eigenvalues[j];
        res.similarity[i] = std::abs(cs);
    }
    return res;
}

Vec axis_coefficients(const OrthogonalDomain& domain, const Vec& f) {
    const Vec centered = sub(f, domain.mean);
    Vec coeffs(domain.concept_count());
    for (int i = 0; i < domain.concept_count(); ++i) coeffs[i] = dot(domain.axes.row(i), centered);
    return coeffs;
}

double orthonormality_error(const OrthogonalDomain& domain) {
    double worst = 0.0;
    for (int i = 0; i < domain.concept_count(); ++i)
        for (int j = i; j < domain.concept_count(); ++j) {
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot(domain.axes.row(i), domain.axes.row(j)) - target));
        }
    return worst;
}

}  // namespace orthopool
