#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace orthopool {

using Vec = std::vector<double>;

// Dense row-major matrix. Everything in this project is desk scale
// (D <= 256, batches of a few thousand rows), so plain loops suffice.
struct Mat {
    int rows = 0;
    int cols = 0;
    Vec a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), fill) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    std::span<double> row(int i) {
        return {a.data() + static_cast<size_t>(i) * cols, static_cast<size_t>(cols)};
    }
    std::span<const double> row(int i) const {
        return {a.data() + static_cast<size_t>(i) * cols, static_cast<size_t>(cols)};
    }

    Vec row_vec(int i) const {
        return Vec(row(i).begin(), row(i).end());
    }

    void set_row(int i, std::span<const double> v) {
        if (static_cast<int>(v.size()) != cols)
            throw std::invalid_argument("Mat::set_row: width mismatch");
        auto r = row(i);
        for (int j = 0; j < cols; ++j) r[j] = v[j];
    }

    bool same_shape(const Mat& o) const { return rows == o.rows && cols == o.cols; }
};

inline double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("dot: length mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline double norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: length mismatch");
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec sub(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("sub: length mismatch");
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
    return r;
}

inline Vec add(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("add: length mismatch");
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
    return r;
}

inline Vec scaled(double alpha, std::span<const double> x) {
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = alpha * x[i];
    return r;
}

inline double frobenius_distance(const Mat& a, const Mat& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("frobenius_distance: shape mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.a.size(); ++i) {
        const double d = a.a[i] - b.a[i];
        s += d * d;
    }
    return std::sqrt(s);
}

inline double cosine(std::span<const double> x, std::span<const double> y) {
    const double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return dot(x, y) / (nx * ny);
}

inline bool all_finite(std::span<const double> x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace orthopool
