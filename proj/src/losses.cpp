#include "orthopool/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace orthopool {

Mat pairwise_l2(const Mat& features) {
    const int n = features.rows;
    if (n < 1) throw std::invalid_argument("pairwise_l2: empty batch");
    Mat dist(n, n, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto ri = features.row(i);
        for (int j = i + 1; j < n; ++j) {
            const auto rj = features.row(j);
            double s = 0.0;
            for (int c = 0; c < features.cols; ++c) {
                const double d = ri[c] - rj[c];
                s += d * d;
            }
            const double d = std::sqrt(s);
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }
    return dist;
}

namespace {

// Adds g * d(d_ik)/d(features) to the gradient, where d_ik = ||f_i - f_k||.
// The subgradient at coincident points is taken as zero.
void chain_distance(Mat& grad, const Mat& features, int i, int k, double dist, double g) {
    if (dist <= 0.0) return;
    const auto fi = features.row(i), fk = features.row(k);
    auto gi = grad.row(i), gk = grad.row(k);
    const double inv = g / dist;
    for (int c = 0; c < features.cols; ++c) {
        const double u = (fi[c] - fk[c]) * inv;
        gi[c] += u;
        gk[c] -= u;
    }
}

}  // namespace

LossResult rnc_loss(const Mat& features, const Vec& labels, double tau) {
    const int n = features.rows;
    if (n < 2) throw std::invalid_argument("need at least two samples");
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("rnc_loss: label count mismatch");
    if (tau <= 0.0) throw std::invalid_argument("rnc_loss: temperature must be positive");

    const Mat dist = pairwise_l2(features);
    const double scale = 1.0 / (static_cast<double>(n) * (n - 1));

    LossResult res;
    res.gradient = Mat(n, features.cols, 0.0);

    // Per anchor, reused buffers.
    std::vector<int> others(n - 1);
    Vec label_gap(n - 1), expo(n - 1), w(n - 1), suffix(n), inv_denom(n - 1);
    std::vector<int> start(n - 1);

    for (int i = 0; i < n; ++i) {
        int c = 0;
        for (int k = 0; k < n; ++k)
            if (k != i) others[c++] = k;

        // Sort candidates by |y_i - y_k| ascending; the normalizing set for a
        // candidate at gap g is the suffix of entries with gap >= g.
        std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
            return std::abs(labels[i] - labels[a]) < std::abs(labels[i] - labels[b]);
        });
        const int m = n - 1;
        double mx = -std::numeric_limits<double>::infinity();
        for (int t = 0; t < m; ++t) {
            const int k = others[t];
            label_gap[t] = std::abs(labels[i] - labels[k]);
            expo[t] = -dist(i, k) / tau;
            mx = std::max(mx, expo[t]);
        }
        for (int t = 0; t < m; ++t) w[t] = std::exp(expo[t] - mx);
        suffix[m] = 0.0;
        for (int t = m - 1; t >= 0; --t) suffix[t] = suffix[t + 1] + w[t];

        // start[t] = first sorted position whose gap >= gap of position t
        // (ties included in the normalizing set).
        for (int t = 0; t < m; ++t) {
            start[t] = static_cast<int>(
                std::lower_bound(label_gap.begin(), label_gap.begin() + m, label_gap[t]) -
                label_gap.begin());
        }

        for (int t = 0; t < m; ++t) {
            const double denom = suffix[start[t]];
            res.value += (mx - expo[t]) + std::log(denom);
            inv_denom[t] = 1.0 / denom;
        }

        // Gradient coefficient on each distance d(i,k): the direct +1/tau from
        // k's own pair term, minus softmax mass accumulated over every pair
        // term whose normalizing set contains k.
        double running = 0.0;
        int q = 0;
        for (int t = 0; t < m; ++t) {
            while (q < m && start[q] <= t) {
                running += inv_denom[q];
                ++q;
            }
            const int k = others[t];
            const double dcoef = (1.0 - w[t] * running) / tau;
            chain_distance(res.gradient, features, i, k, dist(i, k), scale * dcoef);
        }
    }

    res.value *= scale;
    return res;
}

LossResult supcon_l2_loss(const Mat& features, const std::vector<int>& labels, double tau) {
    const int n = features.rows;
    if (n < 2) throw std::invalid_argument("need at least two samples");
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("supcon_l2_loss: label count mismatch");
    if (tau <= 0.0) throw std::invalid_argument("supcon_l2_loss: temperature must be positive");

    const Mat dist = pairwise_l2(features);

    LossResult res;
    res.gradient = Mat(n, features.cols, 0.0);

    struct AnchorTerm {
        int anchor;
        double pos_count;
    };
    // First pass: the anchor mean counts only anchors with positives.
    int active = 0;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            if (k != i && labels[k] == labels[i]) {
                ++active;
                break;
            }
        }
    }
    if (active == 0) return res;  // no positives anywhere: zero loss, zero gradient
    const double scale = 1.0 / active;

    Vec expo(n), w(n);
    for (int i = 0; i < n; ++i) {
        int pos = 0;
        for (int k = 0; k < n; ++k)
            if (k != i && labels[k] == labels[i]) ++pos;
        if (pos == 0) continue;

        double mx = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            expo[k] = -dist(i, k) / tau;
            mx = std::max(mx, expo[k]);
        }
        double denom = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            w[k] = std::exp(expo[k] - mx);
            denom += w[k];
        }

        double value_i = std::log(denom) + mx;
        for (int k = 0; k < n; ++k) {
            if (k == i || labels[k] != labels[i]) continue;
            value_i += -expo[k] / pos;
        }
        // -expo above still carries +mx per positive via value_i's mx term
        // only once; fold the bookkeeping explicitly:
        //   l_i = (1/|P|) sum_p (mx - expo_p) + log(denom)  with denom scaled by e^{-mx}
        // which equals the expression accumulated here.
        res.value += value_i;

        for (int k = 0; k < n; ++k) {
            if (k == i) continue;
            const double is_pos = (labels[k] == labels[i]) ? 1.0 / pos : 0.0;
            const double dcoef = (is_pos - w[k] / denom) / tau;
            chain_distance(res.gradient, features, i, k, dist(i, k), scale * dcoef);
        }
    }

    res.value *= scale;
    return res;
}

}  // namespace orthopool
