#pragma once

#include <vector>

#include "orthopool/linalg.hpp"

namespace orthopool {

// Contrastive objectives over batches of features, with L2 distance as the
// (negated) similarity and exact analytic gradients. Both losses also run on
// one-dimensional features: in that case each row is a single projection
// coefficient and the distances reduce to coefficient differences.

enum class LossKind { RNC, SUPCON_L2 };

struct LossSpec {
    LossKind kind = LossKind::RNC;
    double temperature = 2.0;  // tau > 0
    double weight = 1.0;       // w_m >= 0
};

struct LossResult {
    double value = 0.0;
    Mat gradient;  // N x D, d(value)/d(feature)
};

// Entry (i,j) is the Euclidean distance between rows i and j.
Mat pairwise_l2(const Mat& features);

// Rank-ordering contrastive loss for regression labels. For an anchor i and
// candidate j != i, the normalizing set is S_{i,j} = {k != i : |y_i - y_k| >=
// |y_i - y_j|} (ties included), and the per-pair term is
//   -log( exp(-d_ij/tau) / sum_{k in S_{i,j}} exp(-d_ik/tau) ).
// The value is the mean over all N*(N-1) anchor/candidate pairs.
LossResult rnc_loss(const Mat& features, const Vec& labels, double tau);

// Supervised contrastive loss with L2 similarity. Anchors whose positive set
// is empty contribute nothing and are excluded from the mean denominator.
LossResult supcon_l2_loss(const Mat& features, const std::vector<int>& labels, double tau);

}  // namespace orthopool
