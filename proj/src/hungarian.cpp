#include "orthopool/hungarian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace orthopool {

// Shortest augmenting path formulation with row/column potentials, O(n^3).
std::vector<int> hungarian_assignment(const Mat& cost) {
    if (cost.rows != cost.cols)
        throw std::invalid_argument("hungarian_assignment: cost matrix must be square");
    const int n = cost.rows;
    if (n == 0) return {};
    for (double x : cost.a)
        if (!std::isfinite(x))
            throw std::invalid_argument("hungarian_assignment: non-finite cost entry");

    const double inf = std::numeric_limits<double>::infinity();
    // 1-based; p[j] = row matched to column j, column 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> perm(n, -1);
    for (int j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
    return perm;
}

}  // namespace orthopool
