#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace ucb {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline Rat make_rat(long num, long den) { return Rat(BigInt(num), BigInt(den)); }

inline std::string rat_str(const Rat& r) {
    std::string s = boost::multiprecision::numerator(r).str();
    if (boost::multiprecision::denominator(r) != 1)
        s += "/" + boost::multiprecision::denominator(r).str();
    return s;
}

// row-echelon rank by exact Gaussian elimination; consumes its argument
inline int rat_rank(RatMat m) {
    int rows = static_cast<int>(m.size());
    if (rows == 0) return 0;
    int cols = static_cast<int>(m[0].size());
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(piv)]);
        const RatVec& pr = m[static_cast<size_t>(rank)];
        Rat pv = pr[static_cast<size_t>(c)];
        for (int r = rank + 1; r < rows; ++r) {
            Rat f = m[static_cast<size_t>(r)][static_cast<size_t>(c)] / pv;
            if (f == 0) continue;
            for (int k = c; k < cols; ++k)
                m[static_cast<size_t>(r)][static_cast<size_t>(k)] -= f * pr[static_cast<size_t>(k)];
        }
        ++rank;
    }
    return rank;
}

// affine rank helper: number of affinely independent points is rank of
// differences plus one
inline int affine_independent_count(const RatMat& pts) {
    if (pts.empty()) return 0;
    RatMat diffs;
    for (size_t i = 1; i < pts.size(); ++i) {
        RatVec d(pts[i].size());
        for (size_t k = 0; k < pts[i].size(); ++k) d[k] = pts[i][k] - pts[0][k];
        diffs.push_back(std::move(d));
    }
    return rat_rank(std::move(diffs)) + 1;
}

// determinant over integers (Bareiss fraction-free)
inline BigInt int_det(std::vector<std::vector<BigInt>> a) {
    int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[static_cast<size_t>(r)][static_cast<size_t>(k)] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(swap_row)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                             a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] = num / prev;  // exact division
            }
        prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    }
    return sign > 0 ? a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)]
                    : -a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

}  // namespace ucb
