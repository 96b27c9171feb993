#include "stc/linalg.hpp"

#include <utility>

namespace stc {

using Elt = LocalBaseRing::Elt;

LocalMatrix mat_mul(const LocalBaseRing& R, const LocalMatrix& x, const LocalMatrix& y) {
    LocalMatrix out(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int k = 0; k < x.cols; ++k) {
            Elt xv = x.at(r, k);
            if (xv == 0) continue;
            for (int c = 0; c < y.cols; ++c) out.at(r, c) = R.add(out.at(r, c), R.mul(xv, y.at(k, c)));
        }
    }
    return out;
}

LocalMatrix mat_identity(const LocalBaseRing& R, int n) {
    LocalMatrix out(n, n);
    for (int i = 0; i < n; ++i) out.at(i, i) = R.one();
    return out;
}

namespace {

void swap_rows(LocalMatrix& m, int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(r1, c), m.at(r2, c));
}

}  // namespace

LocalMatrix solve_local(const LocalBaseRing& R, LocalMatrix A, LocalMatrix B) {
    if (A.rows != A.cols || B.rows != A.rows) throw Error(ErrorCode::SingularInput, "shape mismatch in solve");
    const int n = A.rows;
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r) {
            if (R.is_unit(A.at(r, c))) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) throw Error(ErrorCode::SingularInput, "matrix is not invertible over " + R.describe());
        swap_rows(A, c, pivot);
        swap_rows(B, c, pivot);
        Elt inv = R.inv(A.at(c, c));
        for (int k = 0; k < n; ++k) A.at(c, k) = R.mul(inv, A.at(c, k));
        for (int k = 0; k < B.cols; ++k) B.at(c, k) = R.mul(inv, B.at(c, k));
        for (int r = 0; r < n; ++r) {
            if (r == c || A.at(r, c) == 0) continue;
            Elt f = R.neg(A.at(r, c));
            for (int k = 0; k < n; ++k) A.at(r, k) = R.add(A.at(r, k), R.mul(f, A.at(c, k)));
            for (int k = 0; k < B.cols; ++k) B.at(r, k) = R.add(B.at(r, k), R.mul(f, B.at(c, k)));
        }
    }
    return B;
}

bool is_invertible_local(const LocalBaseRing& R, LocalMatrix A) {
    const int rows = A.rows;
    try {
        solve_local(R, std::move(A), LocalMatrix(rows, 0));
        return true;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularInput) throw;
        return false;
    }
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const LocalBaseRing& F, LocalMatrix& A) {
    std::vector<int> pivots;
    int row = 0;
    for (int c = 0; c < A.cols && row < A.rows; ++c) {
        int pivot = -1;
        for (int r = row; r < A.rows; ++r) {
            if (A.at(r, c) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        swap_rows(A, row, pivot);
        Elt inv = F.inv(A.at(row, c));
        for (int k = 0; k < A.cols; ++k) A.at(row, k) = F.mul(inv, A.at(row, k));
        for (int r = 0; r < A.rows; ++r) {
            if (r == row || A.at(r, c) == 0) continue;
            Elt f = F.neg(A.at(r, c));
            for (int k = 0; k < A.cols; ++k) A.at(r, k) = F.add(A.at(r, k), F.mul(f, A.at(row, k)));
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

LocalMatrix kernel_over_field(const LocalBaseRing& F, LocalMatrix A) {
    std::vector<int> pivots = rref(F, A);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    LocalMatrix out(A.cols - static_cast<int>(pivots.size()), A.cols);
    int row = 0;
    for (int free = 0; free < A.cols; ++free) {
        if (is_pivot[free]) continue;
        out.at(row, free) = F.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) out.at(row, pivots[i]) = F.neg(A.at(static_cast<int>(i), free));
        ++row;
    }
    return out;
}

int rank_over_field(const LocalBaseRing& F, LocalMatrix A) { return static_cast<int>(rref(F, A).size()); }

int rank_mod_p(std::vector<std::vector<long>> rows, long p) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    auto inv_mod = [p](long a) {
        long result = 1, e = p - 2;
        a %= p;
        while (e > 0) {
            if (e & 1) result = result * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return result;
    };
    for (auto& r : rows)
        for (auto& v : r) v = ((v % p) + p) % p;
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (std::size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][c] != 0) {
                pivot = static_cast<int>(r);
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        long inv = inv_mod(rows[rank][c]);
        for (auto& v : rows[rank]) v = v * inv % p;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (static_cast<int>(r) == rank || rows[r][c] == 0) continue;
            long f = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

TorsionCoordinates torsion_coordinates(const LocalBaseRing& R) {
    if (!R.is_local()) throw Error(ErrorCode::InvalidSpec, "torsion coordinates need a local ring");
    TorsionCoordinates tc;
    tc.p = R.characteristic();
    const std::size_t N = R.size();
    auto times_p = [&](Elt x) {
        Elt acc = 0;
        for (long i = 0; i < tc.p; ++i) acc = R.add(acc, x);
        return acc;
    };
    tc.coords.assign(N, {});
    tc.coords[0] = {};
    std::vector<Elt> span{0};
    std::vector<std::vector<long>> span_coords{{}};
    for (Elt x = 1; x < N; ++x) {
        if (times_p(x) != 0) continue;
        bool inside = false;
        for (Elt s : span)
            if (s == x) inside = true;
        if (inside) continue;
        tc.basis.push_back(x);
        std::vector<Elt> grown;
        std::vector<std::vector<long>> grown_coords;
        for (std::size_t i = 0; i < span.size(); ++i) {
            Elt cur = span[i];
            for (long k = 0; k < tc.p; ++k) {
                grown.push_back(cur);
                std::vector<long> c = span_coords[i];
                c.push_back(k);
                grown_coords.push_back(std::move(c));
                cur = R.add(cur, x);
            }
        }
        span = std::move(grown);
        span_coords = std::move(grown_coords);
    }
    tc.dim = static_cast<int>(tc.basis.size());
    for (std::size_t i = 0; i < span.size(); ++i) {
        std::vector<long> c = span_coords[i];
        c.resize(tc.dim, 0);
        tc.coords[span[i]] = c;
    }
    // zero has coordinates (0, ..., 0); keep it distinguishable from "outside"
    tc.coords[0] = std::vector<long>(tc.dim, 0);
    return tc;
}

}  // namespace stc
