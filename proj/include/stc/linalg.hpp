#pragma once

#include <cstdint>
#include <vector>

#include "stc/base_rings.hpp"

namespace stc {

/// Dense row-major matrix over a LocalBaseRing.
struct LocalMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<LocalBaseRing::Elt> a;

    LocalMatrix() = default;
    LocalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    LocalBaseRing::Elt& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    LocalBaseRing::Elt at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

LocalMatrix mat_mul(const LocalBaseRing& R, const LocalMatrix& x, const LocalMatrix& y);
LocalMatrix mat_identity(const LocalBaseRing& R, int n);

/// Solves A X = B for square A over a local ring, pivoting on units.  Throws SingularInput
/// when A is not invertible.
LocalMatrix solve_local(const LocalBaseRing& R, LocalMatrix A, LocalMatrix B);
bool is_invertible_local(const LocalBaseRing& R, LocalMatrix A);

/// Null space of A over a finite field (s = 1), one basis vector per row of the result.
LocalMatrix kernel_over_field(const LocalBaseRing& F, LocalMatrix A);
int rank_over_field(const LocalBaseRing& F, LocalMatrix A);

/// Rank of an integer matrix reduced mod the prime p.
int rank_mod_p(std::vector<std::vector<long>> rows, long p);

/// F_p-coordinates on the p-torsion subgroup {x : p x = 0} of a finite ring of
/// characteristic a power of p.  coords[x] is empty for elements outside it.
struct TorsionCoordinates {
    long p = 0;
    int dim = 0;
    std::vector<LocalBaseRing::Elt> basis;
    std::vector<std::vector<long>> coords;

    bool in_torsion(LocalBaseRing::Elt x) const { return !coords[x].empty(); }
};

TorsionCoordinates torsion_coordinates(const LocalBaseRing& R);

}  // namespace stc
