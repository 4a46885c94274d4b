#ifndef CORDER_INTMAT_HPP
#define CORDER_INTMAT_HPP

#include <vector>

namespace corder {

using IntMat = std::vector<std::vector<long long>>;
using IntVec = std::vector<long long>;

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
IntVec mat_vec(const IntMat& a, const IntVec& v);
long long mat_det(IntMat a);

// Inverse of an integer matrix with determinant +-1.  Throws
// Error(BadInput) otherwise.
IntMat unimodular_inverse(const IntMat& a);

// Smith normal form with deterministic pivoting: S = U * A * V with U, V
// unimodular and S diagonal, s_1 | s_2 | ..., entries nonnegative.
struct SmithResult {
  IntMat u;  // rows x rows
  IntMat s;  // rows x cols, diagonal
  IntMat v;  // cols x cols
};
SmithResult smith_normal_form(const IntMat& a);

// Column-style Hermite normal form of the lattice spanned by the columns
// of A; canonical for the lattice, used to report blowdown kernels.
IntMat hermite_column_form(const IntMat& a);

}  // namespace corder

#endif
