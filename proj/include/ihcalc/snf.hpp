#pragma once

#include <vector>

#include "ihcalc/exact.hpp"

namespace ih {

// Smith normal form with unimodular transforms, U*A*V = diag(d_1..d_r, 0..),
// d_1 | d_2 | ... | d_r, all d_i > 0. Dense bookkeeping: intended for
// desk-scale matrices; homology uses the transform-free path below.
struct SNFResult {
    std::vector<Int> diagonal;            // invariant factors, zeros omitted
    std::vector<std::vector<Int>> left;   // U, rows x rows
    std::vector<std::vector<Int>> right;  // V, cols x cols
    int rows = 0, cols = 0;
};

SNFResult smith_normal_form(const SparseMatZ& A);

// Invariant factors only (d_1 | ... | d_r). Sparse elimination with
// minimum-absolute-value pivoting so entries stay small.
std::vector<Int> snf_invariant_factors(const SparseMatZ& A);

inline int snf_rank(const std::vector<Int>& factors) { return static_cast<int>(factors.size()); }

// Basis of ker(A) over Z as columns. The kernel of an integer matrix is a
// saturated sublattice, so any unimodular column reduction yields a valid
// basis with torsion-free quotient.
std::vector<SparseVec<Int>> integer_kernel_basis(const SparseMatZ& A);

// --- lattice / subspace bases with solving ----------------------------------

// A basis of a sublattice of Z^rows (or subspace over a field), kept in
// column-echelon form: each column has a distinct pivot row, increasing, and
// the pivot row of column j is zero in all later columns.
struct ZBasis {
    int rows = 0;
    std::vector<SparseVec<Int>> cols;
    std::vector<int> pivot_rows;

    int dim() const { return static_cast<int>(cols.size()); }

    // Solve B*y = x. Requires x to lie in the spanned lattice (exact divisions);
    // throws errc::internal otherwise.
    SparseVec<Int> solve(const SparseVec<Int>& x) const;

    static ZBasis echelonize(int rows, std::vector<SparseVec<Int>> cols);
};

// Kernel of A as an echelonized basis.
ZBasis z_kernel(const SparseMatZ& A);

// Lattice generated by given columns (image lattice), echelonized. Tracks the
// generating combination when `combos` is non-null: combos->at(j) expresses
// basis column j in terms of the input columns.
ZBasis z_column_span(int rows, const std::vector<SparseVec<Int>>& gens,
                     std::vector<SparseVec<Int>>* combos = nullptr);

template <class Ops>
struct FieldBasis {
    int rows = 0;
    std::vector<SparseVec<typename Ops::value>> cols;
    std::vector<int> pivot_rows;

    int dim() const { return static_cast<int>(cols.size()); }
    SparseVec<typename Ops::value> solve(const Ops& ops,
                                         const SparseVec<typename Ops::value>& x) const;
};

template <class Ops>
FieldBasis<Ops> field_kernel(const Ops& ops, const SparseMat<typename Ops::value>& A);

template <class Ops>
FieldBasis<Ops> field_column_span(const Ops& ops, int rows,
                                  const std::vector<SparseVec<typename Ops::value>>& gens,
                                  std::vector<SparseVec<typename Ops::value>>* combos = nullptr);

template <class Ops>
int field_rank(const Ops& ops, const SparseMat<typename Ops::value>& A);

}  // namespace ih
