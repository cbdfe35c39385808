#include "ihcalc/snf.hpp"

#include <algorithm>
#include <set>

namespace ih {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

using Dense = std::vector<std::vector<Int>>;

Dense identity(int n) {
    Dense M(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) M[i][i] = 1;
    return M;
}

void row_axpy(Dense& M, int dst, int src, const Int& q) {
    if (q == 0) return;
    auto& d = M[dst];
    const auto& s = M[src];
    for (size_t j = 0; j < d.size(); ++j) d[j] -= q * s[j];
}

void col_axpy(Dense& M, int dst, int src, const Int& q) {
    if (q == 0) return;
    for (auto& row : M) row[dst] -= q * row[src];
}

void col_swap(Dense& M, int a, int b) {
    for (auto& row : M) std::swap(row[a], row[b]);
}

}  // namespace

SNFResult smith_normal_form(const SparseMatZ& A) {
    const int R = A.rows, C = A.ncols();
    Dense M(R, std::vector<Int>(C, 0));
    for (int j = 0; j < C; ++j)
        for (const auto& [r, v] : A.cols[j]) M[r][j] = v;

    Dense U = identity(R), V = identity(C);
    int t = 0;
    const int bound = std::min(R, C);
    while (t < bound) {
        // Minimum-absolute-value pivot in the trailing submatrix.
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = t; i < R; ++i)
            for (int j = t; j < C; ++j)
                if (M[i][j] != 0 && (pi < 0 || abs(M[i][j]) < best)) {
                    pi = i;
                    pj = j;
                    best = abs(M[i][j]);
                }
        if (pi < 0) break;
        std::swap(M[t], M[pi]);
        std::swap(U[t], U[pi]);
        col_swap(M, t, pj);
        col_swap(V, t, pj);

        bool settled = false;
        while (!settled) {
            settled = true;
            // Clear column t with row operations, Euclid on remainders.
            for (int i = t + 1; i < R; ++i) {
                while (M[i][t] != 0) {
                    if (abs(M[i][t]) < abs(M[t][t])) {
                        std::swap(M[t], M[i]);
                        std::swap(U[t], U[i]);
                    }
                    Int q = M[i][t] / M[t][t];
                    row_axpy(M, i, t, q);
                    row_axpy(U, i, t, q);
                }
            }
            // Clear row t with column operations; a column swap dirties column t.
            for (int j = t + 1; j < C; ++j) {
                while (M[t][j] != 0) {
                    if (abs(M[t][j]) < abs(M[t][t])) {
                        col_swap(M, t, j);
                        col_swap(V, t, j);
                        settled = false;
                    }
                    Int q = M[t][j] / M[t][t];
                    col_axpy(M, j, t, q);
                    col_axpy(V, j, t, q);
                }
            }
            if (!settled) continue;
            // Divisibility: the pivot must divide the trailing submatrix.
            for (int i = t + 1; i < R && settled; ++i)
                for (int j = t + 1; j < C && settled; ++j)
                    if (M[i][j] % M[t][t] != 0) {
                        row_axpy(M, t, i, Int(-1));  // row_t += row_i
                        row_axpy(U, t, i, Int(-1));
                        settled = false;
                    }
        }
        if (M[t][t] < 0) {
            for (auto& v : M[t]) v = -v;
            for (auto& v : U[t]) v = -v;
        }
        ++t;
    }

    SNFResult out;
    out.rows = R;
    out.cols = C;
    for (int i = 0; i < t; ++i) out.diagonal.push_back(M[i][i]);
    out.left = std::move(U);
    out.right = std::move(V);
    return out;
}

// --- transform-free invariant factors ----------------------------------------

namespace {

// Sparse elimination state with row->column adjacency.
struct ElimState {
    std::vector<SparseVec<Int>> cols;
    std::vector<std::set<int>> row_cols;
    std::set<std::pair<int, int>> queue;  // (nnz, col) for pivot selection

    explicit ElimState(const SparseMatZ& A) {
        cols.resize(A.ncols());
        row_cols.resize(A.rows);
        for (int j = 0; j < A.ncols(); ++j) {
            cols[j] = A.cols[j];
            for (const auto& [r, v] : cols[j]) row_cols[r].insert(j);
        }
        for (int j = 0; j < (int)cols.size(); ++j)
            if (!cols[j].empty()) queue.insert({(int)cols[j].size(), j});
    }

    void touch_begin(int j) {
        if (!cols[j].empty()) queue.erase({(int)cols[j].size(), j});
    }
    void touch_end(int j) {
        if (!cols[j].empty()) queue.insert({(int)cols[j].size(), j});
    }

    // dst -= q * src, maintaining the row index.
    void col_op(int dst, int src, const Int& q) {
        if (q == 0) return;
        touch_begin(dst);
        auto& d = cols[dst];
        for (const auto& [r, v] : cols[src]) {
            auto it = d.find(r);
            if (it == d.end()) {
                d.emplace(r, -q * v);
                row_cols[r].insert(dst);
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    d.erase(it);
                    row_cols[r].erase(dst);
                }
            }
        }
        touch_end(dst);
    }

    void remove_col(int j) {
        touch_begin(j);
        for (const auto& [r, v] : cols[j]) row_cols[r].erase(j);
        cols[j].clear();
    }
};

}  // namespace

std::vector<Int> snf_invariant_factors(const SparseMatZ& A) {
    ElimState st(A);
    long units = 0;

    // Unit-pivot phase: eliminate +-1 entries, cheapest columns first.
    while (!st.queue.empty()) {
        auto [nnz, c] = *st.queue.begin();
        // Find a unit entry in this column with the sparsest row.
        int pick_row = -1;
        size_t best_row_nnz = 0;
        for (const auto& [r, v] : st.cols[c])
            if (abs(v) == 1 && (pick_row < 0 || st.row_cols[r].size() < best_row_nnz)) {
                pick_row = r;
                best_row_nnz = st.row_cols[r].size();
            }
        if (pick_row < 0) {
            // No unit entry in the sparsest column: scan the rest once; if no
            // unit entries remain anywhere, fall through to the dense phase.
            bool found = false;
            for (auto [n2, c2] : st.queue) {
                for (const auto& [r, v] : st.cols[c2])
                    if (abs(v) == 1) {
                        c = c2;
                        pick_row = r;
                        found = true;
                        break;
                    }
                if (found) break;
            }
            if (!found) break;
        }
        const Int pivot = st.cols[c][pick_row];
        // Clear the pivot row by column operations, then drop row and column.
        std::vector<int> others(st.row_cols[pick_row].begin(), st.row_cols[pick_row].end());
        for (int j : others) {
            if (j == c) continue;
            Int q = st.cols[j][pick_row] / pivot;  // exact: |pivot| == 1
            st.col_op(j, c, q);
        }
        st.remove_col(c);
        ++units;
    }

    // Dense phase on whatever is left (torsion core; small in practice).
    std::vector<int> live_rows, live_cols;
    for (int j = 0; j < (int)st.cols.size(); ++j)
        if (!st.cols[j].empty()) live_cols.push_back(j);
    {
        std::set<int> rows;
        for (int j : live_cols)
            for (const auto& [r, v] : st.cols[j]) rows.insert(r);
        live_rows.assign(rows.begin(), rows.end());
    }
    std::vector<Int> factors(units, 1);
    if (!live_cols.empty()) {
        SparseMatZ B;
        B.rows = (int)live_rows.size();
        B.cols.resize(live_cols.size());
        std::map<int, int> row_map;
        for (int i = 0; i < (int)live_rows.size(); ++i) row_map[live_rows[i]] = i;
        for (int j = 0; j < (int)live_cols.size(); ++j)
            for (const auto& [r, v] : st.cols[live_cols[j]]) B.cols[j][row_map[r]] = v;
        SNFResult s = smith_normal_form(B);
        for (const auto& d : s.diagonal) factors.push_back(d);
    }
    return factors;
}

// --- integer kernel and lattice bases -----------------------------------------

namespace {

// Column elimination over Z with optional companion columns (transform or
// combination tracking). Processes rows in increasing order; afterwards every
// still-active column is zero and the pivots are in echelon position.
struct ZColElim {
    std::vector<SparseVec<Int>> a;      // working columns
    std::vector<SparseVec<Int>> track;  // companion columns (same ops applied)
    std::vector<std::set<int>> row_cols;
    std::vector<char> active;
    std::vector<int> pivot_row;  // per column, -1 if none
    bool tracking = false;

    void init(int rows, std::vector<SparseVec<Int>> cols, bool with_tracking,
              bool track_identity) {
        a = std::move(cols);
        tracking = with_tracking;
        const int n = (int)a.size();
        row_cols.assign(rows, {});
        active.assign(n, 1);
        pivot_row.assign(n, -1);
        for (int j = 0; j < n; ++j)
            for (const auto& [r, v] : a[j]) row_cols[r].insert(j);
        if (tracking) {
            track.assign(n, {});
            if (track_identity)
                for (int j = 0; j < n; ++j) track[j][j] = 1;
        }
    }

    void col_op(int dst, int src, const Int& q) {
        if (q == 0) return;
        auto& d = a[dst];
        for (const auto& [r, v] : a[src]) {
            auto it = d.find(r);
            if (it == d.end()) {
                d.emplace(r, -q * v);
                row_cols[r].insert(dst);
            } else {
                it->second -= q * v;
                if (it->second == 0) {
                    d.erase(it);
                    row_cols[r].erase(dst);
                }
            }
        }
        if (tracking) {
            auto& td = track[dst];
            for (const auto& [r, v] : track[src]) {
                auto it = td.find(r);
                if (it == td.end()) {
                    td.emplace(r, -q * v);
                } else {
                    it->second -= q * v;
                    if (it->second == 0) td.erase(it);
                }
            }
        }
    }

    void run(int rows) {
        for (int r = 0; r < rows; ++r) {
            for (;;) {
                // Active columns with an entry at row r.
                int cmin = -1;
                Int vmin = 0;
                int live = 0;
                for (int j : row_cols[r]) {
                    if (!active[j]) continue;
                    ++live;
                    const Int& v = a[j].at(r);
                    if (cmin < 0 || abs(v) < abs(vmin) ||
                        (abs(v) == abs(vmin) && j < cmin)) {
                        cmin = j;
                        vmin = v;
                    }
                }
                if (live == 0) break;
                if (live == 1) {
                    active[cmin] = 0;
                    pivot_row[cmin] = r;
                    break;
                }
                std::vector<int> others;
                for (int j : row_cols[r])
                    if (active[j] && j != cmin) others.push_back(j);
                for (int j : others) {
                    Int q = a[j].at(r) / vmin;
                    col_op(j, cmin, q);
                }
                // Remainders below |vmin| may persist; loop until one column
                // survives at this row.
            }
        }
    }
};

}  // namespace

std::vector<SparseVec<Int>> integer_kernel_basis(const SparseMatZ& A) {
    ZColElim e;
    e.init(A.rows, A.cols, /*with_tracking=*/true, /*track_identity=*/true);
    e.run(A.rows);
    std::vector<SparseVec<Int>> kernel;
    for (int j = 0; j < (int)e.a.size(); ++j)
        if (e.active[j]) kernel.push_back(std::move(e.track[j]));
    return kernel;
}

ZBasis ZBasis::echelonize(int rows, std::vector<SparseVec<Int>> cols) {
    ZColElim e;
    e.init(rows, std::move(cols), false, false);
    e.run(rows);
    ZBasis b;
    b.rows = rows;
    std::vector<std::pair<int, int>> pivots;  // (row, col)
    for (int j = 0; j < (int)e.a.size(); ++j) {
        if (e.pivot_row[j] >= 0)
            pivots.push_back({e.pivot_row[j], j});
        else if (!e.a[j].empty())
            fail(errc::internal, "ZBasis: dependent columns survived elimination");
    }
    std::sort(pivots.begin(), pivots.end());
    for (auto [r, j] : pivots) {
        b.pivot_rows.push_back(r);
        b.cols.push_back(std::move(e.a[j]));
    }
    return b;
}

SparseVec<Int> ZBasis::solve(const SparseVec<Int>& x) const {
    SparseVec<Int> residual = x;
    SparseVec<Int> y;
    for (int j = 0; j < dim(); ++j) {
        auto it = residual.find(pivot_rows[j]);
        if (it == residual.end()) continue;
        const Int& pv = cols[j].at(pivot_rows[j]);
        if (it->second % pv != 0)
            fail(errc::internal, "ZBasis::solve: vector not in lattice");
        Int q = it->second / pv;
        ZOps ops;
        axpy(ops, -q, cols[j], residual);
        y[j] = q;
    }
    if (!residual.empty()) fail(errc::internal, "ZBasis::solve: vector not in lattice");
    return y;
}

ZBasis z_kernel(const SparseMatZ& A) {
    auto raw = integer_kernel_basis(A);
    int n = A.ncols();
    return ZBasis::echelonize(n, std::move(raw));
}

ZBasis z_column_span(int rows, const std::vector<SparseVec<Int>>& gens,
                     std::vector<SparseVec<Int>>* combos) {
    ZColElim e;
    e.init(rows, gens, combos != nullptr, combos != nullptr);
    e.run(rows);
    std::vector<std::pair<int, int>> pivots;
    for (int j = 0; j < (int)e.a.size(); ++j)
        if (e.pivot_row[j] >= 0) pivots.push_back({e.pivot_row[j], j});
    std::sort(pivots.begin(), pivots.end());
    ZBasis b;
    b.rows = rows;
    if (combos) combos->clear();
    for (auto [r, j] : pivots) {
        b.pivot_rows.push_back(r);
        b.cols.push_back(std::move(e.a[j]));
        if (combos) combos->push_back(std::move(e.track[j]));
    }
    return b;
}

// --- field versions -----------------------------------------------------------

namespace {

template <class Ops>
struct FColElim {
    using T = typename Ops::value;
    const Ops& ops;
    std::vector<SparseVec<T>> a;
    std::vector<SparseVec<T>> track;
    std::vector<std::set<int>> row_cols;
    std::vector<char> active;
    std::vector<int> pivot_row;
    bool tracking;

    FColElim(const Ops& o, int rows, std::vector<SparseVec<T>> cols, bool with_tracking)
        : ops(o), a(std::move(cols)), tracking(with_tracking) {
        const int n = (int)a.size();
        row_cols.assign(rows, {});
        active.assign(n, 1);
        pivot_row.assign(n, -1);
        for (int j = 0; j < n; ++j)
            for (const auto& [r, v] : a[j]) row_cols[r].insert(j);
        if (tracking) {
            track.assign(n, {});
            for (int j = 0; j < n; ++j) track[j][j] = ops.one();
        }
    }

    void col_sub(int dst, int src, const T& q) {
        // dst -= q * src
        auto& d = a[dst];
        for (const auto& [r, v] : a[src]) {
            auto it = d.find(r);
            T delta = ops.mul(q, v);
            if (it == d.end()) {
                if (!ops.is_zero(delta)) {
                    d.emplace(r, ops.neg(delta));
                    row_cols[r].insert(dst);
                }
            } else {
                it->second = ops.sub(it->second, delta);
                if (ops.is_zero(it->second)) {
                    d.erase(it);
                    row_cols[r].erase(dst);
                }
            }
        }
        if (tracking) {
            auto& td = track[dst];
            for (const auto& [r, v] : track[src]) {
                auto it = td.find(r);
                T delta = ops.mul(q, v);
                if (it == td.end()) {
                    if (!ops.is_zero(delta)) td.emplace(r, ops.neg(delta));
                } else {
                    it->second = ops.sub(it->second, delta);
                    if (ops.is_zero(it->second)) td.erase(it);
                }
            }
        }
    }

    void run(int rows) {
        for (int r = 0; r < rows; ++r) {
            int piv = -1;
            size_t best = 0;
            for (int j : row_cols[r])
                if (active[j] && (piv < 0 || a[j].size() < best || (a[j].size() == best && j < piv))) {
                    piv = j;
                    best = a[j].size();
                }
            if (piv < 0) continue;
            const T pv = a[piv].at(r);
            std::vector<int> others;
            for (int j : row_cols[r])
                if (active[j] && j != piv) others.push_back(j);
            for (int j : others) {
                T q = ops.div(a[j].at(r), pv);
                col_sub(j, piv, q);
            }
            active[piv] = 0;
            pivot_row[piv] = r;
        }
    }
};

}  // namespace

template <class Ops>
FieldBasis<Ops> field_kernel(const Ops& ops, const SparseMat<typename Ops::value>& A) {
    FColElim<Ops> e(ops, A.rows, A.cols, true);
    e.run(A.rows);
    std::vector<SparseVec<typename Ops::value>> raw;
    for (int j = 0; j < (int)e.a.size(); ++j)
        if (e.active[j]) raw.push_back(std::move(e.track[j]));
    return field_column_span(ops, A.ncols(), raw, nullptr);
}

template <class Ops>
FieldBasis<Ops> field_column_span(const Ops& ops, int rows,
                                  const std::vector<SparseVec<typename Ops::value>>& gens,
                                  std::vector<SparseVec<typename Ops::value>>* combos) {
    FColElim<Ops> e(ops, rows, gens, combos != nullptr);
    e.run(rows);
    std::vector<std::pair<int, int>> pivots;
    for (int j = 0; j < (int)e.a.size(); ++j)
        if (e.pivot_row[j] >= 0) pivots.push_back({e.pivot_row[j], j});
    std::sort(pivots.begin(), pivots.end());
    FieldBasis<Ops> b;
    b.rows = rows;
    if (combos) combos->clear();
    for (auto [r, j] : pivots) {
        b.pivot_rows.push_back(r);
        b.cols.push_back(std::move(e.a[j]));
        if (combos) combos->push_back(std::move(e.track[j]));
    }
    return b;
}

template <class Ops>
SparseVec<typename Ops::value> FieldBasis<Ops>::solve(
    const Ops& ops, const SparseVec<typename Ops::value>& x) const {
    auto residual = x;
    SparseVec<typename Ops::value> y;
    for (int j = 0; j < dim(); ++j) {
        auto it = residual.find(pivot_rows[j]);
        if (it == residual.end()) continue;
        auto q = ops.div(it->second, cols[j].at(pivot_rows[j]));
        auto negq = ops.neg(q);
        axpy(ops, negq, cols[j], residual);
        if (!ops.is_zero(q)) y[j] = q;
    }
    if (!residual.empty()) fail(errc::internal, "FieldBasis::solve: vector not in span");
    return y;
}

template <class Ops>
int field_rank(const Ops& ops, const SparseMat<typename Ops::value>& A) {
    FColElim<Ops> e(ops, A.rows, A.cols, false);
    e.run(A.rows);
    int rank = 0;
    for (int j = 0; j < (int)e.a.size(); ++j)
        if (e.pivot_row[j] >= 0) ++rank;
    return rank;
}

template struct FieldBasis<QOps>;
template struct FieldBasis<FpOps>;
template FieldBasis<QOps> field_kernel<QOps>(const QOps&, const SparseMat<Rational>&);
template FieldBasis<FpOps> field_kernel<FpOps>(const FpOps&, const SparseMat<uint64_t>&);
template FieldBasis<QOps> field_column_span<QOps>(const QOps&, int,
                                                  const std::vector<SparseVec<Rational>>&,
                                                  std::vector<SparseVec<Rational>>*);
template FieldBasis<FpOps> field_column_span<FpOps>(const FpOps&, int,
                                                    const std::vector<SparseVec<uint64_t>>&,
                                                    std::vector<SparseVec<uint64_t>>*);
template int field_rank<QOps>(const QOps&, const SparseMat<Rational>&);
template int field_rank<FpOps>(const FpOps&, const SparseMat<uint64_t>&);

}  // namespace ih
