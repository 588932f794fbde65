#pragma once

#include "lipbar/complex.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace lipbar {

struct Bar {
    Rat birth;
    std::optional<Rat> death;  // nullopt = infinite
    bool finite() const { return death.has_value(); }
    Rat length() const { return finite() ? Rat(*death - birth) : Rat(-1); }
    friend bool operator==(const Bar& a, const Bar& b) {
        return a.birth == b.birth && a.death == b.death;
    }
};

struct Barcode {
    int degree = 0;
    std::vector<Bar> bars;

    void sort() {
        std::sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            if (a.death.has_value() != b.death.has_value()) return b.death.has_value();
            if (a.death && b.death) return *a.death < *b.death;
            return false;
        });
    }
    friend bool operator==(const Barcode& a, const Barcode& b) {
        return a.degree == b.degree && a.bars == b.bars;
    }
    size_t infinite_count() const {
        size_t n = 0;
        for (const auto& b : bars) n += !b.finite();
        return n;
    }
    // Bars alive at t: birth <= t < death.
    size_t alive_at(const Rat& t) const {
        size_t n = 0;
        for (const auto& b : bars) n += (b.birth <= t && (!b.death || *b.death > t));
        return n;
    }
};

namespace detail {

// Field policies for the reduction: a small prime field or Q.
struct FpOps {
    PrimeField f;
    using Coeff = int;
    Coeff from_int(int x) const { return f.normalize(x); }
    bool is_zero(Coeff c) const { return c == 0; }
    Coeff add_mul(Coeff a, Coeff s, Coeff b) const { return f.add(a, f.mul(s, b)); }
    Coeff mul(Coeff a, Coeff b) const { return f.mul(a, b); }
    Coeff neg_div(Coeff num, Coeff den) const { return f.neg(f.mul(num, f.inv(den))); }
    Coeff div(Coeff num, Coeff den) const { return f.mul(num, f.inv(den)); }
};

struct RatOps {
    using Coeff = Rat;
    Coeff from_int(int x) const { return Rat(x); }
    bool is_zero(const Coeff& c) const { return c == 0; }
    Coeff add_mul(const Coeff& a, const Coeff& s, const Coeff& b) const { return a + s * b; }
    Coeff mul(const Coeff& a, const Coeff& b) const { return a * b; }
    Coeff neg_div(const Coeff& num, const Coeff& den) const { return -(num / den); }
    Coeff div(const Coeff& num, const Coeff& den) const { return num / den; }
};

// Sparse column indexed by filtration positions, entries sorted ascending.
template <class Ops>
using SparseColT = std::vector<std::pair<CellId, typename Ops::Coeff>>;

template <class Ops>
inline void add_scaled(SparseColT<Ops>& dst, const SparseColT<Ops>& src,
                       const typename Ops::Coeff& scale, const Ops& ops) {
    SparseColT<Ops> out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, ops.mul(scale, src[j].second));
            ++j;
        } else {
            auto c = ops.add_mul(dst[i].second, scale, src[j].second);
            if (!ops.is_zero(c)) out.emplace_back(dst[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

}  // namespace detail

namespace detail {

template <class Ops>
std::vector<Barcode> reduce_with(const FilteredComplex& fc, const Ops& ops) {
    const size_t n = fc.cells.size();
    const int top = fc.max_dim();

    std::vector<char> cleared(n, 0);          // positions paired as births
    std::vector<char> reduced_to_zero(n, 0);  // positions whose column vanished
    std::vector<std::optional<CellId>> death_of(n);  // birth position -> death position

    std::vector<SparseColT<Ops>> stored(n);             // reduced columns by position
    std::vector<std::optional<CellId>> pivot_owner(n);  // low position -> column position

    for (int d = top; d >= 1; --d) {
        for (CellId pos = 0; pos < n; ++pos) {
            const Cell& c = fc.cells[fc.order[pos]];
            if (c.dim != d) continue;
            if (cleared[pos]) continue;
            SparseColT<Ops> col;
            col.reserve(c.boundary.size());
            for (auto [fid, coeff] : c.boundary) {
                auto cc = ops.from_int(coeff);
                if (!ops.is_zero(cc)) col.emplace_back(fc.position[fid], std::move(cc));
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            while (!col.empty()) {
                CellId low = col.back().first;
                if (!pivot_owner[low]) break;
                auto scale = ops.neg_div(col.back().second,
                                         stored[*pivot_owner[low]].back().second);
                add_scaled(col, stored[*pivot_owner[low]], scale, ops);
            }
            if (col.empty()) {
                reduced_to_zero[pos] = 1;
            } else {
                CellId low = col.back().first;
                pivot_owner[low] = pos;
                stored[pos] = std::move(col);
                death_of[low] = pos;
                cleared[low] = 1;
            }
        }
    }

    std::vector<Barcode> out(static_cast<size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) out[d].degree = d;
    for (CellId pos = 0; pos < n; ++pos) {
        const Cell& c = fc.cells[fc.order[pos]];
        bool positive = cleared[pos] || reduced_to_zero[pos] || c.dim == 0;
        if (!positive) continue;
        if (death_of[pos]) {
            const Cell& killer = fc.cells[fc.order[*death_of[pos]]];
            // Zero-length pairs are ephemeral and dropped.
            if (killer.filtration != c.filtration)
                out[c.dim].bars.push_back(Bar{c.filtration, killer.filtration});
        } else {
            out[c.dim].bars.push_back(Bar{c.filtration, std::nullopt});
        }
    }
    for (auto& bc : out) bc.sort();
    return out;
}

}  // namespace detail

// Barcodes in every degree by column reduction in filtration order with the
// clearing optimization (dimensions processed top-down).  Ties in filtration
// are broken by (dim, id) at build time; the tie-break cannot change the
// barcode, only the internal pairing.  field_char 0 runs the reduction over
// the rationals.
inline std::vector<Barcode> compute_all_barcodes(const FilteredComplex& fc) {
    if (fc.field_char == 0) return detail::reduce_with(fc, detail::RatOps{});
    return detail::reduce_with(fc, detail::FpOps{PrimeField{fc.field_char}});
}

inline Barcode compute_barcode(const FilteredComplex& fc, int degree) {
    auto all = compute_all_barcodes(fc);
    if (degree < 0) throw Error(ErrorCode::BadInput, "negative degree");
    if (degree >= static_cast<int>(all.size())) return Barcode{degree, {}};
    return all[static_cast<size_t>(degree)];
}

// ---------------------------------------------------------------------------
// Rank invariant by direct Gaussian elimination on the sublevel complexes.
// Deliberately independent of the reduction above: it is the oracle for it.

namespace detail {

// Reduces the dense matrix in place, returns its rank.
template <class Ops>
int dense_rank(std::vector<std::vector<typename Ops::Coeff>>& m, const Ops& ops) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    size_t rpos = 0;
    for (size_t c = 0; c < cols && rpos < rows; ++c) {
        size_t piv = rpos;
        while (piv < rows && ops.is_zero(m[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(m[rpos], m[piv]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rpos || ops.is_zero(m[r][c])) continue;
            auto scale = ops.neg_div(m[r][c], m[rpos][c]);
            for (size_t cc = 0; cc < cols; ++cc)
                m[r][cc] = ops.add_mul(m[r][cc], scale, m[rpos][cc]);
        }
        ++rank;
        ++rpos;
    }
    return rank;
}

// Kernel basis of the boundary map on the `cols` cells, as coefficient
// vectors over `cols`; computed by column elimination with an augmented
// identity.
template <class Ops>
std::vector<std::vector<typename Ops::Coeff>> cycle_basis(const FilteredComplex& fc,
                                                          const Ops& ops,
                                                          const std::vector<CellId>& rows_index,
                                                          const std::vector<CellId>& cols) {
    using Coeff = typename Ops::Coeff;
    size_t nrows = rows_index.size(), ncols = cols.size();
    std::vector<std::vector<Coeff>> mat(ncols, std::vector<Coeff>(nrows, ops.from_int(0)));
    std::vector<CellId> rowpos(fc.cells.size(), 0);
    for (size_t i = 0; i < rows_index.size(); ++i) rowpos[rows_index[i]] = static_cast<CellId>(i);
    for (size_t j = 0; j < ncols; ++j)
        for (auto [fid, coeff] : fc.cells[cols[j]].boundary)
            mat[j][rowpos[fid]] = ops.from_int(coeff);

    std::vector<std::vector<Coeff>> id(ncols, std::vector<Coeff>(ncols, ops.from_int(0)));
    for (size_t j = 0; j < ncols; ++j) id[j][j] = ops.from_int(1);

    std::vector<int> pivot_col_of_row(nrows, -1);
    for (size_t j = 0; j < ncols; ++j) {
        while (true) {
            int low = -1;
            for (size_t r = nrows; r-- > 0;)
                if (!ops.is_zero(mat[j][r])) {
                    low = static_cast<int>(r);
                    break;
                }
            if (low < 0) break;
            int owner = pivot_col_of_row[low];
            if (owner < 0) {
                pivot_col_of_row[low] = static_cast<int>(j);
                break;
            }
            auto scale = ops.neg_div(mat[j][low], mat[owner][low]);
            for (size_t r = 0; r < nrows; ++r)
                mat[j][r] = ops.add_mul(mat[j][r], scale, mat[owner][r]);
            for (size_t r = 0; r < ncols; ++r)
                id[j][r] = ops.add_mul(id[j][r], scale, id[owner][r]);
        }
    }
    std::vector<std::vector<Coeff>> kernel;
    for (size_t j = 0; j < ncols; ++j) {
        bool zero = true;
        for (size_t r = 0; r < nrows; ++r) zero = zero && ops.is_zero(mat[j][r]);
        if (zero) kernel.push_back(id[j]);
    }
    return kernel;
}

template <class Ops>
int rank_invariant_with(const FilteredComplex& fc, const Ops& ops, int degree, const Rat& t,
                        const Rat& s) {
    using Coeff = typename Ops::Coeff;
    std::vector<CellId> d_cells_t, d_cells_s, d1_cells_t, dp1_cells_s;
    for (const auto& c : fc.cells) {
        if (c.dim == degree && c.filtration <= t) d_cells_t.push_back(c.id);
        if (c.dim == degree && c.filtration <= s) d_cells_s.push_back(c.id);
        if (c.dim == degree - 1 && c.filtration <= t) d1_cells_t.push_back(c.id);
        if (c.dim == degree + 1 && c.filtration <= s) dp1_cells_s.push_back(c.id);
    }
    if (d_cells_t.empty()) return 0;

    // Cycle space Z_degree(t) over the cells present at time t.
    std::vector<std::vector<Coeff>> kernel_in_cols;
    if (degree == 0) {
        kernel_in_cols.resize(d_cells_t.size(),
                              std::vector<Coeff>(d_cells_t.size(), ops.from_int(0)));
        for (size_t i = 0; i < d_cells_t.size(); ++i) kernel_in_cols[i][i] = ops.from_int(1);
    } else {
        kernel_in_cols = cycle_basis(fc, ops, d1_cells_t, d_cells_t);
    }

    // Express chains over d_cells_s (a superset of d_cells_t); then
    // rank i_*(t,s) = dim(Z(t) + B(s)) - dim B(s).
    std::vector<int> colpos(fc.cells.size(), -1);
    for (size_t i = 0; i < d_cells_s.size(); ++i) colpos[d_cells_s[i]] = static_cast<int>(i);

    std::vector<std::vector<Coeff>> zmat;
    for (const auto& kv : kernel_in_cols) {
        std::vector<Coeff> row(d_cells_s.size(), ops.from_int(0));
        for (size_t i = 0; i < d_cells_t.size(); ++i) row[colpos[d_cells_t[i]]] = kv[i];
        zmat.push_back(std::move(row));
    }
    std::vector<std::vector<Coeff>> bmat;
    for (CellId cid : dp1_cells_s) {
        std::vector<Coeff> row(d_cells_s.size(), ops.from_int(0));
        for (auto [fid, coeff] : fc.cells[cid].boundary) row[colpos[fid]] = ops.from_int(coeff);
        bmat.push_back(std::move(row));
    }

    auto copy_b = bmat;
    int rank_b = dense_rank(copy_b, ops);
    auto zb = zmat;
    zb.insert(zb.end(), bmat.begin(), bmat.end());
    int rank_zb = dense_rank(zb, ops);
    return rank_zb - rank_b;
}

}  // namespace detail

// Rank of H_degree(A_t) -> H_degree(A_s) for t <= s.
inline int rank_invariant(const FilteredComplex& fc, int degree, const Rat& t, const Rat& s) {
    if (t > s) throw Error(ErrorCode::BadInterval, "t > s");
    if (fc.field_char == 0)
        return detail::rank_invariant_with(fc, detail::RatOps{}, degree, t, s);
    return detail::rank_invariant_with(fc, detail::FpOps{PrimeField{fc.field_char}}, degree, t,
                                       s);
}

// Betti number of the sublevel complex at t (rank of the identity map).
inline int betti_at(const FilteredComplex& fc, int degree, const Rat& t) {
    return rank_invariant(fc, degree, t, t);
}

}  // namespace lipbar
