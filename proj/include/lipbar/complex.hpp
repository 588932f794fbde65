#pragma once

#include "lipbar/errors.hpp"
#include "lipbar/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lipbar {

using CellId = std::uint32_t;

// Arithmetic mod a small prime p.  p = 0 is accepted as a sentinel for Q in
// the data model, but the reduction engine requires an actual prime.
struct PrimeField {
    int p = 2;
    int normalize(long long x) const {
        long long r = x % p;
        return static_cast<int>(r < 0 ? r + p : r);
    }
    int neg(int a) const { return a == 0 ? 0 : p - a; }
    int add(int a, int b) const { return (a + b) % p; }
    int mul(int a, int b) const { return static_cast<int>((static_cast<long long>(a) * b) % p); }
    int inv(int a) const {
        // p is tiny; brute force is fine.
        for (int x = 1; x < p; ++x)
            if (mul(a, x) == 1) return x;
        throw Error(ErrorCode::BadInput, "not invertible mod " + std::to_string(p));
    }
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct Cell {
    CellId id = 0;
    int dim = 0;
    std::vector<std::pair<CellId, int>> boundary;  // (face id, coefficient)
    Rat filtration;
};

// A finite filtered chain complex over F_p.  Cells are stored in filtration
// order (filtration, dim, id) and `order[i]` maps position -> original id.
class FilteredComplex {
public:
    std::vector<Cell> cells;       // indexed by cell id
    std::vector<CellId> order;     // filtration-sorted cell ids
    std::vector<CellId> position;  // inverse of order
    int field_char = 2;

    int max_dim() const {
        int d = 0;
        for (const auto& c : cells) d = std::max(d, c.dim);
        return d;
    }
    const Rat& filtration_of(CellId id) const { return cells[id].filtration; }

    // Distinct filtration values, increasing.
    std::vector<Rat> critical_values() const {
        std::vector<Rat> v;
        v.reserve(cells.size());
        for (const auto& c : cells) v.push_back(c.filtration);
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }

    long long euler_characteristic_at(const Rat& t) const {
        long long chi = 0;
        for (const auto& c : cells)
            if (c.filtration <= t) chi += (c.dim % 2 == 0) ? 1 : -1;
        return chi;
    }
};

// Validates and assembles a filtered complex.  Throws MissingFace,
// FiltrationOrderViolation or NotAComplex on bad input.
inline FilteredComplex build_filtered_complex(std::vector<Cell> cells, int field_char = 2) {
    if (field_char != 0 && !is_prime(field_char))
        throw Error(ErrorCode::BadInput, "field characteristic must be prime (or 0 for Q)");
    FilteredComplex fc;
    fc.field_char = field_char == 0 ? 0 : field_char;
    PrimeField f{field_char == 0 ? 2 : field_char};

    // Dense ids 0..n-1.
    std::vector<char> seen(cells.size(), 0);
    for (const auto& c : cells) {
        if (c.id >= cells.size() || seen[c.id])
            throw Error(ErrorCode::BadInput, "cell ids must be dense and unique");
        seen[c.id] = 1;
    }
    fc.cells.resize(cells.size());
    for (auto& c : cells) fc.cells[c.id] = std::move(c);

    for (const auto& c : fc.cells) {
        for (auto [fid, coeff] : c.boundary) {
            (void)coeff;
            if (fid >= fc.cells.size())
                throw Error(ErrorCode::MissingFace,
                            "cell " + std::to_string(c.id) + " has unknown face " + std::to_string(fid));
            const Cell& face = fc.cells[fid];
            if (face.dim != c.dim - 1)
                throw Error(ErrorCode::NotAComplex, "boundary of cell " + std::to_string(c.id) +
                                                        " hits a cell of wrong dimension");
            if (face.filtration > c.filtration)
                throw Error(ErrorCode::FiltrationOrderViolation,
                            "face " + std::to_string(fid) + " enters after coface " +
                                std::to_string(c.id));
        }
    }

    // Reduce coefficients mod p and check dd = 0 (over F_p; for field_char 0
    // the check runs over integers accumulated exactly).
    if (field_char != 0) {
        for (auto& c : fc.cells)
            for (auto& [fid, coeff] : c.boundary) coeff = f.normalize(coeff);
    }
    for (const auto& c : fc.cells) {
        if (c.dim < 2) continue;
        std::unordered_map<CellId, long long> acc;
        for (auto [fid, coeff] : c.boundary)
            for (auto [ffid, fcoeff] : fc.cells[fid].boundary)
                acc[ffid] += static_cast<long long>(coeff) * fcoeff;
        for (auto& [k, v] : acc) {
            bool zero = field_char == 0 ? (v == 0) : (f.normalize(v) == 0);
            if (!zero)
                throw Error(ErrorCode::NotAComplex,
                            "dd != 0 at cell " + std::to_string(c.id) + " via " + std::to_string(k));
        }
    }

    fc.order.resize(fc.cells.size());
    std::iota(fc.order.begin(), fc.order.end(), 0);
    std::sort(fc.order.begin(), fc.order.end(), [&](CellId a, CellId b) {
        const Cell &ca = fc.cells[a], &cb = fc.cells[b];
        if (ca.filtration != cb.filtration) return ca.filtration < cb.filtration;
        if (ca.dim != cb.dim) return ca.dim < cb.dim;
        return a < b;
    });
    fc.position.resize(fc.cells.size());
    for (CellId i = 0; i < fc.order.size(); ++i) fc.position[fc.order[i]] = i;
    return fc;
}

}  // namespace lipbar
