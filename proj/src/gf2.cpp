#include "bchc/gf2.hpp"

namespace bchc {

Rref rref(const BinaryMatrix& m) {
    Rref out;
    out.cols = m.cols;
    std::vector<BitVec> rows = m.rows;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !rows[piv].get(col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i].get(col)) rows[i].xor_with(rows[r]);
        out.pivots.push_back(col);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::size_t rank(const BinaryMatrix& m) { return rref(m).rank(); }

std::vector<BitVec> kernel_basis(const BinaryMatrix& m) {
    const std::size_t nrows = m.rows.size();
    // eliminate with an identity augmentation tracking row combinations
    std::vector<BitVec> rows = m.rows;
    std::vector<BitVec> combo(nrows);
    for (std::size_t i = 0; i < nrows; ++i) {
        combo[i] = BitVec(nrows);
        combo[i].set(i);
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols && r < nrows; ++col) {
        std::size_t piv = r;
        while (piv < nrows && !rows[piv].get(col)) ++piv;
        if (piv == nrows) continue;
        std::swap(rows[r], rows[piv]);
        std::swap(combo[r], combo[piv]);
        for (std::size_t i = 0; i < nrows; ++i)
            if (i != r && rows[i].get(col)) {
                rows[i].xor_with(rows[r]);
                combo[i].xor_with(combo[r]);
            }
        ++r;
    }
    BinaryMatrix ker(nrows);
    for (std::size_t i = r; i < nrows; ++i) ker.add_row(combo[i]);
    return rref(ker).rows;  // deterministic basis
}

BitVec reduce(const Rref& r, BitVec v) {
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        if (v.get(r.pivots[i])) v.xor_with(r.rows[i]);
    return v;
}

bool in_rowspace(const Rref& r, const BitVec& v) { return reduce(r, v).none(); }

std::vector<BitVec> column_nullspace(const Rref& r) {
    std::vector<bool> is_pivot(r.cols, false);
    for (std::size_t p : r.pivots) is_pivot[p] = true;
    std::vector<BitVec> out;
    for (std::size_t col = 0; col < r.cols; ++col) {
        if (is_pivot[col]) continue;
        BitVec v(r.cols);
        v.set(col);
        for (std::size_t i = 0; i < r.rows.size(); ++i)
            if (r.rows[i].get(col)) v.set(r.pivots[i]);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace bchc
