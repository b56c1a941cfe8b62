#pragma once

#include <cstddef>
#include <vector>

#include "bchc/bitvec.hpp"

namespace bchc {

// Row-major binary matrix; rows are length-`cols` bit vectors.
struct BinaryMatrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    BinaryMatrix() = default;
    explicit BinaryMatrix(std::size_t c) : cols(c) {}
    void add_row(BitVec r) { rows.push_back(std::move(r)); }
    std::size_t row_count() const { return rows.size(); }
};

// Reduced row echelon form: nonzero rows plus their pivot columns, ascending.
struct Rref {
    std::size_t cols = 0;
    std::vector<BitVec> rows;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return rows.size(); }
};

Rref rref(const BinaryMatrix& m);
std::size_t rank(const BinaryMatrix& m);

// Basis of {c in GF(2)^m : sum_i c_i row_i = 0}, in RREF over the
// row-index space (deterministic).
std::vector<BitVec> kernel_basis(const BinaryMatrix& m);

// v reduced modulo the row space; zero iff v lies in it.
BitVec reduce(const Rref& r, BitVec v);
bool in_rowspace(const Rref& r, const BitVec& v);

// Basis of {v in GF(2)^cols : row . v = 0 for every row}, from the RREF.
std::vector<BitVec> column_nullspace(const Rref& r);

}  // namespace bchc
