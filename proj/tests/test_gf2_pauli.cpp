#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bchc/gf2.hpp"
#include "bchc/pauli.hpp"

using namespace bchc;

namespace {

// Independent single-qubit oracle: hardcoded Pauli multiplication table,
// tensored over qubits. Letters indexed I=0, X=1, Y=2, Z=3; entries give
// (resulting letter, power of i).
struct Table {
    int letter[4][4];
    int phase[4][4];
    Table() {
        const int I = 0, X = 1, Y = 2, Z = 3;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (a == 0) { letter[a][b] = b; phase[a][b] = 0; }
                else if (b == 0) { letter[a][b] = a; phase[a][b] = 0; }
                else if (a == b) { letter[a][b] = I; phase[a][b] = 0; }
            }
        letter[X][Y] = Z; phase[X][Y] = 1;  // XY = iZ
        letter[Y][X] = Z; phase[Y][X] = 3;
        letter[Y][Z] = X; phase[Y][Z] = 1;  // YZ = iX
        letter[Z][Y] = X; phase[Z][Y] = 3;
        letter[Z][X] = Y; phase[Z][X] = 1;  // ZX = iY
        letter[X][Z] = Y; phase[X][Z] = 3;
    }
};

const char kLetters[] = "_XYZ";

PauliOperator from_letters(const std::vector<int>& ls, unsigned global_phase) {
    PauliOperator p(ls.size());
    for (std::size_t q = 0; q < ls.size(); ++q)
        if (ls[q]) multiply_letter(p, q, kLetters[ls[q]]);
    p.phase = (p.phase + global_phase) & 3u;
    return p;
}

}  // namespace

TEST_CASE("single-qubit products") {
    const auto X = PauliOperator::single(1, 0, 'X');
    const auto Y = PauliOperator::single(1, 0, 'Y');
    const auto Z = PauliOperator::single(1, 0, 'Z');

    const auto XZ = multiply(X, Z);
    CHECK(XZ.x.get(0));
    CHECK(XZ.z.get(0));
    CHECK(XZ.phase == 0);  // already normal-ordered

    const auto ZX = multiply(Z, X);
    CHECK(ZX.x.get(0));
    CHECK(ZX.z.get(0));
    CHECK(ZX.phase == 2);  // ZX = -XZ

    const auto XYZ = multiply(multiply(X, Y), Z);
    CHECK(XYZ.is_identity());
    CHECK(XYZ.phase == 1);  // XYZ = iI

    CHECK(Y.phase == 1);  // Y stored as i XZ
    CHECK_FALSE(commutes(X, Z));
    CHECK(commutes(X, X));
}

TEST_CASE("multiply matches the tensored table oracle and is associative") {
    Table tab;
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dist(0, 3);
    const std::size_t n = 17;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> la(n), lb(n), lc(n);
        for (std::size_t q = 0; q < n; ++q) {
            la[q] = dist(rng);
            lb[q] = dist(rng);
            lc[q] = dist(rng);
        }
        const auto A = from_letters(la, 0);
        const auto B = from_letters(lb, 0);
        const auto C = from_letters(lc, 0);

        std::vector<int> lab(n);
        unsigned ph = 0;
        for (std::size_t q = 0; q < n; ++q) {
            lab[q] = tab.letter[la[q]][lb[q]];
            ph += unsigned(tab.phase[la[q]][lb[q]]);
        }
        const auto expect = from_letters(lab, ph & 3u);
        const auto got = multiply(A, B);
        CHECK(got.x == expect.x);
        CHECK(got.z == expect.z);
        CHECK(got.phase == expect.phase);

        const auto left = multiply(multiply(A, B), C);
        const auto right = multiply(A, multiply(B, C));
        CHECK(left.x == right.x);
        CHECK(left.z == right.z);
        CHECK(left.phase == right.phase);

        // commutation agrees with comparing the two product phases
        const auto ab = multiply(A, B);
        const auto ba = multiply(B, A);
        CHECK(commutes(A, B) == (ab.phase == ba.phase));
    }
}

TEST_CASE("rank and kernel basics") {
    const std::size_t n = 24;
    BinaryMatrix ident(n);
    for (std::size_t i = 0; i < n; ++i) {
        BitVec r(n);
        r.set(i);
        ident.add_row(std::move(r));
    }
    CHECK(rank(ident) == n);
    CHECK(kernel_basis(ident).empty());

    BinaryMatrix rep(8);
    BitVec row(8);
    row.set(1);
    row.set(5);
    rep.add_row(row);
    rep.add_row(row);
    const auto kb = kernel_basis(rep);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0].get(0));
    CHECK(kb[0].get(1));

    // rank + kernel dimension = row count on random matrices
    std::mt19937 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        BinaryMatrix m(31);
        const std::size_t rows = 1 + rng() % 40;
        for (std::size_t i = 0; i < rows; ++i) {
            BitVec r(31);
            for (std::size_t c = 0; c < 31; ++c)
                if (rng() & 1) r.set(c);
            m.add_row(std::move(r));
        }
        CHECK(rank(m) + kernel_basis(m).size() == rows);
        // every kernel vector combines rows to zero
        for (const BitVec& kv : kernel_basis(m)) {
            BitVec acc(31);
            for (std::size_t i = 0; i < rows; ++i)
                if (kv.get(i)) acc.xor_with(m.rows[i]);
            CHECK(acc.none());
        }
    }
}

TEST_CASE("rowspace reduction and column nullspace") {
    BinaryMatrix m(6);
    BitVec a(6), b(6);
    a.set(0);
    a.set(2);
    b.set(1);
    m.add_row(a);
    m.add_row(b);
    const Rref r = rref(m);
    CHECK(in_rowspace(r, a));
    BitVec c(6);
    c.set(0);
    CHECK_FALSE(in_rowspace(r, c));

    const auto ns = column_nullspace(r);
    CHECK(ns.size() == 4);
    for (const BitVec& v : ns)
        for (const BitVec& row : m.rows) CHECK_FALSE(BitVec::and_parity(row, v));
}

TEST_CASE("length mismatch is rejected") {
    const auto a = PauliOperator::single(3, 0, 'X');
    const auto b = PauliOperator::single(4, 0, 'Z');
    CHECK_THROWS_AS(multiply(a, b), std::invalid_argument);
    CHECK_THROWS_AS(commutes(a, b), std::invalid_argument);
}
