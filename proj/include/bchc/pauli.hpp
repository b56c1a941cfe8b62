#pragma once

#include <cstddef>
#include <string>

#include "bchc/bitvec.hpp"

namespace bchc {

// n-qubit Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q}, with the
// per-qubit factors normal-ordered X before Z. Under this convention
// Y = i X Z, so X*Y*Z = i on a single qubit.
struct PauliOperator {
    BitVec x, z;
    unsigned phase = 0;  // exponent of i, mod 4

    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : x(n), z(n) {}

    std::size_t num_qubits() const { return x.size(); }
    std::size_t weight() const;
    bool is_identity() const { return x.none() && z.none(); }

    // single-qubit letter ignoring global phase: '_', 'X', 'Y', 'Z'
    char letter_at(std::size_t q) const;
    std::string to_string() const;

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
    static PauliOperator single(std::size_t n, std::size_t q, char letter);
};

// Exact group product, phase included.
PauliOperator multiply(const PauliOperator& p, const PauliOperator& q);

// Multiply a single-qubit letter into p, in place (p := p * letter_q).
void multiply_letter(PauliOperator& p, std::size_t q, char letter);

// Symplectic criterion: x_p.z_q + z_p.x_q = 0 (mod 2).
bool commutes(const PauliOperator& p, const PauliOperator& q);
bool symplectic_product(const PauliOperator& p, const PauliOperator& q);

}  // namespace bchc
