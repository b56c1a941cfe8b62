#include "bchc/pauli.hpp"

#include <stdexcept>

namespace bchc {

std::size_t PauliOperator::weight() const {
    std::size_t w = 0;
    const auto& xw = x.words();
    const auto& zw = z.words();
    for (std::size_t i = 0; i < xw.size(); ++i) w += std::popcount(xw[i] | zw[i]);
    return w;
}

char PauliOperator::letter_at(std::size_t q) const {
    const bool xb = x.get(q), zb = z.get(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return '_';
}

std::string PauliOperator::to_string() const {
    std::string s(num_qubits(), '_');
    for (std::size_t q = 0; q < num_qubits(); ++q) s[q] = letter_at(q);
    return s;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char letter) {
    PauliOperator p(n);
    multiply_letter(p, q, letter);
    return p;
}

void multiply_letter(PauliOperator& p, std::size_t q, char letter) {
    bool xb = false, zb = false;
    unsigned ph = 0;
    switch (letter) {
        case 'X': xb = true; break;
        case 'Y': xb = zb = true; ph = 1; break;  // Y = i X Z
        case 'Z': zb = true; break;
        case 'I':
        case '_': return;
        default: throw std::invalid_argument("unknown Pauli letter");
    }
    // reorder Z_p past the incoming X
    if (xb && p.z.get(q)) ph += 2;
    p.phase = (p.phase + ph) & 3u;
    if (xb) p.x.flip(q);
    if (zb) p.z.flip(q);
}

PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
    if (p.num_qubits() != q.num_qubits())
        throw std::invalid_argument("Pauli length mismatch");
    PauliOperator r = p;
    // X^a Z^b * X^c Z^d = (-1)^{b.c} X^{a^c} Z^{b^d}
    unsigned ph = p.phase + q.phase;
    if (BitVec::and_parity(p.z, q.x)) ph += 2;
    r.phase = ph & 3u;
    r.x.xor_with(q.x);
    r.z.xor_with(q.z);
    return r;
}

bool symplectic_product(const PauliOperator& p, const PauliOperator& q) {
    return BitVec::and_parity(p.x, q.z) ^ BitVec::and_parity(p.z, q.x);
}

bool commutes(const PauliOperator& p, const PauliOperator& q) {
    if (p.num_qubits() != q.num_qubits())
        throw std::invalid_argument("Pauli length mismatch");
    return !symplectic_product(p, q);
}

}  // namespace bchc
