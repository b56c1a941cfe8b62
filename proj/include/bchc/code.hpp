#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bchc/gf2.hpp"
#include "bchc/lattice.hpp"
#include "bchc/pauli.hpp"

namespace bchc {

// Pauli letter per vertex of the face, letter given by the face type.
PauliOperator plaquette_operator(const CellComplex& cx, int face_id);

struct StabilizerCode {
    const CellComplex* complex = nullptr;  // null for ad-hoc generator sets
    std::size_t n = 0;
    std::vector<PauliOperator> generators;
    BinaryMatrix matrix;      // one row per generator, x-part || z-part
    Rref row_rref;
    std::vector<BitVec> kernel;  // RREF basis over generator-index space
    std::size_t rank = 0;
    std::size_t k() const { return n - rank; }
};

// Throws std::runtime_error if any two generators anticommute.
StabilizerCode code_from_generators(std::size_t n, std::vector<PauliOperator> gens);
StabilizerCode build_code(const CellComplex& cx);

std::size_t encoded_qubits(const StabilizerCode& code);

// Product of the generators selected by `subset`, ascending index.
PauliOperator subset_product(const StabilizerCode& code, const BitVec& subset);

// True iff every kernel-basis product is +identity (phase 0). Phases of
// kernel elements add over the basis in this abelian group, so the basis
// check covers the whole kernel.
bool verify_no_minus_identity(const StabilizerCode& code);

struct RelationCensus {
    std::size_t kernel_dim = 0;
    std::size_t cell_boundary_dim = 0;   // C - 1
    std::size_t closed_surface_dim = 0;  // C + 2: cell boundaries + noncontractible classes
    std::size_t noncontractible_classes = 0;
    bool type_relation_outside_surfaces = false;  // the all-X subset has odd edge incidence
};

RelationCensus relation_census(const StabilizerCode& code);

struct LogicalPair {
    PauliOperator surface_like;  // conventionally the first member of the hyperbolic pair
    PauliOperator string_like;
    char direction = 0;  // 'x','y','z' for geometric pairs, 0 for algebraic
};

struct LogicalSet {
    std::vector<LogicalPair> pairs;
};

// 2k centralizer representatives brought to hyperbolic pairs by symplectic
// Gram-Schmidt over the quotient modulo the stabilizer row space.
LogicalSet logical_basis(const StabilizerCode& code);

struct GeometricLogical {
    char direction = 'z';
    PauliOperator surface_op;   // Z on every vertex of one layer of Y-squares
    PauliOperator string_op;    // closed transversal walk with period-4 letters Y,Z,Y,X
    std::vector<int> layer_squares;
    std::vector<int> path_vertices;
    std::string letters;        // letter per path vertex, in walk order
};

// Throws std::runtime_error if the construction fails to close or to commute
// with every plaquette (both indicate a lattice bug). Requires L >= 2.
GeometricLogical geometric_logicals(const CellComplex& cx, char direction);

LogicalSet geometric_logical_set(const CellComplex& cx);

struct PairingReport {
    std::vector<std::vector<int>> matrix;  // symplectic products, pair-major order
    bool standard_form = false;            // 1 within each pair, 0 across pairs
    bool commutes_with_stabilizers = false;
    bool outside_stabilizer = false;       // no member reduces to 0 mod row space
    bool matches_algebraic_span = false;   // members lie in span(stabilizer, algebraic basis)
    bool ok() const {
        return standard_form && commutes_with_stabilizers && outside_stabilizer &&
               matches_algebraic_span;
    }
};

PairingReport verify_logical_pairing(const LogicalSet& logicals, const StabilizerCode& code);

}  // namespace bchc
