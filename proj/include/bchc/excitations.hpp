#pragma once

#include <cstddef>
#include <vector>

#include "bchc/code.hpp"

namespace bchc {

struct Syndrome {
    BitVec violated;  // bit per face: 1 when the plaquette eigenvalue is -1
    std::size_t weight = 0;
};

enum class ErrorKind { TruncatedString, TruncatedSurface, Custom };

struct ErrorOperator {
    PauliOperator op;
    ErrorKind kind = ErrorKind::Custom;
    char direction = 0;
    std::size_t length = 0;     // string letters
    std::size_t perimeter = 0;  // region boundary adjacencies
};

Syndrome syndrome(const StabilizerCode& code, const PauliOperator& err);

// H = -J sum_p B_p, so a syndrome of weight w costs -J(F - 2w).
double energy_of(const StabilizerCode& code, const Syndrome& s, double J);

// First `ell` letters of the canonical string walk (2 <= ell <= 4L; the full
// winding reproduces the string logical).
ErrorOperator truncated_string(const CellComplex& cx, char direction, std::size_t ell);

// Z on every vertex of the given Y-squares; the squares must be distinct
// members of one canonical layer and form a connected region.
ErrorOperator truncated_surface(const CellComplex& cx, char direction,
                                const std::vector<int>& region_squares);

// w x h block of layer squares anchored at the layer origin (no wrapping:
// requires w, h < L, or w = h = L for the full layer).
std::vector<int> rect_region(const CellComplex& cx, char direction, int w, int h);

// -1 iff the closed loop anticommutes with the excitation operator.
// Throws std::invalid_argument when `loop` fails to commute with some
// stabilizer (an open trajectory).
int braiding_phase(const StabilizerCode& code, const ErrorOperator& loop,
                   const ErrorOperator& excitation);

struct ScanRow {
    std::size_t size = 0;       // ell, or region area in squares
    std::size_t perimeter = 0;  // 0 for string rows
    std::size_t weight = 0;
    double energy = 0.0;
};

enum class ScanKind { String, Surface };

// String scan: sizes are letter counts (default 2..4L-2, the separated-pair
// range). Surface scan: sizes index the default rectangle ladder.
std::vector<ScanRow> barrier_scan(const StabilizerCode& code, ScanKind kind,
                                  const std::vector<std::size_t>& sizes, char direction);
std::vector<std::size_t> default_scan_sizes(const CellComplex& cx, ScanKind kind);

}  // namespace bchc
