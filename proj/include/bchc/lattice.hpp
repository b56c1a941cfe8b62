#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bchc {

using Coord = std::array<int, 3>;

enum class PauliType : std::uint8_t { X = 0, Y = 1, Z = 2 };
char type_letter(PauliType t);

struct LatticeSpec {
    int L = 2;          // cubic periods per axis; lattice lives on Z^3 mod 4L
    double J = 1.0;     // plaquette coupling
    bool allow_multigraph = false;  // permit L = 1 (faces of a cell may repeat)
};

struct Face {
    Coord center{};
    PauliType type = PauliType::Y;
    std::vector<int> vertices;  // cycle order
    std::vector<int> edges;     // cycle order, edges[i] joins vertices[i], vertices[i+1]
    std::vector<int> cells;     // incident cells (size 2; may repeat at L = 1)
};

struct Cell {
    Coord center{};
    std::vector<int> faces;  // 14 entries; multiset when L = 1
};

// Periodic 3-complex of truncated octahedra on a BCC arrangement. Cells sit
// at (4i,4j,4k) and (4i+2,4j+2,4k+2) mod 4L; each cell's vertices are its
// center plus every permutation of (0,+-1,+-2). Square faces carry Y; a
// hexagon is X when its center coordinates sum to 3 mod 4 and Z when 1 mod 4.
struct CellComplex {
    LatticeSpec spec;
    int period = 0;  // 4L
    bool multigraph = false;

    std::vector<Coord> vertices;              // sorted lexicographically
    std::vector<std::array<int, 2>> edges;    // (a < b), sorted
    std::vector<Face> faces;                  // sorted by center
    std::vector<Cell> cells;                  // sorted by center

    std::vector<std::vector<int>> vertex_faces;  // distinct, sorted
    std::vector<std::vector<int>> vertex_edges;
    std::vector<std::vector<int>> edge_faces;

    std::size_t V() const { return vertices.size(); }
    std::size_t E() const { return edges.size(); }
    std::size_t F() const { return faces.size(); }
    std::size_t C() const { return cells.size(); }
    std::size_t n_type(PauliType t) const;

    int vertex_id(const Coord& c) const;  // -1 if absent
    int face_id(const Coord& center) const;
    Coord wrap(Coord c) const;

    std::uint64_t hash() const;  // FNV-1a over the canonical serialization
};

CellComplex build_lattice(const LatticeSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    const CheckResult* find(const std::string& name) const;
};

// Audits the complex invariants; failures are reported, never thrown.
ValidationReport validate_complex(const CellComplex& cx);

// One Ising site per cell, one bond per face joining the two incident cells.
struct DualIsingGraph {
    int n_sites = 0;
    std::vector<std::array<int, 2>> bonds;   // bond b corresponds to face b
    std::vector<PauliType> bond_type;
    std::vector<std::vector<int>> neighbors;  // site -> adjacent sites (with bond multiplicity)
};

DualIsingGraph build_dual_graph(const CellComplex& cx);

void export_complex(const CellComplex& cx, const std::string& format, std::ostream& os);

}  // namespace bchc
