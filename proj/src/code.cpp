#include "bchc/code.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bchc {

PauliOperator plaquette_operator(const CellComplex& cx, int face_id) {
    if (face_id < 0 || std::size_t(face_id) >= cx.F())
        throw std::invalid_argument("unknown face id");
    const Face& f = cx.faces[std::size_t(face_id)];
    PauliOperator p(cx.V());
    const char letter = type_letter(f.type);
    for (int v : f.vertices) multiply_letter(p, std::size_t(v), letter);
    return p;
}

namespace {

BitVec row_of(const PauliOperator& p) {
    const std::size_t n = p.num_qubits();
    BitVec r(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
        if (p.x.get(q)) r.set(q);
        if (p.z.get(q)) r.set(n + q);
    }
    return r;
}

PauliOperator op_of_row(const BitVec& r, std::size_t n) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) {
        if (r.get(q)) p.x.set(q);
        if (r.get(n + q)) p.z.set(q);
    }
    return p;
}

// symplectic product of two (x || z) rows
bool sympl_rows(const BitVec& a, const BitVec& b, std::size_t n) {
    bool acc = false;
    for (std::size_t q = 0; q < n; ++q)
        acc ^= (a.get(q) & b.get(n + q)) ^ (a.get(n + q) & b.get(q));
    return acc;
}

}  // namespace

StabilizerCode code_from_generators(std::size_t n, std::vector<PauliOperator> gens) {
    StabilizerCode code;
    code.n = n;
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (!commutes(gens[i], gens[j])) {
                std::ostringstream os;
                os << "generators " << i << " and " << j << " anticommute";
                throw std::runtime_error(os.str());
            }
    code.matrix = BinaryMatrix(2 * n);
    for (const PauliOperator& g : gens) code.matrix.add_row(row_of(g));
    code.generators = std::move(gens);
    code.row_rref = rref(code.matrix);
    code.rank = code.row_rref.rank();
    code.kernel = kernel_basis(code.matrix);
    return code;
}

StabilizerCode build_code(const CellComplex& cx) {
    std::vector<PauliOperator> gens;
    gens.reserve(cx.F());
    for (std::size_t fi = 0; fi < cx.F(); ++fi)
        gens.push_back(plaquette_operator(cx, int(fi)));
    StabilizerCode code = code_from_generators(cx.V(), std::move(gens));
    code.complex = &cx;
    return code;
}

std::size_t encoded_qubits(const StabilizerCode& code) { return code.k(); }

PauliOperator subset_product(const StabilizerCode& code, const BitVec& subset) {
    PauliOperator p = PauliOperator::identity(code.n);
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        if (subset.get(i)) p = multiply(p, code.generators[i]);
    return p;
}

bool verify_no_minus_identity(const StabilizerCode& code) {
    for (const BitVec& kb : code.kernel) {
        PauliOperator p = subset_product(code, kb);
        if (!p.is_identity())
            throw std::logic_error("kernel vector does not multiply to a scalar");
        if (p.phase != 0) return false;
    }
    return true;
}

RelationCensus relation_census(const StabilizerCode& code) {
    if (!code.complex) throw std::invalid_argument("census requires a lattice-built code");
    const CellComplex& cx = *code.complex;
    RelationCensus out;
    out.kernel_dim = code.kernel.size();

    BinaryMatrix cell_rows(cx.F());
    for (const Cell& cell : cx.cells) {
        BitVec r(cx.F());
        for (int fi : cell.faces) r.flip(std::size_t(fi));  // multiset reduces mod 2
        cell_rows.add_row(std::move(r));
    }
    out.cell_boundary_dim = rank(cell_rows);

    BinaryMatrix boundary(cx.E());
    for (const Face& f : cx.faces) {
        BitVec r(cx.E());
        for (int e : f.edges) r.flip(std::size_t(e));
        boundary.add_row(std::move(r));
    }
    out.closed_surface_dim = kernel_basis(boundary).size();
    out.noncontractible_classes = out.closed_surface_dim - out.cell_boundary_dim;

    BitVec all_x_edges(cx.E());
    for (const Face& f : cx.faces)
        if (f.type == PauliType::X)
            for (int e : f.edges) all_x_edges.flip(std::size_t(e));
    out.type_relation_outside_surfaces = all_x_edges.any();
    return out;
}

LogicalSet logical_basis(const StabilizerCode& code) {
    const std::size_t n = code.n;
    if (code.k() == 0) throw std::invalid_argument("code encodes no qubits");

    // centralizer: null space of the symplectic-partner matrix (z || x)
    BinaryMatrix partner(2 * n);
    for (const PauliOperator& g : code.generators) {
        PauliOperator sw(n);
        sw.x = g.z;
        sw.z = g.x;
        partner.add_row(row_of(sw));
    }
    std::vector<BitVec> central = column_nullspace(rref(partner));

    // quotient by the stabilizer row space
    BinaryMatrix quo(2 * n);
    for (BitVec& v : central) {
        BitVec red = reduce(code.row_rref, std::move(v));
        if (red.any()) quo.add_row(std::move(red));
    }
    std::vector<BitVec> basis = rref(quo).rows;
    if (basis.size() != 2 * code.k())
        throw std::logic_error("centralizer quotient has unexpected dimension");

    // symplectic Gram-Schmidt into hyperbolic pairs
    LogicalSet out;
    std::vector<BitVec> pool = std::move(basis);
    while (!pool.empty()) {
        BitVec a = pool.front();
        pool.erase(pool.begin());
        std::size_t j = 0;
        while (j < pool.size() && !sympl_rows(a, pool[j], n)) ++j;
        if (j == pool.size())
            throw std::logic_error("symplectic pairing failed: degenerate form");
        BitVec b = pool[j];
        pool.erase(pool.begin() + long(j));
        for (BitVec& u : pool) {
            if (sympl_rows(u, b, n)) u.xor_with(a);
            if (sympl_rows(u, a, n)) u.xor_with(b);
        }
        LogicalPair pr;
        pr.surface_like = op_of_row(a, n);
        pr.string_like = op_of_row(b, n);
        out.pairs.push_back(std::move(pr));
    }
    return out;
}

namespace {

Coord rotate_to(char direction, const Coord& p) {
    switch (direction) {
        case 'z': return p;
        case 'x': return {p[2], p[0], p[1]};
        case 'y': return {p[1], p[2], p[0]};
        default: throw std::invalid_argument("direction must be x, y or z");
    }
}

}  // namespace

GeometricLogical geometric_logicals(const CellComplex& cx, char direction) {
    if (cx.multigraph)
        throw std::invalid_argument("geometric logicals require L >= 2");
    GeometricLogical out;
    out.direction = direction;
    const int L = cx.spec.L;

    // surface: Z on every vertex of the layer of normal-aligned Y-squares
    out.surface_op = PauliOperator(cx.V());
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const int fi = cx.face_id(cx.wrap(rotate_to(direction, {4 * i, 4 * j, 2})));
            if (fi < 0 || cx.faces[std::size_t(fi)].type != PauliType::Y)
                throw std::runtime_error("surface layer square missing");
            out.layer_squares.push_back(fi);
            for (int v : cx.faces[std::size_t(fi)].vertices)
                multiply_letter(out.surface_op, std::size_t(v), 'Z');
        }

    // string: closed walk advancing one lattice unit per step, letters Y,Z,Y,X
    static const Coord kStep[4] = {{2, -1, 0}, {2, 0, 1}, {1, 0, 2}, {2, 0, 3}};
    static const char kLetters[5] = "YZYX";
    out.string_op = PauliOperator(cx.V());
    for (int k = 0; k < L; ++k)
        for (int s = 0; s < 4; ++s) {
            Coord p = kStep[s];
            p[2] += 4 * k;
            const int v = cx.vertex_id(cx.wrap(rotate_to(direction, p)));
            if (v < 0) throw std::runtime_error("string path vertex missing");
            out.path_vertices.push_back(v);
            out.letters.push_back(kLetters[s]);
            multiply_letter(out.string_op, std::size_t(v), kLetters[s]);
        }

    // the walk must follow lattice edges and close
    const std::size_t len = out.path_vertices.size();
    for (std::size_t i = 0; i < len; ++i) {
        const int a = out.path_vertices[i], b = out.path_vertices[(i + 1) % len];
        const std::array<int, 2> key{std::min(a, b), std::max(a, b)};
        if (!std::binary_search(cx.edges.begin(), cx.edges.end(), key))
            throw std::runtime_error("string path does not follow lattice edges");
    }

    // both operators commute with every plaquette; the pair anticommutes
    for (std::size_t fi = 0; fi < cx.F(); ++fi) {
        const PauliOperator b = plaquette_operator(cx, int(fi));
        if (!commutes(out.surface_op, b) || !commutes(out.string_op, b))
            throw std::runtime_error("geometric logical fails to commute with a plaquette");
    }
    if (commutes(out.surface_op, out.string_op))
        throw std::runtime_error("surface and string logicals fail to anticommute");
    return out;
}

LogicalSet geometric_logical_set(const CellComplex& cx) {
    LogicalSet out;
    for (char d : {'x', 'y', 'z'}) {
        GeometricLogical g = geometric_logicals(cx, d);
        LogicalPair pr;
        pr.surface_like = std::move(g.surface_op);
        pr.string_like = std::move(g.string_op);
        pr.direction = d;
        out.pairs.push_back(std::move(pr));
    }
    return out;
}

PairingReport verify_logical_pairing(const LogicalSet& logicals, const StabilizerCode& code) {
    PairingReport rep;
    std::vector<const PauliOperator*> ops;
    for (const LogicalPair& p : logicals.pairs) {
        ops.push_back(&p.surface_like);
        ops.push_back(&p.string_like);
    }
    const std::size_t m = ops.size();

    rep.matrix.assign(m, std::vector<int>(m, 0));
    rep.standard_form = true;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            rep.matrix[i][j] = symplectic_product(*ops[i], *ops[j]) ? 1 : 0;
            const int expect = ((i ^ 1) == j) ? 1 : 0;  // partner within the pair
            if (rep.matrix[i][j] != expect) rep.standard_form = false;
        }

    rep.commutes_with_stabilizers = true;
    for (const PauliOperator* op : ops)
        for (const PauliOperator& g : code.generators)
            if (!commutes(*op, g)) rep.commutes_with_stabilizers = false;

    rep.outside_stabilizer = true;
    for (const PauliOperator* op : ops)
        if (in_rowspace(code.row_rref, row_of(*op))) rep.outside_stabilizer = false;

    // span check against the algebraic basis
    BinaryMatrix span(2 * code.n);
    for (const BitVec& r : code.row_rref.rows) span.add_row(r);
    LogicalSet alg = logical_basis(code);
    for (const LogicalPair& p : alg.pairs) {
        span.add_row(row_of(p.surface_like));
        span.add_row(row_of(p.string_like));
    }
    const Rref span_rref = rref(span);
    rep.matches_algebraic_span = true;
    for (const PauliOperator* op : ops)
        if (!in_rowspace(span_rref, row_of(*op))) rep.matches_algebraic_span = false;
    return rep;
}

}  // namespace bchc
