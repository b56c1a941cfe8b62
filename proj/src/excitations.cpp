#include "bchc/excitations.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace bchc {

Syndrome syndrome(const StabilizerCode& code, const PauliOperator& err) {
    if (err.num_qubits() != code.n) throw std::invalid_argument("error length mismatch");
    Syndrome s;
    s.violated = BitVec(code.generators.size());
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        if (symplectic_product(code.generators[i], err)) s.violated.set(i);
    s.weight = s.violated.popcount();
    return s;
}

double energy_of(const StabilizerCode& code, const Syndrome& s, double J) {
    return -J * (double(code.generators.size()) - 2.0 * double(s.weight));
}

ErrorOperator truncated_string(const CellComplex& cx, char direction, std::size_t ell) {
    const std::size_t full = 4 * std::size_t(cx.spec.L);
    if (ell < 2 || ell > full)
        throw std::invalid_argument("string truncation length out of range");
    const GeometricLogical g = geometric_logicals(cx, direction);
    ErrorOperator err;
    err.kind = ErrorKind::TruncatedString;
    err.direction = direction;
    err.length = ell;
    err.op = PauliOperator(cx.V());
    for (std::size_t i = 0; i < ell; ++i)
        multiply_letter(err.op, std::size_t(g.path_vertices[i]), g.letters[i]);
    return err;
}

namespace {

// layer squares as an L x L torus grid; square (i, j) has canonical center
// rotate(4i, 4j, 2)
std::map<int, std::array<int, 2>> layer_grid(const CellComplex& cx,
                                             const GeometricLogical& g) {
    std::map<int, std::array<int, 2>> pos;
    const int L = cx.spec.L;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) pos[g.layer_squares[std::size_t(i * L + j)]] = {i, j};
    return pos;
}

}  // namespace

std::vector<int> rect_region(const CellComplex& cx, char direction, int w, int h) {
    const int L = cx.spec.L;
    const bool full = (w == L && h == L);
    if (w < 1 || h < 1 || (!full && (w >= L || h >= L)))
        throw std::invalid_argument("region rectangle must satisfy w,h < L (or be the full layer)");
    const GeometricLogical g = geometric_logicals(cx, direction);
    std::vector<int> out;
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < h; ++j) out.push_back(g.layer_squares[std::size_t(i * L + j)]);
    return out;
}

ErrorOperator truncated_surface(const CellComplex& cx, char direction,
                                const std::vector<int>& region_squares) {
    if (region_squares.empty()) throw std::invalid_argument("empty region");
    const GeometricLogical g = geometric_logicals(cx, direction);
    const auto pos = layer_grid(cx, g);
    const int L = cx.spec.L;

    std::set<std::array<int, 2>> cellset;
    for (int fi : region_squares) {
        auto it = pos.find(fi);
        if (it == pos.end())
            throw std::invalid_argument("region square outside the canonical layer");
        if (!cellset.insert(it->second).second)
            throw std::invalid_argument("region square repeated");
    }
    // connectivity over torus 4-adjacency
    std::set<std::array<int, 2>> seen;
    std::queue<std::array<int, 2>> q;
    q.push(*cellset.begin());
    seen.insert(*cellset.begin());
    while (!q.empty()) {
        auto [i, j] = q.front();
        q.pop();
        const std::array<int, 2> nb[4] = {{(i + 1) % L, j},
                                          {(i + L - 1) % L, j},
                                          {i, (j + 1) % L},
                                          {i, (j + L - 1) % L}};
        for (const auto& c : nb)
            if (cellset.count(c) && !seen.count(c)) {
                seen.insert(c);
                q.push(c);
            }
    }
    if (seen.size() != cellset.size()) throw std::invalid_argument("region is disconnected");

    std::size_t perimeter = 0;
    for (const auto& [i, j] : cellset) {
        const std::array<int, 2> nb[4] = {{(i + 1) % L, j},
                                          {(i + L - 1) % L, j},
                                          {i, (j + 1) % L},
                                          {i, (j + L - 1) % L}};
        for (const auto& c : nb)
            if (!cellset.count(c)) ++perimeter;
    }

    ErrorOperator err;
    err.kind = ErrorKind::TruncatedSurface;
    err.direction = direction;
    err.length = region_squares.size();
    err.perimeter = perimeter;
    err.op = PauliOperator(cx.V());
    for (int fi : region_squares)
        for (int v : cx.faces[std::size_t(fi)].vertices)
            multiply_letter(err.op, std::size_t(v), 'Z');
    return err;
}

int braiding_phase(const StabilizerCode& code, const ErrorOperator& loop,
                   const ErrorOperator& excitation) {
    if (syndrome(code, loop.op).weight != 0)
        throw std::invalid_argument("loop is not closed: it anticommutes with a stabilizer");
    return symplectic_product(loop.op, excitation.op) ? -1 : +1;
}

std::vector<std::size_t> default_scan_sizes(const CellComplex& cx, ScanKind kind) {
    std::vector<std::size_t> out;
    if (kind == ScanKind::String) {
        // separated-pair range: endpoints merge again at 4L-1
        for (std::size_t ell = 2; ell + 1 < 4 * std::size_t(cx.spec.L); ++ell)
            out.push_back(ell);
    } else {
        std::size_t count = 0;
        const int L = cx.spec.L;
        for (int w = 1; w < L; ++w)
            for (int h = 1; h < L; ++h) ++count;
        for (std::size_t i = 0; i < count; ++i) out.push_back(i);
    }
    return out;
}

// rectangle ladder for surface scans, ordered by (perimeter, w, h)
static std::vector<std::array<int, 2>> rect_ladder(int L) {
    std::vector<std::array<int, 2>> rects;
    for (int w = 1; w < L; ++w)
        for (int h = 1; h < L; ++h) rects.push_back({w, h});
    std::sort(rects.begin(), rects.end(), [](const auto& a, const auto& b) {
        const int pa = a[0] + a[1], pb = b[0] + b[1];
        if (pa != pb) return pa < pb;
        return a < b;
    });
    return rects;
}

std::vector<ScanRow> barrier_scan(const StabilizerCode& code, ScanKind kind,
                                  const std::vector<std::size_t>& sizes, char direction) {
    if (!code.complex) throw std::invalid_argument("scan requires a lattice-built code");
    const CellComplex& cx = *code.complex;
    const double J = cx.spec.J;
    std::vector<ScanRow> rows;
    if (kind == ScanKind::String) {
        for (std::size_t ell : sizes) {
            const ErrorOperator e = truncated_string(cx, direction, ell);
            const Syndrome s = syndrome(code, e.op);
            rows.push_back({ell, 0, s.weight, energy_of(code, s, J)});
        }
    } else {
        const auto rects = rect_ladder(cx.spec.L);
        for (std::size_t idx : sizes) {
            if (idx >= rects.size()) throw std::invalid_argument("surface scan index out of range");
            const auto [w, h] = rects[idx];
            const ErrorOperator e =
                truncated_surface(cx, direction, rect_region(cx, direction, w, h));
            const Syndrome s = syndrome(code, e.op);
            rows.push_back({std::size_t(w) * std::size_t(h), e.perimeter, s.weight,
                            energy_of(code, s, J)});
        }
    }
    return rows;
}

}  // namespace bchc
