#include "bchc/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bchc {

char type_letter(PauliType t) {
    switch (t) {
        case PauliType::X: return 'X';
        case PauliType::Y: return 'Y';
        case PauliType::Z: return 'Z';
    }
    return '?';
}

namespace {

// the 24 vertex offsets of a truncated octahedron: permutations of (0,+-1,+-2)
std::vector<Coord> vertex_offsets() {
    std::set<Coord> out;
    int axes[3] = {0, 1, 2};
    std::sort(axes, axes + 3);
    do {
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                Coord c{};
                c[axes[0]] = 0;
                c[axes[1]] = s1;
                c[axes[2]] = 2 * s2;
                out.insert(c);
            }
    } while (std::next_permutation(axes, axes + 3));
    return {out.begin(), out.end()};
}

int sq_dist(const Coord& a, const Coord& b) {
    int d = 0;
    for (int i = 0; i < 3; ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
}

std::int64_t pack(const Coord& c, int M) {
    return (std::int64_t(c[0]) * M + c[1]) * M + c[2];
}

}  // namespace

std::size_t CellComplex::n_type(PauliType t) const {
    std::size_t n = 0;
    for (const Face& f : faces) n += (f.type == t);
    return n;
}

Coord CellComplex::wrap(Coord c) const {
    for (int i = 0; i < 3; ++i) c[i] = ((c[i] % period) + period) % period;
    return c;
}

int CellComplex::vertex_id(const Coord& c) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), c);
    if (it == vertices.end() || *it != c) return -1;
    return int(it - vertices.begin());
}

int CellComplex::face_id(const Coord& center) const {
    auto cmp = [](const Face& f, const Coord& c) { return f.center < c; };
    auto it = std::lower_bound(faces.begin(), faces.end(), center, cmp);
    if (it == faces.end() || it->center != center) return -1;
    return int(it - faces.begin());
}

CellComplex build_lattice(const LatticeSpec& spec) {
    if (spec.L <= 0) throw std::invalid_argument("lattice size L must be positive");
    if (spec.L == 1 && !spec.allow_multigraph)
        throw std::invalid_argument(
            "L = 1 wraps faces onto themselves; enable multigraph mode to build it");

    CellComplex cx;
    cx.spec = spec;
    cx.period = 4 * spec.L;
    cx.multigraph = (spec.L == 1);
    const int L = spec.L;
    const int M = cx.period;

    std::vector<Coord> centers;
    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j)
            for (int k = 0; k < L; ++k) {
                centers.push_back({4 * i, 4 * j, 4 * k});
                centers.push_back({4 * i + 2, 4 * j + 2, 4 * k + 2});
            }
    std::sort(centers.begin(), centers.end());

    const std::vector<Coord> voffs = vertex_offsets();
    std::set<Coord> vset;
    for (const Coord& c : centers)
        for (const Coord& o : voffs) {
            Coord v{c[0] + o[0], c[1] + o[1], c[2] + o[2]};
            for (int i = 0; i < 3; ++i) v[i] = ((v[i] % M) + M) % M;
            vset.insert(v);
        }
    cx.vertices.assign(vset.begin(), vset.end());

    auto vid_of = [&](Coord v) {
        for (int i = 0; i < 3; ++i) v[i] = ((v[i] % M) + M) % M;
        int id = cx.vertex_id(v);
        if (id < 0) throw std::logic_error("vertex lookup failed");
        return id;
    };

    // faces keyed by wrapped center
    struct ProtoFace {
        PauliType type;
        std::vector<int> cycle;
        std::vector<Coord> cells;
    };
    std::map<Coord, ProtoFace> pfaces;
    std::map<Coord, std::vector<Coord>> cell_face_centers;

    auto add_face = [&](const Coord& center, PauliType t, std::vector<int> cycle,
                        const Coord& cell) {
        auto it = pfaces.find(center);
        if (it == pfaces.end()) {
            pfaces.emplace(center, ProtoFace{t, std::move(cycle), {cell}});
        } else {
            ProtoFace& pf = it->second;
            if (pf.type != t) throw std::logic_error("face type disagrees across cells");
            std::vector<int> a = pf.cycle, b = cycle;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) throw std::logic_error("face vertex set disagrees across cells");
            pf.cells.push_back(cell);
        }
        cell_face_centers[cell].push_back(center);
    };

    for (const Coord& c : centers) {
        // 6 squares, normal along an axis; always Y
        for (int axis = 0; axis < 3; ++axis)
            for (int s : {2, -2}) {
                Coord center = c;
                center[axis] += s;
                center = cx.wrap(center);
                const int u = (axis + 1) % 3, w = (axis + 2) % 3;
                std::vector<int> cycle;
                static const int ring[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                for (auto& r : ring) {
                    Coord v = c;
                    v[axis] += s;
                    v[u] += r[0];
                    v[w] += r[1];
                    cycle.push_back(vid_of(v));
                }
                add_face(center, PauliType::Y, std::move(cycle), c);
            }
        // 8 hexagons, normal along (+-1,+-1,+-1); X when center sum = 3 mod 4
        for (int s1 : {1, -1})
            for (int s2 : {1, -1})
                for (int s3 : {1, -1}) {
                    const Coord d{s1, s2, s3};
                    Coord center = cx.wrap({c[0] + s1, c[1] + s2, c[2] + s3});
                    const int sum = ((center[0] + center[1] + center[2]) % 4 + 4) % 4;
                    PauliType t;
                    if (sum == 3)
                        t = PauliType::X;
                    else if (sum == 1)
                        t = PauliType::Z;
                    else
                        throw std::logic_error("hexagon center has even coordinate sum");
                    std::vector<Coord> hx;
                    for (const Coord& o : voffs)
                        if (o[0] * d[0] + o[1] * d[1] + o[2] * d[2] == 3) hx.push_back(o);
                    // chain the 6 offsets into a cycle by nearest-neighbor steps
                    std::vector<Coord> cyc{hx[0]};
                    hx.erase(hx.begin());
                    while (!hx.empty()) {
                        bool found = false;
                        for (std::size_t i = 0; i < hx.size(); ++i)
                            if (sq_dist(cyc.back(), hx[i]) == 2) {
                                cyc.push_back(hx[i]);
                                hx.erase(hx.begin() + long(i));
                                found = true;
                                break;
                            }
                        if (!found) throw std::logic_error("hexagon cycle chaining failed");
                    }
                    std::vector<int> cycle;
                    for (const Coord& o : cyc)
                        cycle.push_back(vid_of({c[0] + o[0], c[1] + o[1], c[2] + o[2]}));
                    add_face(center, t, std::move(cycle), c);
                }
    }

    // canonical face order: by center
    std::map<Coord, int> face_index;
    for (auto& [center, pf] : pfaces) {
        Face f;
        f.center = center;
        f.type = pf.type;
        // canonical cycle: start at the least vertex, walk toward its lesser neighbor
        std::vector<int>& cyc = pf.cycle;
        const std::size_t n = cyc.size();
        std::size_t start = std::min_element(cyc.begin(), cyc.end()) - cyc.begin();
        const int nxt = cyc[(start + 1) % n], prv = cyc[(start + n - 1) % n];
        f.vertices.reserve(n);
        if (nxt <= prv)
            for (std::size_t i = 0; i < n; ++i) f.vertices.push_back(cyc[(start + i) % n]);
        else
            for (std::size_t i = 0; i < n; ++i) f.vertices.push_back(cyc[(start + n - i) % n]);
        face_index[center] = int(cx.faces.size());
        cx.faces.push_back(std::move(f));
    }

    // cells, with face multiplicity preserved (L = 1)
    for (const Coord& c : centers) {
        Cell cell;
        cell.center = c;
        for (const Coord& fc : cell_face_centers[c]) cell.faces.push_back(face_index[fc]);
        std::sort(cell.faces.begin(), cell.faces.end());
        cx.cells.push_back(std::move(cell));
    }
    for (std::size_t ci = 0; ci < cx.cells.size(); ++ci)
        for (int fi : cx.cells[ci].faces) cx.faces[fi].cells.push_back(int(ci));

    // edges from face cycles
    std::set<std::array<int, 2>> eset;
    for (const Face& f : cx.faces) {
        const std::size_t n = f.vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            int a = f.vertices[i], b = f.vertices[(i + 1) % n];
            eset.insert({std::min(a, b), std::max(a, b)});
        }
    }
    cx.edges.assign(eset.begin(), eset.end());
    auto eid_of = [&](int a, int b) {
        std::array<int, 2> key{std::min(a, b), std::max(a, b)};
        auto it = std::lower_bound(cx.edges.begin(), cx.edges.end(), key);
        return int(it - cx.edges.begin());
    };
    for (Face& f : cx.faces) {
        const std::size_t n = f.vertices.size();
        for (std::size_t i = 0; i < n; ++i)
            f.edges.push_back(eid_of(f.vertices[i], f.vertices[(i + 1) % n]));
    }

    cx.vertex_faces.assign(cx.V(), {});
    cx.vertex_edges.assign(cx.V(), {});
    cx.edge_faces.assign(cx.E(), {});
    for (std::size_t fi = 0; fi < cx.F(); ++fi) {
        std::set<int> vs(cx.faces[fi].vertices.begin(), cx.faces[fi].vertices.end());
        for (int v : vs) cx.vertex_faces[v].push_back(int(fi));
        std::set<int> es(cx.faces[fi].edges.begin(), cx.faces[fi].edges.end());
        for (int e : es) cx.edge_faces[e].push_back(int(fi));
    }
    for (std::size_t ei = 0; ei < cx.E(); ++ei) {
        cx.vertex_edges[cx.edges[ei][0]].push_back(int(ei));
        cx.vertex_edges[cx.edges[ei][1]].push_back(int(ei));
    }
    return cx;
}

bool ValidationReport::all_passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ValidationReport validate_complex(const CellComplex& cx) {
    ValidationReport rep;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        rep.checks.push_back({name, ok, detail});
    };
    const long L3 = long(cx.spec.L) * cx.spec.L * cx.spec.L;
    {
        std::ostringstream d;
        d << "V=" << cx.V() << " E=" << cx.E() << " F=" << cx.F() << " C=" << cx.C();
        add("counts",
            cx.V() == std::size_t(12 * L3) && cx.E() == std::size_t(24 * L3) &&
                cx.F() == std::size_t(14 * L3) && cx.C() == std::size_t(2 * L3),
            d.str());
    }
    add("euler_characteristic",
        long(cx.V()) - long(cx.E()) + long(cx.F()) - long(cx.C()) == 0, "V-E+F-C");
    {
        std::ostringstream d;
        d << "n_x=" << cx.n_type(PauliType::X) << " n_y=" << cx.n_type(PauliType::Y)
          << " n_z=" << cx.n_type(PauliType::Z);
        add("type_counts",
            cx.n_type(PauliType::X) == std::size_t(4 * L3) &&
                cx.n_type(PauliType::Y) == std::size_t(6 * L3) &&
                cx.n_type(PauliType::Z) == std::size_t(4 * L3),
            d.str());
    }
    {
        bool ok = true;
        for (const Face& f : cx.faces)
            if (f.vertices.size() == 4 && f.type != PauliType::Y) ok = false;
        add("squares_are_y", ok, "every 4-gon carries Y");
    }
    {
        bool ok = true;
        for (const auto& fl : cx.vertex_faces) {
            int cnt[3] = {0, 0, 0};
            for (int fi : fl) cnt[int(cx.faces[fi].type)]++;
            if (!(cnt[0] == 2 && cnt[1] == 2 && cnt[2] == 2)) ok = false;
        }
        add("vertex_face_census", ok, "each vertex sees 2 X, 2 Y, 2 Z faces");
    }
    {
        bool ok = true;
        for (const auto& fl : cx.edge_faces) {
            if (fl.size() != 3) { ok = false; continue; }
            int cnt[3] = {0, 0, 0};
            for (int fi : fl) cnt[int(cx.faces[fi].type)]++;
            if (!(cnt[0] == 1 && cnt[1] == 1 && cnt[2] == 1)) ok = false;
        }
        add("edge_face_triple", ok, "each edge lies on one X, one Y, one Z face");
    }
    {
        // within each cell, every vertex meets exactly one face of each type
        bool ok = true;
        for (const Cell& cell : cx.cells) {
            std::map<int, std::array<int, 3>> per_vertex;
            for (int fi : cell.faces) {
                std::set<int> vs(cx.faces[fi].vertices.begin(), cx.faces[fi].vertices.end());
                for (int v : vs) per_vertex[v][int(cx.faces[fi].type)]++;
            }
            for (const auto& [v, cnt] : per_vertex)
                if (!(cnt[0] == 1 && cnt[1] == 1 && cnt[2] == 1)) ok = false;
        }
        add("cell_vertex_xyz", ok, "per cell: one X, one Y, one Z face at every vertex");
    }
    {
        // faces sharing vertices: same type -> exactly 1 shared vertex,
        // different type -> exactly 2 (an edge)
        std::map<std::pair<int, int>, int> shared;
        for (const auto& fl : cx.vertex_faces)
            for (std::size_t i = 0; i < fl.size(); ++i)
                for (std::size_t j = i + 1; j < fl.size(); ++j)
                    shared[{fl[i], fl[j]}]++;
        bool same_ok = true, cross_ok = true;
        for (const auto& [pq, cnt] : shared) {
            const bool same = cx.faces[pq.first].type == cx.faces[pq.second].type;
            if (same && cnt != 1) same_ok = false;
            if (!same && cnt != 2) cross_ok = false;
        }
        add("same_type_overlap", same_ok, "same-type neighbors meet at exactly 1 vertex");
        add("cross_type_overlap", cross_ok, "cross-type neighbors meet at exactly 2 vertices");
    }
    {
        bool ok = true;
        for (const Face& f : cx.faces)
            if (f.cells.size() != 2) ok = false;  // multigraph keeps both slots
        add("face_cell_pairing", ok, "every face borders two cell slots");
    }
    {
        // translating by one cubic period maps the complex onto itself, types included
        bool ok = true;
        for (const Face& f : cx.faces) {
            Coord c = cx.wrap({f.center[0] + 4, f.center[1], f.center[2]});
            int id = cx.face_id(c);
            if (id < 0 || cx.faces[id].type != f.type) ok = false;
        }
        for (const Coord& v : cx.vertices) {
            Coord c = cx.wrap({v[0] + 4, v[1], v[2]});
            if (cx.vertex_id(c) < 0) ok = false;
        }
        add("translation_symmetry", ok, "shift by (4,0,0) preserves faces and types");
    }
    return rep;
}

DualIsingGraph build_dual_graph(const CellComplex& cx) {
    DualIsingGraph g;
    g.n_sites = int(cx.C());
    g.neighbors.assign(cx.C(), {});
    for (const Face& f : cx.faces) {
        if (f.cells.size() != 2) throw std::logic_error("face without two cell slots");
        const int a = f.cells[0], b = f.cells[1];
        g.bonds.push_back({a, b});
        g.bond_type.push_back(f.type);
        g.neighbors[a].push_back(b);
        g.neighbors[b].push_back(a);
    }
    return g;
}

std::uint64_t CellComplex::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(std::uint64_t(spec.L));
    for (const Coord& v : vertices) mix(std::uint64_t(pack(v, period)));
    for (const Face& f : faces) {
        mix(std::uint64_t(pack(f.center, period)));
        mix(std::uint64_t(f.type));
        for (int v : f.vertices) mix(std::uint64_t(v));
    }
    for (const Cell& c : cells) mix(std::uint64_t(pack(c.center, period)));
    return h;
}

void export_complex(const CellComplex& cx, const std::string& format, std::ostream& os) {
    if (format == "json") {
        // hand-rolled to keep field order and formatting byte-stable
        os << "{\n";
        os << "  \"L\": " << cx.spec.L << ",\n  \"period\": " << cx.period
           << ",\n  \"multigraph\": " << (cx.multigraph ? "true" : "false") << ",\n";
        os << "  \"vertices\": [";
        for (std::size_t i = 0; i < cx.V(); ++i) {
            const Coord& v = cx.vertices[i];
            os << (i ? "," : "") << "[" << v[0] << "," << v[1] << "," << v[2] << "]";
        }
        os << "],\n  \"edges\": [";
        for (std::size_t i = 0; i < cx.E(); ++i)
            os << (i ? "," : "") << "[" << cx.edges[i][0] << "," << cx.edges[i][1] << "]";
        os << "],\n  \"faces\": [";
        for (std::size_t i = 0; i < cx.F(); ++i) {
            const Face& f = cx.faces[i];
            os << (i ? ",\n    " : "\n    ") << "{\"type\": \"" << type_letter(f.type)
               << "\", \"center\": [" << f.center[0] << "," << f.center[1] << ","
               << f.center[2] << "], \"vertices\": [";
            for (std::size_t j = 0; j < f.vertices.size(); ++j)
                os << (j ? "," : "") << f.vertices[j];
            os << "]}";
        }
        os << "\n  ],\n  \"cells\": [";
        for (std::size_t i = 0; i < cx.C(); ++i) {
            const Cell& c = cx.cells[i];
            os << (i ? ",\n    " : "\n    ") << "{\"center\": [" << c.center[0] << ","
               << c.center[1] << "," << c.center[2] << "], \"faces\": [";
            for (std::size_t j = 0; j < c.faces.size(); ++j)
                os << (j ? "," : "") << c.faces[j];
            os << "]}";
        }
        os << "\n  ]\n}\n";
    } else if (format == "csv") {
        os << "kind,id,type,data\n";
        for (std::size_t i = 0; i < cx.V(); ++i)
            os << "vertex," << i << ",," << cx.vertices[i][0] << " " << cx.vertices[i][1]
               << " " << cx.vertices[i][2] << "\n";
        for (std::size_t i = 0; i < cx.E(); ++i)
            os << "edge," << i << ",," << cx.edges[i][0] << " " << cx.edges[i][1] << "\n";
        for (std::size_t i = 0; i < cx.F(); ++i) {
            os << "face," << i << "," << type_letter(cx.faces[i].type) << ",";
            for (std::size_t j = 0; j < cx.faces[i].vertices.size(); ++j)
                os << (j ? " " : "") << cx.faces[i].vertices[j];
            os << "\n";
        }
        for (std::size_t i = 0; i < cx.C(); ++i) {
            os << "cell," << i << ",,";
            for (std::size_t j = 0; j < cx.cells[i].faces.size(); ++j)
                os << (j ? " " : "") << cx.cells[i].faces[j];
            os << "\n";
        }
    } else {
        throw std::invalid_argument("unknown export format: " + format);
    }
}

}  // namespace bchc
