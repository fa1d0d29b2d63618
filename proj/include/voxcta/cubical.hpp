#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "voxcta/grid.hpp"

namespace voxcta {

/// Closed cubical complex of a voxel set, in doubled coordinates: a cell
/// is a lattice point (a,b,c) with 0 <= a <= 2*nx etc., where the parity
/// of each coordinate encodes extent along that axis. dim(cell) = number
/// of odd coordinates; a voxel (x,y,z) closes to all cells with doubled
/// coordinates in [2x, 2x+2] x [2y, 2y+2] x [2z, 2z+2].
struct CubicalComplex {
    std::array<std::int64_t, 4> n = {0, 0, 0, 0}; // vertices, edges, faces, cubes
    std::vector<std::uint64_t> cells;             // packed doubled coords, sorted; optional
    bool has_cells = false;

    std::int64_t euler() const { return n[0] - n[1] + n[2] - n[3]; }
    std::int64_t total_cells() const { return n[0] + n[1] + n[2] + n[3]; }

    static std::uint64_t pack(int a, int b, int c) {
        return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) |
               static_cast<std::uint64_t>(c);
    }
    static std::array<int, 3> unpack(std::uint64_t id) {
        return {static_cast<int>(id >> 42), static_cast<int>((id >> 21) & 0x1fffff),
                static_cast<int>(id & 0x1fffff)};
    }
    static int cell_dim(std::uint64_t id) {
        auto [a, b, c] = unpack(id);
        return (a & 1) + (b & 1) + (c & 1);
    }
};

namespace detail {

/// Is the doubled-coordinate cell (a,b,c) contained in the closure of g?
/// True iff any voxel incident to the cell is occupied.
inline bool cell_in_closure(const VoxelGrid& g, int a, int b, int c) {
    // per-axis incident voxel range: odd coord 2x+1 -> {x}; even coord 2x -> {x-1, x}
    const int xa = (a & 1) ? (a - 1) / 2 : a / 2 - 1;
    const int xb = (a & 1) ? (a - 1) / 2 : a / 2;
    const int ya = (b & 1) ? (b - 1) / 2 : b / 2 - 1;
    const int yb = (b & 1) ? (b - 1) / 2 : b / 2;
    const int za = (c & 1) ? (c - 1) / 2 : c / 2 - 1;
    const int zb = (c & 1) ? (c - 1) / 2 : c / 2;
    for (int z = za; z <= zb; ++z)
        for (int y = ya; y <= yb; ++y)
            for (int x = xa; x <= xb; ++x)
                if (g.at_clamped(x, y, z)) return true;
    return false;
}

} // namespace detail

/// Cell counts of the closure of the occupied voxel set. Set with_cells to
/// additionally materialize the sorted explicit cell list (only sensible
/// for small grids; required by intersect_complexes).
inline CubicalComplex complex_of(const VoxelGrid& g, bool with_cells = false) {
    CubicalComplex cx;
    const Dims d = g.dims();

    if (with_cells) {
        for (int a = 0; a <= 2 * d.nx; ++a)
            for (int b = 0; b <= 2 * d.ny; ++b)
                for (int c = 0; c <= 2 * d.nz; ++c)
                    if (detail::cell_in_closure(g, a, b, c)) {
                        cx.cells.push_back(CubicalComplex::pack(a, b, c));
                        ++cx.n[static_cast<std::size_t>((a & 1) + (b & 1) + (c & 1))];
                    }
        std::sort(cx.cells.begin(), cx.cells.end());
        cx.has_cells = true;
        return cx;
    }

    // counts only, one pass per cell type
    auto occ2 = [&](int x0, int x1, int y, int z) {
        return g.at_clamped(x0, y, z) || g.at_clamped(x1, y, z);
    };
    cx.n[3] = g.voxel_count();
    // faces perpendicular to x / y / z
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x <= d.nx; ++x)
                if (occ2(x - 1, x, y, z)) ++cx.n[2];
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y <= d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (g.at_clamped(x, y - 1, z) || g.at_clamped(x, y, z)) ++cx.n[2];
    for (int z = 0; z <= d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (g.at_clamped(x, y, z - 1) || g.at_clamped(x, y, z)) ++cx.n[2];
    // edges along x / y / z
    for (int z = 0; z <= d.nz; ++z)
        for (int y = 0; y <= d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (g.at_clamped(x, y - 1, z - 1) || g.at_clamped(x, y, z - 1) ||
                    g.at_clamped(x, y - 1, z) || g.at_clamped(x, y, z))
                    ++cx.n[1];
    for (int z = 0; z <= d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x <= d.nx; ++x)
                if (g.at_clamped(x - 1, y, z - 1) || g.at_clamped(x, y, z - 1) ||
                    g.at_clamped(x - 1, y, z) || g.at_clamped(x, y, z))
                    ++cx.n[1];
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y <= d.ny; ++y)
            for (int x = 0; x <= d.nx; ++x)
                if (g.at_clamped(x - 1, y - 1, z) || g.at_clamped(x, y - 1, z) ||
                    g.at_clamped(x - 1, y, z) || g.at_clamped(x, y, z))
                    ++cx.n[1];
    // vertices
    for (int z = 0; z <= d.nz; ++z)
        for (int y = 0; y <= d.ny; ++y)
            for (int x = 0; x <= d.nx; ++x) {
                bool hit = false;
                for (int dz = -1; dz <= 0 && !hit; ++dz)
                    for (int dy = -1; dy <= 0 && !hit; ++dy)
                        for (int dx = -1; dx <= 0 && !hit; ++dx)
                            hit = g.at_clamped(x + dx, y + dy, z + dz);
                if (hit) ++cx.n[0];
            }
    return cx;
}

inline std::int64_t euler(const CubicalComplex& c) { return c.euler(); }
inline std::int64_t euler(const VoxelGrid& g) { return complex_of(g).euler(); }

/// Cellwise intersection of two explicit complexes. Closed complexes, so
/// the result is again a complex; for voxel-disjoint solids it has no 3-cells.
inline CubicalComplex intersect_complexes(const CubicalComplex& a, const CubicalComplex& b) {
    if (!a.has_cells || !b.has_cells)
        throw std::invalid_argument("intersect_complexes: explicit cell sets required");
    CubicalComplex out;
    out.has_cells = true;
    std::set_intersection(a.cells.begin(), a.cells.end(), b.cells.begin(), b.cells.end(),
                          std::back_inserter(out.cells));
    for (auto id : out.cells) ++out.n[static_cast<std::size_t>(CubicalComplex::cell_dim(id))];
    return out;
}

enum class Connectivity { Vertex26, Face6 };

struct Labeling {
    std::vector<std::int32_t> labels; // 0 = background, components numbered from 1
    int count = 0;
};

/// Connected-component labeling. Labels are assigned in ascending order of
/// each component's minimal voxel index, so output is deterministic.
inline Labeling label_components(const VoxelGrid& g, Connectivity conn) {
    const Dims d = g.dims();
    Labeling out;
    out.labels.assign(static_cast<std::size_t>(d.count()), 0);
    std::vector<std::int64_t> stack;
    for (std::int64_t seed = 0; seed < d.count(); ++seed) {
        if (!g.at(seed) || out.labels[static_cast<std::size_t>(seed)] != 0) continue;
        const std::int32_t label = ++out.count;
        out.labels[static_cast<std::size_t>(seed)] = label;
        stack.assign(1, seed);
        while (!stack.empty()) {
            std::int64_t cur = stack.back();
            stack.pop_back();
            int x = static_cast<int>(cur % d.nx);
            int y = static_cast<int>((cur / d.nx) % d.ny);
            int z = static_cast<int>(cur / (static_cast<std::int64_t>(d.nx) * d.ny));
            auto visit = [&](int nx_, int ny_, int nz_) {
                if (nx_ < 0 || ny_ < 0 || nz_ < 0 || nx_ >= d.nx || ny_ >= d.ny || nz_ >= d.nz)
                    return;
                std::int64_t ni = g.index(nx_, ny_, nz_);
                if (g.at(ni) && out.labels[static_cast<std::size_t>(ni)] == 0) {
                    out.labels[static_cast<std::size_t>(ni)] = label;
                    stack.push_back(ni);
                }
            };
            if (conn == Connectivity::Face6) {
                visit(x - 1, y, z); visit(x + 1, y, z);
                visit(x, y - 1, z); visit(x, y + 1, z);
                visit(x, y, z - 1); visit(x, y, z + 1);
            } else {
                for (int dz = -1; dz <= 1; ++dz)
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            if (!dx && !dy && !dz) continue;
                            visit(x + dx, y + dy, z + dz);
                        }
            }
        }
    }
    return out;
}

struct TopologySummary {
    std::int64_t chi = 0;
    std::int64_t b0 = 0, b1 = 0, b2 = 0;
};

/// Betti numbers under closed-cube semantics: foreground components are
/// vertex-26, cavities are face-6 components of the complement that do not
/// reach the frame boundary, and b1 closes the Euler relation
/// chi = b0 - b1 + b2.
inline TopologySummary betti(const VoxelGrid& g) {
    TopologySummary t;
    t.chi = euler(g);
    t.b0 = label_components(g, Connectivity::Vertex26).count;

    VoxelGrid comp = complement(g);
    Labeling cl = label_components(comp, Connectivity::Face6);
    const Dims d = g.dims();
    std::vector<std::uint8_t> touches(static_cast<std::size_t>(cl.count) + 1, 0);
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                bool boundary = x == 0 || y == 0 || z == 0 ||
                                x == d.nx - 1 || y == d.ny - 1 || z == d.nz - 1;
                if (!boundary) continue;
                std::int32_t l = cl.labels[static_cast<std::size_t>(g.index(x, y, z))];
                if (l > 0) touches[static_cast<std::size_t>(l)] = 1;
            }
    for (int l = 1; l <= cl.count; ++l)
        if (!touches[static_cast<std::size_t>(l)]) ++t.b2;
    t.b1 = t.b0 + t.b2 - t.chi;
    return t;
}

// ---------------------------------------------------------------------------
// 2D variants for the slice pipeline (chi = n0 - n1 + n2 of the planar
// closure; holes are bounded 4-connected complement components in-plane).
// ---------------------------------------------------------------------------

struct TopologySummary2D {
    std::int64_t chi = 0;
    std::int64_t b0 = 0, b1 = 0;
};

inline std::int64_t euler_2d(const VoxelGrid& slab) {
    if (slab.dims().nz != 1) throw std::invalid_argument("euler_2d: nz must be 1");
    const Dims d = slab.dims();
    std::int64_t n0 = 0, n1 = 0, n2 = 0;
    auto occ = [&](int x, int y) { return slab.at_clamped(x, y, 0); };
    for (int y = 0; y <= d.ny; ++y)
        for (int x = 0; x <= d.nx; ++x)
            if (occ(x - 1, y - 1) || occ(x, y - 1) || occ(x - 1, y) || occ(x, y)) ++n0;
    for (int y = 0; y <= d.ny; ++y)
        for (int x = 0; x < d.nx; ++x)
            if (occ(x, y - 1) || occ(x, y)) ++n1;
    for (int y = 0; y < d.ny; ++y)
        for (int x = 0; x <= d.nx; ++x)
            if (occ(x - 1, y) || occ(x, y)) ++n1;
    for (int y = 0; y < d.ny; ++y)
        for (int x = 0; x < d.nx; ++x)
            if (occ(x, y)) ++n2;
    return n0 - n1 + n2;
}

inline TopologySummary2D betti_2d(const VoxelGrid& slab) {
    TopologySummary2D t;
    t.chi = euler_2d(slab);
    t.b0 = label_components(slab, Connectivity::Vertex26).count; // = 8-connectivity in-plane
    VoxelGrid comp = complement(slab);
    Labeling cl = label_components(comp, Connectivity::Face6); // = 4-connectivity in-plane
    const Dims d = slab.dims();
    std::vector<std::uint8_t> touches(static_cast<std::size_t>(cl.count) + 1, 0);
    for (int y = 0; y < d.ny; ++y)
        for (int x = 0; x < d.nx; ++x) {
            if (x != 0 && y != 0 && x != d.nx - 1 && y != d.ny - 1) continue;
            std::int32_t l = cl.labels[static_cast<std::size_t>(slab.index(x, y, 0))];
            if (l > 0) touches[static_cast<std::size_t>(l)] = 1;
        }
    std::int64_t bounded = 0;
    for (int l = 1; l <= cl.count; ++l)
        if (!touches[static_cast<std::size_t>(l)]) ++bounded;
    t.b1 = bounded;
    return t;
}

} // namespace voxcta
