#pragma once

#include <vector>

#include "voxcta/grid.hpp"

namespace voxcta {

enum class Axis { X, Y, Z };

inline Axis parse_axis(const std::string& s) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    if (s == "z" || s == "Z") return Axis::Z;
    throw ParseError("bad axis: " + s + " (expected x, y or z)");
}

/// One layer of a grid along a build direction. Represented as a 2D
/// occupancy (nx, ny) in slice-local coordinates; the 2D pipeline lifts
/// it back to an nz=1 VoxelGrid when it needs the shared machinery.
struct Slice {
    int nx = 1, ny = 1;
    double spacing = 1.0;
    std::array<double, 2> origin = {0, 0};
    std::vector<std::uint8_t> occ;

    bool at(int x, int y) const { return occ[static_cast<std::size_t>(y) * nx + x] != 0; }
    void set(int x, int y, bool v = true) { occ[static_cast<std::size_t>(y) * nx + x] = v ? 1 : 0; }

    std::int64_t pixel_count() const {
        std::int64_t n = 0;
        for (auto v : occ) n += v;
        return n;
    }

    VoxelGrid as_grid() const {
        VoxelGrid g({nx, ny, 1}, spacing, {origin[0], origin[1], 0.0});
        g.raw().assign(occ.begin(), occ.end());
        return g;
    }
    static Slice from_grid(const VoxelGrid& g) {
        if (g.dims().nz != 1) throw std::invalid_argument("Slice::from_grid: nz must be 1");
        Slice s;
        s.nx = g.dims().nx;
        s.ny = g.dims().ny;
        s.spacing = g.spacing();
        s.origin = {g.origin()[0], g.origin()[1]};
        s.occ.assign(g.raw().begin(), g.raw().end());
        return s;
    }
};

/// Cut a grid into layers along the given axis. Restacking the result in
/// order reproduces the grid exactly.
inline std::vector<Slice> extract_slices(const VoxelGrid& g, Axis axis) {
    const Dims d = g.dims();
    int layers = axis == Axis::X ? d.nx : axis == Axis::Y ? d.ny : d.nz;
    std::vector<Slice> out;
    out.reserve(static_cast<std::size_t>(layers));
    for (int l = 0; l < layers; ++l) {
        Slice s;
        s.spacing = g.spacing();
        switch (axis) {
            case Axis::X:
                s.nx = d.ny; s.ny = d.nz;
                s.origin = {g.origin()[1], g.origin()[2]};
                s.occ.assign(static_cast<std::size_t>(s.nx) * s.ny, 0);
                for (int z = 0; z < d.nz; ++z)
                    for (int y = 0; y < d.ny; ++y)
                        if (g.at(l, y, z)) s.set(y, z);
                break;
            case Axis::Y:
                s.nx = d.nx; s.ny = d.nz;
                s.origin = {g.origin()[0], g.origin()[2]};
                s.occ.assign(static_cast<std::size_t>(s.nx) * s.ny, 0);
                for (int z = 0; z < d.nz; ++z)
                    for (int x = 0; x < d.nx; ++x)
                        if (g.at(x, l, z)) s.set(x, z);
                break;
            case Axis::Z:
                s.nx = d.nx; s.ny = d.ny;
                s.origin = {g.origin()[0], g.origin()[1]};
                s.occ.assign(static_cast<std::size_t>(s.nx) * s.ny, 0);
                for (int y = 0; y < d.ny; ++y)
                    for (int x = 0; x < d.nx; ++x)
                        if (g.at(x, y, l)) s.set(x, y);
                break;
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Inverse of extract_slices.
inline VoxelGrid restack_slices(const std::vector<Slice>& slices, Axis axis,
                                double spacing = 1.0, std::array<double, 3> origin = {0, 0, 0}) {
    if (slices.empty()) throw std::invalid_argument("restack_slices: no slices");
    int n = static_cast<int>(slices.size());
    Dims d;
    switch (axis) {
        case Axis::X: d = {n, slices[0].nx, slices[0].ny}; break;
        case Axis::Y: d = {slices[0].nx, n, slices[0].ny}; break;
        case Axis::Z: d = {slices[0].nx, slices[0].ny, n}; break;
    }
    VoxelGrid g(d, spacing, origin);
    for (int l = 0; l < n; ++l) {
        const Slice& s = slices[static_cast<std::size_t>(l)];
        for (int b = 0; b < s.ny; ++b)
            for (int a = 0; a < s.nx; ++a) {
                if (!s.at(a, b)) continue;
                switch (axis) {
                    case Axis::X: g.set(l, a, b); break;
                    case Axis::Y: g.set(a, l, b); break;
                    case Axis::Z: g.set(a, b, l); break;
                }
            }
    }
    return g;
}

} // namespace voxcta
