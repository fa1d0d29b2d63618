#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "voxcta/grid.hpp"

namespace voxcta {

enum class MmnShape { Sphere, Cube, Diamond, Ellipsoid, Cylinder };

/// Shape of the minimum manufacturable neighborhood (the structuring
/// element of every morphological operation). Sizes are in voxels.
struct MmnSpec {
    MmnShape shape = MmnShape::Diamond;
    // sphere/diamond: params = {radius}
    // cube: params = {half_extent}
    // ellipsoid: params = {rx, ry, rz}
    // cylinder: params = {radius, half_height} (axis = z)
    std::vector<int> params = {1};

    std::string to_string() const {
        std::ostringstream os;
        switch (shape) {
            case MmnShape::Sphere: os << "sphere"; break;
            case MmnShape::Cube: os << "cube"; break;
            case MmnShape::Diamond: os << "diamond"; break;
            case MmnShape::Ellipsoid: os << "ellipsoid"; break;
            case MmnShape::Cylinder: os << "cylinder"; break;
        }
        for (std::size_t i = 0; i < params.size(); ++i) os << (i ? ',' : ':') << params[i];
        return os.str();
    }
};

/// Parse "diamond:1", "sphere:2", "cube:0", "ellipsoid:2,3,1", "cylinder:2,1".
inline MmnSpec parse_mmn_spec(const std::string& s) {
    auto colon = s.find(':');
    std::string name = s.substr(0, colon);
    MmnSpec spec;
    std::size_t expected = 1;
    if (name == "sphere") spec.shape = MmnShape::Sphere;
    else if (name == "cube") spec.shape = MmnShape::Cube;
    else if (name == "diamond") spec.shape = MmnShape::Diamond;
    else if (name == "ellipsoid") { spec.shape = MmnShape::Ellipsoid; expected = 3; }
    else if (name == "cylinder") { spec.shape = MmnShape::Cylinder; expected = 2; }
    else throw ParseError("unknown MMN shape: " + name);

    spec.params.clear();
    if (colon != std::string::npos) {
        std::stringstream ps(s.substr(colon + 1));
        std::string tok;
        while (std::getline(ps, tok, ',')) {
            try {
                spec.params.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw ParseError("bad MMN size parameter: " + tok);
            }
        }
    }
    if (spec.params.size() != expected)
        throw ParseError("MMN shape " + name + " needs " + std::to_string(expected) +
                         " size parameter(s)");
    return spec;
}

namespace detail {
inline VoxelGrid mmn_from_predicate(int hx, int hy, int hz, auto&& inside) {
    VoxelGrid g({2 * hx + 1, 2 * hy + 1, 2 * hz + 1});
    for (int z = -hz; z <= hz; ++z)
        for (int y = -hy; y <= hy; ++y)
            for (int x = -hx; x <= hx; ++x)
                if (inside(x, y, z)) g.set(x + hx, y + hy, z + hz);
    return g;
}
} // namespace detail

/// Build the MMN occupancy grid. The center voxel of the returned grid is
/// the instrument reference point used by all correlation/sweep code.
/// Always nonempty; half-extent 0 degenerates to a single voxel.
inline VoxelGrid make_mmn(const MmnSpec& spec) {
    for (int p : spec.params)
        if (p < 0) throw std::invalid_argument("make_mmn: negative size parameter");
    using detail::mmn_from_predicate;
    switch (spec.shape) {
        case MmnShape::Sphere: {
            int r = spec.params[0];
            return mmn_from_predicate(r, r, r, [r](int x, int y, int z) {
                return x * x + y * y + z * z <= r * r;
            });
        }
        case MmnShape::Cube: {
            int h = spec.params[0];
            return mmn_from_predicate(h, h, h, [](int, int, int) { return true; });
        }
        case MmnShape::Diamond: {
            int r = spec.params[0];
            return mmn_from_predicate(r, r, r, [r](int x, int y, int z) {
                return std::abs(x) + std::abs(y) + std::abs(z) <= r;
            });
        }
        case MmnShape::Ellipsoid: {
            int rx = spec.params[0], ry = spec.params[1], rz = spec.params[2];
            return mmn_from_predicate(rx, ry, rz, [&](int x, int y, int z) {
                double s = 0;
                if (rx) s += double(x) * x / (double(rx) * rx); else if (x) return false;
                if (ry) s += double(y) * y / (double(ry) * ry); else if (y) return false;
                if (rz) s += double(z) * z / (double(rz) * rz); else if (z) return false;
                return s <= 1.0 + 1e-12;
            });
        }
        case MmnShape::Cylinder: {
            int r = spec.params[0], h = spec.params[1];
            return mmn_from_predicate(r, r, h, [r](int x, int y, int) {
                return x * x + y * y <= r * r;
            });
        }
    }
    throw std::logic_error("make_mmn: unreachable");
}

/// 2D variant for the slice pipeline: same shapes flattened to one layer
/// (nz = 1). "sphere"/"cylinder" become disks, "diamond" the L1 disk.
inline VoxelGrid make_mmn_2d(const MmnSpec& spec) {
    MmnSpec flat = spec;
    if (flat.shape == MmnShape::Ellipsoid) flat.params[2] = 0;
    VoxelGrid g3 = make_mmn(flat);
    // keep only the central layer
    int zc = (g3.dims().nz - 1) / 2;
    VoxelGrid g({g3.dims().nx, g3.dims().ny, 1});
    for (int y = 0; y < g3.dims().ny; ++y)
        for (int x = 0; x < g3.dims().nx; ++x)
            if (g3.at(x, y, zc)) g.set(x, y, 0);
    return g;
}

/// Center voxel index of an MMN grid (the instrument reference point).
inline std::array<int, 3> mmn_center(const VoxelGrid& g) {
    return {(g.dims().nx - 1) / 2, (g.dims().ny - 1) / 2, (g.dims().nz - 1) / 2};
}

/// Max Euclidean distance (in voxels) from the center voxel to any
/// occupied voxel. Used by the corrector's bump radius rule.
inline double mmn_circumradius(const VoxelGrid& g) {
    auto c = mmn_center(g);
    double r2max = 0;
    for (int z = 0; z < g.dims().nz; ++z)
        for (int y = 0; y < g.dims().ny; ++y)
            for (int x = 0; x < g.dims().nx; ++x)
                if (g.at(x, y, z)) {
                    double dx = x - c[0], dy = y - c[1], dz = z - c[2];
                    r2max = std::max(r2max, dx * dx + dy * dy + dz * dz);
                }
    return std::sqrt(r2max);
}

} // namespace voxcta
