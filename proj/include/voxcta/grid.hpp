#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "voxcta/errors.hpp"

namespace voxcta {

struct Dims {
    int nx = 1, ny = 1, nz = 1;

    friend bool operator==(const Dims&, const Dims&) = default;
    std::int64_t count() const {
        return static_cast<std::int64_t>(nx) * ny * nz;
    }
};

/// Binary occupancy lattice with physical metadata. A grid denotes the
/// closed regular set formed by the union of the closed unit cubes of its
/// occupied voxels, so regularized boolean operations reduce to plain
/// voxelwise logic. Storage is row-major with x fastest: idx = x + nx*(y + ny*z).
///
/// Grids are treated as immutable values after construction; every
/// operation below allocates a fresh output.
class VoxelGrid {
public:
    VoxelGrid() : occ_(1, 0) {}
    VoxelGrid(Dims dims, double spacing = 1.0, std::array<double, 3> origin = {0, 0, 0})
        : dims_(dims), spacing_(spacing), origin_(origin), occ_(check_size(dims), 0) {
        if (spacing <= 0.0) throw std::invalid_argument("VoxelGrid: spacing must be > 0");
    }

    const Dims& dims() const { return dims_; }
    double spacing() const { return spacing_; }
    const std::array<double, 3>& origin() const { return origin_; }

    std::int64_t index(int x, int y, int z) const {
        return static_cast<std::int64_t>(x) + static_cast<std::int64_t>(dims_.nx) *
               (static_cast<std::int64_t>(y) + static_cast<std::int64_t>(dims_.ny) * z);
    }
    bool at(int x, int y, int z) const { return occ_[index(x, y, z)] != 0; }
    bool at(std::int64_t idx) const { return occ_[idx] != 0; }

    /// Bounds-checked read; out-of-frame is empty space.
    bool at_clamped(int x, int y, int z) const {
        if (x < 0 || y < 0 || z < 0 || x >= dims_.nx || y >= dims_.ny || z >= dims_.nz)
            return false;
        return at(x, y, z);
    }

    void set(int x, int y, int z, bool v = true) { occ_[index(x, y, z)] = v ? 1 : 0; }
    void set(std::int64_t idx, bool v = true) { occ_[idx] = v ? 1 : 0; }

    std::int64_t voxel_count() const {
        std::int64_t n = 0;
        for (auto v : occ_) n += v;
        return n;
    }
    bool empty() const { return voxel_count() == 0; }

    const std::vector<std::uint8_t>& raw() const { return occ_; }
    std::vector<std::uint8_t>& raw() { return occ_; }

    bool same_frame(const VoxelGrid& o) const {
        return dims_ == o.dims_ && spacing_ == o.spacing_ && origin_ == o.origin_;
    }

    friend bool operator==(const VoxelGrid& a, const VoxelGrid& b) {
        return a.same_frame(b) && a.occ_ == b.occ_;
    }

private:
    static std::size_t check_size(Dims d) {
        if (d.nx < 1 || d.ny < 1 || d.nz < 1)
            throw std::invalid_argument("VoxelGrid: dims must be >= 1");
        return static_cast<std::size_t>(d.count());
    }

    Dims dims_;
    double spacing_ = 1.0;
    std::array<double, 3> origin_ = {0, 0, 0};
    std::vector<std::uint8_t> occ_;
};

inline void require_same_frame(const VoxelGrid& a, const VoxelGrid& b, const char* op) {
    if (!a.same_frame(b))
        throw FrameMismatchError(std::string(op) + ": grids do not share dims/spacing/origin");
}

/// Regularized intersection: voxelwise AND.
inline VoxelGrid intersect_reg(const VoxelGrid& a, const VoxelGrid& b) {
    require_same_frame(a, b, "intersect_reg");
    VoxelGrid r(a.dims(), a.spacing(), a.origin());
    const auto& pa = a.raw();
    const auto& pb = b.raw();
    auto& pr = r.raw();
    for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = pa[i] & pb[i];
    return r;
}

/// Regularized difference: voxelwise AND-NOT.
inline VoxelGrid subtract_reg(const VoxelGrid& a, const VoxelGrid& b) {
    require_same_frame(a, b, "subtract_reg");
    VoxelGrid r(a.dims(), a.spacing(), a.origin());
    const auto& pa = a.raw();
    const auto& pb = b.raw();
    auto& pr = r.raw();
    for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = pa[i] & static_cast<std::uint8_t>(!pb[i]);
    return r;
}

/// Set union (regularization-free for closed-regular operands).
inline VoxelGrid union_set(const VoxelGrid& a, const VoxelGrid& b) {
    require_same_frame(a, b, "union_set");
    VoxelGrid r(a.dims(), a.spacing(), a.origin());
    const auto& pa = a.raw();
    const auto& pb = b.raw();
    auto& pr = r.raw();
    for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = pa[i] | pb[i];
    return r;
}

/// Complement within the frame.
inline VoxelGrid complement(const VoxelGrid& a) {
    VoxelGrid r(a.dims(), a.spacing(), a.origin());
    const auto& pa = a.raw();
    auto& pr = r.raw();
    for (std::size_t i = 0; i < pr.size(); ++i) pr[i] = static_cast<std::uint8_t>(!pa[i]);
    return r;
}

/// Point reflection about the grid center: (x,y,z) -> (nx-1-x, ny-1-y, nz-1-z).
/// An involution; voxel count is preserved.
inline VoxelGrid reflect(const VoxelGrid& g) {
    VoxelGrid r(g.dims(), g.spacing(), g.origin());
    const Dims d = g.dims();
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (g.at(x, y, z)) r.set(d.nx - 1 - x, d.ny - 1 - y, d.nz - 1 - z);
    return r;
}

} // namespace voxcta
