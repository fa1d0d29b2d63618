#pragma once

#include <cstdint>
#include <vector>

#include "voxcta/fftconv.hpp"
#include "voxcta/grid.hpp"
#include "voxcta/rational.hpp"

namespace voxcta {

/// Overlap-measure field over the translational configuration lattice.
/// The lattice coincides with the design frame; value(t) is the exact
/// number of voxels shared by the design and the MMN displaced so that
/// its center voxel sits at t. Values are integers, never floats.
struct OverlapField {
    Dims dims;
    double spacing = 1.0;
    std::array<double, 3> origin = {0, 0, 0};
    std::vector<std::int64_t> values;
    std::int64_t mmn_measure = 0;  // |B| in voxels
    double max_fft_deviation = 0.0;

    std::int64_t at(int x, int y, int z) const {
        return values[static_cast<std::size_t>(x) +
                      static_cast<std::size_t>(dims.nx) *
                          (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims.ny) * z)];
    }

    /// OM ratio at a lattice index, as an exact rational in [0, 1].
    Rational omr(std::size_t idx) const { return Rational(values[idx], mmn_measure); }
};

/// FFT path: O(n^d log n). Each output is rounded to the nearest integer
/// and the worst pre-rounding deviation is audited; a deviation >= 0.5
/// means the transform can no longer be trusted and raises PrecisionError.
inline OverlapField overlap_field_fft(const VoxelGrid& design, const VoxelGrid& mmn) {
    if (design.empty() || mmn.empty())
        throw std::invalid_argument("overlap_field_fft: empty operand");
    fft::IntField f = fft::transform(design, mmn, fft::Mode::Correlate);
    if (f.max_deviation >= 0.5)
        throw PrecisionError("overlap_field_fft: FFT deviation " +
                             std::to_string(f.max_deviation) +
                             " >= 0.5; split the grid or use the direct path");
    OverlapField out;
    out.dims = f.dims;
    out.spacing = design.spacing();
    out.origin = design.origin();
    out.values = std::move(f.values);
    out.mmn_measure = mmn.voxel_count();
    out.max_fft_deviation = f.max_deviation;
    return out;
}

/// Naive displacement-and-count path, O(n^2d). Kept as the oracle the FFT
/// path is verified against; guarded by a configurable work bound.
inline OverlapField overlap_field_direct(const VoxelGrid& design, const VoxelGrid& mmn,
                                         std::int64_t work_bound = (std::int64_t{1} << 33)) {
    if (design.empty() || mmn.empty())
        throw std::invalid_argument("overlap_field_direct: empty operand");
    std::vector<std::array<int, 3>> kernel_voxels;
    const Dims dk = mmn.dims();
    const auto c = mmn_center(mmn);
    for (int z = 0; z < dk.nz; ++z)
        for (int y = 0; y < dk.ny; ++y)
            for (int x = 0; x < dk.nx; ++x)
                if (mmn.at(x, y, z))
                    kernel_voxels.push_back({x - c[0], y - c[1], z - c[2]});

    const Dims d = design.dims();
    const std::int64_t work = d.count() * static_cast<std::int64_t>(kernel_voxels.size());
    if (work > work_bound)
        throw WorkBoundError("overlap_field_direct: " + std::to_string(work) +
                             " voxel pairs exceed bound " + std::to_string(work_bound));

    OverlapField out;
    out.dims = d;
    out.spacing = design.spacing();
    out.origin = design.origin();
    out.values.assign(static_cast<std::size_t>(d.count()), 0);
    out.mmn_measure = static_cast<std::int64_t>(kernel_voxels.size());
    std::size_t idx = 0;
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x, ++idx) {
                std::int64_t n = 0;
                for (const auto& kv : kernel_voxels)
                    if (design.at_clamped(x + kv[0], y + kv[1], z + kv[2])) ++n;
                out.values[idx] = n;
            }
    return out;
}

/// Normalized field value(t)/|B| as exact rationals.
inline std::vector<Rational> omr(const OverlapField& f) {
    if (f.mmn_measure <= 0) throw std::invalid_argument("omr: mmn_measure must be > 0");
    std::vector<Rational> out;
    out.reserve(f.values.size());
    for (auto v : f.values) out.emplace_back(v, f.mmn_measure);
    return out;
}

} // namespace voxcta
