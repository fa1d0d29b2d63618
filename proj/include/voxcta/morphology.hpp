#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "voxcta/fftconv.hpp"
#include "voxcta/measure.hpp"
#include "voxcta/rational.hpp"

namespace voxcta {

/// Superlevel set of the overlap field: the AM instrument translations
/// admitted by a (possibly non-uniform) OMR threshold. Lives on the
/// design lattice.
struct MotionSet {
    VoxelGrid grid;
    std::optional<Rational> lambda; // set for uniform thresholds
};

/// Non-uniform OMR threshold field: a constant base term plus compactly
/// supported radial bumps lambda_j * max(0, 1 - |t - c_j|/r_j)^2.
/// Evaluation is clamped into [0, 1 - 2^-20].
struct OmrtField {
    struct Bump {
        std::array<int, 3> center; // lattice point
        double radius;             // voxels, > 0
        Rational coeff;            // signed
    };

    Rational base{0, 1};
    std::vector<Bump> bumps;

    static Rational clamp_max() { return Rational{(1 << 20) - 1, 1 << 20}; }

    /// Adding a bump at an existing (center, radius) accumulates coefficients.
    void add_bump(std::array<int, 3> center, double radius, Rational coeff) {
        for (auto& b : bumps)
            if (b.center == center && b.radius == radius) {
                b.coeff = b.coeff + coeff;
                return;
            }
        bumps.push_back({center, radius, coeff});
    }

    /// Sum of bump terms at t (0 when no bump covers t).
    double bump_sum(int x, int y, int z) const {
        double s = 0.0;
        for (const auto& b : bumps) {
            double dx = x - b.center[0], dy = y - b.center[1], dz = z - b.center[2];
            double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
            if (dist >= b.radius) continue;
            double w = 1.0 - dist / b.radius;
            s += b.coeff.to_double() * w * w;
        }
        return s;
    }

    double eval(int x, int y, int z) const {
        double v = base.to_double() + bump_sum(x, y, z);
        return std::min(std::max(v, 0.0), clamp_max().to_double());
    }
};

/// Uniform-threshold motion set: occupied(t) iff OM(t) > lambda * |B|,
/// decided in exact integer arithmetic.
inline MotionSet motion_set(const OverlapField& field, const Rational& lambda) {
    if (lambda < Rational{0, 1} || !(lambda < Rational{1, 1}))
        throw std::invalid_argument("motion_set: lambda must be in [0, 1)");
    MotionSet m;
    m.lambda = lambda;
    m.grid = VoxelGrid(field.dims, field.spacing, field.origin);
    auto& occ = m.grid.raw();
    for (std::size_t i = 0; i < field.values.size(); ++i)
        occ[i] = lambda.scaled_less_than(field.mmn_measure, field.values[i]) ? 1 : 0;
    return m;
}

/// Non-uniform threshold. Lattice points not covered by any bump fall back
/// to the exact rational comparison against the (clamped) base term, so
/// the bump-free field reduces bit-exactly to motion_set.
inline MotionSet motion_set_nonuniform(const OverlapField& field, const OmrtField& omrt) {
    MotionSet m;
    m.grid = VoxelGrid(field.dims, field.spacing, field.origin);
    Rational base = omrt.base;
    if (base < Rational{0, 1}) base = Rational{0, 1};
    if (OmrtField::clamp_max() < base) base = OmrtField::clamp_max();
    auto& occ = m.grid.raw();
    const Dims d = field.dims;
    std::size_t i = 0;
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x, ++i) {
                double bs = omrt.bump_sum(x, y, z);
                if (bs == 0.0) {
                    occ[i] = base.scaled_less_than(field.mmn_measure, field.values[i]) ? 1 : 0;
                } else {
                    double lam = omrt.eval(x, y, z);
                    occ[i] = static_cast<double>(field.values[i]) >
                                     lam * static_cast<double>(field.mmn_measure)
                                 ? 1
                                 : 0;
                }
            }
    return m;
}

/// Minkowski sum of the motion set with the MMN (the deposition sweep),
/// via the exact convolution engine with support thresholding. Output is
/// clamped to the design frame.
inline VoxelGrid sweep(const MotionSet& motion, const VoxelGrid& mmn) {
    fft::IntField f = fft::transform(motion.grid, mmn, fft::Mode::Convolve);
    if (f.max_deviation >= 0.5)
        throw PrecisionError("sweep: FFT deviation " + std::to_string(f.max_deviation) +
                             " >= 0.5");
    VoxelGrid out(motion.grid.dims(), motion.grid.spacing(), motion.grid.origin());
    auto& occ = out.raw();
    for (std::size_t i = 0; i < occ.size(); ++i) occ[i] = f.values[i] > 0 ? 1 : 0;
    return out;
}

/// Brute-force sweep oracle: union of translated MMN copies.
inline VoxelGrid sweep_direct(const MotionSet& motion, const VoxelGrid& mmn) {
    const Dims d = motion.grid.dims();
    const Dims dk = mmn.dims();
    const auto c = mmn_center(mmn);
    VoxelGrid out(d, motion.grid.spacing(), motion.grid.origin());
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                if (!motion.grid.at(x, y, z)) continue;
                for (int kz = 0; kz < dk.nz; ++kz)
                    for (int ky = 0; ky < dk.ny; ++ky)
                        for (int kx = 0; kx < dk.nx; ++kx) {
                            if (!mmn.at(kx, ky, kz)) continue;
                            int px = x + kx - c[0], py = y + ky - c[1], pz = z + kz - c[2];
                            if (px >= 0 && py >= 0 && pz >= 0 && px < d.nx && py < d.ny &&
                                pz < d.nz)
                                out.set(px, py, pz);
                        }
            }
    return out;
}

inline VoxelGrid as_manufactured(const VoxelGrid& design, const VoxelGrid& mmn,
                                 const Rational& lambda) {
    OverlapField f = overlap_field_fft(design, mmn);
    return sweep(motion_set(f, lambda), mmn);
}

inline VoxelGrid as_manufactured_nonuniform(const VoxelGrid& design, const VoxelGrid& mmn,
                                            const OmrtField& omrt) {
    OverlapField f = overlap_field_fft(design, mmn);
    return sweep(motion_set_nonuniform(f, omrt), mmn);
}

/// Evaluate the whole one-parameter family off a single overlap field.
/// Requires strictly ascending lambdas; results are nested:
/// lambda_a < lambda_b implies member(lambda_b) subset of member(lambda_a).
inline std::vector<std::pair<Rational, VoxelGrid>> family(const VoxelGrid& design,
                                                          const VoxelGrid& mmn,
                                                          const std::vector<Rational>& lambdas) {
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (!(lambdas[i - 1] < lambdas[i]))
            throw std::invalid_argument("family: lambdas must be strictly ascending");
    OverlapField f = overlap_field_fft(design, mmn);
    std::vector<std::pair<Rational, VoxelGrid>> out;
    out.reserve(lambdas.size());
    for (const auto& lam : lambdas)
        out.emplace_back(lam, sweep(motion_set(f, lam), mmn));
    return out;
}

/// lambda -> 1^- extreme: morphological opening (D erode -B, dilate B).
/// Realized exactly as the full-containment motion set OM(t) = |B|.
inline VoxelGrid extreme_min_ud(const VoxelGrid& design, const VoxelGrid& mmn) {
    OverlapField f = overlap_field_fft(design, mmn);
    MotionSet m;
    m.grid = VoxelGrid(f.dims, f.spacing, f.origin);
    auto& occ = m.grid.raw();
    for (std::size_t i = 0; i < f.values.size(); ++i)
        occ[i] = f.values[i] == f.mmn_measure ? 1 : 0;
    return sweep(m, mmn);
}

/// lambda -> 0^+ extreme: double offset (D dilate -B, dilate B).
/// Realized exactly as the support motion set OM(t) >= 1.
inline VoxelGrid extreme_max_od(const VoxelGrid& design, const VoxelGrid& mmn) {
    OverlapField f = overlap_field_fft(design, mmn);
    return sweep(motion_set(f, Rational{0, 1}), mmn);
}

} // namespace voxcta
