#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "voxcta/grid.hpp"
#include "voxcta/mmn.hpp"

namespace voxcta {
namespace fft {

/// Smallest N >= n whose prime factors are all in {2,3,5,7} (fast FFTW sizes).
inline int next_fast_size(int n) {
    for (int m = n;; ++m) {
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

enum class Mode {
    Correlate, // out[t] = sum_x a(x) * k(x - t + c)   (overlap measure)
    Convolve   // out[x] = sum_t a(t) * k(x - t + c)   (sweep / Minkowski sum)
};

struct IntField {
    Dims dims;                     // = dims of `a` (motion lattice == grid lattice)
    std::vector<std::int64_t> values;
    double max_deviation = 0.0;    // worst pre-rounding distance from an integer
};

namespace detail {

// FFTW planner is not thread-safe; execution of independent plans is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanPair {
    fftw_plan fwd = nullptr, bwd = nullptr;
    ~PlanPair() {
        std::lock_guard<std::mutex> lk(planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }
};

} // namespace detail

/// Exact integer correlation/convolution of two 0/1 grids via a padded
/// real-to-complex FFT. Both operands are binary, so true outputs are
/// integers; the transform result is rounded back and the worst deviation
/// is recorded for the caller's precision audit.
///
/// The kernel's center voxel is the reference point: Correlate yields the
/// overlap measure of the kernel displaced to every lattice point of `a`;
/// Convolve yields the multiplicity field of the kernel swept along `a`.
/// The output is cropped to the frame of `a`.
inline IntField transform(const VoxelGrid& a, const VoxelGrid& kernel, Mode mode) {
    const Dims da = a.dims(), dk = kernel.dims();
    const int px = next_fast_size(da.nx + dk.nx - 1);
    const int py = next_fast_size(da.ny + dk.ny - 1);
    const int pz = next_fast_size(da.nz + dk.nz - 1);
    const std::size_t total = static_cast<std::size_t>(px) * py * pz;
    const std::size_t ctotal = static_cast<std::size_t>(px) * py * (pz / 2 + 1);

    std::vector<double> bufA(total, 0.0), bufK(total, 0.0);
    std::vector<std::complex<double>> freqA(ctotal), freqK(ctotal);

    auto pidx = [&](int x, int y, int z) {
        return (static_cast<std::size_t>(x) * py + y) * pz + z;
    };
    for (int z = 0; z < da.nz; ++z)
        for (int y = 0; y < da.ny; ++y)
            for (int x = 0; x < da.nx; ++x)
                if (a.at(x, y, z)) bufA[pidx(x, y, z)] = 1.0;

    const auto c = mmn_center(kernel);
    auto wrap = [](int v, int p) { return ((v % p) + p) % p; };
    for (int z = 0; z < dk.nz; ++z)
        for (int y = 0; y < dk.ny; ++y)
            for (int x = 0; x < dk.nx; ++x) {
                if (!kernel.at(x, y, z)) continue;
                int vx, vy, vz;
                if (mode == Mode::Correlate) {
                    vx = c[0] - x; vy = c[1] - y; vz = c[2] - z;
                } else {
                    vx = x - c[0]; vy = y - c[1]; vz = z - c[2];
                }
                bufK[pidx(wrap(vx, px), wrap(vy, py), wrap(vz, pz))] = 1.0;
            }

    detail::PlanPair plans;
    {
        std::lock_guard<std::mutex> lk(detail::planner_mutex());
        plans.fwd = fftw_plan_dft_r2c_3d(px, py, pz, bufA.data(),
                                         reinterpret_cast<fftw_complex*>(freqA.data()),
                                         FFTW_ESTIMATE);
        plans.bwd = fftw_plan_dft_c2r_3d(px, py, pz,
                                         reinterpret_cast<fftw_complex*>(freqA.data()),
                                         bufA.data(), FFTW_ESTIMATE);
    }
    fftw_execute_dft_r2c(plans.fwd, bufA.data(), reinterpret_cast<fftw_complex*>(freqA.data()));
    fftw_execute_dft_r2c(plans.fwd, bufK.data(), reinterpret_cast<fftw_complex*>(freqK.data()));
    for (std::size_t i = 0; i < ctotal; ++i) freqA[i] *= freqK[i];
    fftw_execute_dft_c2r(plans.bwd, reinterpret_cast<fftw_complex*>(freqA.data()), bufA.data());

    IntField out;
    out.dims = da;
    out.values.resize(static_cast<std::size_t>(da.count()));
    const double scale = 1.0 / static_cast<double>(total);
    for (int z = 0; z < da.nz; ++z)
        for (int y = 0; y < da.ny; ++y)
            for (int x = 0; x < da.nx; ++x) {
                double v = bufA[pidx(x, y, z)] * scale;
                double r = std::round(v);
                out.max_deviation = std::max(out.max_deviation, std::abs(v - r));
                out.values[static_cast<std::size_t>(a.index(x, y, z))] =
                    static_cast<std::int64_t>(r);
            }
    return out;
}

} // namespace fft
} // namespace voxcta
