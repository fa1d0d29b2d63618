#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>
#include <string>
#include <vector>

#include "voxcta/cubical.hpp"
#include "voxcta/grid.hpp"

namespace voxcta {

enum class FeatureKind { UD, OD };

inline const char* to_string(FeatureKind k) { return k == FeatureKind::UD ? "UD" : "OD"; }

/// One connected UD/OD component paired with its cut boundary against the
/// common region C. The ECC (chi of the closed solid minus chi of the cut
/// boundary) is this feature's exact contribution to the global EC change;
/// a feature with ECC == 0 is "simple" and topologically invisible.
struct DeviationFeature {
    FeatureKind kind = FeatureKind::UD;
    int id = 0;

    VoxelGrid solid;             // bbox-local occupancy of the component
    std::array<int, 3> offset{}; // bbox min corner in frame coordinates

    CubicalComplex cut_boundary; // counts (n3 always 0)
    std::int64_t chi_solid = 0;
    std::int64_t chi_cut = 0;
    std::int64_t ecc = 0;
    bool simple = true;

    std::int64_t voxel_count = 0;
    std::array<double, 3> centroid{}; // frame lattice coordinates
    std::array<int, 3> bbox_min{}, bbox_max{};

    /// Radius of the bounding sphere around the centroid, in voxels.
    double bounding_radius() const {
        double r = 0;
        for (int a = 0; a < 3; ++a) {
            double lo = centroid[static_cast<std::size_t>(a)] - bbox_min[static_cast<std::size_t>(a)];
            double hi = bbox_max[static_cast<std::size_t>(a)] - centroid[static_cast<std::size_t>(a)];
            double e = std::max(lo, hi) + 0.5;
            r += e * e;
        }
        return std::sqrt(r);
    }
};

/// The full CTA ledger for one (design, manufactured) pair.
struct CtaReport {
    std::int64_t chi_design = 0;
    std::int64_t chi_manufactured = 0;
    std::vector<DeviationFeature> features;
    std::int64_t sum_signed_ecc = 0; // +ecc over OD, -ecc over UD
    bool identity_ok = false;

    std::int64_t design_volume = 0;
    std::int64_t ud_volume = 0, od_volume = 0;
    int ud_components = 0, od_components = 0;

    double seconds_decompose = 0, seconds_features = 0, seconds_total = 0;

    int non_simple_count() const {
        int n = 0;
        for (const auto& f : features) n += f.simple ? 0 : 1;
        return n;
    }
};

/// Split a (design, manufactured) pair into common region, under-deposition
/// and over-deposition: C = D AND M, U = D AND NOT M, O = M AND NOT D.
struct Decomposition {
    VoxelGrid common, under, over;
};

inline Decomposition decompose(const VoxelGrid& design, const VoxelGrid& manufactured) {
    require_same_frame(design, manufactured, "decompose");
    return {intersect_reg(design, manufactured), subtract_reg(design, manufactured),
            subtract_reg(manufactured, design)};
}

namespace detail {

/// chi and cell counts of closure(F) ∩ closure(C), where F is a bbox-local
/// grid placed at `offset` in the frame of c. Iterates only F's doubled
/// bounding box; each shared cell is counted once.
inline CubicalComplex cut_boundary_counts(const VoxelGrid& f_local, std::array<int, 3> offset,
                                          const VoxelGrid& c) {
    CubicalComplex out;
    const Dims d = f_local.dims();
    for (int a = 0; a <= 2 * d.nx; ++a)
        for (int b = 0; b <= 2 * d.ny; ++b)
            for (int cc = 0; cc <= 2 * d.nz; ++cc) {
                if (!cell_in_closure(f_local, a, b, cc)) continue;
                if (!cell_in_closure(c, a + 2 * offset[0], b + 2 * offset[1],
                                     cc + 2 * offset[2]))
                    continue;
                ++out.n[static_cast<std::size_t>((a & 1) + (b & 1) + (cc & 1))];
            }
    return out;
}

} // namespace detail

/// Cut boundary of a feature solid against the common region, as exact
/// cell counts. Precondition (guaranteed by decompose): the regularized
/// intersection of the two solids is empty, so no 3-cells can appear.
inline CubicalComplex cut_boundary(const VoxelGrid& feature_solid, const VoxelGrid& c) {
    require_same_frame(feature_solid, c, "cut_boundary");
    if (!intersect_reg(feature_solid, c).empty())
        throw InternalConsistencyError("cut_boundary: solids overlap volumetrically");
    CubicalComplex out = detail::cut_boundary_counts(feature_solid, {0, 0, 0}, c);
    return out;
}

/// Decompose a UD or OD region into vertex-26 connected features, each
/// with its solid chi, cut-boundary chi and ECC. Output order: |ecc|
/// descending, then voxel count descending, then label ascending.
inline std::vector<DeviationFeature> extract_features(const VoxelGrid& u_or_o, FeatureKind kind,
                                                      const VoxelGrid& c) {
    Labeling lab = label_components(u_or_o, Connectivity::Vertex26);
    const Dims d = u_or_o.dims();

    struct Acc {
        std::array<int, 3> lo{1 << 30, 1 << 30, 1 << 30};
        std::array<int, 3> hi{-1, -1, -1};
        std::int64_t count = 0;
        std::array<std::int64_t, 3> sum{0, 0, 0};
    };
    std::vector<Acc> acc(static_cast<std::size_t>(lab.count));
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x) {
                std::int32_t l = lab.labels[static_cast<std::size_t>(u_or_o.index(x, y, z))];
                if (l == 0) continue;
                Acc& a = acc[static_cast<std::size_t>(l - 1)];
                a.lo = {std::min(a.lo[0], x), std::min(a.lo[1], y), std::min(a.lo[2], z)};
                a.hi = {std::max(a.hi[0], x), std::max(a.hi[1], y), std::max(a.hi[2], z)};
                ++a.count;
                a.sum[0] += x; a.sum[1] += y; a.sum[2] += z;
            }

    std::vector<DeviationFeature> out(static_cast<std::size_t>(lab.count));
    auto build = [&](int li) {
        const Acc& a = acc[static_cast<std::size_t>(li)];
        DeviationFeature f;
        f.kind = kind;
        f.id = li + 1;
        f.offset = a.lo;
        f.bbox_min = a.lo;
        f.bbox_max = a.hi;
        f.voxel_count = a.count;
        for (int ax = 0; ax < 3; ++ax)
            f.centroid[static_cast<std::size_t>(ax)] =
                static_cast<double>(a.sum[static_cast<std::size_t>(ax)]) /
                static_cast<double>(a.count);
        f.solid = VoxelGrid({a.hi[0] - a.lo[0] + 1, a.hi[1] - a.lo[1] + 1, a.hi[2] - a.lo[2] + 1});
        for (int z = a.lo[2]; z <= a.hi[2]; ++z)
            for (int y = a.lo[1]; y <= a.hi[1]; ++y)
                for (int x = a.lo[0]; x <= a.hi[0]; ++x)
                    if (lab.labels[static_cast<std::size_t>(u_or_o.index(x, y, z))] == li + 1)
                        f.solid.set(x - a.lo[0], y - a.lo[1], z - a.lo[2]);
        f.chi_solid = euler(f.solid);
        f.cut_boundary = detail::cut_boundary_counts(f.solid, f.offset, c);
        if (f.cut_boundary.n[3] != 0)
            throw InternalConsistencyError("extract_features: cut boundary has 3-cells");
        f.chi_cut = f.cut_boundary.euler();
        f.ecc = f.chi_solid - f.chi_cut;
        f.simple = f.ecc == 0;
        out[static_cast<std::size_t>(li)] = std::move(f);
    };

    // features are independent; compute them in parallel, merge deterministically
    const int workers = static_cast<int>(std::min<std::size_t>(
        std::max(1u, std::thread::hardware_concurrency()), static_cast<std::size_t>(lab.count)));
    if (workers > 1 && lab.count > 8) {
        std::vector<std::future<void>> jobs;
        std::atomic<int> next{0};
        for (int w = 0; w < workers; ++w)
            jobs.push_back(std::async(std::launch::async, [&] {
                for (int li = next++; li < lab.count; li = next++) build(li);
            }));
        for (auto& j : jobs) j.get();
    } else {
        for (int li = 0; li < lab.count; ++li) build(li);
    }

    std::sort(out.begin(), out.end(), [](const DeviationFeature& a, const DeviationFeature& b) {
        std::int64_t ea = a.ecc < 0 ? -a.ecc : a.ecc, eb = b.ecc < 0 ? -b.ecc : b.ecc;
        if (ea != eb) return ea > eb;
        if (a.voxel_count != b.voxel_count) return a.voxel_count > b.voxel_count;
        return a.id < b.id;
    });
    return out;
}

/// Full comparative topological analysis. The ledger identity
/// chi[M] - chi[D] == sum of signed ECCs holds exactly on every valid run;
/// a violation is an internal bug and throws with a diagnostic dump.
inline CtaReport ledger(const VoxelGrid& design, const VoxelGrid& manufactured,
                        bool use_2d = false) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();

    CtaReport r;
    Decomposition dec = decompose(design, manufactured);
    r.chi_design = use_2d ? euler_2d(design) : euler(design);
    r.chi_manufactured = use_2d ? euler_2d(manufactured) : euler(manufactured);
    r.design_volume = design.voxel_count();
    r.ud_volume = dec.under.voxel_count();
    r.od_volume = dec.over.voxel_count();
    auto t1 = clock::now();

    std::vector<DeviationFeature> ud = extract_features(dec.under, FeatureKind::UD, dec.common);
    std::vector<DeviationFeature> od = extract_features(dec.over, FeatureKind::OD, dec.common);
    r.ud_components = static_cast<int>(ud.size());
    r.od_components = static_cast<int>(od.size());
    auto t2 = clock::now();

    // Note: for nz==1 slabs chi of the 3D closure equals the planar chi,
    // so per-feature ECCs need no 2D special case.
    for (auto& f : ud) r.sum_signed_ecc -= f.ecc;
    for (auto& f : od) r.sum_signed_ecc += f.ecc;
    r.features.reserve(ud.size() + od.size());
    for (auto& f : od) r.features.push_back(std::move(f));
    for (auto& f : ud) r.features.push_back(std::move(f));
    std::sort(r.features.begin(), r.features.end(),
              [](const DeviationFeature& a, const DeviationFeature& b) {
                  std::int64_t ea = a.ecc < 0 ? -a.ecc : a.ecc, eb = b.ecc < 0 ? -b.ecc : b.ecc;
                  if (ea != eb) return ea > eb;
                  if (a.voxel_count != b.voxel_count) return a.voxel_count > b.voxel_count;
                  if (a.kind != b.kind) return a.kind == FeatureKind::OD;
                  return a.id < b.id;
              });

    r.identity_ok = r.chi_manufactured - r.chi_design == r.sum_signed_ecc;
    r.seconds_decompose = std::chrono::duration<double>(t1 - t0).count();
    r.seconds_features = std::chrono::duration<double>(t2 - t1).count();
    r.seconds_total = std::chrono::duration<double>(clock::now() - t0).count();

    if (!r.identity_ok) {
        std::ostringstream os;
        os << "ledger identity violated: chi[M]-chi[D] = "
           << r.chi_manufactured - r.chi_design << " but signed ECC sum = " << r.sum_signed_ecc
           << "; features:";
        for (const auto& f : r.features)
            os << "\n  " << to_string(f.kind) << '#' << f.id << " chi=" << f.chi_solid
               << " chi_cut=" << f.chi_cut << " ecc=" << f.ecc << " voxels=" << f.voxel_count;
        throw InternalConsistencyError(os.str());
    }
    return r;
}

/// Per-voxel ECC field: each feature's ecc painted over its voxels
/// (0 elsewhere). Matches the report's feature order.
inline std::vector<std::int64_t> ecc_field(const CtaReport& r, const Dims& dims) {
    std::vector<std::int64_t> field(static_cast<std::size_t>(dims.count()), 0);
    for (const auto& f : r.features) {
        const Dims fd = f.solid.dims();
        for (int z = 0; z < fd.nz; ++z)
            for (int y = 0; y < fd.ny; ++y)
                for (int x = 0; x < fd.nx; ++x) {
                    if (!f.solid.at(x, y, z)) continue;
                    std::size_t idx = static_cast<std::size_t>(x + f.offset[0]) +
                                      static_cast<std::size_t>(dims.nx) *
                                          (static_cast<std::size_t>(y + f.offset[1]) +
                                           static_cast<std::size_t>(dims.ny) *
                                               static_cast<std::size_t>(z + f.offset[2]));
                    field[idx] = f.ecc;
                }
    }
    return field;
}

/// Feature-label field for VTK export: positive labels for OD features,
/// negative for UD, 0 elsewhere.
inline std::vector<std::int64_t> feature_label_field(const CtaReport& r, const Dims& dims) {
    std::vector<std::int64_t> field(static_cast<std::size_t>(dims.count()), 0);
    for (const auto& f : r.features) {
        std::int64_t lbl = f.kind == FeatureKind::OD ? f.id : -f.id;
        const Dims fd = f.solid.dims();
        for (int z = 0; z < fd.nz; ++z)
            for (int y = 0; y < fd.ny; ++y)
                for (int x = 0; x < fd.nx; ++x) {
                    if (!f.solid.at(x, y, z)) continue;
                    std::size_t idx = static_cast<std::size_t>(x + f.offset[0]) +
                                      static_cast<std::size_t>(dims.nx) *
                                          (static_cast<std::size_t>(y + f.offset[1]) +
                                           static_cast<std::size_t>(dims.ny) *
                                               static_cast<std::size_t>(z + f.offset[2]));
                    field[idx] = lbl;
                }
    }
    return field;
}

} // namespace voxcta
