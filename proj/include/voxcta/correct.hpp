#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "voxcta/cta.hpp"
#include "voxcta/morphology.hpp"

namespace voxcta {

struct CorrectionConfig {
    Rational initial_lambda{3, 4};
    Rational step{1, 16};            // per-iteration bump coefficient magnitude
    double extra_radius = 0.0;       // added to the bounding-sphere + circumradius rule
    int max_iters = 20;
    double deviation_budget = 1.0;   // max (|U|+|O|)/|D| allowed
};

enum class TerminationCause { Clean, IterCap, Budget, Oscillation };

inline const char* to_string(TerminationCause t) {
    switch (t) {
        case TerminationCause::Clean: return "clean";
        case TerminationCause::IterCap: return "iter-cap";
        case TerminationCause::Budget: return "budget";
        case TerminationCause::Oscillation: return "oscillation";
    }
    return "?";
}

struct CorrectionIteration {
    OmrtField omrt;           // the field that produced this iteration's shape
    int non_simple_ud = 0;
    int non_simple_od = 0;
    std::int64_t delta_chi = 0;
    double ud_fraction = 0.0; // vs design volume
    double od_fraction = 0.0;
};

struct CorrectionTrace {
    std::vector<CorrectionIteration> iterations;
    TerminationCause terminated_by = TerminationCause::Clean;
};

/// One bump per non-simple feature: coefficient -step at UD centroids
/// (locally admit more configurations), +step at OD centroids (locally
/// exclude). Radius = feature bounding-sphere radius + MMN circumradius.
/// Bumps landing on an existing center accumulate. Simple features are
/// left alone.
inline OmrtField adjust_omrt(const OmrtField& omrt, const CtaReport& report,
                             const VoxelGrid& mmn, const CorrectionConfig& cfg) {
    OmrtField out = omrt;
    const double mmn_r = mmn_circumradius(mmn);
    for (const auto& f : report.features) {
        if (f.simple) continue;
        std::array<int, 3> center = {static_cast<int>(std::lround(f.centroid[0])),
                                     static_cast<int>(std::lround(f.centroid[1])),
                                     static_cast<int>(std::lround(f.centroid[2]))};
        double radius = f.bounding_radius() + mmn_r + cfg.extra_radius;
        Rational coeff = f.kind == FeatureKind::UD ? -cfg.step : cfg.step;
        out.add_bump(center, radius, coeff);
    }
    return out;
}

namespace detail {

/// Order-independent signature of the non-simple feature set, used by the
/// oscillation guard.
inline std::string feature_signature(const CtaReport& r) {
    std::vector<std::string> parts;
    for (const auto& f : r.features) {
        if (f.simple) continue;
        std::ostringstream os;
        os << to_string(f.kind) << ':' << f.ecc << ':' << f.voxel_count << ':' << f.bbox_min[0]
           << ',' << f.bbox_min[1] << ',' << f.bbox_min[2] << ':' << f.bbox_max[0] << ','
           << f.bbox_max[1] << ',' << f.bbox_max[2];
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::string sig;
    for (const auto& p : parts) { sig += p; sig += ';'; }
    return sig;
}

} // namespace detail

struct CorrectionResult {
    VoxelGrid shape;
    CorrectionTrace trace;
    CtaReport final_report;
};

/// Iterate { as-manufactured under the current OMRT field -> ledger ->
/// local bump adjustments } until no non-simple features remain or a
/// guard (iteration cap, deviation budget, oscillation) fires. Only the
/// deposition policy is modified; the design grid never changes.
inline CorrectionResult correct_loop(const VoxelGrid& design, const VoxelGrid& mmn,
                                     const CorrectionConfig& cfg) {
    OverlapField field = overlap_field_fft(design, mmn);
    OmrtField omrt;
    omrt.base = cfg.initial_lambda;

    CorrectionResult res;
    std::set<std::string> seen;
    for (int iter = 0;; ++iter) {
        res.shape = sweep(motion_set_nonuniform(field, omrt), mmn);
        res.final_report = ledger(design, res.shape);
        const CtaReport& rep = res.final_report;

        CorrectionIteration it;
        it.omrt = omrt;
        for (const auto& f : rep.features) {
            if (f.simple) continue;
            (f.kind == FeatureKind::UD ? it.non_simple_ud : it.non_simple_od)++;
        }
        it.delta_chi = rep.chi_manufactured - rep.chi_design;
        it.ud_fraction = rep.design_volume
                             ? static_cast<double>(rep.ud_volume) / rep.design_volume
                             : 0.0;
        it.od_fraction = rep.design_volume
                             ? static_cast<double>(rep.od_volume) / rep.design_volume
                             : 0.0;
        res.trace.iterations.push_back(it);

        if (it.non_simple_ud + it.non_simple_od == 0) {
            res.trace.terminated_by = TerminationCause::Clean;
            break;
        }
        if (it.ud_fraction + it.od_fraction > cfg.deviation_budget) {
            res.trace.terminated_by = TerminationCause::Budget;
            break;
        }
        std::string sig = detail::feature_signature(rep);
        if (!seen.insert(sig).second) {
            res.trace.terminated_by = TerminationCause::Oscillation;
            break;
        }
        if (iter >= cfg.max_iters) {
            res.trace.terminated_by = TerminationCause::IterCap;
            break;
        }
        omrt = adjust_omrt(omrt, rep, mmn, cfg);
    }
    return res;
}

} // namespace voxcta
