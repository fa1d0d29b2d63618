#pragma once

#include <json.hpp>

#include "voxcta/correct.hpp"
#include "voxcta/cta.hpp"

namespace voxcta {

inline constexpr int kSchemaVersion = 1;

/// JSON form of a CTA report. Timing fields are grouped under "timing" so
/// determinism checks can drop them wholesale.
inline nlohmann::ordered_json to_json(const CtaReport& r, bool include_timing = true) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["chi_design"] = r.chi_design;
    j["chi_manufactured"] = r.chi_manufactured;
    j["delta_chi"] = r.chi_manufactured - r.chi_design;
    j["sum_signed_ecc"] = r.sum_signed_ecc;
    j["identity_ok"] = r.identity_ok;
    j["design_volume"] = r.design_volume;
    j["ud"] = {{"volume", r.ud_volume},
               {"volume_fraction",
                r.design_volume ? static_cast<double>(r.ud_volume) / r.design_volume : 0.0},
               {"components", r.ud_components}};
    j["od"] = {{"volume", r.od_volume},
               {"volume_fraction",
                r.design_volume ? static_cast<double>(r.od_volume) / r.design_volume : 0.0},
               {"components", r.od_components}};
    j["non_simple_count"] = r.non_simple_count();
    auto feats = nlohmann::ordered_json::array();
    for (const auto& f : r.features) {
        nlohmann::ordered_json fj;
        fj["kind"] = to_string(f.kind);
        fj["id"] = f.id;
        fj["ecc"] = f.ecc;
        fj["simple"] = f.simple;
        fj["chi_solid"] = f.chi_solid;
        fj["chi_cut_boundary"] = f.chi_cut;
        fj["voxel_count"] = f.voxel_count;
        fj["centroid"] = {f.centroid[0], f.centroid[1], f.centroid[2]};
        fj["bbox_min"] = {f.bbox_min[0], f.bbox_min[1], f.bbox_min[2]};
        fj["bbox_max"] = {f.bbox_max[0], f.bbox_max[1], f.bbox_max[2]};
        fj["cut_cells"] = {f.cut_boundary.n[0], f.cut_boundary.n[1], f.cut_boundary.n[2],
                           f.cut_boundary.n[3]};
        feats.push_back(std::move(fj));
    }
    j["features"] = std::move(feats);
    if (include_timing)
        j["timing"] = {{"decompose_s", r.seconds_decompose},
                       {"features_s", r.seconds_features},
                       {"total_s", r.seconds_total}};
    return j;
}

inline nlohmann::ordered_json to_json(const OmrtField& f) {
    nlohmann::ordered_json j;
    j["base"] = {{"num", f.base.num()}, {"den", f.base.den()}};
    auto bumps = nlohmann::ordered_json::array();
    for (const auto& b : f.bumps)
        bumps.push_back({{"center", {b.center[0], b.center[1], b.center[2]}},
                         {"radius", b.radius},
                         {"coeff", {{"num", b.coeff.num()}, {"den", b.coeff.den()}}}});
    j["bumps"] = std::move(bumps);
    return j;
}

inline nlohmann::ordered_json to_json(const CorrectionTrace& t) {
    nlohmann::ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["terminated_by"] = to_string(t.terminated_by);
    j["iterations"] = nlohmann::ordered_json::array();
    for (const auto& it : t.iterations) {
        nlohmann::ordered_json ij;
        ij["omrt"] = to_json(it.omrt);
        ij["non_simple_ud"] = it.non_simple_ud;
        ij["non_simple_od"] = it.non_simple_od;
        ij["delta_chi"] = it.delta_chi;
        ij["ud_volume_fraction"] = it.ud_fraction;
        ij["od_volume_fraction"] = it.od_fraction;
        j["iterations"].push_back(std::move(ij));
    }
    return j;
}

inline nlohmann::ordered_json to_json(const TopologySummary& t) {
    return {{"chi", t.chi}, {"b0", t.b0}, {"b1", t.b1}, {"b2", t.b2}};
}

} // namespace voxcta
