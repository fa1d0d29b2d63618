// voxcta command-line tool: as-manufactured families, comparative
// topological analysis, deposition-policy correction, and the per-slice
// 2D pipeline.
//
// Exit codes: 0 success; 2 I/O or parse error; 3 FFT precision failure;
// 4 internal-consistency failure; 5 correction ended non-clean.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "voxcta/voxcta.hpp"

namespace fs = std::filesystem;
using namespace voxcta;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path);
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    char buf[1 << 16];
    while (is.read(buf, sizeof buf) || is.gcount() > 0) {
        for (std::streamsize i = 0; i < is.gcount(); ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 1099511628211ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

void write_json(const ordered_json& j, const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open " + path.string() + " for writing");
    os << j.dump(2) << '\n';
}

struct StageTimer {
    using clock = std::chrono::steady_clock;
    clock::time_point last = clock::now();
    ordered_json stages = ordered_json::object();

    void mark(const std::string& name) {
        auto now = clock::now();
        stages[name] = std::chrono::duration<double>(now - last).count();
        last = now;
    }
};

int cmd_family(const std::string& design_path, const std::string& mmn_spec,
               const std::string& lambdas_csv, const std::string& out_dir, bool vtk) {
    StageTimer timer;
    VoxelGrid design = load_grid(design_path);
    VoxelGrid mmn = make_mmn(parse_mmn_spec(mmn_spec));
    std::vector<Rational> lambdas;
    {
        std::stringstream ss(lambdas_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) lambdas.push_back(parse_rational(tok));
    }
    if (lambdas.empty()) throw ParseError("--lambdas: empty list");
    timer.mark("load_s");

    auto members = family(design, mmn, lambdas);
    timer.mark("family_s");

    fs::create_directories(out_dir);
    ordered_json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["tool_version"] = kToolVersion;
    manifest["inputs"] = {{"design", design_path}, {"design_hash", file_hash(design_path)}};
    manifest["mmn"] = mmn_spec;
    manifest["mmn_measure"] = mmn.voxel_count();
    auto outputs = ordered_json::array();
    auto table = ordered_json::array();
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& [lam, grid] = members[i];
        char name[64];
        std::snprintf(name, sizeof name, "member_%03zu.binvox", i);
        fs::path p = fs::path(out_dir) / name;
        save_grid(grid, p.string());
        outputs.push_back(p.string());
        if (vtk) {
            fs::path pv = fs::path(out_dir) / (std::string(name, strlen(name) - 7) + ".vtk");
            save_grid(grid, pv.string());
            outputs.push_back(pv.string());
        }
        TopologySummary t = betti(grid);
        table.push_back({{"lambda", {{"num", lam.num()}, {"den", lam.den()}}},
                         {"lambda_value", lam.to_double()},
                         {"volume", grid.voxel_count()},
                         {"chi", t.chi},
                         {"betti", to_json(t)},
                         {"file", p.string()}});
    }
    timer.mark("export_s");
    manifest["members"] = std::move(table);
    manifest["outputs"] = std::move(outputs);
    manifest["timing"] = timer.stages;
    write_json(manifest, fs::path(out_dir) / "manifest.json");
    return 0;
}

int cmd_cta(const std::string& design_path, const std::string& manufactured_path,
            const std::string& out_path, const std::string& vtk_dir) {
    VoxelGrid design = load_grid(design_path);
    VoxelGrid manufactured = load_grid(manufactured_path);
    CtaReport report = ledger(design, manufactured);

    ordered_json j = to_json(report);
    j["inputs"] = {{"design", design_path},
                   {"design_hash", file_hash(design_path)},
                   {"manufactured", manufactured_path},
                   {"manufactured_hash", file_hash(manufactured_path)}};
    write_json(j, out_path);

    if (!vtk_dir.empty()) {
        fs::create_directories(vtk_dir);
        auto ecc = ecc_field(report, design.dims());
        auto labels = feature_label_field(report, design.dims());
        std::ofstream e(fs::path(vtk_dir) / "ecc_field.vtk");
        save_vtk(design, e, "ecc", &ecc);
        std::ofstream l(fs::path(vtk_dir) / "feature_labels.vtk");
        save_vtk(design, l, "feature", &labels);
    }
    return report.identity_ok ? 0 : 4;
}

int cmd_correct(const std::string& design_path, const std::string& mmn_spec,
                const std::string& lambda_str, const std::string& config_path,
                const std::string& out_dir) {
    VoxelGrid design = load_grid(design_path);
    VoxelGrid mmn = make_mmn(parse_mmn_spec(mmn_spec));
    CorrectionConfig cfg;
    cfg.initial_lambda = parse_rational(lambda_str);
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw ParseError("cannot open " + config_path);
        nlohmann::json cj;
        try {
            is >> cj;
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("config: " + std::string(e.what()));
        }
        if (cj.contains("step")) cfg.step = parse_rational(cj["step"].get<std::string>());
        if (cj.contains("max_iters")) cfg.max_iters = cj["max_iters"].get<int>();
        if (cj.contains("deviation_budget"))
            cfg.deviation_budget = cj["deviation_budget"].get<double>();
        if (cj.contains("extra_radius")) cfg.extra_radius = cj["extra_radius"].get<double>();
    }

    CorrectionResult res = correct_loop(design, mmn, cfg);

    fs::create_directories(out_dir);
    save_grid(res.shape, (fs::path(out_dir) / "corrected.binvox").string());
    ordered_json tj = to_json(res.trace);
    tj["tool_version"] = kToolVersion;
    tj["inputs"] = {{"design", design_path}, {"design_hash", file_hash(design_path)}};
    tj["mmn"] = mmn_spec;
    tj["final_report"] = to_json(res.final_report);
    write_json(tj, fs::path(out_dir) / "trace.json");
    return res.trace.terminated_by == TerminationCause::Clean ? 0 : 5;
}

int cmd_slice(const std::string& design_path, const std::string& axis_str,
              const std::string& mmn_spec, const std::string& lambda_str,
              const std::string& out_dir) {
    VoxelGrid design = load_grid(design_path);
    Axis axis = parse_axis(axis_str);
    VoxelGrid mmn2d = make_mmn_2d(parse_mmn_spec(mmn_spec));
    Rational lambda = parse_rational(lambda_str);

    fs::create_directories(out_dir);
    auto slices = extract_slices(design, axis);
    ordered_json aggregate;
    aggregate["schema_version"] = kSchemaVersion;
    aggregate["tool_version"] = kToolVersion;
    aggregate["inputs"] = {{"design", design_path}, {"design_hash", file_hash(design_path)}};
    aggregate["axis"] = axis_str;
    aggregate["mmn_2d"] = mmn_spec;
    aggregate["lambda"] = {{"num", lambda.num()}, {"den", lambda.den()}};
    aggregate["caveat"] =
        "Per-slice topological equivalence does not imply topological "
        "equivalence of the stacked 3D solid.";
    auto per_slice = ordered_json::array();

    int total_non_simple = 0;
    for (std::size_t i = 0; i < slices.size(); ++i) {
        VoxelGrid d2 = slices[i].as_grid();
        ordered_json sj;
        sj["slice"] = i;
        if (d2.empty()) {
            sj["empty"] = true;
            per_slice.push_back(std::move(sj));
            continue;
        }
        OverlapField f = overlap_field_fft(d2, mmn2d);
        VoxelGrid m2 = sweep(motion_set(f, lambda), mmn2d);
        CtaReport rep = ledger(d2, m2, /*use_2d=*/true);
        total_non_simple += rep.non_simple_count();
        TopologySummary2D td = betti_2d(d2), tm = betti_2d(m2);
        sj["report"] = to_json(rep, /*include_timing=*/false);
        sj["design_2d"] = {{"chi", td.chi}, {"b0", td.b0}, {"b1", td.b1}};
        sj["manufactured_2d"] = {{"chi", tm.chi}, {"b0", tm.b0}, {"b1", tm.b1}};
        per_slice.push_back(std::move(sj));
    }
    aggregate["slices"] = std::move(per_slice);
    aggregate["total_non_simple"] = total_non_simple;
    write_json(aggregate, fs::path(out_dir) / "slice_report.json");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voxel-based as-manufactured modeling and comparative topological analysis"};
    app.require_subcommand(1);

    std::string design, manufactured, mmn, lambdas, lambda, out, config, axis, vtk_dir;
    bool vtk = false;

    auto* fam = app.add_subcommand("family", "Generate the one-parameter as-manufactured family");
    fam->add_option("--design", design)->required();
    fam->add_option("--mmn", mmn)->required();
    fam->add_option("--lambdas", lambdas)->required();
    fam->add_option("--out", out)->required();
    fam->add_flag("--vtk", vtk);

    auto* cta = app.add_subcommand("cta", "Compare design vs manufactured topology");
    cta->add_option("--design", design)->required();
    cta->add_option("--manufactured", manufactured)->required();
    cta->add_option("--out", out)->required();
    cta->add_option("--vtk", vtk_dir);

    auto* cor = app.add_subcommand("correct", "Iteratively correct the deposition policy");
    cor->add_option("--design", design)->required();
    cor->add_option("--mmn", mmn)->required();
    cor->add_option("--lambda", lambda)->required();
    cor->add_option("--config", config);
    cor->add_option("--out", out)->required();

    auto* sli = app.add_subcommand("slice", "Layer-by-layer 2D analysis");
    sli->add_option("--design", design)->required();
    sli->add_option("--axis", axis)->required();
    sli->add_option("--mmn", mmn)->required();
    sli->add_option("--lambda", lambda)->required();
    sli->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fam->parsed()) return cmd_family(design, mmn, lambdas, out, vtk);
        if (cta->parsed()) return cmd_cta(design, manufactured, out, vtk_dir);
        if (cor->parsed()) return cmd_correct(design, mmn, lambda, config, out);
        if (sli->parsed()) return cmd_slice(design, axis, mmn, lambda, out);
    } catch (const PrecisionError& e) {
        std::cerr << "precision failure: " << e.what() << '\n';
        return 3;
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal-consistency failure: " << e.what() << '\n';
        return 4;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
