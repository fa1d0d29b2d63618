#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "voxcta/grid.hpp"

namespace voxcta {

// ---------------------------------------------------------------------------
// binvox (primary interchange format)
//
// Header: "#binvox 1", "dim nx ny nz", "translate ox oy oz", "scale s",
// "data", then RLE byte pairs (value, count). Data order follows the
// published convention: y runs fastest, then z, then x.
// ---------------------------------------------------------------------------

namespace detail {
inline std::int64_t binvox_index(const Dims& d, int x, int y, int z) {
    return static_cast<std::int64_t>(x) * d.ny * d.nz + static_cast<std::int64_t>(z) * d.ny + y;
}
} // namespace detail

inline void save_binvox(const VoxelGrid& g, std::ostream& os) {
    const Dims d = g.dims();
    os << "#binvox 1\n";
    os << "dim " << d.nx << ' ' << d.ny << ' ' << d.nz << '\n';
    char buf[96];
    std::snprintf(buf, sizeof buf, "translate %.17g %.17g %.17g\n",
                  g.origin()[0], g.origin()[1], g.origin()[2]);
    os << buf;
    std::snprintf(buf, sizeof buf, "scale %.17g\n", g.spacing() * d.nx);
    os << buf;
    os << "data\n";

    // reorder to binvox layout, then RLE
    std::vector<std::uint8_t> lin(static_cast<std::size_t>(d.count()));
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                lin[static_cast<std::size_t>(detail::binvox_index(d, x, y, z))] =
                    g.at(x, y, z) ? 1 : 0;
    std::size_t i = 0;
    while (i < lin.size()) {
        std::uint8_t v = lin[i];
        std::size_t run = 1;
        while (i + run < lin.size() && lin[i + run] == v && run < 255) ++run;
        os.put(static_cast<char>(v));
        os.put(static_cast<char>(run));
        i += run;
    }
}

inline VoxelGrid load_binvox(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("#binvox", 0) != 0)
        throw ParseError("binvox: bad magic (expected '#binvox 1')");
    {
        std::istringstream hs(line);
        std::string magic;
        int version = -1;
        hs >> magic >> version;
        if (version != 1) throw ParseError("binvox: unsupported version");
    }
    Dims d{0, 0, 0};
    double tx = 0, ty = 0, tz = 0, scale = 1.0;
    bool have_dim = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "data") break;
        if (key == "dim") {
            long long a = 0, b = 0, c = 0;
            if (!(ls >> a >> b >> c)) throw ParseError("binvox: malformed dim line");
            if (a < 1 || b < 1 || c < 1 || a * b * c > (1LL << 33))
                throw ParseError("binvox: dimension out of range");
            d = {static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
            have_dim = true;
        } else if (key == "translate") {
            if (!(ls >> tx >> ty >> tz)) throw ParseError("binvox: malformed translate line");
        } else if (key == "scale") {
            if (!(ls >> scale)) throw ParseError("binvox: malformed scale line");
        }
        // unknown keys ignored per format convention
    }
    if (!have_dim) throw ParseError("binvox: missing dim line before data");

    VoxelGrid g(d, scale / d.nx, {tx, ty, tz});
    std::vector<std::uint8_t> lin(static_cast<std::size_t>(d.count()));
    std::size_t i = 0;
    while (i < lin.size()) {
        int v = is.get();
        int run = is.get();
        if (v == EOF || run == EOF) throw ParseError("binvox: truncated data stream");
        if (i + static_cast<std::size_t>(run) > lin.size())
            throw ParseError("binvox: run-length overflows voxel count");
        for (int k = 0; k < run; ++k) lin[i++] = static_cast<std::uint8_t>(v ? 1 : 0);
    }
    for (int z = 0; z < d.nz; ++z)
        for (int y = 0; y < d.ny; ++y)
            for (int x = 0; x < d.nx; ++x)
                if (lin[static_cast<std::size_t>(detail::binvox_index(d, x, y, z))])
                    g.set(x, y, z);
    return g;
}

// ---------------------------------------------------------------------------
// raw: three little-endian uint64 dims, then occupancy packed LSB-first in
// grid index order. Carries no physical metadata; loads get the default frame.
// ---------------------------------------------------------------------------

inline void save_raw(const VoxelGrid& g, std::ostream& os) {
    auto put_u64 = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    put_u64(static_cast<std::uint64_t>(g.dims().nx));
    put_u64(static_cast<std::uint64_t>(g.dims().ny));
    put_u64(static_cast<std::uint64_t>(g.dims().nz));
    const auto& occ = g.raw();
    for (std::size_t i = 0; i < occ.size(); i += 8) {
        std::uint8_t byte = 0;
        for (std::size_t b = 0; b < 8 && i + b < occ.size(); ++b)
            if (occ[i + b]) byte |= static_cast<std::uint8_t>(1u << b);
        os.put(static_cast<char>(byte));
    }
}

inline VoxelGrid load_raw(std::istream& is) {
    auto get_u64 = [&]() -> std::uint64_t {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            int c = is.get();
            if (c == EOF) throw ParseError("raw: truncated header");
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(c)) << (8 * i);
        }
        return v;
    };
    std::uint64_t nx = get_u64(), ny = get_u64(), nz = get_u64();
    if (nx < 1 || ny < 1 || nz < 1 || nx * ny * nz > (1ull << 33))
        throw ParseError("raw: dimension out of range");
    VoxelGrid g({static_cast<int>(nx), static_cast<int>(ny), static_cast<int>(nz)});
    auto& occ = g.raw();
    for (std::size_t i = 0; i < occ.size(); i += 8) {
        int c = is.get();
        if (c == EOF) throw ParseError("raw: occupancy stream shorter than dims imply");
        for (std::size_t b = 0; b < 8 && i + b < occ.size(); ++b)
            occ[i + b] = (static_cast<std::uint8_t>(c) >> b) & 1u;
    }
    if (is.get() != EOF) throw ParseError("raw: trailing bytes after occupancy");
    return g;
}

// ---------------------------------------------------------------------------
// Legacy VTK STRUCTURED_POINTS writer (visualization only, no reader).
// Occupancy or any per-voxel integer field as CELL_DATA.
// ---------------------------------------------------------------------------

inline void save_vtk(const VoxelGrid& g, std::ostream& os,
                     const std::string& field_name = "occupancy",
                     const std::vector<std::int64_t>* field = nullptr) {
    const Dims d = g.dims();
    os << "# vtk DataFile Version 3.0\n";
    os << "voxcta volume\n";
    os << "ASCII\n";
    os << "DATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << d.nx + 1 << ' ' << d.ny + 1 << ' ' << d.nz + 1 << '\n';
    os << "ORIGIN " << g.origin()[0] << ' ' << g.origin()[1] << ' ' << g.origin()[2] << '\n';
    os << "SPACING " << g.spacing() << ' ' << g.spacing() << ' ' << g.spacing() << '\n';
    os << "CELL_DATA " << d.count() << '\n';
    os << "SCALARS " << field_name << " int 1\n";
    os << "LOOKUP_TABLE default\n";
    for (std::int64_t i = 0; i < d.count(); ++i) {
        if (field)
            os << (*field)[static_cast<std::size_t>(i)];
        else
            os << (g.at(i) ? 1 : 0);
        os << ((i % 16 == 15) ? '\n' : ' ');
    }
    os << '\n';
}

// Path-based wrappers -------------------------------------------------------

enum class GridFormat { Binvox, Raw, Vtk };

inline GridFormat format_from_path(const std::string& path) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "binvox") return GridFormat::Binvox;
    if (ext == "raw") return GridFormat::Raw;
    if (ext == "vtk") return GridFormat::Vtk;
    throw ParseError("cannot infer grid format from path: " + path);
}

inline VoxelGrid load_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ParseError("cannot open " + path);
    switch (format_from_path(path)) {
        case GridFormat::Binvox: return load_binvox(is);
        case GridFormat::Raw: return load_raw(is);
        default: throw ParseError("no reader for format of " + path);
    }
}

inline void save_grid(const VoxelGrid& g, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ParseError("cannot open " + path + " for writing");
    switch (format_from_path(path)) {
        case GridFormat::Binvox: save_binvox(g, os); break;
        case GridFormat::Raw: save_raw(g, os); break;
        case GridFormat::Vtk: save_vtk(g, os); break;
    }
    if (!os) throw ParseError("write failed: " + path);
}

} // namespace voxcta
