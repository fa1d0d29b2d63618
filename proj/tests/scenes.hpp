#pragma once

// Constructed design/manufactured scene pairs with known topology, shared
// by the unit tests and the acceptance suite.

#include "test_support.hpp"

namespace scenes {

using test_support::fill_box;
using vt::VoxelGrid;

struct ScenePair {
    VoxelGrid design;
    VoxelGrid manufactured;
};

/// Two blocks joined by a bridge; manufacturing drops the bridge.
/// The UD bridge is contractible (chi 1) and caps k = 2 disjoint disks of
/// the common region, so its ECC is 1 - 2 = -1.
inline ScenePair broken_bridge() {
    VoxelGrid design({16, 8, 8});
    fill_box(design, {0, 1, 1}, {4, 6, 6});
    fill_box(design, {11, 1, 1}, {15, 6, 6});
    fill_box(design, {5, 3, 3}, {10, 4, 4}); // 2x2 bridge
    VoxelGrid manufactured({16, 8, 8});
    fill_box(manufactured, {0, 1, 1}, {4, 6, 6});
    fill_box(manufactured, {11, 1, 1}, {15, 6, 6});
    return {design, manufactured};
}

/// Block with a square through-tunnel; manufacturing fills it. The OD
/// plug is contractible with a fully cylindrical cut boundary (chi 0),
/// so its ECC is +1.
inline ScenePair tunnel_plug() {
    VoxelGrid design({10, 10, 6});
    fill_box(design, {1, 1, 0}, {8, 8, 5});
    fill_box(design, {4, 4, 0}, {5, 5, 5}, false); // tunnel along z, full depth
    VoxelGrid manufactured({10, 10, 6});
    fill_box(manufactured, {1, 1, 0}, {8, 8, 5});
    return {design, manufactured};
}

/// Hollow shell; manufacturing fills the internal cavity. The OD fill is
/// contractible with a fully spherical cut boundary (chi 2): ECC -1.
inline ScenePair cavity_fill() {
    VoxelGrid design({8, 8, 8});
    fill_box(design, {1, 1, 1}, {6, 6, 6});
    fill_box(design, {3, 3, 3}, {4, 4, 4}, false); // internal cavity
    VoxelGrid manufactured({8, 8, 8});
    fill_box(manufactured, {1, 1, 1}, {6, 6, 6});
    return {design, manufactured};
}

/// Cube losing one corner voxel: the UD wedge touches the common region
/// over a single disk, ECC 0 (simple).
inline ScenePair rounded_corner() {
    VoxelGrid design({6, 6, 6});
    fill_box(design, {1, 1, 1}, {4, 4, 4});
    VoxelGrid manufactured = design;
    manufactured.set(1, 1, 1, false);
    return {design, manufactured};
}

/// Plate (one-voxel slab) with two holes; manufacturing covers one hole
/// and splits the other with a bar. Global chi and all Betti numbers are
/// unchanged, yet two non-simple OD features (+1 and -1) are present.
inline ScenePair cancellation_plate() {
    VoxelGrid design({20, 12, 1});
    fill_box(design, {1, 1, 0}, {18, 10, 0});
    fill_box(design, {4, 4, 0}, {6, 6, 0}, false);   // hole A (3x3)
    fill_box(design, {12, 3, 0}, {15, 8, 0}, false); // hole B (4x6)
    VoxelGrid manufactured = design;
    fill_box(manufactured, {4, 4, 0}, {6, 6, 0});    // cover hole A
    fill_box(manufactured, {12, 5, 0}, {15, 6, 0});  // bar splits hole B
    return {design, manufactured};
}

/// Slab lattice shaped like a grid graph with nodes_x * nodes_y nodes:
/// bars of width `bar`, rectangular holes of size `gap`, thickness `tz`.
/// b1 = (nodes_x - 1) * (nodes_y - 1) independent loops by construction,
/// so chi = 1 - b1.
inline VoxelGrid grid_lattice(int nodes_x, int nodes_y, int bar = 2, int gap = 4, int tz = 2,
                              int margin = 2) {
    const int pitch = bar + gap;
    const int w = (nodes_x - 1) * pitch + bar;
    const int h = (nodes_y - 1) * pitch + bar;
    VoxelGrid g({w + 2 * margin, h + 2 * margin, tz + 2 * margin});
    // full plate, then punch the holes
    fill_box(g, {margin, margin, margin}, {margin + w - 1, margin + h - 1, margin + tz - 1});
    for (int iy = 0; iy < nodes_y - 1; ++iy)
        for (int ix = 0; ix < nodes_x - 1; ++ix) {
            int x0 = margin + ix * pitch + bar;
            int y0 = margin + iy * pitch + bar;
            fill_box(g, {x0, y0, margin}, {x0 + gap - 1, y0 + gap - 1, margin + tz - 1}, false);
        }
    return g;
}

/// Fixable corrector scene: two blocks joined by a bridge thinner than
/// the MMN. At the initial uniform threshold the bridge is not printed;
/// a local negative bump restores it.
inline VoxelGrid thin_bridge_design() {
    VoxelGrid design({20, 9, 9});
    fill_box(design, {1, 1, 1}, {6, 7, 7});
    fill_box(design, {13, 1, 1}, {18, 7, 7});
    fill_box(design, {7, 3, 3}, {12, 4, 4}); // 2x2 bridge, sub-MMN for diamond:1
    return design;
}

/// Unfixable corrector scene: a thin bar crossing a hole in a plate. The
/// bar is sub-MMN, and printing it necessarily spills into the two slots
/// beside it, filling them; omitting it leaves a non-simple UD splitter.
/// No threshold field resolves both.
inline VoxelGrid crossed_hole_design() {
    VoxelGrid design({16, 16, 4});
    fill_box(design, {1, 1, 0}, {14, 14, 3});
    fill_box(design, {6, 5, 0}, {9, 10, 3}, false); // 4x6 hole through z
    fill_box(design, {7, 5, 0}, {8, 10, 3});        // 2-wide bar across it
    return design;
}

} // namespace scenes
