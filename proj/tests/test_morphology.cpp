#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace voxcta;
using namespace test_support;

TEST_CASE("motion_set at the extremes") {
    VoxelGrid d({8, 8, 8});
    fill_box(d, {2, 2, 2}, {5, 5, 5});
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    OverlapField f = overlap_field_fft(d, b);

    // lambda = 0: support of the field
    MotionSet m0 = motion_set(f, Rational(0, 1));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(m0.grid.at(static_cast<std::int64_t>(i)) == (f.values[i] >= 1));

    // lambda = (|B|-1)/|B|: full containment only
    MotionSet m1 = motion_set(f, Rational(f.mmn_measure - 1, f.mmn_measure));
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(m1.grid.at(static_cast<std::int64_t>(i)) == (f.values[i] == f.mmn_measure));

    CHECK_THROWS(motion_set(f, Rational(1, 1)));
    CHECK_THROWS(motion_set(f, Rational(-1, 4)));
}

TEST_CASE("motion_set strict inequality on the 2-voxel bar") {
    VoxelGrid d({4, 1, 1});
    d.set(1, 0, 0); d.set(2, 0, 0);
    VoxelGrid b({2, 1, 1});
    b.set(0, 0, 0); b.set(1, 0, 0);
    OverlapField f = overlap_field_fft(d, b); // values 1,2,1,0
    MotionSet m = motion_set(f, Rational(1, 2));
    // only OM = 2 beats 0.5 * 2 = 1 strictly
    CHECK(m.grid.voxel_count() == 1);
    CHECK(m.grid.at(1, 0, 0));
}

TEST_CASE("motion_set_nonuniform reduces to the uniform case") {
    std::mt19937 rng(2);
    VoxelGrid d = random_blobs({12, 12, 12}, 3, rng);
    if (d.empty()) d.set(6, 6, 6);
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    OverlapField f = overlap_field_fft(d, b);

    OmrtField constant;
    constant.base = Rational(2, 7);
    CHECK(motion_set_nonuniform(f, constant).grid == motion_set(f, Rational(2, 7)).grid);

    // zero-coefficient bump changes nothing
    OmrtField with_zero = constant;
    with_zero.add_bump({6, 6, 6}, 4.0, Rational(0, 1));
    CHECK(motion_set_nonuniform(f, with_zero).grid == motion_set(f, Rational(2, 7)).grid);

    // a negative bump cancelling the base over the whole lattice = lambda 0
    OmrtField neg;
    neg.base = Rational(2, 7);
    // bump value at distance dist: coeff * (1 - dist/r)^2; with huge radius
    // the weight stays close to 1 everywhere, so a -base*margin coefficient
    // pushes the field to the 0 clamp across the lattice
    neg.add_bump({6, 6, 6}, 1e6, Rational(-2, 7) * Rational(3, 1));
    CHECK(motion_set_nonuniform(f, neg).grid == motion_set(f, Rational(0, 1)).grid);
}

TEST_CASE("bump accumulation at an existing center") {
    OmrtField f;
    f.add_bump({1, 2, 3}, 5.0, Rational(1, 16));
    f.add_bump({1, 2, 3}, 5.0, Rational(1, 16));
    REQUIRE(f.bumps.size() == 1);
    CHECK(f.bumps[0].coeff == Rational(1, 8));
    f.add_bump({1, 2, 3}, 4.0, Rational(1, 16)); // different radius = new bump
    CHECK(f.bumps.size() == 2);
}

TEST_CASE("sweep equals brute-force union of translates") {
    std::mt19937 rng(9);
    for (int it = 0; it < 12; ++it) {
        VoxelGrid motion_grid = random_grid({9, 9, 9}, 0.15, rng);
        MotionSet m{motion_grid, std::nullopt};
        VoxelGrid b = it % 2 ? make_mmn({MmnShape::Diamond, {1}})
                             : make_mmn({MmnShape::Cube, {1}});
        CHECK(sweep(m, b) == sweep_direct(m, b));
    }

    // single configuration -> translated MMN copy
    VoxelGrid one({7, 7, 7});
    one.set(3, 3, 3);
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    VoxelGrid s = sweep(MotionSet{one, std::nullopt}, b);
    CHECK(s.voxel_count() == 7);
    CHECK(s.at(3, 3, 3));
    CHECK(s.at(2, 3, 3));

    // empty motion -> empty
    VoxelGrid none({5, 5, 5});
    CHECK(sweep(MotionSet{none, std::nullopt}, b).empty());

    // two adjacent configurations with a single-voxel MMN -> 2 voxels
    VoxelGrid two({5, 1, 1});
    two.set(1, 0, 0); two.set(2, 0, 0);
    VoxelGrid dot({1, 1, 1});
    dot.set(0, 0, 0);
    CHECK(sweep(MotionSet{two, std::nullopt}, dot).voxel_count() == 2);
}

TEST_CASE("as_manufactured limits") {
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    // design == MMN shape embedded in a larger frame, lambda -> 1^-:
    // opening of B by B returns B
    VoxelGrid d({7, 7, 7});
    for (int z = 0; z < 3; ++z)
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                if (b.at(x, y, z)) d.set(x + 2, y + 2, z + 2);
    CHECK(extreme_min_ud(d, b) == d);

    // design thinner than the MMN everywhere -> opening empty
    VoxelGrid thin({8, 8, 8});
    fill_box(thin, {1, 1, 1}, {6, 6, 1}); // 1-voxel-thick plate
    VoxelGrid b3 = make_mmn({MmnShape::Cube, {1}});
    CHECK(extreme_min_ud(thin, b3).empty());
}

TEST_CASE("extremes match brute-force oracles") {
    std::mt19937 rng(13);
    for (int it = 0; it < 8; ++it) {
        VoxelGrid d = random_blobs({14, 14, 14}, 3, rng);
        if (d.empty()) d.set(7, 7, 7);
        VoxelGrid b = it % 2 ? make_mmn({MmnShape::Diamond, {1}})
                             : make_mmn({MmnShape::Sphere, {2}});
        VoxelGrid lo = extreme_min_ud(d, b);
        VoxelGrid hi = extreme_max_od(d, b);
        CHECK(lo == opening_oracle(d, b));
        CHECK(hi == double_dilation_oracle(d, b));
        CHECK(subset_of(lo, d));
        CHECK(subset_of(d, hi));
    }
}

TEST_CASE("opening is idempotent") {
    std::mt19937 rng(19);
    VoxelGrid d = random_blobs({16, 16, 16}, 4, rng);
    if (d.empty()) d.set(8, 8, 8);
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    VoxelGrid once = extreme_min_ud(d, b);
    if (!once.empty()) CHECK(extreme_min_ud(once, b) == once);
}

TEST_CASE("max_od of a single voxel with diamond MMN") {
    VoxelGrid d({9, 9, 9});
    d.set(4, 4, 4);
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});
    VoxelGrid hi = extreme_max_od(d, b);
    // double dilation of a point by radius-1 diamonds = radius-2 diamond
    std::int64_t expect = 0;
    for (int z = -2; z <= 2; ++z)
        for (int y = -2; y <= 2; ++y)
            for (int x = -2; x <= 2; ++x)
                if (std::abs(x) + std::abs(y) + std::abs(z) <= 2) ++expect;
    CHECK(hi.voxel_count() == expect);
    CHECK(hi.at(4, 4, 2));
    CHECK(hi.at(6, 4, 4));
}

TEST_CASE("min_ud removes sub-MMN bridges") {
    VoxelGrid d({16, 8, 8});
    fill_box(d, {0, 0, 0}, {4, 7, 7});
    fill_box(d, {11, 0, 0}, {15, 7, 7});
    fill_box(d, {5, 3, 3}, {10, 3, 3}); // 1-voxel-wide bridge
    VoxelGrid b = make_mmn({MmnShape::Cube, {1}});
    VoxelGrid lo = extreme_min_ud(d, b);
    for (int x = 5; x <= 10; ++x) CHECK_FALSE(lo.at(x, 3, 3));
    CHECK(label_components(lo, Connectivity::Vertex26).count == 2);
}

TEST_CASE("family: containment chain and reuse") {
    std::mt19937 rng(29);
    VoxelGrid d = random_blobs({16, 16, 16}, 4, rng);
    if (d.empty()) d.set(8, 8, 8);
    VoxelGrid b = make_mmn({MmnShape::Diamond, {1}});

    std::vector<Rational> lams;
    for (int k = 0; k < 5; ++k) lams.emplace_back(k, 7);
    auto members = family(d, b, lams);
    REQUIRE(members.size() == 5);
    for (std::size_t i = 1; i < members.size(); ++i) {
        CHECK(subset_of(members[i].second, members[i - 1].second));
        CHECK(members[i].second.voxel_count() <= members[i - 1].second.voxel_count());
    }
    // extremes bracket every member
    VoxelGrid lo = extreme_min_ud(d, b), hi = extreme_max_od(d, b);
    for (const auto& [lam, g] : members) {
        CHECK(subset_of(lo, g));
        CHECK(subset_of(g, hi));
    }
    // single lambda matches as_manufactured
    CHECK(members[2].second == as_manufactured(d, b, Rational(2, 7)));

    CHECK_THROWS(family(d, b, {Rational(1, 2), Rational(1, 4)}));
}
