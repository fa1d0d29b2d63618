#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace voxcta;
using test_support::random_grid;

TEST_CASE("intersect_reg basics") {
    VoxelGrid a({4, 1, 1});
    a.set(0, 0, 0); a.set(1, 0, 0);
    VoxelGrid b({4, 1, 1});
    b.set(1, 0, 0); b.set(2, 0, 0);
    VoxelGrid empty({4, 1, 1});

    CHECK(intersect_reg(a, a) == a);
    CHECK(intersect_reg(a, empty) == empty);

    // two 2-voxel bars sharing one voxel -> that single voxel
    VoxelGrid r = intersect_reg(a, b);
    CHECK(r.voxel_count() == 1);
    CHECK(r.at(1, 0, 0));
}

TEST_CASE("subtract_reg basics") {
    VoxelGrid bar({5, 1, 1});
    bar.set(1, 0, 0); bar.set(2, 0, 0); bar.set(3, 0, 0);
    VoxelGrid mid({5, 1, 1});
    mid.set(2, 0, 0);
    VoxelGrid empty({5, 1, 1});

    CHECK(subtract_reg(bar, bar) == empty);
    CHECK(subtract_reg(bar, empty) == bar);

    VoxelGrid r = subtract_reg(bar, mid);
    CHECK(r.voxel_count() == 2);
    CHECK(label_components(r, Connectivity::Face6).count == 2);
}

TEST_CASE("union_set basics") {
    VoxelGrid a({6, 1, 1}), b({6, 1, 1}), empty({6, 1, 1});
    a.set(0, 0, 0);
    b.set(4, 0, 0); b.set(5, 0, 0);
    CHECK(union_set(a, empty) == a);
    CHECK(union_set(a, a) == a);
    VoxelGrid u = union_set(a, b);
    CHECK(u.voxel_count() == 3);
    CHECK(u.at(0, 0, 0));
    CHECK(u.at(4, 0, 0));
    CHECK(u.at(5, 0, 0));
}

TEST_CASE("frame mismatch is rejected") {
    VoxelGrid a({4, 4, 4});
    VoxelGrid b({4, 4, 5});
    VoxelGrid c({4, 4, 4}, 2.0);
    CHECK_THROWS_AS(intersect_reg(a, b), FrameMismatchError);
    CHECK_THROWS_AS(subtract_reg(a, c), FrameMismatchError);
    CHECK_THROWS_AS(union_set(a, b), FrameMismatchError);
}

TEST_CASE("reflect") {
    VoxelGrid g({3, 3, 3});
    g.set(0, 0, 0);
    VoxelGrid r = reflect(g);
    CHECK(r.voxel_count() == 1);
    CHECK(r.at(2, 2, 2));

    VoxelGrid sym = make_mmn({MmnShape::Sphere, {1}});
    CHECK(reflect(sym) == sym);

    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        VoxelGrid x = random_grid({5, 4, 6}, 0.4, rng);
        CHECK(reflect(reflect(x)) == x);
        CHECK(reflect(x).voxel_count() == x.voxel_count());
    }
}

TEST_CASE("boolean algebra properties on random pairs") {
    std::mt19937 rng(11);
    for (int it = 0; it < 30; ++it) {
        VoxelGrid d = random_grid({8, 8, 8}, 0.5, rng);
        VoxelGrid m = random_grid({8, 8, 8}, 0.5, rng);
        // De Morgan consistency
        CHECK(subtract_reg(d, m) == intersect_reg(d, complement(m)));
        // decomposition identities
        CHECK(union_set(intersect_reg(d, m), subtract_reg(d, m)) == d);
        CHECK(union_set(intersect_reg(m, d), subtract_reg(m, d)) == m);
    }
}

TEST_CASE("make_mmn") {
    CHECK(make_mmn({MmnShape::Cube, {0}}).voxel_count() == 1);
    CHECK(make_mmn({MmnShape::Diamond, {1}}).voxel_count() == 7);
    // sphere radius 2 by enumeration of x^2+y^2+z^2 <= 4
    std::int64_t expect = 0;
    for (int z = -2; z <= 2; ++z)
        for (int y = -2; y <= 2; ++y)
            for (int x = -2; x <= 2; ++x)
                if (x * x + y * y + z * z <= 4) ++expect;
    CHECK(make_mmn({MmnShape::Sphere, {2}}).voxel_count() == expect);
    CHECK_THROWS(make_mmn({MmnShape::Sphere, {-1}}));

    // point symmetry for symmetric parameters
    for (auto spec : {MmnSpec{MmnShape::Sphere, {2}}, MmnSpec{MmnShape::Diamond, {2}},
                      MmnSpec{MmnShape::Cube, {1}}, MmnSpec{MmnShape::Cylinder, {2, 1}}}) {
        VoxelGrid b = make_mmn(spec);
        CHECK(reflect(b) == b);
    }
}

TEST_CASE("mmn spec parsing") {
    MmnSpec s = parse_mmn_spec("ellipsoid:2,3,1");
    CHECK(s.shape == MmnShape::Ellipsoid);
    CHECK(s.params == std::vector<int>{2, 3, 1});
    CHECK(parse_mmn_spec("diamond:1").to_string() == "diamond:1");
    CHECK_THROWS_AS(parse_mmn_spec("blob:1"), ParseError);
    CHECK_THROWS_AS(parse_mmn_spec("cylinder:2"), ParseError);
    CHECK_THROWS_AS(parse_mmn_spec("sphere:x"), ParseError);
}

TEST_CASE("slicing round-trip") {
    std::mt19937 rng(3);
    VoxelGrid g = random_grid({5, 6, 7}, 0.5, rng);
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        auto slices = extract_slices(g, ax);
        std::size_t expect = ax == Axis::X ? 5u : ax == Axis::Y ? 6u : 7u;
        CHECK(slices.size() == expect);
        CHECK(restack_slices(slices, ax) == g);
    }

    VoxelGrid one({4, 3, 1});
    one.set(2, 1, 0);
    auto slices = extract_slices(one, Axis::Z);
    REQUIRE(slices.size() == 1);
    CHECK(slices[0].at(2, 1));
    CHECK(slices[0].pixel_count() == 1);
}

TEST_CASE("rational parsing and threshold comparisons") {
    CHECK(parse_rational("0.55") == Rational(11, 20));
    CHECK(parse_rational(".25") == Rational(1, 4));
    CHECK(parse_rational("3/7") == Rational(3, 7));
    CHECK(parse_rational("1") == Rational(1, 1));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));

    // strict threshold: OM > lambda*|B| with lambda*|B| an integer
    Rational half(1, 2);
    CHECK(half.scaled_less_than(14, 8));   // 8 > 7
    CHECK_FALSE(half.scaled_less_than(14, 7)); // 7 > 7 is false
}
