#include <doctest.h>

#include <numeric>
#include <set>

#include "rogz/perm.h"

using namespace rogz;

TEST_CASE("permutation arithmetic") {
    Perm a{1, 2, 0};  // 3-cycle
    CHECK(perm_order(a) == 3);
    CHECK(perm_mul(a, perm_inv(a)) == perm_identity(3));
    CHECK(perm_to_string(a) == "[1 2 0]");
}

TEST_CASE("catalog groups have the right orders") {
    CHECK(make_group("e").order() == 1);
    CHECK(make_group("C2").order() == 2);
    CHECK(make_group("C7").order() == 7);
    CHECK(make_group("K4").order() == 4);
    CHECK(make_group("A4").order() == 12);
    CHECK(make_group("A5").order() == 60);
    CHECK(make_group("D6").order() == 6);
    CHECK(make_group("D10").order() == 10);
    CHECK(make_group("D14").order() == 14);
    for (const Perm& x : make_group("K4").elements)
        CHECK(perm_order(x) <= 2);
    CHECK_THROWS(make_group("D8"));   // rotation order 4 is not an odd prime
    CHECK_THROWS(make_group("Q8"));
}

TEST_CASE("subgroup lattice of A_5") {
    SubgroupLattice lat = subgroup_lattice(make_group("A5"));
    REQUIRE(lat.classes.size() == 9);
    std::vector<int> orders, sizes;
    for (const auto& c : lat.classes) {
        orders.push_back(c.representative.order());
        sizes.push_back(int(c.members.size()));
    }
    CHECK(orders == std::vector<int>{1, 2, 3, 4, 5, 6, 10, 12, 60});
    CHECK(sizes == std::vector<int>{1, 15, 10, 5, 6, 10, 6, 5, 1});
    CHECK(std::accumulate(sizes.begin(), sizes.end(), 0) == 59);

    std::vector<int> weyl;
    for (const auto& c : lat.classes) weyl.push_back(c.weyl_order);
    CHECK(weyl == std::vector<int>{60, 2, 2, 3, 2, 1, 1, 1, 1});
}

TEST_CASE("subgroup lattice of small groups") {
    CHECK(subgroup_lattice(make_group("D6")).classes.size() == 4);
    CHECK(subgroup_lattice(make_group("D10")).classes.size() == 4);
    CHECK(subgroup_lattice(make_group("C2")).classes.size() == 2);
    SubgroupLattice k4 = subgroup_lattice(make_group("K4"));
    REQUIRE(k4.classes.size() == 5);  // e, three C_2 classes, K_4
    for (const auto& c : k4.classes) CHECK(c.members.size() == 1);
    SubgroupLattice a4 = subgroup_lattice(make_group("A4"));
    REQUIRE(a4.classes.size() == 5);  // e, C_2, C_3, K_4, A_4
    std::vector<int> orders;
    for (const auto& c : a4.classes) orders.push_back(c.representative.order());
    CHECK(orders == std::vector<int>{1, 2, 3, 4, 12});
}

TEST_CASE("class witnesses conjugate the representative onto each member") {
    SubgroupLattice lat = subgroup_lattice(make_group("A5"));
    for (const auto& c : lat.classes)
        for (size_t m = 0; m < c.members.size(); ++m) {
            PermGroup conj = conjugate_subgroup(c.representative, c.witnesses[m]);
            CHECK(conj.same_elements(c.members[m]));
        }
}

TEST_CASE("subconjugacy matrix is reflexive, transitive, witnessed") {
    for (const char* id : {"A5", "A4", "D6", "D10", "K4"}) {
        SubgroupLattice lat = subgroup_lattice(make_group(id));
        int n = int(lat.classes.size());
        for (int i = 0; i < n; ++i) CHECK(lat.subconj[i][i]);
        CHECK(lat.subconj[0][n - 1]);  // trivial below everything... via full group
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (!lat.subconj[i][j]) continue;
                CHECK(lat.classes[j].representative.order() % lat.classes[i].representative.order() == 0);
                PermGroup moved = conjugate_subgroup(lat.classes[i].representative, lat.subconj_wit[i][j]);
                CHECK(lat.classes[j].representative.contains_group(moved));
                for (int k = 0; k < n; ++k)
                    if (lat.subconj[j][k]) CHECK(lat.subconj[i][k]);
            }
        // brute-force agreement: [K] <= [H] iff some member of [K] inside some member of [H]
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                bool found = false;
                for (const auto& mk : lat.classes[i].members)
                    for (const auto& mh : lat.classes[j].members)
                        if (mh.contains_group(mk)) { found = true; break; }
                CHECK(lat.subconj[i][j] == found);
            }
    }
}

TEST_CASE("sylow subgroups") {
    SubgroupLattice a5 = subgroup_lattice(make_group("A5"));
    CHECK(sylow(a5, 2).representative.order() == 4);
    CHECK(sylow(a5, 3).representative.order() == 3);
    CHECK(sylow(a5, 5).representative.order() == 5);
    SubgroupLattice c2 = subgroup_lattice(make_group("C2"));
    CHECK(sylow(c2, 3).representative.order() == 1);
}

TEST_CASE("odd-order closure subgroup") {
    PermGroup d6 = make_group("D6");
    CHECK(omega_p(d6, 2).order() == 3);
    CHECK(omega_p(d6, 3).order() == 6);
    PermGroup d10 = make_group("D10");
    CHECK(omega_p(d10, 2).order() == 5);
    PermGroup a5 = make_group("A5");
    for (long p : {2L, 3L, 5L}) {
        PermGroup o = omega_p(a5, p);
        CHECK(o.order() == 60);
    }
    // normality and p-power index
    for (const char* id : {"D6", "D10", "A4", "K4"}) {
        PermGroup g = make_group(id);
        for (long p : {2L, 3L, 5L}) {
            PermGroup o = omega_p(g, p);
            CHECK(is_normal_in(o, g));
            int idx = g.order() / o.order();
            while (idx % p == 0) idx /= int(p);
            CHECK(idx == 1);
        }
    }
}

TEST_CASE("double coset orbits") {
    PermGroup a4 = make_group("A4");
    SubgroupLattice lat4 = subgroup_lattice(a4);
    PermGroup k4 = lat4.classes[lat4.class_of_order(4)].representative;
    auto orbs = double_coset_orbits(a4, k4, k4);
    REQUIRE(orbs.size() == 3);
    for (const auto& o : orbs) {
        CHECK(o.stabilizer.order() == 4);
        CHECK(o.orbit_size == 1);
    }

    auto one = double_coset_orbits(a4, a4, k4);
    REQUIRE(one.size() == 1);
    CHECK(one[0].orbit_size == 3);

    PermGroup a5 = make_group("A5");
    SubgroupLattice lat5 = subgroup_lattice(a5);
    PermGroup k4a = lat5.classes[lat5.class_of_order(4)].representative;
    PermGroup d10 = lat5.classes[lat5.class_of_order(10)].representative;
    auto mixed = double_coset_orbits(a5, k4a, d10);
    int total = 0;
    for (const auto& o : mixed) {
        total += o.orbit_size;
        CHECK(o.orbit_size * o.stabilizer.order() == k4a.order());
        // g^-1 Q g lands inside H
        PermGroup moved = conjugate_subgroup(o.stabilizer, perm_inv(o.rep));
        CHECK(d10.contains_group(moved));
    }
    CHECK(total == 6);
}

TEST_CASE("json serialization shape") {
    PermGroup k4 = make_group("K4");
    std::string j = group_json(k4);
    CHECK(j.find("\"degree\": 4") != std::string::npos);
    CHECK(j.find("\"order\": 4") != std::string::npos);
    std::string lj = lattice_json(subgroup_lattice(k4));
    CHECK(lj.find("\"subconjugacy\"") != std::string::npos);
}
