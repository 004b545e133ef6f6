#include <doctest.h>

#include "rogz/burnside.h"

using namespace rogz;

namespace {

// chi_K(tr_L^H x) via the Mackey double-coset route, used as the second
// computation path in the Frobenius agreement test.
SRational chi_via_double_cosets(const BurnsideRing& big, int k_class, int l_class,
                                const BurnsideElt& x) {
    const PermGroup& kk = big.lat.classes[k_class].representative;
    const PermGroup& ll = big.lat.classes[l_class].representative;
    BurnsideRing ring_k = BurnsideRing::make(kk);
    BurnsideRing ring_l = BurnsideRing::make(ll);
    BurnsideElt acc = ring_k.zero();
    for (const auto& o : double_coset_orbits(big.lat.group, kk, ll)) {
        PermGroup q = o.stabilizer;                                  // K ∩ gLg^-1
        PermGroup qg = conjugate_subgroup(q, perm_inv(o.rep));       // g^-1 Q g ≤ L
        BurnsideRing ring_qg = BurnsideRing::make(qg);
        BurnsideRing ring_q = BurnsideRing::make(q);
        BurnsideElt down = burnside_res(ring_l, ring_qg, x);
        BurnsideElt moved = burnside_conj(ring_qg, ring_q, o.rep, down);
        acc = ring_k.add(acc, burnside_tr(ring_q, ring_k, moved));
    }
    return ring_k.mark_hom(acc)[ring_k.n() - 1];
}

}  // namespace

TEST_CASE("marks of C_2") {
    BurnsideRing r = BurnsideRing::make(make_group("C2"));
    REQUIRE(r.n() == 2);
    CHECK(r.marks.at(0, 0) == 2);  // |(C2/e)^e|
    CHECK(r.marks.at(1, 0) == 0);
    CHECK(r.marks.at(0, 1) == 1);
    CHECK(r.marks.at(1, 1) == 1);
}

TEST_CASE("marks of K_4: normal index-2 subgroups fix both cosets") {
    BurnsideRing r = BurnsideRing::make(make_group("K4"));
    REQUIRE(r.n() == 5);
    for (int i = 1; i <= 3; ++i) CHECK(r.marks.at(i, i) == 2);
}

TEST_CASE("marks of A_5 spot values and structure") {
    BurnsideRing r = BurnsideRing::make(make_group("A5"));
    REQUIRE(r.n() == 9);
    int c5 = r.lat.class_of_order(5), d10 = r.lat.class_of_order(10);
    CHECK(r.marks.at(c5, d10) == 1);
    CHECK(r.marks.at(0, 0) == 60);

    for (int k = 0; k < r.n(); ++k) {
        CHECK(r.marks.at(k, k) == r.lat.classes[k].weyl_order);
        for (int h = 0; h < r.n(); ++h)
            CHECK((r.marks.at(k, h) != 0) == r.lat.subconj[k][h]);
    }
    CHECK(rank_q(r.marks) == r.n());  // injective mark embedding
}

TEST_CASE("mark homomorphism basics") {
    BurnsideRing r = BurnsideRing::make(make_group("A5"));
    auto chi = r.mark_hom(r.unit());
    for (const auto& v : chi) CHECK(v == SRational(1));

    BurnsideRing c2 = BurnsideRing::make(make_group("C2"));
    auto chi2 = c2.mark_hom(c2.basis(0));
    CHECK(chi2[0] == SRational(2));
    CHECK(chi2[1] == SRational(0));
}

TEST_CASE("multiplication through the mark embedding") {
    BurnsideRing c2 = BurnsideRing::make(make_group("C2"));
    BurnsideElt free = c2.basis(0);
    BurnsideElt sq = c2.mul(free, free);
    CHECK(sq.c[0] == SRational(2));
    CHECK(sq.c[1] == SRational(0));

    BurnsideRing a5 = BurnsideRing::make(make_group("A5"));
    for (int h = 0; h < a5.n(); ++h) {
        CHECK(a5.mul(a5.unit(), a5.basis(h)) == a5.basis(h));
    }
}

TEST_CASE("embedding route agrees with the orbit-decomposition oracle") {
    for (const char* id : {"K4", "D6", "A4", "A5"}) {
        BurnsideRing r = BurnsideRing::make(make_group(id));
        for (int h = 0; h < r.n(); ++h)
            for (int k = h; k < r.n(); ++k) {
                BurnsideElt via_marks = r.mul(r.basis(h), r.basis(k));
                BurnsideElt via_orbits = r.mul_oracle(r.basis(h), r.basis(k));
                CHECK(via_marks == via_orbits);
            }
    }
}

TEST_CASE("idempotent basis") {
    BurnsideRing c2 = BurnsideRing::make(make_group("C2"));
    auto idem = c2.idempotents({2});
    // e_e = (1/2){C2/e}; e_{C2} = {C2/C2} - (1/2){C2/e}
    CHECK(idem[0].c[0] == SRational(1, 2, {2}));
    CHECK(idem[0].c[1] == SRational(0));
    CHECK(idem[1].c[0] == SRational(-1, 2, {2}));
    CHECK(idem[1].c[1] == SRational(1));

    CHECK_THROWS(c2.idempotents({}));
    CHECK_THROWS(c2.idempotents({3}));

    BurnsideRing a5 = BurnsideRing::make(make_group("A5"));
    auto ida = a5.idempotents({2, 3, 5});
    BurnsideElt sum = a5.zero();
    for (auto& [h, e] : ida) {
        sum = a5.add(sum, e);
        auto chi = a5.mark_hom(e);
        for (int k = 0; k < a5.n(); ++k) CHECK(chi[k] == SRational(k == h ? 1 : 0));
        for (auto& [h2, e2] : ida) {
            BurnsideElt prod = a5.mul(e, e2);
            if (h == h2) CHECK(prod == e);
            else CHECK(prod.is_zero());
        }
    }
    CHECK(sum == a5.unit({2, 3, 5}));
}

TEST_CASE("restriction, transfer, conjugation") {
    BurnsideRing k4 = BurnsideRing::make(make_group("K4"));
    PermGroup h1 = k4.lat.classes[1].representative;
    BurnsideRing c2 = BurnsideRing::make(h1);

    // tr_{C2}^{K4} {C2/e} = {K4/e}
    BurnsideElt up = burnside_tr(c2, k4, c2.basis(0));
    CHECK(up == k4.basis(0));

    // res_e^{C2} {C2/C2} = {e/e}
    BurnsideRing triv = BurnsideRing::make(PermGroup::generated(h1.degree, {}));
    BurnsideElt down = burnside_res(c2, triv, c2.basis(1));
    CHECK(down.c[0] == SRational(1));

    // res_{C2}^{D6} {D6/C3}: the two cosets are swapped, one free orbit
    BurnsideRing d6 = BurnsideRing::make(make_group("D6"));
    int c3 = d6.lat.class_of_order(3);
    int c2i = d6.lat.class_of_order(2);
    BurnsideRing sub = BurnsideRing::make(d6.lat.classes[c2i].representative);
    BurnsideElt r = burnside_res(d6, sub, d6.basis(c3));
    CHECK(r.c[0] == SRational(1));
    CHECK(r.c[1] == SRational(0));

    // restriction preserves marks at common subgroups (checked over D_6 -> C_2)
    for (int h = 0; h < d6.n(); ++h) {
        BurnsideElt rest = burnside_res(d6, sub, d6.basis(h));
        auto chi_sub = sub.mark_hom(rest);
        auto chi_big = d6.mark_hom(d6.basis(h));
        CHECK(chi_sub[1] == chi_big[c2i]);  // K = C_2
        CHECK(chi_sub[0] == chi_big[0]);    // K = e
    }
}

TEST_CASE("Frobenius agreement: marks of transfers match the double-coset count") {
    for (const char* id : {"D6", "A4"}) {
        BurnsideRing big = BurnsideRing::make(make_group(id));
        for (int l = 0; l < big.n(); ++l) {
            BurnsideRing ring_l = BurnsideRing::make(big.lat.classes[l].representative);
            for (int j = 0; j < ring_l.n(); ++j) {
                BurnsideElt x = ring_l.basis(j);
                BurnsideElt trx = burnside_tr(ring_l, big, x);
                auto chi = big.mark_hom(trx);
                for (int k = 0; k < big.n(); ++k) {
                    CHECK(chi[k] == chi_via_double_cosets(big, k, l, x));
                }
            }
        }
    }
}
