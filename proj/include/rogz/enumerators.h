#pragma once

#include <string>
#include <vector>

#include "rogz/abelian.h"

namespace rogz {

/* One labelled basis class of a graded piece of an answer presentation.
 * res_e_index is the index of the image of the class under restriction to
 * the bottom level (meaningful for infinite-order classes; 1 otherwise). */
struct MonomialLabel {
    std::string symbol;
    Int order = 0;  // 0 = infinite order
    long res_e_index = 1;
};

struct GradedPiece {
    FGAbelianGroup group;
    std::vector<MonomialLabel> labels;
};

/* Graded piece of one of the closed-form answer presentations.
 *
 *   id           grading argument                       prime
 *   "c2-sigma"   {a, b}    for a + b*sigma              ignored
 *   "cp-lambda"  {a, b}    for a + b*lambda             odd prime p
 *   "d2p"        {k, m, n} for k + m*sigma + n*gamma    odd prime p
 *   "a5-p3"      {n1, n3, n4, n5}                       ignored (3-local)
 *   "a5-p5"      {n1, n3, n4, n5}                       ignored (5-local)
 *   "k4-pos"     {a, b} with b <= 0, for a + b*V        ignored
 *   "k4-neg"     {a, b} with b > 0                      ignored
 *
 * Throws std::invalid_argument for an unknown id, a grading vector of the
 * wrong length, a bad prime, or a b on the wrong side for the k4 ids. */
GradedPiece graded_piece_of_presentation(const std::string& id, const std::vector<long>& grading,
                                         long p = 0);

}  // namespace rogz
