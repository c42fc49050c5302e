#pragma once

// Permutation tables and published frontiers from the study, frozen for
// test assertions.

#include <vector>

#include "seriate/pqtree.hpp"

namespace paper {

inline const std::vector<std::vector<seriate::Label>> kFig1Permutations = {
    {1, 2, 3, 4, 5, 6},
    {1, 2, 3, 6, 5, 4},
    {1, 3, 2, 4, 5, 6},
    {1, 3, 2, 6, 5, 4},
    {2, 1, 3, 4, 5, 6},
    {2, 1, 3, 6, 5, 4},
    {2, 3, 1, 4, 5, 6},
    {2, 3, 1, 6, 5, 4},
    {3, 1, 2, 4, 5, 6},
    {3, 1, 2, 6, 5, 4},
    {3, 2, 1, 4, 5, 6},
    {3, 2, 1, 6, 5, 4},
    {4, 5, 6, 1, 2, 3},
    {4, 5, 6, 1, 3, 2},
    {4, 5, 6, 2, 1, 3},
    {4, 5, 6, 2, 3, 1},
    {4, 5, 6, 3, 1, 2},
    {4, 5, 6, 3, 2, 1},
    {6, 5, 4, 1, 2, 3},
    {6, 5, 4, 1, 3, 2},
    {6, 5, 4, 2, 1, 3},
    {6, 5, 4, 2, 3, 1},
    {6, 5, 4, 3, 1, 2},
    {6, 5, 4, 3, 2, 1}
};

inline const std::vector<std::vector<seriate::Label>> kActorsBlockPermutations = {
    {4, 3, 1, 2, 27},
    {27, 2, 1, 3, 4},
    {4, 3, 2, 1, 27},
    {27, 1, 2, 3, 4}
};

inline const std::vector<std::vector<seriate::Label>> kG5Permutations = {
    {5, 4, 3, 2, 1},
    {5, 4, 2, 3, 1},
    {5, 3, 4, 2, 1},
    {5, 3, 2, 4, 1},
    {5, 2, 4, 3, 1},
    {5, 2, 3, 4, 1},
    {5, 1, 4, 3, 2},
    {5, 1, 4, 2, 3},
    {5, 1, 3, 4, 2},
    {5, 1, 3, 2, 4},
    {5, 1, 2, 4, 3},
    {5, 1, 2, 3, 4},
    {4, 3, 2, 1, 5},
    {4, 2, 3, 1, 5},
    {3, 4, 2, 1, 5},
    {3, 2, 4, 1, 5},
    {2, 4, 3, 1, 5},
    {2, 3, 4, 1, 5},
    {1, 4, 3, 2, 5},
    {1, 4, 2, 3, 5},
    {1, 3, 4, 2, 5},
    {1, 3, 2, 4, 5},
    {1, 2, 4, 3, 5},
    {1, 2, 3, 4, 5}
};

inline const std::vector<std::vector<seriate::Label>> kG3Permutations = {
    {4, 3, 1, 2},
    {4, 2, 3, 1},
    {4, 1, 3, 2},
    {4, 1, 2, 3},
    {3, 2, 4, 1},
    {2, 3, 4, 1},
    {3, 2, 1, 4},
    {2, 3, 1, 4},
    {1, 4, 3, 2},
    {1, 4, 2, 3},
    {1, 3, 2, 4},
    {1, 2, 3, 4}
};


inline const std::vector<seriate::Label> kActorsFrontier = {4, 3, 1, 2, 27, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26};

inline const std::vector<seriate::Label> kObserversFrontier = {5, 8, 9, 1, 7, 12, 2, 11, 6, 10, 3, 4, 13, 15, 16, 18, 21, 23, 24, 19, 20, 14, 17, 22, 25};

}  // namespace paper
