#pragma once

#include "edabn/bayes_network.hpp"

namespace edabn {

// The "Asia" chest-clinic network of Lauritzen & Spiegelhalter (1988), the
// standard 8-node benchmark for structure recovery. Eight binary nodes, eight
// arcs:
//
//   asia -> tub, smoke -> lung, smoke -> bronc, tub -> either,
//   lung -> either, either -> xray, either -> dysp, bronc -> dysp
//
// State 0 = "no", state 1 = "yes". The parameters below are the ones
// distributed with the common Bayesian-network toolkits (bnlearn, Norsys),
// tracing back to the worked example in the 1988 article:
//
//   P(asia=yes)                  = 0.01
//   P(tub=yes   | asia=yes/no)   = 0.05 / 0.01
//   P(smoke=yes)                 = 0.50
//   P(lung=yes  | smoke=yes/no)  = 0.10 / 0.01
//   P(bronc=yes | smoke=yes/no)  = 0.60 / 0.30
//   either = tub OR lung (deterministic)
//   P(xray=yes  | either=yes/no) = 0.98 / 0.05
//   P(dysp=yes  | bronc,either)  = 0.90 (y,y) / 0.80 (y,n) / 0.70 (n,y) / 0.10 (n,n)
//
// CPT rows follow the library-wide convention: parents sorted by node index,
// configurations enumerated row-major, columns = P(state 0), P(state 1).

namespace asia {
inline constexpr int asia = 0;
inline constexpr int tub = 1;
inline constexpr int smoke = 2;
inline constexpr int lung = 3;
inline constexpr int bronc = 4;
inline constexpr int either = 5;
inline constexpr int xray = 6;
inline constexpr int dysp = 7;
}  // namespace asia

inline BayesNetwork asia_fixture() {
    enum { asia = 0, tub = 1, smoke = 2, lung = 3, bronc = 4, either = 5, xray = 6, dysp = 7 };

    auto structure = AdjacencyMatrix::from_arcs(8, {{asia, tub},
                                                    {smoke, lung},
                                                    {smoke, bronc},
                                                    {tub, either},
                                                    {lung, either},
                                                    {either, xray},
                                                    {either, dysp},
                                                    {bronc, dysp}});

    std::vector<std::string> names = {"asia", "tub", "smoke", "lung", "bronc", "either", "xray", "dysp"};
    std::vector<int> cards(8, 2);

    std::vector<Cpt> cpts(8);
    cpts[asia].rows = {{0.99, 0.01}};
    cpts[tub].rows = {{0.99, 0.01},    // asia = no
                      {0.95, 0.05}};   // asia = yes
    cpts[smoke].rows = {{0.5, 0.5}};
    cpts[lung].rows = {{0.99, 0.01},   // smoke = no
                       {0.9, 0.1}};    // smoke = yes
    cpts[bronc].rows = {{0.7, 0.3},    // smoke = no
                        {0.4, 0.6}};   // smoke = yes
    cpts[either].rows = {{1.0, 0.0},   // (tub, lung) = (no, no)
                         {0.0, 1.0},   // (no, yes)
                         {0.0, 1.0},   // (yes, no)
                         {0.0, 1.0}};  // (yes, yes)
    cpts[xray].rows = {{0.95, 0.05},   // either = no
                       {0.02, 0.98}};  // either = yes
    cpts[dysp].rows = {{0.9, 0.1},     // (bronc, either) = (no, no)
                       {0.3, 0.7},     // (no, yes)
                       {0.2, 0.8},     // (yes, no)
                       {0.1, 0.9}};    // (yes, yes)

    return BayesNetwork::create(std::move(structure), std::move(names), std::move(cards),
                                std::move(cpts));
}

}  // namespace edabn
