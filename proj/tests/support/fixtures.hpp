#ifndef TESTS_SUPPORT_FIXTURES_HPP
#define TESTS_SUPPORT_FIXTURES_HPP

#include "netsale/graph.hpp"

namespace testsupport {

inline netsale::Network path(int n) {
    netsale::Network g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

inline netsale::Network cycle(int n) {
    netsale::Network g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

inline netsale::Network complete(int n) {
    netsale::Network g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

inline netsale::Network star(int n) { // center 0, leaves 1..n-1
    netsale::Network g(n);
    for (int v = 1; v < n; ++v) g.add_edge(0, v);
    return g;
}

inline netsale::Network edgeless(int n) { return netsale::Network(n); }

} // namespace testsupport

#endif
