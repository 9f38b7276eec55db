#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace sl3hom {

// One PD crossing X[a,b,c,d]: arc labels counterclockwise starting from the
// incoming under-strand. over_bd is true when the over-strand runs b -> d,
// which is exactly the positive-crossing pattern.
struct Crossing {
    std::array<int, 4> arcs{};
    bool over_bd = true;
    int sign() const { return over_bd ? +1 : -1; }
};

struct LinkDiagram {
    std::vector<Crossing> crossings;
    int free_loops = 0;          // crossingless unknot components
    int n_arcs = 0;              // arcs are 0..n_arcs-1 internally
    std::vector<int> arc_component;
    int n_components = 0;

    int p_plus() const;
    int p_minus() const;
    int writhe() const { return p_plus() - p_minus(); }
    bool is_knot() const { return n_components == 1; }

    // Consecutively relabeled PD text (round-trips through parse_pd).
    std::string emit_pd() const;
    // Lexicographically minimal emission over component relabelings; used
    // for cache keys.
    std::string canonical_pd() const;

    void rebuild_components();
};

LinkDiagram parse_pd(const std::string& text);
// DT codes name a knot only up to mirror image; the realization picks a
// deterministic embedding.
LinkDiagram parse_dt(const std::string& text);

LinkDiagram torus_link(int p, int q);
LinkDiagram mirror(const LinkDiagram& d);
LinkDiagram connected_sum(const LinkDiagram& d1, const LinkDiagram& d2);
LinkDiagram disjoint_union(const LinkDiagram& d1, const LinkDiagram& d2);

// Applies one Reidemeister move; location indexes the applicable sites in a
// deterministic enumeration. Throws std::invalid_argument when the site is
// out of range or the move does not apply there.
LinkDiagram reidemeister_perturb(const LinkDiagram& d, int move, int location,
                                 uint64_t rng_seed);
// Convenience for the randomized invariance suite: applies `count` random
// applicable moves.
LinkDiagram random_perturb(const LinkDiagram& d, int count, std::mt19937_64& rng);

struct ScanOrder {
    std::vector<int> order;          // permutation of crossing indices
    std::vector<int> boundary_sizes; // open endpoints after each step
    int girth() const;
};

enum class ScanHeuristic { InputOrder, GreedyGirth };
ScanOrder scan_order(const LinkDiagram& d, ScanHeuristic h);

// Built-in diagrams: unknot, 3_1 .. 6_3, 10_125, and T(p,q) for pq <= 42.
std::optional<LinkDiagram> named_diagram(const std::string& name);
std::vector<std::string> named_diagram_list();

} // namespace sl3hom
