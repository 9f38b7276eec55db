#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sl3hom/diagram.hpp"
#include "sl3hom/frobenius.hpp"

namespace sl3hom {

// Laurent polynomial in q with integer coefficients (Kuperberg brackets).
struct LaurentPoly {
    std::map<int, long> c;
    static LaurentPoly one() { return LaurentPoly{{{0, 1}}}; }
    static LaurentPoly q_power(int k) { return LaurentPoly{{{k, 1}}}; }
    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    bool operator==(const LaurentPoly& o) const { return c == o.c; }
    long eval1() const;
    std::string to_string() const;
};

// Planar trivalent web, stored as a rotation system. Edges are directed and
// indexed; edge e owns darts 2e (tail end) and 2e+1 (head end). Circle edges
// carry no darts. Open ends (darts on the disc boundary) are labeled by the
// diagram arc they belong to; the cyclic order around the disc is not
// tracked, as nothing downstream depends on it.
class Web {
public:
    struct Vertex {
        std::array<int, 3> darts; // ccw rotation
        bool all_in = false;
    };
    struct Edge {
        bool circle = false;
    };

    std::vector<Vertex> verts;
    std::vector<Edge> edges;
    std::vector<int> dart_vertex; // per dart: vertex id, -1 open end, -2 unused
    std::vector<int> dart_label;  // per dart: arc label when open, else -1

    int n_edges() const { return (int)edges.size(); }
    int n_verts() const { return (int)verts.size(); }
    int n_circles() const;
    int boundary_size() const;
    std::vector<int> open_darts() const;
    bool closed() const { return boundary_size() == 0; }
    int euler() const; // V - E over non-circle part, boundary endpoints included

    bool edge_is_circle(int e) const { return edges[e].circle; }
    int other_dart(int d) const { return d ^ 1; }
    int dart_edge(int d) const { return d / 2; }

    // faces as dart sequences (next = rotate ccw after crossing the edge);
    // walks through open ends are not closed faces and are skipped
    struct Face {
        std::vector<int> darts;
        bool internal = true;
    };
    std::vector<Face> faces() const;

    struct Simplifiable {
        enum Kind { Loop, Digon, Square, None } kind = None;
        int circle_edge = -1;            // Loop
        std::vector<int> face_darts;     // Digon / Square
    };
    Simplifiable find_simplifiable() const;

    std::string debug_serialize() const; // stable text form
    std::string content_key() const;     // hash-friendly canonical-ish key
    bool planar_check() const;           // Euler formula per component

    bool operator==(const Web& o) const;
};

using WebRef = std::shared_ptr<const Web>;

// Local resolution fragments: a 4-boundary-point web whose open darts carry
// labels 0..3 matching the crossing slots (ccw from the incoming under-arc).
Web resolve_crossing(int sign, int bit);

// Surgery results carry the old-edge -> new-edge mapping (-1 = removed) so
// foams across the surgery can be rebuilt.
struct WebSurgery {
    Web web;
    std::vector<int> edge_map;
    // extra handles, meaning depends on the operation:
    //  - digon collapse: merged edge id
    //  - square reconnect: the two new edges
    std::vector<int> new_edges;
};

WebSurgery remove_circle_edge(const Web& w, int circle_edge);
Web add_circle_edge(const Web& w);                  // new circle gets last id
// Collapse a digon face (2 darts); the two outer edges merge into one.
WebSurgery collapse_digon(const Web& w, const std::vector<int>& face_darts);
// Replace a square face by one of its two reconnections (which = 0 pairs the
// external edge at the face-walk start with its successor, which = 1 the
// other pairing).
WebSurgery reconnect_square(const Web& w, const std::vector<int>& face_darts, int which);

// Kuperberg bracket of a closed web.
LaurentPoly kuperberg_bracket(const Web& w);

// Colorings by the three roots; the web must be closed.
struct Coloring {
    std::vector<int> edge_color; // index into RootData.roots
};
std::vector<Coloring> admissible_colorings(const Web& w, const RootData& roots);

// Full resolution of a diagram as a closed web (J indexed by crossing order).
// arc_edge maps diagram arcs to web edges (-1 if swallowed into a circle).
struct ResolvedWeb {
    Web web;
    std::vector<int> crossing_vertex_in;  // per crossing, -1 when smoothed
    std::vector<int> crossing_vertex_out;
};
ResolvedWeb resolve_diagram(const LinkDiagram& d, const std::vector<int>& bits);

struct CanonicalColoring {
    std::vector<int> component_color; // per link component, 0..2
    std::vector<int> bits;            // the unique resolution J
    int hom_degree = 0;               // |J| - p_plus
    Coloring web_coloring;            // induced admissible coloring of D_J
};
std::vector<CanonicalColoring> canonical_colorings(const LinkDiagram& d,
                                                   const RootData& roots);

} // namespace sl3hom
