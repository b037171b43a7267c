#pragma once

#include "dual_topology.hpp"
#include "geometry.hpp"
#include "structured_grid.hpp"

#include <string>
#include <vector>

namespace stagbox {

//! Overlap of one free-flow coupling face and one porous boundary sub-face.
struct InterfaceFacet {
    Vec2 a, b;
    double measure = 0.0;
    int ff_face = -1;
    int pm_vertex = -1;
    int pm_element = -1;
    int pm_subface = -1;  // index into DualTopology::boundary_subfaces()
    int segment = -1;     // which interface segment the facet lies on
};

//! Decomposes the interface segments into facets. Every free-flow face and
//! porous sub-face carrying the coupling marker must lie on one of the segments.
std::vector<InterfaceFacet> intersect_interface(const StaggeredGrid& ff, const DualTopology& pm,
                                                const std::vector<Segment>& segments,
                                                const std::string& marker = "coupling");

inline std::vector<InterfaceFacet> intersect_interface(const StaggeredGrid& ff, const DualTopology& pm,
                                                       const Segment& segment,
                                                       const std::string& marker = "coupling")
{
    return intersect_interface(ff, pm, std::vector<Segment>{segment}, marker);
}

//! Sweep over sorted breakpoints of two interval partitions of [0, L]; exposed for testing.
struct Interval {
    double lo = 0.0, hi = 0.0;
    int id = -1;
};
struct Overlap {
    double lo = 0.0, hi = 0.0;
    int first = -1, second = -1;
};
std::vector<Overlap> overlap_intervals(std::vector<Interval> first, std::vector<Interval> second, double tol);

} // namespace stagbox
