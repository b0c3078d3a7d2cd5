#pragma once

#include <vector>

#include "gi/instance.hpp"

namespace gi {

/// A closed walk from the instance start, with its weight and the set of
/// colors collected along the way.
struct Walk {
    std::vector<int> vertices;  // v_0 .. v_p with v_0 == v_p == start
    double weight = 0.0;
    std::vector<int> collected; // sorted color ids

    bool trivial() const { return vertices.size() <= 1; }
};

/// Builds a Walk from an explicit vertex sequence, computing weight and
/// collected colors. Throws if consecutive vertices are not adjacent.
Walk make_walk(const InspectionInstance& inst, std::vector<int> seq);

/// Recomputes weight/collected from the vertex sequence and checks the walk
/// is closed at the instance start. Returns false with a reason otherwise.
bool validate_walk(const InspectionInstance& inst, const Walk& walk, std::string* reason = nullptr,
                   double tolerance = 1e-9);

}  // namespace gi
