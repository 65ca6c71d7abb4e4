#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "closedgeo/curve.hpp"
#include "closedgeo/space.hpp"

namespace closedgeo {

// Distances d(p_i, p_{i+1}), cyclic for closed curves.
std::vector<double> gap_lengths(const Space& space, const PolyCurve& c);

double curve_length(const Space& space, const PolyCurve& c);

// Checks point validity and that every gap is strictly below epsilon.
void validate_curve(const Space& space, const PolyCurve& c);

// Resamples c to m_out points equally spaced in arc length, keeping point 0.
// Throws GapTooWide if some gap of c is >= epsilon.
PolyCurve resample_constant_speed(const Space& space, const PolyCurve& c,
                                  int m_out);

// Largest sample-wise distance between two curves of equal size.
double sup_distance(const Space& space, const PolyCurve& a, const PolyCurve& b);

// Joins point 0 to every other sample with shortest paths; the discrete
// contraction of a short closed loop. Returns the paths.
std::vector<OpenPath> contraction_paths(const Space& space, const PolyCurve& c,
                                        int samples);

// {"backend": name, "closed": bool, "points": [...]}
nlohmann::json curve_to_json(const Space& space, const PolyCurve& c);
PolyCurve curve_from_json(const Space& space, const nlohmann::json& j);

}  // namespace closedgeo
